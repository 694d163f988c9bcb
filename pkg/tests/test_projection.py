from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from genutil import closure_oracle, random_taxonomy
from ontoterm.errors import CycleError, UnknownConceptError
from ontoterm.lexnet import (
    Evidence,
    LexicalRelation,
    RelationKind,
    Status,
    Term,
    build_network,
)
from ontoterm.projection import (
    concept_id,
    project,
    subsumed_closure,
    taxonomy_from_json,
    taxonomy_to_dot,
    taxonomy_to_json,
)

HYP, SYN = RelationKind.HYPONYMY, RelationKind.SYNONYMY

RELAY_CHILDREN = (
    "relais de tension",
    "relais à seuil",
    "relais tout ou rien",
    "relais électromagnétique",
)


def validated_relay_net():
    terms = [Term("relais", "relais", Status.VALIDATED)] + [
        Term(label, "relais", Status.VALIDATED) for label in RELAY_CHILDREN
    ]
    relations = [
        LexicalRelation(HYP, label, "relais", Evidence.SAME_HEAD, status=Status.VALIDATED)
        for label in RELAY_CHILDREN
    ]
    return build_network(terms, relations)


def test_project_relay_network():
    taxonomy = project(validated_relay_net())
    assert taxonomy.roots == ["relais"]
    assert set(taxonomy.children("relais")) == {concept_id(c) for c in RELAY_CHILDREN}
    assert len(taxonomy.subsumption) == 4


def test_project_empty_network():
    taxonomy = project(build_network([]))
    assert taxonomy.concepts == {}
    assert taxonomy.subsumption == set()


def test_project_excludes_candidate_material():
    terms = [
        Term("relais", "relais", Status.VALIDATED),
        Term("relais de tension", "relais", Status.CANDIDATE),
        Term("bruit", "bruit", Status.REJECTED),
    ]
    relations = [
        LexicalRelation(HYP, "relais de tension", "relais", Evidence.SAME_HEAD),
    ]
    taxonomy = project(build_network(terms, relations))
    assert set(taxonomy.concepts) == {"relais"}
    assert taxonomy.subsumption == set()


def test_project_collapses_synonyms():
    terms = [
        Term("relais", "relais", Status.VALIDATED),
        Term("relais de tension", "relais", Status.VALIDATED),
        Term("relais voltmétrique", "relais", Status.VALIDATED),
    ]
    relations = [
        LexicalRelation(HYP, "relais de tension", "relais", Evidence.SAME_HEAD, status=Status.VALIDATED),
        LexicalRelation(HYP, "relais voltmétrique", "relais", Evidence.SAME_HEAD, status=Status.VALIDATED),
        LexicalRelation(SYN, "relais de tension", "relais voltmétrique", Evidence.DECLARED, status=Status.VALIDATED),
    ]
    taxonomy = project(build_network(terms, relations))
    assert len(taxonomy.concepts) == 2
    assert len(taxonomy.subsumption) == 1
    merged = taxonomy.concepts[concept_id("relais de tension")]
    assert set(merged.denoting_terms) == {"relais de tension", "relais voltmétrique"}


def test_project_rejects_cycle():
    terms = [Term("a", "a", Status.VALIDATED), Term("b", "b", Status.VALIDATED)]
    relations = [
        LexicalRelation(HYP, "a", "b", Evidence.DECLARED, status=Status.VALIDATED),
        LexicalRelation(HYP, "b", "a", Evidence.DECLARED, status=Status.VALIDATED),
    ]
    with pytest.raises(CycleError) as exc:
        project(build_network(terms, relations))
    assert "a" in str(exc.value) and "b" in str(exc.value)


def test_project_rejects_cycle_created_by_collapse():
    # a1 ~ a2 synonyms; a1 -> b -> a2 becomes a self-reaching loop once merged
    terms = [Term(x, x, Status.VALIDATED) for x in ("a1", "a2", "b")]
    relations = [
        LexicalRelation(HYP, "a1", "b", Evidence.DECLARED, status=Status.VALIDATED),
        LexicalRelation(HYP, "b", "a2", Evidence.DECLARED, status=Status.VALIDATED),
        LexicalRelation(SYN, "a1", "a2", Evidence.DECLARED, status=Status.VALIDATED),
    ]
    with pytest.raises(CycleError):
        project(build_network(terms, relations))


# --- closure ----------------------------------------------------------------


def test_closure_of_leaf_is_reflexive():
    taxonomy = project(validated_relay_net())
    leaf = concept_id("relais à seuil")
    assert taxonomy.subsumed_closure(leaf) == {leaf}


def test_closure_of_root_covers_all():
    taxonomy = project(validated_relay_net())
    assert taxonomy.subsumed_closure("relais") == set(taxonomy.concepts)


def test_closure_unknown_concept():
    taxonomy = project(validated_relay_net())
    with pytest.raises(UnknownConceptError):
        subsumed_closure(taxonomy, "ghost")


def test_closure_matches_fixpoint_oracle_on_random_dags():
    rng = random.Random(20240811)
    for _ in range(100):
        taxonomy = random_taxonomy(rng, max_nodes=50)
        nodes = set(taxonomy.concepts)
        for cid in nodes:
            expected = closure_oracle(taxonomy.subsumption, nodes, cid)
            assert taxonomy.subsumed_closure(cid) == expected


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_closure_monotonicity(seed):
    rng = random.Random(seed)
    taxonomy = random_taxonomy(rng, max_nodes=30)
    cid = rng.choice(sorted(taxonomy.concepts))
    closure = taxonomy.subsumed_closure(cid)
    for inner in closure:
        assert taxonomy.subsumed_closure(inner) <= closure


def test_edge_count_matches_validated_edges():
    net = validated_relay_net()
    validated_edges = net.relations_of(HYP, Status.VALIDATED)
    taxonomy = project(net)
    assert len(taxonomy.subsumption) == len(validated_edges)


# --- serialization ----------------------------------------------------------


def test_taxonomy_json_roundtrip():
    taxonomy = project(validated_relay_net())
    again = taxonomy_from_json(taxonomy_to_json(taxonomy))
    assert taxonomy_to_json(again) == taxonomy_to_json(taxonomy)


def test_dot_output_lists_edges():
    taxonomy = project(validated_relay_net())
    dot = taxonomy_to_dot(taxonomy)
    assert '"relais de tension" -> "relais";' in dot
    assert dot.startswith("digraph")
