from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from genutil import ancestors_oracle, random_ok_tree
from ontoterm.errors import (
    BadValueError,
    DslParseError,
    DuplicateNameError,
    TypeMismatchError,
    UnknownConceptError,
    UnknownGenusError,
)
from ontoterm.fixtures import data_path
from ontoterm.okmodel import (
    AttributeDef,
    Axis,
    Differentia,
    ObjectInstance,
    OkConcept,
    OkOntology,
    ValueType,
    check_consistency,
    classify_object,
    define_concept,
    load_dsl,
    load_instances,
    parse_dsl,
    similarity,
    subsumes,
)

RAST = "relais à seuil de tension"


@pytest.fixture(scope="module")
def relay():
    return load_dsl(data_path("relais.dsl"))


# --- parsing ----------------------------------------------------------------


def test_parse_reference_ontology(relay):
    assert relay.roots() == ["relais"]
    assert len(relay.concepts) == 5
    assert relay.concepts[RAST].genus == "relais à seuil"
    assert relay.concepts[RAST].differentia == Differentia("grandeur_seuillée", "tension")
    assert set(relay.axes) == {"comportement", "technologie", "grandeur_seuillée"}


def issue_codes(exc_info):
    return {issue.code for issue in exc_info.value.issues}


def test_parse_unknown_genus():
    text = 'ontology "t"\naxis a values x, y\nconcept r root\nconcept c genus ghost diff a=x\n'
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert issue_codes(exc) == {"E_UNKNOWN_GENUS"}


def test_parse_empty_file_means_no_root():
    with pytest.raises(DslParseError) as exc:
        parse_dsl("")
    assert issue_codes(exc) == {"E_SYNTAX"}


def test_parse_duplicate_concept():
    text = "concept r root\nconcept r root\n"
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert issue_codes(exc) == {"E_DUP_NAME"}


def test_parse_unknown_axis():
    text = "concept r root\nconcept c genus r diff ghost=x\n"
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert issue_codes(exc) == {"E_UNKNOWN_AXIS"}


def test_parse_bad_axis_value():
    text = "axis a values x, y\nconcept r root\nconcept c genus r diff a=z\n"
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert issue_codes(exc) == {"E_BAD_VALUE"}


def test_parse_multiple_genus_rejected():
    text = "axis a values x, y\nconcept r root\nconcept s genus r diff a=x\nconcept c genus r diff a=y genus s diff a=x\n"
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert "E_MULTIPLE_GENUS" in issue_codes(exc)


def test_parse_compound_keyword_unsupported():
    text = "concept r root\ncompound c of r and r\n"
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert issue_codes(exc) == {"E_UNSUPPORTED"}


def test_parse_collects_line_numbers():
    text = "concept r root\nnonsense here\n"
    with pytest.raises(DslParseError) as exc:
        parse_dsl(text)
    assert exc.value.issues[0].line == 2


def test_parse_term_with_unknown_target_is_a_consistency_matter():
    text = 'concept r root\nterm "x" denotes ghost\n'
    ontology = parse_dsl(text)
    assert ontology.denotation == {"x": "ghost"}
    assert {v.rule for v in check_consistency(ontology)} == {"R7"}


# --- construction -----------------------------------------------------------


def base_ontology():
    text = (
        'ontology "t"\n'
        "axis comportement values tout-ou-rien, seuil\n"
        "axis grandeur_seuillée values tension, courant\n"
        "concept relais root\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
    )
    return parse_dsl(text)


def test_define_concept_adds_child():
    ontology = define_concept(
        base_ontology(), RAST, "relais à seuil", Differentia("grandeur_seuillée", "tension")
    )
    assert ontology.concepts[RAST].genus == "relais à seuil"
    assert check_consistency(ontology) == []


def test_define_concept_returns_new_value():
    before = base_ontology()
    define_concept(before, RAST, "relais à seuil", Differentia("grandeur_seuillée", "tension"))
    assert RAST not in before.concepts


def test_define_concept_accepts_axis_reuse_checker_rejects_it():
    ontology = define_concept(
        base_ontology(), "relais bizarre", "relais à seuil", Differentia("comportement", "tout-ou-rien")
    )
    assert {v.rule for v in check_consistency(ontology)} == {"R4"}


def test_define_concept_errors():
    ontology = base_ontology()
    with pytest.raises(UnknownGenusError):
        define_concept(ontology, "x", "ghost", Differentia("comportement", "seuil"))
    with pytest.raises(BadValueError):
        define_concept(ontology, "x", "relais", Differentia("comportement", "ghost"))
    with pytest.raises(DuplicateNameError):
        define_concept(ontology, "relais à seuil", "relais", Differentia("comportement", "tout-ou-rien"))


# --- consistency rules -------------------------------------------------------


def test_reference_ontology_is_consistent(relay):
    assert check_consistency(relay) == []


def test_r1_multiple_roots():
    ontology = parse_dsl("concept a root\nconcept b root\n")
    assert {v.rule for v in check_consistency(ontology)} == {"R1"}


def test_r1_genus_cycle():
    ontology = OkOntology(
        axes={"a": Axis("a", ("x", "y")), "b": Axis("b", ("u", "v"))},
        concepts={
            "r": OkConcept("r"),
            "p": OkConcept("p", "q", Differentia("a", "x")),
            "q": OkConcept("q", "p", Differentia("b", "u")),
        },
    )
    rules = {v.rule for v in check_consistency(ontology)}
    assert rules == {"R1"}


def test_r2_missing_differentia():
    ontology = OkOntology(
        concepts={"r": OkConcept("r"), "c": OkConcept("c", "r", None)},
    )
    assert {v.rule for v in check_consistency(ontology)} == {"R2"}


def test_r3_siblings_sharing_axis_value():
    text = (
        "axis grandeur_seuillée values tension, courant\n"
        "axis comportement values tout-ou-rien, seuil\n"
        "concept relais root\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
        "concept a genus relais à seuil diff grandeur_seuillée=tension\n"
    )
    ontology = parse_dsl(text)
    ontology.concepts["b"] = OkConcept("b", "relais à seuil", Differentia("grandeur_seuillée", "tension"))
    violations = check_consistency(ontology)
    assert {v.rule for v in violations} == {"R3"}
    assert "a" in violations[0].message and "b" in violations[0].message


def test_r4_axis_reused_on_path(relay):
    mutated = relay.copy()
    mutated.concepts = dict(relay.concepts)
    mutated.concepts["relais redondant"] = OkConcept(
        "relais redondant", RAST, Differentia("grandeur_seuillée", "courant")
    )
    assert {v.rule for v in check_consistency(mutated)} == {"R4"}


def test_r5_attribute_shadowing(relay):
    mutated = relay.copy()
    mutated.concepts = dict(relay.concepts)
    holder = mutated.concepts["relais à seuil"]
    mutated.concepts["relais à seuil"] = OkConcept(
        holder.name, holder.genus, holder.differentia,
        (AttributeDef("seuil_volts", ValueType("number")),),
    )
    assert {v.rule for v in check_consistency(mutated)} == {"R5"}


def test_r6_class_predicate_needs_visible_attribute():
    text = (
        "axis comportement values tout-ou-rien, seuil\n"
        "concept relais root\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
        "attribute seuil_volts on relais à seuil type number\n"
        "class K over relais where seuil_volts >= 1\n"
    )
    ontology = parse_dsl(text)  # seuil_volts is below the class base, not visible
    assert {v.rule for v in check_consistency(ontology)} == {"R6"}


def test_r7_denotation_target_missing(relay):
    mutated = relay.copy()
    mutated.denotation = {"relais statique": "ghost"}
    assert {v.rule for v in check_consistency(mutated)} == {"R7"}


# --- subsumption and similarity ----------------------------------------------


def test_subsumes_examples(relay):
    assert subsumes(relay, "relais à seuil", RAST)
    assert subsumes(relay, RAST, RAST)
    assert not subsumes(relay, "relais tout ou rien", RAST)
    with pytest.raises(UnknownConceptError):
        subsumes(relay, "ghost", RAST)


def test_subsumes_matches_ancestor_oracle_on_random_trees():
    rng = random.Random(20240812)
    for _ in range(100):
        ontology = random_ok_tree(rng, max_nodes=100)
        names = sorted(ontology.concepts)
        ancestors = {name: ancestors_oracle(ontology, name) for name in names}
        for specific in names:
            for general in rng.sample(names, k=min(6, len(names))):
                assert subsumes(ontology, general, specific) == (general in ancestors[specific])
            assert ontology.subsumed_closure(specific) == {
                other for other in names if specific in ancestors[other]
            }


def test_similarity_relay_example(relay):
    result = similarity(relay, RAST, "relais tout ou rien")
    assert result.lca == "relais"
    assert result.shared == ()
    assert result.distinguishing == (
        (Differentia("comportement", "seuil"), Differentia("grandeur_seuillée", "tension")),
        (Differentia("comportement", "tout-ou-rien"),),
    )


def test_similarity_identity(relay):
    result = similarity(relay, RAST, RAST)
    assert result.lca == RAST
    assert result.distinguishing == ((), ())


def test_similarity_with_root(relay):
    result = similarity(relay, "relais", RAST)
    assert result.lca == "relais"
    assert result.shared == ()


def test_similarity_shares_common_prefix(relay):
    result = similarity(relay, RAST, "relais à seuil")
    assert result.lca == "relais à seuil"
    assert result.shared == (Differentia("comportement", "seuil"),)
    assert result.distinguishing == ((Differentia("grandeur_seuillée", "tension"),), ())


def test_similarity_path_reconstruction_all_reference_pairs(relay):
    names = sorted(relay.concepts)
    for c1 in names:
        for c2 in names:
            res = similarity(relay, c1, c2)
            assert res.shared + res.distinguishing[0] == tuple(relay.differentia_path(c1))
            assert res.shared + res.distinguishing[1] == tuple(relay.differentia_path(c2))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=300, deadline=None)
def test_similarity_symmetry_and_path_reconstruction(seed):
    rng = random.Random(seed)
    ontology = random_ok_tree(rng, max_nodes=40)
    names = sorted(ontology.concepts)
    c1, c2 = rng.choice(names), rng.choice(names)
    res = similarity(ontology, c1, c2)
    mirrored = similarity(ontology, c2, c1)
    assert mirrored.lca == res.lca
    assert mirrored.shared == res.shared
    assert mirrored.distinguishing == (res.distinguishing[1], res.distinguishing[0])
    # shared + residual differentiae reconstruct each concept's full path
    assert res.shared + res.distinguishing[0] == tuple(ontology.differentia_path(c1))
    assert res.shared + res.distinguishing[1] == tuple(ontology.differentia_path(c2))


# --- classification -----------------------------------------------------------


def test_classify_matches_class(relay):
    instance = ObjectInstance("i1", RAST, {"seuil_volts": 500})
    result = classify_object(relay, instance)
    assert result.classes == ("SeuilHauteTension",)
    assert result.sets == ("Calibre500",)


def test_classify_sets_ignore_concept():
    text = (
        "axis comportement values tout-ou-rien, seuil\n"
        "concept relais root\n"
        "concept relais tout ou rien genus relais diff comportement=tout-ou-rien\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
        "attribute seuil_volts on relais à seuil type number\n"
        "attribute seuil_volts on relais tout ou rien type number\n"
        "class SeuilHauteTension over relais à seuil where seuil_volts >= 400\n"
        "set Calibre500 where seuil_volts = 500\n"
    )
    ontology = parse_dsl(text)
    assert check_consistency(ontology) == []
    unrelated = ObjectInstance("i2", "relais tout ou rien", {"seuil_volts": 500})
    result = classify_object(ontology, unrelated)
    assert result.sets == ("Calibre500",)
    assert result.classes == ()  # class base does not subsume the concept


def test_classify_empty_state_matches_nothing(relay):
    result = classify_object(relay, ObjectInstance("i3", RAST, {}))
    assert result.classes == ()
    assert result.sets == ()


def test_classify_grows_down_the_tree():
    text = (
        "axis comportement values tout-ou-rien, seuil\n"
        "axis grandeur_seuillée values tension, courant\n"
        "concept relais root\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
        "concept relais à seuil de tension genus relais à seuil diff grandeur_seuillée=tension\n"
        "attribute seuil_volts on relais type number\n"
        "class K over relais à seuil where seuil_volts >= 1\n"
    )
    ontology = parse_dsl(text)
    state = {"seuil_volts": 5}
    shallow = classify_object(ontology, ObjectInstance("a", "relais", state))
    deep = classify_object(ontology, ObjectInstance("b", RAST, state))
    assert set(shallow.classes) <= set(deep.classes)


def test_classify_type_errors(relay):
    with pytest.raises(TypeMismatchError):
        classify_object(relay, ObjectInstance("i4", RAST, {"seuil_volts": "cinq cents"}))
    with pytest.raises(TypeMismatchError):
        classify_object(relay, ObjectInstance("i5", RAST, {"ghost_attr": 1}))
    with pytest.raises(TypeMismatchError):
        # booleans are not numbers
        classify_object(relay, ObjectInstance("i6", RAST, {"seuil_volts": True}))


def test_concept_is_more_than_its_attributes():
    # same visible attributes, different differentia paths: still two concepts
    text = (
        "axis comportement values tout-ou-rien, seuil\n"
        "concept relais root\n"
        "concept relais tout ou rien genus relais diff comportement=tout-ou-rien\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
        "attribute calibre on relais type number\n"
    )
    ontology = parse_dsl(text)
    a, b = "relais tout ou rien", "relais à seuil"
    assert set(ontology.visible_attributes(a)) == set(ontology.visible_attributes(b))
    assert a != b
    assert not subsumes(ontology, a, b)
    assert not subsumes(ontology, b, a)


def test_enum_and_string_attributes():
    text = (
        "axis comportement values tout-ou-rien, seuil\n"
        "concept relais root\n"
        "concept relais à seuil genus relais diff comportement=seuil\n"
        "attribute milieu on relais type enum(air, huile)\n"
        "attribute repère on relais type string\n"
        'class RelaisHuile over relais where milieu = huile and repère != "x"\n'
    )
    ontology = parse_dsl(text)
    assert check_consistency(ontology) == []
    result = classify_object(
        ontology, ObjectInstance("i", "relais à seuil", {"milieu": "huile", "repère": "r12"})
    )
    assert result.classes == ("RelaisHuile",)
    with pytest.raises(TypeMismatchError):
        classify_object(ontology, ObjectInstance("j", "relais", {"milieu": "vide"}))
    with pytest.raises(TypeMismatchError):
        classify_object(ontology, ObjectInstance("k", "relais", {"repère": 7}))


def test_load_instances_schema(tmp_path):
    path = tmp_path / "instances.json"
    path.write_text(
        '[{"id": "i1", "concept": "relais à seuil de tension", "state": {"seuil_volts": 500}}]',
        encoding="utf-8",
    )
    instances = load_instances(path)
    assert instances[0].id == "i1"
    assert instances[0].state == {"seuil_volts": 500}
