"""Shared random-structure generators and independent oracles for tests.

The oracles deliberately use different mechanics than the implementations
they check: closure/ancestry are computed by fixpoint iteration over raw
edge lists, and pattern-match counting re-runs the scan as a regular
expression over a POS-code string.
"""

from __future__ import annotations

import random
import re

from ontoterm.corpus import POS, AnnotatedToken, PatternDef
from ontoterm.okmodel import Axis, Differentia, OkConcept, OkOntology
from ontoterm.projection import Concept, Taxonomy


def closure_oracle(edges: set[tuple[str, str]], nodes: set[str], start: str) -> set[str]:
    """Reflexive down-closure by fixpoint over (child, parent) edges."""
    closed = {start}
    changed = True
    while changed:
        changed = False
        for child, parent in edges:
            if parent in closed and child not in closed:
                closed.add(child)
                changed = True
    return closed


def ancestors_oracle(ontology: OkOntology, name: str) -> set[str]:
    """Reflexive ancestor set by fixpoint over the genus map."""
    out = {name}
    changed = True
    while changed:
        changed = False
        for concept in ontology.concepts.values():
            if concept.name in out and concept.genus is not None and concept.genus not in out:
                out.add(concept.genus)
                changed = True
    return out


def random_taxonomy(rng: random.Random, max_nodes: int = 50) -> Taxonomy:
    """Random DAG taxonomy; edges only point from later to earlier nodes,
    so acyclicity holds by construction."""
    n = rng.randint(1, max_nodes)
    ids = [f"c{i}" for i in range(n)]
    concepts = {cid: Concept(cid, cid, (cid,)) for cid in ids}
    edges = set()
    for i in range(1, n):
        for parent in rng.sample(range(i), k=min(i, rng.choice((0, 1, 1, 2)))):
            edges.add((ids[i], ids[parent]))
    return Taxonomy(concepts, edges)


def random_ok_tree(
    rng: random.Random, max_nodes: int = 100, n_axes: int = 6, attributes: bool = False
) -> OkOntology:
    """Random consistent ontology: a tree where every child takes a fresh
    axis for its path and a value unused among its same-axis siblings."""
    axes = {
        f"axis{i}": Axis(f"axis{i}", tuple(f"v{i}_{j}" for j in range(8)))
        for i in range(n_axes)
    }
    ontology = OkOntology(name="random", axes=dict(axes))
    ontology.concepts["n0"] = OkConcept("n0")
    path_axes = {"n0": frozenset()}
    created = ["n0"]
    n = rng.randint(1, max_nodes)
    for i in range(1, n):
        name = f"n{i}"
        parent = rng.choice(created)
        used_on_path = path_axes[parent]
        free = [a for a in axes if a not in used_on_path]
        if not free:
            continue
        axis = rng.choice(free)
        sibling_values = {
            c.differentia.value
            for c in ontology.concepts.values()
            if c.genus == parent and c.differentia and c.differentia.axis == axis
        }
        values = [v for v in axes[axis].values if v not in sibling_values]
        if not values:
            continue
        ontology.concepts[name] = OkConcept(name, parent, Differentia(axis, rng.choice(values)))
        path_axes[name] = used_on_path | {axis}
        created.append(name)
    if attributes:
        from ontoterm.okmodel import AttributeDef, ValueType

        for name in list(ontology.concepts):
            if rng.random() < 0.3:
                concept = ontology.concepts[name]
                attr = AttributeDef(f"attr_{name}", ValueType("number"))
                ontology.concepts[name] = OkConcept(
                    concept.name, concept.genus, concept.differentia, (attr,)
                )
    return ontology


_POS_CODE = {
    POS.NOUN: "N",
    POS.ADJ: "A",
    POS.PREP: "P",
    POS.DET: "D",
    POS.VERB: "V",
    POS.OTHER: "O",
}


def regex_match_count(tokens: list[AnnotatedToken], patterns: list[PatternDef]) -> int:
    """Count pattern matches with a regex over a POS-code string.

    Longest-match-wins falls out of ordering the alternation by length;
    ``re.finditer`` supplies the non-overlapping left-to-right scan.
    """
    code = "".join(_POS_CODE[t.pos] for t in tokens)
    alternation = "|".join(
        "".join(_POS_CODE[p] for p in pattern.sequence)
        for pattern in sorted(patterns, key=lambda p: -len(p.sequence))
    )
    return sum(1 for _ in re.finditer(alternation, code))
