"""Projection of the validated lexical network into a candidate taxonomy.

One concept per validated term (synonyms collapse into a single concept),
one subsumption edge per validated hyponymy edge.  The result is a DAG of
labeled concepts with provenance back to the denoting terms: a candidate
conceptual structure, nothing more.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field

from .errors import CycleError, UnknownConceptError
from .lexnet import LexNet, RelationKind, Status, find_validated_hyponymy_cycle


def concept_id(label: str) -> str:
    """Stable join key: NFC, lowercased, whitespace collapsed."""
    normalized = unicodedata.normalize("NFC", label).lower()
    return re.sub(r"\s+", " ", normalized).strip()


@dataclass(frozen=True)
class Concept:
    id: str
    label: str
    denoting_terms: tuple[str, ...]


@dataclass
class Taxonomy:
    concepts: dict[str, Concept] = field(default_factory=dict)
    subsumption: set[tuple[str, str]] = field(default_factory=set)  # (child, parent)

    def __contains__(self, cid: str) -> bool:
        return cid in self.concepts

    @property
    def roots(self) -> list[str]:
        with_parent = {child for child, _ in self.subsumption}
        return sorted(cid for cid in self.concepts if cid not in with_parent)

    def parents(self, cid: str) -> list[str]:
        return sorted(parent for child, parent in self.subsumption if child == cid)

    def children(self, cid: str) -> list[str]:
        return sorted(child for child, parent in self.subsumption if parent == cid)

    def subsumed_closure(self, cid: str) -> set[str]:
        """The concept plus everything it subsumes (reflexive-transitive)."""
        if cid not in self.concepts:
            raise UnknownConceptError(f"unknown concept: {cid!r}")
        down: dict[str, list[str]] = {}
        for child, parent in self.subsumption:
            down.setdefault(parent, []).append(child)
        seen = {cid}
        queue = [cid]
        while queue:
            current = queue.pop()
            for child in down.get(current, ()):
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        return seen


def _synonym_groups(net: LexNet, validated_labels: set[str]) -> dict[str, list[str]]:
    parent: dict[str, str] = {label: label for label in validated_labels}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in net.relations_of(RelationKind.SYNONYMY, Status.VALIDATED):
        if rel.source in validated_labels and rel.target in validated_labels:
            ra, rb = find(rel.source), find(rel.target)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: dict[str, list[str]] = {}
    for label in validated_labels:
        groups.setdefault(find(label), []).append(label)
    return {rep: sorted(members) for rep, members in groups.items()}


def _find_cycle(edges: set[tuple[str, str]]) -> list[str] | None:
    adjacency: dict[str, list[str]] = {}
    for child, parent_ in sorted(edges):
        adjacency.setdefault(child, []).append(parent_)
    color: dict[str, int] = {}
    path: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = 1
        path.append(node)
        for nxt in adjacency.get(node, ()):
            if color.get(nxt, 0) == 1:
                return path[path.index(nxt):] + [nxt]
            if color.get(nxt, 0) == 0:
                found = visit(nxt)
                if found:
                    return found
        path.pop()
        color[node] = 2
        return None

    for start in sorted(adjacency):
        if color.get(start, 0) == 0:
            found = visit(start)
            if found:
                return found
    return None


def project(net: LexNet) -> Taxonomy:
    """Project validated material into a taxonomy.

    Candidate and rejected terms or edges are excluded.  Raises CycleError,
    naming the labels involved, when validated hyponymy is cyclic (also
    after synonym collapse, which can merge endpoints).
    """
    cycle = find_validated_hyponymy_cycle(net)
    if cycle:
        raise CycleError("hyponymy cycle: " + " -> ".join(cycle))

    validated = {t.label for t in net.validated_terms()}
    groups = _synonym_groups(net, validated)
    rep_of = {member: rep for rep, members in groups.items() for member in members}

    concepts = {}
    for rep, members in groups.items():
        cid = concept_id(rep)
        concepts[cid] = Concept(cid, rep, tuple(members))

    edges = set()
    for rel in net.relations_of(RelationKind.HYPONYMY, Status.VALIDATED):
        if rel.source not in validated or rel.target not in validated:
            continue
        child = concept_id(rep_of[rel.source])
        parent = concept_id(rep_of[rel.target])
        if child != parent:
            edges.add((child, parent))

    post_cycle = _find_cycle(edges)
    if post_cycle:
        labels = [concepts[cid].label for cid in post_cycle]
        raise CycleError("subsumption cycle after synonym collapse: " + " -> ".join(labels))
    return Taxonomy(concepts, edges)


def subsumed_closure(taxonomy: Taxonomy, cid: str) -> set[str]:
    return taxonomy.subsumed_closure(cid)


def taxonomy_to_json(taxonomy: Taxonomy) -> str:
    payload = {
        "concepts": [
            {"id": c.id, "label": c.label, "denoting_terms": list(c.denoting_terms)}
            for c in sorted(taxonomy.concepts.values(), key=lambda c: c.id)
        ],
        "subsumption": sorted([child, parent] for child, parent in taxonomy.subsumption),
        "roots": taxonomy.roots,
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def taxonomy_from_json(text: str) -> Taxonomy:
    payload = json.loads(text)
    concepts = {
        row["id"]: Concept(row["id"], row["label"], tuple(row["denoting_terms"]))
        for row in payload["concepts"]
    }
    edges = {(child, parent) for child, parent in payload["subsumption"]}
    return Taxonomy(concepts, edges)


def taxonomy_to_dot(taxonomy: Taxonomy) -> str:
    """Graphviz rendering; children point up at their parents."""
    lines = ["digraph taxonomy {", "  rankdir=BT;"]
    for cid in sorted(taxonomy.concepts):
        lines.append(f'  "{taxonomy.concepts[cid].label}";')
    for child, parent in sorted(taxonomy.subsumption):
        lines.append(f'  "{taxonomy.concepts[child].label}" -> "{taxonomy.concepts[parent].label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
