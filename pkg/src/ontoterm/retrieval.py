"""Concept-indexed document retrieval over either conceptual structure.

Documents are annotated with the concepts their terms align to; querying a
concept returns the documents of that concept and of every concept it
subsumes.  Running the same query against the projected taxonomy and the
expert tree makes the structural difference directly measurable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence, Union

from .align import AlignmentResult, DEFAULT_STOPWORDS, align_term
from .corpus import Document, TermCandidate
from .errors import UnknownConceptError, UnresolvableLabelError
from .okmodel import OkOntology
from .projection import Taxonomy, concept_id

Structure = Union[Taxonomy, OkOntology]


def structure_name(structure: Structure) -> str:
    return "projected" if isinstance(structure, Taxonomy) else "ok"


class AnnotationSource(str, Enum):
    TERM_OCCURRENCE = "TERM_OCCURRENCE"
    MANUAL = "MANUAL"


@dataclass(frozen=True)
class DocAnnotation:
    doc_id: str
    concept: str
    source: AnnotationSource = AnnotationSource.TERM_OCCURRENCE


@dataclass
class DocIndex:
    annotations: set[DocAnnotation] = field(default_factory=set)
    unannotated_docs: tuple[str, ...] = ()
    skipped_ambiguous: tuple[str, ...] = ()

    def docs_for(self, concept: str) -> set[str]:
        return {a.doc_id for a in self.annotations if a.concept == concept}


def index_corpus(
    corpus: Sequence[Document],
    candidates: Sequence[TermCandidate],
    structure: Structure,
    alignments: Mapping[str, AlignmentResult],
) -> DocIndex:
    """Annotate documents from term occurrences.

    Every occurrence of an aligned term yields one (document, concept)
    annotation.  Ambiguous terms contribute nothing (silent guessing would
    make results unattributable) and documents left without any annotation
    are listed so the gap is visible.
    """
    annotations = set()
    skipped = set()
    for candidate in candidates:
        result = alignments.get(candidate.label)
        if result is None:
            continue
        if result.kind.value == "AMBIGUOUS":
            skipped.add(candidate.label)
            continue
        if result.concept is None:
            continue
        if result.concept not in structure:
            raise UnknownConceptError(
                f"alignment of {candidate.label!r} targets unknown concept {result.concept!r}"
            )
        for doc_id, _offset in candidate.occurrences:
            annotations.add(DocAnnotation(doc_id, result.concept))
    covered = {a.doc_id for a in annotations}
    unannotated = tuple(sorted(d.id for d in corpus if d.id not in covered))
    return DocIndex(annotations, unannotated, tuple(sorted(skipped)))


def query(index: DocIndex, structure: Structure, concept: str) -> set[str]:
    """Documents of ``concept`` and of every concept it subsumes."""
    closure = structure.subsumed_closure(concept)
    return {a.doc_id for a in index.annotations if a.concept in closure}


def resolve_label(
    structure: Structure, label: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS
) -> str | None:
    """Map a human-entered concept label to a structure-internal id."""
    if isinstance(structure, Taxonomy):
        cid = concept_id(label)
        return cid if cid in structure.concepts else None
    result = align_term(label, structure, stopwords)
    return result.concept


@dataclass
class RecallComparison:
    concept_label: str
    concept_a: str
    concept_b: str
    docs_a: tuple[str, ...]
    docs_b: tuple[str, ...]
    only_a: tuple[str, ...]
    only_b: tuple[str, ...]
    symmetric_difference: tuple[str, ...]
    #: doc id → {"a": matched closure members, "b": matched closure members}
    explanations: dict[str, dict[str, tuple[str, ...]]]


def compare_recall(
    index_a: DocIndex,
    structure_a: Structure,
    index_b: DocIndex,
    structure_b: Structure,
    concept_label: str,
    stopwords: frozenset[str] = DEFAULT_STOPWORDS,
) -> RecallComparison:
    """Run one query against both structures and explain the difference."""
    resolved = []
    for structure in (structure_a, structure_b):
        concept = resolve_label(structure, concept_label, stopwords)
        if concept is None:
            raise UnresolvableLabelError(
                f"label {concept_label!r} is not resolvable in the "
                f"{structure_name(structure)} structure"
            )
        resolved.append(concept)
    concept_a, concept_b = resolved
    docs_a = query(index_a, structure_a, concept_a)
    docs_b = query(index_b, structure_b, concept_b)

    closure_a = structure_a.subsumed_closure(concept_a)
    closure_b = structure_b.subsumed_closure(concept_b)
    explanations = {}
    for doc in sorted(docs_a | docs_b):
        explanations[doc] = {
            "a": tuple(sorted(a.concept for a in index_a.annotations
                              if a.doc_id == doc and a.concept in closure_a)),
            "b": tuple(sorted(a.concept for a in index_b.annotations
                              if a.doc_id == doc and a.concept in closure_b)),
        }
    return RecallComparison(
        concept_label=concept_label,
        concept_a=concept_a,
        concept_b=concept_b,
        docs_a=tuple(sorted(docs_a)),
        docs_b=tuple(sorted(docs_b)),
        only_a=tuple(sorted(docs_a - docs_b)),
        only_b=tuple(sorted(docs_b - docs_a)),
        symmetric_difference=tuple(sorted(docs_a ^ docs_b)),
        explanations=explanations,
    )


def index_to_json_obj(index: DocIndex) -> dict:
    return {
        "annotations": [
            {"doc_id": a.doc_id, "concept": a.concept, "source": a.source.value}
            for a in sorted(index.annotations, key=lambda a: (a.doc_id, a.concept))
        ],
        "unannotated_docs": list(index.unannotated_docs),
        "skipped_ambiguous": list(index.skipped_ambiguous),
    }


def index_from_json_obj(payload: dict) -> DocIndex:
    annotations = {
        DocAnnotation(row["doc_id"], row["concept"], AnnotationSource(row["source"]))
        for row in payload["annotations"]
    }
    return DocIndex(
        annotations,
        tuple(payload.get("unannotated_docs", ())),
        tuple(payload.get("skipped_ambiguous", ())),
    )


def comparison_to_json(comparison: RecallComparison) -> str:
    payload = {
        "concept_label": comparison.concept_label,
        "concept_a": comparison.concept_a,
        "concept_b": comparison.concept_b,
        "docs_a": list(comparison.docs_a),
        "docs_b": list(comparison.docs_b),
        "only_a": list(comparison.only_a),
        "only_b": list(comparison.only_b),
        "symmetric_difference": list(comparison.symmetric_difference),
        "explanations": {
            doc: {"a": list(sides["a"]), "b": list(sides["b"])}
            for doc, sides in comparison.explanations.items()
        },
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
