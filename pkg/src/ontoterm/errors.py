"""Error types shared across the toolkit.

Every error carries a stable ``code`` so the CLI can map failures to exit
codes and callers can branch on the failure class without parsing messages.
"""

from __future__ import annotations

from dataclasses import dataclass


class OntoTermError(Exception):
    """Base class for all toolkit errors."""

    code = "E_ERROR"


class NoCorpusError(OntoTermError):
    code = "E_NO_CORPUS"


class EncodingError(OntoTermError):
    code = "E_ENCODING"


class BadPatternError(OntoTermError):
    code = "E_BAD_PATTERN"


class UnknownTermError(OntoTermError):
    code = "E_UNKNOWN_TERM"


class UnknownRefError(OntoTermError):
    code = "E_UNKNOWN_REF"


class CycleError(OntoTermError):
    code = "E_CYCLE"


class UnknownConceptError(OntoTermError):
    code = "E_UNKNOWN_CONCEPT"


class DuplicateNameError(OntoTermError):
    code = "E_DUP_NAME"


class UnknownGenusError(OntoTermError):
    code = "E_UNKNOWN_GENUS"


class UnknownAxisError(OntoTermError):
    code = "E_UNKNOWN_AXIS"


class BadValueError(OntoTermError):
    code = "E_BAD_VALUE"


class UnsupportedError(OntoTermError):
    code = "E_UNSUPPORTED"


class MultipleGenusError(OntoTermError):
    code = "E_MULTIPLE_GENUS"


class TypeMismatchError(OntoTermError):
    code = "E_TYPE"


class UnresolvableLabelError(OntoTermError):
    code = "E_UNRESOLVABLE"


class ConfigError(OntoTermError):
    code = "E_CONFIG"


@dataclass(frozen=True)
class DslIssue:
    """One problem found while parsing ontology source; ``line`` is 1-based."""

    line: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.code}: {self.message}"


class DslParseError(OntoTermError):
    """Aggregated parse failure; ``issues`` holds every problem found."""

    code = "E_SYNTAX"

    def __init__(self, issues: list[DslIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class InconsistentOntologyError(OntoTermError):
    """Raised when an operation requires a consistent ontology.

    ``violations`` carries the offending rule reports so callers can show
    them without re-running the checker.
    """

    code = "E_INCONSISTENT"

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)
