"""Exception hierarchy for gsokit.

Every error raised on purpose by the library derives from :class:`GsoError`.
Validation itself never raises; it returns a
:class:`gsokit.core.report.ValidationReport`. Errors raised because a
precondition failed keep that report on ``.report``.
"""
from __future__ import annotations


class GsoError(Exception):
    """Base class for all gsokit errors."""


class ConfigError(GsoError):
    """A configuration value could not be interpreted."""


class MalformedGraph(GsoError, ValueError):
    """A digraph has a self-loop or an edge endpoint outside its vertices."""


class CyclicInput(GsoError):
    """An operation that needs a DAG was given a graph with a cycle."""


class VertexMismatch(GsoError):
    """Two graphs combined by set algebra have different vertex sets."""


class _ReportError(GsoError):
    def __init__(self, message: str, report=None) -> None:
        super().__init__(message)
        self.report = report


class InvalidSpec(_ReportError):
    """A specification does not satisfy the specification axioms."""


class InvalidDecomposition(_ReportError):
    """A decomposition violates one of its graph conditions."""

    def __init__(self, condition: str, report=None) -> None:
        super().__init__(f"invalid decomposition: {condition}", report)
        self.condition = condition


class NotStratified(_ReportError):
    """A relation is not a stratified order."""


class MalformedRanking(GsoError, ValueError):
    """A ranking structure has an empty step."""


class ParseError(GsoError):
    """A step sequence does not match the step grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class DuplicateOccurrence(GsoError):
    """An occurrence appears in more than one step."""

    def __init__(self, occurrence: str) -> None:
        super().__init__(f"duplicate occurrence {occurrence!r}")
        self.occurrence = occurrence


class CarrierMismatch(GsoError):
    """Orders or specifications that must share a carrier do not."""


class CarrierTooLarge(GsoError):
    """The carrier exceeds the enumeration bound."""

    def __init__(self, size: int, limit: int) -> None:
        super().__init__(f"carrier of {size} occurrences exceeds the enumeration bound {limit}")
        self.size = size
        self.limit = limit


class EmptyFamily(GsoError):
    """An operation that needs at least one member was given an empty family."""


class UnknownObservation(GsoError):
    """An observation id is not an observation of the model."""


class NotAModel(_ReportError):
    """A finite structure fails an axiom of the theory it was classified under."""

    def __init__(self, axiom: str, report=None) -> None:
        super().__init__(f"not a model: {axiom} fails", report)
        self.axiom = axiom


class InvalidClassificationData(_ReportError):
    """Classification data violates one of its defining conditions."""

    def __init__(self, condition: str, report=None) -> None:
        super().__init__(f"invalid classification data: {condition}", report)
        self.condition = condition


class SizeLimit(GsoError):
    """A model is too large for exhaustive treatment."""


class InvalidPslModel(_ReportError):
    """A PSL-core model is not well formed."""


class DocumentError(GsoError):
    """A model document cannot be read or is inconsistent."""
