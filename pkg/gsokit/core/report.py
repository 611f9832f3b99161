"""Validation reports and axiom identifiers.

A :class:`ValidationReport` lists falsified axiom instances, each with the
tuple of elements that witnesses the failure. Reports are empty exactly
when everything checked holds. Witnesses are capped (see
:class:`gsokit.config.Settings`) but the per-axiom counts are always exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple


class AxiomId(str, Enum):
    """Stable names of the displayed axioms."""

    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    GSO1 = "GSO1"
    GSO2 = "GSO2"
    GSO3 = "GSO3"
    GSO4 = "GSO4"
    GSO5 = "GSO5"
    GSO6 = "GSO6"
    GSO7 = "GSO7"
    GSO8 = "GSO8"
    GSO9 = "GSO9"
    O1 = "O1"
    O2 = "O2"
    O3 = "O3"
    O4 = "O4"
    O5 = "O5"
    O6 = "O6"
    O7 = "O7"
    O8 = "O8"
    O9 = "O9"
    O10 = "O10"
    EX1 = "EX1"
    EX2 = "EX2"

    def __str__(self) -> str:
        return self.value


UNIVERSE_AXIOMS = (AxiomId.E1, AxiomId.E2, AxiomId.E3, AxiomId.E4, AxiomId.E5)
SPEC_AXIOMS = tuple(AxiomId(f"GSO{i}") for i in range(1, 10))
OBSERVATION_AXIOMS = tuple(AxiomId(f"O{i}") for i in range(1, 11))

_RANK = {axiom.value: i for i, axiom in enumerate(AxiomId)}

Witness = Tuple[str, ...]


def _sort_key(name: str) -> Tuple[int, str]:
    return (_RANK.get(name, len(_RANK)), name)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Witness

    def render(self) -> str:
        return f"{self.axiom} ({','.join(self.witness)})"


@dataclass(frozen=True)
class ValidationReport:
    """Falsified axiom instances.

    Attributes:
        violations: Recorded violations in axiom order, then witness order.
        counts: Number of falsified instances per axiom, including those
            dropped by the witness cap.
    """

    violations: Tuple[Violation, ...] = ()
    counts: Tuple[Tuple[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.counts

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def axioms(self) -> List[str]:
        """Names of the violated axioms, in report order."""
        return [name for name, _ in self.counts]

    def count(self, axiom: str) -> int:
        return dict(self.counts).get(str(axiom), 0)

    def witnesses(self, axiom: str) -> List[Witness]:
        return [v.witness for v in self.violations if v.axiom == str(axiom)]

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def lines(self) -> List[str]:
        return [v.render() for v in self.violations]

    def merge(self, *others: "ValidationReport") -> "ValidationReport":
        builder = ReportBuilder(cap=None)
        for report in (self,) + others:
            builder.extend(report)
        return builder.build()


@dataclass
class ReportBuilder:
    """Accumulates violations for one report.

    Args:
        cap: Maximum number of witnesses kept overall; None keeps all.
        first_only: Keep only the first witness of each axiom.
    """

    cap: Optional[int] = None
    first_only: bool = False
    _found: Dict[str, List[Witness]] = field(default_factory=dict)
    _counts: Dict[str, int] = field(default_factory=dict)
    _kept: int = 0

    def add(self, axiom: str, *witness: str) -> None:
        name = str(axiom)
        self._counts[name] = self._counts.get(name, 0) + 1
        kept = self._found.setdefault(name, [])
        if kept and (self.first_only or (self.cap is not None and self._kept >= self.cap)):
            # the first witness of every axiom is always kept
            return
        kept.append(tuple(witness))
        self._kept += 1

    def extend(self, report: ValidationReport) -> None:
        for violation in report.violations:
            self._found.setdefault(violation.axiom, []).append(violation.witness)
            self._kept += 1
        for name, count in report.counts:
            self._counts[name] = self._counts.get(name, 0) + count

    def build(self) -> ValidationReport:
        names = sorted(self._counts, key=_sort_key)
        violations = []
        for name in names:
            for witness in sorted(set(self._found.get(name, ()))):
                violations.append(Violation(name, witness))
        counts = tuple((name, self._counts[name]) for name in names)
        return ValidationReport(tuple(violations), counts)


def report_of(violations: Iterable[Tuple[str, Witness]]) -> ValidationReport:
    """Build an uncapped report from ``(axiom, witness)`` pairs."""
    builder = ReportBuilder()
    for axiom, witness in violations:
        builder.add(axiom, *witness)
    return builder.build()
