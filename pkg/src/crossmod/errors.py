"""Exceptions and the validation report shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field


class CrossmodError(Exception):
    pass


class MalformedTable(CrossmodError):
    pass


class UnknownObject(CrossmodError):
    pass


class NotAnAction(CrossmodError):
    pass


class BaseMismatch(CrossmodError):
    pass


class NotNormal(CrossmodError):
    pass


class NotAbelian(CrossmodError):
    pass


class NotEquivariant(CrossmodError):
    pass


class DomainMismatch(CrossmodError):
    pass


class InvalidHomotopy(CrossmodError):
    pass


class NotInvertible(CrossmodError):
    pass


class NotAutomorphism(CrossmodError):
    pass


class NotRegular(CrossmodError):
    pass


class InvalidTwoCrossed(CrossmodError):
    pass


class NoIsomorphismFound(CrossmodError):
    """Raised when a roundtrip cannot be matched; indicates a bug, not a math failure."""


class SearchSpaceExceeded(CrossmodError):
    """An enumeration would visit more candidates than ``XMOD_MAX_SIZE`` allows."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.axiom}: witness {self.witness}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass
class ValidationReport:
    """Violations found by a checker, plus optional named flags.

    An empty report (no violations) means every checked axiom holds.
    """

    violations: list[Violation] = field(default_factory=list)
    flags: dict[str, object] = field(default_factory=dict)
    limit: int = 20

    def add(self, axiom: str, witness: tuple, detail: str = "") -> None:
        # keep only the first few witnesses per axiom family
        if sum(1 for v in self.violations if v.axiom == axiom) < self.limit:
            self.violations.append(Violation(axiom, tuple(witness), detail))
        self.flags.setdefault("counts", {})
        counts = self.flags["counts"]
        counts[axiom] = counts.get(axiom, 0) + 1

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.witness, v.detail))
        for k, n in other.flags.get("counts", {}).items():
            counts = self.flags.setdefault("counts", {})
            counts[prefix + k] = counts.get(prefix + k, 0) + n

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __bool__(self) -> bool:
        # truthy when there is something to report
        return bool(self.violations)

    def __str__(self) -> str:
        if not self.violations:
            return "ok"
        return "\n".join(str(v) for v in self.violations)
