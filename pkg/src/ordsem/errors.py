"""Shared exception taxonomy and the generic verification report."""

from __future__ import annotations

from dataclasses import dataclass, field


class OrdsemError(Exception):
    """Base class for every error raised by this package."""


class InputError(OrdsemError, ValueError):
    """Malformed input: unknown element ids, partial tables, bad files."""


class CapacityError(OrdsemError):
    """A size guard was exceeded; the requested enumeration is too large."""


class StructureError(OrdsemError):
    """The structure lacks a property the operation needs (e.g. a join)."""


class ValuationError(OrdsemError):
    """A valuation does not cover the free variables of a formula."""


class PreconditionError(OrdsemError):
    """A documented precondition of the operation does not hold."""


class StagingError(OrdsemError):
    """A staged construction is not complete enough to be packaged."""


class InvariantViolation(OrdsemError):
    """An internal invariant failed; points at a broken oracle or structure."""


@dataclass(frozen=True)
class Report:
    """Outcome of a verification pass: instance count and violations found."""

    checked: int = 0
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return f"ok ({self.checked} instances checked)"
        head = "; ".join(self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        return f"{len(self.violations)} violations of {self.checked} checked: {head}{more}"
