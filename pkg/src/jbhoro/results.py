"""Small result types: extended-real detour costs, norm estimates, reports."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["DetourCost", "OpNormEstimate", "BridgeReport"]


@dataclass(frozen=True)
class DetourCost:
    """A detour cost or distance: a finite value or an explicit infinity.

    Infinity is a variant of the result, never a float sentinel; accessing
    ``value`` on an infinite cost raises.
    """

    finite: bool
    _value: float | None = None

    @classmethod
    def of(cls, value: float) -> "DetourCost":
        return cls(True, float(value))

    @classmethod
    def infinite(cls) -> "DetourCost":
        return cls(False, None)

    @property
    def value(self) -> float:
        if not self.finite:
            raise ValueError("detour cost is infinite")
        return self._value

    def __add__(self, other: "DetourCost") -> "DetourCost":
        if self.finite and other.finite:
            return DetourCost.of(self._value + other._value)
        return DetourCost.infinite()

    def __repr__(self) -> str:
        return f"DetourCost({self._value!r})" if self.finite else "DetourCost(inf)"


@dataclass(frozen=True)
class OpNormEstimate:
    """Induced-norm estimate: certified lower bound plus equivalence bracket.

    ``value`` is the best ascent value (a true lower bound); ``upper_bound``
    comes from the Frobenius equivalence, so the true norm lies in
    [value, upper_bound] and ``slack`` is the bracket width.
    """

    value: float
    upper_bound: float
    restarts: int
    iterations: int

    @property
    def slack(self) -> float:
        return self.upper_bound - self.value


@dataclass(frozen=True)
class BridgeReport:
    """Gap report for the boundary extension of the exponential map."""

    k: float
    gaps: tuple[float, ...]
    max_gap: float
    limit_values: tuple[float, ...]
    target_values: tuple[float, ...]
