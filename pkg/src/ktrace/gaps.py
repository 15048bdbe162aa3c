"""A signed inequality gap together with the scale it is judged against."""

from __future__ import annotations

from typing import NamedTuple


class Gap(NamedTuple):
    """``value = larger side - smaller side``; nonnegative when the inequality holds.

    ``scale`` is the largest magnitude of the compared quantities, floored at 1,
    so ``value >= -tol * scale`` is the uniform pass criterion.
    """

    value: float
    scale: float

    @classmethod
    def between(cls, smaller: float, larger: float, *others: float) -> "Gap":
        """Gap for the claim ``smaller <= larger``."""
        mags = [abs(smaller), abs(larger), *(abs(o) for o in others), 1.0]
        return cls(float(larger - smaller), float(max(mags)))

    @property
    def normalized(self) -> float:
        return self.value / self.scale

    def holds(self, tol: float) -> bool:
        return self.value >= -tol * self.scale


def worst(gaps) -> Gap:
    """The gap with the smallest normalized value."""
    return min(gaps, key=lambda g: g.normalized)
