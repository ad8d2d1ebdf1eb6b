"""Tukey fence arithmetic shared by the theoretical and empirical paths."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_INNER = 1.5
DEFAULT_OUTER = 3.0


@dataclass(frozen=True)
class Fences:
    """Quartiles plus the inner (mild) and outer (extreme) outlier fences."""

    q1: float
    q3: float
    iqr: float
    inner_low: float
    inner_high: float
    outer_low: float
    outer_high: float


def fences_from_quartiles(
    q1: float,
    q3: float,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> Fences:
    """Build fences at ``q1/q3 -/+ multiplier*iqr``.

    The multipliers must satisfy 0 < inner <= outer so that
    outer_low <= inner_low <= q1 <= q3 <= inner_high <= outer_high.
    """
    if not (0.0 < inner <= outer):
        raise ValueError(f"fence multipliers must satisfy 0 < inner <= outer, got {inner}, {outer}")
    if q3 < q1:
        raise ValueError(f"q3 must not be below q1, got q1={q1}, q3={q3}")
    iqr = q3 - q1
    return Fences(
        q1=q1,
        q3=q3,
        iqr=iqr,
        inner_low=q1 - inner * iqr,
        inner_high=q3 + inner * iqr,
        outer_low=q1 - outer * iqr,
        outer_high=q3 + outer * iqr,
    )
