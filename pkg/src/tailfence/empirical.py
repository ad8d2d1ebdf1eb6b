"""Order statistics, the type-6 empirical quantile, and empirical outlier rates.

The quantile convention interpolates linearly between order statistics at
plotting positions k/(n+1) (R's ``quantile(..., type = 6)``), so the k-th
order statistic is returned exactly at p = k/(n+1).
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .fences import DEFAULT_INNER, DEFAULT_OUTER, Fences, fences_from_quartiles


class Sample:
    """Immutable collection of finite observations with cached order statistics."""

    __slots__ = ("values", "sorted")

    def __init__(self, values):
        arr = np.atleast_1d(np.asarray(values, dtype=float))
        if arr.ndim != 1:
            raise ValueError("sample must be one-dimensional")
        if arr.size < 1:
            raise ValueError("sample must contain at least one observation")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sample contains NaN or infinite values")
        self.values = arr.copy()
        self.sorted = np.sort(arr)
        self.values.flags.writeable = False
        self.sorted.flags.writeable = False

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Sample(n={self.n}, min={self.sorted[0]:g}, max={self.sorted[-1]:g})"


def empirical_quantile_flagged(sample: Sample, p: float) -> tuple[float, bool]:
    """Type-6 quantile with a flag marking p outside [1/(n+1), n/(n+1)].

    Out-of-range p is clamped to the nearest extreme order statistic
    instead of raising, so small-sample pipelines degrade gracefully.
    """
    x = sample.sorted
    n = x.size
    h = p * (n + 1)
    # Snap to the plotting-position knots: p = k/(n+1) must return X_(k:n)
    # bit-exactly even though h = p*(n+1) carries rounding error.
    fuzz = 8.0 * np.finfo(float).eps * max(1.0, abs(h))
    if h < 1.0 - fuzz:
        return float(x[0]), True
    if h > n + fuzz:
        return float(x[-1]), True
    j = int(math.floor(h + fuzz))
    g = h - j
    if g < fuzz or j >= n:
        j = min(j, n)
        return float(x[j - 1]), False
    return float(x[j - 1] + g * (x[j] - x[j - 1])), False


def empirical_quantile(sample: Sample, p: float) -> float:
    """Type-6 empirical quantile (clamped outside the valid p-range)."""
    value, _ = empirical_quantile_flagged(sample, p)
    return value


def empirical_fences(
    sample: Sample,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> Fences:
    """Fences from the type-6 empirical quartiles; requires n >= 3."""
    if sample.n < 3:
        raise ValueError("sample too small for quartile fences")
    q1 = empirical_quantile(sample, 0.25)
    q3 = empirical_quantile(sample, 0.75)
    return fences_from_quartiles(q1, q3, inner, outer)


def fraction_above(sample: Sample, threshold: float) -> float:
    """Fraction of observations strictly above a threshold."""
    count = sample.n - int(np.searchsorted(sample.sorted, threshold, side="right"))
    return count / sample.n


def fraction_below(sample: Sample, threshold: float) -> float:
    """Fraction of observations strictly below a threshold."""
    return int(np.searchsorted(sample.sorted, threshold, side="left")) / sample.n


def empirical_p_eR(
    sample: Sample,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> float:
    """Fraction of extreme right outliers: observations above the outer fence."""
    return fraction_above(sample, empirical_fences(sample, inner, outer).outer_high)


def empirical_p_eL(
    sample: Sample,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> float:
    """Fraction of extreme left outliers: observations below the outer fence."""
    return fraction_below(sample, empirical_fences(sample, inner, outer).outer_low)


def empirical_p_mR(
    sample: Sample,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> float:
    """Fraction of mild right outliers: between the inner and outer fences."""
    fen = empirical_fences(sample, inner, outer)
    return fraction_above(sample, fen.inner_high) - fraction_above(sample, fen.outer_high)


def empirical_p_mL(
    sample: Sample,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> float:
    """Fraction of mild left outliers: between the inner and outer fences."""
    fen = empirical_fences(sample, inner, outer)
    return fraction_below(sample, fen.inner_low) - fraction_below(sample, fen.outer_low)


def outlier_band_counts(
    sample: Sample,
    inner: float = DEFAULT_INNER,
    outer: float = DEFAULT_OUTER,
) -> tuple[int, int, int, int, int]:
    """Counts in the five bands (extreme-left, mild-left, in-fence, mild-right, extreme-right).

    The bands partition the sample exactly: fence-equal points count as in-fence
    (strict inequalities on both sides, mirroring the theoretical definitions).
    """
    fen = empirical_fences(sample, inner, outer)
    x = sample.sorted
    n = sample.n
    below_outer = int(np.searchsorted(x, fen.outer_low, side="left"))
    below_inner = int(np.searchsorted(x, fen.inner_low, side="left"))
    above_inner = n - int(np.searchsorted(x, fen.inner_high, side="right"))
    above_outer = n - int(np.searchsorted(x, fen.outer_high, side="right"))
    inside = n - below_inner - above_inner
    return (
        below_outer,
        below_inner - below_outer,
        inside,
        above_inner - above_outer,
        above_outer,
    )


def load_sample(path) -> Sample:
    """Read a sample from newline-delimited decimal text or single-column CSV.

    A non-numeric first line is treated as a header and skipped.
    """
    lines = Path(path).read_text().splitlines()
    rows = [(i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()]
    if not rows:
        raise ValueError(f"{path}: no data")
    start = 0
    try:
        float(rows[0][1])
    except ValueError:
        start = 1  # header
    values = []
    for lineno, text in rows[start:]:
        try:
            values.append(float(text))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: cannot parse {text!r} as a number") from None
    if not values:
        raise ValueError(f"{path}: no data after header")
    return Sample(values)
