"""Box-plot summaries and the rank-sum location test.

Quantiles use linear interpolation of order statistics (the numpy/R
default, "type 7"): quantile q sits at fractional position (n - 1) * q of
the sorted sample. Whiskers follow the 1.5 * IQR convention: they reach
the most extreme observations still inside the fences, and anything
strictly outside is listed as an outlier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

QUANTILE_CONVENTION = "linear interpolation of order statistics at (n-1)*q (type 7)"

WHISKER_RULE = "most extreme observations within 1.5*IQR of the quartiles"


@dataclass(frozen=True)
class BoxSummary:
    """Five-number summary plus mean, fences applied."""

    n: int
    mean: float
    median: float
    q1: float
    q3: float
    iqr: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean": self.mean,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "iqr": self.iqr,
            "whisker_low": self.whisker_low,
            "whisker_high": self.whisker_high,
            "outliers": list(self.outliers),
        }


def summarize(samples) -> BoxSummary:
    """Box-plot statistics of a non-empty numeric sample."""
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size == 0:
        raise ValidationError("cannot summarize an empty sample")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("samples must be finite")
    arr = np.sort(arr)
    q1, median, q3 = (float(q) for q in np.quantile(arr, [0.25, 0.5, 0.75]))
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inside = arr[(arr >= lo_fence) & (arr <= hi_fence)]
    # Quartiles are interpolated from data, so the fences always bracket
    # them and at least one observation stays inside.
    outliers = arr[(arr < lo_fence) | (arr > hi_fence)]
    return BoxSummary(
        n=int(arr.size),
        mean=float(np.mean(arr)),
        median=median,
        q1=q1,
        q3=q3,
        iqr=iqr,
        whisker_low=float(inside[0]),
        whisker_high=float(inside[-1]),
        outliers=tuple(float(x) for x in outliers),
    )


def _midranks(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ranks 1..n with ties sharing their average rank.

    Returns (ranks aligned with ``values``, tie-group sizes).
    """
    uniq, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    starts = np.cumsum(counts) - counts
    group_midrank = starts + (counts + 1) / 2.0
    return group_midrank[inverse], counts


def rank_sum_test(a, b) -> tuple[float, float]:
    """Mann-Whitney U for the first sample, with a normal-theory p-value.

    U counts pairwise wins of ``a`` over ``b``, ties counting half. The
    two-sided p-value uses the tie-corrected normal approximation with a
    continuity correction clamped at zero, so two identical samples give
    p = 1.0 rather than an artifact of the correction. Degenerate data
    (every observation equal) also gives p = 1.0.
    """
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.size == 0 or y.size == 0:
        raise ValidationError("rank-sum test needs two non-empty samples")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValidationError("samples must be finite")
    n1, n2 = x.size, y.size
    n = n1 + n2
    ranks, tie_counts = _midranks(np.concatenate([x, y]))
    r1 = float(np.sum(ranks[:n1]))
    u = r1 - n1 * (n1 + 1) / 2.0
    mu = n1 * n2 / 2.0
    tie_term = float(np.sum(tie_counts.astype(np.float64) ** 3 - tie_counts))
    sigma_sq = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if sigma_sq <= 0.0:
        return float(u), 1.0
    z = max(abs(u - mu) - 0.5, 0.0) / math.sqrt(sigma_sq)
    p = math.erfc(z / math.sqrt(2.0))
    return float(u), min(1.0, float(p))
