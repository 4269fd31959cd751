"""
Order statistics, histogram binning, kernel density estimation and
discretization used by tree fitting and subgroup rendering
"""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from sklearn.neighbors import KernelDensity

from src.app.Data.dataset import Column, CATEGORICAL
from src.app.errors import DataError

DENSITY_GRID_POINTS = 512


def _as_values(values: Sequence[float], what: str = "values") -> np.ndarray:
    array = np.asarray(values, dtype=float).ravel()
    if array.size == 0:
        raise DataError(f"{what} must be non-empty", "EMPTY_INPUT")
    return array


def quantile(values: Sequence[float], p: float) -> float:
    """
    Linear interpolation quantile (type 7): with sorted v1..vn and
    h = (n - 1)p + 1 the estimate is v[h] + (h - floor h)(v[h]+1 - v[h])
    """
    array = _as_values(values)
    if not 0.0 <= p <= 1.0:
        raise DataError(f"probability {p} outside [0, 1]", "OUT_OF_RANGE")
    return float(np.quantile(array, p, method="linear"))


def percentile_of(values: Sequence[float], x: float) -> float:
    """Empirical CDF: fraction of values <= x"""
    array = _as_values(values)
    return float(np.count_nonzero(array <= x)) / array.size


def fraction_below(values: Sequence[float], x: float) -> float:
    """Fraction of values strictly below x"""
    array = _as_values(values)
    return float(np.count_nonzero(array < x)) / array.size


@dataclass(frozen=True)
class Histogram:
    """
    k bins given by k + 1 ascending edges; bins are left-open right-closed
    except the first, which also holds its left edge
    """
    bin_edges: Tuple[float, ...]
    counts: Tuple[int, ...]
    bin_means: Tuple[Optional[float], ...]

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return int(sum(self.counts))


def sturges_bins(n: int) -> int:
    return int(math.ceil(math.log2(n))) + 1


def assign_bins(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Bin index per value under the left-open right-closed rule"""
    index = np.searchsorted(edges, values, side="left") - 1
    return np.clip(index, 0, len(edges) - 2)


def histogram(values: Sequence[float], paired_outcomes: Optional[Sequence[float]] = None) -> Histogram:
    """
    Sturges histogram, equal-width bins over [min, max]

    Args:
        values: the binned variable
        paired_outcomes: optional values averaged per bin; defaults to values

    Returns:
        Histogram; a constant input gives one bin of width 1 centred on the value
    """
    array = _as_values(values)
    outcomes = array if paired_outcomes is None else np.asarray(paired_outcomes, dtype=float).ravel()
    if outcomes.shape != array.shape:
        raise DataError("paired outcomes must match the binned values in length", "LENGTH_MISMATCH")

    low, high = float(array.min()), float(array.max())
    if low == high:
        return Histogram((low - 0.5, low + 0.5), (int(array.size),), (float(outcomes.mean()),))

    k = sturges_bins(array.size)
    edges = np.linspace(low, high, k + 1)
    index = assign_bins(array, edges)
    counts = np.bincount(index, minlength=k)
    sums = np.bincount(index, weights=outcomes, minlength=k)
    means = tuple(float(sums[i] / counts[i]) if counts[i] else None for i in range(k))
    return Histogram(tuple(float(edge) for edge in edges), tuple(int(c) for c in counts), means)


def category_histogram(codes: Sequence[int], n_categories: int) -> Histogram:
    """One unit-width bin per category code, centred on the code"""
    array = np.asarray(codes, dtype=np.int64).ravel()
    if array.size == 0:
        raise DataError("codes must be non-empty", "EMPTY_INPUT")
    counts = np.bincount(array, minlength=n_categories)
    edges = tuple(float(i) - 0.5 for i in range(n_categories + 1))
    return Histogram(edges, tuple(int(c) for c in counts), tuple(None for _ in range(n_categories)))


@dataclass(frozen=True)
class DensityCurve:
    grid: Tuple[float, ...]
    density: Tuple[float, ...]
    bandwidth: float

    def integral(self) -> float:
        return float(trapezoid(self.density, self.grid))


def rule_of_thumb_bandwidth(array: np.ndarray) -> float:
    """0.9 min(sd, IQR / 1.34) n^(-1/5), falling back to sd when the IQR is zero"""
    sd = float(np.std(array, ddof=1))
    iqr = quantile(array, 0.75) - quantile(array, 0.25)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    return 0.9 * spread * array.size ** (-0.2)


def kde(values: Sequence[float]) -> DensityCurve:
    """
    Gaussian kernel density on a 512 point grid spanning
    [min - 3 bw, max + 3 bw]
    """
    array = np.asarray(values, dtype=float).ravel()
    if array.size < 2:
        raise DataError("density estimation needs at least 2 values", "EMPTY_INPUT")
    if float(np.std(array, ddof=1)) == 0.0:
        raise DataError("density estimation needs values with nonzero spread", "ZERO_SPREAD")

    bandwidth = rule_of_thumb_bandwidth(array)
    grid = np.linspace(array.min() - 3 * bandwidth, array.max() + 3 * bandwidth, DENSITY_GRID_POINTS)
    estimator = KernelDensity(kernel="gaussian", bandwidth=bandwidth).fit(array[:, None])
    density = np.exp(estimator.score_samples(grid[:, None]))
    return DensityCurve(tuple(float(g) for g in grid), tuple(float(d) for d in density), bandwidth)


def format_significant(x: float, digits: int) -> str:
    text = f"{x:.{digits}g}"
    if "e" in text:
        # keep plain notation the way interval labels are usually printed
        text = np.format_float_positional(float(text), trim="-")
    return text


def interval_labels(breakpoints: Sequence[float], include_lowest: bool, label_digits: int) -> Tuple[str, ...]:
    """
    "(a,b]" labels, "[a,b]" for the first one under include_lowest; digits
    are raised until every label is distinct
    """
    breaks = list(breakpoints)
    for digits in range(max(1, label_digits), 16):
        ends = [format_significant(b, digits) for b in breaks]
        if len(set(ends)) == len(ends):
            break
    labels = []
    for i in range(len(breaks) - 1):
        opening = "[" if (i == 0 and include_lowest) else "("
        labels.append(f"{opening}{ends[i]},{ends[i + 1]}]")
    return tuple(labels)


def discretize(
    values: Sequence[float],
    breakpoints: Sequence[float],
    include_lowest: bool = True,
    label_digits: int = 3,
    name: str = "bin",
) -> Column:
    """
    Cut continuous values into left-open right-closed intervals

    Args:
        values: values inside [first, last] breakpoint
        breakpoints: strictly increasing, at least two
        include_lowest: the first interval also holds its left endpoint
        label_digits: significant digits printed for interval endpoints
        name: name of the resulting column

    Returns:
        categorical Column whose labels are the intervals
    """
    array = _as_values(values)
    breaks = np.asarray(breakpoints, dtype=float).ravel()
    if breaks.size < 2 or not np.all(np.diff(breaks) > 0):
        raise DataError("breakpoints must be strictly increasing with at least two entries", "BAD_BREAKPOINTS")

    below = array < breaks[0] if include_lowest else array <= breaks[0]
    outside = below | (array > breaks[-1])
    if outside.any():
        bad = float(array[np.flatnonzero(outside)[0]])
        raise DataError(f"value {bad} outside breakpoint range [{breaks[0]}, {breaks[-1]}]", "OUT_OF_RANGE")

    codes = assign_bins(array, breaks)
    return Column(name, CATEGORICAL, codes, interval_labels(breaks, include_lowest, label_digits))


def quantile_breakpoints(values: Sequence[float], probabilities: Sequence[float]) -> Tuple[float, ...]:
    """Distinct quantiles at the given probabilities, ascending"""
    points = sorted({quantile(values, p) for p in probabilities})
    return tuple(points)
