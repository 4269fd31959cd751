"""
Split point search on the selected covariate: every distinct observed
value v is a candidate for the predicate x <= v
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.app.errors import FitError


@dataclass(frozen=True)
class SplitPoint:
    breakpoint: float
    criterion: float


def _candidates(x: np.ndarray, minbucket: int):
    """
    Sort once and return (order, last position of each distinct value that
    leaves >= minbucket rows on both sides)
    """
    order = np.argsort(x, kind="stable")
    xs = x[order]
    n = xs.size
    last = np.flatnonzero(np.diff(xs) > 0)
    n_left = last + 1
    admissible = (n_left >= minbucket) & (n - n_left >= minbucket)
    return order, xs, last[admissible]


def between_group_ss(y: np.ndarray, order: np.ndarray, last: np.ndarray) -> np.ndarray:
    """n_L (ybar_L - ybar)^2 + n_R (ybar_R - ybar)^2 for each cut position"""
    ys = y[order]
    n = ys.size
    total = ys.sum()
    grand = total / n
    cumulative = np.cumsum(ys)
    n_left = last + 1
    n_right = n - n_left
    mean_left = cumulative[last] / n_left
    mean_right = (total - cumulative[last]) / n_right
    return n_left * (mean_left - grand) ** 2 + n_right * (mean_right - grand) ** 2


def pearson_chi_square(codes: np.ndarray, order: np.ndarray, last: np.ndarray, n_categories: int) -> np.ndarray:
    """Pearson chi-square of the 2 x c table (side by category) for each cut"""
    cs = codes[order]
    n = cs.size
    one_hot = np.zeros((n, n_categories))
    one_hot[np.arange(n), cs] = 1.0
    left = np.cumsum(one_hot, axis=0)[last]
    column_totals = one_hot.sum(axis=0)
    right = column_totals - left
    n_left = (last + 1)[:, None]
    n_right = n - n_left

    statistic = np.zeros(last.size)
    for observed, row_total in ((left, n_left), (right, n_right)):
        expected = row_total * column_totals / n
        with np.errstate(divide="ignore", invalid="ignore"):
            cells = np.where(expected > 0, (observed - expected) ** 2 / expected, 0.0)
        statistic += cells.sum(axis=1)
    return statistic


def best_split_point(
    y,
    x,
    minbucket: int,
    n_categories: Optional[int] = None,
) -> SplitPoint:
    """
    Maximize the discrepancy between the two sides of x <= v

    Args:
        y: outcome values, or category codes when n_categories is given
        x: covariate values
        minbucket: minimum rows on each side
        n_categories: number of outcome categories for a categorical outcome

    Returns:
        SplitPoint with the maximizing breakpoint (smallest v on ties) and its
        criterion: between-group sum of squares, or Pearson chi-square for a
        categorical outcome
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y).ravel()
    if y.shape != x.shape:
        raise FitError(f"length mismatch: {y.size} outcomes vs {x.size} covariate values", "LENGTH_MISMATCH")

    order, xs, last = _candidates(x, max(1, int(minbucket)))
    if last.size == 0:
        raise FitError("no admissible split point for the selected covariate", "NO_ADMISSIBLE_SPLIT")

    if n_categories is None:
        criterion = between_group_ss(y.astype(float), order, last)
    else:
        criterion = pearson_chi_square(y.astype(np.int64), order, last, n_categories)

    best = int(np.argmax(criterion))
    return SplitPoint(float(xs[last[best]]), float(criterion[best]))
