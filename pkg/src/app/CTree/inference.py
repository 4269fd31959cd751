"""
Variable selection: one association test per covariate, Bonferroni
adjusted over the m covariates
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from src.app.CTree.controls import FitControls
from src.app.Data.dataset import Dataset
from src.app.errors import FitError

# 1 - r^2 at or below this counts as an exact linear fit
PERFECT_FIT_TOLERANCE = 1e-14


@dataclass(frozen=True)
class TestResult:
    """
    Outcome of one covariate's association test. test is "t" for the
    regression slope test and "F" for the one-way ANOVA used with a
    categorical outcome.
    """
    __test__ = False

    covariate_index: int
    statistic: float
    p_value: float
    test: str = "t"

    @property
    def t_statistic(self) -> Optional[float]:
        return self.statistic if self.test == "t" else None


@dataclass(frozen=True)
class SplitDecision:
    covariate_index: Optional[int]
    adjusted_p: float
    tests: Tuple[TestResult, ...] = ()

    @property
    def is_split(self) -> bool:
        return self.covariate_index is not None

    @classmethod
    def stop(cls, adjusted_p: float, tests: Tuple[TestResult, ...] = ()) -> "SplitDecision":
        return cls(None, adjusted_p, tests)


def _check_lengths(y: np.ndarray, x: np.ndarray):
    if y.shape != x.shape:
        raise FitError(f"length mismatch: {y.size} outcomes vs {x.size} covariate values", "LENGTH_MISMATCH")
    if y.size < 3:
        raise FitError(f"association tests need n >= 3, got {y.size}", "TOO_FEW_ROWS")


def covariate_test(y, x, covariate_index: int = 0) -> TestResult:
    """
    t test of the slope in the least squares regression of y on x

    A constant covariate gives t = 0, p = 1; a residual-free fit with a
    nonzero slope gives p = 0.
    """
    y = np.asarray(y, dtype=float).ravel()
    x = np.asarray(x, dtype=float).ravel()
    _check_lengths(y, x)

    n = y.size
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return TestResult(covariate_index, 0.0, 1.0)

    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(xc @ xc)
    syy = float(yc @ yc)
    sxy = float(xc @ yc)
    r = sxy / np.sqrt(sxx * syy)
    r = float(np.clip(r, -1.0, 1.0))
    remainder = 1.0 - r * r

    if remainder <= PERFECT_FIT_TOLERANCE:
        return TestResult(covariate_index, float(np.copysign(np.inf, r)), 0.0)

    df = n - 2
    t = r * np.sqrt(df / remainder)
    p = 2.0 * stats.t.sf(abs(t), df)
    return TestResult(covariate_index, float(t), float(np.clip(p, 0.0, 1.0)))


def anova_test(codes, x, covariate_index: int = 0) -> TestResult:
    """
    One-way ANOVA of x grouped by outcome category; degrees of freedom use
    the categories present in the node
    """
    codes = np.asarray(codes, dtype=np.int64).ravel()
    x = np.asarray(x, dtype=float).ravel()
    _check_lengths(codes.astype(float), x)

    n = x.size
    present, group = np.unique(codes, return_inverse=True)
    n_groups = present.size
    if n_groups < 2 or n - n_groups < 1 or np.ptp(x) == 0:
        return TestResult(covariate_index, 0.0, 1.0, "F")

    sizes = np.bincount(group)
    means = np.bincount(group, weights=x) / sizes
    grand = x.mean()
    ss_between = float(sizes @ (means - grand) ** 2)
    ss_within = float(((x - means[group]) ** 2).sum())
    df1, df2 = n_groups - 1, n - n_groups

    if ss_within <= PERFECT_FIT_TOLERANCE * (ss_between + ss_within):
        return TestResult(covariate_index, float(np.inf), 0.0, "F")

    f = (ss_between / df1) / (ss_within / df2)
    p = stats.f.sf(f, df1, df2)
    return TestResult(covariate_index, float(f), float(np.clip(p, 0.0, 1.0)), "F")


def run_tests(view: Dataset) -> Tuple[TestResult, ...]:
    outcome = view.outcome
    results = []
    for j, column in enumerate(view.covariates):
        if outcome.is_continuous:
            results.append(covariate_test(outcome.values, column.values, j))
        else:
            results.append(anova_test(outcome.values, column.values, j))
    return tuple(results)


def select_split_variable(view: Dataset, controls: FitControls) -> SplitDecision:
    """
    Test every covariate, adjust the smallest p-value by Bonferroni over m
    and split on its covariate when the adjusted value is <= alpha. Equal
    p-values go to the lowest covariate index.
    """
    tests = run_tests(view)
    p_values = np.array([result.p_value for result in tests])
    best = int(np.argmin(p_values))
    adjusted = float(min(1.0, view.m * p_values[best]))
    if controls.allows_split(adjusted):
        return SplitDecision(best, adjusted, tests)
    return SplitDecision.stop(adjusted, tests)
