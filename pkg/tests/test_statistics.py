import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.app.Data.statistics import (
    category_histogram,
    discretize,
    format_significant,
    fraction_below,
    histogram,
    interval_labels,
    kde,
    percentile_of,
    quantile,
    quantile_breakpoints,
    rule_of_thumb_bandwidth,
    sturges_bins,
)
from src.app.errors import DataError

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def sort_and_interpolate(values, p):
    v = sorted(values)
    h = (len(v) - 1) * p
    lo = int(math.floor(h))
    if lo + 1 >= len(v):
        return v[lo]
    return v[lo] + (h - lo) * (v[lo + 1] - v[lo])


def test_quantile_matches_sort_and_interpolate_oracle():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        n = int(rng.integers(1, 60))
        values = rng.normal(0, 100, n).tolist()
        p = float(rng.uniform(0, 1))
        expected = sort_and_interpolate(values, p)
        assert math.isclose(quantile(values, p), expected, rel_tol=1e-12, abs_tol=1e-12)


def test_quantile_endpoints_and_errors():
    assert quantile([3.0, 1.0, 2.0], 0.0) == 1.0
    assert quantile([3.0, 1.0, 2.0], 1.0) == 3.0
    assert quantile([1.0, 2.0, 3.0, 4.0], 0.5) == 2.5
    with pytest.raises(DataError) as caught:
        quantile([], 0.5)
    assert caught.value.code == "EMPTY_INPUT"
    with pytest.raises(DataError) as caught:
        quantile([1.0], 1.5)
    assert caught.value.code == "OUT_OF_RANGE"


@given(st.lists(finite, min_size=1, max_size=40), finite)
def test_percentile_of_counts_values_at_or_below(values, x):
    assert percentile_of(values, x) == sum(1 for v in values if v <= x) / len(values)
    assert fraction_below(values, x) == sum(1 for v in values if v < x) / len(values)


def test_sturges_bins():
    assert sturges_bins(1) == 1
    assert sturges_bins(10) == 5
    assert sturges_bins(16) == 5
    assert sturges_bins(17) == 6


def test_histogram_bins_are_right_closed_except_the_first():
    hist = histogram([0.0, 1.0, 2.0, 3.0, 4.0])
    assert hist.bin_edges == (0.0, 1.0, 2.0, 3.0, 4.0)
    assert hist.counts == (2, 1, 1, 1)
    assert hist.bin_means == (0.5, 2.0, 3.0, 4.0)


def test_histogram_bin_means_of_paired_outcomes():
    values = [float(v) for v in range(1, 11)]
    hist = histogram(values)
    assert hist.k == 5
    assert hist.counts == (2, 2, 2, 2, 2)
    np.testing.assert_allclose(hist.bin_means, [1.5, 3.5, 5.5, 7.5, 9.5])

    paired = histogram(values, paired_outcomes=[10 * v for v in values])
    np.testing.assert_allclose(paired.bin_means, [15.0, 35.0, 55.0, 75.0, 95.0])


def test_histogram_of_constant_values_has_one_unit_bin():
    hist = histogram([3.0, 3.0, 3.0])
    assert hist.bin_edges == (2.5, 3.5)
    assert hist.counts == (3,)


@settings(max_examples=200)
@given(st.lists(st.integers(-10**6, 10**6).map(lambda v: v / 8.0), min_size=1, max_size=200))
def test_histogram_counts_cover_every_value(values):
    hist = histogram(values)
    assert hist.total == len(values)
    assert len(hist.bin_edges) == hist.k + 1
    assert all(a < b for a, b in zip(hist.bin_edges, hist.bin_edges[1:]))


def test_category_histogram():
    hist = category_histogram([0, 2, 2, 1, 2], 4)
    assert hist.counts == (1, 1, 3, 0)
    assert hist.bin_edges == (-0.5, 0.5, 1.5, 2.5, 3.5)


def test_kde_integrates_to_one_with_rule_of_thumb_bandwidth():
    rng = np.random.default_rng(5)
    values = rng.normal(10, 2, 400)
    curve = kde(values)
    assert len(curve.grid) == 512
    assert curve.bandwidth == pytest.approx(rule_of_thumb_bandwidth(values))
    assert curve.integral() == pytest.approx(1.0, abs=0.01)
    assert all(d >= 0 for d in curve.density)


def test_kde_rejects_degenerate_input():
    with pytest.raises(DataError) as caught:
        kde([1.0, 1.0, 1.0])
    assert caught.value.code == "ZERO_SPREAD"
    with pytest.raises(DataError) as caught:
        kde([1.0])
    assert caught.value.code == "EMPTY_INPUT"


def test_discretize_labels_with_four_significant_digits():
    breaks = [558, 1561, 1908, 2356, 5956]
    column = discretize([558, 1000, 1561, 1600, 2000, 5956], breaks, include_lowest=True, label_digits=4)
    assert column.labels == ("[558,1561]", "(1561,1908]", "(1908,2356]", "(2356,5956]")
    assert list(column.values) == [0, 0, 0, 1, 2, 3]


def test_discretize_without_include_lowest_rejects_the_lowest_break():
    with pytest.raises(DataError) as caught:
        discretize([0.0, 1.0], [0.0, 1.0], include_lowest=False)
    assert caught.value.code == "OUT_OF_RANGE"
    column = discretize([0.5, 1.0], [0.0, 1.0], include_lowest=False)
    assert column.labels == ("(0,1]",)


def test_discretize_rejects_bad_breakpoints():
    for breaks in ([1.0], [2.0, 1.0], [1.0, 1.0]):
        with pytest.raises(DataError) as caught:
            discretize([1.0], breaks)
        assert caught.value.code == "BAD_BREAKPOINTS"


def test_labels_gain_digits_until_distinct():
    labels = interval_labels([1.0, 1.01, 1.02], include_lowest=True, label_digits=2)
    assert labels == ("[1,1.01]", "(1.01,1.02]")
    assert format_significant(1234567.0, 3) == "1230000"


def test_quantile_breakpoints_are_distinct_and_sorted():
    values = [1.0, 1.0, 1.0, 1.0, 2.0, 3.0]
    assert quantile_breakpoints(values, [0.0, 0.25, 0.5, 1.0]) == (1.0, 3.0)


def test_kde_of_standard_normal_sample_peaks_near_the_normal_density():
    values = np.random.default_rng(11).normal(0.0, 1.0, 1000)
    curve = kde(values)
    grid = np.asarray(curve.grid)
    at_zero = curve.density[int(np.argmin(np.abs(grid)))]
    assert at_zero == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), abs=0.05)


def test_kde_of_symmetric_sample_is_symmetric():
    curve = kde([-1.0, 1.0])
    assert curve.grid[0] == pytest.approx(-curve.grid[-1])
    assert curve.density[::-1] == pytest.approx(curve.density, rel=1e-9, abs=1e-15)


eighths = st.integers(-10**6, 10**6).map(lambda v: v / 8.0)


@given(st.lists(eighths, min_size=1, max_size=60), st.floats(min_value=0.0, max_value=1.0))
def test_quantile_and_percentile_of_agree(values, p):
    n = len(values)
    q = quantile(values, p)
    # order statistic floor((n - 1) p) and everything below it are <= q
    assert n * percentile_of(values, q) > (n - 1) * p - 1e-9
    assert n * fraction_below(values, q) < (n - 1) * p + 1 + 1e-9


@settings(max_examples=200)
@given(
    st.lists(eighths, min_size=2, max_size=6, unique=True),
    st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=30),
)
def test_discretize_puts_every_value_inside_its_interval(breaks, positions):
    breaks = sorted(breaks)
    values = [breaks[0] + t * (breaks[-1] - breaks[0]) for t in positions] + list(breaks)
    column = discretize(values, breaks, include_lowest=True)
    assert len(column.labels) == len(breaks) - 1
    for value, code in zip(values, column.values):
        low, high = breaks[code], breaks[code + 1]
        assert value <= high
        assert value > low or (code == 0 and value == low)
