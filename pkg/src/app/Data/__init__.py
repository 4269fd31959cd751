# Data Package
from src.app.Data.dataset import Column, Dataset, load_csv, CONTINUOUS, CATEGORICAL
from src.app.Data.statistics import (
    Histogram,
    DensityCurve,
    quantile,
    percentile_of,
    histogram,
    category_histogram,
    kde,
    discretize,
    quantile_breakpoints,
)
