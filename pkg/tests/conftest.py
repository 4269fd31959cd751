"""
Shared fixtures: project root on sys.path, the printed rpart tree and
synthetic datasets
"""
import os
import sys

import numpy as np
import pytest

# Add the project root to Python path so imports work
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.app.Data.dataset import dataset_from_arrays  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture
def rpart_fixture_path():
    return os.path.join(FIXTURES, "rpart_party.json")


@pytest.fixture
def rpart_expected_text():
    with open(os.path.join(FIXTURES, "rpart_party.txt"), "r", encoding="utf-8") as handle:
        return handle.read()


def make_step_data(seed: int = 0, n: int = 300):
    """y jumps by 10 where x1 > 0.5; x2 is noise"""
    rng = np.random.default_rng(seed)
    x1 = rng.uniform(0, 1, n)
    x2 = rng.uniform(0, 1, n)
    y = 10.0 * (x1 > 0.5) + rng.normal(0, 0.5, n)
    return dataset_from_arrays(("y", y), {"x1": x1, "x2": x2})


def make_intake_rows(seed: int = 7, n: int = 226):
    """Rows shaped like the rpart example: kcal24h0, liking, rrvfood"""
    rng = np.random.default_rng(seed)
    liking = np.round(rng.normal(-10, 6, n), 4)
    rrvfood = np.round(rng.uniform(0, 1.5, n), 5)
    kcal = np.round(1600 + 500 * (rrvfood >= 0.84444) + 400 * (liking >= -12.0625) + rng.normal(0, 300, n), 3)
    return kcal, liking, rrvfood


def write_csv(path, header, columns):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(",".join(header) + "\n")
        for row in zip(*columns):
            handle.write(",".join(repr(float(v)) if not isinstance(v, str) else v for v in row) + "\n")
    return str(path)


@pytest.fixture
def step_data():
    return make_step_data()


@pytest.fixture
def intake_csv(tmp_path):
    kcal, liking, rrvfood = make_intake_rows()
    return write_csv(tmp_path / "intake.csv", ["kcal24h0", "liking", "rrvfood"], [kcal, liking, rrvfood])


@pytest.fixture
def step_csv(tmp_path):
    data = make_step_data(seed=3, n=200)
    return write_csv(
        tmp_path / "step.csv",
        ["y", "x1", "x2"],
        [data.outcome.values, data.covariates[0].values, data.covariates[1].values],
    )
