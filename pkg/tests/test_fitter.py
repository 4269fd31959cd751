import numpy as np
import pytest

from conftest import make_step_data
from src.app.CTree.controls import FitControls
from src.app.CTree.fitter import CTreeFitter, fit, predict, predict_many
from src.app.Data.dataset import Column, Dataset, dataset_from_arrays
from src.app.TreeModel.paths import consolidate, path_node, subgroup_rows
from src.app.errors import FitError, TreeModelError


def test_step_function_is_recovered(step_data):
    tree = fit(step_data)
    root = tree.root
    assert not root.is_terminal
    assert root.split.covariate == "x1"
    assert root.split.predicate == "le"
    assert 0.45 <= root.split.breakpoint <= 0.55


def test_node_ids_are_preorder_and_terminals_partition_rows(step_data):
    tree = fit(step_data, FitControls(minbucket=5, minsplit=10))
    assert [node.id for node in tree] == list(range(1, len(tree) + 1))

    covered = np.concatenate([tree.node(i).row_ids for i in tree.terminal_ids()])
    assert sorted(covered.tolist()) == list(range(step_data.n_rows))
    for terminal_id in tree.terminal_ids():
        node = tree.node(terminal_id)
        rows = subgroup_rows(step_data, consolidate(path_node(tree, terminal_id)))
        assert rows.tolist() == sorted(node.row_ids)
        assert node.n >= 5


def test_training_rows_route_to_their_own_terminal(step_data):
    tree = fit(step_data, FitControls(minbucket=5, minsplit=10))
    owner = {row: node.id for node in tree if node.is_terminal for row in node.row_ids}
    predictions = predict_many(tree, step_data)
    for i in range(step_data.n_rows):
        terminal_id = tree.route(step_data.row(i))
        assert terminal_id == owner[i]
        assert predictions[i] == tree.node(terminal_id).summary.mean

    weighted = sum(tree.node(i).n * tree.node(i).summary.mean for i in tree.terminal_ids()) / tree.n
    assert weighted == pytest.approx(float(step_data.outcome.values.mean()), abs=1e-9)


def test_depth_and_size_controls():
    data = make_step_data(seed=1, n=400)
    stump = fit(data, FitControls(maxdepth=1))
    assert len(stump) == 3
    assert max(stump.depth_of(i) for i in stump.terminal_ids()) == 1

    root_only = fit(data, FitControls(minsplit=401))
    assert len(root_only) == 1
    assert root_only.root.summary.mean == pytest.approx(float(data.outcome.values.mean()))


def test_fit_is_a_pure_function_of_its_inputs(step_data):
    first = fit(step_data)
    second = fit(step_data)
    assert [(n.id, n.n, n.split) for n in first] == [(n.id, n.n, n.split) for n in second]


def test_trace_records_every_node(step_data):
    tree, trace = CTreeFitter(FitControls()).fit_with_trace(step_data)
    assert sorted(entry.node_id for entry in trace) == list(range(1, len(tree) + 1))
    root_entry = next(entry for entry in trace if entry.node_id == 1)
    assert root_entry.action == "split"
    assert root_entry.covariate == "x1"
    assert "split on x1" in str(root_entry)


def test_categorical_outcome_gives_class_probabilities():
    rng = np.random.default_rng(9)
    n = 300
    x = rng.uniform(0, 1, n)
    codes = (x > 0.6).astype(int)
    flip = rng.uniform(size=n) < 0.05
    codes[flip] = 1 - codes[flip]
    data = Dataset(Column.categorical("cls", codes, ["low", "high"]), (Column.continuous("x", x),))

    tree = fit(data)
    assert tree.outcome.categories == ("low", "high")
    assert tree.root.split.covariate == "x"
    probabilities = predict(tree, {"x": 0.9})
    assert set(probabilities) == {"low", "high"}
    assert sum(probabilities.values()) == pytest.approx(1.0)
    assert probabilities["high"] > 0.8


def test_categorical_covariates_are_refused():
    data = Dataset(
        Column.continuous("y", [1.0, 2.0, 3.0]),
        (Column.categorical("g", [0, 1, 0], ["a", "b"]),),
    )
    with pytest.raises(FitError) as caught:
        fit(data)
    assert caught.value.code == "UNSUPPORTED_COVARIATE"


def test_predict_many_requires_split_covariates(step_data):
    tree = fit(step_data)
    other = dataset_from_arrays(("y", [1.0, 2.0]), {"x2": [0.1, 0.2]})
    with pytest.raises(TreeModelError) as caught:
        predict_many(tree, other)
    assert caught.value.code == "MISSING_COVARIATE"


@pytest.mark.slow
def test_pure_noise_rarely_splits():
    rng = np.random.default_rng(20240501)
    replicates = 500
    splits = 0
    for _ in range(replicates):
        n, m = 200, 5
        covariates = {f"x{j}": rng.normal(size=n) for j in range(m)}
        data = dataset_from_arrays(("y", rng.normal(size=n)), covariates)
        if len(fit(data, FitControls(alpha=0.05))) > 1:
            splits += 1
    assert splits / replicates <= 0.10


@pytest.mark.slow
def test_signal_is_recovered_across_seeds():
    hits = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = 500
        x1 = rng.uniform(0, 1, n)
        x2 = rng.uniform(0, 1, n)
        y = 10.0 * (x1 > 0.5) + rng.normal(0, 0.5, n)
        tree = fit(dataset_from_arrays(("y", y), {"x1": x1, "x2": x2}))
        split = tree.root.split
        if split is not None and split.covariate == "x1" and 0.45 <= split.breakpoint <= 0.55:
            hits += 1
    assert hits >= 95
