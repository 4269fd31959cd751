"""
Conditional inference tree growth: test-based variable selection first,
then the split point search on the selected covariate
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from src.app.CTree.controls import FitControls
from src.app.CTree.inference import select_split_variable
from src.app.CTree.splitting import best_split_point
from src.app.Data.dataset import Dataset
from src.app.TreeModel.tree import CovariateMeta, Node, NodeSummary, OutcomeMeta, Split, Tree
from src.app.errors import FitError, TreeModelError


@dataclass(frozen=True)
class FitTraceEntry:
    """What the fitter decided at one node"""
    node_id: int
    depth: int
    n: int
    action: str
    reason: str
    covariate: Optional[str] = None
    adjusted_p: Optional[float] = None
    breakpoint: Optional[float] = None

    def __str__(self) -> str:
        if self.action == "split":
            return (
                f"node {self.node_id} (n = {self.n}): split on {self.covariate} <= {self.breakpoint:g}"
                f" (adjusted p = {self.adjusted_p:.4g})"
            )
        return f"node {self.node_id} (n = {self.n}): terminal, {self.reason}"


class CTreeFitter:
    """
    Grows a tree recursively; node ids are assigned in preorder from 1
    """

    def __init__(self, controls: Optional[FitControls] = None):
        self.controls = controls or FitControls()

    def fit(self, dataset: Dataset) -> Tree:
        tree, _ = self.fit_with_trace(dataset)
        return tree

    def fit_with_trace(self, dataset: Dataset) -> Tuple[Tree, List[FitTraceEntry]]:
        for column in dataset.covariates:
            if not column.is_continuous:
                raise FitError(
                    f"covariate '{column.name}' is categorical; only continuous covariates can be split",
                    "UNSUPPORTED_COVARIATE",
                )

        outcome = dataset.outcome
        self._n_categories = None if outcome.is_continuous else len(outcome.labels)
        self._dataset = dataset
        self._nodes: Dict[int, Node] = {}
        self._trace: List[FitTraceEntry] = []
        self._next_id = 1

        self._grow(np.arange(dataset.n_rows), depth=0)

        tree = Tree(
            self._nodes,
            OutcomeMeta(outcome.name, outcome.kind, outcome.labels),
            [CovariateMeta(column.name, column.kind) for column in dataset.covariates],
        )
        return tree, self._trace

    def _summary(self, rows: np.ndarray) -> NodeSummary:
        values = self._dataset.outcome.values[rows]
        if self._n_categories is None:
            return NodeSummary.of_values(values)
        return NodeSummary.of_codes(values, self._n_categories)

    def _terminal(self, node_id: int, rows: np.ndarray, depth: int, reason: str, adjusted_p=None) -> int:
        self._nodes[node_id] = Node(
            node_id,
            int(rows.size),
            summary=self._summary(rows),
            row_ids=tuple(int(r) for r in rows),
        )
        self._trace.append(FitTraceEntry(node_id, depth, int(rows.size), "stop", reason, adjusted_p=adjusted_p))
        return node_id

    def _grow(self, rows: np.ndarray, depth: int) -> int:
        node_id = self._next_id
        self._next_id += 1
        controls = self.controls

        if controls.maxdepth is not None and depth >= controls.maxdepth:
            return self._terminal(node_id, rows, depth, "maximum depth reached")
        if rows.size < controls.minsplit or rows.size < 3:
            return self._terminal(node_id, rows, depth, f"fewer than minsplit = {controls.minsplit} rows")

        view = self._dataset.take(rows)
        decision = select_split_variable(view, controls)
        if not decision.is_split:
            return self._terminal(
                node_id, rows, depth, f"adjusted p = {decision.adjusted_p:.4g} > alpha", decision.adjusted_p
            )

        column = view.covariates[decision.covariate_index]
        try:
            point = best_split_point(view.outcome.values, column.values, controls.minbucket, self._n_categories)
        except FitError as exc:
            return self._terminal(node_id, rows, depth, exc.message, decision.adjusted_p)

        split = Split(column.name, point.breakpoint, "le")
        goes_left = split.left_mask(column.values)
        self._trace.append(
            FitTraceEntry(
                node_id, depth, int(rows.size), "split", "null hypothesis rejected",
                column.name, decision.adjusted_p, point.breakpoint,
            )
        )

        left_id = self._grow(rows[goes_left], depth + 1)
        right_id = self._grow(rows[~goes_left], depth + 1)
        self._nodes[node_id] = Node(node_id, int(rows.size), split, left_id, right_id)
        return node_id


def fit(dataset: Dataset, controls: Optional[FitControls] = None) -> Tree:
    """Fit a conditional inference tree; a pure function of its inputs"""
    return CTreeFitter(controls).fit(dataset)


def predict(tree: Tree, row: Mapping[str, float]) -> Union[float, Dict[str, float]]:
    """
    Terminal mean for a continuous outcome, class probabilities keyed by
    category label for a categorical one
    """
    summary = tree.node(tree.route(row)).summary
    if summary.is_categorical:
        return dict(zip(tree.outcome.categories, summary.probabilities()))
    return summary.mean


def predict_many(tree: Tree, dataset: Dataset) -> List[Union[float, Dict[str, float]]]:
    """Route every dataset row through the tree"""
    names = set(tree.covariate_names) & set(dataset.covariate_names)
    missing = [name for node in tree if not node.is_terminal for name in [node.split.covariate] if name not in names]
    if missing:
        raise TreeModelError(f"dataset lacks covariate '{missing[0]}'", "MISSING_COVARIATE")
    return [predict(tree, dataset.row(i)) for i in range(dataset.n_rows)]
