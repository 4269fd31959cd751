"""
Subgroup paths: the split conditions leading to a terminal node, and their
consolidation into one interval per covariate
"""
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.app.Data.dataset import Dataset
from src.app.TreeModel.tree import NodeSummary, Tree
from src.app.errors import TreeModelError

OPERATORS = {"le": "<=", "lt": "<", "gt": ">", "ge": ">="}
_COMPLEMENT = {"le": "gt", "lt": "ge"}


@dataclass(frozen=True)
class Condition:
    """One raw path condition such as liking <= -13.4"""
    covariate: str
    op: str
    value: float

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise TreeModelError(f"unknown condition operator '{self.op}'", "SCHEMA_VIOLATION")

    @property
    def is_upper(self) -> bool:
        return self.op in ("le", "lt")

    def mask(self, values: np.ndarray) -> np.ndarray:
        if self.op == "le":
            return values <= self.value
        if self.op == "lt":
            return values < self.value
        if self.op == "gt":
            return values > self.value
        return values >= self.value

    def __str__(self) -> str:
        return f"{self.covariate} {OPERATORS[self.op]} {self.value:g}"


@dataclass(frozen=True)
class Interval:
    """
    Consolidated constraint on one covariate; by default left-open and
    right-closed, infinite ends are unbounded
    """
    covariate: str
    lower: float = -math.inf
    lower_open: bool = True
    upper: float = math.inf
    upper_open: bool = False

    @property
    def has_lower(self) -> bool:
        return math.isfinite(self.lower)

    @property
    def has_upper(self) -> bool:
        return math.isfinite(self.upper)

    def mask(self, values: np.ndarray) -> np.ndarray:
        keep = np.ones(values.shape, dtype=bool)
        if self.has_lower:
            keep &= values > self.lower if self.lower_open else values >= self.lower
        if self.has_upper:
            keep &= values < self.upper if self.upper_open else values <= self.upper
        return keep

    def as_conditions(self) -> Tuple[Condition, ...]:
        conditions = []
        if self.has_upper:
            conditions.append(Condition(self.covariate, "lt" if self.upper_open else "le", self.upper))
        if self.has_lower:
            conditions.append(Condition(self.covariate, "gt" if self.lower_open else "ge", self.lower))
        return tuple(conditions)

    def label(self, digits: int = 1) -> str:
        """name ∈ (a, b] with ends rounded to digits decimals"""
        lower = f"{self.lower:.{digits}f}" if self.has_lower else "-∞"
        upper = f"{self.upper:.{digits}f}" if self.has_upper else "∞"
        opening = "(" if (self.lower_open or not self.has_lower) else "["
        closing = ")" if (self.upper_open or not self.has_upper) else "]"
        return f"{self.covariate} ∈ {opening}{lower}, {upper}{closing}"


@dataclass(frozen=True)
class SubgroupPath:
    """
    Path to one terminal node: raw root-to-leaf conditions and, after
    consolidation, at most one interval per covariate in first-split order
    """
    terminal_id: Optional[int]
    conditions: Tuple[Condition, ...] = ()
    constraints: Tuple[Interval, ...] = ()
    n: Optional[int] = None
    summary: Optional[NodeSummary] = None
    consolidated: bool = field(default=False)

    @property
    def covariates(self) -> Tuple[str, ...]:
        return tuple(interval.covariate for interval in self.constraints)

    def describe(self) -> str:
        if not self.conditions:
            return "root"
        return " & ".join(str(condition) for condition in self.conditions)


def path_node(tree: Tree, terminal_id: int) -> SubgroupPath:
    """
    Walk from the root to a terminal node and collect the split condition of
    every edge taken, root first
    """
    node = tree.node(terminal_id)
    if not node.is_terminal:
        raise TreeModelError(f"node {terminal_id} is an inner node, not a terminal", "NOT_TERMINAL")

    chain = [terminal_id]
    while chain[-1] != tree.root_id:
        chain.append(tree.parent_of(chain[-1]))
    chain.reverse()

    conditions = []
    for parent_id, child_id in zip(chain, chain[1:]):
        parent = tree.node(parent_id)
        split = parent.split
        op = split.predicate if child_id == parent.left_id else _COMPLEMENT[split.predicate]
        conditions.append(Condition(split.covariate, op, split.breakpoint))

    return SubgroupPath(terminal_id, tuple(conditions), (), node.n, node.summary)


def _intersect(covariate: str, conditions: Iterable[Condition]) -> Interval:
    upper, upper_open = math.inf, False
    lower, lower_open = -math.inf, True
    for condition in conditions:
        if condition.is_upper:
            is_open = condition.op == "lt"
            if condition.value < upper or (condition.value == upper and is_open):
                upper, upper_open = condition.value, is_open
        else:
            is_open = condition.op == "gt"
            if condition.value > lower or (condition.value == lower and is_open):
                lower, lower_open = condition.value, is_open
    if lower > upper or (lower == upper and (lower_open or upper_open)):
        raise TreeModelError(
            f"conditions on '{covariate}' have an empty intersection ({lower}, {upper})", "EMPTY_INTERSECTION"
        )
    return Interval(covariate, lower, lower_open, upper, upper_open)


def consolidate(path: Union[SubgroupPath, Sequence[Condition]]) -> SubgroupPath:
    """
    Intersect all conditions per covariate: upper bound is the smallest
    upper condition, lower bound the largest lower condition
    """
    if not isinstance(path, SubgroupPath):
        path = SubgroupPath(None, tuple(path))

    grouped: Dict[str, List[Condition]] = {}
    for condition in path.conditions:
        grouped.setdefault(condition.covariate, []).append(condition)

    constraints = tuple(_intersect(covariate, conditions) for covariate, conditions in grouped.items())
    return replace(path, constraints=constraints, consolidated=True)


def terminal_paths(tree: Tree) -> List[SubgroupPath]:
    """Consolidated paths of every terminal node, ordered by node id"""
    return [consolidate(path_node(tree, terminal_id)) for terminal_id in tree.terminal_ids()]


def _column_values(dataset: Dataset, covariate: str) -> np.ndarray:
    if not dataset.has_covariate(covariate):
        raise TreeModelError(f"dataset has no covariate '{covariate}'", "UNKNOWN_COVARIATE")
    return dataset.covariate(covariate).values


def subgroup_rows(dataset: Dataset, path: SubgroupPath) -> np.ndarray:
    """0-based indices of the rows satisfying every consolidated interval"""
    if not path.consolidated:
        path = consolidate(path)
    keep = np.ones(dataset.n_rows, dtype=bool)
    for interval in path.constraints:
        keep &= interval.mask(_column_values(dataset, interval.covariate))
    return np.flatnonzero(keep)


def condition_rows(dataset: Dataset, conditions: Sequence[Condition]) -> np.ndarray:
    """0-based indices of the rows satisfying every raw condition"""
    keep = np.ones(dataset.n_rows, dtype=bool)
    for condition in conditions:
        keep &= condition.mask(_column_values(dataset, condition.covariate))
    return np.flatnonzero(keep)
