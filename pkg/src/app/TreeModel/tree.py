"""
Recursive partition structure shared by fitted and imported trees
Nodes are numbered 1..N in preorder; inner nodes carry a binary split
"""
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.app.Data.dataset import CATEGORICAL, CONTINUOUS, COLUMN_KINDS
from src.app.errors import TreeModelError

PREDICATES = ("le", "lt")


@dataclass(frozen=True)
class Split:
    """
    covariate <= breakpoint (predicate "le") or covariate < breakpoint
    (predicate "lt") sends a row to the left child
    """
    covariate: str
    breakpoint: float
    predicate: str = "le"

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise TreeModelError(f"unknown split predicate '{self.predicate}'", "SCHEMA_VIOLATION")

    def goes_left(self, value: float) -> bool:
        if self.predicate == "lt":
            return value < self.breakpoint
        return value <= self.breakpoint

    def left_mask(self, values: np.ndarray) -> np.ndarray:
        if self.predicate == "lt":
            return values < self.breakpoint
        return values <= self.breakpoint


@dataclass(frozen=True)
class NodeSummary:
    """
    Outcome summary: mean and residual sum of squares (err) for a
    continuous outcome, category counts for a categorical one
    """
    mean: Optional[float] = None
    err: Optional[float] = None
    counts: Optional[Tuple[int, ...]] = None

    @property
    def is_categorical(self) -> bool:
        return self.counts is not None

    @classmethod
    def of_values(cls, values: np.ndarray) -> "NodeSummary":
        values = np.asarray(values, dtype=float)
        mean = float(values.mean())
        return cls(mean=mean, err=float(((values - mean) ** 2).sum()))

    @classmethod
    def of_codes(cls, codes: np.ndarray, n_categories: int) -> "NodeSummary":
        counts = np.bincount(np.asarray(codes, dtype=np.int64), minlength=n_categories)
        return cls(counts=tuple(int(c) for c in counts))

    def probabilities(self) -> Tuple[float, ...]:
        total = sum(self.counts)
        return tuple(c / total for c in self.counts) if total else tuple(0.0 for _ in self.counts)

    def modal_index(self) -> int:
        # first category wins ties
        return int(np.argmax(self.counts))

    def misclassification(self) -> float:
        total = sum(self.counts)
        return 1.0 - max(self.counts) / total if total else 0.0


@dataclass(frozen=True)
class Node:
    id: int
    n: int
    split: Optional[Split] = None
    left_id: Optional[int] = None
    right_id: Optional[int] = None
    summary: Optional[NodeSummary] = None
    row_ids: Optional[Tuple[int, ...]] = None

    @property
    def is_terminal(self) -> bool:
        return self.split is None

    @property
    def children(self) -> Tuple[int, ...]:
        if self.is_terminal:
            return ()
        return (self.left_id, self.right_id)


@dataclass(frozen=True)
class OutcomeMeta:
    name: str
    kind: str = CONTINUOUS
    categories: Tuple[str, ...] = ()

    @property
    def is_categorical(self) -> bool:
        return self.kind == CATEGORICAL


@dataclass(frozen=True)
class CovariateMeta:
    name: str
    kind: str = CONTINUOUS


class Tree:
    """
    Immutable tree: id-indexed nodes, outcome and covariate metadata

    The constructor checks preorder numbering from 1, exactly two children
    for inner nodes, n bookkeeping and that split covariates are declared.
    """

    root_id = 1

    def __init__(self, nodes: Mapping[int, Node], outcome: OutcomeMeta, covariates: Sequence[CovariateMeta]):
        self._nodes: Dict[int, Node] = dict(nodes)
        self.outcome = outcome
        self.covariates: Tuple[CovariateMeta, ...] = tuple(covariates)
        self._parents: Dict[int, int] = {}
        self._depths: Dict[int, int] = {}
        self._validate()

    def _validate(self):
        if self.outcome.kind not in COLUMN_KINDS:
            raise TreeModelError(f"unknown outcome kind '{self.outcome.kind}'", "SCHEMA_VIOLATION")
        names = [covariate.name for covariate in self.covariates]
        if len(set(names)) != len(names):
            raise TreeModelError(f"covariate names must be unique: {names}", "SCHEMA_VIOLATION")
        if self.root_id not in self._nodes:
            raise TreeModelError("tree has no root node with id 1", "NON_PREORDER_IDS")

        for node_id, node in self._nodes.items():
            if node.id != node_id:
                raise TreeModelError(f"node keyed {node_id} carries id {node.id}", "NON_PREORDER_IDS")
            if node.is_terminal:
                if node.left_id is not None or node.right_id is not None:
                    raise TreeModelError(f"terminal node {node_id} has children", "CHILD_COUNT")
                self._check_summary(node)
            else:
                if node.left_id is None or node.right_id is None or node.left_id == node.right_id:
                    raise TreeModelError(f"inner node {node_id} must have exactly two children", "CHILD_COUNT")
                if node.split.covariate not in names:
                    raise TreeModelError(
                        f"node {node_id} splits on undeclared covariate '{node.split.covariate}'",
                        "UNKNOWN_COVARIATE",
                    )
            if node.n < 1:
                raise TreeModelError(f"node {node_id} has n = {node.n}", "N_BOOKKEEPING")

        visited: List[int] = []
        stack = [(self.root_id, 0, None)]
        while stack:
            node_id, depth, parent = stack.pop()
            if node_id not in self._nodes:
                raise TreeModelError(f"node {parent} references missing child {node_id}", "CHILD_COUNT")
            if node_id in self._depths:
                raise TreeModelError(f"node {node_id} has more than one parent", "CHILD_COUNT")
            visited.append(node_id)
            self._depths[node_id] = depth
            if parent is not None:
                self._parents[node_id] = parent
            node = self._nodes[node_id]
            if not node.is_terminal:
                left, right = self._nodes.get(node.left_id), self._nodes.get(node.right_id)
                if left is not None and right is not None and node.n != left.n + right.n:
                    raise TreeModelError(
                        f"node {node_id} has n = {node.n} but its children hold {left.n} + {right.n}",
                        "N_BOOKKEEPING",
                    )
                stack.append((node.right_id, depth + 1, node_id))
                stack.append((node.left_id, depth + 1, node_id))

        if visited != list(range(1, len(self._nodes) + 1)):
            raise TreeModelError("node ids must be 1..N in preorder", "NON_PREORDER_IDS")

    def _check_summary(self, node: Node):
        summary = node.summary
        if summary is None:
            raise TreeModelError(f"terminal node {node.id} has no summary", "SCHEMA_VIOLATION")
        if self.outcome.is_categorical:
            if not summary.is_categorical or len(summary.counts) != len(self.outcome.categories):
                raise TreeModelError(
                    f"terminal node {node.id} needs one count per outcome category", "SCHEMA_VIOLATION"
                )
            if sum(summary.counts) != node.n:
                raise TreeModelError(f"terminal node {node.id} counts do not sum to n", "N_BOOKKEEPING")
        elif summary.mean is None or summary.err is None:
            raise TreeModelError(f"terminal node {node.id} needs mean and err", "SCHEMA_VIOLATION")
        if node.row_ids is not None and len(node.row_ids) != node.n:
            raise TreeModelError(f"terminal node {node.id} stores {len(node.row_ids)} rows, n = {node.n}", "N_BOOKKEEPING")

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[Node]:
        for node_id in range(1, len(self._nodes) + 1):
            yield self._nodes[node_id]

    def node(self, node_id: int) -> Node:
        if node_id not in self._nodes:
            raise TreeModelError(f"unknown node id {node_id}", "UNKNOWN_NODE")
        return self._nodes[node_id]

    @property
    def root(self) -> Node:
        return self._nodes[self.root_id]

    @property
    def n(self) -> int:
        return self.root.n

    def terminal_ids(self) -> List[int]:
        return [node.id for node in self if node.is_terminal]

    @property
    def terminal_count(self) -> int:
        return len(self.terminal_ids())

    @property
    def inner_count(self) -> int:
        return len(self) - self.terminal_count

    def parent_of(self, node_id: int) -> Optional[int]:
        self.node(node_id)
        return self._parents.get(node_id)

    def depth_of(self, node_id: int) -> int:
        self.node(node_id)
        return self._depths[node_id]

    @property
    def covariate_names(self) -> Tuple[str, ...]:
        return tuple(covariate.name for covariate in self.covariates)

    def formula(self) -> str:
        return f"{self.outcome.name} ~ {' + '.join(self.covariate_names)}"

    def route(self, row: Mapping[str, float]) -> int:
        """Terminal node id reached by a row of covariate values"""
        node = self.root
        while not node.is_terminal:
            name = node.split.covariate
            if name not in row or row[name] is None:
                raise TreeModelError(f"row is missing a value for covariate '{name}'", "MISSING_COVARIATE")
            node = self._nodes[node.left_id if node.split.goes_left(float(row[name])) else node.right_id]
        return node.id
