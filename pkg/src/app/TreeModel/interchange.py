"""
Tree interchange document (JSON, version 1)
Schema models use pydantic so unknown fields and wrong types are rejected
"""
import json
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError, model_validator

from src.app.TreeModel.tree import CovariateMeta, Node, NodeSummary, OutcomeMeta, Split, Tree
from src.app.errors import TreeModelError

DOCUMENT_VERSION = 1

FiniteFloat = Annotated[float, Field(strict=True, allow_inf_nan=False)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class OutcomeDocument(_Strict):
    name: str = Field(..., min_length=1)
    kind: Literal["continuous", "categorical"]
    categories: Optional[List[str]] = None


class CovariateDocument(_Strict):
    name: str = Field(..., min_length=1)
    kind: Literal["continuous", "categorical"] = "continuous"


class SplitDocument(_Strict):
    covariate: str
    breakpoint: FiniteFloat
    predicate: Literal["le", "lt"] = "le"
    left: StrictInt
    right: StrictInt


class ContinuousTerminalDocument(_Strict):
    mean: FiniteFloat
    err: Annotated[float, Field(strict=True, allow_inf_nan=False, ge=0)]


class CategoricalTerminalDocument(_Strict):
    counts: List[StrictInt]


class NodeDocument(_Strict):
    id: StrictInt
    n: StrictInt
    split: Optional[SplitDocument] = None
    terminal: Optional[Union[ContinuousTerminalDocument, CategoricalTerminalDocument]] = None

    @model_validator(mode="after")
    def _one_kind(self):
        if (self.split is None) == (self.terminal is None):
            raise ValueError(f"node {self.id} needs exactly one of 'split' or 'terminal'")
        return self


class TreeDocument(_Strict):
    version: Literal[1]
    outcome: OutcomeDocument
    covariates: List[CovariateDocument]
    nodes: List[NodeDocument] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _categories(self):
        if self.outcome.kind == "categorical" and not self.outcome.categories:
            raise ValueError("a categorical outcome needs its category list")
        return self


def _describe(exc: ValidationError) -> str:
    problem = exc.errors()[0]
    location = ".".join(str(part) for part in problem["loc"]) or "document"
    return f"{location}: {problem['msg']}"


def import_tree(document: Union[str, bytes, Dict[str, Any]]) -> Tree:
    """
    Build a Tree from an interchange document (JSON text or parsed dict)

    Raises TreeModelError for schema violations, inner nodes without two
    children, inconsistent n bookkeeping or ids that are not preorder.
    """
    try:
        if isinstance(document, (str, bytes)):
            parsed = TreeDocument.model_validate_json(document)
        else:
            parsed = TreeDocument.model_validate(document)
    except ValidationError as exc:
        raise TreeModelError(f"invalid tree document: {_describe(exc)}", "SCHEMA_VIOLATION")

    categorical = parsed.outcome.kind == "categorical"
    outcome = OutcomeMeta(parsed.outcome.name, parsed.outcome.kind, tuple(parsed.outcome.categories or ()))
    covariates = [CovariateMeta(c.name, c.kind) for c in parsed.covariates]

    nodes: Dict[int, Node] = {}
    for entry in parsed.nodes:
        if entry.id in nodes:
            raise TreeModelError(f"duplicate node id {entry.id}", "NON_PREORDER_IDS")
        if entry.split is not None:
            split = Split(entry.split.covariate, entry.split.breakpoint, entry.split.predicate)
            nodes[entry.id] = Node(entry.id, entry.n, split, entry.split.left, entry.split.right)
            continue
        terminal = entry.terminal
        if categorical != isinstance(terminal, CategoricalTerminalDocument):
            raise TreeModelError(
                f"node {entry.id}: terminal summary does not match the {parsed.outcome.kind} outcome",
                "SCHEMA_VIOLATION",
            )
        if categorical:
            summary = NodeSummary(counts=tuple(terminal.counts))
        else:
            summary = NodeSummary(mean=terminal.mean, err=terminal.err)
        nodes[entry.id] = Node(entry.id, entry.n, summary=summary)

    return Tree(nodes, outcome, covariates)


def tree_to_document(tree: Tree) -> Dict[str, Any]:
    """Interchange document for a tree; stored row memberships are not written"""
    outcome: Dict[str, Any] = {"name": tree.outcome.name, "kind": tree.outcome.kind}
    if tree.outcome.is_categorical:
        outcome["categories"] = list(tree.outcome.categories)

    nodes = []
    for node in tree:
        entry: Dict[str, Any] = {"id": node.id, "n": node.n}
        if node.is_terminal:
            if node.summary.is_categorical:
                entry["terminal"] = {"counts": list(node.summary.counts)}
            else:
                entry["terminal"] = {"mean": node.summary.mean, "err": node.summary.err}
        else:
            entry["split"] = {
                "covariate": node.split.covariate,
                "breakpoint": node.split.breakpoint,
                "predicate": node.split.predicate,
                "left": node.left_id,
                "right": node.right_id,
            }
        nodes.append(entry)

    return {
        "version": DOCUMENT_VERSION,
        "outcome": outcome,
        "covariates": [{"name": c.name, "kind": c.kind} for c in tree.covariates],
        "nodes": nodes,
    }


def dump_tree(tree: Tree) -> str:
    return json.dumps(tree_to_document(tree), indent=2, ensure_ascii=False) + "\n"
