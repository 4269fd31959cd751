"""
Plain-text listing of a tree in the familiar "Fitted party" layout
"""
from typing import List

from src.app.TreeModel.tree import Node, Tree

_LEFT = {"le": "<=", "lt": "<"}
_RIGHT = {"le": ">", "lt": ">="}


def format_number(x: float) -> str:
    """Up to 10 significant digits, no trailing zeros"""
    text = f"{x:.10g}"
    return "0" if text == "-0" else text


def _edge_label(parent: Node, child_id: int) -> str:
    split = parent.split
    symbols = _LEFT if child_id == parent.left_id else _RIGHT
    return f"{split.covariate} {symbols[split.predicate]} {format_number(split.breakpoint)}"


def _terminal_text(tree: Tree, node: Node) -> str:
    summary = node.summary
    if summary.is_categorical:
        label = tree.outcome.categories[summary.modal_index()]
        return f"{label} (n = {node.n}, err = {100.0 * summary.misclassification():.1f}%)"
    return f"{format_number(summary.mean)} (n = {node.n}, err = {format_number(summary.err)})"


def export_text(tree: Tree) -> str:
    """
    Model formula header, one bracketed line per node indented by depth,
    and the inner / terminal node counts
    """
    lines: List[str] = ["Model formula:", tree.formula(), "", "Fitted party:"]
    for node in tree:
        depth = tree.depth_of(node.id)
        prefix = "|   " * depth
        parent_id = tree.parent_of(node.id)
        label = "root" if parent_id is None else _edge_label(tree.node(parent_id), node.id)
        line = f"{prefix}[{node.id}] {label}"
        if node.is_terminal:
            line += f": {_terminal_text(tree, node)}"
        lines.append(line)

    lines.append("")
    lines.append(f"Number of inner nodes:    {tree.inner_count}")
    lines.append(f"Number of terminal nodes: {tree.terminal_count}")
    return "\n".join(lines) + "\n"
