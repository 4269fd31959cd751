# Tree Model Package
from src.app.TreeModel.tree import Tree, Node, NodeSummary, Split, OutcomeMeta, CovariateMeta
from src.app.TreeModel.paths import (
    Condition,
    Interval,
    SubgroupPath,
    path_node,
    consolidate,
    terminal_paths,
    subgroup_rows,
    condition_rows,
)
from src.app.TreeModel.interchange import import_tree, tree_to_document, dump_tree
from src.app.TreeModel.printer import export_text
