"""
Tree Service - Business logic tying data loading, fitting, printing and rendering together
Shared by the command line driver and the HTTP API
"""
import os
import sys
import tempfile
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, Union

import numpy as np

from src.app.CTree.controls import FitControls
from src.app.CTree.fitter import CTreeFitter
from src.app.Data.dataset import CATEGORICAL, CONTINUOUS, Column, Dataset, load_csv
from src.app.Data.statistics import discretize, quantile_breakpoints
from src.app.TreeModel.interchange import dump_tree, import_tree, tree_to_document
from src.app.TreeModel.printer import export_text
from src.app.TreeModel.tree import Tree
from src.app.Viz.options import RenderOptions
from src.app.Viz.palette import PALETTE_NAMES
from src.app.Viz.scene import tree_figure
from src.app.Viz.svg import render_svg
from src.app.errors import DataError, SubgroupTreeError, UsageError
from src.config.settings import settings

# Discretized outcome labels carry 4 significant digits
CUT_LABEL_DIGITS = 4

TreeSource = Union[Tree, str, bytes, Dict[str, Any]]


def parse_number_list(text: str, field: str) -> List[float]:
    """"0, 0.25,1" -> [0.0, 0.25, 1.0]; raises UsageError naming the field"""
    try:
        values = [float(part) for part in text.split(",")]
    except (AttributeError, ValueError):
        raise UsageError(f"{field} expects comma separated numbers, got '{text}'", "BAD_FLAG", field)
    if not all(np.isfinite(values)):
        raise UsageError(f"{field} expects finite numbers, got '{text}'", "BAD_FLAG", field)
    return values


class TreeService:
    """
    Service class that handles fitting, printing and rendering of subgroup trees
    """

    def __init__(self, verbose: bool = True):
        """
        Initialize the service

        Args:
            verbose: print status lines to stderr
        """
        self.verbose = verbose

    def log(self, message: str):
        if self.verbose:
            print(message, file=sys.stderr)

    @staticmethod
    def _ok(message: str, data: Any) -> Dict[str, Any]:
        return {"success": True, "message": message, "data": data, "error": None}

    def _failed(self, message: str, exc: Exception) -> Dict[str, Any]:
        if isinstance(exc, SubgroupTreeError):
            self.log(f"❌ {message}: {exc.message}")
            return {
                "success": False,
                "message": exc.message,
                "error": exc.code,
                "field": exc.field,
                "data": None,
            }
        self.log(f"❌ {message}: {str(exc)}")
        return {
            "success": False,
            "message": f"{message}: {str(exc)}",
            "error": "INTERNAL_ERROR",
            "field": None,
            "data": None,
        }

    # ------------------------------------------------------------------
    # Data
    # ------------------------------------------------------------------

    def discretize_outcome(
        self,
        dataset: Dataset,
        probabilities: Optional[Sequence[float]] = None,
        breakpoints: Optional[Sequence[float]] = None,
    ) -> Dataset:
        """
        Replace a continuous outcome by its interval classes; breakpoints
        come from outcome quantiles at the given probabilities or are given
        directly. The lowest interval is closed on the left.
        """
        outcome = dataset.outcome
        if not outcome.is_continuous:
            raise DataError(f"outcome '{outcome.name}' is already categorical", "NOT_CONTINUOUS", "cut")
        if probabilities is not None:
            for p in probabilities:
                if not 0.0 <= p <= 1.0:
                    raise DataError(f"cut probability {p} outside [0, 1]", "OUT_OF_RANGE", "cut")
            breakpoints = quantile_breakpoints(outcome.values, probabilities)
        classes = discretize(
            outcome.values, breakpoints, include_lowest=True, label_digits=CUT_LABEL_DIGITS, name=outcome.name
        )
        self.log(f"🔄 Outcome '{outcome.name}' cut into {len(classes.labels)} classes: {', '.join(classes.labels)}")
        return dataset.with_outcome(classes)

    def align_outcome(self, dataset: Dataset, tree: Tree) -> Dataset:
        """Recode a categorical outcome onto the tree's category order"""
        outcome = dataset.outcome
        categories = tree.outcome.categories
        lookup = {label: code for code, label in enumerate(categories)}
        unknown = [label for label in outcome.labels if label not in lookup]
        if unknown:
            raise DataError(
                f"outcome '{outcome.name}' has class '{unknown[0]}' that the tree does not know",
                "UNKNOWN_CATEGORY",
            )
        recode = np.array([lookup[label] for label in outcome.labels], dtype=np.int64)
        return dataset.with_outcome(Column(outcome.name, CATEGORICAL, recode[outcome.values], categories))

    def load_dataset(
        self,
        data_path: str,
        outcome: str,
        covariates: Sequence[str],
        cut: Optional[Sequence[float]] = None,
        cut_breaks: Optional[Sequence[float]] = None,
        tree: Optional[Tree] = None,
    ) -> Dataset:
        """
        Read the CSV columns a fit or a figure needs

        With a tree the column kinds follow the tree: covariates must be
        numeric and a categorical outcome is recoded onto the tree classes.
        """
        kinds = {name: CONTINUOUS for name in covariates}
        if cut is not None or cut_breaks is not None:
            kinds[outcome] = CONTINUOUS
        elif tree is not None:
            kinds[outcome] = CONTINUOUS if tree.outcome.kind == CONTINUOUS else CATEGORICAL

        self.log(f"🔄 Reading {data_path}")
        dataset = load_csv(data_path, outcome, covariates, kinds)
        self.log(f"✅ Read {dataset.n_rows} rows, outcome '{outcome}', covariates {', '.join(covariates)}")

        if cut is not None or cut_breaks is not None:
            dataset = self.discretize_outcome(dataset, probabilities=cut, breakpoints=cut_breaks)
        if tree is not None and tree.outcome.kind == CATEGORICAL:
            if dataset.outcome.is_continuous:
                raise DataError(
                    f"tree outcome '{outcome}' is categorical; give --cut or --cut-breaks for numeric data",
                    "OUTCOME_KIND_MISMATCH",
                )
            dataset = self.align_outcome(dataset, tree)
        elif tree is not None and not dataset.outcome.is_continuous:
            raise DataError(f"tree outcome '{outcome}' is continuous but the data is categorical", "OUTCOME_KIND_MISMATCH")
        return dataset

    @contextmanager
    def uploaded_csv(self, content: bytes, filename: str = "upload.csv") -> Iterator[str]:
        """
        Save uploaded CSV bytes to a temporary file for the duration of the block
        """
        if len(content) > settings.MAX_UPLOAD_SIZE:
            raise DataError(
                f"{filename} exceeds the maximum upload size of {settings.MAX_UPLOAD_SIZE} bytes",
                "FILE_TOO_LARGE",
            )
        temp_file_path = None
        try:
            with tempfile.NamedTemporaryFile(delete=False, suffix=".csv") as temp_file:
                temp_file.write(content)
                temp_file_path = temp_file.name
            yield temp_file_path
        finally:
            # Clean up temporary file
            if temp_file_path and os.path.exists(temp_file_path):
                os.unlink(temp_file_path)

    # ------------------------------------------------------------------
    # Trees
    # ------------------------------------------------------------------

    def read_tree(self, source: TreeSource) -> Tree:
        """A Tree from a Tree, a document path, JSON text or a parsed document"""
        if isinstance(source, Tree):
            return source
        if isinstance(source, str) and not source.lstrip().startswith("{"):
            if not os.path.isfile(source):
                raise DataError(f"file not found: {source}", "MISSING_FILE", "tree")
            with open(source, "r", encoding="utf-8") as handle:
                source = handle.read()
        return import_tree(source)

    def fit_tree(
        self,
        data_path: str,
        outcome: str,
        covariates: Sequence[str],
        controls: Optional[FitControls] = None,
        cut: Optional[Sequence[float]] = None,
        cut_breaks: Optional[Sequence[float]] = None,
    ) -> Dict[str, Any]:
        """
        Fit a conditional inference tree on a CSV file

        Returns:
            result dict; data holds the tree, its interchange document and
            JSON text, the dataset and the per-node trace
        """
        controls = controls or FitControls()
        try:
            dataset = self.load_dataset(data_path, outcome, covariates, cut, cut_breaks)
            self.log(
                f"🔄 Fitting {outcome} ~ {' + '.join(covariates)} "
                f"(alpha = {controls.alpha:g}, minbucket = {controls.minbucket}, minsplit = {controls.minsplit}, "
                f"maxdepth = {controls.maxdepth if controls.maxdepth is not None else 'none'})"
            )
            tree, trace = CTreeFitter(controls).fit_with_trace(dataset)
            for entry in trace:
                self.log(f"   {entry}")
            self.log(f"✅ Fitted tree with {tree.inner_count} inner and {tree.terminal_count} terminal nodes")
            return self._ok(
                f"Tree fitted with {tree.terminal_count} terminal nodes",
                {
                    "tree": tree,
                    "dataset": dataset,
                    "document": tree_to_document(tree),
                    "json": dump_tree(tree),
                    "trace": [str(entry) for entry in trace],
                },
            )
        except Exception as e:
            return self._failed("Failed to fit tree", e)

    def describe_tree(self, source: TreeSource) -> Dict[str, Any]:
        """
        Plain-text listing of a tree
        """
        try:
            tree = self.read_tree(source)
            return self._ok(f"Tree with {len(tree)} nodes listed", export_text(tree))
        except Exception as e:
            return self._failed("Failed to list tree", e)

    def render_tree(
        self,
        source: TreeSource,
        data_path: Optional[str] = None,
        options: Optional[RenderOptions] = None,
        width: Optional[float] = None,
        height: Optional[float] = None,
        cut: Optional[Sequence[float]] = None,
        cut_breaks: Optional[Sequence[float]] = None,
        dataset: Optional[Dataset] = None,
    ) -> Dict[str, Any]:
        """
        SVG figure of every terminal subgroup of a tree

        Args:
            source: the tree, or where to read it from
            data_path: CSV holding the tree's outcome and covariates
            options: display options, defaults when None
            width, height: canvas size in pixels, defaults from settings
            cut, cut_breaks: discretization of a numeric outcome for categorical trees
            dataset: already loaded data, used instead of data_path
        """
        options = options or RenderOptions()
        width = settings.SVG_WIDTH if width is None else width
        height = settings.SVG_HEIGHT if height is None else height
        try:
            tree = self.read_tree(source)
            if dataset is None:
                if data_path is None:
                    raise DataError("rendering needs the data the tree describes", "MISSING_FILE", "data")
                dataset = self.load_dataset(
                    data_path, tree.outcome.name, tree.covariate_names, cut, cut_breaks, tree=tree
                )
            self.log(f"🔄 Rendering {tree.terminal_count} subgroups")
            svg = render_svg(tree_figure(tree, dataset, options), width, height)
            self.log("✅ Figure rendered")
            return self._ok(f"Rendered {tree.terminal_count} subgroups", svg)
        except Exception as e:
            return self._failed("Failed to render tree", e)

    def fit_and_render(
        self,
        data_path: str,
        outcome: str,
        covariates: Sequence[str],
        controls: Optional[FitControls] = None,
        options: Optional[RenderOptions] = None,
        width: Optional[float] = None,
        height: Optional[float] = None,
        cut: Optional[Sequence[float]] = None,
        cut_breaks: Optional[Sequence[float]] = None,
    ) -> Dict[str, Any]:
        """
        Fit then render in one go; the figure equals rendering the dumped
        tree against the same data
        """
        fitted = self.fit_tree(data_path, outcome, covariates, controls, cut, cut_breaks)
        if not fitted["success"]:
            return fitted
        return self.render_tree(
            fitted["data"]["tree"], options=options, width=width, height=height, dataset=fitted["data"]["dataset"]
        )

    def get_health_status(self) -> Dict[str, Any]:
        """
        Get health status information
        """
        return {
            "status": "healthy",
            "api_status": "running",
            "svg_size": [settings.SVG_WIDTH, settings.SVG_HEIGHT],
            "max_upload_size": settings.MAX_UPLOAD_SIZE,
            "default_controls": FitControls().model_dump(),
            "default_render_options": RenderOptions().model_dump(),
            "palettes": {str(number): name for number, name in PALETTE_NAMES.items()},
        }


# Global service instance
tree_service = TreeService()
