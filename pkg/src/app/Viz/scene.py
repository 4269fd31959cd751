"""
Device-independent drawing description of subgroup figures

A subplot lives in a 100 x 100 unit box with y growing downwards:
title band at the top, histogram and constraint bars in the plot area,
optional axes underneath.
"""
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.app.Data.dataset import Dataset
from src.app.Data.statistics import (
    Histogram,
    category_histogram,
    fraction_below,
    histogram,
    kde,
    percentile_of,
)
from src.app.TreeModel.paths import Interval, SubgroupPath, consolidate, subgroup_rows, terminal_paths
from src.app.TreeModel.tree import Tree
from src.app.Viz.options import RenderOptions
from src.app.Viz.palette import BLACK, GREY, LIGHT_GREY, Color, palette
from src.app.errors import DataError, RenderError

CELL = 100.0
PLOT_LEFT, PLOT_RIGHT = 8.0, 96.0
PLOT_TOP, PLOT_BOTTOM = 14.0, 80.0
BAR_STEP, BAR_HEIGHT = 9.0, 6.5
FONT_UNIT = 3.0
HEADER = 8.0
MAX_SUBPLOTS = 10


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    width: float
    height: float
    fill: Optional[Color] = None
    stroke: Optional[Color] = None
    css_class: str = ""
    data: Tuple[Tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Line:
    x1: float
    y1: float
    x2: float
    y2: float
    stroke: Color = BLACK
    width: float = 0.3
    dashed: bool = False
    css_class: str = ""


@dataclass(frozen=True)
class Polyline:
    points: Tuple[Tuple[float, float], ...]
    stroke: Color = BLACK
    width: float = 0.4
    css_class: str = ""


@dataclass(frozen=True)
class Text:
    x: float
    y: float
    text: str
    size: float
    anchor: str = "middle"
    fill: Color = BLACK
    css_class: str = ""


@dataclass(frozen=True)
class Axis:
    x1: float
    y1: float
    x2: float
    y2: float
    ticks: Tuple[Tuple[float, str], ...]
    label_size: float
    title: str = ""
    title_size: float = FONT_UNIT
    css_class: str = ""


@dataclass(frozen=True)
class Group:
    """Items drawn translated by (dx, dy)"""
    id: str
    dx: float
    dy: float
    items: Tuple["Primitive", ...]


Primitive = Union[Rect, Line, Polyline, Text, Axis, Group]


@dataclass(frozen=True)
class Scene:
    width: float
    height: float
    items: Tuple[Primitive, ...] = ()
    node_id: Optional[int] = None
    grid: Optional[Tuple[int, int]] = None

    def walk(self) -> Iterator[Primitive]:
        """Every primitive, groups flattened"""
        stack = list(reversed(self.items))
        while stack:
            item = stack.pop()
            yield item
            if isinstance(item, Group):
                stack.extend(reversed(item.items))

    def find(self, css_class: str) -> List[Primitive]:
        return [item for item in self.walk() if getattr(item, "css_class", "") == css_class]


def _bar_extent(values: np.ndarray, interval: Interval) -> Tuple[float, float]:
    """
    Population percentiles (0-100) of the interval ends; unbounded ends map
    to 0 and 100
    """
    if not interval.has_lower:
        low = 0.0
    elif interval.lower_open:
        low = percentile_of(values, interval.lower)
    else:
        low = fraction_below(values, interval.lower)

    if not interval.has_upper:
        high = 1.0
    elif interval.upper_open:
        high = fraction_below(values, interval.upper)
    else:
        high = percentile_of(values, interval.upper)
    return 100.0 * low, 100.0 * high


def _x_of_percentile(pct: float) -> float:
    return PLOT_LEFT + (PLOT_RIGHT - PLOT_LEFT) * pct / 100.0


def _histogram_items(
    hist: Histogram,
    labels: Sequence[str],
    options: RenderOptions,
) -> Tuple[List[Primitive], float]:
    """Background bars with their labels; returns items and units per count"""
    items: List[Primitive] = []
    low, high = hist.bin_edges[0], hist.bin_edges[-1]
    span = high - low
    per_count = (PLOT_BOTTOM - PLOT_TOP) / max(max(hist.counts), 1)
    for i, count in enumerate(hist.counts):
        x0 = PLOT_LEFT + (PLOT_RIGHT - PLOT_LEFT) * (hist.bin_edges[i] - low) / span
        x1 = PLOT_LEFT + (PLOT_RIGHT - PLOT_LEFT) * (hist.bin_edges[i + 1] - low) / span
        height = count * per_count
        items.append(
            Rect(
                x0, PLOT_BOTTOM - height, x1 - x0, height,
                fill=LIGHT_GREY, stroke=GREY, css_class="hist",
                data=(("count", str(count)),),
            )
        )
        if labels[i]:
            items.append(
                Text((x0 + x1) / 2, PLOT_BOTTOM - 1.0, labels[i], FONT_UNIT * 0.6 * options.text_label,
                     fill=GREY, css_class="bin-label")
            )
    return items, per_count


def _outcome_x(value: float, hist: Histogram) -> float:
    low, high = hist.bin_edges[0], hist.bin_edges[-1]
    return PLOT_LEFT + (PLOT_RIGHT - PLOT_LEFT) * (value - low) / (high - low)


def _density_items(outcomes: np.ndarray, hist: Histogram, per_count: float) -> List[Primitive]:
    try:
        curve = kde(outcomes)
    except DataError:
        return []
    low, high = hist.bin_edges[0], hist.bin_edges[-1]
    bin_width = (high - low) / hist.k
    scale = outcomes.size * bin_width * per_count
    points = []
    for g, d in zip(curve.grid, curve.density):
        if low <= g <= high:
            y = max(PLOT_TOP, PLOT_BOTTOM - d * scale)
            points.append((_outcome_x(g, hist), y))
    if len(points) < 2:
        return []
    return [Polyline(tuple(points), stroke=BLACK, width=0.4, css_class="density")]


def _round(value: float, digits: int) -> str:
    return f"{value:.{digits}f}"


def subplot_scene(path: SubgroupPath, dataset: Dataset, options: Optional[RenderOptions] = None) -> Scene:
    """
    One subgroup panel: title, outcome histogram with per-bin labels,
    mean line, optional density curve and one percentile-scaled bar per
    constrained covariate (population percentiles over the full dataset)
    """
    options = options or RenderOptions()
    if not path.consolidated:
        path = consolidate(path)

    rows = subgroup_rows(dataset, path)
    if rows.size == 0:
        raise RenderError(f"subgroup of node {path.terminal_id} holds no rows", "EMPTY_SUBGROUP")

    outcome = dataset.outcome
    values = outcome.values[rows]
    items: List[Primitive] = []
    digits = options.text_round

    if outcome.is_continuous:
        mean = float(values.mean())
        title = f"mean = {_round(mean, digits)}, n = {rows.size}"
        hist = histogram(values)
        if options.interval_mode:
            labels = [
                f"{'[' if i == 0 else '('}{_round(hist.bin_edges[i], digits)},{_round(hist.bin_edges[i + 1], digits)}]"
                for i in range(hist.k)
            ]
        else:
            labels = ["" if m is None else _round(m, digits) for m in hist.bin_means]
    else:
        counts = np.bincount(values, minlength=len(outcome.labels))
        modal = outcome.labels[int(np.argmax(counts))]
        title = f"class = {modal}, n = {rows.size}"
        hist = category_histogram(values, len(outcome.labels))
        if options.interval_mode:
            labels = list(outcome.labels)
        else:
            labels = [f"{c / rows.size:.{max(digits, 1)}f}" for c in hist.counts]

    items.append(Text(CELL / 2, 8.0, title, FONT_UNIT * options.text_title, css_class="title"))
    hist_items, per_count = _histogram_items(hist, labels, options)
    items.extend(hist_items)

    if outcome.is_continuous:
        x = _outcome_x(mean, hist)
        items.append(Line(x, PLOT_TOP, x, PLOT_BOTTOM, stroke=BLACK, width=0.5, dashed=True, css_class="mean-line"))
        if options.density_line:
            items.extend(_density_items(values, hist, per_count))

    colors = palette(options.color_type, dataset.m, options.alpha)
    step = min(BAR_STEP, (PLOT_BOTTOM - PLOT_TOP) / max(len(path.constraints), 1))
    height = BAR_HEIGHT * step / BAR_STEP
    for i, interval in enumerate(path.constraints):
        low, high = _bar_extent(dataset.covariate(interval.covariate).values, interval)
        x0, x1 = _x_of_percentile(low), _x_of_percentile(high)
        y = PLOT_BOTTOM - (i + 1) * step + (step - height) / 2
        color = colors[dataset.covariate_index(interval.covariate)]
        items.append(
            Rect(
                x0, y, x1 - x0, height, fill=color, css_class="bar",
                data=(
                    ("covariate", interval.covariate),
                    ("lower-pct", f"{low:.6f}"),
                    ("upper-pct", f"{high:.6f}"),
                ),
            )
        )
        items.append(
            Text((x0 + x1) / 2, y + height * 0.72, interval.label(digits),
                 FONT_UNIT * 0.7 * options.text_bar, css_class="bar-label")
        )

    if options.add_h_axis:
        ticks = tuple(
            (_outcome_x(edge, hist), _round(edge, digits)) for edge in hist.bin_edges
        ) if outcome.is_continuous else tuple(
            (_outcome_x(float(code), hist), label) for code, label in enumerate(outcome.labels)
        )
        items.append(
            Axis(PLOT_LEFT, PLOT_BOTTOM, PLOT_RIGHT, PLOT_BOTTOM, ticks,
                 FONT_UNIT * 0.6 * options.text_label, outcome.name, FONT_UNIT * 0.7 * options.text_axis,
                 css_class="h-axis")
        )
    if options.add_p_axis:
        ticks = tuple((_x_of_percentile(p), f"{p:g}") for p in (0, 25, 50, 75, 100))
        axis_y = PLOT_BOTTOM + (9.0 if options.add_h_axis else 1.0)
        items.append(
            Axis(PLOT_LEFT, axis_y, PLOT_RIGHT, axis_y, ticks,
                 FONT_UNIT * 0.8 * options.text_percentile, "percentile", FONT_UNIT * 0.7 * options.text_axis,
                 css_class="p-axis")
        )

    return Scene(CELL, CELL, tuple(items), node_id=path.terminal_id)


def grid_shape(count: int) -> Tuple[int, int]:
    """(rows, cols) of a near-square grid"""
    cols = int(math.ceil(math.sqrt(count)))
    return int(math.ceil(count / cols)), cols


def check_subplot_count(count: int) -> None:
    if count == 0:
        raise RenderError("nothing to lay out: no subplots given", "NO_SUBPLOTS")
    if count > MAX_SUBPLOTS:
        raise RenderError(
            f"the tree has {count} terminal nodes but a figure holds at most {MAX_SUBPLOTS} subplots; "
            "restrict the number of terminal nodes (lower --alpha, raise --minbucket or set --maxdepth)",
            "TOO_MANY_SUBPLOTS",
        )


def layout(scenes: Sequence[Scene], title: str = "", text_main: float = 1.5) -> Scene:
    """
    Arrange 1 to 10 subplot scenes row-major by terminal id in a
    near-square grid of uniform cells
    """
    count = len(scenes)
    check_subplot_count(count)

    ordered = sorted(scenes, key=lambda scene: (scene.node_id is None, scene.node_id or 0))
    rows, cols = grid_shape(count)
    top = HEADER if title else 0.0
    cell_w = max(scene.width for scene in ordered)
    cell_h = max(scene.height for scene in ordered)

    items: List[Primitive] = []
    if title:
        items.append(Text(cols * cell_w / 2, HEADER * 0.7, title, FONT_UNIT * text_main, css_class="main-title"))
    for index, scene in enumerate(ordered):
        row, col = divmod(index, cols)
        group_id = f"node-{scene.node_id}" if scene.node_id is not None else f"cell-{index + 1}"
        items.append(Group(group_id, col * cell_w, top + row * cell_h, scene.items))

    return Scene(cols * cell_w, top + rows * cell_h, tuple(items), grid=(rows, cols))


def tree_figure(tree: Tree, dataset: Dataset, options: Optional[RenderOptions] = None) -> Scene:
    """
    Full figure for a tree: one subplot per terminal node under a heading
    with the model formula
    """
    options = options or RenderOptions()
    check_subplot_count(tree.terminal_count)
    scenes = [subplot_scene(path, dataset, options) for path in terminal_paths(tree)]
    return layout(scenes, title=tree.formula(), text_main=options.text_main)
