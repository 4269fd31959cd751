# Subgroup Visualization Package
from src.app.Viz.options import RenderOptions
from src.app.Viz.palette import Color, palette, hcl_color, PALETTE_NAMES
from src.app.Viz.scene import Scene, Rect, Line, Polyline, Text, Axis, Group, subplot_scene, layout, grid_shape, tree_figure
from src.app.Viz.svg import render_svg
