"""
SVG 1.1 serialization of a Scene
"""
import math
import xml.etree.ElementTree as ET
from typing import Dict, Optional

from src.app.Viz.palette import Color
from src.app.Viz.scene import Axis, Group, Line, Polyline, Primitive, Rect, Scene, Text
from src.app.errors import RenderError

SVG_NS = "http://www.w3.org/2000/svg"
FONT_FAMILY = "Helvetica, Arial, sans-serif"
XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>\n'

ET.register_namespace("", SVG_NS)


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


def _num(value: float) -> str:
    if not math.isfinite(value):
        raise RenderError(f"scene coordinate {value} is not finite", "NON_FINITE_COORDINATE")
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class _Mapper:
    """Affine map from abstract scene units to pixels"""

    def __init__(self, scene: Scene, width: float, height: float):
        self.sx = width / scene.width if scene.width > 0 else 1.0
        self.sy = height / scene.height if scene.height > 0 else 1.0

    def x(self, value: float) -> str:
        return _num(value * self.sx)

    def y(self, value: float) -> str:
        return _num(value * self.sy)

    def size(self, value: float) -> str:
        return _num(value * min(self.sx, self.sy))


def _paint(attrs: Dict[str, str], key: str, color: Optional[Color]) -> None:
    if color is None:
        attrs[key] = "none"
        return
    attrs[key] = color.hex
    if color.opacity < 1.0:
        attrs[f"{key}-opacity"] = _num(color.opacity)


def _classed(attrs: Dict[str, str], css_class: str) -> Dict[str, str]:
    if css_class:
        attrs["class"] = css_class
    return attrs


def _text(parent: ET.Element, m: _Mapper, x: float, y: float, text: str, size: float,
          anchor: str = "middle", fill: Optional[Color] = None, css_class: str = "") -> None:
    attrs = {"x": m.x(x), "y": m.y(y), "font-size": m.size(size), "text-anchor": anchor}
    _paint(attrs, "fill", fill or Color(0.0, 0.0, 0.0))
    element = ET.SubElement(parent, _tag("text"), _classed(attrs, css_class))
    element.text = text


def _emit(parent: ET.Element, item: Primitive, m: _Mapper) -> None:
    if isinstance(item, Group):
        group = ET.SubElement(
            parent, _tag("g"), {"id": item.id, "transform": f"translate({m.x(item.dx)},{m.y(item.dy)})"}
        )
        for child in item.items:
            _emit(group, child, m)
    elif isinstance(item, Rect):
        attrs = {"x": m.x(item.x), "y": m.y(item.y), "width": m.x(item.width), "height": m.y(item.height)}
        _paint(attrs, "fill", item.fill)
        _paint(attrs, "stroke", item.stroke)
        for key, value in item.data:
            attrs[f"data-{key}"] = value
        ET.SubElement(parent, _tag("rect"), _classed(attrs, item.css_class))
    elif isinstance(item, Line):
        attrs = {"x1": m.x(item.x1), "y1": m.y(item.y1), "x2": m.x(item.x2), "y2": m.y(item.y2)}
        _paint(attrs, "stroke", item.stroke)
        attrs["stroke-width"] = m.size(item.width)
        if item.dashed:
            attrs["stroke-dasharray"] = "4,3"
        ET.SubElement(parent, _tag("line"), _classed(attrs, item.css_class))
    elif isinstance(item, Polyline):
        attrs = {"points": " ".join(f"{m.x(x)},{m.y(y)}" for x, y in item.points), "fill": "none"}
        _paint(attrs, "stroke", item.stroke)
        attrs["stroke-width"] = m.size(item.width)
        ET.SubElement(parent, _tag("polyline"), _classed(attrs, item.css_class))
    elif isinstance(item, Text):
        _text(parent, m, item.x, item.y, item.text, item.size, item.anchor, item.fill, item.css_class)
    elif isinstance(item, Axis):
        axis = ET.SubElement(parent, _tag("g"), _classed({}, item.css_class))
        line = {"x1": m.x(item.x1), "y1": m.y(item.y1), "x2": m.x(item.x2), "y2": m.y(item.y2)}
        _paint(line, "stroke", Color(0.0, 0.0, 0.0))
        ET.SubElement(axis, _tag("line"), line)
        for position, label in item.ticks:
            tick = {"x1": m.x(position), "y1": m.y(item.y1), "x2": m.x(position), "y2": m.y(item.y1 + 1.0)}
            _paint(tick, "stroke", Color(0.0, 0.0, 0.0))
            ET.SubElement(axis, _tag("line"), tick)
            _text(axis, m, position, item.y1 + 1.5 + item.label_size, label, item.label_size)
        if item.title:
            _text(axis, m, (item.x1 + item.x2) / 2, item.y1 + 3.0 + item.label_size + item.title_size,
                  item.title, item.title_size)
    else:
        raise RenderError(f"unknown scene primitive {type(item).__name__}", "UNKNOWN_PRIMITIVE")


def render_svg(scene: Scene, width: float, height: float) -> str:
    """
    Serialize a scene to an SVG document of width x height pixels

    Output is a pure function of the inputs: attribute order is fixed and
    numbers are printed with two decimals at most.
    """
    for name, value in (("width", width), ("height", height)):
        if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
            raise RenderError(f"{name} must be a positive number of pixels, got {value}", "INVALID_SIZE")

    mapper = _Mapper(scene, float(width), float(height))
    root = ET.Element(
        _tag("svg"),
        {
            "version": "1.1",
            "width": _num(float(width)),
            "height": _num(float(height)),
            "viewBox": f"0 0 {_num(float(width))} {_num(float(height))}",
        },
    )
    if scene.items:
        root.set("font-family", FONT_FAMILY)
    for item in scene.items:
        _emit(root, item, mapper)

    return XML_DECLARATION + ET.tostring(root, encoding="unicode") + "\n"
