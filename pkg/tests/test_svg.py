import math
import re
import xml.etree.ElementTree as ET

import pytest

from src.app.Data.dataset import dataset_from_arrays
from src.app.TreeModel.interchange import import_tree
from src.app.Viz.palette import Color
from src.app.Viz.scene import Group, Line, Rect, Scene, Text, tree_figure
from src.app.Viz.svg import SVG_NS, render_svg
from src.app.errors import RenderError
from conftest import make_intake_rows

NS = {"svg": SVG_NS}
HEX = re.compile(r"^#[0-9a-f]{6}$")


def parse(svg: str) -> ET.Element:
    return ET.fromstring(svg.encode("utf-8"))


@pytest.fixture
def figure_svg(rpart_fixture_path):
    with open(rpart_fixture_path, "r", encoding="utf-8") as handle:
        tree = import_tree(handle.read())
    kcal, liking, rrvfood = make_intake_rows()
    dataset = dataset_from_arrays(("kcal24h0", kcal), {"liking": liking, "rrvfood": rrvfood})
    return render_svg(tree_figure(tree, dataset), 1200, 900)


def test_empty_scene_is_a_bare_root():
    root = parse(render_svg(Scene(100.0, 100.0), 640, 480))
    assert root.tag == f"{{{SVG_NS}}}svg"
    assert root.get("version") == "1.1"
    assert (root.get("width"), root.get("height"), root.get("viewBox")) == ("640", "480", "0 0 640 480")
    assert list(root) == []
    assert root.get("font-family") is None


def test_figure_is_well_formed(figure_svg):
    assert figure_svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    root = parse(figure_svg)
    groups = root.findall("svg:g", NS)
    assert [g.get("id") for g in groups] == ["node-3", "node-4", "node-5"]
    assert len(root.findall(".//svg:rect[@class='bar']", NS)) == 2 + 2 + 1
    for element in root.iter():
        for key in ("fill", "stroke"):
            value = element.get(key)
            if value is not None and value != "none":
                assert HEX.match(value), value


def test_bars_are_translucent(figure_svg):
    bars = parse(figure_svg).findall(".//svg:rect[@class='bar']", NS)
    assert all(bar.get("fill-opacity") == "0.5" for bar in bars)
    assert all(bar.get("data-covariate") in ("liking", "rrvfood") for bar in bars)


def test_rendering_is_deterministic(figure_svg, rpart_fixture_path):
    with open(rpart_fixture_path, "r", encoding="utf-8") as handle:
        tree = import_tree(handle.read())
    kcal, liking, rrvfood = make_intake_rows()
    dataset = dataset_from_arrays(("kcal24h0", kcal), {"liking": liking, "rrvfood": rrvfood})
    assert render_svg(tree_figure(tree, dataset), 1200, 900) == figure_svg


def test_scene_units_scale_to_pixels():
    scene = Scene(
        200.0, 100.0,
        (
            Group("cell", 100.0, 0.0, (Rect(10.0, 20.0, 30.0, 40.0, fill=Color(1.0, 0.0, 0.0)),)),
            Line(0.0, 50.0, 200.0, 50.0, dashed=True),
            Text(100.0, 10.0, "a < b", 3.0),
        ),
    )
    root = parse(render_svg(scene, 400, 300))
    group = root.find("svg:g", NS)
    assert group.get("transform") == "translate(200,0)"
    rect = group.find("svg:rect", NS)
    assert (rect.get("x"), rect.get("y"), rect.get("width"), rect.get("height")) == ("20", "60", "60", "120")
    assert rect.get("fill") == "#ff0000" and rect.get("stroke") == "none"
    line = root.find("svg:line", NS)
    assert line.get("stroke-dasharray") == "4,3" and line.get("y1") == "150"
    text = root.find("svg:text", NS)
    assert text.text == "a < b" and text.get("font-size") == "6"


@pytest.mark.parametrize("width,height", [(0, 100), (100, -1), (math.nan, 100), (100, math.inf)])
def test_invalid_canvas_size(width, height):
    with pytest.raises(RenderError) as caught:
        render_svg(Scene(100.0, 100.0), width, height)
    assert caught.value.code == "INVALID_SIZE"


def test_non_finite_coordinates_are_refused():
    scene = Scene(100.0, 100.0, (Line(0.0, math.nan, 1.0, 1.0),))
    with pytest.raises(RenderError) as caught:
        render_svg(scene, 100, 100)
    assert caught.value.code == "NON_FINITE_COORDINATE"
