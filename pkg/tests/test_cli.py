import json
import xml.etree.ElementTree as ET

import pytest

from src.app.Viz.svg import SVG_NS
from src.cli.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, run


def node_groups(svg_text):
    root = ET.fromstring(svg_text.encode("utf-8"))
    return [g.get("id") for g in root.findall(f"{{{SVG_NS}}}g")]


def read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def test_print_tree_document(rpart_fixture_path, rpart_expected_text, capsys):
    assert run(["print", "--tree", rpart_fixture_path]) == EXIT_OK
    assert capsys.readouterr().out == rpart_expected_text


def test_render_tree_document(rpart_fixture_path, intake_csv, tmp_path, capsys):
    out = tmp_path / "figure.svg"
    code = run(["render", "--tree", rpart_fixture_path, "--data", intake_csv, "--out", str(out)])
    assert code == EXIT_OK, capsys.readouterr().err
    assert node_groups(read(out)) == ["node-3", "node-4", "node-5"]


def test_render_to_stdout_with_options(rpart_fixture_path, intake_csv, capsys):
    code = run([
        "render", "--tree", rpart_fixture_path, "--data", intake_csv,
        "--color-type", "3", "--bar-alpha", "1", "--interval", "--no-density-line",
        "--add-h-axis", "--add-p-axis", "--width", "800", "--height", "600",
    ])
    svg = capsys.readouterr().out
    assert code == EXIT_OK
    root = ET.fromstring(svg.encode("utf-8"))
    assert root.get("width") == "800"
    assert 'class="density"' not in svg
    assert 'class="p-axis"' in svg


def test_fit_then_render_equals_fused_render(step_csv, tmp_path, capsys):
    formula = "y ~ x1 + x2"
    tree_path, split_svg, fused_svg = tmp_path / "tree.json", tmp_path / "a.svg", tmp_path / "b.svg"

    assert run(["fit", "--data", step_csv, "--formula", formula, "--out", str(tree_path)]) == EXIT_OK
    document = json.loads(read(tree_path))
    assert document["version"] == 1
    assert document["nodes"][0]["split"]["covariate"] == "x1"

    assert run(["render", "--tree", str(tree_path), "--data", step_csv, "--out", str(split_svg)]) == EXIT_OK
    assert run(["render", "--data", step_csv, "--formula", formula, "--out", str(fused_svg)]) == EXIT_OK
    assert read(split_svg) == read(fused_svg)


def test_fit_and_print_from_data(step_csv, capsys):
    assert run(["print", "--data", step_csv, "--formula", "y ~ x1 + x2", "--maxdepth", "1"]) == EXIT_OK
    text = capsys.readouterr().out
    assert text.startswith("Model formula:\ny ~ x1 + x2\n")
    assert "Number of terminal nodes: 2" in text


def test_cut_gives_a_categorical_tree(step_csv, capsys):
    assert run(["fit", "--data", step_csv, "--formula", "y ~ x1 + x2", "--cut", "0,0.5,1"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["outcome"]["kind"] == "categorical"
    assert len(document["outcome"]["categories"]) == 2
    assert document["outcome"]["categories"][0].startswith("[")


def test_color_type_out_of_range(rpart_fixture_path, intake_csv, capsys):
    code = run(["render", "--tree", rpart_fixture_path, "--data", intake_csv, "--color-type", "9"])
    assert code == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error: --color-type")


@pytest.mark.parametrize(
    "argv,flag",
    [
        (["fit", "--formula", "y ~ x1", "--alpha", "0.05", "--mincriterion", "0.9"], "--mincriterion"),
        (["fit", "--formula", "y ~ x1", "--minbucket", "0"], "--minbucket"),
        (["fit", "--formula", "y x1"], "--formula"),
        (["fit", "--formula", "y ~ x1", "--cut", "0,half,1"], "--cut"),
    ],
)
def test_invalid_controls_name_their_flag(argv, flag, step_csv, capsys):
    assert run([*argv, "--data", step_csv]) == EXIT_USAGE
    assert flag in capsys.readouterr().err


def test_unknown_flag_and_missing_command(capsys):
    assert run(["fit", "--data", "x.csv", "--bogus"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_help_lists_every_flag(capsys):
    assert run(["render", "--help"]) == EXIT_OK
    text = capsys.readouterr().out
    for flag in (
        "--data", "--tree", "--formula", "--out", "--alpha", "--mincriterion", "--minbucket", "--minsplit",
        "--maxdepth", "--cut", "--cut-breaks", "--color-type", "--bar-alpha", "--text-title", "--text-axis",
        "--text-main", "--text-label", "--text-bar", "--text-percentile", "--text-round", "--interval",
        "--density-line", "--no-density-line", "--add-h-axis", "--add-p-axis", "--width", "--height", "--verbose",
    ):
        assert flag in text, flag


def test_missing_data_file(tmp_path, capsys):
    code = run(["fit", "--data", str(tmp_path / "absent.csv"), "--formula", "y ~ x"])
    assert code == EXIT_FAILURE
    assert "file not found" in capsys.readouterr().err


def test_missing_tree_file(intake_csv, tmp_path, capsys):
    code = run(["render", "--tree", str(tmp_path / "absent.json"), "--data", intake_csv])
    assert code == EXIT_FAILURE
    assert capsys.readouterr().err.startswith("error: --tree")


def test_print_needs_a_source(capsys):
    assert run(["print"]) == EXIT_USAGE
