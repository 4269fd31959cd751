"""
Command line driver: fit, print and render subgroup trees

    fit     --data d.csv --formula "y ~ x1 + x2" [--out tree.json]
    print   --tree tree.json | --data d.csv --formula ...
    render  --tree tree.json --data d.csv --out fig.svg
            | --data d.csv --formula ... --out fig.svg

Exit status is 0 on success, 1 for usage errors and invalid options, 2 for
data and model errors. Failures print one line "error: <message>" to stderr.
"""
import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from src.app.CTree.controls import FitControls
from src.app.Viz.options import RenderOptions
from src.app.Viz.palette import PALETTE_NAMES
from src.app.errors import SubgroupTreeError, UsageError
from src.app.services.tree_service import TreeService, parse_number_list
from src.cli.formula import parse_formula

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

DEFAULT_WIDTH = 1200
DEFAULT_HEIGHT = 900

CONTROL_FLAGS = {
    "alpha": "--alpha",
    "mincriterion": "--mincriterion",
    "minbucket": "--minbucket",
    "minsplit": "--minsplit",
    "maxdepth": "--maxdepth",
}

OPTION_FLAGS = {
    "color_type": "--color-type",
    "alpha": "--bar-alpha",
    "text_title": "--text-title",
    "text_axis": "--text-axis",
    "text_main": "--text-main",
    "text_label": "--text-label",
    "text_bar": "--text-bar",
    "text_percentile": "--text-percentile",
    "text_round": "--text-round",
}

INPUT_FLAGS = {
    "formula": "--formula",
    "cut": "--cut",
    "cut_breaks": "--cut-breaks",
    "tree": "--tree",
    "data": "--data",
}


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message, "BAD_FLAG")


def _add_fit_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("fitting")
    group.add_argument("--formula", help='model formula, e.g. "kcal24h0 ~ hunger + liking"')
    group.add_argument("--alpha", type=float, help="significance level of the adjusted test (default 0.05)")
    group.add_argument("--mincriterion", type=float, help="1 - alpha; give either this or --alpha")
    group.add_argument("--minbucket", type=int, help="minimum rows per terminal node (default 7)")
    group.add_argument("--minsplit", type=int, help="minimum rows for a node to be split (default 20)")
    group.add_argument("--maxdepth", type=int, help="maximum tree depth (default unlimited)")
    group.add_argument(
        "--cut",
        metavar="P1,P2,...",
        help="discretize the outcome at these quantile probabilities (include 0 and 1 to cover every row)",
    )
    group.add_argument("--cut-breaks", metavar="B1,B2,...", help="discretize the outcome at these breakpoints")


def _add_render_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("rendering")
    names = ", ".join(f"{number} {name}" for number, name in PALETTE_NAMES.items())
    group.add_argument("--color-type", type=int, help=f"bar palette: {names} (default 1)")
    group.add_argument("--bar-alpha", type=float, help="opacity of the constraint bars (default 0.5)")
    group.add_argument("--text-title", type=float, help="scale of subplot titles (default 1.5)")
    group.add_argument("--text-axis", type=float, help="scale of axis titles (default 1.5)")
    group.add_argument("--text-main", type=float, help="scale of the figure heading (default 1.5)")
    group.add_argument("--text-label", type=float, help="scale of bin and tick labels (default 1.5)")
    group.add_argument("--text-bar", type=float, help="scale of constraint bar labels (default 1.5)")
    group.add_argument("--text-percentile", type=float, help="scale of percentile axis labels (default 0.7)")
    group.add_argument("--text-round", type=int, help="decimals in titles and labels (default 1)")
    group.add_argument(
        "--interval", action="store_true", default=None,
        help="print bin intervals, or class labels for a categorical outcome, instead of bin means",
    )
    group.add_argument(
        "--density-line", action=argparse.BooleanOptionalAction, default=None,
        help="draw the outcome density curve (default on)",
    )
    group.add_argument("--add-h-axis", action="store_true", default=None, help="draw the outcome axis")
    group.add_argument("--add-p-axis", action="store_true", default=None, help="draw the percentile axis")
    group.add_argument("--width", type=int, default=DEFAULT_WIDTH, help=f"canvas width in pixels (default {DEFAULT_WIDTH})")
    group.add_argument("--height", type=int, default=DEFAULT_HEIGHT, help=f"canvas height in pixels (default {DEFAULT_HEIGHT})")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="subgroup-tree",
        description="Fit conditional inference trees and draw their terminal-node subgroups",
    )
    commands = parser.add_subparsers(dest="command", metavar="{fit,print,render}", parser_class=ArgumentParser)
    commands.required = True

    fit = commands.add_parser("fit", help="fit a tree and write its interchange document")
    fit.add_argument("--data", required=True, help="CSV file with a header row")
    fit.add_argument("--out", help="output JSON file (default standard output)")
    _add_fit_flags(fit)

    show = commands.add_parser("print", help="list a tree as text")
    show.add_argument("--tree", help="tree interchange document")
    show.add_argument("--data", help="CSV file, to fit the tree on the spot")
    _add_fit_flags(show)

    render = commands.add_parser("render", help="draw every terminal subgroup of a tree as SVG")
    render.add_argument("--tree", help="tree interchange document; fitted from --data when omitted")
    render.add_argument("--data", required=True, help="CSV file holding the outcome and covariates")
    render.add_argument("--out", help="output SVG file (default standard output)")
    _add_fit_flags(render)
    _add_render_flags(render)

    for sub in (fit, show, render):
        sub.add_argument("--verbose", action="store_true", help="print progress to standard error")
    return parser


def _flag_error(exc: SubgroupTreeError, flags: Dict[str, str]) -> UsageError:
    flag = flags.get(exc.field or "", None)
    message = f"{flag}: {exc.message}" if flag else exc.message
    return UsageError(message, exc.code, exc.field)


def _controls(args: argparse.Namespace) -> FitControls:
    try:
        return FitControls.create(
            alpha=args.alpha,
            mincriterion=args.mincriterion,
            minbucket=args.minbucket,
            minsplit=args.minsplit,
            maxdepth=args.maxdepth,
        )
    except SubgroupTreeError as exc:
        raise _flag_error(exc, CONTROL_FLAGS)


def _options(args: argparse.Namespace) -> RenderOptions:
    try:
        return RenderOptions.create(
            color_type=args.color_type,
            alpha=args.bar_alpha,
            text_title=args.text_title,
            text_axis=args.text_axis,
            text_main=args.text_main,
            text_label=args.text_label,
            text_bar=args.text_bar,
            text_percentile=args.text_percentile,
            text_round=args.text_round,
            interval_mode=args.interval,
            density_line=args.density_line,
            add_h_axis=args.add_h_axis,
            add_p_axis=args.add_p_axis,
        )
    except SubgroupTreeError as exc:
        raise _flag_error(exc, OPTION_FLAGS)


def _fit_arguments(args: argparse.Namespace) -> Dict[str, Any]:
    """Everything a fit needs, validated before any file is read"""
    if not args.formula:
        raise UsageError("--formula is required to fit a tree", "BAD_FLAG", "formula")
    if args.cut and args.cut_breaks:
        raise UsageError("give either --cut or --cut-breaks, not both", "BAD_FLAG", "cut")
    try:
        outcome, covariates = parse_formula(args.formula)
        cut = parse_number_list(args.cut, "cut") if args.cut else None
        cut_breaks = parse_number_list(args.cut_breaks, "cut_breaks") if args.cut_breaks else None
    except UsageError as exc:
        raise _flag_error(exc, INPUT_FLAGS)
    return {
        "data_path": args.data,
        "outcome": outcome,
        "covariates": covariates,
        "controls": _controls(args),
        "cut": cut,
        "cut_breaks": cut_breaks,
    }


def _cuts(args: argparse.Namespace) -> Dict[str, Optional[List[float]]]:
    if args.cut and args.cut_breaks:
        raise UsageError("give either --cut or --cut-breaks, not both", "BAD_FLAG", "cut")
    try:
        return {
            "cut": parse_number_list(args.cut, "cut") if args.cut else None,
            "cut_breaks": parse_number_list(args.cut_breaks, "cut_breaks") if args.cut_breaks else None,
        }
    except UsageError as exc:
        raise _flag_error(exc, INPUT_FLAGS)


def _write(text: str, out: Optional[str], service: TreeService):
    if not out or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise SubgroupTreeError(f"cannot write {out}: {exc.strerror}", "WRITE_FAILED")
    service.log(f"✅ Wrote {out}")


def _checked(result: Dict[str, Any]) -> Any:
    if not result["success"]:
        raise SubgroupTreeError(result["message"], result["error"], result.get("field"))
    return result["data"]


def _run_fit(args: argparse.Namespace, service: TreeService):
    fitted = _checked(service.fit_tree(**_fit_arguments(args)))
    _write(fitted["json"], args.out, service)


def _run_print(args: argparse.Namespace, service: TreeService):
    if args.tree:
        source = args.tree
    elif args.data:
        source = _checked(service.fit_tree(**_fit_arguments(args)))["tree"]
    else:
        raise UsageError("print needs --tree, or --data with --formula", "BAD_FLAG", "tree")
    sys.stdout.write(_checked(service.describe_tree(source)))


def _run_render(args: argparse.Namespace, service: TreeService):
    options = _options(args)
    for flag, value in (("--width", args.width), ("--height", args.height)):
        if value <= 0:
            raise UsageError(f"{flag}: must be a positive number of pixels, got {value}", "BAD_FLAG")

    if args.tree:
        result = service.render_tree(args.tree, args.data, options, args.width, args.height, **_cuts(args))
    else:
        result = service.fit_and_render(options=options, width=args.width, height=args.height, **_fit_arguments(args))
    _write(_checked(result), args.out, service)


COMMANDS = {
    "fit": _run_fit,
    "print": _run_print,
    "render": _run_render,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one invocation and return its exit status
    """
    try:
        args = build_parser().parse_args(argv)
        service = TreeService(verbose=args.verbose)
        COMMANDS[args.command](args, service)
        return EXIT_OK
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except SubgroupTreeError as exc:
        message = exc.message
        if exc.field in INPUT_FLAGS and INPUT_FLAGS[exc.field] not in message:
            message = f"{INPUT_FLAGS[exc.field]}: {message}"
        print(f"error: {message}", file=sys.stderr)
        return EXIT_FAILURE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
