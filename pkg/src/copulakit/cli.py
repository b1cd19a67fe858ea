"""``copulakit`` command line: sample, fit, measure, check and plot.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 the sample statistic could not be inverted for the family.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import __version__
from .copulas import (CopulaFamily, JointModel, check_copula_axioms, frechet_bounds_check,
                      parse_copula, quadrant_dependence)
from .dataio import format_pairs, read_pairs
from .dependence import kendall_tau, spearman_rho, tail_coefficients
from .empirical import rank_transform
from .errors import DomainError, EstimationRangeError
from .estimation import fit_moments_tau, fit_pseudolikelihood
from .margins import parse_margin
from .plotting import BLUE, DARK_GREEN, RED, PlotSpec, figure_svg, parse_color, scatter_svg
from .sampling import RandomSource, sample_copula, sample_joint

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_RANGE = 0, 1, 2, 3
DEFAULT_SEED = 12345

FIGURE_PANELS = (
    (CopulaFamily.clayton(2.88), BLUE),
    (CopulaFamily.gaussian(0.8), RED),
    (CopulaFamily.gumbel(2.44), DARK_GREEN),
)


class UsageError(Exception):
    pass


def _copula_arg(args):
    spec = args.copula_pos or args.copula
    if spec is None:
        raise UsageError("a copula spec is required (e.g. clayton:2.88)")
    if args.copula_pos and args.copula and args.copula_pos != args.copula:
        raise UsageError("copula given twice with different values")
    return parse_copula(spec)


def _margins_arg(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--margins needs two comma-separated margins, got {text!r}")
    return parse_margin(parts[0]), parse_margin(parts[1])


def _write_text(path, text, out):
    if path in (None, "-"):
        out.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_sample(args, out):
    copula = _copula_arg(args)
    rng = RandomSource(args.seed)
    if args.margins:
        mx, my = _margins_arg(args.margins)
        data = sample_joint(rng, JointModel(copula, mx, my), args.n)
        header = ("x", "y")
    else:
        data = sample_copula(rng, copula, args.n)
        header = ("u", "v")
    _write_text(args.output, format_pairs(data, header), out)
    return EXIT_OK


def cmd_fit(args, out):
    try:
        _, data = read_pairs(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    if len(data) < 2:
        raise UsageError(f"{args.input}: need at least 2 numeric rows, found {len(data)}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rs = rank_transform(data)
        if args.method == "mom":
            fit = fit_moments_tau(rs, args.family)
        else:
            fit = fit_pseudolikelihood(rs, args.family)
    report = fit.as_dict()
    out.write(f"family     {report['family']}\n")
    out.write(f"method     {report['method']}\n")
    out.write(f"n          {rs.n}\n")
    out.write(f"tau_hat    {report['tau_hat']:.6f}\n")
    out.write(f"estimate   {report['estimate']:.6f}\n")
    if report["log_pseudolikelihood"] is not None:
        out.write(f"loglik     {report['log_pseudolikelihood']:.6f}\n")
    out.write(f"warnings   {'; '.join(report['warnings']) or 'none'}\n")
    out.write(json.dumps(report) + "\n")
    return EXIT_OK


def measures(copula: CopulaFamily) -> dict:
    tails = tail_coefficients(copula)
    return {
        "tau": kendall_tau(copula),
        "rho_S": spearman_rho(copula),
        "lambda_L": tails.lambda_lower,
        "lambda_U": tails.lambda_upper,
    }


def cmd_measure(args, out):
    copula = _copula_arg(args)
    out.write(f"copula     {copula}\n")
    for key, value in measures(copula).items():
        out.write(f"{key:<10} {value:.6f}\n")
    return EXIT_OK


def cmd_check(args, out):
    copula = _copula_arg(args)
    axioms = check_copula_axioms(copula, args.grid)
    bounds = frechet_bounds_check(copula, args.grid)
    quadrant = quadrant_dependence(copula, args.grid)
    bounds_ok = bounds <= 1e-12
    status = lambda ok: "pass" if ok else "FAIL"
    out.write(f"copula          {copula}  (grid {args.grid}x{args.grid})\n")
    out.write(f"grounded        {status(axioms.grounded)}  worst {axioms.grounded_error:.3e}\n")
    out.write(f"uniform margins {status(axioms.uniform_margins)}  worst {axioms.margin_error:.3e}\n")
    out.write(f"2-increasing    {status(axioms.two_increasing)}  min mass {axioms.worst_rectangle_mass:.3e}\n")
    out.write(f"frechet bounds  {status(bounds_ok)}  worst violation {max(bounds, 0.0):.3e}\n")
    out.write(f"quadrant        {quadrant.kind}  min(C-uv) {quadrant.min_gap:.6f}  "
              f"max(C-uv) {quadrant.max_gap:.6f}\n")
    return EXIT_OK if axioms.passed and bounds_ok else EXIT_CHECK_FAILED


def _plot_points(data, header):
    """Pseudo-observations to draw; raw (x, y) data are rank-transformed first."""
    if header is not None and tuple(h.lower() for h in header) == ("u", "v") \
            and ((data > 0) & (data < 1)).all():
        return data
    if len(data) == 0:
        return data
    if len(data) == 1:
        return data * 0 + 0.5
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return rank_transform(data).pseudo


def cmd_plot(args, out):
    size = args.size
    if args.figure_481:
        panels = []
        for copula, color in FIGURE_PANELS:
            pts = sample_copula(RandomSource(args.seed), copula, args.n)
            panels.append((pts, PlotSpec(title=copula.title, point_color=color, width=size, height=size)))
        caption = f"Pseudo-observations, n = {args.n}, seed = {args.seed}"
        _write_text(args.output, figure_svg(panels, caption=caption), out)
        return EXIT_OK
    color = parse_color(args.color) if args.color else BLUE
    if args.input:
        try:
            header, data = read_pairs(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        pts = _plot_points(data, header)
        title = args.title if args.title is not None else "Pseudo-observations"
    else:
        copula = _copula_arg(args)
        pts = sample_copula(RandomSource(args.seed), copula, args.n)
        title = args.title if args.title is not None else copula.title
    spec = PlotSpec(title=title, point_color=color, width=size, height=size)
    _write_text(args.output, scatter_svg(pts, spec), out)
    return EXIT_OK


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copulakit", description="Bivariate copula toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def copula_options(p, positional=True):
        if positional:
            p.add_argument("copula_pos", nargs="?", metavar="COPULA",
                           help="indep, w, m, clayton:<theta>, gumbel:<theta> or gauss:<rho>")
        p.add_argument("--copula", help="copula spec (alternative to the positional form)")

    p = sub.add_parser("sample", help="draw a seeded sample and write CSV")
    copula_options(p)
    p.add_argument("--margins", help="two margins, e.g. exp:1,stdnormal")
    p.add_argument("-n", type=_positive_int, default=5000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("-o", "--output", help="output CSV (default: stdout)")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("fit", help="estimate a copula parameter from CSV data")
    p.add_argument("input", help="CSV file with two numeric columns")
    p.add_argument("--family", required=True, choices=["clayton", "gumbel", "gauss"])
    p.add_argument("--method", choices=["mom", "mpl"], default="mom")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("measure", help="report tau, rho_S and tail coefficients")
    copula_options(p)
    p.set_defaults(handler=cmd_measure)

    p = sub.add_parser("check", help="check copula axioms, Frechet bounds and PQD")
    copula_options(p)
    p.add_argument("--grid", type=int, default=51)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("plot", help="SVG scatterplot of pseudo-observations")
    p.add_argument("input", nargs="?", help="CSV to plot (raw data are rank-transformed)")
    copula_options(p, positional=False)
    p.add_argument("-n", type=_positive_int, default=5000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--figure-481", action="store_true",
                   help="three panels: Clayton 2.88, Gaussian 0.8, Gumbel 2.44")
    p.add_argument("--title")
    p.add_argument("--color", help="marker colour, #rrggbb or r,g,b")
    p.add_argument("--size", type=int, default=350, help="panel width and height in pixels")
    p.set_defaults(handler=cmd_plot, copula_pos=None)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "grid", 2) < 2:
        print("copulakit: error: --grid must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args, out)
    except EstimationRangeError as exc:
        print(f"copulakit: estimation error: {exc}", file=sys.stderr)
        if exc.tau_hat is not None:
            out.write(json.dumps({"error": "range", "tau_hat": exc.tau_hat}) + "\n")
        return EXIT_RANGE
    except (UsageError, DomainError) as exc:
        print(f"copulakit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point():
    sys.exit(main())
