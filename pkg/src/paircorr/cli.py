"""Command-line front end.

Subcommands: generate, paircorr, analyze, spectrum, lemma1, experiment.
Exit status is 0 on success, 2 for invalid arguments or violated
preconditions, 1 for runtime failures (unreadable input, I/O errors).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import equidist, generators, harness, spectral
from .core import PointSet, dumps_points, format_float, load_points, max_threads, pair_correlation_curve

KINDS = (
    "kronecker",
    "quadratic_weyl",
    "general_weyl",
    "van_der_corput",
    "iid_uniform",
    "iid_density",
    "atom_mixture",
    "two_interval",
)
EXPERIMENTS = ("poissonian", "theorem1", "theorem2", "atom")


class UsageError(Exception):
    """Bad arguments; exit status 2."""


class InputError(Exception):
    """Unreadable or malformed input file; exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


@dataclass
class RunConfig:
    subcommand: str
    generator: dict[str, Any] = field(default_factory=dict)
    n: int | None = None
    s_grid: list[float] = field(default_factory=list)
    bins: list[int] = field(default_factory=list)
    output: str = "-"
    output_format: str = "csv"


def _add_generator_args(p: argparse.ArgumentParser, required_kind: bool) -> None:
    p.add_argument("--kind", choices=KINDS, required=required_kind)
    p.add_argument("--n", type=int, help="number of points")
    p.add_argument("--alpha", default=None, help="number or golden, sqrt2, e, pi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--multipliers", type=_ints, default=None, help="distinct positive integers, comma-separated")
    p.add_argument("--atom", type=float, default=0.3)
    p.add_argument("--weight", type=float, default=0.5)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--breakpoints", type=_floats, default=None)
    p.add_argument("--heights", type=_floats, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paircorr", description="Pair correlation and equidistribution diagnostics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a point set, one value per line")
    _add_generator_args(gen, required_kind=True)
    gen.add_argument("--out", default="-")

    pc = sub.add_parser("paircorr", help="F_N(s) over a grid of s")
    pc.add_argument("--in", dest="input", required=True)
    pc.add_argument("--s", type=_floats, action="extend", required=True, help="s values, repeatable or comma-separated")
    pc.add_argument("--format", choices=("csv", "json"), default="csv")
    pc.add_argument("--out", default="-")

    an = sub.add_parser("analyze", help="discrepancy, Weyl sums, l2 density, ECDF as JSON")
    an.add_argument("--in", dest="input", required=True)
    an.add_argument("--weyl-h", type=_ints, default=[1, 2, 3, 4, 5])
    an.add_argument("--bins", type=_ints, default=[10, 100, 1000])
    an.add_argument("--grid-size", type=int, default=11)
    an.add_argument("--out", default="-")

    sp = sub.add_parser("spectrum", help="Dirichlet or Fejer eigenvalues of the band circulant")
    sp.add_argument("--bins", type=int, required=True, help="matrix size M")
    sp.add_argument("--s", type=int, required=True, help="band order s, or S for --kind fejer")
    sp.add_argument("--kind", choices=("dirichlet", "fejer"), default="dirichlet")
    sp.add_argument("--out", default="-")

    lm = sub.add_parser("lemma1", help="averaged quadratic form against S N^2 / M")
    lm.add_argument("--in", dest="input", required=True)
    lm.add_argument("--bins", type=int, required=True)
    lm.add_argument("--cap-s", type=int, required=True)
    lm.add_argument("--out", default="-")

    ex = sub.add_parser("experiment", help="run an experiment pipeline")
    ex.add_argument("--name", choices=EXPERIMENTS, required=True)
    _add_generator_args(ex, required_kind=False)
    ex.add_argument("--n-list", type=_ints, default=None)
    ex.add_argument("--seeds", type=_ints, default=list(harness.DEFAULT_SEEDS))
    ex.add_argument("--s-grid", type=_floats, default=list(harness.DEFAULT_S_GRID))
    ex.add_argument("--format", choices=("csv", "json"), default="json")
    ex.add_argument("--out", default="-")
    return parser


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _density_spec(args) -> generators.DensitySpec:
    _require(args.breakpoints is not None and args.heights is not None, "--breakpoints and --heights are required")
    return generators.DensitySpec(tuple(args.breakpoints), tuple(args.heights))


def generate_points(args) -> PointSet:
    kind, n = args.kind, args.n
    if kind != "general_weyl":
        _require(n is not None and n >= 1, "--n must be a positive integer")
    if kind in ("kronecker", "quadratic_weyl", "general_weyl"):
        _require(args.alpha is not None, f"--alpha is required for {kind}")
        alpha = generators.resolve_alpha(args.alpha)
        if kind == "kronecker":
            return generators.kronecker(alpha, n)
        if kind == "quadratic_weyl":
            return generators.quadratic_weyl(alpha, n)
        _require(args.multipliers is not None, "--multipliers is required for general_weyl")
        return generators.general_weyl(args.multipliers, alpha)
    if kind == "van_der_corput":
        return generators.van_der_corput(args.base, n)
    if kind == "iid_uniform":
        return generators.iid_uniform(args.seed, n)
    if kind == "iid_density":
        return generators.iid_density(_density_spec(args), args.seed, n)
    if kind == "atom_mixture":
        return generators.atom_mixture(args.atom, args.weight, args.seed, n)
    _require(args.a is not None and args.b is not None, "--a and --b are required for two_interval")
    return generators.two_interval_sequence(args.a, args.b, n)


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename over it."""
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _load(path: str) -> PointSet:
    try:
        return load_points(path)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def cmd_generate(args) -> str:
    return dumps_points(generate_points(args))


def cmd_paircorr(args) -> str:
    grid = sorted(set(args.s))
    _require(all(s >= 0 for s in grid), "--s values must be nonnegative")
    ps = _load(args.input)
    curve = pair_correlation_curve(ps, grid)
    if args.format == "json":
        return _json({"n": curve.n, "samples": [{"s": s, "f_value": f} for s, f in curve.samples]})
    return _csv(["N", "s", "f_value"], [(curve.n, s, f) for s, f in curve.samples])


def analyze_payload(ps: PointSet, weyl_h: Sequence[int], bins: Sequence[int], grid_size: int) -> dict[str, Any]:
    est = equidist.estimate_distribution(ps, grid_size, max(bins))
    profile = equidist.l2_profile(ps, bins)
    payload = {
        "n": ps.n,
        "star_discrepancy": equidist.star_discrepancy(ps),
        "weyl": [{"h": h, "value": equidist.weyl_sum(ps, h)} for h in weyl_h],
        "l2_density": [
            {"bins": b, "value": v, "blowup": v > equidist.blowup_threshold(b, ps.n)} for b, v in profile
        ],
        "ecdf": [{"x": x, "g": g} for x, g in zip(est.grid, est.g_values)],
    }
    if len(profile) > 1:
        payload["l2_growth_slope"] = equidist.l2_growth_slope(profile)
        payload["blowup_suspected"] = equidist.blowup_suspected(profile)
    return payload


def cmd_analyze(args) -> str:
    _require(len(args.weyl_h) > 0 and all(h != 0 for h in args.weyl_h), "--weyl-h values must be nonzero")
    _require(len(args.bins) > 0 and all(b >= 1 for b in args.bins), "--bins values must be positive")
    _require(args.grid_size >= 2, "--grid-size must be at least 2")
    ps = _load(args.input)
    return _json(analyze_payload(ps, args.weyl_h, sorted(set(args.bins)), args.grid_size))


def cmd_spectrum(args) -> str:
    _require(args.bins >= 1, "--bins must be positive")
    _require(args.s >= 1, "--s must be positive")
    if args.kind == "fejer":
        _require(2 * args.s < args.bins, f"need 2S < M, got S = {args.s}, M = {args.bins}")
        report = spectral.fejer_spectrum(args.bins, args.s)
    else:
        report = spectral.dirichlet_spectrum(args.bins, args.s)
    return _csv(["m", "lambda"], [(m, float(v)) for m, v in enumerate(report.eigenvalues)])


def cmd_lemma1(args) -> str:
    _require(args.bins >= 1 and args.cap_s >= 1, "--bins and --cap-s must be positive")
    _require(2 * args.cap_s < args.bins, f"need 2S < M, got S = {args.cap_s}, M = {args.bins}")
    ps = _load(args.input)
    bc = spectral.bin_counts(ps, args.bins)
    lhs = spectral.lemma1_average(bc, args.cap_s)
    bound = spectral.lemma1_bound(bc, args.cap_s)
    return _csv(["M", "S", "lhs", "bound", "slack"], [(args.bins, args.cap_s, lhs, bound, lhs - bound)])


def cmd_experiment(args) -> str:
    name = args.name
    if name == "poissonian":
        if args.kind is None:
            _require(args.n is not None and args.n >= 1, "--n must be a positive integer")
            report = harness.run_poissonian_seeds(args.n, args.seeds, args.s_grid)
        else:
            report = harness.run_poissonian_check(generate_points(args), args.s_grid)
    elif name == "theorem1":
        _require(args.a is not None and args.b is not None, "--a and --b are required")
        _require(args.a != args.b, "theorem1 needs a != b")
        n_list = args.n_list or ([args.n] if args.n else [10**3, 10**4, 10**5])
        report = harness.run_theorem1_contrapositive(args.a, args.b, n_list, args.s_grid)
    elif name == "theorem2":
        _require(args.n is not None and args.n >= 1, "--n must be a positive integer")
        report = harness.run_theorem2_density(_density_spec(args), args.n, args.seeds, args.s_grid)
    else:
        n_list = args.n_list or [10**3, 10**4, 10**5]
        report = harness.run_theorem2_atom(args.atom, args.weight, n_list, args.seed)
    return report.to_json() if args.format == "json" else report.to_csv()


COMMANDS = {
    "generate": cmd_generate,
    "paircorr": cmd_paircorr,
    "analyze": cmd_analyze,
    "spectrum": cmd_spectrum,
    "lemma1": cmd_lemma1,
    "experiment": cmd_experiment,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        max_threads()
        text = COMMANDS[args.command](args)
        write_atomic(args.out, text)
    except UsageError as exc:
        print(f"paircorr: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"paircorr: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"paircorr: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"paircorr: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
