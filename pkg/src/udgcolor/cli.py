"""``udgcolor`` command line.

Exit status is 0 on success, 1 when a validation fails and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io, lpbounds
from .coloring import (FractionalColoring, color_4omega, color_568, color_fractional,
                       color_greedy_baseline, palette_568, validate)
from .fourier import FourierConfig, measure_ratio
from .udg import build_graph, clique_number, disk_clique_number, structural_checks

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2
ALGOS = ("4omega", "fractional", "568", "baseline")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _omega_arg(text: str):
    if text == "auto":
        return text
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("omega must be 'auto' or a positive integer") from None
    if k < 1:
        raise argparse.ArgumentTypeError("omega must be >= 1")
    return k


def _resolve_omega(g, omega):
    return clique_number(g) if omega == "auto" else omega


def run_algorithm(g, algo: str, omega: int, seed: int, r: int = 20000, eps: float = 1e-4):
    """``(coloring, bound, trace)`` for one algorithm on one graph."""
    if algo == "4omega":
        c, trace = color_4omega(g, omega, seed=seed)
        return c, 4 * omega, trace
    if algo == "568":
        c, trace = color_568(g, omega, seed=seed)
        return c, palette_568(omega), trace
    if algo == "baseline":
        c, trace = color_greedy_baseline(g, seed=seed)
        return c, c.palette_size, trace
    if algo == "fractional":
        c = color_fractional(g, omega, r=r, eps=eps, seed=seed)
        return c, c.p / c.q, None
    raise ValueError(f"unknown algorithm {algo!r}")


def cmd_gen(args) -> int:
    fcfg = None
    if args.generator == "sinusoidal":
        fcfg = FourierConfig(args.k_periods, args.grid, args.weight)
    spec = io.InstanceSpec(args.generator, n=args.n, width=args.width, height=args.height,
                           seed=args.seed, step=args.step, path=args.input, fourier=fcfg)
    ps = spec.build()
    io.write_points(args.out, ps, comment=f"generator {spec.generator} seed {spec.seed}")
    print(f"wrote {len(ps)} sites (total weight {ps.total_weight}) to {args.out}")
    return EXIT_OK


def cmd_color(args) -> int:
    g = build_graph(io.read_points(args.points))
    omega = _resolve_omega(g, args.omega)
    c, bound, trace = run_algorithm(g, args.algo, omega, args.seed, args.r, args.eps)
    io.write_coloring(args.out, c)
    print(f"omega {omega}")
    if isinstance(c, FractionalColoring):
        print(f"p {c.p} q {c.q} ratio {c.ratio:.6f} per_omega {c.ratio / omega:.6f}")
    else:
        print(f"colors_used {c.n_colors} palette {c.palette_size}")
    if trace is not None:
        print(f"rounds {trace.rounds_executed}")
        if args.trace:
            Path(args.trace).write_text(trace.export())
    report = validate(g, c)
    print(f"valid {report.passed}")
    return EXIT_OK if report.passed else EXIT_INVALID


def cmd_check(args) -> int:
    g = build_graph(io.read_points(args.points))
    c = io.read_coloring(args.coloring, palette_size=args.palette)
    report = validate(g, c)
    if not report.passed:
        print(f"INVALID {report.message}")
        return EXIT_INVALID
    if isinstance(c, FractionalColoring):
        print(f"valid p {c.p} q {c.q} ratio {c.ratio:.6f}")
    else:
        print(f"valid colors_used {c.n_colors}")
    failed = False
    for rep in structural_checks(g):
        print(rep)
        failed |= not rep.passed
    return EXIT_INVALID if failed else EXIT_OK


def cmd_omega(args) -> int:
    g = build_graph(io.read_points(args.points))
    print(f"omega {clique_number(g)}")
    print(f"omega_D {disk_clique_number(g)}")
    return EXIT_OK


def cmd_lp_curves(args) -> int:
    p5, p4 = lpbounds.emit_curves(args.out)
    value, delta = lpbounds.pairwise_degree_bound()
    print(f"wrote {p5} {p4}")
    print(f"pairwise_bound {value:.4f} at delta {delta:.3f}")
    return EXIT_OK


def cmd_fourier(args) -> int:
    cfg = FourierConfig(args.k_periods, args.grid, args.weight, args.amplitude)
    report = measure_ratio(cfg)
    print("\n".join(report.lines()))
    if args.csv:
        rows = ["level,k_periods,grid,ratio"]
        for level in range(args.levels):
            f = 2 ** level
            rc = FourierConfig(cfg.k_periods, cfg.grid * f, cfg.weight_scale, cfg.amplitude)
            rows.append(f"{level},{rc.k_periods},{rc.grid},{measure_ratio(rc).ratio:.6f}")
        Path(args.csv).write_text("\n".join(rows) + "\n")
    return EXIT_OK


def _bench_one(task):
    algo, n, width, height, seed, omega, r, eps = task
    g = build_graph(io.uniform_box(n, width, height, seed))
    om = _resolve_omega(g, omega)
    c, bound, trace = run_algorithm(g, algo, om, seed, r, eps)
    used = c.ratio if isinstance(c, FractionalColoring) else c.n_colors
    rounds = trace.rounds_executed if trace is not None else 0
    return seed, om, used, bound, rounds, validate(g, c).passed


def cmd_bench(args) -> int:
    tasks = [(args.algo, args.n, args.width, args.height, args.seed + i, args.omega, args.r, args.eps)
             for i in range(args.runs)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    print(f"{'seed':>6} {'omega':>6} {'used':>10} {'bound':>10} {'rounds':>7} valid")
    for seed, om, used, bound, rounds, ok in rows:
        print(f"{seed:>6} {om:>6} {used:>10.4g} {bound:>10.4g} {rounds:>7} {ok}")
    used = np.array([r[2] for r in rows], dtype=float)
    print(f"mean_used {used.mean():.4f} all_valid {all(r[5] for r in rows)}")
    return EXIT_OK if all(r[5] for r in rows) else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="udgcolor", description="Unit-disk graph coloring experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="write a point file")
    s.add_argument("--generator", choices=io.GENERATORS, default="uniform-box")
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--width", type=float, default=10.0)
    s.add_argument("--height", type=float, default=10.0)
    s.add_argument("--step", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--input", help="source file for --generator file")
    s.add_argument("--k-periods", type=int, default=16)
    s.add_argument("--grid", type=int, default=512)
    s.add_argument("--weight", type=float, default=50.0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("color", help="color a point file")
    s.add_argument("points")
    s.add_argument("--algo", choices=ALGOS, required=True)
    s.add_argument("--omega", type=_omega_arg, default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--r", type=int, default=20000)
    s.add_argument("--eps", type=float, default=1e-4)
    s.add_argument("--out", required=True)
    s.add_argument("--trace", help="write the round trace here")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("check", help="validate a coloring and the structural bounds")
    s.add_argument("points")
    s.add_argument("--coloring", required=True)
    s.add_argument("--palette", type=int, help="palette size for integral colorings")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("omega", help="exact clique and disk clique numbers")
    s.add_argument("points")
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("lp-curves", help="write lp5.dat and lp4.dat")
    s.add_argument("--out", default="")
    s.set_defaults(func=cmd_lp_curves)

    s = sub.add_parser("fourier", help="sinusoidal construction ratio")
    s.add_argument("--k-periods", type=int, default=16)
    s.add_argument("--grid", type=int, default=512)
    s.add_argument("--weight", type=float, default=50.0)
    s.add_argument("--amplitude", type=float, default=1.0)
    s.add_argument("--csv", help="write (level, ratio) for grid refinements")
    s.add_argument("--levels", type=int, default=2)
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("bench", help="batch over seeds on uniform boxes")
    s.add_argument("--algo", choices=ALGOS, default="4omega")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--runs", type=int, default=5)
    s.add_argument("--n", type=int, default=500)
    s.add_argument("--width", type=float, default=30.0)
    s.add_argument("--height", type=float, default=30.0)
    s.add_argument("--omega", type=_omega_arg, default="auto")
    s.add_argument("--r", type=int, default=20000)
    s.add_argument("--eps", type=float, default=1e-4)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"udgcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
