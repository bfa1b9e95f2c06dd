"""Batch command-line frontend.

Subcommands operate on the text formats defined by the library (coefficient
grids, point sets, interpolation problems) and print deterministic reports:
for a fixed seed and inputs the output is byte-for-byte reproducible.

Exit codes: 0 on success, 1 when a verdict is negative (NOT_PD /
INCONCLUSIVE / INDEFINITE / FAIL), 2 on any parse, I/O, or math error.
Errors are reported as a single line starting with ``error:``.

Kernel labels follow the registry grammar::

    const:c=<real>
    cm_exp:a=<pos>,b=<pos>
    cm_pow:alpha=<nonneg>,beta=<nonneg>
    prod:f=<factor>,g=<factor>     factor := poly(c0,c1,...) | exp(a)
"""

import argparse
import sys

import numpy as np

from . import __version__
from .constructions import kernel_from_label
from .expansion import (
    PD_CERTIFIED,
    SchoenbergExpansion,
    certify_pd,
    coefficient_sum,
    dimension_walk,
    infinite_limit,
    synthesize,
)
from .interp import loo_error, nodal_residual, read_problem, solve
from .pd_oracle import NONNEG_DEFINITE, sample_points, test_dc_strict, test_pd, test_strict
from .quadrature import CHECK, analyze, read_grid, to_check_mode, to_hat_mode, write_grid


def _g(x: float) -> str:
    return f"{float(x):.12g}"


def _dim_text(m) -> str:
    return "inf" if m == float("inf") else str(int(m))


def cmd_analyze(args) -> int:
    kernel = kernel_from_label(args.kernel)
    grid = analyze(kernel, args.m, args.M, args.K, args.L, args.n_nodes)
    write_grid(grid, args.out)
    print(f"analyze kernel={kernel.label} m={args.m} M={args.M} K={args.K} L={args.L}")
    print(f"min_coefficient={_g(grid.values.min())} mode={grid.mode}")
    print(f"wrote {args.out}")
    return 0


def cmd_synth(args) -> int:
    grid = read_grid(args.grid)
    value = synthesize(SchoenbergExpansion(grid), args.t, args.s)
    print(f"value={value:.17g}")
    return 0


def cmd_certify(args) -> int:
    grid = read_grid(args.grid)
    result = certify_pd(SchoenbergExpansion(grid), args.tol)
    print(result.status)
    print(f"min_coefficient={_g(result.min_coefficient)} clamped={result.clamped_count} tol={_g(result.tolerance)}")
    if result.witness is not None:
        print(f"witness=({result.witness[0]},{result.witness[1]}) provenance={grid.provenance}")
    return 0 if result.status == PD_CERTIFIED else 1


def cmd_gram(args) -> int:
    kernel = kernel_from_label(args.kernel)
    points = sample_points(args.m, args.M, args.n, args.seed)
    report = test_pd(kernel, points, args.tol)
    print(report.verdict)
    print(f"min_eigenvalue={_g(report.min_eigenvalue)}")
    print(f"n={report.n} seed={args.seed} tol={_g(report.tolerance)} "
          f"symmetry_residual={_g(report.symmetry_residual)}")
    return 0 if report.verdict == NONNEG_DEFINITE else 1


def _run_strictness(args, tester) -> int:
    kernel = kernel_from_label(args.kernel)
    result = tester(kernel, args.m, args.M, args.n, args.trials, args.seed, args.tol)
    print("PASS" if result.passed else "FAIL")
    print(f"min_eigenvalue={_g(result.min_eigenvalue)}")
    line = f"n={args.n} trials={result.trials} seed={args.seed} tol={_g(args.tol)}"
    if not result.passed:
        line += f" witness_seed={result.witness_seed}"
    print(line)
    return 0 if result.passed else 1


def cmd_strict(args) -> int:
    return _run_strictness(args, test_strict)


def cmd_dcstrict(args) -> int:
    return _run_strictness(args, test_dc_strict)


def cmd_dimwalk(args) -> int:
    grid = read_grid(args.grid)
    walked = dimension_walk(SchoenbergExpansion(grid))
    write_grid(walked.grid, args.out)
    print(f"dimwalk m={_dim_text(grid.m)} -> {_dim_text(walked.m)} M={_dim_text(grid.M)} "
          f"K={grid.K} -> {walked.K}")
    print(f"wrote {args.out}")
    return 0


def cmd_limit(args) -> int:
    kernel = kernel_from_label(args.kernel)
    if args.m_max < 2 or args.m_max % 2:
        raise ValueError("--m-max must be a positive even integer")
    m_sequence = list(range(2, args.m_max + 1, 2))
    grid, increment = infinite_limit(kernel, args.M, args.K, args.L, m_sequence, args.n_nodes)
    write_grid(grid, args.out)
    seq_text = ",".join(str(m) for m in m_sequence)
    print(f"limit kernel={kernel.label} M={args.M} K={args.K} L={args.L} m_sequence={seq_text}")
    max_inc = float(np.max(increment)) if len(m_sequence) > 1 else float("nan")
    print(f"max_last_increment={_g(max_inc)}")
    print(f"coefficient_sum={_g(float(grid.values.sum()))}")
    print(f"wrote {args.out}")
    return 0


def cmd_interp(args) -> int:
    kernel = kernel_from_label(args.kernel)
    problem = read_problem(args.problem, kernel)
    interpolant = solve(problem, args.reg)
    print(f"interp kernel={kernel.label} n={problem.nodes.n}")
    print(f"regularization={_g(interpolant.regularization)}")
    print(f"condition_estimate={_g(interpolant.condition_estimate)}")
    print(f"max_residual={_g(nodal_residual(problem, interpolant))}")
    if args.loo:
        print(f"loo_error={_g(loo_error(problem))}")
    return 0


def cmd_table(args) -> int:
    kernel = kernel_from_label(args.kernel)
    grid = analyze(kernel, args.m, args.M, args.K, args.L, args.n_nodes)
    if args.mode == CHECK:
        grid = to_check_mode(grid)
    else:
        grid = to_hat_mode(grid)
    print(f"table kernel={kernel.label} m={args.m} M={args.M} mode={grid.mode}")
    width = 13
    header = "k\\l".rjust(6) + "".join(str(l).rjust(width) for l in range(grid.L + 1))
    print(header)
    for k in range(grid.K + 1):
        cells = "".join(f"{grid.values[k, l]:{width}.6g}" for l in range(grid.L + 1))
        print(str(k).rjust(6) + cells)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherepd",
        description="Expansions, certification, Gram testing, and interpolation "
                    "for isotropic kernels on products of spheres.",
    )
    parser.add_argument("--version", action="version", version=f"spherepd {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="expand a kernel into coefficients and write the grid")
    p.add_argument("--kernel", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--M", required=True, type=int)
    p.add_argument("--K", required=True, type=int)
    p.add_argument("--L", required=True, type=int)
    p.add_argument("--n-nodes", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="evaluate a grid's expansion at a point")
    p.add_argument("--grid", required=True)
    p.add_argument("--t", required=True, type=float)
    p.add_argument("--s", required=True, type=float)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("certify", help="certify nonnegativity of a coefficient grid")
    p.add_argument("--grid", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gram", help="eigenvalue test of a kernel Gram matrix at sampled points")
    p.add_argument("--kernel", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--M", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_gram)

    for name, help_text in (("strict", "randomized falsifier for strict PD of order n"),
                            ("dcstrict", "randomized falsifier for DC-strict PD of order n")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--kernel", required=True)
        p.add_argument("--m", required=True, type=int)
        p.add_argument("--M", required=True, type=int)
        p.add_argument("--n", required=True, type=int)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-10)
        p.set_defaults(func=cmd_strict if name == "strict" else cmd_dcstrict)

    p = sub.add_parser("dimwalk", help="walk a grid's first dimension from m to m+2")
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dimwalk)

    p = sub.add_parser("limit", help="estimate infinite-dimensional coefficients along even m")
    p.add_argument("--kernel", required=True)
    p.add_argument("--M", required=True, type=int)
    p.add_argument("--K", required=True, type=int)
    p.add_argument("--L", required=True, type=int)
    p.add_argument("--m-max", type=int, default=16)
    p.add_argument("--n-nodes", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("interp", help="solve an interpolation problem file")
    p.add_argument("--problem", required=True)
    p.add_argument("--kernel", required=True)
    p.add_argument("--reg", type=float, default=0.0)
    p.add_argument("--loo", action="store_true")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("table", help="print a kernel's coefficient table")
    p.add_argument("--kernel", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--M", required=True, type=int)
    p.add_argument("--K", required=True, type=int)
    p.add_argument("--L", required=True, type=int)
    p.add_argument("--n-nodes", type=int, default=None)
    p.add_argument("--mode", choices=["HAT", "CHECK"], default="CHECK")
    p.set_defaults(func=cmd_table)

    return parser


def run(argv) -> int:
    """Dispatch a command line; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
