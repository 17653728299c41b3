"""Command-line entry point.

Subcommands: ``solve`` (radial profile file), ``spectrum`` (negative
eigenvalues + eigenfunction samples), ``morse`` (index and bounds), ``sweep``
(per-alpha CSV plus pass/fail summary).  Exit codes: 0 success, 2 bad usage
or parameters, 3 numeric failure, 4 at least one requested check failed
(rows are still written).  No randomness anywhere: identical flags produce
identical output data.

Worker count for sweeps comes from --jobs, falling back to the
HENON_LAB_JOBS environment variable, defaulting to 1.
"""

import argparse
import os
import sys
import time

import numpy as np

from . import morse, report_io, spectral, sweep
from .errors import HenonLabError, InvalidArgsError, SubcriticalError
from .params import ProblemParams
from .radial import SolverConfig, solve_lane_emden, solve_transformed

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_CHECK = 4


def _add_problem_flags(sub, with_m=True):
    sub.add_argument("--p", type=float, required=True, help="nonlinearity exponent (> 1)")
    sub.add_argument("--N", type=int, required=True, help="space dimension (>= 2)")
    sub.add_argument("--alpha", type=float, required=True, help="radial weight exponent")
    if with_m:
        sub.add_argument("--m", type=int, required=True, help="number of nodal sets (>= 1)")
    sub.add_argument("--rel-tol", type=float, default=SolverConfig.rel_tol)
    sub.add_argument("--abs-tol", type=float, default=SolverConfig.abs_tol)
    sub.add_argument("--out", type=str, default=None, help="output path")


def _add_mesh_flags(sub):
    sub.add_argument("--mesh-n", type=int, default=8000, help="bulk mesh resolution")
    sub.add_argument("--tmin", type=float, default=1e-8, help="mesh truncation at the origin")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="henonlab",
        description="Radial nodal profiles, singular spectra and Morse-index "
                    "bounds for the weighted superlinear problem on the unit ball.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("solve", help="solve one radial profile and write it to a file")
    _add_problem_flags(s)
    s.add_argument("--var", choices=("r", "t"), default="r", help="output variable")

    s = subs.add_parser("spectrum", help="negative eigenvalues of the singular linearization")
    _add_problem_flags(s)
    _add_mesh_flags(s)
    s.add_argument("--zero-potential", action="store_true",
                   help="diagnostic: drop the potential (no negative eigenvalues)")

    s = subs.add_parser("morse", help="Morse index and closed-form lower bounds")
    _add_problem_flags(s)
    _add_mesh_flags(s)
    s.add_argument("--theta", type=float, default=None,
                   help="margin (> 1) for the nodal-case bound; needs m >= 2")

    s = subs.add_parser("sweep", help="alpha sweep with convergence checks")
    s.add_argument("--p", type=float, default=3.0)
    s.add_argument("--N", type=int, default=3)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--alphas", type=str, default="10:320:geometric",
                   help="comma list '10,20,40' or doubling spec 'A:B:geometric'")
    s.add_argument("--R0", type=float, default=0.5)
    s.add_argument("--theta", type=float, default=1.1)
    s.add_argument("--checks", type=str, default=None,
                   help=f"comma list from {sorted(sweep.CHECKS)}")
    _add_mesh_flags(s)
    s.add_argument("--rel-tol", type=float, default=SolverConfig.rel_tol)
    s.add_argument("--abs-tol", type=float, default=SolverConfig.abs_tol)
    s.add_argument("--jobs", type=int, default=None, help="parallel rows (HENON_LAB_JOBS fallback)")
    s.add_argument("--out", type=str, default="sweep.csv")
    return parser


def parse_alphas(spec: str) -> tuple:
    spec = spec.strip()
    if spec.endswith(":geometric"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise InvalidArgsError(f"malformed geometric alpha spec: {spec!r}")
        lo, hi = float(parts[0]), float(parts[1])
        return sweep.geometric_alphas(lo, hi)
    try:
        values = tuple(float(tok) for tok in spec.split(",") if tok.strip())
    except ValueError as exc:
        raise InvalidArgsError(f"malformed alpha list {spec!r}: {exc}") from None
    if not values:
        raise InvalidArgsError("empty alpha list")
    return values


def _solver_config(args):
    return SolverConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _params(args):
    params = ProblemParams(p=args.p, N=args.N, alpha=args.alpha, m=args.m)
    params.require_subcritical()
    return params


def cmd_solve(args) -> int:
    params = _params(args)
    config = _solver_config(args)
    t0 = time.perf_counter()
    if args.var == "t":
        profile = solve_transformed(params.M_alpha, params.p, params.m, config)
        profile.params = params
    else:
        from .radial import solve_henon_radial

        profile = solve_henon_radial(params, config)
    wall = time.perf_counter() - t0
    resolved = {
        "p": params.p, "N": params.N, "alpha": params.alpha, "m": params.m,
        "var": args.var, "rel_tol": config.rel_tol, "abs_tol": config.abs_tol,
        "t_seed": config.t_seed, "dense_nodes": config.dense_nodes,
        "grading_ratio": config.grading_ratio,
    }
    manifest = report_io.build_manifest("solve", resolved, wall)
    scalars, arrays = report_io.profile_payload(profile)
    out = args.out or f"profile_p{params.p:g}_N{params.N}_a{params.alpha:g}_m{params.m}.txt"
    report_io.write_report(out, "profile", manifest, scalars, arrays)
    print(f"wrote {out}: {params.m}-nodal profile, amplitude {profile.amplitude!r}")
    return EXIT_OK


def _spectrum_pieces(args, config):
    params = _params(args)
    profile = solve_transformed(params.M_alpha, params.p, params.m, config)
    profile.params = params
    mesh = spectral.GradedMesh.build(t_min=args.tmin, n=args.mesh_n,
                                     knots=tuple(profile.zeros[:-1]))
    return params, profile, mesh


def cmd_spectrum(args) -> int:
    config = _solver_config(args)
    t0 = time.perf_counter()
    params, profile, mesh = _spectrum_pieces(args, config)
    if args.zero_potential:
        pencil = spectral.assemble_pencil_potential(mesh, params.M_alpha, lambda t: np.zeros_like(t))
        result = spectral.negative_eigenvalues(pencil, params.m)
        lam_hat = ((params.alpha + 2.0) / 2.0) ** 2 * result.eigenvalues
        spec_res = spectral.SingularSpectrum(lam_hat, result.eigenvalues, params.alpha, result)
    else:
        spec_res = spectral.singular_spectrum_henon(params, profile, mesh)
    wall = time.perf_counter() - t0
    result = spec_res.result
    resolved = {
        "p": params.p, "N": params.N, "alpha": params.alpha, "m": params.m,
        "mesh_n": args.mesh_n, "tmin": args.tmin, "zero_potential": args.zero_potential,
        "rel_tol": config.rel_tol, "abs_tol": config.abs_tol,
    }
    manifest = report_io.build_manifest("spectrum", resolved, wall)
    scalars = {
        "found": result.found, "requested": result.requested,
        "dof": result.dof, "M": result.M,
    }
    arrays = {
        "lambda_small": spec_res.lambda_small,
        "lambda_hat": spec_res.lambda_hat,
        "mesh_nodes": result.mesh.nodes,
    }
    for i in range(result.found):
        arrays[f"eigenfunction_{i+1}"] = result.eigenfunctions[i]
    out = args.out or f"spectrum_p{params.p:g}_N{params.N}_a{params.alpha:g}_m{params.m}.txt"
    report_io.write_report(out, "spectrum", manifest, scalars, arrays)
    print(f"wrote {out}: {result.found} negative eigenvalue(s) "
          f"{[repr(float(x)) for x in spec_res.lambda_hat]}")
    return EXIT_OK


def cmd_morse(args) -> int:
    if args.theta is not None and args.m >= 2 and args.theta <= 1.0:
        raise InvalidArgsError("theta must exceed 1 for the m >= 2 bound")
    config = _solver_config(args)
    t0 = time.perf_counter()
    params, profile, mesh = _spectrum_pieces(args, config)
    spec_res = spectral.singular_spectrum_henon(params, profile, mesh)
    if spec_res.result.found < params.m:
        raise HenonLabError(
            f"expected {params.m} negative eigenvalues, found {spec_res.result.found}"
        )
    limit_curve = spectral.eigenvalue_curve_mu(params.p, params.m, [2.0], mesh, params.N, config)
    report = morse.morse_index(spec_res.lambda_hat, params.N, alpha=params.alpha)
    theta = args.theta
    if theta is not None and params.m < 2:
        print("warning: theta given but m < 2; the K bound is omitted", file=sys.stderr)
        theta = None
    morse.attach_bounds(report, limit_curve.lambda_limit, params.m, theta=theta)
    wall = time.perf_counter() - t0
    resolved = {
        "p": params.p, "N": params.N, "alpha": params.alpha, "m": params.m,
        "mesh_n": args.mesh_n, "tmin": args.tmin,
        "theta": "" if theta is None else theta,
        "rel_tol": config.rel_tol, "abs_tol": config.abs_tol,
    }
    manifest = report_io.build_manifest("morse", resolved, wall)
    scalars = {
        "total_index": report.total_index,
        "J": report.J, "bound_J": report.bound_J,
        "K": "" if report.K is None else report.K,
        "bound_K": "" if report.bound_K is None else report.bound_K,
        "degenerate_pairs": len(report.degenerate),
    }
    arrays = {
        "lambda_hat": report.lambda_hat,
        "lambda_limit": limit_curve.lambda_limit,
        "pair_i": np.array([q[0] for q in report.pairs], dtype=int),
        "pair_j": np.array([q[1] for q in report.pairs], dtype=int),
        "pair_mult": np.array([q[2] for q in report.pairs], dtype=int),
    }
    out = args.out or f"morse_p{params.p:g}_N{params.N}_a{params.alpha:g}_m{params.m}.txt"
    report_io.write_report(out, "morse", manifest, scalars, arrays)
    print(f"wrote {out}: total index {report.total_index}, "
          f"bounds J={report.bound_J}" + (f", K={report.bound_K}" if report.bound_K else ""))
    return EXIT_OK


def cmd_sweep(args) -> int:
    alphas = parse_alphas(args.alphas)
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("HENON_LAB_JOBS", "1"))
    config = sweep.SweepConfig(
        p=args.p, N=args.N, m=args.m, alphas=alphas, R0=args.R0, theta=args.theta,
        mesh_n=args.mesh_n, mesh_t_min=args.tmin,
        solver=SolverConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol),
        jobs=max(1, jobs),
    )
    check_names = None
    if args.checks is not None:
        check_names = tuple(tok.strip() for tok in args.checks.split(",") if tok.strip())
        unknown = [n for n in check_names if n not in sweep.CHECKS]
        if unknown:
            raise InvalidArgsError(f"unknown checks: {unknown}; known: {sorted(sweep.CHECKS)}")
    t0 = time.perf_counter()
    report = sweep.run_sweep(config)
    results = sweep.run_checks(report, check_names)
    wall = time.perf_counter() - t0
    resolved = {
        "p": config.p, "N": config.N, "m": config.m,
        "alphas": ",".join(f"{a:g}" for a in config.alphas),
        "R0": config.R0, "theta": config.theta,
        "mesh_n": config.mesh_n, "tmin": config.mesh_t_min,
        "rel_tol": config.solver.rel_tol, "abs_tol": config.solver.abs_tol,
        "checks": ",".join(r.name for r in results),
    }
    manifest = report_io.build_manifest("sweep", resolved, wall)
    report_io.write_sweep_csv(args.out, report, manifest)
    print(f"wrote {args.out} ({len(report.rows)} rows)")
    failed = 0
    for res in results:
        print(f"check {res.name}: {'PASS' if res.passed else 'FAIL'} - {res.summary}")
        failed += 0 if res.passed else 1
    if failed:
        print(f"{failed} check(s) failed", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "spectrum": cmd_spectrum,
        "morse": cmd_morse,
        "sweep": cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except (InvalidArgsError, SubcriticalError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HenonLabError as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
