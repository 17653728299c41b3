"""Weight-exponent sweeps and the convergence/monotonicity diagnostics.

One sweep row per alpha, each computed independently (and optionally in a
process pool): profile gaps against the planar limit, zero locations and
their concentration rate, the interior plateau gap, rescaled extrema, the
negative spectrum in both normalizations, Morse index and its closed-form
bounds, energy level, exact-identity residuals, and (for positive solutions)
the scaled best embedding constant.  Limit objects (the planar profile, its
negative eigenvalues, the planar best constant, the eigenvalue-branch
derivative at M = 2) are computed once and shared read-only.

Convergence checks are trend based: a sequence "converges" when it decreases
monotonically after discarding at most the first row and its last value is
below the named threshold — the asymptotic statements carry no rates, so
single-point comparisons are never used.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import energy, morse, spectral, transforms
from .errors import HenonLabError, InvalidArgsError
from .params import ProblemParams, critical_alpha
from .radial import SolverConfig, ode_residual_sup, solve_lane_emden, solve_transformed

COMPARISON_GRID = np.linspace(0.0, 1.0, 4001)

CHECK_THRESHOLDS = {
    "profile_limit_value": 1e-2,
    "profile_limit_deriv": 5e-2,
    "zero_rate": 5e-2,
    "plateau": 1e-2,
    "extrema_ratio": 10.0,
    "nehari": 1e-6,
    "gradient_identity": 1e-8,
    "ode_residual": 1e-6,
    "eigen_limit": 5e-2,
    "fit_quad_rel": 0.05,
    "fit_lin_rel": 0.15,
    "best_constant": 0.02,
}


@dataclass(frozen=True)
class SweepConfig:
    p: float = 3.0
    N: int = 3
    m: int = 2
    alphas: tuple = (10.0, 20.0, 40.0, 80.0, 160.0, 320.0)
    R0: float = 0.5
    theta: float = 1.1
    mesh_n: int = 8000
    mesh_t_min: float = 1e-8
    mesh_grading: float = 1.05
    solver: SolverConfig = SolverConfig()
    checks: tuple = ()
    jobs: int = 1

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        if list(alphas) != sorted(alphas) or len(set(alphas)) != len(alphas):
            raise InvalidArgsError("alphas must be strictly increasing")
        a_p = critical_alpha(self.p, self.N)
        if alphas and alphas[0] <= a_p:
            raise InvalidArgsError(f"all alphas must exceed alpha_p={a_p}")
        if not 0.0 < self.R0 < 1.0:
            raise InvalidArgsError("R0 must lie in (0, 1)")
        object.__setattr__(self, "alphas", alphas)


def geometric_alphas(lo: float, hi: float, ratio: float = 2.0) -> tuple:
    """Doubling (by default) ladder from lo while <= hi."""
    if lo <= 0 or hi < lo or ratio <= 1.0:
        raise InvalidArgsError("need 0 < lo <= hi and ratio > 1")
    out = [lo]
    while out[-1] * ratio <= hi * (1.0 + 1e-12):
        out.append(out[-1] * ratio)
    return tuple(out)


@dataclass
class SweepReport:
    config: SweepConfig
    limit: dict
    rows: list

    def column(self, key):
        return np.array([row[key] for row in self.rows])

    def ok_rows(self):
        return [row for row in self.rows if not row.get("error")]


@dataclass
class CheckResult:
    name: str
    passed: bool
    summary: str
    data: dict = field(default_factory=dict)


def compute_limit_objects(config: SweepConfig) -> dict:
    """Planar limit profile, its negative spectrum, branch derivative at
    M = 2, and (m = 1) the planar best constant.  Shared by all rows."""
    w = solve_lane_emden(config.p, config.m, config.solver)
    mesh = spectral.GradedMesh.build(
        t_min=config.mesh_t_min,
        n=config.mesh_n,
        grading=config.mesh_grading,
        knots=tuple(w.zeros[:-1]),
    )
    curve = spectral.eigenvalue_curve_mu(
        config.p, config.m, [2.0], mesh, config.N, config.solver
    )
    limit = {
        "w_values": w.value(COMPARISON_GRID),
        "w_derivs": w.deriv(COMPARISON_GRID),
        "w_zeros": w.zeros.copy(),
        "w_amplitude": w.amplitude,
        "lambda_limit": curve.lambda_limit.copy(),
        "mu_prime_2": curve.mu_prime_2.copy(),
        "c": curve.c.copy(),
    }
    if config.m == 1:
        s_planar = energy.best_constant_2d(config.p, w)
        limit["S_planar"] = s_planar
        limit["constant_target"] = energy.limit_constant_target(config.p, config.N, s_planar)
    return limit


def compute_row(config: SweepConfig, alpha: float, limit: dict) -> dict:
    """All diagnostics at one alpha; returns a plain dict of scalars."""
    p, N, m = config.p, config.N, config.m
    params = ProblemParams(p=p, N=N, alpha=alpha, m=m)
    row = {"alpha": alpha, "M": params.M_alpha, "error": ""}
    v = solve_transformed(params.M_alpha, p, m, config.solver)
    v.params = params
    rmap = transforms.RescaleMap(alpha, p)
    u = transforms.rescale_v_to_u(v, rmap, N)

    row["amplitude_v"] = v.amplitude
    row["gap_v"] = float(np.max(np.abs(v.value(COMPARISON_GRID) - limit["w_values"])))
    row["gap_dv"] = float(np.max(np.abs(v.deriv(COMPARISON_GRID) - limit["w_derivs"])))

    r_zeros = transforms.unmap_zeros(v.zeros, alpha)
    for i in range(m):
        row[f"r_zero_{i+1}"] = float(r_zeros[i])
        row[f"t_zero_{i+1}"] = float(v.zeros[i])
        row[f"zero_diag_{i+1}"] = abs(
            alpha * (1.0 - r_zeros[i]) + 2.0 * math.log(limit["w_zeros"][i])
        )

    rr = np.linspace(0.0, config.R0, 1001)
    row["plateau_gap"] = float(
        np.max(np.abs(v.value(rr ** rmap.exponent) - limit["w_amplitude"]))
    )

    scaled_ext = transforms.scaled_extrema(u, rmap)
    for i in range(m):
        row[f"n_scaled_{i+1}"] = float(scaled_ext[i])

    mesh = spectral.GradedMesh.build(
        t_min=config.mesh_t_min,
        n=config.mesh_n,
        grading=config.mesh_grading,
        knots=tuple(v.zeros[:-1]),
    )
    spec = spectral.singular_spectrum_henon(params, v, mesh)
    if spec.result.found < m:
        row["error"] = f"found {spec.result.found} negative eigenvalues, expected {m}"
        return row
    for i in range(m):
        row[f"lam_{i+1}"] = float(spec.lambda_small[i])
        row[f"lam_hat_{i+1}"] = float(spec.lambda_hat[i])
        row[f"lam_hat_over_a2_{i+1}"] = float(spec.lambda_hat[i] / alpha**2)
        row[f"eigen_gap_{i+1}"] = abs(float(spec.lambda_small[i]) - limit["lambda_limit"][i])

    if N >= 3:
        report = morse.morse_index(spec.lambda_hat, N, alpha=alpha)
        morse.attach_bounds(
            report, limit["lambda_limit"], m, theta=config.theta if m >= 2 else None
        )
        row["morse_total"] = report.total_index
        row["J"] = report.J
        row["bound_J"] = report.bound_J
        row["K"] = report.K if report.K is not None else ""
        row["bound_K"] = report.bound_K if report.bound_K is not None else ""
    else:
        row["morse_total"] = ""
        row["J"] = row["bound_J"] = row["K"] = row["bound_K"] = ""

    eb = energy.energy_breakdown(u)
    row["level_C"] = eb.level
    row["nehari_resid"] = eb.nehari_residual
    row["grad_resid"] = transforms.gradient_identity_residual(u, v, rmap)
    row["ode_resid"] = ode_residual_sup(v)

    if m == 1:
        s_rad = energy.best_constant_radial(params, u)
        scaled = energy.scaled_best_constant(params, s_rad)
        row["best_scaled"] = scaled
        row["best_gap"] = abs(scaled - limit["constant_target"]) / limit["constant_target"]
    else:
        row["best_scaled"] = ""
        row["best_gap"] = ""
    return row


def _row_worker(args):
    config, alpha, limit = args
    try:
        return compute_row(config, alpha, limit)
    except HenonLabError as exc:  # row errors are recorded, never fatal
        return {"alpha": alpha, "error": f"{type(exc).__name__}: {exc}"}


def run_sweep(config: SweepConfig) -> SweepReport:
    """One row per alpha; limit objects computed once; rows ordered by alpha."""
    limit = compute_limit_objects(config)
    tasks = [(config, alpha, limit) for alpha in config.alphas]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_row_worker, tasks))
    else:
        rows = [_row_worker(t) for t in tasks]
    return SweepReport(config=config, limit=limit, rows=rows)


# ---------------------------------------------------------------------------
# trend helpers and named checks


def decreases_after_burn_in(seq) -> bool:
    """Strictly decreasing after discarding at most the first entry."""
    s = list(seq)
    strict = lambda q: all(b < a for a, b in zip(q, q[1:]))
    return strict(s) or (len(s) > 2 and strict(s[1:]))


def _trend_check(name, seq, threshold):
    if len(seq) < 2:
        return CheckResult(name, False, "insufficient rows for a trend check")
    dec = decreases_after_burn_in(seq)
    final = seq[-1]
    ok = dec and final < threshold
    return CheckResult(
        name,
        ok,
        f"decreasing={dec}, final={final:.6g} vs threshold {threshold:g}",
        {"sequence": list(seq), "final": final, "threshold": threshold},
    )


def check_profile_limit(report: SweepReport) -> CheckResult:
    rows = report.ok_rows()
    a = _trend_check("profile_limit", [r["gap_v"] for r in rows],
                     CHECK_THRESHOLDS["profile_limit_value"])
    b = _trend_check("profile_limit", [r["gap_dv"] for r in rows],
                     CHECK_THRESHOLDS["profile_limit_deriv"])
    return CheckResult(
        "profile_limit",
        a.passed and b.passed,
        f"values: {a.summary}; derivatives: {b.summary}",
        {"value": a.data, "deriv": b.data},
    )


def check_zero_rate(report: SweepReport) -> CheckResult:
    rows = report.ok_rows()
    if report.config.m == 1:
        return CheckResult("zero_rate", True, "m=1: the only zero sits at 1, rate is identically 0")
    return _trend_check("zero_rate", [r["zero_diag_1"] for r in rows], CHECK_THRESHOLDS["zero_rate"])


def check_plateau(report: SweepReport) -> CheckResult:
    return _trend_check(
        "plateau", [r["plateau_gap"] for r in report.ok_rows()], CHECK_THRESHOLDS["plateau"]
    )


def check_extrema_rate(report: SweepReport) -> CheckResult:
    """Rescaled extrema stay in a positive envelope of ratio < 10 and decrease
    strictly across nodal sets within each row."""
    rows = report.ok_rows()
    m = report.config.m
    values = np.array([[r[f"n_scaled_{i+1}"] for i in range(m)] for r in rows])
    env_lo, env_hi = float(values.min()), float(values.max())
    ratio = env_hi / env_lo if env_lo > 0 else math.inf
    per_row_dec = all(
        all(row[i + 1] < row[i] for i in range(m - 1)) for row in values
    )
    ok = env_lo > 0.0 and ratio < CHECK_THRESHOLDS["extrema_ratio"] and per_row_dec
    return CheckResult(
        "extrema_envelope",
        ok,
        f"envelope=[{env_lo:.4g}, {env_hi:.4g}], ratio={ratio:.3g}, row-decreasing={per_row_dec}",
        {"envelope": (env_lo, env_hi), "ratio": ratio},
    )


def check_identities(report: SweepReport) -> CheckResult:
    rows = report.ok_rows()
    worst = {
        "nehari": max(r["nehari_resid"] for r in rows),
        "gradient_identity": max(r["grad_resid"] for r in rows),
        "ode_residual": max(r["ode_resid"] for r in rows),
    }
    ok = all(worst[k] < CHECK_THRESHOLDS[k] for k in worst)
    return CheckResult(
        "identities",
        ok,
        ", ".join(f"{k}={worst[k]:.3g} (<{CHECK_THRESHOLDS[k]:g})" for k in worst),
        worst,
    )


def check_eigen_limit(report: SweepReport) -> CheckResult:
    rows = report.ok_rows()
    m = report.config.m
    results = []
    for i in range(m):
        results.append(_trend_check(
            "eigen_limit", [r[f"eigen_gap_{i+1}"] for r in rows], CHECK_THRESHOLDS["eigen_limit"]
        ))
    ok = all(r.passed for r in results)
    return CheckResult(
        "eigen_limit", ok, "; ".join(f"i={i+1}: {r.summary}" for i, r in enumerate(results))
    )


def fit_expansion(report: SweepReport, i: int):
    """Least-squares quadratic fit of Lam_hat_i over the largest half of the
    sweep; returns (quad_coeff, lin_coeff)."""
    rows = [r for r in report.ok_rows() if f"lam_hat_{i}" in r]
    if len(rows) < 4:
        raise InvalidArgsError("fit needs at least 4 rows with eigenvalues")
    half = rows[len(rows) // 2:] if len(rows) // 2 >= 3 else rows[-3:]
    alphas = np.array([r["alpha"] for r in half])
    if alphas.max() < 2.0 * alphas.min():
        raise InvalidArgsError("fit range must span at least one doubling of alpha")
    y = np.array([r[f"lam_hat_{i}"] for r in half])
    scale = alphas.max()
    design = np.column_stack([(alphas / scale) ** 2, alphas / scale, np.ones_like(alphas)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return coef[0] / scale**2, coef[1] / scale


def check_expansion_fit(report: SweepReport) -> CheckResult:
    m = report.config.m
    lam = report.limit["lambda_limit"]
    c = report.limit["c"]
    details = []
    ok = True
    for i in range(1, m + 1):
        quad, lin = fit_expansion(report, i)
        quad_rel = abs(quad - lam[i - 1] / 4.0) / abs(lam[i - 1] / 4.0)
        lin_rel = abs(lin - c[i - 1]) / abs(c[i - 1])
        ok = ok and quad_rel <= CHECK_THRESHOLDS["fit_quad_rel"] and lin_rel <= CHECK_THRESHOLDS["fit_lin_rel"]
        details.append(
            f"i={i}: quad={quad:.6g} vs {lam[i-1]/4.0:.6g} ({quad_rel:.2%}), "
            f"lin={lin:.6g} vs {c[i-1]:.6g} ({lin_rel:.2%})"
        )
    return CheckResult("expansion_fit", ok, "; ".join(details))


def check_morse_bounds(report: SweepReport) -> CheckResult:
    """Index >= both closed-form bounds on the top three rows.  The onset
    thresholds are not constructive, so failures are reported with values,
    never silently discarded."""
    rows = [r for r in report.ok_rows() if r.get("morse_total") != ""]
    if len(rows) < 3:
        return CheckResult("morse_bounds", False, "insufficient rows with Morse data")
    top = rows[-3:]
    ok = True
    details = []
    for r in top:
        good_j = r["morse_total"] >= r["bound_J"]
        good_k = True if r["bound_K"] == "" else r["morse_total"] >= r["bound_K"]
        ok = ok and good_j and good_k
        details.append(
            f"alpha={r['alpha']:g}: total={r['morse_total']} vs J-bound={r['bound_J']}"
            + (f", K-bound={r['bound_K']}" if r["bound_K"] != "" else "")
        )
    return CheckResult("morse_bounds", ok, "; ".join(details))


def monotonicity_report(report: SweepReport) -> dict:
    """Empirical onset of index monotonicity and eigenvalue decrease.

    Returns flags plus the first alpha beyond which the Morse index never
    decreases and the first alpha beyond which every Lam_hat_i strictly
    decreases; "no strict decrease detected" marks degenerate inputs.
    """
    rows = [r for r in report.ok_rows() if r.get("morse_total") != ""]
    out = {"morse_onset_alpha": None, "lam_hat_onset_alpha": None,
           "level_strictly_increasing": False, "flags": []}
    levels = [r["level_C"] for r in report.ok_rows()]
    out["level_strictly_increasing"] = all(b > a for a, b in zip(levels, levels[1:]))
    if not rows:
        out["flags"].append("no Morse data")
        return out
    totals = [r["morse_total"] for r in rows]
    for k in range(len(totals)):
        if all(b >= a for a, b in zip(totals[k:], totals[k + 1:])):
            out["morse_onset_alpha"] = rows[k]["alpha"]
            break
    m = report.config.m
    for k in range(len(rows)):
        tail = rows[k:]
        if len(tail) < 2:
            break
        dec = all(
            all(b[f"lam_hat_{i+1}"] < a[f"lam_hat_{i+1}"] for i in range(m))
            for a, b in zip(tail, tail[1:])
        )
        if dec:
            out["lam_hat_onset_alpha"] = rows[k]["alpha"]
            break
    if out["lam_hat_onset_alpha"] is None:
        out["flags"].append("no strict decrease detected")
    return out


def check_morse_monotone(report: SweepReport) -> CheckResult:
    """Tail monotonicity: index nondecreasing and Lam_hat_i strictly
    decreasing over the last half of the sweep."""
    rows = [r for r in report.ok_rows() if r.get("morse_total") != ""]
    if len(rows) < 2:
        return CheckResult("morse_monotone", False, "insufficient rows")
    tail = rows[-max(2, len(rows) // 2):]
    m = report.config.m
    nondec = all(b["morse_total"] >= a["morse_total"] for a, b in zip(tail, tail[1:]))
    dec = all(
        all(b[f"lam_hat_{i+1}"] < a[f"lam_hat_{i+1}"] for i in range(m))
        for a, b in zip(tail, tail[1:])
    )
    mono = monotonicity_report(report)
    return CheckResult(
        "morse_monotone",
        nondec and dec,
        f"tail index nondecreasing={nondec}, tail Lam_hat decreasing={dec}, "
        f"onsets: morse at alpha={mono['morse_onset_alpha']}, "
        f"Lam_hat at alpha={mono['lam_hat_onset_alpha']}",
        mono,
    )


def check_level_monotone(report: SweepReport) -> CheckResult:
    levels = [r["level_C"] for r in report.ok_rows()]
    ok = all(b > a for a, b in zip(levels, levels[1:]))
    return CheckResult("level_monotone", ok, f"levels={['%.6g' % v for v in levels]}")


def check_best_constant(report: SweepReport) -> CheckResult:
    if report.config.m != 1:
        return CheckResult("best_constant", False, "defined only for m=1 sweeps")
    gaps = [r["best_gap"] for r in report.ok_rows()]
    return _trend_check("best_constant", gaps, CHECK_THRESHOLDS["best_constant"])


def constants_limit(report: SweepReport) -> list:
    """Per-alpha scaled best constant and its relative gap to the limit."""
    if report.config.m != 1:
        raise InvalidArgsError("constants_limit needs an m=1 sweep")
    return [
        {"alpha": r["alpha"], "scaled": r["best_scaled"], "rel_gap": r["best_gap"]}
        for r in report.ok_rows()
    ]


CHECKS = {
    "profile_limit": check_profile_limit,
    "zero_rate": check_zero_rate,
    "plateau": check_plateau,
    "extrema_envelope": check_extrema_rate,
    "identities": check_identities,
    "eigen_limit": check_eigen_limit,
    "expansion_fit": check_expansion_fit,
    "morse_bounds": check_morse_bounds,
    "morse_monotone": check_morse_monotone,
    "level_monotone": check_level_monotone,
    "best_constant": check_best_constant,
}


def default_checks(config: SweepConfig) -> tuple:
    names = ["profile_limit", "zero_rate", "plateau", "extrema_envelope",
             "identities", "eigen_limit", "expansion_fit", "level_monotone"]
    if config.N >= 3:
        names += ["morse_bounds", "morse_monotone"]
    if config.m == 1:
        names.append("best_constant")
    return tuple(names)


def run_checks(report: SweepReport, names=None) -> list:
    names = names or (report.config.checks or default_checks(report.config))
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise InvalidArgsError(f"unknown checks: {unknown}; known: {sorted(CHECKS)}")
    return [CHECKS[n](report) for n in names]
