"""Command-line front end: one subcommand per verification suite or experiment.

Every subcommand writes delimited data plus a JSON manifest recording the
parameters, grids, tolerances and pass/fail results.  Output is
deterministic: identical parameters reproduce byte-identical data files.
Exit codes: 0 all checks passed, 1 a tolerance failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import random
import sys
import time

import numpy as np

from . import __version__, envelope, experiments, forms, liealg, qsc, reps, specfun
from . import diffop
from .envelope import NcElement


def _fmt(value) -> str:
    if isinstance(value, complex):
        return f"{value.real:.17g}+{value.imag:.17g}j" if value.imag >= 0 \
            else f"{value.real:.17g}{value.imag:.17g}j"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


class Runner:
    """Collects checks and outputs for one subcommand run."""

    def __init__(self, subcommand: str, args: argparse.Namespace):
        self.subcommand = subcommand
        self.args = args
        self.checks = []
        self.outputs = []
        self.extra = {}
        self.t0 = time.time()

    def check(self, name: str, value: float, tolerance: float) -> bool:
        passed = bool(value <= tolerance)
        self.checks.append({"name": name, "value": float(value),
                            "tolerance": float(tolerance), "passed": passed})
        return passed

    def record(self, key, value):
        self.extra[key] = value

    def output(self, path):
        self.outputs.append(path)

    def finish(self) -> int:
        manifest = {
            "subcommand": self.subcommand,
            "version": __version__,
            "parameters": {k: v for k, v in sorted(vars(self.args).items())
                           if k not in ("func",)},
            "seed": getattr(self.args, "seed", None),
            "ncst_threads": os.environ.get("NCST_THREADS"),
            "outputs": self.outputs,
            "checks": self.checks,
            "details": self.extra,
            "wall_time_s": round(time.time() - self.t0, 3),
        }
        path = getattr(self.args, "json_manifest", None)
        if path is None and getattr(self.args, "out", None):
            path = str(self.args.out) + ".manifest.json"
        if path:
            with open(path, "w") as fh:
                json.dump(manifest, fh, indent=1, default=str)
                fh.write("\n")
        all_passed = all(c["passed"] for c in self.checks)
        status = "pass" if all_passed else "FAIL"
        print(f"{self.subcommand}: {status} "
              f"({sum(c['passed'] for c in self.checks)}/{len(self.checks)} checks)")
        return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# subcommands

def cmd_algebra_check(args) -> int:
    run = Runner("algebra-check", args)
    rows = []
    worst = 0
    for eps, eps_prime in itertools.product((1, -1), repeat=2):
        alg = liealg.build_deformed(eps, eps_prime)
        bad = liealg.check_jacobi(alg)
        worst = max(worst, len(bad))
        rows.append(("jacobi", alg.name, "0" if not bad else f"{len(bad)} nonzero"))
        emb = liealg.check_embedding(eps, eps_prime)
        worst = max(worst, len(emb))
        rows.append(("embedding", alg.name, "0" if not emb else f"{len(emb)} nonzero"))
    bad = liealg.check_jacobi(liealg.build_r0())
    rows.append(("jacobi", "r0", "0" if not bad else "nonzero"))
    worst = max(worst, len(bad))
    for eps in (1, -1):
        res = diffop.verify_m5_rep(eps)
        worst = max(worst, len(res))
        rows.append(("carrier-rep-table", f"eps={eps}", "0" if not res else f"{len(res)} nonzero"))
    # sampled product-law identities in the enveloping algebra
    rng = random.Random(args.seed)
    assoc_bad = 0
    for _ in range(10):
        a, b, c = (envelope.random_element(rng) for _ in range(3))
        lhs = envelope.nc_multiply(envelope.nc_multiply(a, b), c)
        rhs = envelope.nc_multiply(a, envelope.nc_multiply(b, c))
        if not (lhs - rhs).is_zero():
            assoc_bad += 1
    rows.append(("associativity-sample", "10 triples", "0" if not assoc_bad else str(assoc_bad)))
    worst = max(worst, assoc_bad)
    pw = envelope.planewave_commutator_residual(0, 2, kvec=None)
    rows.append(("planewave-order2", "symbolic", "0" if not pw else str(len(pw))))
    worst = max(worst, len(pw))
    if args.out:
        _write_csv(args.out, ("check", "detail", "residual"), rows)
        run.output(args.out)
    run.record("algebra_json", liealg.build_deformed(-1, 1).to_json_dict())
    run.check("all-symbolic-residuals-zero", worst, 0)
    return run.finish()


def cmd_forms_check(args) -> int:
    run = Runner("forms-check", args)
    rng = random.Random(args.seed)
    rows = []
    d2_bad = 0
    for _ in range(args.samples):
        deg = rng.randint(0, 3)
        idx = tuple(sorted(rng.sample(range(5), deg)))
        w = forms.Form(deg, {idx: envelope.random_element(rng)})
        if not forms.ext_d(forms.ext_d(w)).is_zero():
            d2_bad += 1
    rows.append(("d-squared", f"{args.samples} random forms", str(d2_bad)))
    fs_bad = 0
    order_bad = 0
    for _ in range(4):
        conn = forms.random_connection(rng)
        if not (forms.field_strength_form(conn) - forms.curvature_of_connection(conn)).is_zero():
            fs_bad += 1
        report = forms.field_eq_order_report(conn)
        for entry in report.values():
            for key in ("divergence_extra", "commutator_spacetime", "commutator_extra"):
                e = entry[key]
                if not e["zero"] and e["min_ell_order"] < 2:
                    order_bad += 1
        rows.append(("field-eq-orders", "connection", json.dumps(report[0], sort_keys=True)))
    rows.append(("field-strength-two-routes", "4 connections", str(fs_bad)))
    gamma = {(a, d, e): forms.random_field_element(rng)
             for a in range(2) for d in range(2) for e in range(2)}
    for a in range(2):
        for d in range(2):
            for e in range(2):
                gamma[(a, e, d)] = gamma[(a, d, e)]
    curv = forms.curvature(gamma)
    anti_bad = sum(
        1 for a in range(5) for b in range(5) for c in range(5) for e in range(5)
        if not (curv.get((a, b, c, e), NcElement.zero())
                + curv.get((a, c, b, e), NcElement.zero())).is_zero())
    rows.append(("curvature-antisymmetry", "random connection coefficients", str(anti_bad)))
    if args.out:
        _write_csv(args.out, ("check", "detail", "result"), rows)
        run.output(args.out)
    run.check("d-squared-zero", d2_bad, 0)
    run.check("field-strength-routes-agree", fs_bad, 0)
    run.check("deviation-terms-second-order", order_bad, 0)
    run.check("curvature-antisymmetric", anti_bad, 0)
    return run.finish()


def cmd_oscillator(args) -> int:
    run = Runner("oscillator", args)
    p = experiments.OscillatorParams(mass=args.m, omega=args.omega,
                                     ell=args.ell, levels=args.levels)
    exact = experiments.oscillator_spectrum(p)
    rows = []
    worst = 0.0
    for n in range(args.levels):
        series = experiments.oscillator_asymptotic(n, args.m, args.omega, args.ell)
        rows.append((n, exact[n], series, exact[n] - series))
        worst = max(worst, abs(exact[n] - series))
    _write_csv(args.out, ("n", "energy_exact", "energy_series", "residual"), rows)
    run.output(args.out)
    spec0 = specfun.mathieu_char(0.0, 6)
    q0_err = max(abs(spec0.even(r) - r * r) for r in range(7))
    run.check("free-limit-characteristic-values", q0_err, 1e-10)
    run.check("spectrum-increasing", 0.0 if np.all(np.diff(exact) > 0) else 1.0, 0.0)
    run.check("series-agreement", worst, args.tol)
    if args.plot:
        from . import plotting
        path = args.out + ".png"
        plotting.save_lines(path, list(range(args.levels)),
                            [exact, [r[2] for r in rows]],
                            ["exact", "series"], "level", "energy")
        run.output(path)
    return run.finish()


def cmd_barrier(args) -> int:
    run = Runner("barrier", args)
    sol = experiments.barrier_solve(args.lam, args.v, n_max=args.nmax)
    rows = []
    worst = 0.0
    for n in range(-args.nmax, args.nmax + 1):
        c = sol.coefficient(n)
        if abs(n) >= 3:
            res = abs(sol.recurrence_residual(n))
            worst = max(worst, res)
        else:
            res = 0.0
        rows.append((n, c.real, c.imag, res))
    _write_csv(args.out, ("n", "re_c", "im_c", "recurrence_residual"), rows)
    run.output(args.out)
    run.record("gamma", sol.gamma)
    run.record("delta", sol.delta)
    run.record("amp_out", _fmt(sol.amp_left))
    run.record("amp_in", _fmt(sol.amp_right))
    fitted = experiments.barrier_wavelength_fit(args.v)
    run.record("wavelength_fit_coefficient", fitted)
    run.check("recurrence-residual", worst, args.tol)
    run.check("reflection-amplitude-balance",
              abs(abs(sol.amp_left) - abs(sol.amp_right)), 1e-12)
    if args.plot:
        from . import plotting
        path = args.out + ".png"
        ns = [r[0] for r in rows]
        plotting.save_stem(path, ns, [abs(complex(r[1], r[2])) ** 2 for r in rows],
                           "site", "|amplitude|^2")
        run.output(path)
    return run.finish()


def cmd_diffraction(args) -> int:
    run = Runner("diffraction", args)
    ks = np.linspace(-args.kmax, args.kmax, args.samples)
    prof = experiments.diffraction_profile(args.levels, ks)
    dual_worst = max(abs(experiments.slit_projection_dirichlet(args.levels, float(k))
                         - experiments.slit_projection_chebyshev(args.levels, float(k)))
                     for k in ks)
    rows = [(float(k), float(e), float(a)) for k, e, a in prof]
    _write_csv(args.out, ("k", "intensity_exact", "intensity_wide_slit"), rows)
    run.output(args.out)
    fitted = experiments.diffraction_zero_fit(max(args.levels, 200))
    run.record("ring_compression_coefficient", fitted)
    run.check("dual-form-agreement", dual_worst, args.tol)
    run.check("intensity-even", float(np.max(np.abs(prof[:, 1] - prof[::-1, 1]))), 1e-12)
    if args.plot:
        from . import plotting
        path = args.out + ".png"
        plotting.save_lines(path, prof[:, 0], [prof[:, 1], prof[:, 2]],
                            ["exact", "wide slit"], "k", "intensity", logy=True)
        run.output(path)
    return run.finish()


def cmd_walk(args) -> int:
    run = Runner("walk", args)
    state = experiments.time_process(args.t_over_ell, n_max=args.nmax)
    rows = []
    for n in range(args.nmax + 1):
        c = state.coefficients[n]
        rows.append((n, c.real, c.imag, state.probability(n)))
    _write_csv(args.out, ("n", "re_c", "im_c", "probability"), rows)
    run.output(args.out)
    run.record("norm_partial_two_sided", state.norm_partial())
    c0_err = abs(state.coefficients[0] - math.exp(-0.5 * math.pi * args.t_over_ell))
    run.check("origin-amplitude", c0_err, 1e-10)
    run.check("recurrence-residual", experiments.walk_recurrence_residual(state), 1e-10)
    if args.plot:
        from . import plotting
        path = args.out + ".png"
        ns = list(range(-12, 13))
        plotting.save_stem(path, ns, [state.probability(n) for n in ns],
                           "site", "probability")
        run.output(path)
    return run.finish()


def cmd_qsc(args) -> int:
    run = Runner("qsc", args)
    grid = qsc.OmegaGrid(args.omega_max, args.grid_points)
    ys = np.linspace(0.0, 4.0, 33)
    rows = [(float(y), qsc.char_function_x0(float(y))) for y in ys]
    _write_csv(args.out, ("y", "char_value"), rows)
    run.output(args.out)
    iso2_path = args.out.replace(".csv", "") + "_iso2.csv"
    cg = qsc.CircleGrid()
    ss = np.linspace(0.0, 2 * math.pi, 33)
    _write_csv(iso2_path, ("s", "char_value"),
               [(float(s), qsc.char_function_iso2(float(s))) for s in ss])
    run.output(iso2_path)
    gram_path = args.out.replace(".csv", "") + "_gram.csv"
    g = qsc.ladder_gram(grid, 4)
    _write_csv(gram_path, ("n", "gram_diagonal"),
               [(n, float(abs(g[n, n]))) for n in range(5)])
    run.output(gram_path)

    run.check("vacuum-norm-constant",
              abs(qsc.vacuum_norm_constant(grid) - 2.0 * specfun.bessel_k0(2.0)), 1e-6)
    worst = max(abs(qsc.char_function_x0(float(y)) - qsc.char_function_x0_grid(grid, float(y)))
                for y in ys)
    run.check("char-grid-crosscheck", worst, args.tol)
    ratios = qsc.iso2_fourier_ratios(cg, 8)
    expect = np.array([specfun.bessel_i(n, 1.0) / specfun.bessel_i(0, 1.0)
                       for n in range(9)])
    run.check("circle-mode-ratios", float(np.max(np.abs(ratios - expect))), 1e-10)
    part = (0.0, 0.25, 0.5, 0.75, 1.0)
    phi0 = qsc.vacuum_iso11(grid)
    one = qsc.StepProcess.constant(part, 1.0)
    phif = qsc.DirectIntegralState.product(grid, one, phi0)
    out = qsc.second_fundamental_check(qsc.ProcessTriple.single(part, "X0"),
                                       qsc.ProcessTriple.single(part, "H+"),
                                       phif, phif, 1.0)
    run.check("ito-diagonal",
              abs(out["diagonal_antisymmetric"] - out["ito_predicted"]), 1e-6)
    if args.plot:
        from . import plotting
        path = args.out + ".png"
        plotting.save_lines(path, ys, [[r[1] for r in rows]], ["time-operator"],
                            "y", "characteristic value")
        run.output(path)
    return run.finish()


def cmd_trace(args) -> int:
    run = Runner("trace", args)
    rows = []
    worst_margin = -1.0
    for expo in range(3, int(math.log10(args.n_max)) + 1):
        n = 10 ** expo
        gap = reps.harmonic_log_gap(n)
        gamma_n = reps.dixmier_sequence(lambda k: 1.0 / (k + 1), n)
        rows.append((n, gamma_n, gap, gap - reps.EULER_GAMMA))
        worst_margin = max(worst_margin,
                           abs(gap - reps.EULER_GAMMA) - 0.5 / n)
    _write_csv(args.out, ("n", "harmonic_dixmier", "harmonic_log_gap", "gap_minus_euler"), rows)
    run.output(args.out)
    run.check("euler-constant-window", max(worst_margin, 0.0), 0.0)
    run.check("zero-operator-trace",
              abs(reps.trace_integral(lambda *a: 0.0, 2)), 0.0)
    if args.plot:
        from . import plotting
        path = args.out + ".png"
        plotting.save_lines(path, [r[0] for r in rows],
                            [[r[1] for r in rows]], ["log-normalized sum"],
                            "N", "value")
        run.output(path)
    return run.finish()


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncst",
        description="Verification suites and experiments for the deformed kinematical algebra")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, default_tol, needs_out=True):
        if needs_out:
            p.add_argument("--out", required=True, help="output data path")
        else:
            p.add_argument("--out", default=None, help="optional output data path")
        p.add_argument("--tol", type=float, default=default_tol)
        p.add_argument("--seed", type=int, default=20200816)
        p.add_argument("--json-manifest", dest="json_manifest", default=None)
        p.add_argument("--plot", action="store_true", help="render figures beside the data")

    p = sub.add_parser("algebra-check", help="exact structure-constant suites")
    common(p, 0.0, needs_out=False)
    p.set_defaults(func=cmd_algebra_check)

    p = sub.add_parser("forms-check", help="exterior calculus and gauge identities")
    common(p, 0.0, needs_out=False)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_forms_check)

    p = sub.add_parser("oscillator", help="level corrections from the periodic spectrum")
    common(p, 1e-6)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--ell", type=float, default=0.05)
    p.add_argument("--levels", type=int, default=6)
    p.set_defaults(func=cmd_oscillator)

    p = sub.add_parser("barrier", help="reflection off a momentum-lattice step")
    common(p, 1e-12)
    p.add_argument("--lam", type=float, default=0.01)
    p.add_argument("--v", "--barrier", dest="v", type=float, default=0.5)
    p.add_argument("--nmax", type=int, default=21)
    p.set_defaults(func=cmd_barrier)

    p = sub.add_parser("diffraction", help="single-slit profile with bounded momentum")
    common(p, 1e-12)
    p.add_argument("--levels", "--slit-half-width", dest="levels", type=int, default=50)
    p.add_argument("--kmax", type=float, default=0.9)
    p.add_argument("--samples", type=int, default=181)
    p.set_defaults(func=cmd_diffraction)

    p = sub.add_parser("walk", help="time-operator lattice process")
    common(p, 1e-10)
    p.add_argument("--t-over-ell", dest="t_over_ell", type=float, default=1.0)
    p.add_argument("--nmax", type=int, default=200)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("qsc", help="stochastic-calculus suite")
    common(p, 1e-6)
    p.add_argument("--omega-max", dest="omega_max", type=float, default=7.5)
    p.add_argument("--grid", "--grid-points", dest="grid_points", type=int, default=512)
    p.set_defaults(func=cmd_qsc)

    p = sub.add_parser("trace", help="log-normalized sums and the integration basis")
    common(p, 0.0)
    p.add_argument("--n-max", dest="n_max", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
