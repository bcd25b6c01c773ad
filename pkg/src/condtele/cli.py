"""Command-line experiment runner.

Every subcommand writes plot-ready tables (CSV or JSON) into ``--out`` along
with a ``<name>.config.json`` sidecar holding the resolved configuration and
any summary values. Output depends only on the configuration, never on the
worker count (``CONDTELE_WORKERS``) or the clock.

Exit codes: 0 success, 2 quadrature convergence failure, 3 invalid
configuration, 4 a checked claim failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConvergenceError, InvalidParameter, TruncationError
from .kinds import ResourceKind
from .ndps import ndps_fidelity_curve
from .numerics import TruncationPolicy
from .oracle import oracle_point
from .resources import (
    build_resource,
    herald_probability,
    joint_phase_density,
    photon_number_distribution,
    von_neumann_entropy,
)
from .states import Cat, Coherent
from .teleport import (
    TeleportConfig,
    average_fidelity,
    boundary_scan,
    cat_point,
    coherent_point,
    default_lambda_grid,
    default_quadrature,
    gain_gamma_scan,
)

log = logging.getLogger("condtele")

EXIT_OK, EXIT_CONVERGENCE, EXIT_CONFIG, EXIT_CLAIM = 0, 2, 3, 4
SIG_DIGITS = 10
WORKERS_ENV = "CONDTELE_WORKERS"


class ConfigError(InvalidParameter):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


# formatting -----------------------------------------------------------------


def fmt_number(x):
    if x is None:
        return "nan"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.{SIG_DIGITS}g}"
    return str(x)


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return float(f"{x:.{SIG_DIGITS}g}") if math.isfinite(x) else None
    if isinstance(x, complex):
        return {"re": _json_value(x.real), "im": _json_value(x.imag)}
    if isinstance(x, dict):
        return {str(k): _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in x]
    return x


@dataclass
class Table:
    name: str
    columns: list
    rows: list
    summary: dict = field(default_factory=dict)


def write_outputs(tables, cfg, out_dir: Path, fmt: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for t in tables:
        if fmt == "csv":
            path = out_dir / f"{t.name}.csv"
            with path.open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(t.columns)
                for row in t.rows:
                    w.writerow([fmt_number(v) for v in row])
        else:
            path = out_dir / f"{t.name}.json"
            doc = {
                "metadata": {"table": t.name, "config": cfg, "columns": t.columns},
                "summary": _json_value(t.summary),
                "rows": [dict(zip(t.columns, _json_value(list(r)))) for r in t.rows],
            }
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        sidecar = out_dir / f"{t.name}.config.json"
        sidecar.write_text(
            json.dumps({"table": t.name, "config": cfg, "summary": _json_value(t.summary)}, indent=2, sort_keys=True)
            + "\n"
        )
        written += [path, sidecar]
    return written


# argument parsing -------------------------------------------------------------


def parse_complex(text):
    try:
        z = complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"cannot parse amplitude {text!r}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ConfigError(f"amplitude must be finite: {text!r}")
    return z


def parse_grid(text):
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    text = str(text)
    if ":" in text:
        try:
            start, stop, step = (float(p) for p in text.split(":"))
        except ValueError as exc:
            raise ConfigError(f"bad grid {text!r}") from exc
        if step <= 0 or stop < start:
            raise ConfigError(f"bad grid {text!r}")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 10) for i in range(n)]
    return [float(p) for p in text.split(",") if p.strip()]


def _workers():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc


def _kinds(arg, allowed=tuple(ResourceKind)):
    if arg in (None, "all"):
        return list(allowed)
    try:
        return [ResourceKind.parse(k) for k in arg.split(",")]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _state(args, amplitude=None):
    amp = args.alpha if amplitude is None else amplitude
    if args.input == "cat":
        return Cat(amp, args.parity)
    return Coherent(amp)


def _policy(args):
    return TruncationPolicy(epsilon=args.epsilon)


def _resolved(args):
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "out"):
            continue
        out[k] = _json_value(v)
    return out


# subcommands ----------------------------------------------------------------


def cmd_resource_stats(args):
    rows, summary = [], {}
    for kind in _kinds(args.kind):
        res = build_resource(kind, args.lam, _policy(args))
        for n, p in photon_number_distribution(res):
            rows.append((kind.value, args.lam, n, p))
        summary[kind.value] = {
            "entropy_nats": von_neumann_entropy(res),
            "entropy_bits": von_neumann_entropy(res, base=2),
            "tail_mass": res.tail_mass,
            "cutoff": res.cutoff,
        }
    hp = herald_probability(args.theta, args.lam)
    summary["herald_probability"] = {"theta": args.theta, "value": hp.probability, "perturbative": hp.perturbative}
    return [Table("resource_stats", ["kind", "lambda", "n", "p"], rows, summary)]


def cmd_entropy_curve(args):
    lambdas = parse_grid(args.lambda_grid)
    kinds = _kinds(args.kind)
    rows = []
    for lam in lambdas:
        for kind in kinds:
            rows.append((kind.value, lam, von_neumann_entropy(build_resource(kind, lam, _policy(args)), base=args.base)))
    summary = {"log_base": "2" if args.base == 2 else "e"}
    return [Table("entropy_curve", ["kind", "lambda", "entropy"], rows, summary)]


def cmd_phase_density(args):
    phis = np.linspace(-math.pi, math.pi, args.points)
    rows = []
    for kind in _kinds(args.kind):
        for lam in parse_grid(args.lambda_grid):
            dens = joint_phase_density(build_resource(kind, lam, _policy(args)), phis)
            rows += [(kind.value, lam, float(p), float(d)) for p, d in zip(phis, dens)]
    summary = {"normalization": "unit integral over [-pi, pi]"}
    return [Table("phase_density", ["kind", "lambda", "phi", "density"], rows, summary)]


def _comparison(args, state):
    gamma = args.alpha if args.gamma is None else args.gamma
    return state.like(gamma)


def cmd_cv_point(args):
    state = _state(args)
    if args.beta is not None:
        betas = [args.beta]
    else:
        offs = np.linspace(-args.span, args.span, args.points)
        betas = [state.amplitude + complex(x, y) for y in offs for x in offs]
    rows = []
    for kind in _kinds(args.kind):
        res = build_resource(kind, args.lam, _policy(args))
        cfg = TeleportConfig(res, args.gain, _comparison(args, state))
        for b in betas:
            if isinstance(state, Cat):
                pt = cat_point(cfg, state.alpha, state.parity, b)
            else:
                pt = coherent_point(cfg, state.alpha, b)
            rows.append((kind.value, args.lam, args.gain, b.real, b.imag, pt.prob_density, pt.fidelity, pt.method))
    cols = ["kind", "lambda", "g", "beta_re", "beta_im", "prob_density", "fidelity", "method"]
    return [Table("cv_point", cols, rows)]


def cmd_cv_avg(args):
    state = _state(args)
    comp = _comparison(args, state)
    rows = []
    for kind in _kinds(args.kind):
        res = build_resource(kind, args.lam, _policy(args))
        quad = default_quadrature(state, args.lam, args.order)
        fbar, err, method = average_fidelity(TeleportConfig(res, args.gain, comp), state, quad)
        rows.append((kind.value, args.lam, args.gain, comp.amplitude.real, comp.amplitude.imag, fbar, err, method))
    cols = ["kind", "lambda", "g", "gamma_re", "gamma_im", "fbar", "err", "method"]
    summary = {"input": args.input, "parity": args.parity if args.input == "cat" else None}
    return [Table("cv_avg", cols, rows, summary)]


def cmd_gain_scan(args):
    state = _state(args)
    g_grid = parse_grid(args.g_grid)
    gamma_grid = [complex(x) for x in parse_grid(args.gamma_grid)]
    tables = []
    for kind in _kinds(args.kind, (ResourceKind.STANDARD, ResourceKind.SUBTRACTED)):
        res = build_resource(kind, args.lam, _policy(args))
        scan = gain_gamma_scan(
            state, res, g_grid, gamma_grid, default_quadrature(state, args.lam, args.order), workers=_workers()
        )
        rows = [(args.lam, r.g, r.gamma.real, r.gamma.imag, r.fbar, r.err) for r in scan.rows]
        b = scan.best
        summary = {"argmax": {"g": b.g, "gamma_re": b.gamma.real, "gamma_im": b.gamma.imag, "fbar": b.fbar}}
        tables.append(Table(f"gain_scan_{kind.value}", ["lambda", "g", "gamma_re", "gamma_im", "fbar", "err"], rows, summary))
    return tables


def _boundary_summary(scan):
    return {
        "crossing_standard": scan.crossing_standard,
        "crossing_subtracted": scan.crossing_subtracted,
        "quantum_window": list(scan.quantum_window) if scan.quantum_window else None,
        "gap_argmax_lambda": scan.gap_argmax_lambda,
        "gap_absolute": scan.gap_absolute,
        "gap_relative": scan.gap_relative,
    }


def cmd_boundary_scan(args):
    lambdas = parse_grid(args.lambda_grid)
    scan = boundary_scan(args.alpha, lambdas, args.order, _policy(args), workers=_workers())
    a = complex(args.alpha)
    rows = []
    for name, values in (("standard", scan.fbar_standard), ("subtracted", scan.fbar_subtracted)):
        rows += [(name, lam, 1.0, a.real, a.imag, f, e) for lam, f, e in zip(scan.lambdas, values, scan.err)]
    cols = ["kind", "lambda", "g", "gamma_re", "gamma_im", "fbar", "err"]
    return [Table("boundary_scan", cols, rows, _boundary_summary(scan))]


def cmd_ndps_curve(args):
    state = _state(args)
    lambdas = parse_grid(args.lambda_grid)
    rows = []
    for kind in _kinds(args.kind):
        for lam, fid in ndps_fidelity_curve(kind, state, args.k, lambdas, _policy(args)):
            rows.append((kind.value, args.k, lam, fid))
    summary = {"coefficients": "e^{-|a|^2/2} a^n / sqrt(n!)"}
    return [Table(f"ndps_curve_k{args.k}", ["kind", "k", "lambda", "fidelity"], rows, summary)]


def oracle_sample(n_cases=200, seed=20020101):
    """The seeded (closed form, oracle) comparison set."""
    rng = np.random.default_rng(seed)
    kinds = (ResourceKind.STANDARD, ResourceKind.SUBTRACTED)
    cases = []
    for i in range(n_cases):
        kind = kinds[i % 2]
        lam = (0.3, 0.5, 0.8)[i % 3]
        g = (0.5, 1.0)[(i // 6) % 2]
        a = complex(*rng.uniform(-2, 2, 2))
        gamma = complex(*rng.uniform(-2, 2, 2))
        if (i // 2) % 2 == 0:
            state, comp = Coherent(a), Coherent(gamma)
        else:
            parity = ("even", "odd")[(i // 4) % 2]
            state, comp = Cat(a, parity), Cat(gamma, parity)
        center = a if (i // 3) % 2 == 0 else -a
        beta = center + complex(*rng.normal(0.0, 1.0, 2))
        cases.append((kind, lam, g, state, comp, beta))
    return cases


def run_oracle_check(n_cases=200, seed=20020101):
    rows = []
    worst = 0.0
    resources = {}
    for i, (kind, lam, g, state, comp, beta) in enumerate(oracle_sample(n_cases, seed)):
        res = resources.setdefault((kind, lam), build_resource(kind, lam))
        cfg = TeleportConfig(res, g, comp)
        if isinstance(state, Cat):
            closed = cat_point(cfg, state.alpha, state.parity, beta)
        else:
            closed = coherent_point(cfg, state.alpha, beta)
        ref = oracle_point(res, state, beta, g, comp)
        dp = abs(closed.prob_density - ref.prob_density)
        df = abs(closed.fidelity - ref.fidelity)
        worst = max(worst, dp, df)
        label = "coherent" if isinstance(state, Coherent) else f"cat-{state.parity}"
        rows.append((i, kind.value, label, lam, g, beta.real, beta.imag, closed.prob_density, ref.prob_density,
                     closed.fidelity, ref.fidelity, max(dp, df)))
    return rows, worst


ORACLE_TOL = 1e-8


def cmd_oracle_check(args):
    rows, worst = run_oracle_check(args.cases, args.seed)
    cols = ["case", "kind", "input", "lambda", "g", "beta_re", "beta_im", "prob_closed", "prob_oracle",
            "fid_closed", "fid_oracle", "abs_diff"]
    summary = {"max_abs_diff": worst, "tolerance": ORACLE_TOL, "passed": worst <= ORACLE_TOL}
    return [Table("oracle_check", cols, rows, summary)]


# reproduce-all ----------------------------------------------------------------


@dataclass
class Claim:
    claim_id: str
    reported: float
    computed: float
    tolerance: float
    relation: str = "abs"

    @property
    def passed(self):
        if self.relation == "abs":
            return abs(self.computed - self.reported) <= self.tolerance
        if self.relation == "below":
            return self.computed < self.reported
        if self.relation == "at-least":
            return self.computed >= self.reported - self.tolerance
        if self.relation == "holds":
            return bool(self.computed)
        return True  # informational


@dataclass
class ReproReport:
    claims: list
    runtime_s: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.claims)


REPORTED_TOL = 5e-4


def _fbar(kind, lam, state, gain=1.0, comp=None, order=48):
    res = build_resource(kind, lam)
    return average_fidelity(TeleportConfig(res, gain, comp), state, default_quadrature(state, lam, order)).fbar


def reproduce_claims(workers=1, order=48):
    S, P = ResourceKind.STANDARD, ResourceKind.SUBTRACTED
    claims = []
    coh = Coherent(1.5)
    claims += [
        Claim("cv.coherent.standard.fbar", 0.9000, _fbar(S, 0.8, coh, order=order), REPORTED_TOL),
        Claim("cv.coherent.subtracted.fbar", 0.9246, _fbar(P, 0.8, coh, order=order), REPORTED_TOL),
    ]
    even, odd = Cat(1.5, "even"), Cat(1.5j, "odd")
    claims += [
        Claim("cv.cat-even.standard.fbar", 0.6389, _fbar(S, 0.8, even, order=order), REPORTED_TOL),
        Claim("cv.cat-even.subtracted.fbar", 0.7531, _fbar(P, 0.8, even, order=order), REPORTED_TOL),
        Claim("cv.cat-odd.standard.fbar", 0.6453, _fbar(S, 0.8178, odd, order=order), REPORTED_TOL),
        Claim("cv.cat-odd.subtracted.fbar", 0.7589, _fbar(P, 0.8178, odd, order=order), REPORTED_TOL),
    ]

    big = Coherent(3.0)
    gammas = [complex(x) for x in parse_grid(DEFAULT_GAMMA_GRID)]
    std = gain_gamma_scan(big, build_resource(S, 0.5), [0.5], gammas, workers=workers)
    sub = gain_gamma_scan(big, build_resource(P, 0.5), parse_grid(DEFAULT_G_GRID), gammas, workers=workers)
    claims += [
        Claim("gain.standard.fbar-max", 1.0, std.best.fbar, 1e-6, "at-least"),
        Claim("gain.standard.gamma-argmax", 1.5, std.best.gamma.real, 0.05),
        Claim("gain.subtracted.g-argmax", 0.7, sub.best.g, 0.05 + 1e-9),
        Claim("gain.subtracted.gamma-argmax", 2.1, sub.best.gamma.real, 0.1 + 1e-9),
        Claim("gain.subtracted.fbar-max-below-one", 1.0, sub.best.fbar, 0.0, "below"),
    ]

    scan = boundary_scan(3.0, default_lambda_grid(), order, workers=workers)
    window = scan.quantum_window
    claims += [
        Claim("boundary.standard.crossing", 1 / 3, scan.crossing_standard or float("nan"), 0.01),
        Claim("boundary.quantum-window-nonempty", 1.0, float(window is not None and window[1] > window[0]), 0, "holds"),
        Claim("boundary.gap-argmax-lambda", 0.37, scan.gap_argmax_lambda, 0.02),
        Claim("boundary.gap-relative", 0.15, scan.gap_relative, 0.03),
        Claim("boundary.gap-absolute", 0.15, scan.gap_absolute, 0.0, "info"),
    ]

    grid = [round(x, 2) for x in np.arange(0.2, 0.701, 0.05)]
    k0 = {kind: dict(ndps_fidelity_curve(kind, big, 0, grid)) for kind in ResourceKind}
    beat = all(min(k0[ResourceKind.ADDED][l], k0[P][l]) > k0[S][l] for l in grid)
    high = [round(x, 2) for x in np.arange(0.80, 0.951, 0.05)]
    k5 = {kind: dict(ndps_fidelity_curve(kind, big, 5, high)) for kind in ResourceKind}
    std_wins = any(k5[S][l] > max(k5[P][l], k5[ResourceKind.ADDED][l]) for l in high)
    claims += [
        Claim("ndps.k0.conditioned-beat-standard", 1.0, float(beat), 0, "holds"),
        Claim("ndps.k5.standard-wins-high-lambda", 1.0, float(std_wins), 0, "holds"),
    ]

    ent = all(
        von_neumann_entropy(build_resource(P, l)) > von_neumann_entropy(build_resource(S, l))
        for l in np.round(np.arange(0.05, 0.951, 0.05), 2)
    )
    claims.append(Claim("resources.entropy-subtracted-exceeds-standard", 1.0, float(ent), 0, "holds"))
    return claims


def cmd_reproduce_all(args):
    t0 = time.perf_counter()
    report = ReproReport(reproduce_claims(_workers(), args.order))
    report.runtime_s = time.perf_counter() - t0
    rows = [(c.claim_id, c.reported, c.computed, c.tolerance, c.relation, c.passed) for c in report.claims]
    cols = ["claim_id", "reported_value", "computed_value", "tolerance", "relation", "passed"]
    summary = {"passed": report.passed, "n_claims": len(rows), "n_failed": sum(not c.passed for c in report.claims)}
    for c in report.claims:
        status = "INFO" if c.relation == "info" else ("PASS" if c.passed else "FAIL")
        print(f"{status}  {c.claim_id:48s} reported={c.reported:.6g} computed={c.computed:.6g}")
    print(f"runtime {report.runtime_s:.1f} s")
    return [Table("repro_report", cols, rows, summary)], (EXIT_OK if report.passed else EXIT_CLAIM)


# parser -----------------------------------------------------------------------

DEFAULT_G_GRID = "0.05:1.0:0.05"
DEFAULT_GAMMA_GRID = "0.0:3.5:0.05"
DEFAULT_LAMBDA_GRID = "0.0:0.95:0.01"


def build_parser():
    p = _Parser(prog="condtele", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, lam=0.8, alpha="1.5"):
        sp.add_argument("--lambda", dest="lam", type=float, default=lam)
        sp.add_argument("--alpha", type=parse_complex, default=parse_complex(alpha))
        sp.add_argument("--gamma", type=parse_complex, default=None)
        sp.add_argument("--gain", type=float, default=1.0)
        sp.add_argument("--parity", choices=("even", "odd"), default="even")
        sp.add_argument("--input", choices=("coherent", "cat"), default="coherent")
        sp.add_argument("--kind", default=None, help="standard, subtracted, added, comma list or all")
        sp.add_argument("--k", type=int, default=0)
        sp.add_argument("--order", type=int, default=48)
        sp.add_argument("--epsilon", type=float, default=1e-12)
        sp.add_argument("--out", type=Path, default=Path("results"))
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("resource-stats", help="photon-number distributions and entropies")
    common(sp)
    sp.add_argument("--theta", type=float, default=0.1)
    sp.set_defaults(func=cmd_resource_stats)

    sp = sub.add_parser("entropy-curve", help="entropy versus lambda")
    common(sp)
    sp.add_argument("--lambda-grid", default=DEFAULT_LAMBDA_GRID)
    sp.add_argument("--base", type=lambda s: 2 if s == "2" else math.e, default=math.e)
    sp.set_defaults(func=cmd_entropy_curve)

    sp = sub.add_parser("phase-density", help="joint phase-sum density")
    common(sp)
    sp.add_argument("--lambda-grid", default="0.1:0.9:0.1")
    sp.add_argument("--points", type=int, default=201)
    sp.set_defaults(func=cmd_phase_density, kind="subtracted")

    sp = sub.add_parser("cv-point", help="P(beta) and F(beta) on a beta grid")
    common(sp)
    sp.add_argument("--beta", type=parse_complex, default=None)
    sp.add_argument("--span", type=float, default=2.5)
    sp.add_argument("--points", type=int, default=11)
    sp.set_defaults(func=cmd_cv_point)

    sp = sub.add_parser("cv-avg", help="average fidelity")
    common(sp)
    sp.set_defaults(func=cmd_cv_avg, kind="standard,subtracted")

    sp = sub.add_parser("gain-scan", help="average fidelity over gain and comparison amplitude")
    common(sp, lam=0.5, alpha="3")
    sp.add_argument("--g-grid", default=DEFAULT_G_GRID)
    sp.add_argument("--gamma-grid", default=DEFAULT_GAMMA_GRID)
    sp.set_defaults(func=cmd_gain_scan)

    sp = sub.add_parser("boundary-scan", help="unity-gain average fidelity versus lambda")
    common(sp, alpha="3")
    sp.add_argument("--lambda-grid", default=DEFAULT_LAMBDA_GRID)
    sp.set_defaults(func=cmd_boundary_scan)

    sp = sub.add_parser("ndps-curve", help="number-difference fidelity versus lambda")
    common(sp, alpha="3")
    sp.add_argument("--lambda-grid", default="0.01:0.99:0.01")
    sp.set_defaults(func=cmd_ndps_curve)

    sp = sub.add_parser("oracle-check", help="closed forms against the Fock-matrix oracle")
    common(sp)
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--seed", type=int, default=20020101)
    sp.set_defaults(func=cmd_oracle_check)

    sp = sub.add_parser("reproduce-all", help="check every reported number")
    common(sp)
    sp.set_defaults(func=cmd_reproduce_all)
    return p


def validate(args):
    if not 0 <= args.lam < 1:
        raise ConfigError(f"--lambda must lie in [0, 1), got {args.lam}")
    if args.gain < 0:
        raise ConfigError("--gain must be nonnegative")
    if args.order < 8:
        raise ConfigError("--order must be >= 8")
    if not 0 < args.epsilon < 1:
        raise ConfigError("--epsilon must lie in (0, 1)")


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    try:
        args = build_parser().parse_args(argv)
        validate(args)
        result = args.func(args)
        tables, code = result if isinstance(result, tuple) else (result, EXIT_OK)
        for path in write_outputs(tables, _resolved(args), args.out, args.format):
            log.info("wrote %s", path)
        if args.command == "oracle-check" and not tables[0].summary["passed"]:
            code = EXIT_CLAIM
        return code
    except ConvergenceError as exc:
        print(f"convergence failure: {exc} {exc.metadata}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (InvalidParameter, TruncationError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
