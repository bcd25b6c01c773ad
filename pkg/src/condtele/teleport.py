"""Position-difference / momentum-sum teleportation with Schmidt resources.

Alice's joint measurement returns ``beta = x_- + i p_+``; Bob displaces by
``gain * beta``. For a resource sum_n c_n |n+o, n+o> the whole protocol acts
on the input as the transfer operator

    T(beta) = pi^{-1/2} sum_n c_n D(g beta) |n+o><n+o| D(-beta),

whose norm squared on the input gives the outcome density P(beta).

Closed forms exist for the standard and photon-subtracted resources with
coherent or cat inputs. Everything else goes through the Schmidt series.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, InvalidParameter, NonFiniteIntegrand, TruncationError
from .kinds import ResourceKind
from .numerics import DEFAULT_POLICY, QuadratureSpec, as_amplitude, integrate_plane, schmidt_tail, TruncationWarning
from .resources import SchmidtResource, build_resource
from .states import Cat, Coherent, FockCoeffs, same_family

CLOSED_FORM = "closed-form"
NUMERIC = "numeric"

QUANTUM_BOUNDARY = 2.0 / 3.0
MAX_QUAD_ERR = 1e-4
DEFAULT_ORDER = 48


@dataclass(frozen=True)
class TeleportConfig:
    """Resource, Bob's gain, and the state the output is compared against.

    ``comparison=None`` compares against the input itself.
    """

    resource: SchmidtResource
    gain: float = 1.0
    comparison: Coherent | Cat | FockCoeffs | None = None

    def __post_init__(self):
        if not (self.gain >= 0 and math.isfinite(self.gain)):
            raise InvalidParameter("gain must be a finite nonnegative number")

    def comparison_for(self, state):
        if self.comparison is None:
            return state
        if not same_family(state, self.comparison):
            raise InvalidParameter(f"cannot compare {state!r} against {self.comparison!r}")
        return self.comparison


@dataclass(frozen=True)
class TeleportPoint:
    beta: complex
    prob_density: float
    fidelity: float | None
    method: str = CLOSED_FORM


class FidelityResult(NamedTuple):
    fbar: float
    err: float
    method: str


def _resource_norm(kind, lam):
    x = lam * lam
    if kind is ResourceKind.STANDARD:
        return 1 - x
    return (1 - x) ** 3 / (1 + x)


def _has_closed_form(kind, state):
    return kind in (ResourceKind.STANDARD, ResourceKind.SUBTRACTED) and isinstance(state, (Coherent, Cat))


def _ratio(num, den):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den > 1e-300, num / den, np.nan)


# closed forms for coherent components --------------------------------------


def _pair_amplitude(kind, lam, g, alpha, gamma, beta):
    """<gamma| T(beta) |alpha> for coherent kets, vectorized over beta."""
    u = gamma - g * beta
    z = alpha - beta
    y = np.conj(u) * z
    expo = (
        -0.5 * np.abs(u) ** 2
        - 0.5 * np.abs(z) ** 2
        + lam * y
        + 1j * (np.imag(-gamma * g * np.conj(beta)) + np.imag(-beta * np.conj(alpha)))
    )
    amp = math.sqrt(_resource_norm(kind, lam) / math.pi) * np.exp(expo)
    if kind is ResourceKind.SUBTRACTED:
        amp = amp * (1 + lam * y)
    return amp


def _pair_overlap(kind, lam, a1, a2, beta):
    """<T(beta) a1 | T(beta) a2> for coherent kets a1, a2."""
    z1 = a1 - beta
    z2 = a2 - beta
    x = np.conj(z1) * z2
    l2 = lam * lam
    expo = (
        -0.5 * np.abs(z1) ** 2
        - 0.5 * np.abs(z2) ** 2
        + l2 * x
        + 1j * (np.imag(-beta * np.conj(a2)) - np.imag(-beta * np.conj(a1)))
    )
    val = _resource_norm(kind, lam) / math.pi * np.exp(expo)
    if kind is ResourceKind.SUBTRACTED:
        val = val * (1 + 3 * l2 * x + l2 * l2 * x * x)
    return val


def _coherent_pf(kind, lam, g, alpha, gamma, beta):
    z2 = np.abs(alpha - beta) ** 2
    u = gamma - g * beta
    y = np.conj(u) * (alpha - beta)
    l2 = lam * lam
    prob = _resource_norm(kind, lam) / math.pi * np.exp((l2 - 1) * z2)
    fid = np.exp(-np.abs(u) ** 2 - l2 * z2 + 2 * lam * np.real(y))
    if kind is ResourceKind.SUBTRACTED:
        poly = l2 * l2 * z2 * z2 + 3 * l2 * z2 + 1
        prob = prob * poly
        fid = fid * np.abs(1 + lam * y) ** 2 / poly
    return prob, fid


def _cat_amplitude(kind, lam, g, state: Cat, comp: Cat, beta):
    total = 0
    for sc in (1, -1):
        for sa in (1, -1):
            weight = (comp.sign if sc < 0 else 1) * (state.sign if sa < 0 else 1)
            total = total + weight * _pair_amplitude(kind, lam, g, sa * state.alpha, sc * comp.alpha, beta)
    return state.norm * comp.norm * total


def _cat_prob(kind, lam, state: Cat, beta):
    total = 0
    for s1 in (1, -1):
        for s2 in (1, -1):
            weight = (state.sign if s1 < 0 else 1) * (state.sign if s2 < 0 else 1)
            total = total + weight * _pair_overlap(kind, lam, s1 * state.alpha, s2 * state.alpha, beta)
    return state.norm**2 * np.real(total)


def _closed_amplitude(kind, lam, g, state, comp, beta):
    if isinstance(state, Coherent):
        return _pair_amplitude(kind, lam, g, state.alpha, comp.alpha, beta)
    return _cat_amplitude(kind, lam, g, state, comp, beta)


def _closed_prob(kind, lam, state, beta):
    if isinstance(state, Coherent):
        return _coherent_pf(kind, lam, 0.0, state.alpha, 0.0, beta)[0]
    return _cat_prob(kind, lam, state, beta)


# generalized Schmidt-series path -------------------------------------------


def _components(state):
    """Coherent amplitudes making up ``state``, or None for a raw Fock vector."""
    if isinstance(state, Coherent):
        return np.array([state.alpha])
    if isinstance(state, Cat):
        return np.array([state.alpha, -state.alpha])
    return None


SERIES_TOL = 1e-15
SERIES_CAP = 1024


def _uniform_cutoff(res: SchmidtResource, tol):
    # Cauchy-Schwarz: the dropped part of the overlap is at most sqrt(tail mass)
    n = res.cutoff
    while schmidt_tail(res.lam, res.kind, n) >= tol * tol:
        n += 1
        if n > SERIES_CAP:
            raise TruncationError("overlap series needs more than the level cap", required_dim=SERIES_CAP)
    return n


def series_cutoff(res: SchmidtResource, g, state, comp, beta, tol=SERIES_TOL):
    """Schmidt index past which the overlap series is below ``tol`` at every beta.

    The resource truncation only bounds P(beta). The dropped part of the
    overlap is at most the square root of the Schmidt tail, which gives a
    beta-independent ceiling. For coherent components displaced to z and u
    the terms are also bounded by c_n (|z||u|)^n / n! e^{-(|z|^2+|u|^2)/2},
    which usually stops much earlier.
    """
    if res.lam == 0:
        return res.cutoff
    ceiling = _uniform_cutoff(res, tol)
    a_comp, c_comp = _components(state), _components(comp)
    if a_comp is None or c_comp is None:
        return ceiling
    beta = np.atleast_1d(np.asarray(beta, dtype=complex)).ravel()
    za = np.abs(a_comp[:, None] - beta[None, :])
    zu = np.abs(c_comp[:, None] - g * beta[None, :])
    x = (za[:, None, :] * zu[None, :, :]).ravel()
    damp = -0.5 * (za[:, None, :] ** 2 + zu[None, :, :] ** 2).ravel()
    lam = res.lam
    log_tol = math.log(tol)
    log_c = np.log(res.coefficients(ceiling))
    # whole-series bound: sum_n c_n x^n/n! <= c_0 (1 + lam x) e^{lam x}
    alive = log_c[0] + np.log1p(lam * x) + lam * x + damp > log_tol
    if not alive.any():
        return res.cutoff
    x, damp = x[alive], damp[alive]
    with np.errstate(divide="ignore"):
        log_x = np.log(x)
    for n in range(res.cutoff, ceiling):
        nlx = n * log_x if n else np.zeros_like(log_x)
        term = log_c[n] + nlx - math.lgamma(n + 1) + damp
        if np.all((term < log_tol) & (n >= 2 * lam * x)):
            return n
    return ceiling


def _series_terms(res, g, state, comp, beta):
    n_max = series_cutoff(res, g, state, comp, beta)
    coeffs = res.coefficients(n_max)
    levels = np.arange(n_max + 1) + res.offset
    inp = state.displaced(-np.asarray(beta), levels)
    cmp_ = comp.displaced(-g * np.asarray(beta), levels)
    amp = (np.conj(cmp_) * inp) @ coeffs / math.sqrt(math.pi)
    prob = (np.abs(inp) ** 2) @ (coeffs**2) / math.pi
    return amp, prob


def _check_beta(beta):
    try:
        return as_amplitude(beta)
    except InvalidParameter as exc:
        raise InvalidParameter(f"non-finite measurement outcome beta={beta!r}") from exc


def _point(beta, prob, fid, method):
    prob = float(prob)
    if not math.isfinite(prob):
        raise NonFiniteIntegrand(beta)
    fid = float(fid)
    return TeleportPoint(beta, prob, None if math.isnan(fid) else fid, method)


def coherent_point(cfg: TeleportConfig, alpha, beta) -> TeleportPoint:
    """Outcome density and conditional fidelity for a coherent input.

    Uses the closed forms for the standard and subtracted resources, the
    Schmidt series (``method='numeric'``) for the photon-added one.
    """
    beta = _check_beta(beta)
    state = Coherent(alpha)
    comp = cfg.comparison_for(state)
    res = cfg.resource
    if not _has_closed_form(res.kind, comp):
        return transfer_point(cfg, state, beta)
    with np.errstate(over="ignore", invalid="ignore"):
        prob, fid = _coherent_pf(res.kind, res.lam, cfg.gain, state.alpha, comp.alpha, beta)
    if not (np.isfinite(prob) and np.isfinite(fid)):
        raise NonFiniteIntegrand(beta)
    return _point(beta, prob, fid, CLOSED_FORM)


def cat_point(cfg: TeleportConfig, alpha, parity, beta) -> TeleportPoint:
    """Outcome density and conditional fidelity for a cat-state input."""
    beta = _check_beta(beta)
    state = Cat(alpha, parity)
    comp = cfg.comparison_for(state)
    res = cfg.resource
    if not _has_closed_form(res.kind, comp):
        return transfer_point(cfg, state, beta)
    with np.errstate(over="ignore", invalid="ignore"):
        amp = _cat_amplitude(res.kind, res.lam, cfg.gain, state, comp, beta)
        prob = _cat_prob(res.kind, res.lam, state, beta)
    if not (np.isfinite(amp) and np.isfinite(prob)):
        raise NonFiniteIntegrand(beta)
    return _point(beta, prob, _ratio(abs(amp) ** 2, prob), CLOSED_FORM)


def transfer_point(cfg: TeleportConfig, state, beta) -> TeleportPoint:
    """Generic outcome density and fidelity through the Schmidt series.

    Works for every resource kind and any input. The displaced Fock
    amplitudes are exact, so the only approximation is the resource
    truncation, whose tail is bounded by ``resource.tail_mass``.
    """
    beta = _check_beta(beta)
    comp = cfg.comparison_for(state)
    amp, prob = _series_terms(cfg.resource, cfg.gain, state, comp, np.asarray(beta))
    return _point(beta, prob, _ratio(abs(amp) ** 2, prob), NUMERIC)


def default_quadrature(state, lam, order=DEFAULT_ORDER, refine=True) -> QuadratureSpec:
    """Grid centered on the input's coherent components, width 1/sqrt(1-lam^2)."""
    amp = getattr(state, "amplitude", None)
    if amp is None:
        centers = (0j,)
    elif isinstance(state, Cat):
        centers = (amp, -amp)
    else:
        centers = (amp,)
    return QuadratureSpec(order, centers, 1.0 / math.sqrt(1 - lam * lam), refine)


def fidelity_integrand(cfg: TeleportConfig, state, method="auto"):
    """Vectorized |<comparison|T(beta)|input>|^2 and the path used to compute it."""
    comp = cfg.comparison_for(state)
    res = cfg.resource
    if method == "auto":
        method = CLOSED_FORM if _has_closed_form(res.kind, comp) else NUMERIC
    if method == CLOSED_FORM:
        if not _has_closed_form(res.kind, comp):
            raise InvalidParameter(f"no closed form for {res.kind.value} with {type(state).__name__}")

        def f(beta):
            return np.abs(_closed_amplitude(res.kind, res.lam, cfg.gain, state, comp, beta)) ** 2

    else:

        def f(beta):
            return np.abs(_series_terms(res, cfg.gain, state, comp, beta)[0]) ** 2

    return f, method


def probability_integrand(cfg: TeleportConfig, state, method="auto"):
    """Vectorized outcome density P(beta)."""
    res = cfg.resource
    if method == "auto":
        method = CLOSED_FORM if _has_closed_form(res.kind, state) else NUMERIC
    if method == CLOSED_FORM:
        return lambda beta: _closed_prob(res.kind, res.lam, state, beta)
    return lambda beta: _series_terms(res, cfg.gain, state, state, beta)[1]


def average_fidelity(cfg: TeleportConfig, state, quad: QuadratureSpec | None = None, method="auto") -> FidelityResult:
    """Outcome-averaged fidelity, integrating |<comparison|T|input>|^2 directly.

    Raises :class:`ConvergenceError` when order doubling moves the value by
    more than 1e-4.
    """
    if quad is None:
        quad = default_quadrature(state, cfg.resource.lam)
    f, method = fidelity_integrand(cfg, state, method)
    fbar, err = integrate_plane(f, quad)
    if err > MAX_QUAD_ERR:
        raise ConvergenceError(
            f"average fidelity did not converge (err={err:.3g})",
            {"order": quad.order, "centers": [str(c) for c in quad.centers], "width": quad.width, "err": err},
        )
    return FidelityResult(fbar, err, method)


def _map_ordered(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


class ScanRow(NamedTuple):
    g: float
    gamma: complex
    fbar: float
    err: float


@dataclass(frozen=True)
class GainScan:
    rows: list
    best: ScanRow


def gain_gamma_scan(state, resource: SchmidtResource, g_grid, gamma_grid, quad=None, workers=None) -> GainScan:
    """Average fidelity over every (gain, comparison amplitude) pair."""
    g_grid = [float(g) for g in g_grid]
    gamma_grid = [as_amplitude(c) for c in gamma_grid]
    if not g_grid or not gamma_grid:
        raise InvalidParameter("gain and gamma grids must be non-empty")
    if quad is None:
        quad = default_quadrature(state, resource.lam)
    pairs = [(g, c) for g in g_grid for c in gamma_grid]

    def one(pair):
        g, c = pair
        cfg = TeleportConfig(resource, g, state.like(c))
        fbar, err, _ = average_fidelity(cfg, state, quad)
        return ScanRow(g, c, fbar, err)

    rows = _map_ordered(one, pairs, workers)
    best = max(rows, key=lambda r: r.fbar)
    return GainScan(rows, best)


@dataclass(frozen=True)
class BoundaryScan:
    lambdas: np.ndarray
    fbar_standard: np.ndarray
    fbar_subtracted: np.ndarray
    err: np.ndarray
    crossing_standard: float | None
    crossing_subtracted: float | None
    quantum_window: tuple | None
    gap_argmax_lambda: float
    gap_absolute: float
    gap_relative: float
    meta: dict = field(default_factory=dict)


def crossing(xs, ys, level):
    """First upward crossing of ``level`` by linear interpolation, or None."""
    for i in range(len(xs) - 1):
        if ys[i] < level <= ys[i + 1]:
            t = (level - ys[i]) / (ys[i + 1] - ys[i])
            return float(xs[i] + t * (xs[i + 1] - xs[i]))
    if len(ys) and ys[0] >= level:
        return float(xs[0])
    return None


def default_lambda_grid(step=0.01, stop=0.95):
    return np.round(np.arange(0.0, stop + step / 2, step), 10)


def boundary_scan(alpha=3.0, lambda_grid=None, order=DEFAULT_ORDER, policy=DEFAULT_POLICY, workers=None) -> BoundaryScan:
    """Unity-gain average fidelity against the 2/3 boundary, standard vs subtracted."""
    lambdas = default_lambda_grid() if lambda_grid is None else np.asarray(lambda_grid, dtype=float)
    if lambdas.size == 0:
        raise InvalidParameter("lambda grid must be non-empty")
    state = Coherent(alpha)

    # both kinds go through closed forms, so a capped truncation is harmless here
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        jobs = [build_resource(k, lam, policy) for k in (ResourceKind.STANDARD, ResourceKind.SUBTRACTED) for lam in lambdas]

    def one(res):
        fbar, err, _ = average_fidelity(TeleportConfig(res, 1.0), state, default_quadrature(state, res.lam, order))
        return fbar, err

    out = np.array(_map_ordered(one, jobs, workers))
    n = lambdas.size
    std, sub = out[:n, 0], out[n:, 0]
    err = np.maximum(out[:n, 1], out[n:, 1])

    c_std = crossing(lambdas, std, QUANTUM_BOUNDARY)
    c_sub = crossing(lambdas, sub, QUANTUM_BOUNDARY)
    window = None
    if c_sub is not None and (c_std is None or c_sub < c_std):
        window = (c_sub, c_std if c_std is not None else float(lambdas[-1]))

    gap = sub - std
    i = int(np.argmax(gap))
    return BoundaryScan(
        lambdas=lambdas,
        fbar_standard=std,
        fbar_subtracted=sub,
        err=err,
        crossing_standard=c_std,
        crossing_subtracted=c_sub,
        quantum_window=window,
        gap_argmax_lambda=float(lambdas[i]),
        gap_absolute=float(gap[i]),
        gap_relative=float(gap[i] / std[i]),
        meta={"alpha": str(complex(alpha)), "gain": 1.0, "order": order},
    )
