"""Shared numerical machinery: factorials, displacement matrices, plane
quadrature and Fock-space truncation."""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.special import eval_genlaguerre, gammaln, logsumexp

from .errors import InvalidParameter, NonFiniteIntegrand
from .kinds import ResourceKind

log = logging.getLogger(__name__)

MAX_DISPLACEMENT_DIM = 1024


class TruncationWarning(UserWarning):
    """Emitted when a truncation level hits the hard cap."""


def as_amplitude(z) -> complex:
    """Coerce ``z`` to a finite Python complex."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidParameter(f"amplitude must be finite, got {z!r}")
    return z


def log_factorial(n):
    """ln(n!) for a nonnegative integer or an integer array."""
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise InvalidParameter("log_factorial needs n >= 0")
    out = gammaln(n_arr + 1.0)
    return float(out) if out.ndim == 0 else out


def displacement_elements(beta, rows, cols) -> np.ndarray:
    r"""Elements :math:`\langle m|D(\beta)|n\rangle` for ``m`` in ``rows``, ``n`` in ``cols``.

    For ``m >= n`` the element is

    .. math::
        \sqrt{n!/m!}\,\beta^{m-n} e^{-|\beta|^2/2} L_n^{(m-n)}(|\beta|^2)

    and the other triangle follows from :math:`D(\beta)^\dagger = D(-\beta)`.
    Magnitudes are assembled in log space. ``beta`` may be an array; the
    result has shape ``beta.shape + (len(rows), len(cols))``.
    """
    b = np.asarray(beta, dtype=complex)[..., None, None]
    m = np.asarray(rows)[:, None]
    n = np.asarray(cols)[None, :]
    lo = np.minimum(m, n)
    d = np.abs(m - n)
    r2 = np.abs(b) ** 2
    lag = eval_genlaguerre(lo, d, r2)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_b = np.where(d == 0, 0.0, d * np.log(np.abs(b)))
        log_mag = 0.5 * (gammaln(lo + 1.0) - gammaln(lo + d + 1.0)) + log_b - 0.5 * r2 + np.log(np.abs(lag))
    mag = np.sign(lag) * np.exp(log_mag)
    unit = np.where(b == 0, 1.0 + 0j, b / np.where(b == 0, 1.0, np.abs(b)))
    phase = np.where(m >= n, unit**d, (-np.conj(unit)) ** d)
    return mag * phase


def displacement_matrix(beta, dim: int) -> np.ndarray:
    """Matrix of the displacement operator in the truncated Fock basis.

    Entry ``(m, n)`` is the exact infinite-space element, see
    :func:`displacement_elements`.
    """
    beta = as_amplitude(beta)
    dim = int(dim)
    if dim < 1:
        raise InvalidParameter("dim must be >= 1")
    if dim > MAX_DISPLACEMENT_DIM:
        raise InvalidParameter(f"dim={dim} exceeds the guard of {MAX_DISPLACEMENT_DIM}")
    if beta == 0:
        return np.eye(dim, dtype=complex)
    idx = np.arange(dim)
    return displacement_elements(beta, idx, idx)


def coherent_amplitudes(z, levels) -> np.ndarray:
    r"""Fock amplitudes :math:`\langle m|z\rangle` of coherent states.

    ``z`` may be an array; the result has shape ``z.shape + (len(levels),)``.
    """
    z = np.asarray(z, dtype=complex)
    levels = np.asarray(levels)
    zz = z[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_amp = -0.5 * np.abs(zz) ** 2 + levels * np.log(zz) - 0.5 * gammaln(levels + 1.0)
        amp = np.exp(log_amp)
    # z = 0 is the vacuum: log(0) gives nan at level 0 and 0 elsewhere
    at_origin = np.broadcast_to(zz == 0, amp.shape)
    amp = np.where(at_origin, (levels == 0).astype(complex), amp)
    return amp


@lru_cache(maxsize=None)
def _hermite_rule(order: int):
    x, w = hermgauss(order)
    # weights for integrating f directly rather than e^{-x^2} f
    log_w = np.log(w) + x**2
    return x, log_w


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product Gauss-Hermite rule on the complex plane.

    One grid of ``order x order`` nodes is placed on each center and scaled by
    ``width``. With several centers, a Gaussian partition of unity splits the
    integrand between the grids so nothing is counted twice.
    """

    order: int = 48
    centers: tuple = (0j,)
    width: float = 1.0
    refine: bool = True

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 8:
            raise InvalidParameter("quadrature order must be an integer >= 8")
        if not (self.width > 0 and math.isfinite(self.width)):
            raise InvalidParameter("quadrature width must be positive")
        centers = tuple(as_amplitude(c) for c in np.atleast_1d(self.centers))
        if not centers:
            raise InvalidParameter("quadrature needs at least one center")
        unique = []
        for c in centers:
            if all(abs(c - u) > 1e-12 * self.width for u in unique):
                unique.append(c)
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "centers", tuple(unique))
        object.__setattr__(self, "width", float(self.width))

    def with_order(self, order):
        return QuadratureSpec(order, self.centers, self.width, self.refine)

    def nodes(self, order=None):
        """All nodes and weights of the rule, grouped per center.

        Returns a list of ``(beta, weight)`` array pairs, one per center, where
        ``weight`` already includes the partition-of-unity factor.
        """
        order = self.order if order is None else order
        x, log_w = _hermite_rule(order)
        s = self.width
        grid = s * (x[:, None] + 1j * x[None, :])
        log_ww = log_w[:, None] + log_w[None, :] + 2 * math.log(s)
        centers = np.array(self.centers)
        out = []
        for k, c in enumerate(centers):
            beta = c + grid
            if len(centers) == 1:
                weight = np.exp(log_ww)
            else:
                logits = -np.abs(beta[..., None] - centers) ** 2 / (2 * s * s)
                share = logits[..., k] - logsumexp(logits, axis=-1)
                weight = np.exp(log_ww + share)
            out.append((beta, weight))
        return out


def _apply_rule(f, spec, order, vectorized):
    total = 0.0
    for beta, weight in spec.nodes(order):
        if vectorized:
            vals = np.asarray(f(beta), dtype=float)
        else:
            vals = np.array([f(b) for b in beta.ravel()], dtype=float).reshape(beta.shape)
        bad = ~np.isfinite(vals)
        if bad.any():
            raise NonFiniteIntegrand(complex(beta[bad][0]))
        total += float(np.sum(vals * weight))
    return total


def integrate_plane(f, spec: QuadratureSpec, vectorized=True):
    """Integrate a real function over the complex plane.

    ``f`` receives a complex ndarray of nodes and returns values of the same
    shape; pass ``vectorized=False`` for a scalar callable. Returns
    ``(value, err_estimate)``. With ``spec.refine`` the value comes from the
    doubled order and the error is the change from the base order.
    """
    value = _apply_rule(f, spec, spec.order, vectorized)
    if not spec.refine:
        return value, 0.0
    fine = _apply_rule(f, spec, 2 * spec.order, vectorized)
    return fine, abs(fine - value)


@dataclass(frozen=True)
class TruncationPolicy:
    """How much photon-number probability may be cut from infinite sums."""

    epsilon: float = 1e-12
    hard_cap: int = 256

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise InvalidParameter("epsilon must lie in (0, 1)")
        if self.hard_cap < 16:
            raise InvalidParameter("hard_cap must be >= 16")


DEFAULT_POLICY = TruncationPolicy()


def schmidt_tail(lam: float, kind, n: int) -> float:
    """Photon-number probability carried by Schmidt terms beyond index ``n``."""
    kind = ResourceKind.parse(kind)
    x = lam * lam
    if x == 0:
        return 0.0
    head = x ** (n + 1)
    if kind is ResourceKind.STANDARD:
        return head
    # sum_{j>=0} (j+a)^2 x^j with a = n+2, times the normalization
    a = n + 2
    s = a * a / (1 - x) + 2 * a * x / (1 - x) ** 2 + x * (1 + x) / (1 - x) ** 3
    return head * s * (1 - x) ** 3 / (1 + x)


def truncation_level(lam: float, kind, policy: TruncationPolicy = DEFAULT_POLICY) -> int:
    """Smallest N whose Schmidt tail beyond N is below ``policy.epsilon``.

    Emits a :class:`TruncationWarning` and returns ``policy.hard_cap`` when
    the cap is reached first.
    """
    if not 0 <= lam < 1:
        raise InvalidParameter(f"lambda must lie in [0, 1), got {lam}")
    for n in range(policy.hard_cap + 1):
        if schmidt_tail(lam, kind, n) < policy.epsilon:
            return n
    warnings.warn(
        f"truncation for lambda={lam} ({ResourceKind.parse(kind).value}) capped at "
        f"{policy.hard_cap}; tail {schmidt_tail(lam, kind, policy.hard_cap):.3g}",
        TruncationWarning,
        stacklevel=2,
    )
    return policy.hard_cap
