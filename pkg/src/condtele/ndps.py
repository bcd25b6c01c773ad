"""Number-difference, phase-sum teleportation.

Alice measures the photon-number difference k between the input mode and her
half of the resource. For a resource sum_n s_n |n+o, n+o> and input
coefficients c_m, Bob is left (after his number shift) with

    sum_n c_{n+o+k} s_n |n+o+k>  / sqrt(P(k)),   P(k) = sum_n |c_{n+o+k}|^2 s_n^2,

and the fidelity with the input is |sum_n |c_{n+o+k}|^2 s_n|^2 / P(k).
Negative outcomes are outside the usual treatment; they are included only
so the outcome distribution can be checked for completeness.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .kinds import ResourceKind
from .numerics import DEFAULT_POLICY, TruncationWarning
from .resources import SchmidtResource, build_resource


@dataclass(frozen=True, eq=False)
class NdpsPoint:
    """One number-difference outcome. ``fidelity`` is None when P(k) = 0."""

    k: int
    prob: float
    fidelity: float | None
    out_coeffs: np.ndarray
    extended: bool = False


@dataclass(frozen=True, eq=False)
class NdpsDistribution:
    points: list
    total_probability: float
    nonnegative_probability: float

    def probabilities(self):
        return {p.k: p.prob for p in self.points}


def input_coeffs(state, cutoff: int) -> np.ndarray:
    """Fock coefficients c_0..c_cutoff of the input state."""
    if cutoff < 0:
        raise InvalidParameter("cutoff must be >= 0")
    return np.asarray(state.fock(int(cutoff)), dtype=complex)


def ndps_point(res: SchmidtResource, c, k: int) -> NdpsPoint:
    """Outcome probability, fidelity and Bob's normalized state for outcome ``k``."""
    c = np.asarray(c, dtype=complex)
    k = int(k)
    s = np.asarray(res.coeffs)
    n = np.arange(s.size)
    m = n + res.offset + k
    ok = (m >= 0) & (m < c.size)
    cm, sn, m = c[m[ok]], s[ok], m[ok]

    prob = float(np.sum(np.abs(cm) ** 2 * sn**2))
    out = np.zeros(c.size, dtype=complex)
    if prob > 0:
        out[m] = cm * sn / np.sqrt(prob)
        fid = float(np.sum(np.abs(cm) ** 2 * sn) ** 2 / prob)
    else:
        fid = None
    out.setflags(write=False)
    return NdpsPoint(k, prob, fid, out, extended=k < 0)


def ndps_distribution(res: SchmidtResource, c, k_max: int) -> NdpsDistribution:
    """Outcomes k = k_min..k_max, where k_min reaches every negative outcome."""
    if k_max < 0:
        raise InvalidParameter("k_max must be >= 0")
    c = np.asarray(c, dtype=complex)
    k_min = -(res.cutoff + res.offset)
    points = [ndps_point(res, c, k) for k in range(k_min, int(k_max) + 1)]
    total = float(sum(p.prob for p in points))
    nonneg = float(sum(p.prob for p in points if p.k >= 0))
    return NdpsDistribution(points, total, nonneg)


def ndps_fidelity_curve(kind, state, k: int, lambda_grid, policy=DEFAULT_POLICY):
    """(lambda, F(k)) along the grid; F is None where P(k) vanishes."""
    kind = ResourceKind.parse(kind)
    lambdas = [float(x) for x in lambda_grid]
    if not lambdas:
        raise InvalidParameter("lambda grid must be non-empty")
    support = state.cutoff(policy.epsilon)
    curve = []
    for lam in lambdas:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", TruncationWarning)
            res = build_resource(kind, lam, policy)
        # a capped resource is harmless when it still spans the input's support
        if res.cutoff + res.offset < support + abs(k):
            for w in caught:
                warnings.warn(w.message, w.category, stacklevel=2)
        cutoff = max(support, res.cutoff + res.offset + abs(k)) + 1
        pt = ndps_point(res, input_coeffs(state, cutoff), k)
        curve.append((lam, pt.fidelity))
    return curve
