"""Brute-force reference layer built from truncated Fock matrices.

Nothing here uses the closed-form outcome densities or fidelities; the
transfer operator is assembled literally as D(g beta) P_c D(-beta) from
displacement matrices, and number-difference statistics are tallied on the
joint two-mode lattice.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import TruncationError
from .numerics import as_amplitude, displacement_matrix
from .resources import SchmidtResource
from .teleport import TeleportPoint

ORACLE = "oracle"
MAX_ORACLE_DIM = 256


@dataclass(frozen=True, eq=False)
class TruncatedKet:
    coeffs: np.ndarray

    @property
    def dim(self):
        return self.coeffs.size

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def overlap(self, other: "TruncatedKet") -> complex:
        """<self|other> on the common support."""
        k = min(self.dim, other.dim)
        return complex(np.vdot(self.coeffs[:k], other.coeffs[:k]))


@lru_cache(maxsize=512)
def _cached_displacement(beta: complex, dim: int):
    mat = displacement_matrix(beta, dim)
    mat.setflags(write=False)
    return mat


def oracle_dim(res: SchmidtResource, alpha_abs2: float, beta_abs2: float) -> int:
    """Default truncation: 4 (ceil|alpha|^2 + ceil|beta|^2) + resource cutoff, capped at 256."""
    need = 4 * (math.ceil(alpha_abs2) + math.ceil(beta_abs2)) + res.cutoff + res.offset + 1
    return int(min(max(need, 16), MAX_ORACLE_DIM))


def ket(state, dim) -> TruncatedKet:
    return TruncatedKet(np.asarray(state.fock(dim - 1), dtype=complex))


def apply_transfer(res: SchmidtResource, beta, g: float, psi: TruncatedKet) -> TruncatedKet:
    """T(beta)|psi> on a truncated space; its norm squared is P(beta)."""
    beta = as_amplitude(beta)
    dim = psi.dim
    top = res.cutoff + res.offset
    if top >= dim:
        raise TruncationError(f"oracle dim {dim} cannot hold resource level {top}", required_dim=top + 1)
    # every resource level the truncated space can hold, not just the stored cutoff
    proj = np.zeros(dim)
    proj[res.offset :] = res.coefficients(dim - 1 - res.offset)
    inner = _cached_displacement(-beta, dim) @ psi.coeffs
    out = _cached_displacement(complex(g * beta), dim) @ (proj * inner)
    return TruncatedKet(out / math.sqrt(math.pi))


def oracle_point(res: SchmidtResource, state, beta, g: float, comparison=None, dim=None) -> TeleportPoint:
    """Outcome density and fidelity from the matrix transfer operator."""
    beta = as_amplitude(beta)
    comparison = state if comparison is None else comparison
    if dim is None:
        amps = [abs(a) ** 2 for a in (getattr(state, "amplitude", None), getattr(comparison, "amplitude", None)) if a is not None]
        dim = oracle_dim(res, max(amps, default=0.0), abs(beta) ** 2 * max(1.0, g * g))
        # the amplitude rule alone can undercut the input's own support at small lambda
        dim = min(max(dim, state.cutoff() + 1, comparison.cutoff() + 1), MAX_ORACLE_DIM)
    psi = ket(state, dim)
    if getattr(state, "amplitude", None) is not None and state.cutoff() >= dim:
        raise TruncationError(f"oracle dim {dim} truncates the input", required_dim=state.cutoff() + 1)
    out = apply_transfer(res, beta, g, psi)
    prob = out.norm**2
    if prob < 1e-300:
        return TeleportPoint(beta, prob, None, ORACLE)
    fid = abs(ket(comparison, dim).overlap(out)) ** 2 / prob
    return TeleportPoint(beta, prob, fid, ORACLE)


def nd_lattice_probabilities(res: SchmidtResource, input_coeffs) -> dict:
    """Number-difference distribution tallied over the joint lattice.

    Input level m and Alice's resource level j = n + offset occur with weight
    |c_m|^2 s_n^2; the outcome is k = m - j.
    """
    c2 = np.abs(np.asarray(input_coeffs)) ** 2
    s2 = np.asarray(res.coeffs) ** 2
    probs = defaultdict(float)
    for m in range(c2.size):
        for n in range(s2.size):
            probs[m - (n + res.offset)] += c2[m] * s2[n]
    return dict(sorted(probs.items()))
