"""Two-mode entanglement resources in Schmidt form and their diagnostics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameter
from .kinds import ResourceKind
from .numerics import DEFAULT_POLICY, TruncationPolicy, TruncationWarning, schmidt_tail, truncation_level

__all__ = [
    "ResourceKind",
    "SchmidtResource",
    "HeraldProbability",
    "build_resource",
    "herald_probability",
    "photon_number_distribution",
    "von_neumann_entropy",
    "joint_phase_density",
]

# Above this the second-order expansion in the tap reflectivity is not trustworthy.
HERALD_VALIDITY_LIMIT = 0.1


@dataclass(frozen=True)
class SchmidtResource:
    """A pure state sum_n c_n |n+offset, n+offset> with real c_n >= 0.

    ``coeffs`` already include the normalization, so ``sum(coeffs**2)`` equals
    ``1 - tail_mass``.
    """

    kind: ResourceKind
    lam: float
    coeffs: np.ndarray
    offset: int
    tail_mass: float
    capped: bool = False

    @property
    def levels(self):
        """Fock level carried by each Schmidt coefficient."""
        return np.arange(len(self.coeffs)) + self.offset

    @property
    def cutoff(self):
        return len(self.coeffs) - 1

    def coefficients(self, cutoff):
        """Schmidt coefficients c_0..c_cutoff, extended past the stored truncation."""
        if cutoff <= self.cutoff:
            return self.coeffs[: cutoff + 1]
        return _schmidt_coeffs(self.kind, self.lam, np.arange(cutoff + 1))


def _schmidt_coeffs(kind, lam, n):
    n = np.asarray(n, dtype=float)
    x = lam * lam
    if kind is ResourceKind.STANDARD:
        return math.sqrt(1 - x) * lam**n
    return math.sqrt((1 - x) ** 3 / (1 + x)) * (n + 1) * lam**n


def build_resource(kind, lam: float, policy: TruncationPolicy = DEFAULT_POLICY) -> SchmidtResource:
    """Construct a truncated resource state for squeezing parameter ``lam``."""
    kind = ResourceKind.parse(kind)
    lam = float(lam)
    if not 0 <= lam < 1:
        raise InvalidParameter(f"lambda must lie in [0, 1), got {lam}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        cutoff = truncation_level(lam, kind, policy)
    capped = any(issubclass(w.category, TruncationWarning) for w in caught)
    for w in caught:
        warnings.warn(w.message, w.category, stacklevel=2)
    coeffs = _schmidt_coeffs(kind, lam, np.arange(cutoff + 1))
    coeffs.setflags(write=False)
    return SchmidtResource(
        kind=kind,
        lam=lam,
        coeffs=coeffs,
        offset=kind.offset,
        tail_mass=schmidt_tail(lam, kind, cutoff),
        capped=capped,
    )


class HeraldProbability(NamedTuple):
    probability: float
    perturbative: bool


def herald_probability(theta: float, lam: float) -> HeraldProbability:
    """Chance of the single-photon coincidence that heralds a conditioned resource.

    Valid only to second order in the tap reflectivity; ``perturbative`` is
    False once the value exceeds 0.1.
    """
    if not 0 <= theta <= 1:
        raise InvalidParameter("theta must lie in [0, 1]")
    if not 0 <= lam < 1:
        raise InvalidParameter("lambda must lie in [0, 1)")
    x = lam * lam
    p = theta**4 * (1 + x) / (1 - x) ** 3
    return HeraldProbability(p, p <= HERALD_VALIDITY_LIMIT)


def photon_number_distribution(res: SchmidtResource):
    """(Fock level, probability) pairs of either mode of the resource."""
    probs = res.coeffs**2
    if res.offset:
        return [(0, 0.0)] + [(int(n), float(p)) for n, p in zip(res.levels, probs)]
    return [(int(n), float(p)) for n, p in zip(res.levels, probs)]


def von_neumann_entropy(res: SchmidtResource, base=math.e) -> float:
    """Entanglement entropy -sum p log p of the Schmidt spectrum."""
    if base not in (math.e, 2, "e"):
        raise InvalidParameter("entropy base must be e or 2")
    p = res.coeffs**2
    p = p[p > 0]
    s = float(-np.sum(p * np.log(p)))
    return s / math.log(2) if base == 2 else s


def joint_phase_density(res: SchmidtResource, phi_plus):
    r"""Probability density of the phase sum :math:`\phi_+` on [-pi, pi].

    Computed as :math:`|\sum_n c_n e^{i(n+\mathrm{offset})\phi_+}|^2 / 2\pi`,
    which integrates to ``1 - tail_mass`` by Parseval.
    """
    phi = np.asarray(phi_plus, dtype=float)
    phases = np.exp(1j * np.multiply.outer(phi, res.levels))
    dens = np.abs(phases @ res.coeffs) ** 2 / (2 * math.pi)
    return float(dens) if dens.ndim == 0 else dens
