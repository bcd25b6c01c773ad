"""States to be teleported: coherent states, cat states and raw Fock vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .numerics import as_amplitude, coherent_amplitudes, displacement_elements

EVEN, ODD = "even", "odd"


def _parity_sign(parity):
    if parity == EVEN:
        return 1
    if parity == ODD:
        return -1
    raise InvalidParameter(f"parity must be 'even' or 'odd', got {parity!r}")


def _tail_cutoff(probs, eps):
    """Smallest N with sum(probs[N+1:]) < eps."""
    tail = np.concatenate([np.cumsum(probs[::-1])[::-1][1:], [0.0]])
    return int(np.argmax(tail < eps))


def _search_length(mean_photons):
    return int(mean_photons + 12 * math.sqrt(mean_photons + 1) + 40)


@dataclass(frozen=True)
class Coherent:
    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_amplitude(self.alpha))

    @property
    def amplitude(self):
        return self.alpha

    def fock(self, cutoff):
        return coherent_amplitudes(self.alpha, np.arange(cutoff + 1))

    def displaced(self, shift, levels):
        r"""Amplitudes :math:`\langle m|D(s)|\alpha\rangle` for each shift ``s``."""
        s = np.asarray(shift, dtype=complex)
        phase = np.exp(1j * np.imag(s * np.conj(self.alpha)))
        return phase[..., None] * coherent_amplitudes(self.alpha + s, levels)

    def cutoff(self, eps=1e-12):
        n = _search_length(abs(self.alpha) ** 2)
        return _tail_cutoff(np.abs(self.fock(n)) ** 2, eps)

    def like(self, amplitude):
        """A state of the same family with another amplitude."""
        return Coherent(amplitude)


@dataclass(frozen=True)
class Cat:
    """Normalized superposition of |alpha> and |-alpha>."""

    alpha: complex
    parity: str = EVEN

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_amplitude(self.alpha))
        sign = _parity_sign(self.parity)
        if sign < 0 and abs(self.alpha) ** 2 == 0:
            raise InvalidParameter("an odd cat needs a nonzero amplitude")

    @property
    def amplitude(self):
        return self.alpha

    @property
    def sign(self):
        return _parity_sign(self.parity)

    @property
    def norm(self):
        x = 2 * abs(self.alpha) ** 2
        if self.sign < 0:
            return 1.0 / math.sqrt(-2 * math.expm1(-x))
        return 1.0 / math.sqrt(2 + 2 * math.exp(-x))

    def fock(self, cutoff):
        n = np.arange(cutoff + 1)
        # <n|-alpha> = (-1)^n <n|alpha>, so the wrong parity vanishes exactly
        return self.norm * coherent_amplitudes(self.alpha, n) * (1 + self.sign * (-1.0) ** n)

    def displaced(self, shift, levels):
        plus = Coherent(self.alpha).displaced(shift, levels)
        minus = Coherent(-self.alpha).displaced(shift, levels)
        return self.norm * (plus + self.sign * minus)

    def cutoff(self, eps=1e-12):
        n = _search_length(abs(self.alpha) ** 2)
        return _tail_cutoff(np.abs(self.fock(n)) ** 2, eps)

    def like(self, amplitude):
        return Cat(amplitude, self.parity)


@dataclass(frozen=True, eq=False)
class FockCoeffs:
    """An arbitrary pure state given by its Fock amplitudes."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0 or not np.all(np.isfinite(c)):
            raise InvalidParameter("Fock coefficients must be finite and non-empty")
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1) > 1e-12:
            raise InvalidParameter(f"Fock coefficients must be normalized, norm^2 = {norm!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def amplitude(self):
        return None

    def fock(self, cutoff):
        out = np.zeros(cutoff + 1, dtype=complex)
        k = min(cutoff + 1, self.coeffs.size)
        out[:k] = self.coeffs[:k]
        return out

    def displaced(self, shift, levels):
        cols = np.arange(self.coeffs.size)
        return displacement_elements(shift, np.asarray(levels), cols) @ self.coeffs

    def cutoff(self, eps=1e-12):
        return _tail_cutoff(np.abs(self.coeffs) ** 2, eps)

    def like(self, amplitude):
        raise InvalidParameter("raw Fock states have no amplitude family")


InputState = Coherent | Cat | FockCoeffs


def same_family(a, b):
    """Whether ``b`` can serve as the comparison state for input ``a``."""
    if isinstance(a, Cat) and isinstance(b, Cat):
        return a.parity == b.parity
    return type(a) is type(b) or isinstance(a, FockCoeffs) or isinstance(b, FockCoeffs)
