"""Comparison measures: single-qubit entropy of entanglement and the three-tangle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedSizeError
from .state import ReducedDensityMatrix, StateVector, reduce_qubit

EIGEN_FLOOR = 1e-12


def entropy_of_rdm(r: ReducedDensityMatrix) -> float:
    """Von Neumann entropy in bits, with ``0 log 0 = 0``."""
    small, large = r.eigenvalues()
    # an eigenvalue under the density-matrix tolerance is round-off from a pure marginal
    if small <= EIGEN_FLOOR:
        return 0.0
    return float(-small * np.log2(small) - large * np.log2(large))


def entropy_measure(s: StateVector, l: int = 1) -> float:
    """Entropy of qubit ``l`` against the rest of the register."""
    return entropy_of_rdm(reduce_qubit(s, l))


@dataclass(frozen=True)
class TangleTerms:
    d1: float
    d2: float
    d3: float

    @property
    def tangle(self) -> float:
        return 4 * abs(self.d1 - 2 * self.d2 + 4 * self.d3)


def tangle_terms(s: StateVector) -> TangleTerms:
    """The quartic polynomials ``d1, d2, d3`` of a real three-qubit state."""
    if s.n != 3:
        raise UnsupportedSizeError(f"three-tangle needs n = 3, got n = {s.n}")
    a = s.real_amplitudes()
    a000, a001, a010, a011, a100, a101, a110, a111 = a
    d1 = a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return TangleTerms(float(d1), float(d2), float(d3))


def three_tangle(s: StateVector) -> float:
    return tangle_terms(s).tangle
