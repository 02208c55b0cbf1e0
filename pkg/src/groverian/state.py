"""Dense n-qubit pure states, product states and single-qubit reductions.

Amplitude index ``i`` is read as the bitstring ``i_1 i_2 ... i_n`` with qubit 1
the most significant bit, so ``amplitudes[0b011]`` is the coefficient of
``|011>``.  Qubits are labelled 1..n throughout the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, UnsupportedSizeError

MAX_QUBITS = 20
NORM_TOL = 1e-9
REAL_TOL = 1e-12

_HALF_PI = np.pi / 2
_TWO_PI = 2 * np.pi
# slack for angles produced by floating point arithmetic
_ANGLE_SLACK = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of ``n`` qubits.

    Construction validates the amplitude count and the norm; inputs that are
    not normalized to within ``1e-9`` are rejected, never rescaled.
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise DomainError(f"qubit count must be a positive integer, got {self.n!r}")
        if self.n > MAX_QUBITS:
            raise UnsupportedSizeError(f"n={self.n} exceeds the dense cap of {MAX_QUBITS} qubits")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2**self.n:
            raise DomainError(f"expected {2**self.n} amplitudes for n={self.n}, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized: sum |a_i|^2 = {norm!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex] | np.ndarray) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = int(round(np.log2(max(amps.size, 1))))
        if amps.size < 2 or 2**n != amps.size:
            raise DomainError(f"amplitude count {amps.size} is not a power of two >= 2")
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.amplitudes.imag) < REAL_TOL))

    def real_amplitudes(self) -> np.ndarray:
        """Real parts of the amplitudes; raises if any imaginary part is non-negligible."""
        if not self.is_real:
            raise DomainError("state has complex amplitudes; a real-coefficient state is required")
        return self.amplitudes.real.copy()

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis of length 2 per qubit (qubit 1 first)."""
        return self.amplitudes.reshape((2,) * self.n)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.amplitudes, other.amplitudes)

    def __repr__(self):
        return f"StateVector(n={self.n}, amplitudes={np.array2string(self.amplitudes, precision=6)})"

    def allclose(self, other: "StateVector", atol: float = 1e-12, up_to_phase: bool = False) -> bool:
        if self.n != other.n:
            return False
        a, b = self.amplitudes, other.amplitudes
        if up_to_phase:
            inner = np.vdot(a, b)
            if abs(inner) > 0:
                b = b * (np.conj(inner) / abs(inner))
        return bool(np.allclose(a, b, rtol=0, atol=atol))


@dataclass(frozen=True)
class ProductState:
    """Angles of a product state ``|e_1> (x) ... (x) |e_n>``.

    Each factor is ``cos(theta_k)|0> + exp(i phi_k) sin(theta_k)|1>`` with
    ``theta_k`` in ``[-pi/2, pi/2]`` and ``phi_k`` in ``[0, 2pi)``.  The doubled
    theta range lets every real product state be written with zero phases.
    """

    thetas: tuple[float, ...]
    phis: tuple[float, ...] = ()

    def __post_init__(self):
        thetas = tuple(float(t) for t in self.thetas)
        phis = tuple(float(p) for p in self.phis) if len(self.phis) else (0.0,) * len(thetas)
        if len(thetas) == 0:
            raise DomainError("a product state needs at least one qubit")
        if len(phis) != len(thetas):
            raise DomainError(f"{len(thetas)} thetas but {len(phis)} phis")
        for t in thetas:
            if not -_HALF_PI - _ANGLE_SLACK <= t <= _HALF_PI + _ANGLE_SLACK:
                raise DomainError(f"theta {t!r} outside [-pi/2, pi/2]")
        for p in phis:
            if not -_ANGLE_SLACK <= p < _TWO_PI + _ANGLE_SLACK:
                raise DomainError(f"phi {p!r} outside [0, 2pi)")
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "phis", phis)

    @property
    def n(self) -> int:
        return len(self.thetas)

    @classmethod
    def from_vectors(cls, vectors: np.ndarray) -> "ProductState":
        """Angles of the product of the given local vectors, ignoring per-qubit global phase.

        ``vectors`` has shape ``(n, 2)``.  Real vectors map to zero phases and a
        signed theta; complex vectors are rotated so their ``|0>`` component is
        real and non-negative.
        """
        vectors = np.asarray(vectors)
        thetas, phis = [], []
        for v in vectors:
            v = v / np.linalg.norm(v)
            if np.all(np.abs(np.imag(v)) < REAL_TOL):
                c, s = float(np.real(v[0])), float(np.real(v[1]))
                if c < 0 or (c == 0 and s < 0):
                    c, s = -c, -s
                thetas.append(float(np.arctan2(s, c)))
                phis.append(0.0)
            else:
                c = complex(v[0])
                phase = np.exp(-1j * np.angle(c)) if abs(c) > 0 else 1.0
                c, s = abs(c), v[1] * phase
                thetas.append(float(np.arctan2(abs(s), c)))
                phis.append(float(np.angle(s) % _TWO_PI) if abs(s) > 0 else 0.0)
        return cls(tuple(thetas), tuple(min(p, np.nextafter(_TWO_PI, 0)) for p in phis))

    def local_vectors(self) -> np.ndarray:
        """Array of shape ``(n, 2)`` holding each factor's two amplitudes."""
        t = np.asarray(self.thetas)
        p = np.asarray(self.phis)
        return np.stack([np.cos(t) + 0j, np.exp(1j * p) * np.sin(t)], axis=1)


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """2x2 single-qubit density matrix."""

    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=np.complex128)
        if rho.shape != (2, 2):
            raise DomainError(f"reduced density matrix must be 2x2, got shape {rho.shape}")
        if abs(rho[1, 0] - np.conj(rho[0, 1])) > 1e-12 or abs(rho[0, 0].imag) > 1e-12 or abs(rho[1, 1].imag) > 1e-12:
            raise DomainError("reduced density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > 1e-12:
            raise DomainError(f"reduced density matrix has trace {np.trace(rho)!r}")
        ev = np.linalg.eigvalsh(rho)
        if ev.min() < -1e-12 or ev.max() > 1 + 1e-12:
            raise DomainError(f"eigenvalues {ev} outside [0, 1]")
        object.__setattr__(self, "entries", _frozen(rho))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues ``(1 - |s|)/2, (1 + |s|)/2`` from the Bloch-vector length."""
        r = bloch_from_rdm(self).norm()
        r = min(r, 1.0)
        return np.array([(1 - r) / 2, (1 + r) / 2])


@dataclass(frozen=True)
class BlochVector:
    s_x: float
    s_y: float
    s_z: float

    def __post_init__(self):
        if self.s_x**2 + self.s_y**2 + self.s_z**2 > 1 + 1e-12:
            raise DomainError(f"Bloch vector {self} lies outside the unit ball")

    def norm(self) -> float:
        return float(np.sqrt(self.s_x**2 + self.s_y**2 + self.s_z**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.s_x, self.s_y, self.s_z])

    def to_rdm(self) -> ReducedDensityMatrix:
        """Reassemble ``(I + s . sigma) / 2``."""
        sx, sy, sz = self.s_x, self.s_y, self.s_z
        return ReducedDensityMatrix(0.5 * np.array([[1 + sz, sx - 1j * sy], [sx + 1j * sy, 1 - sz]]))


def make_named(name: str, n: int, index: int | None = None) -> StateVector:
    """Build one of the standard states ``uniform``, ``basis``, ``ghz`` or ``w``.

    ``basis`` needs ``index``; ``ghz`` and ``w`` need ``n >= 2``.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"qubit count must be >= 1, got {n!r}")
    if n > MAX_QUBITS:
        raise UnsupportedSizeError(f"n={n} exceeds the dense cap of {MAX_QUBITS} qubits")
    dim = 2**n
    amps = np.zeros(dim, dtype=np.complex128)
    if name == "uniform":
        amps[:] = 1 / np.sqrt(dim)
    elif name == "basis":
        if index is None or not 0 <= index < dim:
            raise DomainError(f"basis index {index!r} out of range for n={n}")
        amps[index] = 1
    elif name in ("ghz", "w"):
        if n < 2:
            raise DomainError(f"{name} state requires n >= 2")
        if name == "ghz":
            amps[0] = amps[-1] = 1 / np.sqrt(2)
        else:
            for k in range(n):
                amps[1 << k] = 1 / np.sqrt(n)
    else:
        raise DomainError(f"unknown named state {name!r}")
    return StateVector(n, amps)


def product_to_state(p: ProductState) -> StateVector:
    """Expand a product state into its ``2**n`` amplitudes."""
    amps = np.ones(1, dtype=np.complex128)
    for v in p.local_vectors():
        amps = np.kron(amps, v)
    return StateVector(p.n, amps / np.linalg.norm(amps))


def overlap(s: StateVector, p: ProductState) -> complex:
    """Inner product ``<e|psi>`` of the product state with ``s``."""
    if s.n != p.n:
        raise DomainError(f"dimension mismatch: state has {s.n} qubits, product state {p.n}")
    x = s.tensor()
    # contract qubits from the last one so axis indices stay valid
    for v in p.local_vectors()[::-1]:
        x = x @ np.conj(v)
    return complex(x)


def reduce_qubit(s: StateVector, l: int) -> ReducedDensityMatrix:
    """Partial trace over every qubit except ``l`` (1-based)."""
    if not 1 <= l <= s.n:
        raise DomainError(f"qubit index {l} out of range 1..{s.n}")
    psi = s.amplitudes.reshape(2 ** (l - 1), 2, 2 ** (s.n - l))
    rho = np.einsum("aib,ajb->ij", psi, psi.conj())
    # enforce exact Hermiticity against rounding
    rho = 0.5 * (rho + rho.conj().T)
    return ReducedDensityMatrix(rho)


def bloch_from_rdm(r: ReducedDensityMatrix) -> BlochVector:
    rho = r.entries
    return BlochVector(
        s_x=float(2 * rho[0, 1].real),
        s_y=float(2 * rho[1, 0].imag),
        s_z=float((rho[0, 0] - rho[1, 1]).real),
    )
