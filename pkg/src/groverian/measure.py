"""Groverian entanglement: ``G = sqrt(1 - P_max)`` with ``P_max`` the largest
squared overlap of a state with any product state.

Three routes to ``P_max`` are provided:

* :func:`closed_form_pmax` -- the trigonometric closed form for real
  coefficients.  Expanding the product of ``n`` cosines/sines turns the
  overlap into ``sum_j (A_j cos phi_j + B_j sin phi_j) / 2**(n-1)`` over
  combined angles ``phi_j = theta_1 + sum_k eps_k theta_k``; maximizing every
  ``phi_j`` independently gives ``(sum_j sqrt(A_j**2 + B_j**2))**2 / 4**(n-1)``.
  The combined angles are not independent for ``n >= 3``, so the value is an
  upper bound on the real-product-state maximum and can be loose (GHZ gives 1).
* :func:`numeric_pmax` -- multi-start alternating contraction (rank-1 tensor
  approximation), exact local maxima.
* :func:`grid_pmax` -- exhaustive angle grid plus golden-section polish for
  ``n <= 3``; an independent lower bound used as an oracle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import ConfigurationError, DomainError, UnsupportedSizeError
from .grover import apply_diffusion, apply_oracle, success_probability
from .state import ProductState, StateVector, product_to_state

Method = Literal["closed_form", "numeric", "grid"]

DEFAULT_STARTS = 128
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITERS = 500
DEFAULT_SEED = 42
DEFAULT_RESOLUTION = 181
GOLDEN_ITERS = 50
MAX_RENDER_QUBITS = 6
PMAX_SNAP = 1e-12

# rows * 2**n kept below this when batching starts or grid evaluations
_BATCH_ELEMENTS = 1 << 22
_INV_PHI = (np.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class SignPattern:
    """Signs ``eps_1..eps_n`` of one combined angle; ``eps_1`` is always +1.

    Pattern index ``j`` encodes the flips: bit 0 flips ``eps_n``, bit 1 flips
    ``eps_{n-1}``, ..., bit ``n-2`` flips ``eps_2``.
    """

    n: int
    epsilons: tuple[int, ...]

    @property
    def index(self) -> int:
        j = 0
        for k in range(1, self.n):
            if self.epsilons[k] < 0:
                j |= 1 << (self.n - 1 - k)
        return j


@dataclass(frozen=True)
class CoefficientGroups:
    """Cosine-group (even weight) and sine-group (odd weight) sums for one pattern."""

    pattern: SignPattern
    A: float
    B: float

    @property
    def radical(self) -> float:
        return float(np.hypot(self.A, self.B))


@dataclass(frozen=True)
class MeasureResult:
    p_max: float
    g: float
    method: Method
    maximizer: ProductState | None = None
    info: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_pmax(cls, p_max: float, method: Method, maximizer=None, **info) -> "MeasureResult":
        p = float(min(max(p_max, 0.0), 1.0))
        # sqrt(1 - p) amplifies round-off near p = 1 (1e-16 becomes 1e-8 in g)
        if 1.0 - p < PMAX_SNAP:
            p = 1.0
        return cls(p, float(np.sqrt(1.0 - p)), method, maximizer, info)


def sign_pattern(n: int, j: int) -> SignPattern:
    if n < 1:
        raise DomainError(f"qubit count must be >= 1, got {n}")
    if not 0 <= j < 2 ** (n - 1):
        raise DomainError(f"pattern index {j} out of range for n={n}")
    eps = [1] + [-1 if (j >> (n - 1 - k)) & 1 else 1 for k in range(1, n)]
    return SignPattern(n, tuple(eps))


@functools.lru_cache(maxsize=None)
def _sign_table(n: int) -> np.ndarray:
    """``sigma[j, i]`` in {+1, -1}: sign of amplitude ``i`` inside pattern ``j``'s group."""
    dim = 2**n
    bits = (np.arange(dim)[:, None] >> np.arange(n - 1, -1, -1)) & 1  # (dim, n), qubit 1 first
    weight = bits.sum(axis=1)
    base = np.where((weight // 2) % 2 == 0, 1, -1)
    table = np.empty((2 ** (n - 1), dim), dtype=np.int8)
    for j in range(2 ** (n - 1)):
        eps = np.array(sign_pattern(n, j).epsilons)
        flips = np.prod(np.where(bits == 1, eps[None, :], 1), axis=1)
        table[j] = base * flips
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=None)
def _parity_masks(n: int) -> tuple[np.ndarray, np.ndarray]:
    weight = np.array([bin(i).count("1") for i in range(2**n)])
    return weight % 2 == 0, weight % 2 == 1


def _group_sums(amps: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``A`` and ``B`` for every pattern; ``amps`` has shape ``(..., 2**n)``."""
    table = _sign_table(n).astype(float)
    even, odd = _parity_masks(n)
    A = amps[..., even] @ table[:, even].T
    B = amps[..., odd] @ table[:, odd].T
    return A, B


def coefficient_groups(s: StateVector, j: int) -> CoefficientGroups:
    a = s.real_amplitudes()
    pattern = sign_pattern(s.n, j)
    A, B = _group_sums(a, s.n)
    return CoefficientGroups(pattern, float(A[j]), float(B[j]))


def closed_form_values(amps: np.ndarray, n: int) -> np.ndarray:
    """Vectorized closed form over a stack of real amplitude rows, unclamped."""
    A, B = _group_sums(np.asarray(amps, dtype=float), n)
    return np.hypot(A, B).sum(axis=-1) ** 2 / 4 ** (n - 1)


def closed_form_pmax(s: StateVector) -> MeasureResult:
    a = s.real_amplitudes()
    return MeasureResult.from_pmax(float(closed_form_values(a, s.n)), "closed_form")


# ---------------------------------------------------------------------------
# alternating contraction


@dataclass(frozen=True)
class NumericConfig:
    starts: int = DEFAULT_STARTS
    tol: float = DEFAULT_TOL
    max_iters: int = DEFAULT_MAX_ITERS
    seed: int = DEFAULT_SEED
    # "auto" keeps local vectors real for real input states, complex otherwise
    domain: Literal["auto", "real", "complex"] = "auto"

    def __post_init__(self):
        if not isinstance(self.starts, (int, np.integer)) or self.starts < 1:
            raise ConfigurationError(f"starts must be >= 1, got {self.starts!r}")
        if not self.tol > 0:
            raise ConfigurationError(f"tol must be > 0, got {self.tol!r}")
        if not isinstance(self.max_iters, (int, np.integer)) or self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be >= 1, got {self.max_iters!r}")
        if self.domain not in ("auto", "real", "complex"):
            raise ConfigurationError(f"unknown domain {self.domain!r}")


def _kron_rows(vecs: np.ndarray) -> np.ndarray:
    """Row-wise Kronecker product of ``vecs[:, 0] (x) vecs[:, 1] (x) ...``."""
    out = np.ones((vecs.shape[0], 1), dtype=vecs.dtype)
    for j in range(vecs.shape[1]):
        out = (out[:, :, None] * vecs[:, j, None, :]).reshape(vecs.shape[0], -1)
    return out


def _contract_except(tensors: np.ndarray, vectors: np.ndarray, k: int) -> np.ndarray:
    """Contract each row's state with the conjugated local vectors of all qubits but ``k``."""
    rows, n = vectors.shape[0], vectors.shape[1]
    left = _kron_rows(vectors[:, :k].conj())
    right = _kron_rows(vectors[:, k + 1 :].conj())
    view = tensors.reshape(rows, 2**k, 2, 2 ** (n - k - 1))
    return np.einsum("bl,blxr,br->bx", left, view, right)


def _alternating_ascent(tensors, vectors, tol, max_iters, record=False):
    """Run the per-qubit contraction sweeps on every row until its gain drops below ``tol``.

    Updates are in place on ``vectors``.  Returns ``(values, sweeps, history)``;
    ``history`` is a list of per-sweep value arrays (NaN once a row has stopped)
    when ``record`` is set.
    """
    rows, n = vectors.shape[0], vectors.shape[1]
    values = np.zeros(rows)
    sweeps = np.zeros(rows, dtype=int)
    active = np.arange(rows)
    history = []
    for _ in range(max_iters):
        if active.size == 0:
            break
        T = tensors[active]
        V = vectors[active]
        for k in range(n):
            c = _contract_except(T, V, k)
            norm = np.linalg.norm(c, axis=1)
            ok = norm > 1e-300
            V[ok, k] = c[ok] / norm[ok, None]
        vectors[active] = V
        gain = norm**2 - values[active]
        values[active] = norm**2
        sweeps[active] += 1
        if record:
            snap = np.full(rows, np.nan)
            snap[active] = values[active]
            history.append(snap)
        active = active[gain >= tol]
    return values, sweeps, history


def _start_vectors(n: int, cfg: NumericConfig, complex_domain: bool) -> np.ndarray:
    rng = np.random.default_rng(cfg.seed)
    V = rng.standard_normal((cfg.starts, n, 2))
    if complex_domain:
        V = V + 1j * rng.standard_normal((cfg.starts, n, 2))
    return V / np.linalg.norm(V, axis=2, keepdims=True)


def _resolve_domain(s_is_real: bool, cfg: NumericConfig) -> bool:
    if cfg.domain == "real":
        if not s_is_real:
            raise DomainError("real-domain maximization requested for a complex state")
        return False
    if cfg.domain == "complex":
        return True
    return not s_is_real


def _config(cfg: NumericConfig | None, overrides: dict) -> NumericConfig:
    cfg = cfg or NumericConfig()
    if overrides:
        cfg = NumericConfig(**{**cfg.__dict__, **overrides})
    return cfg


def numeric_pmax(s: StateVector, cfg: NumericConfig | None = None, record_history: bool = False, **overrides) -> MeasureResult:
    """Best squared overlap with a product state found by multi-start alternating contraction.

    Every start is a seeded random product state; qubit ``k``'s local vector
    is repeatedly replaced by the normalized contraction of the state with the
    other qubits' vectors, which is the exact maximizer for that qubit, so the
    overlap never decreases.  The best start wins, ties to the lowest index.

    Args:
        s: any normalized state.
        cfg: solver settings; keyword ``overrides`` replace individual fields.
        record_history: keep the per-sweep overlap of every start in ``info``.
    """
    cfg = _config(cfg, overrides)
    complex_domain = _resolve_domain(s.is_real, cfg)
    dtype = np.complex128 if complex_domain else np.float64
    amps = s.amplitudes if complex_domain else s.amplitudes.real
    V = _start_vectors(s.n, cfg, complex_domain).astype(dtype)
    chunk = max(1, _BATCH_ELEMENTS // s.dim)
    values = np.empty(cfg.starts)
    sweeps = np.empty(cfg.starts, dtype=int)
    history: list[np.ndarray] = []
    for lo in range(0, cfg.starts, chunk):
        hi = min(lo + chunk, cfg.starts)
        T = np.broadcast_to(amps.astype(dtype), (hi - lo, s.dim))
        Vc = V[lo:hi]
        vals, sw, hist = _alternating_ascent(T, Vc, cfg.tol, cfg.max_iters, record_history)
        V[lo:hi] = Vc
        values[lo:hi] = vals
        sweeps[lo:hi] = sw
        if record_history:
            history.extend((lo, h) for h in hist)
    best = int(np.argmax(values))
    info = {"best_start": best, "sweeps": sweeps, "domain": "complex" if complex_domain else "real"}
    if record_history:
        info["history"] = _stack_history(history, cfg.starts, chunk)
    return MeasureResult.from_pmax(float(values[best]), "numeric", ProductState.from_vectors(V[best]), **info)


def _stack_history(chunks, starts, chunk):
    """Assemble per-chunk sweep snapshots into a ``(sweeps, starts)`` array."""
    by_chunk: dict[int, list[np.ndarray]] = {}
    for lo, snap in chunks:
        by_chunk.setdefault(lo, []).append(snap)
    depth = max((len(v) for v in by_chunk.values()), default=0)
    out = np.full((depth, starts), np.nan)
    for lo, snaps in by_chunk.items():
        for i, snap in enumerate(snaps):
            out[i, lo : lo + snap.size] = snap
    return out


def numeric_pmax_many(amps: np.ndarray, n: int, cfg: NumericConfig | None = None, **overrides) -> np.ndarray:
    """Numeric ``P_max`` for each row of ``amps``, identical to calling :func:`numeric_pmax` per row."""
    cfg = _config(cfg, overrides)
    amps = np.atleast_2d(np.asarray(amps))
    is_real = bool(np.all(np.abs(np.imag(amps)) < 1e-12))
    complex_domain = _resolve_domain(is_real, cfg)
    dtype = np.complex128 if complex_domain else np.float64
    amps = amps.astype(dtype) if complex_domain else np.real(amps).astype(dtype)
    V0 = _start_vectors(n, cfg, complex_domain).astype(dtype)
    per_chunk = max(1, _BATCH_ELEMENTS // (2**n * cfg.starts))
    out = np.empty(amps.shape[0])
    for lo in range(0, amps.shape[0], per_chunk):
        block = amps[lo : lo + per_chunk]
        T = np.repeat(block, cfg.starts, axis=0)
        V = np.tile(V0, (block.shape[0], 1, 1))
        vals, _, _ = _alternating_ascent(T, V, cfg.tol, cfg.max_iters)
        out[lo : lo + block.shape[0]] = vals.reshape(block.shape[0], cfg.starts).max(axis=1)
    return out


# ---------------------------------------------------------------------------
# grid oracle


def _real_product_values(amps: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """``<e(theta)|psi>**2`` for real rows ``amps`` (S, 2**n) and angles ``thetas`` (S, n)."""
    vecs = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1)
    return np.einsum("si,si->s", _kron_rows(vecs), amps) ** 2


def _golden_polish(amps: np.ndarray, thetas: np.ndarray, half_width: float, max_sweeps: int = GOLDEN_ITERS):
    """Per-coordinate golden-section ascent within ``+-half_width`` of the current angles.

    Moves are accepted only when they improve the value, so the result never
    falls below the starting grid point.
    """
    thetas = thetas.copy()
    current = _real_product_values(amps, thetas)
    for _ in range(max_sweeps):
        before = current.copy()
        for k in range(thetas.shape[1]):
            trial = thetas.copy()

            def f(x):
                trial[:, k] = x
                return _real_product_values(amps, trial)

            a = thetas[:, k] - half_width
            b = thetas[:, k] + half_width
            c = b - _INV_PHI * (b - a)
            d = a + _INV_PHI * (b - a)
            fc, fd = f(c), f(d)
            for _ in range(GOLDEN_ITERS):
                left = fc > fd
                b = np.where(left, d, b)
                a = np.where(left, a, c)
                x = np.where(left, b - _INV_PHI * (b - a), a + _INV_PHI * (b - a))
                fx = f(x)
                c, fc, d, fd = (
                    np.where(left, x, d),
                    np.where(left, fx, fd),
                    np.where(left, c, x),
                    np.where(left, fc, fx),
                )
            mid = 0.5 * (a + b)
            fm = f(mid)
            better = fm > current
            thetas[better, k] = mid[better]
            current = np.where(better, fm, current)
        if np.all(current - before < 1e-15):
            break
    # wrap into [-pi/2, pi/2]; a shift by pi only flips the overall sign
    return thetas - np.pi * np.round(thetas / np.pi), current


def grid_pmax_many(amps: np.ndarray, n: int, resolution: int = DEFAULT_RESOLUTION) -> tuple[np.ndarray, np.ndarray]:
    """Grid-plus-polish values and maximizing angles for each real row of ``amps``."""
    if n > 3:
        raise UnsupportedSizeError(f"grid oracle supports n <= 3, got n={n}")
    if resolution < 8:
        raise ConfigurationError(f"grid resolution must be >= 8, got {resolution}")
    amps = np.atleast_2d(np.asarray(amps, dtype=float))
    grid = np.linspace(-np.pi / 2, np.pi / 2, resolution)
    U = np.stack([np.cos(grid), np.sin(grid)], axis=1)
    per_chunk = max(1, _BATCH_ELEMENTS // resolution**n)
    thetas = np.empty((amps.shape[0], n))
    for lo in range(0, amps.shape[0], per_chunk):
        block = amps[lo : lo + per_chunk]
        X = block.reshape((block.shape[0],) + (2,) * n)
        for axis in range(n):
            X = np.moveaxis(np.tensordot(X, U, axes=([1 + axis], [1])), -1, 1 + axis)
        flat = (X**2).reshape(block.shape[0], -1)
        idx = np.unravel_index(np.argmax(flat, axis=1), (resolution,) * n)
        thetas[lo : lo + block.shape[0]] = grid[np.stack(idx, axis=1)]
    spacing = np.pi / (resolution - 1)
    thetas, values = _golden_polish(amps, thetas, spacing)
    return values, thetas


def grid_pmax(s: StateVector, resolution: int = DEFAULT_RESOLUTION) -> MeasureResult:
    """Exhaustive real-angle grid search followed by a local golden-section polish.

    The value is attained by an explicit product state, so it is a certified
    lower bound on the true maximum.
    """
    if s.n > 3:
        raise UnsupportedSizeError(f"grid oracle supports n <= 3, got n={s.n}")
    a = s.real_amplitudes()
    values, thetas = grid_pmax_many(a[None, :], s.n, resolution)
    thetas = np.clip(thetas[0], -np.pi / 2, np.pi / 2)
    return MeasureResult.from_pmax(float(values[0]), "grid", ProductState(tuple(thetas)), resolution=resolution)


# ---------------------------------------------------------------------------
# operational check


def _grover(state: StateVector, w: int, m: int) -> StateVector:
    for _ in range(m):
        state = apply_diffusion(apply_oracle(state, w))
    return state


def operational_success(n: int, w: int, m: int, p: ProductState) -> float:
    """Success probability for marked ``w`` after ``m`` iterations started from the product state ``p``."""
    if m < 0:
        raise DomainError(f"iteration count must be >= 0, got {m}")
    if p.n != n:
        raise DomainError(f"product state has {p.n} qubits, expected {n}")
    return success_probability(_grover(product_to_state(p), w, m), w)


def local_unitaries_to_uniform(p: ProductState) -> list[np.ndarray]:
    """Single-qubit unitaries ``U_k`` with ``U_k |e_k> = |+>``."""
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    out = []
    for e in p.local_vectors():
        perp = np.array([-np.conj(e[1]), np.conj(e[0])])
        out.append(np.outer(plus, e.conj()) + np.outer(minus, perp.conj()))
    return out


def apply_local(s: StateVector, unitaries: list[np.ndarray]) -> StateVector:
    x = s.tensor()
    for k, u in enumerate(unitaries):
        x = np.moveaxis(np.tensordot(u, x, axes=([1], [k])), 0, k)
    amps = x.reshape(-1)
    return StateVector(s.n, amps / np.linalg.norm(amps))


def averaged_operational_success(s: StateVector, m: int, p: ProductState | None = None, cfg: NumericConfig | None = None) -> float:
    """Success probability averaged over every marked item, after local pre-rotation.

    The local unitaries rotate the product state ``p`` (by default the numeric
    maximizer for ``s``) onto the uniform superposition before ``m``
    iterations are run.
    """
    if p is None:
        p = numeric_pmax(s, cfg).maximizer
    prepared = apply_local(s, local_unitaries_to_uniform(p))
    return float(np.mean([success_probability(_grover(prepared, w, m), w) for w in range(s.dim)]))


# ---------------------------------------------------------------------------
# rendering


def _term_order(n: int) -> list[int]:
    """Amplitude indices ordered by their bitstring read with qubit 1 least significant."""
    return sorted(range(2**n), key=lambda i: int(format(i, f"0{n}b")[::-1], 2))


def render_groups(n: int) -> str:
    """One ``sqrt[ (A)^2 + (B)^2 ]`` line per sign pattern, signs explicit."""
    if not 1 <= n <= MAX_RENDER_QUBITS:
        raise UnsupportedSizeError(f"render_groups supports 1 <= n <= {MAX_RENDER_QUBITS}, got {n}")
    table = _sign_table(n)
    order = _term_order(n)
    lines = []
    for j in range(2 ** (n - 1)):
        parts = []
        for parity in (0, 1):
            terms = [
                ("+" if table[j, i] > 0 else "-") + "a" + format(i, f"0{n}b")
                for i in order
                if bin(i).count("1") % 2 == parity
            ]
            parts.append(" ".join(terms))
        lines.append(f"sqrt[ ({parts[0]})^2 + ({parts[1]})^2 ]")
    return "\n".join(lines) + "\n"
