"""Grover search dynamics at half-step granularity.

The oracle ``P_w = 1 - 2|w><w|`` and the diffusion ``P_s = 1 - 2|eta><eta|``
(``eta`` the uniform superposition) are applied literally.  ``P_s`` is the
negative of the textbook inversion about the mean, so after ``k`` full
iterations the simulated state equals the textbook one up to ``(-1)**k``.
Every measure in this package ignores global phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .state import BlochVector, StateVector, make_named


@dataclass(frozen=True)
class IterationAngle:
    """Rotation angles of the search: ``sin(theta0) = 1/sqrt(N)``, ``theta_k = (2k+1) theta0``."""

    n: int
    k: int
    theta0: float = field(init=False)
    theta_k: float = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"qubit count must be >= 1, got {self.n}")
        if self.k < 0:
            raise DomainError(f"iteration count must be >= 0, got {self.k}")
        theta0 = float(np.arcsin(1 / np.sqrt(2**self.n)))
        object.__setattr__(self, "theta0", theta0)
        object.__setattr__(self, "theta_k", (2 * self.k + 1) * theta0)


@dataclass(frozen=True)
class EvolutionTrace:
    """Uniform initial state followed by alternating ``P_w``/``P_s`` half-steps."""

    n: int
    marked: int
    steps: tuple[tuple[str, StateVector], ...]

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.steps]

    @property
    def states(self) -> list[StateVector]:
        return [s for _, s in self.steps]

    @property
    def iterations(self) -> int:
        return (len(self.steps) - 1) // 2

    def full_iteration(self, k: int) -> StateVector:
        """State after ``k`` complete (P_w, P_s) iterations."""
        return self.steps[2 * k][1]


def _check_marked(n: int, w: int) -> None:
    if not isinstance(w, (int, np.integer)) or not 0 <= w < 2**n:
        raise DomainError(f"marked index {w!r} out of range for n={n}")


def apply_oracle(s: StateVector, w: int) -> StateVector:
    _check_marked(s.n, w)
    amps = s.amplitudes.copy()
    amps[w] = -amps[w]
    return StateVector(s.n, amps)


def apply_diffusion(s: StateVector) -> StateVector:
    """Reflect through the hyperplane orthogonal to the uniform superposition."""
    dim = s.dim
    mean = s.amplitudes.sum() / dim
    # s - 2 <eta|s> |eta> with <eta|s> |eta>_i = mean for every i
    amps = s.amplitudes - 2 * mean
    amps /= np.linalg.norm(amps)
    return StateVector(s.n, amps)


def run_trace(n: int, w: int, iterations: int) -> EvolutionTrace:
    if iterations < 0:
        raise DomainError(f"iteration count must be >= 0, got {iterations}")
    _check_marked(n, w)
    state = make_named("uniform", n)
    steps = [("initial", state)]
    for j in range(1, iterations + 1):
        state = apply_oracle(state, w)
        steps.append((f"after P_w (iter {j})", state))
        state = apply_diffusion(state)
        steps.append((f"after P_s (iter {j})", state))
    return EvolutionTrace(n, int(w), tuple(steps))


def analytic_state(n: int, w: int, k: int) -> StateVector:
    """Closed-form state after ``k`` iterations with marked item ``w``."""
    _check_marked(n, w)
    angle = IterationAngle(n, k)
    dim = 2**n
    amps = np.full(dim, np.cos(angle.theta_k) / np.sqrt(dim - 1), dtype=np.complex128)
    amps[w] = np.sin(angle.theta_k)
    return StateVector(n, amps / np.linalg.norm(amps))


def analytic_bloch(n: int, k: int) -> BlochVector:
    """Single-qubit Bloch vector of the ``k``-iteration state, marked item all-ones."""
    angle = IterationAngle(n, k)
    N = 2**n
    c2 = np.cos(angle.theta_k) ** 2
    s_x = (N - 2) / (N - 1) * c2 + np.sin(2 * angle.theta_k) / np.sqrt(N - 1)
    s_z = c2 / (N - 1) - np.sin(angle.theta_k) ** 2
    return BlochVector(float(s_x), 0.0, float(s_z))


def success_probability(s: StateVector, w: int) -> float:
    _check_marked(s.n, w)
    return float(abs(s.amplitudes[w]) ** 2)


def optimal_iterations(n: int) -> int:
    """Iteration count ``round(pi / (4 theta0) - 1/2)``."""
    theta0 = IterationAngle(n, 0).theta0
    # round(x - 1/2) == floor(x) with halves rounded up; the nudge absorbs float error at x integer
    return int(np.floor(np.pi / (4 * theta0) + 1e-9))
