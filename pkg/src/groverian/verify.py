"""Randomized property suite behind ``groverian verify``.

Each check returns a :class:`CheckResult`; a failing check carries the
offending case (amplitudes and parameters) so it can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .aux_measures import entropy_measure, entropy_of_rdm, three_tangle
from .grover import (
    analytic_bloch,
    analytic_state,
    apply_diffusion,
    apply_oracle,
    optimal_iterations,
    run_trace,
    success_probability,
)
from .measure import (
    NumericConfig,
    closed_form_values,
    grid_pmax,
    grid_pmax_many,
    numeric_pmax,
    numeric_pmax_many,
)
from .state import ProductState, StateVector, bloch_from_rdm, make_named, product_to_state, reduce_qubit

DOMINANCE_TOL = 1e-9
EXACT_TOL = 1e-6
INVARIANCE_TOL = 1e-12
LU_TOL = 1e-4
# grid density for the bulk dominance sweep; the named-state checks use the full default
VERIFY_GRID_RESOLUTION = 24


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    failure: dict | None = None

    def __post_init__(self):
        self.passed = bool(self.passed)

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.failure is not None:
            out["failure"] = self.failure
        return out


def _serialize(amps: np.ndarray) -> list:
    return [[float(np.real(a)), float(np.imag(a))] for a in np.asarray(amps).reshape(-1)]


def random_real_states(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    a = rng.standard_normal((count, 2**n))
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def random_product_states(rng: np.random.Generator, count: int, n: int) -> list[ProductState]:
    return [ProductState(tuple(rng.uniform(-np.pi / 2, np.pi / 2, n))) for _ in range(count)]


def _permute(amps: np.ndarray, n: int, perm) -> np.ndarray:
    return np.transpose(amps.reshape((-1,) + (2,) * n), (0,) + tuple(p + 1 for p in perm)).reshape(amps.shape)


def _flip(amps: np.ndarray, n: int, qubit: int) -> np.ndarray:
    return np.flip(amps.reshape((-1,) + (2,) * n), axis=qubit + 1).reshape(amps.shape)


def _rotate(amps: np.ndarray, n: int, qubit: int, angle: float) -> np.ndarray:
    R = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    x = np.tensordot(R, amps.reshape((2,) * n), axes=([1], [qubit]))
    return np.moveaxis(x, 0, qubit).reshape(-1)


def check_dominance(rng, samples, cfg, n) -> CheckResult:
    A = random_real_states(rng, samples, n)
    closed = closed_form_values(A, n)
    numeric = numeric_pmax_many(A, n, cfg)
    detail = {"n": n, "samples": samples, "min_closed_minus_numeric": float((closed - numeric).min())}
    bad = closed < numeric - DOMINANCE_TOL
    if n <= 3:
        grid, _ = grid_pmax_many(A, n, VERIFY_GRID_RESOLUTION)
        detail["min_numeric_minus_grid"] = float((numeric - grid).min())
        detail["min_closed_minus_grid"] = float((closed - grid).min())
        bad |= (numeric < grid - DOMINANCE_TOL) | (closed < grid - DOMINANCE_TOL)
    failure = None
    if bad.any():
        i = int(np.argmax(bad))
        failure = {"amplitudes": _serialize(A[i]), "closed": float(closed[i]), "numeric": float(numeric[i])}
    return CheckResult(f"upper_bound_dominance_n{n}", not bad.any(), detail, failure)


def check_ghz_gap(cfg) -> CheckResult:
    s = make_named("ghz", 3)
    closed = float(closed_form_values(s.amplitudes.real, 3))
    numeric = numeric_pmax(s, cfg).p_max
    gap = closed - numeric
    ok = closed >= numeric - DOMINANCE_TOL and abs(gap - 0.5) < EXACT_TOL
    return CheckResult("ghz_bound_gap", ok, {"closed": closed, "numeric": numeric, "gap": gap})


def check_product_exactness(rng, cfg, count=100) -> CheckResult:
    worst = 0.0
    failure = None
    for n in (3, 5):
        states = np.array([product_to_state(p).amplitudes.real for p in random_product_states(rng, count, n)])
        values = {"closed": closed_form_values(states, n), "numeric": numeric_pmax_many(states, n, cfg)}
        if n <= 3:
            values["grid"] = grid_pmax_many(states, n)[0]
        for method, v in values.items():
            dev = np.abs(v - 1.0)
            if dev.max() > worst:
                worst = float(dev.max())
            if dev.max() > EXACT_TOL and failure is None:
                i = int(np.argmax(dev))
                failure = {"n": n, "method": method, "amplitudes": _serialize(states[i]), "p_max": float(v[i])}
    return CheckResult("product_state_exactness", failure is None, {"count": count, "max_deviation": worst}, failure)


def check_relabeling(rng, samples) -> CheckResult:
    worst = 0.0
    failure = None
    for n in (3, 5):
        A = random_real_states(rng, samples, n)
        base = closed_form_values(A, n)
        perm = rng.permutation(n)
        qubit = int(rng.integers(n))
        for kind, B in (("permutation", _permute(A, n, perm)), ("bit_flip", _flip(A, n, qubit))):
            dev = np.abs(closed_form_values(B, n) - base)
            worst = max(worst, float(dev.max()))
            if dev.max() > INVARIANCE_TOL and failure is None:
                i = int(np.argmax(dev))
                failure = {"n": n, "kind": kind, "amplitudes": _serialize(A[i]), "perm": perm.tolist(), "qubit": qubit}
    return CheckResult("relabeling_invariance", failure is None, {"samples": samples, "max_deviation": worst}, failure)


def check_local_unitary(rng, cfg, count=20) -> CheckResult:
    cfg = NumericConfig(**{**cfg.__dict__, "starts": max(cfg.starts, 64)})
    worst = 0.0
    failure = None
    for n in (3, 5):
        A = random_real_states(rng, count, n)
        B = np.array([_rotate(a, n, int(rng.integers(n)), float(rng.uniform(0, 2 * np.pi))) for a in A])
        dev = np.abs(numeric_pmax_many(A, n, cfg) - numeric_pmax_many(B, n, cfg))
        worst = max(worst, float(dev.max()))
        if dev.max() >= LU_TOL and failure is None:
            i = int(np.argmax(dev))
            failure = {"n": n, "amplitudes": _serialize(A[i]), "rotated": _serialize(B[i])}
    return CheckResult("local_unitary_invariance", failure is None, {"count": count, "max_deviation": worst}, failure)


def check_monotonicity(rng, cfg, count=10) -> CheckResult:
    cases = [make_named("ghz", 3), make_named("w", 3), make_named("w", 5)]
    for n in (3, 5):
        cases += [StateVector(n, a) for a in random_real_states(rng, count, n)]
        a = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
        cases.append(StateVector(n, a / np.linalg.norm(a)))
    worst = 0.0
    for s in cases:
        hist = numeric_pmax(s, cfg, record_history=True).info["history"]
        steps = np.diff(hist, axis=0)
        steps = steps[~np.isnan(steps)]
        drop = float(-steps.min()) if steps.size else 0.0
        worst = max(worst, drop)
        if drop > INVARIANCE_TOL:
            return CheckResult(
                "alternating_monotonicity", False, {"max_drop": drop}, {"amplitudes": _serialize(s.amplitudes)}
            )
    return CheckResult("alternating_monotonicity", True, {"cases": len(cases), "max_drop": worst})


def check_named_states(cfg) -> CheckResult:
    targets = {"ghz": 0.5, "w": 4 / 9}
    detail = {}
    ok = True
    for name, target in targets.items():
        s = make_named(name, 3)
        numeric = numeric_pmax(s, cfg).p_max
        grid = grid_pmax(s).p_max
        detail[name] = {"numeric": numeric, "grid": grid, "expected": target}
        ok &= abs(numeric - target) <= EXACT_TOL and abs(grid - target) <= EXACT_TOL and abs(numeric - grid) <= EXACT_TOL
    return CheckResult("numeric_named_states", bool(ok), detail)


def check_bloch_routes() -> CheckResult:
    worst = 0.0
    for n in (3, 5):
        for k in range(optimal_iterations(n) + 1):
            s = analytic_state(n, 2**n - 1, k)
            b = analytic_bloch(n, k)
            for l in range(1, n + 1):
                r = bloch_from_rdm(reduce_qubit(s, l))
                worst = max(worst, float(np.abs(r.as_array() - b.as_array()).max()))
                worst = max(worst, abs(entropy_of_rdm(b.to_rdm()) - entropy_measure(s, l)))
    ok = worst < INVARIANCE_TOL
    return CheckResult("analytic_bloch_vs_partial_trace", ok, {"max_deviation": worst})


def check_trace_vs_analytic() -> CheckResult:
    worst = 0.0
    for n in (3, 5):
        w = 2**n - 1
        trace = run_trace(n, w, optimal_iterations(n))
        for k in range(trace.iterations + 1):
            sim = trace.full_iteration(k).amplitudes
            ref = analytic_state(n, w, k).amplitudes
            worst = max(worst, float(min(np.abs(sim - ref).max(), np.abs(sim + ref).max())))
    return CheckResult("trace_vs_analytic_state", worst < INVARIANCE_TOL, {"max_deviation": worst})


def check_entropy_qubit_independence() -> CheckResult:
    worst = 0.0
    for n in (3, 5):
        for _, s in run_trace(n, 2**n - 1, optimal_iterations(n)).steps:
            values = [entropy_measure(s, l) for l in range(1, n + 1)]
            worst = max(worst, max(values) - min(values))
    return CheckResult("entropy_qubit_independence", worst < INVARIANCE_TOL, {"max_spread": worst})


def check_tangle(rng, samples) -> CheckResult:
    A = random_real_states(rng, samples, 3)
    lo, hi, worst = np.inf, -np.inf, 0.0
    failure = None
    for a in A:
        s = StateVector(3, a)
        t = three_tangle(s)
        lo, hi = min(lo, t), max(hi, t)
        perm = rng.permutation(3)
        tp = three_tangle(StateVector(3, _permute(a[None, :], 3, perm)[0]))
        worst = max(worst, abs(t - tp))
        if (t < 0 or t > 1 + INVARIANCE_TOL or abs(t - tp) > INVARIANCE_TOL) and failure is None:
            failure = {"amplitudes": _serialize(a), "tangle": t, "permuted": tp, "perm": perm.tolist()}
    detail = {"samples": samples, "min": float(lo), "max": float(hi), "max_permutation_deviation": worst}
    return CheckResult("three_tangle_range_and_symmetry", failure is None, detail, failure)


def check_operators(rng, count=50) -> CheckResult:
    worst = 0.0
    for n in (3, 5):
        for _ in range(count):
            a = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
            s = StateVector(n, a / np.linalg.norm(a))
            w = int(rng.integers(2**n))
            for once in (apply_oracle(s, w), apply_diffusion(s)):
                worst = max(worst, abs(np.linalg.norm(once.amplitudes) - 1))
            worst = max(worst, float(np.abs(apply_oracle(apply_oracle(s, w), w).amplitudes - s.amplitudes).max()))
            worst = max(worst, float(np.abs(apply_diffusion(apply_diffusion(s)).amplitudes - s.amplitudes).max()))
    return CheckResult("operator_involution_and_norm", worst < INVARIANCE_TOL, {"max_deviation": worst})


def check_search_success() -> CheckResult:
    detail = {}
    ok = True
    for n in (3, 5):
        w = 2**n - 1
        final = run_trace(n, w, optimal_iterations(n)).steps[-1][1]
        p = success_probability(final, w)
        bound = 1 - 2 / np.sqrt(2**n)
        detail[f"n{n}"] = {"success": p, "bound": bound}
        ok &= p >= bound
    return CheckResult("search_success_bound", bool(ok), detail)


def run_verification(samples: int = 1000, seed: int = 7, cfg: NumericConfig | None = None) -> dict:
    """Run every property check; returns a JSON-ready summary with ``passed`` set iff all pass."""
    cfg = cfg or NumericConfig()
    rng = np.random.default_rng(seed)
    checks = [
        check_dominance(rng, samples, cfg, 3),
        check_dominance(rng, samples, cfg, 5),
        check_ghz_gap(cfg),
        check_product_exactness(rng, cfg),
        check_relabeling(rng, samples),
        check_local_unitary(rng, cfg),
        check_monotonicity(rng, cfg),
        check_named_states(cfg),
        check_bloch_routes(),
        check_trace_vs_analytic(),
        check_entropy_qubit_independence(),
        check_tangle(rng, samples),
        check_operators(rng),
        check_search_success(),
    ]
    return {
        "passed": all(c.passed for c in checks),
        "samples": samples,
        "seed": seed,
        "starts": cfg.starts,
        "checks": [c.as_dict() for c in checks],
    }
