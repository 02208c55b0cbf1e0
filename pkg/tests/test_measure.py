import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groverian import (
    ConfigurationError,
    DomainError,
    NumericConfig,
    ProductState,
    StateVector,
    UnsupportedSizeError,
    apply_diffusion,
    apply_oracle,
    averaged_operational_success,
    closed_form_pmax,
    coefficient_groups,
    grid_pmax,
    make_named,
    numeric_pmax,
    operational_success,
    overlap,
    product_to_state,
    render_groups,
    sign_pattern,
)
from groverian.measure import _group_sums, closed_form_values, numeric_pmax_many
from oracles import combined_angle_expansion, literal_overlap

GOLDEN = Path(__file__).parent / "golden"
THETA0_3 = np.arcsin(1 / np.sqrt(8))

# real 3-qubit state whose best complex product state (P = 0.50063) beats the closed form (0.40683)
COMPLEX_BEATS_CLOSED = [
    0.18712588072278005,
    0.4070643131468996,
    -0.3061909306813073,
    0.25969666281285675,
    0.5181415720746587,
    -0.19778117612787813,
    0.27307772986161133,
    0.5058930500900859,
]


def random_real(n, seed):
    a = np.random.default_rng(seed).standard_normal(2**n)
    return StateVector(n, a / np.linalg.norm(a))


def closed_form_by_hand(a):
    """Three-qubit closed form typed out term by term."""
    a000, a001, a010, a011, a100, a101, a110, a111 = a
    r1 = np.sqrt((a000 - a110 - a101 - a011) ** 2 + (a100 + a010 + a001 - a111) ** 2)
    r2 = np.sqrt((a000 - a110 + a101 + a011) ** 2 + (a100 + a010 - a001 + a111) ** 2)
    r3 = np.sqrt((a000 + a110 - a101 + a011) ** 2 + (a100 - a010 + a001 + a111) ** 2)
    r4 = np.sqrt((a000 + a110 + a101 - a011) ** 2 + (a100 - a010 - a001 - a111) ** 2)
    return (r1 + r2 + r3 + r4) ** 2 / 16


class TestSignPatterns:
    def test_three_qubit_order(self):
        # theta_w, theta_x, theta_y, theta_z
        got = [sign_pattern(3, j).epsilons for j in range(4)]
        assert got == [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_index_round_trip(self, n):
        for j in range(2 ** (n - 1)):
            assert sign_pattern(n, j).index == j

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            sign_pattern(3, 4)


class TestCoefficientGroups:
    def test_first_pattern_n3(self):
        s = random_real(3, 1)
        a000, a001, a010, a011, a100, a101, a110, a111 = s.amplitudes.real
        g = coefficient_groups(s, 0)
        assert g.A == pytest.approx(a000 - a110 - a101 - a011, abs=1e-15)
        assert g.B == pytest.approx(a100 + a010 + a001 - a111, abs=1e-15)

    def test_first_pattern_n5_signs_by_weight(self):
        s = random_real(5, 2)
        a = s.amplitudes.real
        weight = np.array([bin(i).count("1") for i in range(32)])
        sign = {0: 1, 1: 1, 2: -1, 3: -1, 4: 1, 5: 1}
        g = coefficient_groups(s, 0)
        even = sum(sign[w] * a[i] for i, w in enumerate(weight) if w % 2 == 0)
        odd = sum(sign[w] * a[i] for i, w in enumerate(weight) if w % 2 == 1)
        assert g.A == pytest.approx(even, abs=1e-14)
        assert g.B == pytest.approx(odd, abs=1e-14)

    def test_single_qubit(self):
        s = StateVector(1, [0.6, 0.8])
        g = coefficient_groups(s, 0)
        assert (g.A, g.B) == (pytest.approx(0.6), pytest.approx(0.8))

    def test_rejects_complex(self):
        with pytest.raises(DomainError):
            coefficient_groups(StateVector(1, [0.6, 0.8j]), 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_expansion_reproduces_overlap(self, n):
        # the sign groups must rebuild the literal product-of-trig overlap at arbitrary angles
        rng = np.random.default_rng(100 + n)
        for _ in range(20):
            s = random_real(n, int(rng.integers(1 << 30)))
            thetas = rng.uniform(-np.pi / 2, np.pi / 2, n)
            A, B = _group_sums(s.amplitudes.real, n)
            assert combined_angle_expansion(A, B, thetas) == pytest.approx(
                literal_overlap(s.amplitudes.real, thetas), abs=1e-12
            )

    def test_overlap_squared_is_literal_sum(self):
        s = random_real(3, 9)
        thetas = (0.3, -1.1, 0.7)
        assert abs(overlap(s, ProductState(thetas))) ** 2 == pytest.approx(
            literal_overlap(s.amplitudes.real, thetas) ** 2, abs=1e-14
        )


class TestClosedForm:
    def test_uniform(self):
        r = closed_form_pmax(make_named("uniform", 3))
        assert (r.p_max, r.g, r.method) == (1.0, 0.0, "closed_form")

    def test_uniform_five(self):
        assert closed_form_pmax(make_named("uniform", 5)).g == 0.0

    def test_ghz_relaxation_gives_one(self):
        r = closed_form_pmax(make_named("ghz", 3))
        assert r.p_max == pytest.approx(1.0, abs=1e-12)
        assert r.g == pytest.approx(0.0, abs=1e-6)

    def test_reference_rows(self):
        s1 = apply_oracle(make_named("uniform", 3), 7)
        assert closed_form_pmax(s1).g == pytest.approx(0.38, abs=0.005)
        assert closed_form_pmax(apply_diffusion(s1)).g == pytest.approx(0.27, abs=0.005)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_hand_transcription(self, seed):
        s = random_real(3, seed)
        assert closed_form_pmax(s).p_max == pytest.approx(closed_form_by_hand(s.amplitudes.real), abs=1e-14)

    def test_rejects_complex(self):
        with pytest.raises(DomainError):
            closed_form_pmax(StateVector(1, [0.6, 0.8j]))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_never_exceeds_one(self, n):
        rng = np.random.default_rng(n)
        A = rng.standard_normal((500, 2**n))
        A /= np.linalg.norm(A, axis=1, keepdims=True)
        assert closed_form_values(A, n).max() <= 1 + 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_relabeling_invariance(self, n):
        rng = np.random.default_rng(30 + n)
        for _ in range(20):
            s = random_real(n, int(rng.integers(1 << 30)))
            base = closed_form_pmax(s).p_max
            x = s.tensor().real
            for perm in itertools.islice(itertools.permutations(range(n)), 6):
                t = StateVector(n, np.transpose(x, perm).reshape(-1))
                assert closed_form_pmax(t).p_max == pytest.approx(base, abs=1e-12)
            for q in range(n):
                t = StateVector(n, np.flip(x, axis=q).reshape(-1))
                assert closed_form_pmax(t).p_max == pytest.approx(base, abs=1e-12)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_dominates_real_numeric(self, n):
        rng = np.random.default_rng(50 + n)
        A = rng.standard_normal((200, 2**n))
        A /= np.linalg.norm(A, axis=1, keepdims=True)
        assert np.all(closed_form_values(A, n) >= numeric_pmax_many(A, n, starts=32) - 1e-9)

    def test_not_a_bound_over_complex_product_states(self):
        s = StateVector(3, COMPLEX_BEATS_CLOSED)
        closed = closed_form_pmax(s).p_max
        complex_max = numeric_pmax(s, domain="complex").p_max
        real_max = numeric_pmax(s, domain="real").p_max
        assert closed == pytest.approx(0.406827, abs=1e-6)
        assert complex_max == pytest.approx(0.500627, abs=1e-6)
        assert real_max <= closed


class TestNumeric:
    def test_ghz(self):
        assert numeric_pmax(make_named("ghz", 3)).p_max == pytest.approx(0.5, abs=1e-6)

    def test_w(self):
        assert numeric_pmax(make_named("w", 3)).p_max == pytest.approx(4 / 9, abs=1e-6)
        assert numeric_pmax(make_named("w", 3), domain="complex").p_max == pytest.approx(4 / 9, abs=1e-6)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_product_states(self, n):
        rng = np.random.default_rng(n)
        p = ProductState(tuple(rng.uniform(-1.5, 1.5, n)), tuple(rng.uniform(0, 6.2, n)))
        assert numeric_pmax(product_to_state(p), starts=8).p_max == pytest.approx(1.0, abs=1e-9)

    def test_maximizer_attains_value(self):
        s = random_real(4, 3)
        r = numeric_pmax(s)
        assert abs(overlap(s, r.maximizer)) ** 2 == pytest.approx(r.p_max, abs=1e-12)
        assert r.g**2 + r.p_max == pytest.approx(1.0, abs=1e-12)

    def test_complex_state(self):
        rng = np.random.default_rng(4)
        a = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        s = StateVector(3, a / np.linalg.norm(a))
        r = numeric_pmax(s)
        assert r.info["domain"] == "complex"
        assert abs(overlap(s, r.maximizer)) ** 2 == pytest.approx(r.p_max, abs=1e-12)

    def test_deterministic(self):
        s = random_real(5, 8)
        a, b = numeric_pmax(s, seed=3), numeric_pmax(s, seed=3)
        assert a.p_max == b.p_max and a.maximizer == b.maximizer

    def test_batch_equals_serial(self):
        rng = np.random.default_rng(6)
        A = rng.standard_normal((5, 8))
        A /= np.linalg.norm(A, axis=1, keepdims=True)
        batch = numeric_pmax_many(A, 3, starts=16)
        serial = [numeric_pmax(StateVector(3, a), starts=16).p_max for a in A]
        np.testing.assert_array_equal(batch, serial)

    def test_monotone_sweeps(self):
        for s in (random_real(3, 11), random_real(5, 12), make_named("w", 4)):
            hist = numeric_pmax(s, record_history=True).info["history"]
            steps = np.diff(hist, axis=0)
            assert np.all(steps[~np.isnan(steps)] >= -1e-15)

    def test_local_rotation_invariance(self):
        s = random_real(3, 13)
        R = np.array([[np.cos(0.7), -np.sin(0.7)], [np.sin(0.7), np.cos(0.7)]])
        x = np.moveaxis(np.tensordot(R, s.tensor().real, axes=([1], [1])), 0, 1).reshape(-1)
        assert numeric_pmax(StateVector(3, x), starts=64).p_max == pytest.approx(numeric_pmax(s, starts=64).p_max, abs=1e-4)

    @pytest.mark.parametrize("kw", [{"starts": 0}, {"tol": 0.0}, {"tol": -1.0}, {"max_iters": 0}, {"domain": "quaternion"}])
    def test_config_errors(self, kw):
        with pytest.raises(ConfigurationError):
            NumericConfig(**kw)

    def test_real_domain_rejects_complex_state(self):
        with pytest.raises(DomainError):
            numeric_pmax(StateVector(1, [0.6, 0.8j]), domain="real")


class TestGrid:
    def test_uniform(self):
        assert grid_pmax(make_named("uniform", 3)).p_max == pytest.approx(1.0, abs=1e-6)

    def test_ghz(self):
        assert grid_pmax(make_named("ghz", 3)).p_max == pytest.approx(0.5, abs=1e-6)

    def test_basis(self):
        assert grid_pmax(make_named("basis", 3, index=5)).p_max == pytest.approx(1.0, abs=1e-12)

    def test_w_needs_polish(self):
        # the maximizing angle acos(sqrt(2/3)) is off the 1-degree grid
        assert grid_pmax(make_named("w", 3)).p_max == pytest.approx(4 / 9, abs=1e-9)

    def test_maximizer_attains_value(self):
        s = random_real(3, 21)
        r = grid_pmax(s)
        assert abs(overlap(s, r.maximizer)) ** 2 == pytest.approx(r.p_max, abs=1e-12)

    def test_lower_bound_of_numeric(self):
        for seed in range(10):
            s = random_real(3, 40 + seed)
            assert grid_pmax(s, resolution=31).p_max <= numeric_pmax(s).p_max + 1e-9

    def test_size_and_resolution_errors(self):
        with pytest.raises(UnsupportedSizeError):
            grid_pmax(make_named("uniform", 4))
        with pytest.raises(ConfigurationError):
            grid_pmax(make_named("uniform", 3), resolution=7)

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.floats(-1.5, 1.5), min_size=3, max_size=3))
    def test_product_states_exact(self, thetas):
        s = product_to_state(ProductState(tuple(thetas)))
        assert grid_pmax(s, resolution=19).p_max == pytest.approx(1.0, abs=1e-6)


class TestOperational:
    def test_uniform_angles_two_iterations(self):
        p = ProductState((np.pi / 4,) * 3)
        assert operational_success(3, 7, 2, p) == pytest.approx(np.sin(5 * THETA0_3) ** 2, abs=1e-12)

    @pytest.mark.parametrize("w", range(8))
    def test_no_iterations(self, w):
        assert operational_success(3, w, 0, ProductState((np.pi / 4,) * 3)) == pytest.approx(1 / 8)

    def test_basis_start_against_dense_matrices(self):
        eta = np.full(8, 1 / np.sqrt(8))
        Pw = np.eye(8)
        Pw[7, 7] = -1
        Ps = np.eye(8) - 2 * np.outer(eta, eta)
        x = np.linalg.matrix_power(Ps @ Pw, 2) @ np.eye(8)[0]
        assert operational_success(3, 7, 2, ProductState((0.0,) * 3)) == pytest.approx(x[7] ** 2, abs=1e-12)

    def test_averaged_success_for_uniform(self):
        assert averaged_operational_success(make_named("uniform", 3), 2) == pytest.approx(
            np.sin(5 * THETA0_3) ** 2, abs=1e-9
        )

    def test_errors(self):
        with pytest.raises(DomainError):
            operational_success(3, 7, -1, ProductState((0.0,) * 3))
        with pytest.raises(DomainError):
            operational_success(3, 7, 1, ProductState((0.0,) * 2))


class TestRender:
    def test_three_qubit_golden(self):
        assert render_groups(3) == (GOLDEN / "groups_n3.txt").read_text()

    def test_five_qubit_printed_head(self):
        printed = (GOLDEN / "groups_n5_head.txt").read_text().splitlines()
        assert render_groups(5).splitlines()[: len(printed)] == printed

    def test_single_qubit(self):
        assert render_groups(1) == "sqrt[ (+a0)^2 + (+a1)^2 ]\n"

    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_shape(self, n):
        lines = render_groups(n).splitlines()
        assert len(lines) == 2 ** (n - 1)
        assert all(line.count("a") == 2**n for line in lines)

    @pytest.mark.parametrize("n", [0, 7])
    def test_unsupported(self, n):
        with pytest.raises(UnsupportedSizeError):
            render_groups(n)
