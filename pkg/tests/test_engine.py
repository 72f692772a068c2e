import numpy as np
import pytest

from wqsa.engine import (
    SearchConfig,
    Variant,
    first_peak,
    grover_iterate,
    initial_state,
    iter_states,
    oracle_reflect,
    reflect_about_initial,
    reflect_rank_one,
    run_batch,
    run_search,
    wqsa_iterate,
)
from wqsa.errors import DomainError
from wqsa.haar import index_to_scale, scale_to_index, wavelet_initial_state
from wqsa.state import StateVector, basis_state, probability, uniform_state
from wqsa.transforms import HAAR, WALSH_HADAMARD

from conftest import plane_probabilities, random_state


class TestOracle:
    def test_examples(self):
        np.testing.assert_array_equal(oracle_reflect(basis_state(2, 1), 1).amplitudes, [0, -1, 0, 0])
        np.testing.assert_array_equal(oracle_reflect(basis_state(2, 0), 1).amplitudes, [1, 0, 0, 0])
        np.testing.assert_allclose(oracle_reflect(uniform_state(2), 3).amplitudes, [0.5, 0.5, 0.5, -0.5])

    def test_range(self):
        with pytest.raises(DomainError):
            oracle_reflect(uniform_state(2), 4)


class TestReflection:
    @pytest.mark.parametrize("n,k", [(3, 0), (3, 1), (3, 3), (5, 17), (6, 63)])
    def test_negates_axis(self, n, k):
        psi = wavelet_initial_state(n, k)
        np.testing.assert_allclose(reflect_about_initial(psi, k).amplitudes, -psi.amplitudes, atol=1e-14)

    def test_fixes_orthogonal_complement(self):
        # e_0 is orthogonal to W^T e_3 at n = 3 (support [4, 7])
        out = reflect_about_initial(basis_state(3, 0), 3)
        np.testing.assert_allclose(out.amplitudes, np.eye(8)[0], atol=1e-15)

    def test_diffusion_of_e0(self):
        out = reflect_about_initial(basis_state(2, 0), 0, HAAR)
        np.testing.assert_allclose(out.amplitudes, [0.5, -0.5, -0.5, -0.5], atol=1e-15)
        # with the leading minus sign: 2|psi><psi|x - x
        np.testing.assert_allclose((-out).amplitudes, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)

    @pytest.mark.parametrize("pair", [HAAR, WALSH_HADAMARD])
    def test_conjugation_matches_rank_one(self, pair, rng):
        for n in (1, 4, 9):
            for k in (0, 1, 2**n - 1, int(rng.integers(0, 2**n))):
                e = np.zeros(2**n, dtype=complex)
                e[k] = 1
                axis = StateVector(n, pair.inverse(e))
                x = StateVector(n, random_state(rng, n))
                direct = reflect_rank_one(x, axis).amplitudes
                np.testing.assert_allclose(reflect_about_initial(x, k, pair).amplitudes, direct, atol=1e-12, rtol=0)


class TestIterations:
    def test_wqsa_single_step_n1_4(self):
        cfg = SearchConfig(3, 4, Variant.WQSA, 3)
        out = wqsa_iterate(initial_state(cfg), cfg)
        expected = plane_probabilities(4, 1, 1)[1]
        assert probability(out, 4) == pytest.approx(expected, abs=1e-12)
        assert probability(out, 4) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("target", [8, 11, 12, 15])
    def test_wqsa_first_step_raises_from_overlap(self, target):
        cfg = SearchConfig(5, target, Variant.WQSA, 5)
        idx = index_to_scale(5, 5)
        n1 = idx.n1
        assert (idx.support_lo, idx.support_hi) == (8, 15)
        eps = 1 if target < 8 + n1 // 2 else -1
        psi0 = initial_state(cfg)
        assert probability(psi0, target) == pytest.approx(1 / n1, abs=1e-15)
        p1 = probability(wqsa_iterate(psi0, cfg), target)
        assert p1 == pytest.approx(plane_probabilities(n1, eps, 1)[1], abs=1e-12)

    def test_wqsa_outside_support_is_stationary(self):
        cfg = SearchConfig(3, 0, Variant.WQSA, 3)
        psi0 = initial_state(cfg)
        s = psi0
        for _ in range(5):
            s = wqsa_iterate(s, cfg)
            # O_w fixes psi, the reflection negates it, the leading minus restores it
            np.testing.assert_allclose(s.amplitudes, psi0.amplitudes, atol=1e-15)
            assert probability(s, 0) == 0.0

    def test_grover_n2_exact(self):
        cfg = SearchConfig(2, 2, Variant.GROVER)
        out = grover_iterate(initial_state(cfg), cfg)
        assert probability(out, 2) == pytest.approx(1.0, abs=1e-15)

    def test_grover_n3(self):
        cfg = SearchConfig(3, 5, Variant.GROVER)
        out = grover_iterate(initial_state(cfg), cfg)
        assert probability(out, 5) == pytest.approx(plane_probabilities(8, 1, 1)[1], abs=1e-12)
        assert probability(out, 5) == pytest.approx(0.78125, abs=1e-12)

    def test_grover_zero_iterations(self):
        t = run_search(SearchConfig(4, 9, Variant.GROVER, max_iterations=0))
        assert [s.p_target for s in t.steps] == [pytest.approx(1 / 16, abs=1e-15)]
        assert t.m_star == 0 and t.oracle_calls == 0

    def test_variant_mismatch(self):
        g = SearchConfig(2, 1, Variant.GROVER)
        w = SearchConfig(2, 1, Variant.WQSA, 2)
        with pytest.raises(DomainError):
            wqsa_iterate(uniform_state(2), g)
        with pytest.raises(DomainError):
            grover_iterate(uniform_state(2), w)

    def test_grover_equals_wqsa_k0(self):
        g = run_search(SearchConfig(7, 33, Variant.GROVER))
        w = run_search(SearchConfig(7, 33, Variant.WQSA, 0))
        np.testing.assert_allclose(g.p_targets, w.p_targets, atol=1e-12)


class TestRunSearch:
    def test_wqsa_n10_lambda5(self):
        k = scale_to_index(5, 1)
        assert k == 16
        t = run_search(SearchConfig(10, 12, Variant.WQSA, k))
        assert t.m_star == 6 and t.p_star >= 0.99

    def test_baseline_n10(self):
        t = run_search(SearchConfig(10, 12, Variant.GROVER))
        assert t.m_star == 25 and t.p_star >= 0.999

    def test_k1_matches_baseline(self):
        g = run_search(SearchConfig(10, 700, Variant.GROVER))
        w = run_search(SearchConfig(10, 700, Variant.WQSA, 1))
        assert w.m_star == g.m_star
        assert w.p_star == pytest.approx(g.p_star, abs=1e-12)

    def test_default_iterations(self):
        cfg = SearchConfig(8, 3, Variant.WQSA, 4)
        assert cfg.iterations == int(np.ceil(np.pi * np.sqrt(64)))
        assert SearchConfig(8, 3, Variant.GROVER).iterations == int(np.ceil(np.pi * 16))

    def test_oracle_calls_track_iterations(self):
        t = run_search(SearchConfig(6, 5, Variant.WQSA, 2))
        assert [s.oracle_calls for s in t.steps] == [s.m for s in t.steps]
        assert t.oracle_calls == t.steps[-1].m == t.config.iterations
        assert all(0.0 <= s.p_target <= 1.0 for s in t.steps)

    def test_trace_optional(self):
        cfg = SearchConfig(6, 5, Variant.WQSA, 2, record_trace=False)
        t = run_search(cfg)
        assert t.steps == ()
        assert t.m_star == run_search(SearchConfig(6, 5, Variant.WQSA, 2)).m_star

    def test_config_validation(self):
        with pytest.raises(DomainError):
            SearchConfig(3, 8)
        with pytest.raises(DomainError):
            SearchConfig(3, 1, Variant.WQSA, 9)
        with pytest.raises(DomainError):
            SearchConfig(3, 1, max_iterations=-1)
        with pytest.raises(ValueError):
            SearchConfig(3, 1, "fourier")

    def test_matches_plane_oracle(self):
        for n, lam, j, w in [(8, 3, 2, 64), (8, 3, 2, 127), (9, 6, 20, 304), (9, 6, 20, 319)]:
            k = scale_to_index(lam, j)
            idx = index_to_scale(n, k)
            eps = idx.sign_at(w)
            t = run_search(SearchConfig(n, w, Variant.WQSA, k))
            oracle = plane_probabilities(idx.n1, eps, t.config.iterations)
            np.testing.assert_allclose(t.p_targets, oracle, atol=1e-10, rtol=0)

    def test_run_batch_matches_run_search(self):
        targets = [0, 5, 17, 31]
        p = run_batch(5, targets, 12, Variant.WQSA, 2)
        for col, w in enumerate(targets):
            t = run_search(SearchConfig(5, w, Variant.WQSA, 2, max_iterations=12))
            np.testing.assert_allclose(p[:, col], t.p_targets, atol=1e-15)


class TestDynamicsInvariants:
    def test_norm_after_many_iterations(self):
        cfg = SearchConfig(12, 1000, Variant.WQSA, 3, max_iterations=10_000, record_trace=False)
        t = run_search(cfg)
        assert abs(t.final_state.norm_squared() - 1) <= 1e-10

    @pytest.mark.parametrize("n,k,w", [(6, 2, 3), (6, 2, 20), (7, 9, 8), (7, 9, 15), (8, 1, 200)])
    def test_state_stays_in_target_plane(self, n, k, w):
        psi0 = wavelet_initial_state(n, k).amplitudes
        e_w = np.zeros(2**n)
        e_w[w] = 1
        r = psi0 - psi0[w] * e_w
        r /= np.linalg.norm(r)
        for _, s in iter_states(SearchConfig(n, w, Variant.WQSA, k)):
            x = s.amplitudes
            resid = x - x[w] * e_w - np.vdot(r, x) * r
            assert np.linalg.norm(resid) <= 1e-10


def test_first_peak():
    assert first_peak([0.1]) == 0
    assert first_peak([0.1, 0.5, 0.9, 0.4, 0.95, 0.2]) == 2
    assert first_peak([0.5, 0.5, 0.5]) == 1
    assert first_peak([0.0, 0.0, 0.0, 0.0]) == 1
    assert first_peak([0.2, 0.8]) == 1
