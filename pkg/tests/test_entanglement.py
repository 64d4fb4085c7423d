import numpy as np
import pytest

from esdlab.entanglement import (
    _concurrence_eig,
    concurrence,
    concurrence_ansatz,
    concurrence_batch,
    measures_of,
    negativity,
    negativity_ansatz,
    negativity_batch,
    partial_transpose,
)
from esdlab.qstate import (
    AnsatzParams,
    RandomSpec,
    haar_unitary,
    make_ansatz,
    random_pure_state,
    random_state,
)

BELL = make_ansatz(AnsatzParams(1.0, np.pi / 4))
KET00 = np.diag([1.0, 0, 0, 0]).astype(complex)
MIXED = np.eye(4, dtype=complex) / 4.0


class TestConcurrence:
    def test_bell(self):
        assert abs(concurrence(BELL) - 1.0) < 1e-12

    def test_ansatz_value(self):
        # C = r sin(2 theta): at (1, pi/6) -> sqrt(3)/2
        rho = make_ansatz(AnsatzParams(1.0, np.pi / 6))
        assert abs(concurrence(rho) - np.sqrt(3) / 2) < 1e-12

    def test_separable(self):
        assert concurrence(MIXED) < 1e-12
        assert concurrence(KET00) < 1e-12

    def test_closed_form_chart(self):
        p = AnsatzParams(0.8, np.pi / 4)
        assert abs(concurrence_ansatz(p) - 0.8) < 1e-15

    def test_pure_limit_equals_negativity(self):
        for th in np.linspace(0.05, np.pi / 2 - 0.05, 9):
            p = AnsatzParams(1.0, th)
            assert abs(concurrence_ansatz(p) - negativity_ansatz(p)) < 1e-12

    def test_theta_zero_separable(self):
        p = AnsatzParams(0.7, 0.0)
        assert concurrence_ansatz(p) == 0.0
        assert negativity_ansatz(p) < 1e-15

    def test_eig_route_agrees(self, rng):
        # the non-symmetric eigenvalue route conditions like sqrt(eps)
        # near degeneracies, hence the looser tolerance
        spec = RandomSpec(seed=17, count=200, spectrum_mode="alpha")
        for i in range(200):
            rho = random_state(spec, i)
            assert abs(concurrence(rho) - _concurrence_eig(rho)) < 1e-8


class TestNegativity:
    def test_ansatz_half(self):
        rho = make_ansatz(AnsatzParams(0.5, np.pi / 4))
        assert abs(negativity(rho) - (np.sqrt(2) - 1) / 2) < 1e-12

    def test_ansatz_08(self):
        rho = make_ansatz(AnsatzParams(0.8, np.pi / 4))
        assert abs(negativity(rho) - (np.sqrt(0.68) - 0.2)) < 1e-12

    def test_product_state(self):
        assert negativity(KET00) < 1e-14

    def test_single_negative_eigenvalue(self):
        spec = RandomSpec(seed=23, count=500, spectrum_mode="simplex")
        rhos = np.stack([random_state(spec, i) for i in range(500)])
        negativity_batch(rhos)  # raises if any state has two negative PT eigenvalues


class TestPartialTranspose:
    def test_diagonal_unchanged(self):
        d = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        assert np.abs(partial_transpose(d) - d).max() < 1e-15

    def test_bell_minimum_eigenvalue(self):
        ev = np.linalg.eigvalsh(partial_transpose(BELL))
        assert abs(ev.min() + 0.5) < 1e-12

    def test_involution(self, rng):
        spec = RandomSpec(seed=3, count=20, spectrum_mode="alpha")
        for i in range(20):
            rho = random_state(spec, i)
            assert np.abs(partial_transpose(partial_transpose(rho)) - rho).max() < 1e-15

    def test_trace_and_hermiticity(self):
        rho = make_ansatz(AnsatzParams(0.7, 0.5))
        pt = partial_transpose(rho)
        assert abs(pt.trace() - 1) < 1e-14
        assert np.abs(pt - pt.conj().T).max() < 1e-14


class TestClosedFormEquivalence:
    def test_ansatz_grid(self, rng):
        rs = rng.uniform(0, 1, 10_000)
        ths = rng.uniform(0, np.pi / 2, 10_000)
        rhos = np.zeros((10_000, 4, 4), dtype=complex)
        ct, st = np.cos(ths), np.sin(ths)
        rhos[:, 0, 0] = rs * ct * ct
        rhos[:, 3, 3] = rs * st * st
        rhos[:, 0, 3] = rhos[:, 3, 0] = rs * st * ct
        rhos[:, 1, 1] = 1 - rs
        c = concurrence_batch(rhos)
        n = negativity_batch(rhos)
        assert np.abs(c - rs * np.sin(2 * ths)).max() < 1e-10
        expected_n = np.sqrt((rs * np.sin(2 * ths)) ** 2 + (1 - rs) ** 2) - (1 - rs)
        assert np.abs(n - expected_n).max() < 1e-10


class TestRegionAndInvariance:
    def test_cn_region_bounds(self):
        # N <= C and N >= sqrt((1-C)^2 + C^2) - (1-C) over both spectrum modes
        for mode in ("simplex", "alpha"):
            spec = RandomSpec(seed=29, count=10_000, spectrum_mode=mode)
            rhos = np.stack([random_state(spec, i) for i in range(10_000)])
            c = concurrence_batch(rhos)
            n = negativity_batch(rhos)
            assert (n <= c + 1e-10).all()
            lower = np.sqrt((1 - c) ** 2 + c ** 2) - (1 - c)
            assert (n >= lower - 1e-10).all()

    def test_pure_states_c_equals_n(self, rng):
        for _ in range(1000):
            psi = random_pure_state(rng)
            assert abs(concurrence(psi) - negativity(psi)) < 1e-10

    def test_local_unitary_invariance(self, rng):
        spec = RandomSpec(seed=41, count=50, spectrum_mode="alpha")
        for i in range(50):
            rho = random_state(spec, i)
            u = np.kron(haar_unitary(rng, 2), haar_unitary(rng, 2))
            rho2 = u @ rho @ u.conj().T
            assert abs(concurrence(rho) - concurrence(rho2)) < 1e-10
            assert abs(negativity(rho) - negativity(rho2)) < 1e-10


def test_measures_of():
    m = measures_of(BELL)
    assert abs(m.concurrence - 1) < 1e-12
    assert abs(m.negativity - 1) < 1e-12
