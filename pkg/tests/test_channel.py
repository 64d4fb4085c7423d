import numpy as np
import pytest

from esdlab.channel import (
    ChannelParams,
    LocalFilter,
    apply_depolarizing,
    apply_filter,
    corr_tensor,
    evolve_corr,
    kraus_ops,
    state_from_corr,
)
from esdlab.entanglement import concurrence
from esdlab.qstate import AnsatzParams, RandomSpec, make_ansatz, params_from_cp, \
    random_state, validate_state
from esdlab.suites import factorization_suite

BELL = make_ansatz(AnsatzParams(1.0, np.pi / 4))


class TestChannelParams:
    def test_derived_factors(self):
        ch = ChannelParams(delta=0.5, s=0.8)
        assert abs(ch.s1 - 0.8 ** 1.5) < 1e-15
        assert abs(ch.s2 - 0.8 ** 0.5) < 1e-15
        assert ch.s1 <= ch.s2

    def test_endpoints(self):
        assert ChannelParams(delta=0.0, s=0.7).s1 == ChannelParams(delta=0.0, s=0.7).s2
        ch = ChannelParams(delta=1.0, s=0.7)
        assert abs(ch.s1 - 0.49) < 1e-15
        assert ch.s2 == 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            ChannelParams(delta=1.5, s=0.5)
        with pytest.raises(ValueError):
            ChannelParams(delta=0.5, s=0.0)


class TestDepolarizing:
    def test_kraus_completeness(self):
        for s in (0.1, 0.5, 1.0):
            acc = sum(k.conj().T @ k for k in kraus_ops(s))
            assert np.abs(acc - np.eye(2)).max() < 1e-14

    def test_identity_at_s_one(self, rng):
        spec = RandomSpec(seed=2, count=5, spectrum_mode="alpha")
        for i in range(5):
            rho = random_state(spec, i)
            for delta in (0.0, 0.4, 1.0):
                out = apply_depolarizing(rho, ChannelParams(delta=delta, s=1.0))
                assert np.abs(out - rho).max() < 1e-13

    def test_kraus_matches_bloch_scaling(self):
        spec = RandomSpec(seed=12, count=20, spectrum_mode="simplex")
        gen = np.random.default_rng(0)
        for i in range(20):
            rho = random_state(spec, i)
            ch = ChannelParams(delta=gen.uniform(0, 1), s=gen.uniform(0.05, 1.0))
            a = apply_depolarizing(rho, ch, method="bloch")
            b = apply_depolarizing(rho, ch, method="kraus")
            assert np.abs(a - b).max() < 1e-12

    def test_bell_one_sided_pattern(self):
        # one-sided evolution keeps the Bell state in X form with
        # diagonal (1 +/- s^2)/4 and coherence s^2/2
        s = 0.8
        out = apply_depolarizing(BELL, ChannelParams(delta=1.0, s=s))
        d = (1 + s * s) / 4, (1 - s * s) / 4
        assert np.allclose(np.diag(out).real, [d[0], d[1], d[1], d[0]], atol=1e-14)
        assert abs(out[0, 3] - s * s / 2) < 1e-14
        assert abs(out[1, 2]) < 1e-14
        # its concurrence is (3 s^2 - 1)/2, vanishing at s = 1/sqrt(3)
        assert abs(concurrence(out) - (3 * s * s - 1) / 2) < 1e-12
        dead = apply_depolarizing(BELL, ChannelParams(delta=1.0, s=1 / np.sqrt(3)))
        assert concurrence(dead) < 1e-12

    def test_full_depolarization_limit(self, rng):
        spec = RandomSpec(seed=8, count=3, spectrum_mode="alpha")
        for i in range(3):
            out = apply_depolarizing(random_state(spec, i),
                                     ChannelParams(delta=0.0, s=1e-7))
            assert np.abs(out - np.eye(4) / 4).max() < 1e-6

    def test_output_valid(self, rng):
        spec = RandomSpec(seed=9, count=10, spectrum_mode="simplex")
        for i in range(10):
            out = apply_depolarizing(random_state(spec, i),
                                     ChannelParams(delta=0.7, s=0.6))
            validate_state(out)

    def test_composition_in_s(self):
        # Bloch shrinking composes multiplicatively per qubit
        rho = make_ansatz(AnsatzParams(0.7, 0.6))
        for delta in (0.0, 0.5, 1.0):
            once = apply_depolarizing(rho, ChannelParams(delta=delta, s=0.72))
            a = apply_depolarizing(rho, ChannelParams(delta=delta, s=0.9))
            twice = apply_depolarizing(a, ChannelParams(delta=delta, s=0.8))
            assert np.abs(once - twice).max() < 1e-12

    def test_corr_tensor_roundtrip(self, rng):
        spec = RandomSpec(seed=14, count=5, spectrum_mode="alpha")
        for i in range(5):
            rho = random_state(spec, i)
            assert np.abs(state_from_corr(corr_tensor(rho)) - rho).max() < 1e-13

    def test_evolve_corr_broadcast(self):
        t = corr_tensor(BELL)
        s = np.array([0.9, 0.5])
        out = evolve_corr(t, s, s)
        assert out.shape == (2, 4, 4)
        assert np.abs(out[1] - evolve_corr(t, 0.5, 0.5)).max() < 1e-15


class TestFilter:
    def test_identity_filter(self):
        rho = make_ansatz(AnsatzParams(0.6, 0.8))
        out, gamma = apply_filter(rho, LocalFilter(a=(0.0, 0.0, 0.0)))
        assert np.abs(out - rho).max() < 1e-13
        assert abs(gamma - 1.0) < 1e-13       # M = I leaves the trace at 1

    def test_chart_relation(self):
        # filtering the theta = pi/4 family along z reproduces the
        # (c, p) -> (r, theta) chart
        for c, p in [(0.5, 0.4), (0.9, 0.8), (0.3, 1.7)]:
            rho0 = make_ansatz(AnsatzParams(c, np.pi / 4))
            f = LocalFilter(a=(0.0, 0.0, (1 - p) / (1 + p)), side="q2")
            out, _ = apply_filter(rho0, f)
            expect = make_ansatz(params_from_cp(c, p))
            assert np.abs(out - expect).max() < 1e-12

    def test_pure_stays_pure(self, rng):
        psi = make_ansatz(AnsatzParams(1.0, 0.6))
        out, _ = apply_filter(psi, LocalFilter(a=(0.2, 0.1, 0.5), side="q1"))
        ev = np.linalg.eigvalsh(out)
        assert abs(ev[-1] - 1.0) < 1e-12

    def test_annihilation_raises(self):
        ket01 = np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex)
        with pytest.raises(ValueError, match="annihilates"):
            apply_filter(ket01, LocalFilter(a=(0.0, 0.0, 1.0), side="q2"))

    def test_filter_norm_validation(self):
        with pytest.raises(ValueError):
            LocalFilter(a=(1.0, 1.0, 0.0))


class TestEvolutionLaws:
    def test_factorization_suite(self):
        rep = factorization_suite(seed=20240, count=200)
        for row in rep["rows"]:
            assert row["passed"], row
        assert rep["passed"]
