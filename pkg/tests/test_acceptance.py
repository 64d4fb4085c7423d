"""Acceptance gate: every release criterion at its pinned tolerance.

Each test prints one PASS/FAIL line (run pytest with -rA or -s to see the
full list).  The ensembles behind the statistical criteria are deterministic
(seeded, order-independent), so these results are reproducible bit for bit.
"""

import time

import numpy as np
import pytest
from scipy import stats

from esdlab.entanglement import _negativity_ansatz
from esdlab.extremal import (
    R_MAX,
    cpn_c_min,
    mfes_concurrence_one_sided,
    mfes_concurrence_uniform,
    mfes_negativity_one_sided,
    mres_concurrence,
    negativity_extremals,
    params_from_cp,
)
from esdlab.mcstats import envelope_check
from esdlab.qstate import AnsatzParams, make_ansatz
from esdlab.robustness import (
    _s_crit_numeric_batch,
    robustness_pure,
    s_crit_ansatz,
    s_crit_numeric,
)
from esdlab.suites import factorization_suite, quasi_fidelity_suite

SQ3 = np.sqrt(3.0)
DELTAS = (0.0, 0.25, 0.5, 0.75, 1.0)
SEED = 20240
N_DESK = 20000


def _report(name: str, ok: bool, detail: str = ""):
    print(f"{'PASS' if ok else 'FAIL'}: {name}" + (f"  [{detail}]" if detail else ""))
    assert ok, f"{name}: {detail}"


class TestAcceptance:
    def test_01_bell_robustness(self):
        t0 = time.perf_counter()
        bell = AnsatzParams(1.0, np.pi / 4)
        worst = 0.0
        for delta in DELTAS:
            worst = max(worst, abs(s_crit_ansatz(bell, delta).s_crit - 1 / SQ3))
            worst = max(worst, abs(s_crit_numeric(make_ansatz(bell), delta).s_crit - 1 / SQ3))
        dt = time.perf_counter() - t0
        _report("bell robustness 1/sqrt(3) across delta (both methods)",
                worst <= 1e-8 and dt < 1.0, f"worst={worst:.2e} time={dt:.2f}s")

    def test_02_one_sided_pure_universality(self):
        thetas = np.linspace(0.01, np.pi / 2 - 0.01, 50)
        rhos = np.stack([make_ansatz(AnsatzParams(1.0, float(t))) for t in thetas])
        s, _ = _s_crit_numeric_batch(rhos, 1.0)
        worst = np.abs((1.0 - s) - (1 - 1 / SQ3)).max()
        _report("one-sided pure states share the Bell robustness",
                worst <= 1e-7, f"worst={worst:.2e} over 50 thetas")

    def test_03_c_chart_classification(self):
        gen = np.random.default_rng(SEED)
        cs = gen.uniform(0.05, 1.0, 500)
        ps = np.tan(gen.uniform(0.05, np.pi / 2 - 0.05, 500))
        rhos = np.stack([make_ansatz(params_from_cp(float(c), float(p)))
                         for c, p in zip(cs, ps)])
        s, _ = _s_crit_numeric_batch(rhos, 1.0)
        worst = np.abs((1.0 - s) - (1 - np.sqrt((2 - cs) / (2 + cs)))).max()
        _report("one-sided robustness depends only on the chart parameter c",
                worst <= 1e-7, f"worst={worst:.2e} over 500 states")

    def test_04_uniform_pure_law(self):
        grid = np.linspace(0.01, 1.0, 100)
        worst = max(abs(robustness_pure(float(C), 0.0).robustness
                        - (1 - 1 / np.sqrt(2 * C + 1))) for C in grid)
        _report("uniform-channel pure-state law R = 1 - 1/sqrt(2C+1)",
                worst <= 1e-8, f"worst={worst:.2e} on 100-point grid")

    def test_05_factorization_suites(self):
        t0 = time.perf_counter()
        rep = factorization_suite(seed=SEED, count=200, tol=1e-8)
        dt = time.perf_counter() - t0
        detail = "; ".join(f"{r['check']}: {r['worst']:.2e}" for r in rep["rows"])
        _report("one-sided evolution laws (factorization, inequality, pairs)",
                rep["passed"] and dt < 30.0, f"{detail}; time={dt:.1f}s")

    def test_06_quasi_mfes_fidelity(self):
        rep = quasi_fidelity_suite()
        row = rep["rows"][0]
        _report("quasi-fragile family fidelity >= 1 - 1e-4 on the (delta, beta) grid",
                rep["passed"], f"min F = {row['worst']:.8f} at {row['argmin']}")

    def test_07_envelope_reproduction(self, ensemble_cache):
        t0 = time.perf_counter()
        total_viol = 0
        details = []
        for delta in (0.0, 0.5, 1.0):
            for mode in ("simplex", "alpha"):
                res = ensemble_cache(SEED, N_DESK, mode, delta, False)
                for measure in ("c", "n"):
                    rep = envelope_check(res.records, delta, measure, tol=1e-6)
                    total_viol += rep.n_violations
                    details.append(f"d{delta:g}/{mode}/{measure}: "
                                   f"{rep.n_violations}/{rep.n_records}")
        dt = time.perf_counter() - t0
        _report("zero envelope violations, 20000 states x 3 deltas x 2 modes",
                total_viol == 0 and dt < 600.0,
                f"{'; '.join(details)}; time={dt:.0f}s")

    def test_08_table1_constraints(self):
        worst = 0.0
        grid = np.arange(1, 51) / 51.0
        # uniform channel, concurrence: MRES pure, MFES piecewise
        for C in grid:
            worst = max(worst, abs(mres_concurrence(float(C), 0.0).params.r - 1.0))
            pt = mfes_concurrence_uniform(float(C))
            res = (abs(pt.params.theta - np.pi / 4) if C >= 0.5
                   else abs(pt.params.r - 0.5))
            worst = max(worst, res)
        # uniform channel, negativity: MRES theta = pi/4, MFES pure
        for s in 1 / SQ3 + (1 - 1 / SQ3) * grid[:-1]:
            mres, mfes = negativity_extremals(0.0, float(s))
            worst = max(worst, abs(mres.params.theta - np.pi / 4),
                        abs(mfes.params.r - 1.0))
        # one-sided channel, concurrence: MRES pure, MFES 2 r cos^2(theta) = 1
        for C in grid:
            worst = max(worst, abs(mres_concurrence(float(C), 1.0).params.r - 1.0))
            pt = mfes_concurrence_one_sided(float(np.arctan(C)))
            worst = max(worst, abs(2 * pt.params.r * np.cos(pt.params.theta) ** 2 - 1))
        # one-sided channel, negativity: MRES pure, MFES from the chart relation
        c_min = cpn_c_min()
        for c in c_min + (1 - c_min) * grid:
            pt = mfes_negativity_one_sided(float(c))
            worst = max(worst, abs(pt.params.c - c))
            num = 2 * np.sqrt(2 - c) * (c - 1) * c ** 1.5 + 2 * c * c - c ** 3
            den = -8 + 24 * c - 20 * c * c + 5 * c ** 3
            worst = max(worst, abs(pt.params.p - np.sqrt(num / den)))
        _report("all eight extremal-family constraints on 50-point samples",
                worst <= 1e-9, f"worst residual={worst:.2e}")

    def test_09_lagrange_extremals(self):
        worst = 0.0
        for s in np.linspace(1 / SQ3 + 1e-3, 0.995, 50):
            mres, mfes = negativity_extremals(0.0, float(s))
            worst = max(worst, abs(mres.params.theta - np.pi / 4),
                        abs(mfes.params.r - 1.0))
        ok_uniform = worst <= 1e-8
        r_min = 1.0
        for R in R_MAX * np.arange(1, 21) / 21.0:
            _, mfes = negativity_extremals(0.5, 1.0 - float(R))
            r_min = min(r_min, mfes.params.r)
        ok_mid = r_min > 0.75 + 1e-3
        _report("constrained extremals: uniform-channel solutions and r > 3/4",
                ok_uniform and ok_mid,
                f"uniform residual={worst:.2e}; min fragile r={r_min:.4f}")

    def test_10_statistical_trends(self, ensemble_cache):
        res0 = ensemble_cache(SEED, N_DESK, "alpha", 0.0)
        from esdlab.mcstats import binned_averages

        def binned_corr(records, quantity):
            s = binned_averages(records, "robustness", 25, quantity)
            centers = 0.5 * (s.bin_edges[:-1] + s.bin_edges[1:])
            ok = s.counts > 0
            return stats.spearmanr(centers[ok], s.means[ok])

        rc = binned_corr(res0.records, "concurrence")
        rs = binned_corr(res0.records, "linear_entropy")
        ok0 = rc.statistic > 0.95 and rc.pvalue < 0.01 \
            and rs.statistic < -0.9 and rs.pvalue < 0.01

        res1 = ensemble_cache(SEED, N_DESK, "alpha", 1.0)
        ok1 = True
        details1 = []
        for key in ("r_tilde_c", "r_tilde_n"):
            pairs = [(getattr(r, key), r.delta_r) for r in res1.records
                     if getattr(r, key) is not None and getattr(r, key) < 0.4]
            x, y = np.array(pairs).T
            tr = stats.spearmanr(x, y)
            details1.append(f"{key}: rho={tr.statistic:.3f} p={tr.pvalue:.1e}")
            ok1 = ok1 and tr.statistic < 0 and tr.pvalue < 0.01
        _report("statistical trends (entanglement up, mixedness down, "
                "asymmetry down for fragile states)",
                ok0 and ok1,
                f"corr(R,C)={rc.statistic:.3f}, corr(R,S_L)={rs.statistic:.3f}; "
                + "; ".join(details1))
