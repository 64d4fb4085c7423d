"""Named verification suites behind ``esdlab verify`` and the acceptance tests.

Each suite returns a dict with a ``passed`` flag and a list of row dicts for
tabular reporting.
"""

from __future__ import annotations

import numpy as np

from esdlab.channel import corr_tensor, evolve_corr, state_from_corr
from esdlab.entanglement import concurrence
from esdlab.extremal import mfes_concurrence_general, quasi_mfes
from esdlab.mcstats import envelope_check, run_ensemble
from esdlab.qstate import PAULI, AnsatzParams, RandomSpec, fidelity, haar_unitary, \
    make_ansatz, random_pure_state

_BELL = make_ansatz(AnsatzParams(r=1.0, theta=np.pi / 4))


def _random_mixed(rng) -> np.ndarray:
    u = haar_unitary(rng)
    lam = rng.dirichlet(np.ones(4))
    rho = (u * lam) @ u.conj().T
    return 0.5 * (rho + rho.conj().T)


def _random_one_sided_map(rng):
    """A random one-sided map on qubit 1: depolarizing or a local filter.

    Returns a function rho -> (possibly unnormalized) output; concurrence is
    degree-1 homogeneous so unnormalized outputs feed it directly.
    """
    if rng.uniform() < 0.5:
        s1 = rng.uniform(0.05, 0.95)

        def dep(rho):
            return state_from_corr(evolve_corr(corr_tensor(rho), s1, 1.0))
        return dep
    a = rng.normal(size=3)
    a *= rng.uniform(0.0, 0.9) / np.linalg.norm(a)
    m = PAULI[0] + a[0] * PAULI[1] + a[1] * PAULI[2] + a[2] * PAULI[3]
    k = np.kron(m, PAULI[0])

    def filt(rho):
        return k @ rho @ k.conj().T
    return filt


def factorization_suite(seed: int = 20240, count: int = 200, tol: float = 1e-8) -> dict:
    """One-sided evolution laws: pure-state factorization, the mixed-state
    inequality, and the filter-pair product identity."""
    rng = np.random.default_rng(seed)
    worst_pure = worst_pair = 0.0
    worst_mixed = -np.inf
    for _ in range(count):
        chan = _random_one_sided_map(rng)
        c_bell = concurrence(chan(_BELL))

        psi = random_pure_state(rng)
        lhs = concurrence(chan(psi))
        worst_pure = max(worst_pure, abs(lhs - c_bell * concurrence(psi)))

        rho = _random_mixed(rng)
        worst_mixed = max(worst_mixed,
                          concurrence(chan(rho)) - c_bell * concurrence(rho))

        rho0 = _random_mixed(rng)
        while concurrence(rho0) < 0.05:
            rho0 = _random_mixed(rng)
        a = rng.normal(size=3)
        a *= rng.uniform(0.0, 0.9) / np.linalg.norm(a)
        m = PAULI[0] + a[0] * PAULI[1] + a[1] * PAULI[2] + a[2] * PAULI[3]
        k2 = np.kron(PAULI[0], m)
        filtered = k2 @ rho0 @ k2.conj().T
        rho1 = filtered / np.real(filtered.trace())
        lhs = concurrence(chan(rho1)) * concurrence(rho0)
        rhs = concurrence(chan(rho0)) * concurrence(rho1)
        worst_pair = max(worst_pair, abs(lhs - rhs))

    rows = [
        dict(check="pure-state factorization", n=count, worst=worst_pure,
             tol=tol, passed=worst_pure <= tol),
        dict(check="mixed-state inequality slack", n=count, worst=worst_mixed,
             tol=tol, passed=worst_mixed <= tol),
        dict(check="filter-pair product identity", n=count, worst=worst_pair,
             tol=tol, passed=worst_pair <= tol),
    ]
    return dict(suite="factorization", rows=rows, passed=all(r["passed"] for r in rows))


def quasi_fidelity_suite(deltas=None, betas=None, bound: float = 1 - 1e-4) -> dict:
    """Fidelity between each quasi-fragile state and the exact most-fragile
    state at the same robustness."""
    deltas = np.round(np.arange(0.1, 0.95, 0.1), 10) if deltas is None else deltas
    betas = np.round(np.arange(0.05, 0.50, 0.05), 10) if betas is None else betas
    fmin, fargs = 1.0, None
    for d in deltas:
        for b in betas:
            q = quasi_mfes(float(d), float(b))
            partner = mfes_concurrence_general(float(d), 1.0 - q.robustness)
            f = fidelity(make_ansatz(q.params), make_ansatz(partner.params))
            if f < fmin:
                fmin, fargs = f, (float(d), float(b))
    rows = [dict(check="min quasi/exact fidelity", n=len(deltas) * len(betas),
                 worst=fmin, tol=bound, passed=fmin >= bound, argmin=fargs)]
    return dict(suite="quasifidelity", rows=rows, passed=fmin >= bound)


def envelope_suite(seed: int = 20240, count: int = 2000, deltas=(0.0, 0.5, 1.0),
                   modes=("simplex", "alpha"), tol: float = 1e-6) -> dict:
    """Random states stay inside the extremal robustness envelope for both
    entanglement measures, every channel asymmetry and spectrum mode."""
    rows = []
    for delta in deltas:
        for mode in modes:
            spec = RandomSpec(seed=seed, count=count, spectrum_mode=mode)
            result = run_ensemble(spec, delta, with_normalized=False)
            for measure in ("c", "n"):
                rep = envelope_check(result.records, delta, measure, tol=tol)
                rows.append(dict(check=f"delta={delta} mode={mode} measure={measure}",
                                 n=rep.n_records, worst=rep.n_violations, tol=0,
                                 passed=rep.n_violations == 0,
                                 discarded=result.discarded,
                                 adjudicated=rep.adjudicated))
    return dict(suite="envelope", rows=rows, passed=all(r["passed"] for r in rows))
