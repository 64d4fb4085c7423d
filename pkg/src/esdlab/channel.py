"""Local depolarizing evolution with nonuniform coupling, and local filtering.

The channel shrinks each qubit's Bloch components by its own noise factor
s_i; the pair (s1, s2) derives from a global parameter s in (0, 1] and a
nonuniformity delta in [0, 1] as s1 = s^(1+delta), s2 = s^(1-delta).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from esdlab.qstate import PAULI, PAULI2


@dataclass(frozen=True)
class ChannelParams:
    """Nonuniformity ``delta`` and global noise parameter ``s`` (s = e^-t)."""

    delta: float
    s: float

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta}")
        if not 0.0 < self.s <= 1.0:
            raise ValueError(f"s must lie in (0, 1], got {self.s}")

    @property
    def s1(self) -> float:
        return self.s ** (1.0 + self.delta)

    @property
    def s2(self) -> float:
        return self.s ** (1.0 - self.delta)


def kraus_ops(s: float) -> list[np.ndarray]:
    """Single-qubit depolarizing Kraus set
    E0 = sqrt(3s+1)/2 I, Ej = sqrt(1-s)/2 sigma_j."""
    ops = [0.5 * np.sqrt(3.0 * s + 1.0) * PAULI[0]]
    ops += [0.5 * np.sqrt(1.0 - s) * PAULI[j] for j in (1, 2, 3)]
    return ops


def corr_tensor(rho: np.ndarray) -> np.ndarray:
    """Pauli expansion coefficients T[m, n] = tr(rho sigma_m (x) sigma_n).

    Real-valued for Hermitian input; T[0, 0] is the trace.
    """
    return np.real(np.einsum('ij,mnji->mn', np.asarray(rho), PAULI2))


def state_from_corr(T: np.ndarray) -> np.ndarray:
    """Reassemble a density matrix from Pauli coefficients."""
    return np.einsum('mn,mnij->ij', np.asarray(T), PAULI2) / 4.0


def _scale_weights(s1, s2):
    f1 = np.stack([np.ones_like(s1), s1, s1, s1], axis=-1)
    f2 = np.stack([np.ones_like(s2), s2, s2, s2], axis=-1)
    return f1[..., :, None] * f2[..., None, :]


def evolve_corr(T: np.ndarray, s1, s2) -> np.ndarray:
    """Scale Pauli coefficients by the per-qubit shrink factors.

    Broadcasts over leading axes of ``s1``/``s2``: passing arrays of shape
    (k,) returns the evolved coefficients with shape (k, 4, 4).
    """
    return _scale_weights(np.asarray(s1, dtype=float), np.asarray(s2, dtype=float)) * T


def apply_depolarizing(rho: np.ndarray, ch: ChannelParams, method: str = "bloch") -> np.ndarray:
    """Evolve a state under the two local depolarizing channels.

    ``method="bloch"`` scales the correlation tensor (fast path);
    ``method="kraus"`` sums the sixteen two-qubit Kraus terms.  The two agree
    to within 1e-12 (pinned by the test suite).
    """
    s1, s2 = ch.s1, ch.s2
    if method == "bloch":
        return state_from_corr(evolve_corr(corr_tensor(rho), s1, s2))
    if method == "kraus":
        out = np.zeros((4, 4), dtype=complex)
        for a in kraus_ops(s1):
            for b in kraus_ops(s2):
                k = np.kron(a, b)
                out += k @ rho @ k.conj().T
        return out
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class LocalFilter:
    """Trace-decreasing local map rho -> (M rho M^dag)/tr, M = I + a . sigma.

    ``a`` is a real 3-vector with |a| <= 1 so M is positive semidefinite;
    ``side`` selects which qubit M acts on ("q1" or "q2").
    """

    a: tuple[float, float, float]
    side: str = "q2"

    def __post_init__(self):
        if np.linalg.norm(self.a) > 1.0 + 1e-12:
            raise ValueError(f"|a| must be <= 1, got {np.linalg.norm(self.a)}")
        if self.side not in ("q1", "q2"):
            raise ValueError("side must be 'q1' or 'q2'")

    @property
    def matrix(self) -> np.ndarray:
        return PAULI[0] + sum(ai * PAULI[j + 1] for j, ai in enumerate(self.a))


def apply_filter(rho: np.ndarray, f: LocalFilter) -> tuple[np.ndarray, float]:
    """Apply a local filter and renormalize.

    Returns ``(state, gamma)`` where gamma = 1/tr[(M rho M^dag)] is the
    renormalization.  Raises ``ValueError`` when the filter annihilates the
    state (trace below 1e-12).
    """
    m = f.matrix
    k = np.kron(m, PAULI[0]) if f.side == "q1" else np.kron(PAULI[0], m)
    out = k @ np.asarray(rho, dtype=complex) @ k.conj().T
    tr = float(np.real(out.trace()))
    if tr <= 1e-12:
        raise ValueError(f"filter annihilates the state: trace {tr:.3e}")
    gamma = 1.0 / tr
    return gamma * out, gamma
