"""Critical noise parameter s_crit and robustness R = 1 - s_crit.

Two routes are provided and cross-checked: a generic root finder on the
minimum partial-transpose eigenvalue of the evolved state, and the closed
criticality polynomial on the ansatz family.  Entanglement of any two-qubit
state dies at or before the Bell value, so every root lies in [1/sqrt(3), 1)
and the search bracket [1/3, 1] is always valid (the local channel is
entanglement-breaking at s <= 1/3).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from esdlab.channel import evolve_corr
from esdlab.entanglement import negativity
from esdlab.qstate import PAULI2, AnsatzParams

SEPARABLE_TOL = 1e-9
_S_MIN_BELL = 1.0 / np.sqrt(3.0)
_SCAN_STEP = 1.0 / 256.0
_BISECT_TOL = 1e-12


class SeparableStateError(ValueError):
    """Robustness is undefined: the input has no entanglement to lose."""


class BracketError(RuntimeError):
    """Root bracketing failed; carries the list of detected sign-change brackets."""

    def __init__(self, message: str, brackets=None):
        super().__init__(message)
        self.brackets = list(brackets or [])


@dataclass(frozen=True)
class RobustnessResult:
    """Critical noise parameter with its residual and provenance.

    ``method`` is one of ``"ppt_bisection"``, ``"ansatz_polynomial"``,
    ``"pure_closed_form"``; ``residual`` is the value of the root function at
    ``s_crit``.
    """

    s_crit: float
    method: str
    residual: float

    def __post_init__(self):
        if not 0.0 < self.s_crit <= 1.0:
            raise ValueError(f"s_crit {self.s_crit} outside (0, 1]")
        if self.s_crit < _S_MIN_BELL - 1e-9:
            raise ValueError(
                f"s_crit {self.s_crit:.12f} below the Bell bound 1/sqrt(3); "
                "no two-qubit state is that robust")
        if abs(self.residual) > 1e-10:
            raise ValueError(f"root residual {self.residual:.3e} exceeds 1e-10")

    @property
    def robustness(self) -> float:
        return 1.0 - self.s_crit


def _esd_poly(r, theta, s1, s2):
    # Criticality polynomial of the evolved ansatz state: positive while the
    # state is entangled (NPT), zero at the disentanglement point.
    u = s1 * s2
    return (4.0 * r ** 2 * np.sin(2.0 * theta) ** 2 * u ** 2
            - (1.0 + (1.0 - 2.0 * r) * u) ** 2
            + (r * np.cos(2.0 * theta) * (s1 - s2) + (1.0 - r) * (s1 + s2)) ** 2)


def esd_polynomial(params: AnsatzParams, s1: float, s2: float) -> float:
    """Criticality polynomial P(r, theta; s1, s2); P = 0 marks sudden death."""
    if not (0.0 < s1 <= 1.0 and 0.0 < s2 <= 1.0):
        raise ValueError("s1 and s2 must lie in (0, 1]")
    return float(_esd_poly(params.r, params.theta, s1, s2))


def _scan_grid() -> np.ndarray:
    ks = np.arange(0, int((1.0 - 1.0 / 3.0) / _SCAN_STEP) + 1)
    grid = 1.0 - ks * _SCAN_STEP
    grid = grid[grid > 1.0 / 3.0]
    return np.append(grid, 1.0 / 3.0)


def _descending_root(f, label: str) -> tuple[float, float]:
    """Largest root of ``f`` on [1/3, 1] where f > 0 above the root.

    Coarse descending scan (step 1/256) locates sign changes; exactly one is
    accepted and refined by bisection to width 1e-12.  Multiple sign changes
    raise :class:`BracketError` listing every bracket rather than silently
    picking one.
    """
    grid = _scan_grid()
    vals = np.array([f(s) for s in grid])
    if vals[0] <= 0.0:
        raise SeparableStateError(f"{label}: input not entangled at s = 1")
    idx = np.flatnonzero((vals[:-1] > 0.0) & (vals[1:] <= 0.0))
    brackets = [(grid[i + 1], grid[i]) for i in idx]
    if not brackets:
        raise BracketError(
            f"{label}: no sign change on [1/3, 1]; f(1/3) = {vals[-1]:.3e}",
            brackets)
    if len(brackets) > 1:
        raise BracketError(
            f"{label}: {len(brackets)} sign changes detected: {brackets}",
            brackets)
    lo, hi = brackets[0]                   # f(lo) <= 0 < f(hi)
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    return root, f(root)


def s_crit_ansatz(params: AnsatzParams, delta: float) -> RobustnessResult:
    """Critical noise of an ansatz state from the criticality polynomial."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if params.r * np.sin(2.0 * params.theta) <= SEPARABLE_TOL:
        raise SeparableStateError("ansatz state is separable; no sudden-death point")
    r, theta = params.r, params.theta

    def f(s):
        return _esd_poly(r, theta, s ** (1.0 + delta), s ** (1.0 - delta))

    root, res = _descending_root(f, "ansatz polynomial")
    return RobustnessResult(s_crit=root, method="ansatz_polynomial", residual=res)


def _corr_batch(rhos: np.ndarray) -> np.ndarray:
    return np.real(np.einsum('kij,mnji->kmn', np.asarray(rhos), PAULI2))


def _min_pt_eig_from_corr(T: np.ndarray, s1, s2) -> np.ndarray:
    """Minimum PT eigenvalue of evolved states, batched.

    ``T`` has shape (k, 4, 4), ``s1``/``s2`` shape (k,).  The partial
    transpose flips the sign of sigma_y on the second qubit, i.e. negates the
    n = 2 column of the coefficient tensor.
    """
    Te = evolve_corr(T, s1, s2)
    Te[..., :, 2] *= -1.0
    mats = np.einsum('kmn,mnij->kij', Te, PAULI2) / 4.0
    return np.linalg.eigvalsh(mats)[..., 0]


def _s_crit_numeric_batch(rhos: np.ndarray, delta: float,
                          validate: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized PPT-bisection critical noise for a stack of entangled states.

    Returns ``(s_crit, residual)`` arrays.  Raises on any state whose scan
    shows no or multiple sign changes, or whose single-crossing validation
    grid fails.
    """
    rhos = np.asarray(rhos, dtype=complex)
    n = rhos.shape[0]
    T = _corr_batch(rhos)
    grid = _scan_grid()

    def g(s_per_state, T_sub):
        s = np.asarray(s_per_state, dtype=float)
        return _min_pt_eig_from_corr(T_sub, s ** (1.0 + delta), s ** (1.0 - delta))

    # coarse scan, chunked to bound memory
    gv = np.empty((n, grid.size))
    chunk = max(1, 2 ** 22 // (grid.size * 64))
    for a in range(0, n, chunk):
        b = min(n, a + chunk)
        Ts = np.repeat(T[a:b], grid.size, axis=0)
        ss = np.tile(grid, b - a)
        gv[a:b] = g(ss, Ts).reshape(b - a, grid.size)

    entangled_at_1 = gv[:, 0] < 0.0
    if not entangled_at_1.all():
        bad = np.flatnonzero(~entangled_at_1)
        raise SeparableStateError(f"{bad.size} states not entangled at s = 1 "
                                  f"(first index {bad[0]})")
    crossings = (gv[:, :-1] < 0.0) & (gv[:, 1:] >= 0.0)
    ncross = crossings.sum(axis=1)
    if (ncross == 0).any():
        bad = np.flatnonzero(ncross == 0)
        raise BracketError(f"no PT-eigenvalue sign change for {bad.size} states "
                           f"(first index {bad[0]})")
    if (ncross > 1).any():
        i = int(np.flatnonzero(ncross > 1)[0])
        brs = [(grid[j + 1], grid[j]) for j in np.flatnonzero(crossings[i])]
        raise BracketError(f"state {i}: multiple PT sign changes, brackets {brs}", brs)

    first = crossings.argmax(axis=1)
    hi = grid[first]          # g(hi) < 0 (entangled side)
    lo = grid[first + 1]      # g(lo) >= 0
    while (hi - lo).max() > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        neg = g(mid, T) < 0.0
        hi = np.where(neg, mid, hi)
        lo = np.where(neg, lo, mid)
    s_crit = 0.5 * (lo + hi)
    residual = g(s_crit, T)

    if validate:
        frac = np.arange(1, 65) / 65.0
        above = s_crit[:, None] + (1.0 - s_crit)[:, None] * frac
        below = 1.0 / 3.0 + (s_crit - 1.0 / 3.0)[:, None] * frac
        for a in range(0, n, max(1, chunk // 2)):
            b = min(n, a + max(1, chunk // 2))
            Ts = np.repeat(T[a:b], 64, axis=0)
            ga = g(above[a:b].ravel(), Ts).reshape(b - a, 64)
            gb = g(below[a:b].ravel(), Ts).reshape(b - a, 64)
            if not (ga < 0.0).all():
                i = a + int(np.flatnonzero((ga >= 0.0).any(axis=1))[0])
                raise BracketError(
                    f"state {i}: PT eigenvalue not negative everywhere above "
                    f"s_crit = {s_crit[i]:.12f}; crossing is not unique")
            if not (gb >= -1e-10).all():
                i = a + int(np.flatnonzero((gb < -1e-10).any(axis=1))[0])
                raise BracketError(
                    f"state {i}: PT eigenvalue negative below s_crit = "
                    f"{s_crit[i]:.12f}; crossing is not unique")
    return s_crit, residual


def s_crit_numeric(rho: np.ndarray, delta: float) -> RobustnessResult:
    """Critical noise of an arbitrary state by PPT bisection.

    Scans the minimum partial-transpose eigenvalue of the evolved state on a
    descending grid over [1/3, 1], bisects the single sign change to 1e-12,
    and verifies single-crossing on 64-point grids on both sides.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if negativity(rho) <= SEPARABLE_TOL:
        raise SeparableStateError("state is separable (negativity <= 1e-9)")
    s, res = _s_crit_numeric_batch(np.asarray(rho)[None, :, :], delta)
    return RobustnessResult(s_crit=float(s[0]), method="ppt_bisection",
                            residual=float(res[0]))


def _pure_root_fn(C, delta):
    def f(s):
        s1, s2 = s ** (1.0 + delta), s ** (1.0 - delta)
        return (C * C * (4.0 * s1 * s1 * s2 * s2 - (s1 - s2) ** 2)
                - (1.0 - s1 * s1) * (1.0 - s2 * s2))
    return f


def robustness_pure(C: float, delta: float) -> RobustnessResult:
    """Critical noise of a pure state with concurrence ``C``.

    Solves C^2 [4 s1^2 s2^2 - (s1-s2)^2] = (1-s1^2)(1-s2^2); at delta = 0
    this reduces to s_crit = 1/sqrt(2C+1).
    """
    if not 0.0 < C <= 1.0:
        raise ValueError(f"concurrence must lie in (0, 1], got {C}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    root, res = _descending_root(_pure_root_fn(C, delta), "pure-state relation")
    return RobustnessResult(s_crit=root, method="pure_closed_form", residual=res)


def normalized_robustness(rho: np.ndarray, delta: float, measure: str) -> float:
    """Robustness rescaled between the most-fragile (0) and most-robust (1)
    states at the same entanglement value.

    ``measure`` is ``"c"`` (concurrence) or ``"n"`` (negativity).  Raises
    ``ValueError`` when the two extremal robustness values coincide (the
    rescaling is then undefined, e.g. near maximal entanglement).
    """
    from esdlab import entanglement as ent
    from esdlab.extremal import robustness_bounds

    if measure not in ("c", "n"):
        raise ValueError("measure must be 'c' or 'n'")
    e = ent.concurrence(rho) if measure == "c" else ent.negativity(rho)
    if e <= SEPARABLE_TOL:
        raise SeparableStateError("state is separable; normalized robustness undefined")
    r = s_crit_numeric(rho, delta).robustness
    r_mfes, r_mres = robustness_bounds(np.array([e]), delta, measure)
    lo, hi = float(r_mfes[0]), float(r_mres[0])
    denom = hi - lo
    if denom < 1e-9:
        raise ValueError(
            f"extremal robustness values coincide at {measure}={e:.6g} "
            f"(denominator {denom:.3e}); normalized robustness undefined")
    val = (r - lo) / denom
    eps = 1e-6
    if val < -eps or val > 1.0 + eps:
        warnings.warn(f"normalized robustness {val:.8f} outside [-1e-6, 1+1e-6]; clipped")
    return float(np.clip(val, -eps, 1.0 + eps))
