"""Most-robust and most-fragile entangled-state families.

Families are parametrized at criticality: a state on the boundary of the
robustness-entanglement region dies exactly at a given noise level s, so the
boundaries are traced by extremizing the entanglement over the criticality
curve P(r, theta; s1, s2) = 0 at fixed s.  Closed forms exist for the
one-sided (delta = 1) and uniform (delta = 0) channels; intermediate delta
uses 1D root finding (concurrence) or constrained Lagrange extremals traced
along the criticality curve (negativity).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import minimize_scalar

from esdlab.entanglement import _concurrence_ansatz, _negativity_ansatz
from esdlab.qstate import AnsatzParams, params_from_cp
from esdlab.robustness import _esd_poly, robustness_pure, s_crit_ansatz

R_MAX = 1.0 - 1.0 / np.sqrt(3.0)
_S_MIN = 1.0 / np.sqrt(3.0)

KINDS = ("mres", "mfes", "quasi")
MEASURES = ("c", "n")


@dataclass(frozen=True)
class ExtremalPoint:
    """An ansatz state tagged as a robustness extremum.

    ``kind`` is "mres", "mfes" or "quasi"; ``measure`` names the entanglement
    measure the family extremizes ("c" or "n"); ``entanglement`` is its value.
    """

    params: AnsatzParams
    kind: str
    measure: str
    entanglement: float
    robustness: float
    delta: float


def _chan(s, delta):
    return s ** (1.0 + delta), s ** (1.0 - delta)


def omega_noise_ratio(s1, s2):
    """Asymmetry weight Omega = s1^2 (1-s2^2) / (s2^2 (1-s1^2)) in [0, 1]."""
    return s1 * s1 * (1.0 - s2 * s2) / (s2 * s2 * (1.0 - s1 * s1))


def omega_tilde(delta: float):
    """Delta-only surrogate of Omega obtained by fixing s^2 at its midrange 2/3.

    Equals 1 at delta = 0 and 0 at delta = 1.
    """
    x = 2.0 / 3.0
    return (x ** (delta - 1.0) - 1.0) / (x ** (-delta - 1.0) - 1.0)


def restraint_alpha(beta, omega):
    """Fragility restraint alpha(beta) = [1 + sqrt(8 Omega (2 beta - 1) beta + 1)]/4.

    At Omega = 1 this reduces to alpha = 1/2 - beta (beta <= 1/4) or
    alpha = beta (beta > 1/4); at Omega = 0 to alpha = 1/2.
    """
    rad = 8.0 * omega * (2.0 * beta - 1.0) * beta + 1.0
    if np.any(rad < 0.0):
        raise ValueError("restraint radicand negative; beta outside [0, 1/2]?")
    return 0.25 * (1.0 + np.sqrt(rad))


def _ab_to_rtheta(alpha, beta):
    r = alpha + beta
    theta = np.arctan2(np.sqrt(beta), np.sqrt(alpha))
    return r, theta


# ---------------------------------------------------------------------------
# closed-form extremal constructors
# ---------------------------------------------------------------------------

def mres_concurrence(C: float, delta: float) -> ExtremalPoint:
    """Most robust state at fixed concurrence: the pure state with that C."""
    if not 0.0 < C <= 1.0:
        raise ValueError(f"concurrence must lie in (0, 1], got {C}")
    params = AnsatzParams(r=1.0, theta=0.5 * np.arcsin(C))
    rb = robustness_pure(C, delta).robustness
    return ExtremalPoint(params=params, kind="mres", measure="c",
                         entanglement=C, robustness=rb, delta=delta)


def mfes_concurrence_one_sided(theta: float) -> ExtremalPoint:
    """Most fragile state for fixed concurrence under the one-sided channel.

    The family satisfies 2 r cos^2(theta) = 1 with theta in [0, pi/4];
    its robustness depends only on the filtering-chart coordinate c.
    """
    if not 0.0 <= theta <= np.pi / 4 + 1e-15:
        raise ValueError(f"theta must lie in [0, pi/4], got {theta}")
    r = 1.0 / (2.0 * np.cos(theta) ** 2)
    params = AnsatzParams(r=float(r), theta=float(theta))
    rb = 1.0 - np.sqrt((2.0 - params.c) / (2.0 + params.c))
    return ExtremalPoint(params=params, kind="mfes", measure="c",
                         entanglement=float(_concurrence_ansatz(r, theta)),
                         robustness=float(rb), delta=1.0)


@lru_cache(maxsize=1)
def cpn_c_min() -> float:
    """Lower edge of the one-sided negativity-MFES chart domain.

    Located numerically as the root of the closed-form denominator
    5c^3 - 20c^2 + 24c - 8 in (0.5, 0.6); below it the denominator changes
    sign and the closed form degenerates (0/0).
    """
    den = lambda c: 5.0 * c ** 3 - 20.0 * c ** 2 + 24.0 * c - 8.0
    lo, hi = 0.5, 0.6
    for _ in range(80):
        m = 0.5 * (lo + hi)
        if den(m) < 0.0:
            lo = m
        else:
            hi = m
    return 0.5 * (lo + hi)


def mfes_negativity_one_sided(c: float) -> ExtremalPoint:
    """Most fragile state for fixed negativity under the one-sided channel.

    For a given chart parameter c (which fixes the robustness), picks the
    filter coordinate p that maximizes the negativity.
    """
    c_min = cpn_c_min()
    if not c_min < c <= 1.0:
        raise ValueError(
            f"c must lie in ({c_min:.9f}, 1]; the closed form degenerates at "
            f"the numerically located boundary c_min = {c_min:.9f}")
    num = 2.0 * np.sqrt(2.0 - c) * (c - 1.0) * c ** 1.5 + 2.0 * c * c - c ** 3
    den = -8.0 + 24.0 * c - 20.0 * c * c + 5.0 * c ** 3
    if den <= 1e-12:
        raise ValueError(f"denominator {den:.3e} vanishes at c = {c}; domain boundary")
    rad = num / den
    if rad < 0.0:
        raise ValueError(f"radicand {rad:.3e} negative at c = {c}")
    p = float(np.sqrt(rad))
    params = params_from_cp(c, p)
    rb = 1.0 - np.sqrt((2.0 - c) / (2.0 + c))
    return ExtremalPoint(params=params, kind="mfes", measure="n",
                         entanglement=float(_negativity_ansatz(params.r, params.theta)),
                         robustness=float(rb), delta=1.0)


def mfes_concurrence_uniform(C: float) -> ExtremalPoint:
    """Uniform-channel most fragile state at fixed concurrence (piecewise).

    (r = C, theta = pi/4) for C >= 1/2; (r = 1/2, theta = arcsin(2C)/2) below.
    """
    if not 0.0 < C <= 1.0:
        raise ValueError(f"concurrence must lie in (0, 1], got {C}")
    if C >= 0.5:
        params = AnsatzParams(r=C, theta=np.pi / 4)
    else:
        params = AnsatzParams(r=0.5, theta=0.5 * np.arcsin(2.0 * C))
    rb = s_crit_ansatz(params, 0.0).robustness
    return ExtremalPoint(params=params, kind="mfes", measure="c",
                         entanglement=C, robustness=rb, delta=0.0)


# ---------------------------------------------------------------------------
# general-channel MFES for concurrence (restraint + criticality)
# ---------------------------------------------------------------------------

def _mfes_beta_at(delta, s):
    """Vectorized: beta of the max-concurrence state on the criticality curve.

    ``s`` may be an array; bisects the criticality polynomial along the
    restraint line beta -> (alpha(beta), beta).
    """
    s = np.asarray(s, dtype=float)
    s1, s2 = _chan(s, delta)
    om = omega_noise_ratio(s1, s2)

    def h(beta):
        alpha = restraint_alpha(beta, om)
        r, theta = _ab_to_rtheta(alpha, beta)
        return _esd_poly(r, theta, s1, s2)

    lo = np.full_like(s, 1e-14)
    hi = np.full_like(s, 0.5)
    if np.any(h(hi) <= 0.0):
        raise ValueError("criticality unreachable: s at or below the Bell bound")
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        pos = h(mid) > 0.0
        hi = np.where(pos, mid, hi)
        lo = np.where(pos, lo, mid)
    return 0.5 * (lo + hi)


def mfes_concurrence_general(delta: float, s_crit: float) -> ExtremalPoint:
    """Most fragile state for fixed concurrence, nonuniform channel.

    Finds beta in (0, 1/2] such that the restraint point lies on the
    criticality curve at the requested s_crit; delta in (0, 1) exclusive
    (the endpoints have closed forms).
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie strictly in (0, 1); use the closed forms "
                         "at the endpoints")
    if not _S_MIN < s_crit < 1.0:
        raise ValueError(f"s_crit must lie in (1/sqrt(3), 1), got {s_crit}")
    beta = float(_mfes_beta_at(delta, np.array([s_crit]))[0])
    s1, s2 = _chan(s_crit, delta)
    alpha = float(restraint_alpha(beta, omega_noise_ratio(s1, s2)))
    r, theta = _ab_to_rtheta(alpha, beta)
    params = AnsatzParams(r=float(r), theta=float(theta))
    return ExtremalPoint(params=params, kind="mfes", measure="c",
                         entanglement=float(_concurrence_ansatz(r, theta)),
                         robustness=1.0 - s_crit, delta=delta)


def quasi_mfes(delta: float, beta: float) -> ExtremalPoint:
    """Closed-form near-fragile family: the restraint evaluated at the
    delta-only surrogate weight; robustness recomputed numerically."""
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"beta must lie in (0, 1/2], got {beta}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    alpha = float(restraint_alpha(beta, omega_tilde(delta)))
    r, theta = _ab_to_rtheta(alpha, beta)
    params = AnsatzParams(r=float(r), theta=float(theta))
    rb = s_crit_ansatz(params, delta).robustness
    return ExtremalPoint(params=params, kind="quasi", measure="c",
                         entanglement=float(_concurrence_ansatz(r, theta)),
                         robustness=rb, delta=delta)


# ---------------------------------------------------------------------------
# negativity extremals on the criticality curve (Lagrange condition)
# ---------------------------------------------------------------------------

def _pure_concurrence_at(s1, s2):
    """Concurrence of the pure state that dies exactly at (s1, s2)."""
    den = 4.0 * s1 * s1 * s2 * s2 - (s1 - s2) ** 2
    return np.sqrt((1.0 - s1 * s1) * (1.0 - s2 * s2) / den)


def _r_on_curve(theta, s1, s2):
    """Vectorized root r(theta) of the criticality polynomial in (0, 1].

    P(0) < 0 and P(1) >= 0 for theta inside the entangled wedge, so plain
    bisection applies pointwise.
    """
    theta = np.asarray(theta, dtype=float)
    lo = np.zeros_like(theta)
    hi = np.ones_like(theta)
    for _ in range(70):
        mid = 0.5 * (lo + hi)
        neg = _esd_poly(mid, theta, s1, s2) < 0.0
        lo = np.where(neg, mid, lo)
        hi = np.where(neg, hi, mid)
    return 0.5 * (lo + hi)


def _lagrange_fn(r, theta, s1, s2):
    """dN/dr dP/dtheta - dN/dtheta dP/dr, zero at constrained extrema of N."""
    u, d, sg = s1 * s2, s1 - s2, s1 + s2
    s2t, c2t, s4t = np.sin(2 * theta), np.cos(2 * theta), np.sin(4 * theta)
    Q = np.sqrt((r * s2t) ** 2 + (1.0 - r) ** 2)
    n_r = (r * s2t * s2t - (1.0 - r)) / Q + 1.0
    n_t = r * r * s4t / Q
    g = c2t * d - sg
    a = 4.0 * u * u * s2t * s2t - 4.0 * u * u + g * g
    b = 4.0 * u * (1.0 + u) + 2.0 * sg * g
    p_r = 2.0 * a * r + b
    p_t = (8.0 * u * u * s4t - 4.0 * g * d * s2t) * r * r - 4.0 * sg * d * s2t * r
    return n_r * p_t - n_t * p_r


def _curve_thetas(th_lo, th_hi, n_base=512, n_edge=96):
    # geometric refinement near the endpoints where r(theta) -> 1 steeply
    base = np.linspace(th_lo, th_hi, n_base)
    span = th_hi - th_lo
    edge = np.geomspace(span * 1e-9, span * 0.02, n_edge)
    return np.unique(np.concatenate([base, th_lo + edge, th_hi - edge]))


def negativity_extremals(delta: float, s_crit: float) -> tuple[ExtremalPoint, ExtremalPoint]:
    """Constrained negativity extrema on the criticality curve at fixed noise.

    Traces the curve P = 0 over theta, locates sign changes of the Lagrange
    function (plus the two pure endpoints), classifies each candidate by the
    discrete second difference of N along the curve, and returns the global
    (minimum, maximum) as (MRES, MFES) points.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if not _S_MIN < s_crit < 1.0:
        raise ValueError(f"s_crit must lie in (1/sqrt(3), 1), got {s_crit}")
    s1, s2 = _chan(s_crit, delta)
    cp = _pure_concurrence_at(s1, s2)
    if not 0.0 < cp <= 1.0:
        raise ValueError(f"degenerate criticality curve at s = {s_crit}")
    th_lo = 0.5 * np.arcsin(cp)
    th_hi = np.pi / 2 - th_lo

    eps = 1e-11
    thetas = _curve_thetas(th_lo + eps, th_hi - eps)
    rs = _r_on_curve(thetas, s1, s2)
    lag = _lagrange_fn(rs, thetas, s1, s2)

    # candidates: pure endpoints plus refined interior Lagrange zeros
    cands = [(1.0, th_lo), (1.0, th_hi)]
    kinds = ["boundary", "boundary"]
    scale = np.median(np.abs(lag)) + 1e-300
    flips = np.flatnonzero(np.sign(lag[:-1]) != np.sign(lag[1:]))
    for i in flips:
        if abs(lag[i]) < 1e-12 * scale and abs(lag[i + 1]) < 1e-12 * scale:
            continue    # numerical noise around an identically-zero stretch
        a, b = thetas[i], thetas[i + 1]
        fa = lag[i]
        for _ in range(60):
            m = 0.5 * (a + b)
            fm = _lagrange_fn(float(_r_on_curve(m, s1, s2)), m, s1, s2)
            if np.sign(fm) == np.sign(fa):
                a, fa = m, fm
            else:
                b = m
        t = 0.5 * (a + b)
        r = float(_r_on_curve(t, s1, s2))
        # classify by second difference of N along the curve
        h = max((th_hi - th_lo) * 1e-4, 1e-9)
        nm = _negativity_ansatz(float(_r_on_curve(t - h, s1, s2)), t - h)
        n0 = _negativity_ansatz(r, t)
        np_ = _negativity_ansatz(float(_r_on_curve(t + h, s1, s2)), t + h)
        kinds.append("min" if nm - 2 * n0 + np_ > 0 else "max")
        cands.append((r, t))

    if len(cands) < 2:
        raise RuntimeError("no extremum candidates found on the criticality curve")
    nvals = np.array([_negativity_ansatz(r, t) for r, t in cands])
    # deterministic tie-break toward smaller theta (matters at delta = 0,
    # where the two pure endpoints are exactly degenerate)
    ts = np.array([t for _, t in cands])
    nround = np.round(nvals, 12)
    i_min = int(np.lexsort((ts, nround))[0])
    i_max = int(np.lexsort((ts, -nround))[0])

    def _point(i, kind):
        r, t = cands[i]
        params = AnsatzParams(r=min(float(r), 1.0), theta=float(t))
        return ExtremalPoint(params=params, kind=kind, measure="n",
                             entanglement=float(nvals[i]),
                             robustness=1.0 - s_crit, delta=delta)

    return _point(i_min, "mres"), _point(i_max, "mfes")


# ---------------------------------------------------------------------------
# boundary functions in the noise domain and robustness bounds
# ---------------------------------------------------------------------------

def _n_mres_uniform_of_s(s):
    """Negativity of the uniform-channel MRES (theta = pi/4) at criticality s."""
    u = s * s
    r = (1.0 - u) * (s + np.sqrt(1.0 + u)) / (2.0 * s)
    return np.sqrt(r * r + (1.0 - r) ** 2) - (1.0 - r)


def _n_max_at_c(c: float) -> float:
    """Maximal ansatz negativity over the one-sided iso-robustness chart line."""
    def neg_of(p):
        pr = params_from_cp(c, p)
        return -_negativity_ansatz(pr.r, pr.theta)
    res = minimize_scalar(neg_of, bounds=(1e-12, 1.0), method="bounded",
                          options={"xatol": 1e-13})
    return -float(res.fun)


@lru_cache(maxsize=8)
def _n_max_curve_one_sided():
    cs = 1.0 - np.geomspace(1e-9, 1.0, 3000)[::-1]
    cs = np.clip(cs, 1e-12, None)
    cs = np.append(cs, 1.0)
    ns = np.array([_n_max_at_c(float(c)) for c in cs])
    keep = np.concatenate([[True], np.diff(ns) > 0])
    return PchipInterpolator(ns[keep], cs[keep], extrapolate=False), ns[keep].min(), ns[keep].max()


def _s_grid_for_curves():
    r_hi = R_MAX - 1e-9
    rgrid = np.unique(np.concatenate([
        np.geomspace(1e-10, 1e-3, 160),
        np.linspace(1e-3, r_hi - 1e-3, 900),
        r_hi - np.geomspace(1e-9, 1e-3, 160),
        [r_hi],
    ]))
    return 1.0 - rgrid[::-1]    # ascending s


@lru_cache(maxsize=8)
def _neg_extremal_curves(delta: float):
    """Sampled N_min(s), N_max(s) along the criticality curve, interpolated."""
    ss = _s_grid_for_curves()
    n_lo = np.empty_like(ss)
    n_hi = np.empty_like(ss)
    for i, s in enumerate(ss):
        mres, mfes = negativity_extremals(delta, float(s))
        n_lo[i] = mres.entanglement
        n_hi[i] = mfes.entanglement
    # both boundaries decrease with s; enforce strictness for interpolation
    def _interp(y):
        keep = np.concatenate([[True], np.diff(y) < 0])
        return PchipInterpolator(ss[keep], y[keep], extrapolate=False)
    return _interp(n_lo), _interp(n_hi), ss[0], ss[-1]


def _vec_root_decreasing(fn, targets, lo, hi, iters=80):
    """Solve fn(s) = target for fn decreasing in s, vectorized with clamping."""
    targets = np.asarray(targets, dtype=float)
    lo = np.full_like(targets, lo)
    hi = np.full_like(targets, hi)
    f_lo, f_hi = fn(lo), fn(hi)
    out_hi = targets <= f_hi      # weaker than anything attainable at hi
    out_lo = targets >= f_lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        high = fn(mid) > targets
        lo = np.where(high, mid, lo)
        hi = np.where(high, hi, mid)
    root = 0.5 * (lo + hi)
    root = np.where(out_hi, hi, root)
    root = np.where(out_lo, lo, root)
    return root


def s_mres_of(entanglement, delta: float, measure: str) -> np.ndarray:
    """Critical noise of the most robust state at the given entanglement."""
    e = np.atleast_1d(np.asarray(entanglement, dtype=float))
    if measure == "c":
        if delta == 0.0:
            return 1.0 / np.sqrt(2.0 * e + 1.0)
        if delta == 1.0:
            return np.full_like(e, _S_MIN)
        fn = lambda s: _pure_concurrence_at(*_chan(s, delta))
        return _vec_root_decreasing(fn, e, _S_MIN + 1e-12, 1.0 - 1e-13)
    if measure == "n":
        if delta == 0.0:
            return _vec_root_decreasing(_n_mres_uniform_of_s, e,
                                        _S_MIN + 1e-12, 1.0 - 1e-13)
        if delta == 1.0:
            return np.full_like(e, _S_MIN)
        f_lo, _, s_a, s_b = _neg_extremal_curves(delta)
        return _vec_root_decreasing(lambda s: f_lo(s), e, s_a, s_b)
    raise ValueError("measure must be 'c' or 'n'")


def s_mfes_of(entanglement, delta: float, measure: str) -> np.ndarray:
    """Critical noise of the most fragile state at the given entanglement."""
    e = np.atleast_1d(np.asarray(entanglement, dtype=float))
    if measure == "c":
        if delta == 0.0:
            # piecewise closed form: C >= 1/2 from (r=C, pi/4), below from r=1/2
            with np.errstate(invalid="ignore"):
                a = 4.0 * e - 1.0
                bq = 4.0 * e * e - 4.0 * e + 2.0
                u_hi = (-bq + np.sqrt(bq * bq + 4.0 * a)) / (2.0 * a)
                u_hi = np.where(np.abs(a) < 1e-12, 1.0 / bq, u_hi)
                u_lo = (-1.0 + np.sqrt(1.0 + 16.0 * e * e)) / (8.0 * e * e)
            return np.sqrt(np.where(e >= 0.5, u_hi, u_lo))
        if delta == 1.0:
            return 1.0 / np.sqrt(1.0 + 2.0 * e * e)
        def fn(s):
            beta = _mfes_beta_at(delta, s)
            s1, s2 = _chan(s, delta)
            alpha = restraint_alpha(beta, omega_noise_ratio(s1, s2))
            r, theta = _ab_to_rtheta(alpha, beta)
            return _concurrence_ansatz(r, theta)
        return _vec_root_decreasing(fn, e, _S_MIN + 1e-9, 1.0 - 1e-9)
    if measure == "n":
        if delta == 0.0:
            return 1.0 / np.sqrt(2.0 * e + 1.0)    # pure states are fragile here
        if delta == 1.0:
            interp, n_a, n_b = _n_max_curve_one_sided()
            c_star = interp(np.clip(e, n_a, n_b))
            return np.sqrt((2.0 - c_star) / (2.0 + c_star))
        _, f_hi, s_a, s_b = _neg_extremal_curves(delta)
        return _vec_root_decreasing(lambda s: f_hi(s), e, s_a, s_b)
    raise ValueError("measure must be 'c' or 'n'")


def robustness_bounds(entanglement, delta: float, measure: str):
    """(R_mfes, R_mres) at the given entanglement value(s); vectorized."""
    e = np.atleast_1d(np.asarray(entanglement, dtype=float))
    r_mfes = 1.0 - s_mfes_of(e, delta, measure)
    r_mres = 1.0 - s_mres_of(e, delta, measure)
    return np.clip(r_mfes, 0.0, R_MAX), np.clip(r_mres, 0.0, R_MAX)


# ---------------------------------------------------------------------------
# family sweeps
# ---------------------------------------------------------------------------

def _interior_grid(n: int, top: float = 1.0) -> np.ndarray:
    return top * np.arange(1, n + 1) / (n + 1.0)


def family_sweep(kind: str, measure: str, delta: float, grid: int) -> list[ExtremalPoint]:
    """Sample one extremal family on a ``grid``-point parameter grid.

    Concurrence families are sampled over entanglement (closed forms) or over
    robustness (general delta); the quasi family over beta with
    beta_i = i/(2(grid+1)); negativity families over entanglement at the
    channel endpoints and over robustness in between.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}")
    if grid < 1:
        raise ValueError("grid must be a positive integer")

    if kind == "quasi":
        if measure != "c":
            raise ValueError("the quasi family is defined for the concurrence measure only")
        betas = 0.5 * _interior_grid(grid)
        return [quasi_mfes(delta, float(b)) for b in betas]

    if kind == "mres" and measure == "c":
        return [mres_concurrence(float(C), delta) for C in _interior_grid(grid)]

    if kind == "mfes" and measure == "c":
        if delta == 0.0:
            return [mfes_concurrence_uniform(float(C)) for C in _interior_grid(grid)]
        if delta == 1.0:
            thetas = np.arctan(_interior_grid(grid))   # concurrence = tan(theta)
            return [mfes_concurrence_one_sided(float(t)) for t in thetas]
        rgrid = _interior_grid(grid, top=R_MAX)
        return [mfes_concurrence_general(delta, 1.0 - float(R)) for R in rgrid]

    # negativity families
    if delta == 0.0:
        pts = []
        for N in _interior_grid(grid):
            if kind == "mres":
                r = -N + np.sqrt(2.0 * N * N + 2.0 * N)
                params = AnsatzParams(r=float(r), theta=np.pi / 4)
            else:
                params = AnsatzParams(r=1.0, theta=float(0.5 * np.arcsin(N)))
            rb = s_crit_ansatz(params, 0.0).robustness
            pts.append(ExtremalPoint(params=params, kind=kind, measure="n",
                                     entanglement=float(N), robustness=rb, delta=0.0))
        return pts
    if delta == 1.0:
        if kind == "mres":
            pts = []
            for N in _interior_grid(grid):
                params = AnsatzParams(r=1.0, theta=float(0.5 * np.arcsin(N)))
                pts.append(ExtremalPoint(params=params, kind="mres", measure="n",
                                         entanglement=float(N), robustness=R_MAX,
                                         delta=1.0))
            return pts
        c_min = cpn_c_min()
        cs = c_min + (1.0 - c_min) * _interior_grid(grid)
        return [mfes_negativity_one_sided(float(c)) for c in cs]
    rgrid = _interior_grid(grid, top=R_MAX)
    pairs = [negativity_extremals(delta, 1.0 - float(R)) for R in rgrid]
    return [p[0] if kind == "mres" else p[1] for p in pairs]
