"""Random-state ensembles, binned statistics, and envelope verification.

Ensemble evaluation is deterministic for a given :class:`RandomSpec`: states
are keyed by (seed, index), chunks are merged in index order, and the CSV
emitters format floats reproducibly, so outputs are byte-identical across
runs and worker counts.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from esdlab import extremal
from esdlab.entanglement import concurrence_batch, negativity_batch
from esdlab.qstate import RandomSpec, random_state
from esdlab.robustness import SEPARABLE_TOL, _s_crit_numeric_batch

SCHEMA_HEADER = "# esdlab-schema v1"
BIN_KEYS = ("robustness", "r_tilde_c", "r_tilde_n")
QUANTITIES = ("concurrence", "negativity", "linear_entropy", "delta_r")


@dataclass(frozen=True)
class EnsembleRecord:
    """Per-state row of an evaluated ensemble.

    ``r_tilde_c`` / ``r_tilde_n`` are None when the normalized robustness is
    unavailable (nonzero flag explains why).
    """

    seed: int
    index: int
    concurrence: float
    negativity: float
    linear_entropy: float
    delta_r: float
    robustness: float
    r_tilde_c: float | None = None
    r_tilde_n: float | None = None
    r_tilde_flag: str = ""


@dataclass(frozen=True)
class EnsembleResult:
    spec: RandomSpec
    delta: float
    records: list[EnsembleRecord]
    discarded: int


def _worker_count() -> int:
    env = os.environ.get("ESDLAB_THREADS")
    n = os.cpu_count() or 1
    if env:
        n = max(1, min(n, int(env)))
    return n


def _bloch_lengths_batch(rhos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r4 = rhos.reshape(-1, 2, 2, 2, 2)
    red1 = np.einsum('kabcb->kac', r4)
    red2 = np.einsum('kabac->kbc', r4)
    def length(red):
        x = 2.0 * np.real(red[:, 0, 1])
        y = -2.0 * np.imag(red[:, 0, 1])
        z = np.real(red[:, 0, 0] - red[:, 1, 1])
        return np.sqrt(x * x + y * y + z * z)
    return length(red1), length(red2)


def _normalized_batch(ent: np.ndarray, rob: np.ndarray, delta: float, measure: str
                      ) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized normalized robustness; returns (values, flags) with NaN + flag
    where the extremal denominators degenerate or clipping was applied."""
    r_mfes, r_mres = extremal.robustness_bounds(ent, delta, measure)
    denom = r_mres - r_mfes
    flags = np.zeros(ent.shape, dtype=np.uint8)
    bad = denom < 1e-9
    flags[bad] |= 1
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (rob - r_mfes) / denom
    eps = 1e-6
    clipped = (val < -eps) | (val > 1.0 + eps)
    flags[clipped & ~bad] |= 2
    val = np.clip(val, -eps, 1.0 + eps)
    val[bad] = np.nan
    return val, flags


def _flag_text(fc: int, fn: int) -> str:
    parts = []
    for tag, f in (("c", fc), ("n", fn)):
        if f & 1:
            parts.append(f"{tag}_degenerate")
        if f & 2:
            parts.append(f"{tag}_clipped")
    return " ".join(parts)


def _eval_chunk(args) -> tuple[int, dict, int]:
    spec, delta, lo, hi, with_normalized = args
    idx = np.arange(lo, hi)
    rhos = np.stack([random_state(spec, int(i)) for i in idx])
    neg = negativity_batch(rhos)
    keep = neg > SEPARABLE_TOL
    discarded = int((~keep).sum())
    idx, rhos, neg = idx[keep], rhos[keep], neg[keep]
    if idx.size == 0:
        return lo, {}, discarded
    conc = concurrence_batch(rhos)
    purity = np.real(np.einsum('kij,kji->k', rhos, rhos))
    s_l = (4.0 / 3.0) * (1.0 - purity)
    r1, r2 = _bloch_lengths_batch(rhos)
    s_crit, _ = _s_crit_numeric_batch(rhos, delta)
    rob = 1.0 - s_crit
    out = dict(index=idx, concurrence=conc, negativity=neg, linear_entropy=s_l,
               delta_r=r1 - r2, robustness=rob)
    if with_normalized:
        rtc, fc = _normalized_batch(conc, rob, delta, "c")
        rtn, fn = _normalized_batch(neg, rob, delta, "n")
        out.update(r_tilde_c=rtc, r_tilde_n=rtn, flag_c=fc, flag_n=fn)
    return lo, out, discarded


def run_ensemble(spec: RandomSpec, delta: float, with_normalized: bool | None = None,
                 workers: int | None = None) -> EnsembleResult:
    """Evaluate a random ensemble: measures, robustness, normalized robustness.

    Separable draws (negativity <= 1e-9) are discarded and counted.  The
    normalized-robustness columns default to on at the channel endpoints
    (delta 0 or 1) where the extremal families have closed forms, off
    otherwise.  Chunks run in parallel processes (capped by ESDLAB_THREADS)
    and merge in index order, so results do not depend on the worker count.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if with_normalized is None:
        with_normalized = delta in (0.0, 1.0)
    workers = workers if workers is not None else _worker_count()
    chunk = max(64, -(-spec.count // max(workers * 4, 1)))
    jobs = [(spec, delta, lo, min(lo + chunk, spec.count), with_normalized)
            for lo in range(0, spec.count, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = sorted(ex.map(_eval_chunk, jobs), key=lambda t: t[0])
    else:
        parts = [_eval_chunk(j) for j in jobs]

    records: list[EnsembleRecord] = []
    discarded = 0
    for _, out, d in parts:
        discarded += d
        if not out:
            continue
        n = out["index"].size
        for k in range(n):
            if with_normalized:
                fc, fn = int(out["flag_c"][k]), int(out["flag_n"][k])
                rtc = None if np.isnan(out["r_tilde_c"][k]) else float(out["r_tilde_c"][k])
                rtn = None if np.isnan(out["r_tilde_n"][k]) else float(out["r_tilde_n"][k])
                flag = _flag_text(fc, fn)
            else:
                rtc = rtn = None
                flag = ""
            records.append(EnsembleRecord(
                seed=spec.seed, index=int(out["index"][k]),
                concurrence=float(out["concurrence"][k]),
                negativity=float(out["negativity"][k]),
                linear_entropy=float(out["linear_entropy"][k]),
                delta_r=float(out["delta_r"][k]),
                robustness=float(out["robustness"][k]),
                r_tilde_c=rtc, r_tilde_n=rtn, r_tilde_flag=flag))
    return EnsembleResult(spec=spec, delta=delta, records=records, discarded=discarded)


# ---------------------------------------------------------------------------
# binned averages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinnedSeries:
    bin_key: str
    quantity: str
    bin_edges: np.ndarray
    means: np.ndarray      # NaN marks empty bins
    counts: np.ndarray
    stderr: np.ndarray

    def __post_init__(self):
        n = len(self.bin_edges) - 1
        if not (len(self.means) == len(self.counts) == len(self.stderr) == n):
            raise ValueError("inconsistent bin array lengths")


def _record_field(records, name):
    return np.array([getattr(r, name) for r in records], dtype=float)


def binned_averages(records, bin_key: str, n_bins: int, quantity: str) -> BinnedSeries:
    """Equal-width binned means of ``quantity`` against ``bin_key``.

    Records whose key is unavailable (flagged normalized robustness) are
    skipped; empty bins report count 0 and NaN mean.
    """
    if bin_key not in BIN_KEYS:
        raise ValueError(f"bin_key must be one of {BIN_KEYS}")
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}")
    if not records:
        raise ValueError("no records to bin")
    keys, vals = [], []
    for r in records:
        k = getattr(r, bin_key)
        if k is None:
            continue
        keys.append(k)
        vals.append(getattr(r, quantity))
    keys = np.asarray(keys, dtype=float)
    vals = np.asarray(vals, dtype=float)
    if keys.size == 0:
        raise ValueError(f"no records carry the bin key {bin_key!r}")
    lo, hi = keys.min(), keys.max()
    if hi <= lo:
        hi = lo + 1e-12
    edges = np.linspace(lo, hi, n_bins + 1)
    which = np.clip(((keys - lo) / (hi - lo) * n_bins).astype(int), 0, n_bins - 1)
    counts = np.bincount(which, minlength=n_bins)
    sums = np.bincount(which, weights=vals, minlength=n_bins)
    sq = np.bincount(which, weights=vals * vals, minlength=n_bins)
    with np.errstate(divide="ignore", invalid="ignore"):
        means = sums / counts
        var = sq / counts - means ** 2
        stderr = np.sqrt(np.clip(var, 0.0, None) / np.maximum(counts, 1))
    stderr[counts == 0] = np.nan
    return BinnedSeries(bin_key=bin_key, quantity=quantity, bin_edges=edges,
                        means=means, counts=counts, stderr=stderr)


# ---------------------------------------------------------------------------
# envelope verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnvelopeReport:
    delta: float
    measure: str
    tol: float
    n_records: int
    n_violations: int
    adjudicated: int
    worst: list = field(default_factory=list)

    @property
    def violation_fraction(self) -> float:
        return self.n_violations / self.n_records if self.n_records else 0.0


def _exact_s_mfes_n(e: float, delta: float) -> float:
    if delta == 1.0:
        def n_hi(s):
            c = 2.0 * (1.0 - s * s) / (1.0 + s * s)
            return extremal._n_max_at_c(c)
    else:
        def n_hi(s):
            return extremal.negativity_extremals(delta, s)[1].entanglement
    lo, hi = 1.0 / np.sqrt(3.0) + 1e-9, 1.0 - 1e-10
    if n_hi(hi) >= e:
        return hi
    if n_hi(lo) <= e:
        return lo
    for _ in range(50):
        m = 0.5 * (lo + hi)
        if n_hi(m) > e:
            lo = m
        else:
            hi = m
    return 0.5 * (lo + hi)


def _exact_s_mres_n(e: float, delta: float) -> float:
    def n_lo(s):
        return extremal.negativity_extremals(delta, s)[0].entanglement
    lo, hi = 1.0 / np.sqrt(3.0) + 1e-9, 1.0 - 1e-10
    if n_lo(hi) >= e:
        return hi
    if n_lo(lo) <= e:
        return lo
    for _ in range(50):
        m = 0.5 * (lo + hi)
        if n_lo(m) > e:
            lo = m
        else:
            hi = m
    return 0.5 * (lo + hi)


def envelope_check(records, delta: float, measure: str, tol: float = 1e-6) -> EnvelopeReport:
    """Verify R_MFES - tol <= R <= R_MRES + tol at each record's entanglement.

    The concurrence bounds are computed exactly (closed forms or nested
    bisection).  The negativity bounds at intermediate delta come from dense
    interpolated boundary curves; borderline records (within 2e-6 of a bound)
    are re-adjudicated against the exact curve solvers before being counted.
    """
    if measure not in ("c", "n"):
        raise ValueError("measure must be 'c' or 'n'")
    if not records:
        return EnvelopeReport(delta=delta, measure=measure, tol=tol, n_records=0,
                              n_violations=0, adjudicated=0)
    ent = _record_field(records, "concurrence" if measure == "c" else "negativity")
    rob = _record_field(records, "robustness")
    r_mfes, r_mres = extremal.robustness_bounds(ent, delta, measure)
    low_excess = r_mfes - rob          # > tol means more fragile than the MFES
    high_excess = rob - r_mres         # > tol means more robust than the MRES
    interp_used = measure == "n" and delta not in (0.0,)
    adjudicated = 0
    if interp_used:
        margin = 2e-6
        for i in np.flatnonzero((low_excess > tol - margin) | (high_excess > tol - margin)):
            adjudicated += 1
            e = float(ent[i])
            s_f = _exact_s_mfes_n(e, delta)
            low_excess[i] = (1.0 - s_f) - rob[i]
            if delta != 1.0:
                s_r = _exact_s_mres_n(e, delta)
                high_excess[i] = rob[i] - (1.0 - s_r)
    bad = (low_excess > tol) | (high_excess > tol)
    worst_idx = np.argsort(-(np.maximum(low_excess, high_excess)))[:10]
    worst = []
    for i in worst_idx:
        if not bad[i]:
            continue
        r = records[int(i)]
        worst.append(dict(seed=r.seed, index=r.index, entanglement=float(ent[i]),
                          robustness=float(rob[i]), r_mfes=float(r_mfes[i]),
                          r_mres=float(r_mres[i]),
                          excess=float(max(low_excess[i], high_excess[i]))))
    return EnvelopeReport(delta=delta, measure=measure, tol=tol,
                          n_records=len(records), n_violations=int(bad.sum()),
                          adjudicated=adjudicated, worst=worst)


# ---------------------------------------------------------------------------
# CSV emission (schema v1)
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and not np.isfinite(x)):
        return ""
    return format(float(x), ".12g")


def ensemble_csv_lines(result: EnsembleResult) -> list[str]:
    lines = [SCHEMA_HEADER,
             "delta,seed,index,concurrence,negativity,linear_entropy,"
             "delta_r,robustness,r_tilde_c,r_tilde_n,r_tilde_flag"]
    for r in result.records:
        lines.append(",".join([
            _fmt(result.delta), str(r.seed), str(r.index), _fmt(r.concurrence),
            _fmt(r.negativity), _fmt(r.linear_entropy), _fmt(r.delta_r),
            _fmt(r.robustness), _fmt(r.r_tilde_c), _fmt(r.r_tilde_n),
            r.r_tilde_flag]))
    return lines


def binned_csv_lines(series_list, delta: float) -> list[str]:
    lines = [SCHEMA_HEADER,
             "delta,bin_key,quantity,bin_left,bin_right,count,mean,stderr"]
    for s in series_list:
        for i in range(len(s.means)):
            lines.append(",".join([
                _fmt(delta), s.bin_key, s.quantity, _fmt(s.bin_edges[i]),
                _fmt(s.bin_edges[i + 1]), str(int(s.counts[i])),
                _fmt(s.means[i]) if s.counts[i] else "",
                _fmt(s.stderr[i]) if s.counts[i] else ""]))
    return lines


def write_lines(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
