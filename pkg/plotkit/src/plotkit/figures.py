"""Render static figure analogs from esdlab CSV files.

Each renderer consumes schema-v1 CSV tables (ensemble scatters, extremal
family curves, binned trend series) and writes one image.  Rendering involves
no physics: every plotted number comes straight out of a CSV column.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from plotkit.csvdata import SchemaError, Table, read_table

FIGURE_IDS = tuple(f"F{i}" for i in range(9))


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    input_paths: list[str]
    out_path: str

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(f"figure_id must be one of {FIGURE_IDS}")
        if not self.input_paths:
            raise ValueError("at least one input CSV is required")


@dataclass
class RenderResult:
    out_path: str
    n_series: int


def _require(n_inputs: int, spec: FigureSpec, exact=None, minimum=None):
    if exact is not None and n_inputs != exact:
        raise SchemaError(f"{spec.figure_id} needs exactly {exact} inputs, got {n_inputs}")
    if minimum is not None and n_inputs < minimum:
        raise SchemaError(f"{spec.figure_id} needs at least {minimum} inputs, got {n_inputs}")


def _family_xy(table: Table, x_col: str, y_col: str):
    pts = sorted(zip(table.column(x_col), table.column(y_col)))
    return [p[0] for p in pts], [p[1] for p in pts]


def _join_both_measures(table: Table):
    """Pair the measure-c and measure-n rows of one family by (r, theta)."""
    by_point = {}
    for row in table.rows:
        key = (round(row["r"], 10), round(row["theta"], 10))
        by_point.setdefault(key, {})[row["measure"]] = row["entanglement"]
    pairs = []
    for key, vals in by_point.items():
        if "c" not in vals or "n" not in vals:
            raise SchemaError(f"{table.path}: point {key} lacks a c/n row pair")
        pairs.append((vals["c"], vals["n"]))
    pairs.sort()
    return [p[0] for p in pairs], [p[1] for p in pairs]


def _binned_series(table: Table, bin_key: str, quantity: str):
    rows = [r for r in table.rows
            if r["bin_key"] == bin_key and r["quantity"] == quantity
            and r["count"] and r["mean"] is not None]
    if not rows:
        raise SchemaError(f"{table.path}: no populated bins for "
                          f"({bin_key}, {quantity})")
    x = [0.5 * (r["bin_left"] + r["bin_right"]) for r in rows]
    y = [r["mean"] for r in rows]
    err = [r["stderr"] if r["stderr"] is not None else 0.0 for r in rows]
    return x, y, err


def _delta_label(table: Table) -> str:
    return f"delta = {table.rows[0]['delta']:g}"


def _render_f0(tables, spec):
    _require(len(tables), spec, exact=3)
    ensemble, pure, minneg = tables
    fig, ax = plt.subplots(figsize=(5, 4.2))
    n = 0
    ax.scatter(ensemble.column("concurrence"), ensemble.column("negativity"),
               s=3, alpha=0.3, label="random states")
    n += 1
    for tab, label, style in ((pure, "pure boundary", "-"),
                              (minneg, "minimal-negativity boundary", "--")):
        cx, nx = _join_both_measures(tab)
        ax.plot(cx, nx, style, lw=1.6, label=label)
        n += 1
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("concurrence")
    ax.set_ylabel("negativity")
    ax.legend(loc="upper left", fontsize=8)
    return fig, n


def _render_f1(tables, spec):
    _require(len(tables), spec, exact=5)
    ensemble, mres_c, mfes_c, mres_n, mfes_n = tables
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    n = 0
    for ax, col, mres, mfes in ((axes[0], "concurrence", mres_c, mfes_c),
                                (axes[1], "negativity", mres_n, mfes_n)):
        ax.scatter(ensemble.column(col), ensemble.column("robustness"),
                   s=3, alpha=0.3)
        n += 1
        for tab, style, label in ((mres, "-", "most robust"),
                                  (mfes, "--", "most fragile")):
            x, y = _family_xy(tab, "entanglement", "robustness")
            ax.plot(x, y, style, lw=1.6, label=label)
            n += 1
        ax.set_xlabel(col)
        ax.set_ylabel("robustness")
        ax.margins(0.05)
    axes[0].legend(fontsize=8)
    fig.suptitle("one-sided channel")
    return fig, n


def _render_f2(tables, spec):
    _require(len(tables), spec, minimum=2)
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    n = 0
    for tab in sorted(tables, key=lambda t: -t.rows[0]["delta"]):
        x, y = _family_xy(tab, "entanglement", "robustness")
        ax.plot(x, y, lw=1.5, label=_delta_label(tab))
        n += 1
    ax.set_xlabel("concurrence")
    ax.set_ylabel("robustness")
    ax.margins(0.05)
    ax.legend(fontsize=8)
    fig.suptitle("pure states")
    return fig, n


def _render_f3(tables, spec):
    _require(len(tables), spec, minimum=3)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    n = 0
    for tab in tables:
        kind = tab.rows[0]["kind"]
        x, y = _family_xy(tab, "entanglement", "robustness")
        if kind == "quasi":
            ax.scatter(x, y, s=22, zorder=3,
                       label=f"quasi, {_delta_label(tab)}")
        else:
            style = "-" if kind == "mres" else "--"
            ax.plot(x, y, style, lw=1.4, label=f"{kind}, {_delta_label(tab)}")
        n += 1
    ax.set_xlabel("concurrence")
    ax.set_ylabel("robustness")
    ax.margins(0.05)
    ax.legend(fontsize=6, ncol=2)
    return fig, n


def _render_f4(tables, spec):
    _require(len(tables), spec, exact=3)
    ensemble, mres_n, mfes_n = tables
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    n = 0
    ax.scatter(ensemble.column("negativity"), ensemble.column("robustness"),
               s=3, alpha=0.3)
    n += 1
    for tab, style, label in ((mres_n, "-", "most robust"),
                              (mfes_n, "--", "most fragile")):
        x, y = _family_xy(tab, "entanglement", "robustness")
        ax.plot(x, y, style, lw=1.6, label=label)
        n += 1
    ax.set_xlabel("negativity")
    ax.set_ylabel("robustness")
    ax.margins(0.05)
    ax.legend(fontsize=8)
    return fig, n


def _render_f5(tables, spec):
    _require(len(tables), spec, minimum=2)
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    panel = {"mfes": axes[0], "mres": axes[1]}
    n = 0
    for tab in sorted(tables, key=lambda t: -t.rows[0]["delta"]):
        kind = tab.rows[0]["kind"]
        if kind not in panel:
            raise SchemaError(f"{tab.path}: kind {kind!r} has no panel here")
        x, y = _family_xy(tab, "r", "theta")
        panel[kind].plot(x, y, lw=1.4, label=_delta_label(tab))
        n += 1
    for key, ax in panel.items():
        ax.set_xlabel("r")
        ax.set_ylabel("theta")
        ax.set_title(f"{key} family")
        ax.margins(0.05)
        ax.legend(fontsize=7)
    return fig, n


def _render_f6(tables, spec):
    _require(len(tables), spec, minimum=1)
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
    quantities = ("concurrence", "negativity", "linear_entropy")
    markers = ("o", "s", "^", "v")
    n = 0
    for ax, q in zip(axes, quantities):
        for i, tab in enumerate(tables):
            x, y, err = _binned_series(tab, "robustness", q)
            ax.errorbar(x, y, yerr=err, fmt=markers[i % len(markers)], ms=3.5,
                        lw=0.8, capsize=2, label=_delta_label(tab))
            n += 1
        ax.set_xlabel("robustness")
        ax.set_ylabel(f"mean {q.replace('_', ' ')}")
        ax.margins(0.05)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    return fig, n


def _render_rtilde(tables, spec, quantity):
    _require(len(tables), spec, exact=1)
    tab = tables[0]
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    n = 0
    for key, marker in (("r_tilde_c", "o"), ("r_tilde_n", "s")):
        x, y, err = _binned_series(tab, key, quantity)
        ax.errorbar(x, y, yerr=err, fmt=marker, ms=3.5, lw=0.8, capsize=2,
                    label=key.replace("r_tilde_", "normalized by "))
        n += 1
    ax.set_xlabel("normalized robustness")
    ax.set_ylabel(f"mean {quantity.replace('_', ' ')}")
    ax.margins(0.05)
    ax.legend(fontsize=8)
    return fig, n


_RENDERERS = {
    "F0": _render_f0,
    "F1": _render_f1,
    "F2": _render_f2,
    "F3": _render_f3,
    "F4": _render_f4,
    "F5": _render_f5,
    "F6": _render_f6,
    "F7": lambda tables, spec: _render_rtilde(tables, spec, "linear_entropy"),
    "F8": lambda tables, spec: _render_rtilde(tables, spec, "delta_r"),
}


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure analog; returns the output path and series count."""
    tables = [read_table(p) for p in spec.input_paths]
    fig, n_series = _RENDERERS[spec.figure_id](tables, spec)
    fig.savefig(spec.out_path, dpi=150)
    plt.close(fig)
    return RenderResult(out_path=spec.out_path, n_series=n_series)
