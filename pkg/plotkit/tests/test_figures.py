import os
import subprocess
import sys

import pytest

from plotkit.cli import main
from plotkit.csvdata import SchemaError, read_table
from plotkit.figures import FigureSpec, render

FIX = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fx(*names):
    return [os.path.join(FIX, n) for n in names]


FIGURE_INPUTS = {
    "F0": (fx("ensemble_d0_alpha.csv", "family_pure_both_d0.csv",
              "family_minneg_both_d0.csv"), 3),
    "F1": (fx("ensemble_d1_alpha.csv", "family_mres_c_d1.csv",
              "family_mfes_c_d1.csv", "family_mres_n_d1.csv",
              "family_mfes_n_d1.csv"), 6),
    "F2": (fx("family_pure_c_d0.csv", "family_pure_c_d0.25.csv",
              "family_pure_c_d0.5.csv", "family_pure_c_d0.75.csv",
              "family_pure_c_d1.csv"), 5),
    "F3": (fx(*[f"family_{kind}_c_d{d}.csv"
                for d in ("0", "0.25", "0.5", "0.75")
                for kind in ("mres", "mfes", "quasi")]), 12),
    "F4": (fx("ensemble_d0.5_alpha.csv", "family_mres_n_d0.5.csv",
              "family_mfes_n_d0.5.csv"), 3),
    "F5": (fx(*[f"family_{kind}_n_rtheta_d{d}.csv"
                for kind in ("mfes", "mres")
                for d in ("0", "0.25", "0.5", "0.75", "0.99")]), 10),
    "F6": (fx("binned_robustness_d0_alpha.csv",
              "binned_robustness_d1_alpha.csv"), 6),
    "F7": (fx("binned_rtilde_d0_alpha.csv"), 2),
    "F8": (fx("binned_rtilde_d1_alpha.csv"), 2),
}


@pytest.mark.parametrize("figure_id", sorted(FIGURE_INPUTS))
def test_renders_from_fixtures(figure_id, tmp_path):
    inputs, expected_series = FIGURE_INPUTS[figure_id]
    out = tmp_path / f"{figure_id}.png"
    result = render(FigureSpec(figure_id=figure_id, input_paths=inputs,
                               out_path=str(out)))
    assert out.exists() and out.stat().st_size > 0
    assert result.n_series == expected_series


def test_never_touches_the_solver_package(tmp_path):
    # plotting is CSV-only; rendering in a fresh interpreter must not pull in
    # the solver package
    inputs, _ = FIGURE_INPUTS["F7"]
    prog = (
        "import sys\n"
        "from plotkit.figures import FigureSpec, render\n"
        f"render(FigureSpec('F7', {inputs!r}, {str(tmp_path / 'iso.png')!r}))\n"
        "assert 'esdlab' not in sys.modules, 'solver package was imported'\n"
    )
    subprocess.run([sys.executable, "-c", prog], check=True)


def test_f2_curves_ordered_by_asymmetry():
    # the strongest asymmetry gives the most robust pure states at fixed C
    inputs, _ = FIGURE_INPUTS["F2"]
    at_half = {}
    for path in inputs:
        tab = read_table(path)
        delta = tab.rows[0]["delta"]
        pts = sorted((r["entanglement"], r["robustness"]) for r in tab.rows)
        mid = min(pts, key=lambda p: abs(p[0] - 0.5))
        at_half[delta] = mid[1]
    order = sorted(at_half, key=at_half.get)
    assert order == sorted(at_half)        # robustness increases with delta


def test_empty_csv_rejected(tmp_path):
    bad = tmp_path / "empty.csv"
    bad.write_text("# esdlab-schema v1\ndelta,kind\n", encoding="utf-8")
    with pytest.raises(SchemaError, match="no data rows"):
        read_table(str(bad))


def test_wrong_schema_rejected(tmp_path):
    bad = tmp_path / "old.csv"
    bad.write_text("# other-schema\na,b\n1,2\n", encoding="utf-8")
    with pytest.raises(SchemaError, match="esdlab-schema"):
        read_table(str(bad))


def test_missing_column_rejected(tmp_path):
    bad = tmp_path / "cols.csv"
    bad.write_text("# esdlab-schema v1\ndelta,kind\n0,mres\n", encoding="utf-8")
    tab = read_table(str(bad))
    with pytest.raises(SchemaError, match="missing column"):
        tab.column("robustness")


def test_cli_renders(tmp_path, capsys):
    inputs, _ = FIGURE_INPUTS["F7"]
    out = tmp_path / "f7.png"
    assert main(["--figure", "F7", "--in", *inputs, "--out", str(out)]) == 0
    assert out.exists() and out.stat().st_size > 0
    assert "2 series" in capsys.readouterr().out


def test_cli_error_on_empty(tmp_path):
    bad = tmp_path / "empty.csv"
    bad.write_text("# esdlab-schema v1\ndelta\n", encoding="utf-8")
    assert main(["--figure", "F7", "--in", str(bad), "--out",
                 str(tmp_path / "x.png")]) == 1


def test_wrong_input_count_rejected(tmp_path):
    inputs, _ = FIGURE_INPUTS["F4"]
    with pytest.raises(SchemaError, match="exactly"):
        render(FigureSpec(figure_id="F4", input_paths=inputs[:2],
                          out_path=str(tmp_path / "x.png")))
