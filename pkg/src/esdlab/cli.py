"""Command-line surface: measure, scrit, family, mc, verify.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 domain error (separable input).  Every command is deterministic given its
flags; the ESDLAB_THREADS environment variable caps worker processes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from esdlab import entanglement, mcstats, suites
from esdlab.entanglement import concurrence_ansatz, negativity_ansatz
from esdlab.extremal import family_sweep
from esdlab.qstate import (
    AnsatzParams,
    RandomSpec,
    StateValidationError,
    bloch_vectors,
    linear_entropy,
    make_ansatz,
    state_from_json_obj,
)
from esdlab.robustness import SeparableStateError, s_crit_numeric

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    delta: float = 0.0
    seed: int = 0
    count: int = 0
    grid: int = 0
    out_path: str = ""
    format: str = "csv"


def _load_state(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as e:
        raise StateValidationError(
            f"{path}: JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}")
    except OSError as e:
        raise StateValidationError(f"{path}: {e}")
    if isinstance(obj, dict) and set(obj) >= {"r", "theta"}:
        return make_ansatz(AnsatzParams(r=float(obj["r"]), theta=float(obj["theta"])))
    if isinstance(obj, list):
        return state_from_json_obj(obj)
    raise StateValidationError(
        f"{path}: expected a 4x4 [re, im] array or an {{'r','theta'}} object")


def cmd_measure(args) -> int:
    rho = _load_state(args.state_file)
    bl = bloch_vectors(rho)
    out = {
        "C": entanglement.concurrence(rho),
        "N": entanglement.negativity(rho),
        "S_L": linear_entropy(rho),
        "r1_len": bl.r1_len,
        "r2_len": bl.r2_len,
        "delta_r": bl.delta_r,
    }
    print(json.dumps(out))
    return EXIT_OK


def cmd_scrit(args) -> int:
    rho = _load_state(args.state_file)
    res = s_crit_numeric(rho, args.delta)
    print(json.dumps({"s_crit": res.s_crit, "robustness": res.robustness,
                      "method": res.method, "residual": res.residual}))
    return EXIT_OK


def _family_rows(points, measures) -> list[str]:
    lines = [mcstats.SCHEMA_HEADER,
             "delta,kind,measure,r,theta,entanglement,robustness"]
    fmt = mcstats._fmt
    for p in points:
        for m in measures:
            ent = (p.entanglement if m == p.measure
                   else (concurrence_ansatz(p.params) if m == "c"
                         else negativity_ansatz(p.params)))
            lines.append(",".join([
                fmt(p.delta), p.kind, m, fmt(p.params.r), fmt(p.params.theta),
                fmt(ent), fmt(p.robustness)]))
    return lines


def cmd_family(args) -> int:
    problem = args.family_measure if args.measure == "both" else args.measure
    points = family_sweep(args.kind, problem, args.delta, args.grid)
    measures = ("c", "n") if args.measure == "both" else (args.measure,)
    if args.format == "json":
        rows = []
        for p in points:
            rows.append({"delta": p.delta, "kind": p.kind, "measure": p.measure,
                         "r": p.params.r, "theta": p.params.theta,
                         "entanglement": p.entanglement, "robustness": p.robustness})
        text = json.dumps(rows, indent=1)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return EXIT_OK
    lines = _family_rows(points, measures)
    if args.out:
        mcstats.write_lines(args.out, lines)
    else:
        print("\n".join(lines))
    return EXIT_OK


def cmd_mc(args) -> int:
    spec = RandomSpec(seed=args.seed, count=args.count, spectrum_mode=args.mode,
                      mix_delta_max=args.mix_delta_max)
    result = mcstats.run_ensemble(spec, args.delta)
    os.makedirs(args.out, exist_ok=True)
    tag = f"d{args.delta:g}_{args.mode}"
    mcstats.write_lines(os.path.join(args.out, f"ensemble_{tag}.csv"),
                        mcstats.ensemble_csv_lines(result))
    series = [mcstats.binned_averages(result.records, "robustness", args.bins, q)
              for q in ("concurrence", "negativity", "linear_entropy", "delta_r")]
    mcstats.write_lines(os.path.join(args.out, f"binned_robustness_{tag}.csv"),
                        mcstats.binned_csv_lines(series, args.delta))
    if any(r.r_tilde_c is not None for r in result.records):
        series = []
        for key in ("r_tilde_c", "r_tilde_n"):
            for q in ("linear_entropy", "delta_r"):
                series.append(mcstats.binned_averages(result.records, key, args.bins, q))
        mcstats.write_lines(os.path.join(args.out, f"binned_rtilde_{tag}.csv"),
                            mcstats.binned_csv_lines(series, args.delta))
    print(f"wrote {args.out}: {len(result.records)} records "
          f"({result.discarded} separable draws discarded)")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "factorization":
        rep = suites.factorization_suite(seed=args.seed, count=args.count)
    elif args.suite == "quasifidelity":
        rep = suites.quasi_fidelity_suite()
    else:
        deltas = (args.delta,) if args.delta is not None else (0.0, 0.5, 1.0)
        rep = suites.envelope_suite(seed=args.seed, count=args.count, deltas=deltas)
    width = max(len(r["check"]) for r in rep["rows"])
    for r in rep["rows"]:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"{status}  {r['check']:<{width}}  n={r['n']}  "
              f"worst={r['worst']:.3e}  tol={r['tol']:.1e}")
    print(f"suite {rep['suite']}: {'PASS' if rep['passed'] else 'FAIL'}")
    return EXIT_OK if rep["passed"] else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="esdlab",
                                 description="Two-qubit entanglement robustness toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="entanglement measures of a JSON state file")
    p.add_argument("state_file")
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("scrit", help="critical noise parameter of a state")
    p.add_argument("state_file")
    p.add_argument("--delta", type=float, default=0.0)
    p.set_defaults(fn=cmd_scrit)

    p = sub.add_parser("family", help="extremal family curve")
    p.add_argument("--kind", choices=("mres", "mfes", "quasi"), required=True)
    p.add_argument("--measure", choices=("c", "n", "both"), required=True)
    p.add_argument("--family-measure", choices=("c", "n"), default="c",
                   help="extremal problem to solve when --measure both")
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--out", default="")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("mc", help="random-state ensemble and binned series CSVs")
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--mode", choices=("simplex", "alpha"), default="alpha")
    p.add_argument("--mix-delta-max", type=float, default=0.0)
    p.add_argument("--bins", type=int, default=25)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_mc)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", choices=("envelope", "factorization", "quasifidelity"),
                   required=True)
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--delta", type=float, default=None)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "mc" and args.count <= 0:
        print("error: --count must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except StateValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SeparableStateError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
