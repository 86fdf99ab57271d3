"""Command-line entry point.

    hshdouble table  --n 3 --exact
    hshdouble verify --max-n 12
    hshdouble run    --instance inst.json --mode fast
    hshdouble ratio  --min-n 8 --max-n 24 --weight-rule half

Data goes to stdout as CSV (default) or a single JSON document; warnings and
reports go to stderr. Exit codes: 0 success, 1 a check failed, 2 bad usage
or input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import closedform, verify
from .circuit import (
    WEIGHT_RULES,
    doubling_ratio_sweep,
    predicted_solution_probability,
    run,
)
from .partition import PartitionInstance, half_sum

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2
PREDICTION_TOL = 1e-10


def fmt_float(x) -> str:
    return format(float(x), ".12g")


def _json_float(x) -> float:
    return float(fmt_float(x))


def emit(command: str, rows: list[dict], fmt: str, out=None, **meta) -> None:
    out = out or sys.stdout
    if fmt == "json":
        doc = {"command": command, **meta, "rows": rows}
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    fields = list(rows[0]) if rows else []
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: fmt_float(v) if isinstance(v, (float, Fraction)) else v
                         for k, v in row.items()})


def _jsonable(rows: list[dict]) -> list[dict]:
    return [{k: _json_float(v) if isinstance(v, (float, Fraction)) else v
             for k, v in row.items()} for row in rows]


def cmd_table(args) -> int:
    rows = []
    for z, amp in closedform.table(args.n):
        row = {"z": str(z)}
        if args.exact:
            row["a_z"] = str(amp.value)
        else:
            row["a_z_re"] = amp.value.re
            row["a_z_im"] = amp.value.im
        c = amp.normalized
        row.update(amplitude_re=c.real, amplitude_im=c.imag, probability=amp.probability)
        rows.append(row)
    if args.format == "json":
        rows = _jsonable(rows)
    emit("table", rows, args.format, n=args.n, normalization=f"1/2^{args.n}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_checks(args.max_n)
    rows = [{"check": r.name, "cases": r.cases, "failures": r.failures,
             "status": "pass" if r.passed else "FAIL"} for r in results]
    emit("verify", rows, args.format, max_n=args.max_n)
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"FAILED {r.name}: {r.counterexample}", file=sys.stderr)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _complex_cells(prefix: str, value) -> dict:
    if value is None:
        return {f"{prefix}_re": "", f"{prefix}_im": ""}
    return {f"{prefix}_re": value.real, f"{prefix}_im": value.imag}


def cmd_run(args) -> int:
    try:
        instance = PartitionInstance.from_json(args.instance)
        target = half_sum(instance)
        result = run(instance, args.mode)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        # RejectedInstanceError and RegisterTooLargeError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    n = instance.n
    count = len(result.solutions)
    if count != 2:
        print(f"warning: instance has {count} solutions; closed-form predictions "
              "assume exactly 2", file=sys.stderr)

    status = EXIT_OK
    predicted = {}
    if count == 2:
        for d in result.diagnostics:
            p = predicted_solution_probability(n, d.y.value.bit_count())
            predicted[d.y.value] = p
            if abs(float(p) - d.probability) > PREDICTION_TOL:
                print(f"check failed: P({d.y}) = {d.probability!r} but closed form "
                      f"predicts {p}", file=sys.stderr)
                status = EXIT_CHECK_FAILED

    diag = {d.y.value: d for d in result.diagnostics}
    rows = []
    for x in range(1 << n):
        d = diag.get(x)
        row = {"z": format(x, f"0{n}b"), "probability": float(result.probabilities[x]),
               "is_solution": int(d is not None)}
        row.update(_complex_cells("branch0", d.branch0 if d else None))
        row.update(_complex_cells("branch1", d.branch1 if d else None))
        row["branch0_exact"] = str(d.branch0_exact) if d and d.branch0_exact is not None else ""
        row["branch1_exact"] = str(d.branch1_exact) if d and d.branch1_exact is not None else ""
        row["doubling_ratio"] = d.doubling_ratio if d else ""
        row["predicted_probability"] = predicted.get(x, "")
        rows.append(row)

    if args.format == "json":
        rows = [{k: v for k, v in row.items() if v != ""} for row in _jsonable(rows)]
    emit("run", rows, args.format, mode=result.mode, weights=list(instance.weights),
         half_sum=target, solutions=[str(y) for y in result.solutions],
         branch0_scale=f"1/sqrt(2^{n})", branch1_scale=f"1/2^{n}")
    return status


def cmd_ratio(args) -> int:
    if args.weight_rule == "half":
        rule = WEIGHT_RULES["half"]
    else:
        if args.weight < 0 or args.weight > args.min_n:
            print(f"error: --weight must be in [0, {args.min_n}]", file=sys.stderr)
            return EXIT_USAGE
        rule = lambda n: args.weight  # noqa: E731
    sweep = doubling_ratio_sweep(range(args.min_n, args.max_n + 1), rule)
    rows = [{"n": r.n, "weight": r.weight, "b_norm": r.b_norm,
             "predicted_probability": r.predicted, "ratio": r.ratio,
             "deviation": r.deviation, "bound": r.bound,
             "within_bound": int(r.within_bound)} for r in sweep]
    if args.format == "json":
        rows = _jsonable(rows)
    emit("ratio", rows, args.format, weight_rule=args.weight_rule)
    return EXIT_OK if all(r.within_bound for r in sweep) else EXIT_CHECK_FAILED


def _bounded_int(lo: int, hi: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"must be in [{lo}, {hi}], got {v}")
        return v
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hshdouble",
        description="H-S-H amplitude doubling: tables, checks and circuit runs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("table", help="unnormalised amplitudes a_z for every z")
    p.add_argument("--n", type=_bounded_int(1, closedform.BRUTE_FORCE_MAX_N), required=True)
    p.add_argument("--exact", action="store_true",
                   help="render a_z as a Gaussian-integer string like -2+2i")
    add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="closed forms vs brute force vs simulator")
    p.add_argument("--max-n", type=_bounded_int(1, verify.VERIFY_MAX_N), required=True)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="simulate the circuit on a partition instance")
    p.add_argument("--instance", required=True, help='JSON file {"weights": [...]}')
    p.add_argument("--mode", choices=("fast", "full"), default="fast")
    add_format(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("ratio", help="closed-form doubling ratio sweep")
    p.add_argument("--min-n", type=_bounded_int(1, 30), required=True)
    p.add_argument("--max-n", type=_bounded_int(1, 30), required=True)
    p.add_argument("--weight-rule", choices=("fixed", "half"), default="half")
    p.add_argument("--weight", type=int, default=1,
                   help="solution Hamming weight for --weight-rule fixed")
    add_format(p)
    p.set_defaults(func=cmd_ratio)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ratio" and args.min_n > args.max_n:
        parser.error("--min-n must not exceed --max-n")
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
