"""Batch command-line front end.

Subcommands
-----------
metrics   one state: EPR correlation, quadrature variances, optimal sum
          squeezing, entanglement entropy
fidelity  one state + input: teleportation fidelity (closed form, engine,
          or quadrature witness)
sweep     metrics + fidelity over an --r-range grid
table1    the six-column reference reproduction at EPR correlation 1.0,
          with diffs against the bundled reference values
figure    (x, y, series) datasets for the standard figures, ids
          1a 1b 2 3a 3b 4 5a 5b 6a 6b 7 8a 8b
verify    identity and oracle-equivalence suite; exit 2 on any failure

Figure series not pinned by their captions were fixed here: 3a/3b use
(1,0), (2,0), (2,1) and 6a/6b use (2,0), (2,1), (2,2), each plus the plain
squeezed vacuum.  Defaults grids: r in [0, 2] step 0.02 (figures 1-6),
epsilon in [0, 1.2] step 0.02 at r = 0.3 (figure 7), EPR correlation in
[0.2, 1.6] step 0.02 (figure 8a), entropy in [0.2, 3.0] step 0.05 (8b).

Output is CSV (default) or JSON; CSV carries a '#'-prefixed line recording
the full configuration and all floats are written with 17 significant
digits so files round-trip and diff cleanly.  Exit codes: 0 success,
1 computation or envelope error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import metrics, refdata, states, teleport, verify
from .errors import TmsvKitError
from .moments import KIND_ADD, KIND_SUBTRACT, ResourceSpec

KIND_FLAGS = {"ps": KIND_SUBTRACT, "pa": KIND_ADD}

FIGURE_IDS = ("1a", "1b", "2", "3a", "3b", "4", "5a", "5b", "6a", "6b", "7", "8a", "8b")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(records: list[dict], columns: list[str], config: dict, args) -> None:
    if args.format == "json":
        payload = {"config": config, "records": records}
        text = json.dumps(payload, indent=2, default=_fmt) + "\n"
    else:
        lines = ["# config: " + " ".join(f"{k}={v}" for k, v in sorted(config.items()))]
        lines.append(",".join(columns))
        for rec in records:
            lines.append(",".join(_fmt(rec[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec_from_args(args, r=None) -> ResourceSpec:
    return ResourceSpec(KIND_FLAGS[args.kind], args.k, args.l, args.r if r is None else r)


def _r_grid(args):
    if args.r_range:
        lo, hi, step = (float(v) for v in args.r_range.split(":"))
        if step <= 0 or hi < lo:
            raise TmsvKitError(f"bad --r-range {args.r_range!r}; expected A:B:STEP with positive step")
        out = []
        v = lo
        while v <= hi + 1e-12:
            out.append(round(v, 12))
            v += step
        return out
    if args.r is None:
        raise TmsvKitError("either --r or --r-range is required")
    return [args.r]


def _input_from_args(args) -> teleport.InputState:
    if args.input == "squeezed":
        return teleport.squeezed_input(args.epsilon)
    return teleport.coherent_input()


def _metrics_record(spec: ResourceSpec) -> dict:
    rep = metrics.metrics_report(spec)
    return {
        "kind": spec.kind,
        "k": spec.k,
        "l": spec.l,
        "r": spec.r,
        "epr": rep.epr,
        "var_x": rep.var_x,
        "var_p": rep.var_p,
        "sum_squeeze_opt": rep.sum_squeeze_opt,
        "phi_opt": rep.phi_opt,
        "entropy_bits": rep.entropy_bits,
    }


METRICS_COLUMNS = [
    "kind", "k", "l", "r", "epr", "var_x", "var_p", "sum_squeeze_opt", "phi_opt", "entropy_bits",
]


def cmd_metrics(args) -> int:
    spec = _spec_from_args(args, r=_r_grid(args)[0])
    _emit([_metrics_record(spec)], METRICS_COLUMNS, _config(args, "metrics"), args)
    return 0


def _fidelity_value(spec: ResourceSpec, args) -> tuple[float, str]:
    input_state = _input_from_args(args)
    if args.method == "quadrature":
        res = teleport.fidelity_quadrature(spec, input_state, tail_tol=args.tail_tol)
    elif input_state.kind == "coherent":
        res = teleport.fidelity_coherent(spec)
    else:
        res = teleport.fidelity_squeezed(spec, input_state)
    return res.value, res.method


def cmd_fidelity(args) -> int:
    records = []
    for r in _r_grid(args):
        spec = _spec_from_args(args, r=r)
        value, method = _fidelity_value(spec, args)
        records.append(
            {
                "kind": spec.kind,
                "k": spec.k,
                "l": spec.l,
                "r": r,
                "input": args.input,
                "epsilon": args.epsilon if args.input == "squeezed" else 0.0,
                "method": method,
                "fidelity": value,
            }
        )
    columns = ["kind", "k", "l", "r", "input", "epsilon", "method", "fidelity"]
    _emit(records, columns, _config(args, "fidelity"), args)
    return 0


def cmd_sweep(args) -> int:
    records = []
    for r in _r_grid(args):
        spec = _spec_from_args(args, r=r)
        rec = _metrics_record(spec)
        value, method = _fidelity_value(spec, args)
        rec.update(
            input=args.input,
            epsilon=args.epsilon if args.input == "squeezed" else 0.0,
            method=method,
            fidelity=value,
        )
        records.append(rec)
    columns = METRICS_COLUMNS + ["input", "epsilon", "method", "fidelity"]
    _emit(records, columns, _config(args, "sweep"), args)
    return 0


def cmd_table1(args) -> int:
    records = []
    for (k, l) in refdata.TABLE_SHAPES:
        ref = refdata.REFERENCE_TABLE[(k, l)]
        r = metrics.solve_r_for_epr((KIND_SUBTRACT, k, l), refdata.TABLE_EPR_TARGET)
        spec = ResourceSpec(KIND_SUBTRACT, k, l, r)
        fid = teleport.fidelity_coherent(spec).value
        ent = states.entropy(spec)
        records.append(
            {
                "k": k,
                "l": l,
                "r": r,
                "fidelity": fid,
                "entropy": ent,
                "r_ref": ref["r"],
                "fidelity_ref": ref["fidelity"],
                "entropy_ref": ref["entropy"],
                "r_diff": r - ref["r"],
                "fidelity_diff": fid - ref["fidelity"],
                "entropy_diff": ent - ref["entropy"],
            }
        )
    columns = [
        "k", "l", "r", "fidelity", "entropy",
        "r_ref", "fidelity_ref", "entropy_ref",
        "r_diff", "fidelity_diff", "entropy_diff",
    ]
    _emit(records, columns, _config(args, "table1"), args)
    return 0


def _arange(lo, hi, step):
    out = []
    v = lo
    while v <= hi + 1e-12:
        out.append(round(v, 12))
        v += step
    return out


def _figure_dataset(figure_id: str, tail_tol: float) -> tuple[list[dict], list[str]]:
    r_grid = _arange(0.02, 2.0, 0.02)
    records = []

    def series_label(kind, k, l):
        # no commas: labels must stay single CSV fields
        tag = "ps" if kind == KIND_SUBTRACT else "pa"
        return f"{tag}-{k}-{l}" if (k, l) != (0, 0) else "tmsv"

    def add_point(label, x, y):
        records.append({"figure": figure_id, "series": label, "x": x, "y": y})

    def metric_series(kind, shapes, value_fn, grid=None):
        for (k, l) in shapes:
            label = series_label(kind, k, l)
            for r in grid if grid is not None else r_grid:
                if r == 0.0 and kind == KIND_SUBTRACT and k + l > 0:
                    continue  # subtracted state undefined at r = 0
                add_point(label, r, value_fn(ResourceSpec(kind, k, l, r)))

    symmetric = ((1, 1), (2, 2), (3, 3))
    if figure_id == "1a":
        metric_series(KIND_SUBTRACT, ((0, 0),) + symmetric, states.entropy)
    elif figure_id == "1b":
        metric_series(KIND_SUBTRACT, ((0, 0), (3, 0), (3, 1), (3, 2), (3, 3)), states.entropy)
    elif figure_id == "2":
        metric_series(KIND_SUBTRACT, ((0, 0),) + symmetric, metrics.epr_correlation)
        metric_series(KIND_ADD, symmetric, metrics.epr_correlation)
    elif figure_id in ("3a", "3b"):
        kind = KIND_SUBTRACT if figure_id == "3a" else KIND_ADD
        metric_series(KIND_SUBTRACT, ((0, 0),), metrics.epr_correlation)
        metric_series(kind, ((1, 0), (2, 0), (2, 1)), metrics.epr_correlation)
    elif figure_id == "4":
        s_opt = lambda spec: metrics.sum_squeezing_optimal(spec)[1]
        metric_series(KIND_SUBTRACT, ((0, 0), (1, 1), (2, 2), (5, 5)), s_opt)
        metric_series(KIND_ADD, ((1, 1), (2, 2), (5, 5)), s_opt)
    elif figure_id in ("5a", "5b"):
        eps = 0.0 if figure_id == "5a" else 0.6
        if eps == 0.0:
            value = lambda spec: teleport.fidelity_coherent(spec).value
            grid = [0.0] + r_grid  # classical bound point included
        else:
            value = lambda spec: teleport.fidelity_squeezed(spec, teleport.squeezed_input(eps)).value
            grid = r_grid
        metric_series(KIND_SUBTRACT, ((0, 0),) + symmetric, value, grid=grid)
        metric_series(KIND_ADD, symmetric, value, grid=grid)
    elif figure_id in ("6a", "6b"):
        kind = KIND_SUBTRACT if figure_id == "6a" else KIND_ADD
        value = lambda spec: teleport.fidelity_coherent(spec).value
        metric_series(KIND_SUBTRACT, ((0, 0),), value)
        metric_series(kind, ((2, 0), (2, 1), (2, 2)), value)
    elif figure_id == "7":
        eps_grid = _arange(0.0, 1.2, 0.02)
        for kind, shapes in ((KIND_SUBTRACT, ((0, 0),) + symmetric), (KIND_ADD, symmetric)):
            for (k, l) in shapes:
                label = series_label(kind, k, l)
                spec = ResourceSpec(kind, k, l, 0.3)
                for eps in eps_grid:
                    f = teleport.fidelity_squeezed(spec, teleport.squeezed_input(eps)).value
                    add_point(label, eps, f)
    elif figure_id in ("8a", "8b"):
        axis = teleport.X_AXIS_EPR if figure_id == "8a" else teleport.X_AXIS_ENTROPY
        grid = _arange(0.2, 1.6, 0.02) if figure_id == "8a" else _arange(0.2, 3.0, 0.05)
        for (k, l) in ((0, 0),) + symmetric:
            label = series_label(KIND_SUBTRACT, k, l)
            pts = teleport.parametric_curve(
                (KIND_SUBTRACT, k, l), teleport.coherent_input(), axis, grid
            )
            for x, y in pts:
                add_point(label, x, y)
    else:
        raise TmsvKitError(f"unknown figure id {figure_id!r}; known: {', '.join(FIGURE_IDS)}")
    return records, ["figure", "series", "x", "y"]


def cmd_figure(args) -> int:
    records, columns = _figure_dataset(args.figure, args.tail_tol)
    _emit(records, columns, _config(args, "figure"), args)
    return 0


def cmd_verify(args) -> int:
    checks = verify.run_checks(tolerance_override=args.tolerance)
    records = [
        {
            "check": c.name,
            "deviation": c.deviation,
            "tolerance": c.tolerance,
            "status": "pass" if c.passed else "FAIL",
        }
        for c in checks
    ]
    _emit(records, ["check", "deviation", "tolerance", "status"], _config(args, "verify"), args)
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"FAIL {c.name}: deviation {c.deviation:.3e} > tolerance {c.tolerance:.3e}",
              file=sys.stderr)
    return 2 if failed else 0


def _config(args, command: str) -> dict:
    keys = ("kind", "k", "l", "r", "r_range", "input", "epsilon", "figure",
            "format", "tail_tol", "tolerance", "method")
    config = {"command": command}
    for key in keys:
        if hasattr(args, key) and getattr(args, key) is not None:
            config[key] = getattr(args, key)
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmsvkit",
        description="figures of merit for photon-subtracted/added two-mode squeezed vacuum states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, spec_flags=True, input_flags=False):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--tail-tol", dest="tail_tol", type=float, default=1e-12)
        if spec_flags:
            p.add_argument("--kind", choices=("ps", "pa"), default="ps")
            p.add_argument("--k", type=int, default=0)
            p.add_argument("--l", type=int, default=0)
            p.add_argument("--r", type=float, default=None)
            p.add_argument("--r-range", dest="r_range", default=None, metavar="A:B:STEP")
        if input_flags:
            p.add_argument("--input", choices=("coherent", "squeezed"), default="coherent")
            p.add_argument("--epsilon", type=float, default=0.0)
            p.add_argument("--method", choices=("closed", "quadrature"), default="closed")

    p = sub.add_parser("metrics", help="metrics of one state")
    add_common(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("fidelity", help="teleportation fidelity")
    add_common(p, input_flags=True)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("sweep", help="metrics and fidelity over an r grid")
    add_common(p, input_flags=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table1", help="six-column reference reproduction at EPR correlation 1.0")
    add_common(p, spec_flags=False)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("figure", help="dataset for one of the standard figures")
    add_common(p, spec_flags=False)
    p.add_argument("--figure", required=True, metavar="ID", help="one of " + " ".join(FIGURE_IDS))
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="identity and oracle-equivalence suite")
    add_common(p, spec_flags=False)
    p.add_argument("--tolerance", type=float, default=None,
                   help="override every check's tolerance")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TmsvKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
