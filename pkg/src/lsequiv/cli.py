"""Command-line interface over the verification and study drivers.

Exit codes: 0 when every executed check passes, 1 when a check fails or a
driver reports a typed error, 2 for usage mistakes (argparse default).
"""

import argparse
import dataclasses
import json
import os
import sys

from .harness import (
    RunConfig,
    condition_checker,
    export_basis,
    run_equivalence_chain,
    run_risk_study,
    run_tv_decay,
    run_verify,
    schedule,
)
from .report import SCHEMA, fmt_float, write_csv_rows

_DEFAULT_VERIFY_N = 64


def _add_common(p, grid_n: bool, fmt_choices=("csv", "json")):
    p.add_argument("--config", metavar="PATH", help="JSON run configuration")
    if grid_n:
        p.add_argument("--n", type=int, nargs="+", help="sample-size grid")
    else:
        p.add_argument("--n", type=int, help="sample size")
    p.add_argument("--seed", type=int, help="base seed (overrides config)")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument(
        "--format", choices=fmt_choices, default=fmt_choices[0], dest="fmt", help="output format"
    )
    p.add_argument("--timings", action="store_true", help="include runtime columns")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsequiv",
        description="Verification suites and convergence studies for the "
        "locally-stationary Gaussian equivalence toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = [
        ("verify", "run the inequality and identity suite at one n", False),
        ("chain", "run the full reduction chain across an n grid", True),
        ("tvdecay", "total-variation decay study (K <= 2 windows)", True),
        ("riskstudy", "white-noise pilot risk study", True),
        ("conditions", "print rate-condition values at one n", False),
        ("export-basis", "write both matrix families plus a manifest", False),
    ]
    for name, help_text, grid_n in specs:
        p = sub.add_parser(name, help=help_text)
        if name == "export-basis":
            _add_common(p, grid_n, fmt_choices=("csv", "binary"))
            p.add_argument("--k1", type=int, help="time-frequency cutoff")
            p.add_argument("--k2", type=int, help="band-offset cutoff")
        else:
            _add_common(p, grid_n)
    return parser


def _load_config(args) -> RunConfig:
    if args.config:
        with open(args.config) as fh:
            cfg = RunConfig.from_json(fh.read())
    else:
        cfg = RunConfig()
    overrides = {}
    n = getattr(args, "n", None)
    if n is not None:
        overrides["n_grid"] = tuple(n) if isinstance(n, list) else (n,)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.timings:
        overrides["timings"] = True
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    return cfg


def _study_json(header, rows) -> str:
    def stable(v):
        if isinstance(v, bool) or v is None:
            return v
        if isinstance(v, float):
            return float(fmt_float(v))
        return v

    payload = {
        "schema": SCHEMA,
        "columns": list(header),
        "rows": [{key: stable(v) for key, v in zip(header, row)} for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_study(args, stem, header, rows) -> str:
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"{stem}.{args.fmt}")
    if args.fmt == "csv":
        write_csv_rows(path, header, rows)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(_study_json(header, rows))
    return path


def _cmd_verify(args) -> int:
    cfg = _load_config(args)
    n = cfg.n_grid[0] if (args.n is not None or args.config) else _DEFAULT_VERIFY_N
    report = run_verify(n, seed=cfg.seed, timings=cfg.timings)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"verify_report.{args.fmt}")
    text = report.to_json(cfg.timings) if args.fmt == "json" else report.to_csv(cfg.timings)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    for e in report.failures():
        print(f"FAIL {e.check_id}: lhs={fmt_float(e.lhs)} rhs={fmt_float(e.rhs)}")
    passed = sum(1 for e in report.entries if e.passed)
    print(f"verify: {passed}/{len(report.entries)} checks passed -> {path}")
    return 0 if report.all_passed else 1


def _cmd_chain(args) -> int:
    cfg = _load_config(args)
    header, rows = run_equivalence_chain(cfg)
    path = _write_study(args, "chain_study", header, rows)
    failed = [row for row in rows if row[-1]]
    print(f"chain: {len(rows)} rows, {len(failed)} with errors -> {path}")
    return 1 if failed else 0


def _cmd_tvdecay(args) -> int:
    cfg = _load_config(args)
    header, rows = run_tv_decay(cfg)
    path = _write_study(args, "tv_decay", header, rows)
    print(f"tvdecay: {len(rows)} rows -> {path}")
    return 0


def _cmd_riskstudy(args) -> int:
    cfg = _load_config(args)
    header, rows = run_risk_study(cfg)
    path = _write_study(args, "risk_study", header, rows)
    failed = sum(1 for row in rows if not row[-1])
    print(f"riskstudy: {len(rows)} rows, {failed} above budget -> {path}")
    return 1 if failed else 0


def _cmd_conditions(args) -> int:
    cfg = _load_config(args)
    n = cfg.n_grid[0] if (args.n is not None or args.config) else _DEFAULT_VERIFY_N
    sched = cfg.window(n)
    entries = condition_checker(n, sched)
    print(f"n={n} window=({sched.k1},{sched.k2}) K={sched.K} gamma={fmt_float(sched.gamma)}")
    width = max(len(e.check_id) for e in entries)
    for e in entries:
        status = "pass" if e.passed else "FLAG"
        print(f"  {e.check_id:<{width}}  {fmt_float(e.lhs):>24}  budget {fmt_float(e.rhs):>22}  {status}")
    return 0 if all(e.passed for e in entries) else 1


def _cmd_export_basis(args) -> int:
    cfg = _load_config(args)
    n = cfg.n_grid[0] if (args.n is not None or args.config) else _DEFAULT_VERIFY_N
    sched = schedule(n, cfg.k1, cfg.k2)
    k1 = args.k1 if args.k1 is not None else sched.k1
    k2 = args.k2 if args.k2 is not None else sched.k2
    manifest = export_basis(n, k1, k2, args.out, fmt=args.fmt)
    print(f"export-basis: {manifest['count']} matrices per family -> {args.out}/manifest.json")
    return 0


_HANDLERS = {
    "verify": _cmd_verify,
    "chain": _cmd_chain,
    "tvdecay": _cmd_tvdecay,
    "riskstudy": _cmd_riskstudy,
    "conditions": _cmd_conditions,
    "export-basis": _cmd_export_basis,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
