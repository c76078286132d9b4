"""Command-line front end: construct | verify | simulate | sweep.

Exit codes: 0 pass, 1 verification failure, 2 unsupported parameters, 3 I/O or
malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .basecode import BaseCode
from .channel import ErasurePattern
from .embedding import ParameterError, PlacementSet, StreamParams, reach, zero_forced_slots
from .simulate import default_horizon, run_custom_pattern, run_ge_patterns, run_window_patterns
from .verifier import (
    Regime,
    UnsupportedRegime,
    build_streaming_code,
    classify_regime,
    verify_streaming,
)

EXIT_OK, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_IO = 0, 1, 2, 3

SWEEP_COLUMNS = ["a", "b", "tau", "regime", "n", "k", "rate", "fieldSize", "verified", "wallTimeMs"]


@dataclass
class SweepRow:
    a: int
    b: int
    tau: int
    regime: str
    n: int | None
    k: int | None
    rate: str | None
    fieldSize: int | None
    verified: bool
    wallTimeMs: float


def sweep_row(a: int, b: int, tau: int, verify: bool = True, timing: bool = True) -> SweepRow:
    start = time.perf_counter()
    regime = classify_regime(a, b, tau)
    if regime is Regime.UNSUPPORTED:
        return SweepRow(a, b, tau, regime.value, None, None, None, None, False, 0.0)
    sc = build_streaming_code(a, b, tau)
    ok = verify_streaming(sc.code, sc.placement, StreamParams(a, b, tau)).passed if verify else False
    ms = round((time.perf_counter() - start) * 1000, 3) if timing else 0.0
    rate = sc.code.rate
    return SweepRow(a, b, tau, regime.value, sc.code.n, sc.code.k, f"{rate.numerator}/{rate.denominator}",
                    sc.field_size, ok, ms)


def _sweep_task(args):
    return sweep_row(*args)


def sweep(tau_max: int, verify: bool = True, timing: bool = True, workers: int | None = None) -> list[SweepRow]:
    """One row per a <= b <= tau <= tau_max, ordered by (tau, b, a)."""
    tasks = [(a, b, tau, verify, timing) for tau in range(1, tau_max + 1)
             for b in range(1, tau + 1) for a in range(1, b + 1)]
    if workers is None:
        workers = _threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_sweep_task, tasks, chunksize=8))
    return [_sweep_task(t) for t in tasks]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("STREAMCODE_THREADS", "1")))
    except ValueError:
        return 1


def format_rows(rows: list[SweepRow], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([asdict(r) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        w.writerow({k: ("" if v is None else str(v).lower() if isinstance(v, bool) else v) for k, v in d.items()})
    return buf.getvalue()


def _params(args) -> StreamParams:
    return StreamParams(args.a, args.b, args.tau)


def _build(args):
    try:
        return build_streaming_code(args.a, args.b, args.tau, getattr(args, "force_regime", None))
    except UnsupportedRegime as exc:
        print(exc, file=sys.stderr)
        raise SystemExit(EXIT_UNSUPPORTED)


def cmd_construct(args) -> int:
    sc = _build(args)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "code.json").write_text(json.dumps(sc.code.to_json(), indent=1) + "\n")
        (out / "placement.json").write_text(json.dumps(sc.placement.to_json()) + "\n")
        (out / "H.txt").write_text(
            f"# (a={args.a}, b={args.b}, tau={args.tau}) regime={sc.regime.value} "
            f"[n={sc.code.n}, k={sc.code.k}] over GF({sc.field_size})\n"
            f"# S = {list(sc.placement.S)}  N = {sc.placement.N}\n" + sc.code.H.pretty() + "\n"
        )
    except OSError as exc:
        print(f"cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    tau = args.tau
    print(f"regime     {sc.regime.value}")
    print(f"n, k       {sc.code.n}, {sc.code.k}")
    print(f"rate       {sc.code.rate}")
    print(f"field      GF({sc.field_size})")
    print(f"S          {list(sc.placement.S)}")
    print(f"N          {sc.placement.N}")
    print(f"r_i        {[reach(sc.placement, i, tau) for i in range(sc.code.n)]}")
    print(f"wrote      {out / 'code.json'}, {out / 'placement.json'}, {out / 'H.txt'}")
    return EXIT_OK


def _load_pair(args):
    try:
        code = BaseCode.from_json(json.loads(Path(args.code).read_text()))
        ps = PlacementSet.from_json(json.loads(Path(args.placement).read_text()))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    if ps.n != code.n:
        print(f"malformed input: placement has {ps.n} coordinates, code has n = {code.n}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    return code, ps


def cmd_verify(args) -> int:
    p = _params(args)
    if args.code or args.placement:
        if not (args.code and args.placement):
            print("--code and --placement must be given together", file=sys.stderr)
            return EXIT_IO
        code, ps = _load_pair(args)
    else:
        sc = _build(args)
        code, ps = sc.code, sc.placement
    report = verify_streaming(code, ps, p, args.exhaustive_burst)
    if args.json:
        print(json.dumps(report.to_json(), indent=1))
    else:
        print(f"{'PASS' if report.passed else 'FAIL'} (a={p.a}, b={p.b}, tau={p.tau}) "
              f"[n={code.n}, k={code.k}] {report.checked} erasure sets checked")
        for v in report.violations[:args.max_witnesses]:
            extra = f" offsets={list(v.offsets)}" if v.kind == "burst" else ""
            print(f"  {v.kind:6s} i={v.i} erased={list(v.erased)}{extra}")
        if len(report.violations) > args.max_witnesses:
            print(f"  ... {len(report.violations) - args.max_witnesses} more")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_simulate(args) -> int:
    sc = _build(args)
    p = _params(args)
    horizon = args.horizon or default_horizon(sc.placement, p)
    rejected = None
    ge = args.ge
    mode = args.pattern
    if ge:
        mode = "ge"
    if mode == "exhaustive":
        summary = run_window_patterns(sc.code, sc.placement, p, horizon, args.seed)
    elif mode == "ge":
        try:
            p01, p10, loss, seed = (ge or "0.05,0.5,1.0,0").split(",")
            probs = (float(p01), float(p10), float(loss))
            seed = int(seed)
        except ValueError:
            print(f"--ge expects p01,p10,loss,seed; got {ge!r}", file=sys.stderr)
            return EXIT_IO
        summary, rejected = run_ge_patterns(sc.code, sc.placement, p, probs, args.trials, horizon, seed)
    else:
        try:
            e = ErasurePattern.from_json(json.loads(Path(mode).read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            print(f"malformed pattern file: {exc}", file=sys.stderr)
            return EXIT_IO
        summary = run_custom_pattern(sc.code, sc.placement, p, e, args.seed)
        horizon = e.horizon

    forced = zero_forced_slots(sc.placement, sc.code.k, horizon)
    if args.json:
        out = summary.to_json()
        out.update({"a": p.a, "b": p.b, "tau": p.tau, "horizon": horizon, "mode": "ge" if ge else mode,
                    "zeroForcedSlots": [list(x) for x in forced]})
        if rejected is not None:
            out["rejectedInadmissible"] = rejected
        print(json.dumps(out, indent=1))
        return EXIT_OK
    print(f"(a={p.a}, b={p.b}, tau={p.tau}) {sc.regime.value} [n={sc.code.n}, k={sc.code.k}] "
          f"GF({sc.field_size}) horizon={horizon}")
    print(f"{'patterns':>10} {'failures':>9} {'worst delay':>12} {'wrong':>6} {'late':>5}")
    worst = "-" if summary.worst_delay is None else summary.worst_delay
    print(f"{summary.patterns:>10} {summary.failures:>9} {worst:>12} {summary.wrong_symbols:>6} "
          f"{summary.late_consults:>5}")
    if rejected is not None:
        print(f"rejected {rejected} inadmissible GE traces")
    print(f"zero-forced message slots (t, i): {len(forced)} -> {forced}")
    for o in summary.failed[:5]:
        print(f"  failed pattern {sorted(o.pattern.erased)}: misses {sorted(o.report.failures)[:8]}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = sweep(args.tau_max, verify=not args.skip_verify, timing=not args.no_timing)
    text = format_rows(rows, args.format)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    bad = [r for r in rows if r.regime != Regime.UNSUPPORTED.value and not r.verified and not args.skip_verify]
    return EXIT_FAIL if bad else EXIT_OK


def _add_abt(sp, optional=False):
    nargs = "?" if optional else None
    sp.add_argument("a", type=int, nargs=nargs)
    sp.add_argument("b", type=int, nargs=nargs)
    sp.add_argument("tau", type=int, nargs=nargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build the code for (a, b, tau) and write JSON + H dump")
    _add_abt(sp)
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--force-regime", choices=[r.value for r in Regime if r is not Regime.UNSUPPORTED])
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="certify a code against the (a, b, tau) recovery conditions")
    _add_abt(sp)
    sp.add_argument("--code", help="BaseCode JSON (default: build from a, b, tau)")
    sp.add_argument("--placement", help="PlacementSet JSON")
    sp.add_argument("--force-regime", choices=[r.value for r in Regime if r is not Regime.UNSUPPORTED])
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exhaustive-burst", dest="exhaustive_burst", action="store_true", default=None,
                   help="test every burst subset (default for tau <= 8)")
    g.add_argument("--maximal-burst", dest="exhaustive_burst", action="store_false",
                   help="test maximal bursts only")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--max-witnesses", type=int, default=20)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="encode, erase, decode and report delays")
    _add_abt(sp)
    sp.add_argument("--pattern", default="exhaustive",
                    help="'exhaustive' (every single-window pattern), 'ge', or a pattern JSON file")
    sp.add_argument("--ge", help="p01,p10,loss,seed for Gilbert-Elliott sampling (implies --pattern ge)")
    sp.add_argument("--trials", type=int, default=100, help="GE traces to draw")
    sp.add_argument("--horizon", type=int, help="number of time slots (default 3(tau+1)+N)")
    sp.add_argument("--seed", type=int, default=0, help="message RNG seed")
    sp.add_argument("--force-regime", choices=[r.value for r in Regime if r is not Regime.UNSUPPORTED])
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="classify and verify every a <= b <= tau <= tau-max")
    sp.add_argument("--tau-max", type=int, default=10)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--skip-verify", action="store_true")
    sp.add_argument("--no-timing", action="store_true", help="emit wallTimeMs = 0 for byte-stable output")
    sp.add_argument("--output", help="write to file instead of stdout")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.tau is None:
        parser.error("verify needs a b tau")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
