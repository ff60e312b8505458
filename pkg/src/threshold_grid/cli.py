"""Command line front end: ``python -m threshold_grid <subcommand>``.

Exit codes: 0 success, 1 verification mismatch, 2 bad arguments or input,
3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import asymptotics as asy
from .counting import f_moebius, f_naive, f_q, part1_identity_check, t_count
from .separability import DEFAULT_CAP, HARD_CAP, GridTooLarge, Labeling, count_by_enumeration, is_threshold

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _grid_side(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"grid side must be >= 2, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _cap(args) -> int:
    return HARD_CAP if args.unsafe_cap else DEFAULT_CAP


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_count(args) -> int:
    if args.q is not None:
        if args.method == "oracle":
            raise UsageError("--q cannot be combined with --method oracle")
        value = f_q(args.m, args.n, args.q, method=args.method)
        payload = {"m": args.m, "n": args.n, "q": args.q, "f_q": value}
        text = f"f_{args.q}={value}"
    elif args.method == "oracle":
        try:
            t = count_by_enumeration(args.m, args.n, cap=_cap(args), workers=args.workers)
        except GridTooLarge as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CAP
        payload = {"m": args.m, "n": args.n, "t": t, "method": "oracle"}
        text = f"t={t}"
    else:
        res = t_count(args.m, args.n, method=args.method)
        payload = {"m": args.m, "n": args.n, "f": res.f_value, "t": res.t_value, "method": res.method}
        text = f"f={res.f_value} t={res.t_value}"
    if args.format == "json":
        _emit(json.dumps(payload) + "\n", args.out)
    else:
        _emit(text + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_cells > HARD_CAP or args.max_cells > _cap(args):
        print(
            f"error: cap exceeded: --max-cells {args.max_cells} is above "
            f"{_cap(args)} (hard limit {HARD_CAP}, use --unsafe-cap for up to {HARD_CAP})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    ok = True
    print(f"{'m':>3} {'n':>3} {'oracle':>8} {'naive+2':>8} {'moebius+2':>9}  status")
    for m in range(2, args.max_cells // 2 + 1):
        for n in range(m, args.max_cells // m + 1):
            oracle = count_by_enumeration(m, n, cap=HARD_CAP, workers=args.workers)
            naive = f_naive(m, n) + 2
            fast = f_moebius(m, n) + 2
            good = oracle == naive == fast
            ok &= good
            print(f"{m:>3} {n:>3} {oracle:>8} {naive:>8} {fast:>9}  {'PASS' if good else 'FAIL'}")
    rng = random.Random(args.seed)
    eq_pairs = [(m, n) for m in range(2, 41) for n in range(2, 41)]
    eq_pairs += [(rng.randint(2, 1000), rng.randint(2, 1000)) for _ in range(20)]
    bad = [(m, n) for m, n in eq_pairs if f_naive(m, n) != f_moebius(m, n)]
    ok &= not bad
    print(f"evaluator equivalence: {len(eq_pairs)} grids  {'PASS' if not bad else 'FAIL ' + str(bad[:5])}")
    id_pairs = [(rng.randint(1, 300), rng.randint(1, 300)) for _ in range(50)]
    bad = [(m, n) for m, n in id_pairs if not part1_identity_check(m, n)]
    ok &= not bad
    print(f"part-1 identity: {len(id_pairs)} grids  {'PASS' if not bad else 'FAIL ' + str(bad[:5])}")
    print("ALL PASS" if ok else "FAILURES PRESENT")
    return EXIT_OK if ok else EXIT_MISMATCH


def _synthetic_records(spec, power: float):
    recs = []
    for m, n in asy.sweep_cells(spec):
        r = float(m * n) ** power
        recs.append(asy.ResidualRecord(m, n, 0, 0.0, r, r / (m * n * n), r / n**3, r / (m * n) ** 1.5))
    return recs


def cmd_error_study(args) -> int:
    try:
        spec = asy.SweepSpec(args.shape, args.max_n, args.min_n, args.m)
        if args.synthetic_power is not None:
            records = _synthetic_records(spec, args.synthetic_power)
        else:
            records = asy.sweep(spec, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fmt = args.format or ("csv" if args.out else "text")
    if fmt == "json":
        body = json.dumps([r.__dict__ for r in records], indent=1) + "\n"
    elif fmt == "csv":
        body = asy.records_to_csv(records)
    else:
        body = "".join(
            f"m={r.m} n={r.n} t={r.t_exact} residual={r.residual:.6g} "
            f"norm_mn2={r.norm_mn2:.6g} norm_n3={r.norm_n3:.6g} norm_conj={r.norm_conj:.6g}\n"
            for r in records
        )
    _emit(body, args.out)
    summary = (
        f"records={len(records)} "
        f"max|norm_mn2|={max(abs(r.norm_mn2) for r in records):.6g} "
        f"max|norm_n3|={max(abs(r.norm_n3) for r in records):.6g} "
        f"max|norm_conj|={max(abs(r.norm_conj) for r in records):.6g}"
    )
    try:
        fit = asy.fit_exponent(records)
        summary += f" slope={fit['slope']:.6g} r2={fit['r2']:.4g}"
    except ValueError as exc:
        summary += f" slope=n/a ({exc})"
    # keep stdout clean when it carries the data
    print(summary, file=sys.stderr if (not args.out and fmt != "text") else sys.stdout)
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        with open(args.file) as fh:
            lab = Labeling.from_text(fh.read())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    w = is_threshold(lab)
    if w is None:
        print("NOT-THRESHOLD")
    else:
        print(f"THRESHOLD a={w.a} b={w.b} c={w.c}")
    return EXIT_OK


def cmd_bench(args) -> int:
    reports, values = [], {}
    for method, fn in (("naive", f_naive), ("moebius", f_moebius)):
        start = time.perf_counter()
        for _ in range(args.reps):
            values[method] = fn(args.m, args.n)
        seconds = (time.perf_counter() - start) / args.reps
        reports.append({"method": method, "m": args.m, "n": args.n, "reps": args.reps, "seconds": seconds})
    _emit(json.dumps(reports, indent=1) + "\n", args.out)
    if values["naive"] != values["moebius"]:
        print("error: evaluators disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="threshold-grid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats):
        sp.add_argument("--format", choices=formats, default=None)
        sp.add_argument("--out", default=None, help="write output to this path")
        sp.add_argument("--workers", type=_positive, default=os.cpu_count() or 1)

    c = sub.add_parser("count", help="exact f, t or f_q for one grid")
    c.add_argument("--m", type=_grid_side, required=True)
    c.add_argument("--n", type=_grid_side, required=True)
    c.add_argument("--method", choices=("naive", "moebius", "oracle"), default="moebius")
    c.add_argument("--q", type=_positive, default=None)
    c.add_argument("--unsafe-cap", action="store_true", help=f"allow oracle grids up to {HARD_CAP} cells")
    common(c, ("text", "json"))
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="oracle vs formula on every small grid")
    v.add_argument("--max-cells", type=_positive, default=DEFAULT_CAP)
    v.add_argument("--unsafe-cap", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=_positive, default=os.cpu_count() or 1)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("error-study", help="residual sweep as CSV plus summary")
    e.add_argument("--shape", choices=asy.SHAPES, default="square")
    e.add_argument("--max-n", type=_grid_side, required=True)
    e.add_argument("--min-n", type=_grid_side, default=2)
    e.add_argument("--m", type=_grid_side, default=None, help="fixed m for --shape fixed-m")
    e.add_argument("--synthetic-power", type=float, default=None, help=argparse.SUPPRESS)
    common(e, ("text", "csv", "json"))
    e.set_defaults(func=cmd_error_study)

    k = sub.add_parser("check", help="decide one labeling file")
    k.add_argument("file")
    k.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="time naive vs Möbius evaluator")
    b.add_argument("--m", type=_grid_side, required=True)
    b.add_argument("--n", type=_grid_side, required=True)
    b.add_argument("--reps", type=_positive, default=3)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
