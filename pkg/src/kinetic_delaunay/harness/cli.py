"""Command line entry point ``kdt``.

Every subcommand exits with status 0 only when the invariants it checks hold;
status 1 signals a failed check or a library error, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..analytics.crossings import crossing_census
from ..analytics.lemmas import verify_crossing_lemmas, verify_double_crossings
from ..analytics.redblue import redblue_theorem_check
from ..analytics.sampling import clarkson_shor_experiment
from ..errors import KineticError
from ..kernel.catalog import RootCatalog
from ..kinetic import simulate, static_delaunay
from ..oracle import compare_with_log, enumerate_all_events
from .generate import KINDS, generate
from .growth import run_growth
from .instance import InstanceDocument


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


def _n_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {s!r}") from exc


def _write_lines(path, lines) -> None:
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _status(ok: bool, message: str) -> int:
    print(("ok: " if ok else "FAILED: ") + message, file=sys.stderr)
    return 0 if ok else 1


def cmd_gen(args) -> int:
    doc = generate(args.kind, args.n, args.seed, (args.t0, args.t1))
    if args.out in (None, "-"):
        sys.stdout.write(doc.to_text())
    else:
        doc.dump(args.out)
    return 0


def cmd_simulate(args) -> int:
    doc = InstanceDocument.load(args.instance)
    t0 = doc.window[0] if args.t0 is None else args.t0
    t1 = doc.window[1] if args.t1 is None else args.t1
    res = simulate(doc.points, t0, t1, jitter=args.jitter)
    _write_lines(args.log, res.log.to_lines())
    same = res.triangulation.triangles() == static_delaunay(res.points, t1)
    return _status(same, f"{len(res.log.flips)} flips, {len(res.log.hull_events)} hull events; end state matches static build: {same}")


def cmd_oracle(args) -> int:
    doc = InstanceDocument.load(args.instance)
    window = tuple(args.window) if args.window else doc.window
    census = enumerate_all_events(doc.points, window, max_n=args.max_n)
    _write_lines(args.out, census.to_lines())
    agreement = compare_with_log(census, simulate(doc.points, window[0], window[1]).log)
    for line in agreement.mismatches:
        print(line, file=sys.stderr)
    return _status(agreement.ok, f"{len(census.cocircularities)} co-circularities, {len(census.collinearities)} collinearities; simulator agrees: {agreement.ok}")


def _crossings(doc):
    pts = doc.point_map()
    catalog = RootCatalog(pts)
    log = simulate(doc.points, doc.window[0], doc.window[1]).log
    return pts, catalog, log, crossing_census(pts, log=log, catalog=catalog)


def cmd_crossings(args) -> int:
    doc = InstanceDocument.load(args.instance)
    _, _, _, census = _crossings(doc)
    _write_lines(args.out, census.to_lines())
    return _status(True, f"{len(census.singles)} single, {len(census.doubles)} double, {len(census.degenerate)} degenerate crossings")


def cmd_lemmas(args) -> int:
    doc = InstanceDocument.load(args.instance)
    pts, catalog, log, census = _crossings(doc)
    report = verify_crossing_lemmas(census.crossings, None, pts, log=log, catalog=catalog)
    doubles = verify_double_crossings(census.crossings, pts, catalog)
    lines = report.to_lines()
    lines.append(json.dumps(dict(doubles.to_json(), record="double"), sort_keys=True))
    _write_lines(args.report, lines)
    ok = report.passed and doubles.passed
    return _status(ok, f"{len(census.crossings)} crossings checked; all lemmas hold: {ok}")


def cmd_redblue(args) -> int:
    doc = InstanceDocument.load(args.instance)
    report = redblue_theorem_check(tuple(args.edge), tuple(args.interval), args.k, doc.point_map(), args.threshold)
    _write_lines(args.out, report.to_lines())
    return _status(report.holds, f"conditions (i)={report.condition_i} (ii)={report.condition_ii} (iii)={report.condition_iii}")


def cmd_cs(args) -> int:
    doc = InstanceDocument.load(args.instance)
    report = clarkson_shor_experiment(doc.point_map(), args.k, args.trials, doc.window, args.seed)
    _write_lines(args.out, report.to_lines())
    return _status(report.within_three_se, f"mean survival {report.mean_frequency:.5f} vs exact {report.exact_mean:.5f} ({report.deviation:.2f} SE)")


def cmd_growth(args) -> int:
    report = run_growth(args.n, args.seeds, (args.t0, args.t1), args.kind, args.crossings)
    if args.out in (None, "-"):
        sys.stdout.write(report.to_csv())
    else:
        report.dump(args.out)
    failed = sum(r.failed for r in report.rows)
    for r in report.rows:
        for e in r.errors:
            print(f"n={r.n}: {e}", file=sys.stderr)
    return _status(failed == 0, f"slope {report.slope:.3f}; monotone: {report.monotone}; failed runs: {failed}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kdt", description="Kinetic Delaunay triangulation experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance document")
    g.add_argument("--kind", choices=KINDS, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--t0", type=_rational, default=Fraction(0))
    g.add_argument("--t1", type=_rational, default=Fraction(10))
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("simulate", help="run the kinetic simulation and write its event log")
    s.add_argument("--instance", required=True)
    s.add_argument("--t0", type=_rational)
    s.add_argument("--t1", type=_rational)
    s.add_argument("--log")
    s.add_argument("--jitter", action="store_true")
    s.set_defaults(func=cmd_simulate)

    o = sub.add_parser("oracle", help="brute-force event census, cross-checked against the simulator")
    o.add_argument("--instance", required=True)
    o.add_argument("--window", type=_rational, nargs=2)
    o.add_argument("--out")
    o.add_argument("--max-n", type=int, default=24)
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("crossings", help="detect Delaunay crossings")
    c.add_argument("--instance", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_crossings)

    lm = sub.add_parser("lemmas", help="verify the structural properties of crossings")
    lm.add_argument("--instance", required=True)
    lm.add_argument("--report")
    lm.set_defaults(func=cmd_lemmas)

    rb = sub.add_parser("redblue", help="check the red-blue trichotomy for one edge and interval")
    rb.add_argument("--instance", required=True)
    rb.add_argument("--edge", type=int, nargs=2, required=True)
    rb.add_argument("--interval", type=_rational, nargs=2, required=True)
    rb.add_argument("--k", type=int, default=13)
    rb.add_argument("--threshold", type=int)
    rb.add_argument("--out")
    rb.set_defaults(func=cmd_redblue)

    cs = sub.add_parser("cs", help="random-sampling survival experiment")
    cs.add_argument("--instance", required=True)
    cs.add_argument("--k", type=int, required=True)
    cs.add_argument("--trials", type=int, default=10 ** 4)
    cs.add_argument("--seed", type=int, default=0)
    cs.add_argument("--out")
    cs.set_defaults(func=cmd_cs)

    gr = sub.add_parser("growth", help="event counts against n")
    gr.add_argument("--n", type=_n_list, required=True)
    gr.add_argument("--seeds", type=int, default=5)
    gr.add_argument("--kind", choices=KINDS, default="uniform")
    gr.add_argument("--t0", type=_rational, default=Fraction(0))
    gr.add_argument("--t1", type=_rational, default=Fraction(10))
    gr.add_argument("--crossings", action="store_true")
    gr.add_argument("--out")
    gr.set_defaults(func=cmd_growth)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KineticError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
