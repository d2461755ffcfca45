"""Event counts as a function of n, with a log-log slope fit."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..analytics.crossings import crossing_census
from ..errors import KineticError, PreconditionViolated
from ..kinetic.simulator import simulate
from ..oracle import worker_count
from .generate import DEFAULT_WINDOW, generate

COLUMNS = ("n", "seeds", "failed", "flips", "hull_events", "single_crossings", "double_crossings", "seconds")


@dataclass
class GrowthRow:
    n: int
    seeds: int
    failed: int
    flips: float
    hull_events: float
    single_crossings: Optional[float]
    double_crossings: Optional[float]
    seconds: float
    errors: list = field(default_factory=list)


@dataclass
class GrowthReport:
    rows: list
    kind: str
    window: tuple

    @property
    def slope(self) -> float:
        """Least-squares slope of log(flips) against log(n) over rows with positive counts."""
        pts = [(math.log(r.n), math.log(r.flips)) for r in self.rows if r.flips > 0]
        if len(pts) < 2:
            return math.nan
        x, y = zip(*pts)
        return float(np.polyfit(x, y, 1)[0])

    @property
    def monotone(self) -> bool:
        flips = [r.flips for r in self.rows]
        return all(a <= b for a, b in zip(flips, flips[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow([
                r.n, r.seeds, r.failed, f"{r.flips:.3f}", f"{r.hull_events:.3f}",
                "" if r.single_crossings is None else f"{r.single_crossings:.3f}",
                "" if r.double_crossings is None else f"{r.double_crossings:.3f}",
                f"{r.seconds:.3f}",
            ])
        w.writerow([f"# slope={self.slope:.4f}", f"kind={self.kind}", f"window={self.window[0]}..{self.window[1]}"])
        return buf.getvalue()

    def dump(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _run_one(args):
    kind, n, seed, window, crossings = args
    start = time.perf_counter()
    try:
        doc = generate(kind, n, seed, window)
        res = simulate(doc.points, window[0], window[1], jitter=True, seed=seed)
        out = {"flips": len(res.log.flips), "hull": len(res.log.hull_events)}
        if crossings:
            c = crossing_census(res.points, log=res.log)
            out["single"], out["double"] = len(c.singles), len(c.doubles)
    except KineticError as exc:
        out = {"error": f"{type(exc).__name__}: {exc}"}
    out["seconds"] = time.perf_counter() - start
    return n, seed, out


def _mean(xs):
    return sum(xs) / len(xs) if xs else 0.0


def run_growth(
    n_list: Sequence[int],
    seeds_per_n: int,
    window=DEFAULT_WINDOW,
    kind: str = "uniform",
    crossings: bool = False,
    workers: Optional[int] = None,
) -> GrowthReport:
    n_list = list(n_list)
    if n_list != sorted(n_list):
        raise PreconditionViolated("n_list must be ascending")
    window = (Fraction(window[0]), Fraction(window[1]))
    jobs = [(kind, n, s, window, crossings) for n in n_list for s in range(seeds_per_n)]
    nw = worker_count(workers)
    if nw > 1:
        with ProcessPoolExecutor(nw) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    rows = []
    for n in n_list:
        ok = [o for m, _, o in results if m == n and "error" not in o]
        bad = [o["error"] for m, _, o in results if m == n and "error" in o]
        rows.append(GrowthRow(
            n,
            seeds_per_n,
            len(bad),
            _mean([o["flips"] for o in ok]),
            _mean([o["hull"] for o in ok]),
            _mean([o["single"] for o in ok]) if crossings else None,
            _mean([o["double"] for o in ok]) if crossings else None,
            sum(o["seconds"] for m, _, o in results if m == n),
            bad,
        ))
    return GrowthReport(rows, kind, window)
