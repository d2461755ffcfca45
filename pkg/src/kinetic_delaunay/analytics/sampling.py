"""Random-sampling survival of shallow co-circularities."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

import numpy as np

from ..errors import PreconditionViolated
from ..kernel.motion import MovingPoint
from ..oracle import GlobalEventCensus, enumerate_all_events, inside_counts


def sample_size(n: int, k: int) -> int:
    return -(-n // k)


def exact_survival_probability(n: int, m: int, level: int) -> float:
    """Chance that a uniform ``m``-subset holds the 4 defining points and none of the ``level`` inner ones."""
    return math.comb(n - 4 - level, m - 4) / math.comb(n, m)


def enumerate_survival(n: int, m: int, quad: Sequence[int], inner: Sequence[int]) -> float:
    """The same probability by listing every ``m``-subset of ``range(n)``."""
    quad, inner = set(quad), set(inner)
    hit = total = 0
    for sample in combinations(range(n), m):
        s = set(sample)
        total += 1
        hit += quad <= s and not (inner & s)
    return hit / total


@dataclass
class SamplingReport:
    n: int
    k: int
    m: int
    trials: int
    seed: int
    events: int
    mean_frequency: float
    exact_mean: float
    standard_error: float
    per_level: dict = field(default_factory=dict)  # level -> (events, mean frequency, exact)

    @property
    def deviation(self) -> float:
        """Distance to the exact mean in standard errors."""
        if self.standard_error == 0:
            return 0.0 if self.mean_frequency == self.exact_mean else math.inf
        return abs(self.mean_frequency - self.exact_mean) / self.standard_error

    @property
    def within_three_se(self) -> bool:
        return self.deviation <= 3

    @property
    def ratio_to_k4(self) -> float:
        return self.mean_frequency * self.k ** 4

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "sample_size": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "events": self.events,
            "mean_frequency": self.mean_frequency,
            "exact_mean": self.exact_mean,
            "standard_error": self.standard_error,
            "deviation_se": self.deviation,
            "within_three_se": self.within_three_se,
            "ratio_to_inverse_k4": self.ratio_to_k4,
            "per_level": {str(j): list(v) for j, v in sorted(self.per_level.items())},
        }

    def to_lines(self) -> list[str]:
        return [json.dumps(self.to_json(), sort_keys=True)]


def clarkson_shor_experiment(
    points: Sequence[MovingPoint] | Mapping[int, MovingPoint],
    k: int,
    trials: int,
    window,
    seed: int,
    census: Optional[GlobalEventCensus] = None,
) -> SamplingReport:
    pts = dict(points) if isinstance(points, Mapping) else {x.id: x for x in points}
    n = len(pts)
    m = sample_size(n, k)
    if m < 4:
        raise PreconditionViolated(f"sample size {m} is below 4")
    if census is None:
        census = enumerate_all_events(list(pts.values()), window, max_n=max(n, 24))
    ids = sorted(pts)
    col = {i: j for j, i in enumerate(ids)}
    events = []
    for e in census.shallow(k):
        others = [i for i in ids if i not in e.quadruple]
        inner, _ = inside_counts(pts, e.quadruple, e.root, others)
        events.append(([col[i] for i in e.quadruple], [col[i] for i in inner]))

    rng = np.random.default_rng(seed)
    order = np.argsort(rng.random((trials, n)), axis=1)[:, :m]
    chosen = np.zeros((trials, n), dtype=bool)
    chosen[np.arange(trials)[:, None], order] = True

    if not events:
        return SamplingReport(n, k, m, trials, seed, 0, 0.0, 0.0, 0.0)
    survive = np.empty((trials, len(events)), dtype=bool)
    for j, (quad, inner) in enumerate(events):
        ok = chosen[:, quad].all(axis=1)
        if inner:
            ok &= ~chosen[:, inner].any(axis=1)
        survive[:, j] = ok
    per_trial = survive.mean(axis=1)
    mean = float(per_trial.mean())
    se = float(per_trial.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    exact = [exact_survival_probability(n, m, len(inner)) for _, inner in events]
    per_level = {}
    freq = survive.mean(axis=0)
    for j in sorted({len(inner) for _, inner in events}):
        cols = [i for i, (_, inner) in enumerate(events) if len(inner) == j]
        per_level[j] = (len(cols), float(freq[cols].mean()), exact_survival_probability(n, m, j))
    return SamplingReport(n, k, m, trials, seed, len(events), mean, float(np.mean(exact)), se, per_level)
