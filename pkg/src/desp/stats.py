"""
Cross-replication statistics.

Every replication contributes one snapshot per resource; metrics are then
averaged with equal weights and given a two-sided 95% Student-t confidence
interval.
"""

import math
from dataclasses import dataclass, field

from desp.errors import AggregationError, LifecycleError

__all__ = [
    "METRICS", "ResourceSnapshot", "ReplicationStats", "MetricSummary",
    "AggregateStats", "t_quantile_975", "aggregate", "StatsCollector",
]

METRICS = ("response_mean", "wait_mean", "served", "in_service", "still_waiting")

# two-sided 95% quantiles t(0.975, df) for df = 1..30
_T975 = (
    12.7062, 4.3027, 3.1824, 2.7764, 2.5706, 2.4469, 2.3646, 2.3060, 2.2622, 2.2281,
    2.2010, 2.1788, 2.1604, 2.1448, 2.1314, 2.1199, 2.1098, 2.1009, 2.0930, 2.0860,
    2.0796, 2.0739, 2.0687, 2.0639, 2.0595, 2.0555, 2.0518, 2.0484, 2.0452, 2.0423,
)
_Z975 = 1.96


def t_quantile_975(df):
    if df < 1:
        raise AggregationError(f"degrees of freedom must be >= 1, got {df}")
    if df <= len(_T975):
        return _T975[df - 1]
    return _Z975


@dataclass(frozen=True)
class ResourceSnapshot:
    response_mean: float = 0.0
    wait_mean: float = 0.0
    served: int = 0
    in_service: int = 0
    still_waiting: int = 0


@dataclass
class ReplicationStats:
    resources: dict
    end_time: float = float("nan")
    drained: bool = False


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    stddev: float
    ci_halfwidth: float
    n: int

    @property
    def ci_defined(self):
        return self.n > 1

    @property
    def ci_low(self):
        return self.mean - self.ci_halfwidth

    @property
    def ci_high(self):
        return self.mean + self.ci_halfwidth

    def covers(self, value):
        return self.ci_low <= value <= self.ci_high


@dataclass
class AggregateStats:
    metrics: dict
    n: int
    samples: list = field(default_factory=list, repr=False)
    kinds: dict = field(default_factory=dict)

    def __getitem__(self, resource):
        return self.metrics[resource]

    @property
    def resources(self):
        return list(self.metrics)

    @property
    def drained_replications(self):
        """Replications that ended with an empty scheduler before the horizon."""
        return sum(1 for s in self.samples if s.drained)

    def per_replication(self, resource, metric):
        return [getattr(s.resources[resource], metric) for s in self.samples]


def summarize(values):
    """Mean, sample standard deviation and 95% CI half-width of ``values``."""
    n = len(values)
    if n == 0:
        raise AggregationError("cannot summarize an empty sample")
    first = values[0]
    if all(v == first for v in values):
        return MetricSummary(float(first), 0.0, 0.0, n)
    # fsum is exactly rounded, so the result does not depend on sample order
    mean = math.fsum(values) / n
    stddev = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))
    half = t_quantile_975(n - 1) * stddev / math.sqrt(n)
    return MetricSummary(mean, stddev, half, n)


def aggregate(samples, kinds=None):
    if not samples:
        raise AggregationError("no replication samples to aggregate")
    names = list(samples[0].resources)
    metrics = {}
    for name in names:
        per_metric = {}
        for metric in METRICS:
            per_metric[metric] = summarize(
                [getattr(s.resources[name], metric) for s in samples])
        metrics[name] = per_metric
    return AggregateStats(metrics, len(samples), list(samples), dict(kinds or {}))


class StatsCollector:
    """Experiment / replication bookkeeping for a fixed set of resources.

    Calls must follow ``init``, then ``init_replication``/``end_replication``
    pairs, then ``finalize``.
    """

    def __init__(self, resources):
        self.resources = resources
        self.samples = []
        self._state = "new"

    def init(self):
        if self._state == "running":
            raise LifecycleError("init() called during a replication")
        self.samples = []
        self._state = "ready"

    def init_replication(self):
        if self._state != "ready":
            raise LifecycleError(f"init_replication() called in state {self._state!r}")
        for r in self.resources:
            r.reset_counters()
        self._state = "running"

    def end_replication(self, end_time=float("nan"), drained=False):
        if self._state != "running":
            raise LifecycleError(f"end_replication() called in state {self._state!r}")
        snap = {r.name: r.replication_snapshot() for r in self.resources}
        self.samples.append(ReplicationStats(snap, end_time, drained))
        self._state = "ready"

    def finalize(self):
        if self._state != "ready" or not self.samples:
            raise LifecycleError("finalize() needs at least one completed replication")
        self._state = "done"
        kinds = {r.name: ("active" if r.active else "passive") for r in self.resources}
        return aggregate(self.samples, kinds)
