"""Resource-view discrete-event random simulation."""

from desp.errors import (ConfigurationError, DespError, InvariantError, LifecycleError,
                         ModelError, ResourceError, SchedulingError, UnknownEventError)
from desp.kernel import Client, EventRecord, Simulation, SimulationConfig, run
from desp.resource import Resource
from desp.rng import GFSR, GfsrState
from desp.stats import AggregateStats, MetricSummary, ReplicationStats, aggregate

__version__ = "0.1.0"
