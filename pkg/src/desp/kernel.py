"""Simulation clock, future event list, client registry and the replication loop."""

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Any, NamedTuple, Optional

from desp.errors import ConfigurationError, SchedulingError, UnknownEventError
from desp.rng import GFSR

__all__ = ["SimulationConfig", "EventRecord", "Client", "Simulation", "run"]


@dataclass(frozen=True)
class SimulationConfig:
    tmax: float
    seed: int
    nreplic: int = 1
    tstart: float = 0.0

    def __post_init__(self):
        for name in ("tstart", "tmax"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or value != value or value in (
                    float("inf"), float("-inf")):
                raise ConfigurationError(f"{name} must be a finite number, got {value!r}")
        if self.tstart < 0:
            raise ConfigurationError(f"tstart must be >= 0, got {self.tstart}")
        if not self.tstart < self.tmax:
            raise ConfigurationError(
                f"tstart must be < tmax, got tstart={self.tstart}, tmax={self.tmax}")
        if isinstance(self.nreplic, bool) or not isinstance(self.nreplic, int) \
                or self.nreplic < 1:
            raise ConfigurationError(f"nreplic must be an integer >= 1, got {self.nreplic!r}")


class EventRecord(NamedTuple):
    date: float
    sequence: int
    code: int
    client: Any


class Client:
    """Passive entity moving through the resource network.

    Models attach whatever payload they need as plain attributes, either
    through ``Simulation.new_client(**payload)`` or later.
    """

    def __init__(self, id, created_at, **payload):
        self.id = id
        self.created_at = created_at
        self.__dict__.update(payload)

    def __repr__(self):
        return f"Client(id={self.id}, created_at={self.created_at})"


class Simulation:
    """One simulation run: clock, scheduler, clients and the random stream.

    ``rng`` may be any object offering the generator's distribution methods;
    tests use it to inject scripted streams.
    """

    def __init__(self, tstart=0.0, tmax=float("inf"), seed=1, rng=None):
        if not tstart < tmax:
            raise ConfigurationError(f"tstart must be < tmax, got {tstart} and {tmax}")
        self.tstart = tstart
        self.tmax = tmax
        self.seed = seed
        self.rng = rng if rng is not None else GFSR(seed)
        self.tnow = tstart
        self._heap = []
        self._seq = 0
        self._clients = {}
        self._next_client_id = 0
        self.replication = 0

    # -- scheduler -----------------------------------------------------------

    def schedule(self, code, date, client):
        if date < self.tnow:
            raise SchedulingError(
                f"event {code} scheduled at {date!r}, before the current time {self.tnow!r}")
        heappush(self._heap, (date, self._seq, code, client))
        self._seq += 1

    def next_event(self) -> Optional[EventRecord]:
        """Pop the earliest event and advance the clock to it; None when empty."""
        if not self._heap:
            return None
        rec = EventRecord(*heappop(self._heap))
        self.tnow = rec.date
        return rec

    def purge_scheduler(self):
        self._heap.clear()
        self._seq = 0

    @property
    def pending_events(self):
        return len(self._heap)

    def scheduler_empty(self):
        return not self._heap

    # -- clients -------------------------------------------------------------

    def new_client(self, **payload):
        client = Client(self._next_client_id, self.tnow, **payload)
        self._next_client_id += 1
        self._clients[client.id] = client
        return client

    def dispose_client(self, client):
        """Deregister a client that has left the system."""
        self._clients.pop(client.id, None)

    def purge_client_list(self):
        self._clients.clear()
        self._next_client_id = 0

    @property
    def clients(self):
        return self._clients

    # -- run loop ------------------------------------------------------------

    def _engine(self, handlers):
        heap = self._heap
        tmax = self.tmax
        while heap:
            rec = heappop(heap)
            date = rec[0]
            if date >= tmax:
                heappush(heap, rec)
                self.tnow = tmax
                return False
            self.tnow = date
            try:
                handler = handlers[rec[2]]
            except KeyError:
                raise UnknownEventError(rec[2], date) from None
            handler(rec[3])
        return True

    def run(self, model, nreplic=1):
        """Run ``nreplic`` replications of ``model`` and return its aggregate statistics."""
        if isinstance(nreplic, bool) or not isinstance(nreplic, int) or nreplic < 1:
            raise ConfigurationError(f"nreplic must be an integer >= 1, got {nreplic!r}")
        model.attach(self)
        model.init()
        for i in range(nreplic):
            self.replication = i
            self.tnow = self.tstart
            self.purge_scheduler()
            model.init_replication()
            client = self.new_client()
            model.execute(0, client)
            drained = self._engine(model.handlers)
            model.end_replication(end_time=self.tnow, drained=drained and self.tnow < self.tmax)
            self.purge_client_list()
        return model.finalize()


def run(model, config, rng=None):
    """Run ``model`` under ``config``; ``rng`` overrides the seeded generator."""
    sim = Simulation(config.tstart, config.tmax, config.seed, rng=rng)
    return sim.run(model, config.nreplic)
