"""Capacity-limited resources with P (reserve) and V (release)."""

from heapq import heappop, heappush

from desp.errors import ConfigurationError, ResourceError
from desp.stats import ResourceSnapshot

__all__ = ["Resource"]


class Resource:
    """A named server able to hold ``capacity`` clients at once.

    ``p`` either grants a slot immediately (scheduling the requested event at
    the current time) or parks the request in a wait queue ordered by
    priority, higher first, FIFO among equals. ``v`` frees a slot and hands
    it straight to the head of the queue.

    Active resources are ordinary resources whose model also defines event
    handlers for them; the ``active`` flag only affects reporting.

    Per-replication counters live directly on the instance: ``requests``,
    ``grants``, ``releases``, ``wait_time_sum`` (grant - request),
    ``response_time_sum`` (release - request) and ``service_time_sum``
    (release - grant).
    """

    def __init__(self, name, capacity=1, sim=None, active=False):
        if isinstance(capacity, bool) or not isinstance(capacity, int) or capacity < 1:
            raise ConfigurationError(f"capacity of {name!r} must be an integer >= 1")
        self.name = name
        self.capacity = capacity
        self.active = active
        self.sim = sim
        self.reset_counters()

    def reset_counters(self):
        self.ccapacity = self.capacity
        self.requests = 0
        self.grants = 0
        self.releases = 0
        self.wait_time_sum = 0.0
        self.response_time_sum = 0.0
        self.service_time_sum = 0.0
        # client id -> (request time, grant time), in grant order
        self.in_flight = {}
        self._queue = []
        self._qseq = 0

    def purge_queue(self):
        self._queue = []

    @property
    def in_service(self):
        return self.capacity - self.ccapacity

    @property
    def queue_length(self):
        return len(self._queue)

    def queued(self):
        """Waiting entries as ``(code, client, priority, enqueued_at)`` in service order."""
        return [(code, client, -negp, t) for negp, _, code, client, t in sorted(self._queue)]

    def holds(self, client):
        return client.id in self.in_flight

    def p(self, code, client, priority=1):
        """Request a slot for ``client``; event ``code`` fires once it is granted."""
        sim = self.sim
        now = sim.tnow
        self.requests += 1
        if self.ccapacity > 0:
            if client.id in self.in_flight:
                raise ResourceError(f"client {client.id} already holds {self.name!r}")
            self.ccapacity -= 1
            self.grants += 1
            self.in_flight[client.id] = (now, now)
            sim.schedule(code, now, client)
        else:
            heappush(self._queue, (-priority, self._qseq, code, client, now))
            self._qseq += 1

    def v(self, client=None):
        """Release the slot held by ``client`` (the earliest-granted holder if None)."""
        if self.ccapacity >= self.capacity:
            raise ResourceError(f"V() on {self.name!r} with no client in service")
        in_flight = self.in_flight
        if client is None:
            key = next(iter(in_flight))
        else:
            key = client.id
            if key not in in_flight:
                raise ResourceError(f"client {key} releases {self.name!r} without holding it")
        sim = self.sim
        now = sim.tnow
        requested, granted = in_flight.pop(key)
        self.releases += 1
        self.response_time_sum += now - requested
        self.service_time_sum += now - granted
        if self._queue:
            _, _, code, waiting, requested = heappop(self._queue)
            if waiting.id in in_flight:
                raise ResourceError(f"client {waiting.id} already holds {self.name!r}")
            self.grants += 1
            self.wait_time_sum += now - requested
            in_flight[waiting.id] = (requested, now)
            sim.schedule(code, now, waiting)
        else:
            self.ccapacity += 1

    def replication_snapshot(self):
        return ResourceSnapshot(
            response_mean=self.response_time_sum / self.releases if self.releases else 0.0,
            wait_mean=self.wait_time_sum / self.grants if self.grants else 0.0,
            served=self.releases,
            in_service=self.capacity - self.ccapacity,
            still_waiting=len(self._queue),
        )

    def __repr__(self):
        return (f"Resource({self.name!r}, capacity={self.capacity}, "
                f"in_service={self.in_service}, waiting={len(self._queue)})")
