"""Small object-database pipeline: users, transaction/object/buffer managers, I/O.

Each of ``n_users`` users owns one client and loops: think, submit a
transaction touching a geometric number of objects, wait for it to finish.
Every object access takes a lookup on the processor, then a buffer check
that hits with probability ``buffer_hit_prob``; a miss goes through the I/O
subsystem to the disk while the buffer manager stays reserved.
"""

import math

from desp.errors import ConfigurationError
from desp.models.base import Model, require_positive

(INIT, SUBMIT, TXN_START, NEXT_OBJECT, OM_GRANTED, CPU_GRANTED, LOOKUP_DONE,
 BM_GRANTED, IO_GRANTED, DISK_GRANTED, IO_DONE) = range(11)


def geometric(rng, mean):
    """Geometric count on {1, 2, ...} with the given mean, by inversion."""
    if mean <= 1.0:
        return 1
    q = 1.0 - 1.0 / mean
    return 1 + int(math.log(1.0 - rng.uniform01()) / math.log(q))


class MiniOODB(Model):
    name = "minioodb"
    defaults = {
        "n_users": 5,
        "think_mean": 20.0,
        "objects_per_txn_mean": 10.0,
        "buffer_hit_prob": 0.8,
        "io_time": 1.0,
        "cpu_time": 0.05,
    }

    def validate(self, params):
        n = params["n_users"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ConfigurationError(f"n_users must be an integer >= 1, got {n!r}")
        require_positive(params, "think_mean", "io_time", "cpu_time")
        if not params["objects_per_txn_mean"] >= 1:
            raise ConfigurationError("objects_per_txn_mean must be >= 1")
        h = params["buffer_hit_prob"]
        if isinstance(h, bool) or not isinstance(h, (int, float)) or not 0.0 <= h <= 1.0:
            raise ConfigurationError(f"buffer_hit_prob must lie in [0, 1], got {h!r}")

    def build(self):
        p = self.params
        self.n_users = p["n_users"]
        self.think_mean = p["think_mean"]
        self.objects_mean = p["objects_per_txn_mean"]
        self.hit_prob = p["buffer_hit_prob"]
        self.io_time = p["io_time"]
        self.cpu_time = p["cpu_time"]
        self.transaction_manager = self.add_resource("transaction_manager", self.n_users,
                                                     active=True)
        self.object_manager = self.add_resource("object_manager", 1, active=True)
        self.buffer_manager = self.add_resource("buffer_manager", 1, active=True)
        self.io_subsystem = self.add_resource("io_subsystem", 1, active=True)
        self.processor = self.add_resource("processor", 1)
        self.disk = self.add_resource("disk", 1)
        self.handlers = {
            INIT: self.start,
            SUBMIT: self.submit,
            TXN_START: self.next_object,
            NEXT_OBJECT: self.next_object,
            OM_GRANTED: self.om_granted,
            CPU_GRANTED: self.cpu_granted,
            LOOKUP_DONE: self.lookup_done,
            BM_GRANTED: self.bm_granted,
            IO_GRANTED: self.io_granted,
            DISK_GRANTED: self.disk_granted,
            IO_DONE: self.io_done,
        }

    def start(self, client):
        sim = self.sim
        for user in range(self.n_users):
            c = client if user == 0 else sim.new_client()
            c.user = user
            c.remaining = 0
            sim.schedule(SUBMIT, sim.tnow + sim.rng.exponential(self.think_mean), c)

    def submit(self, client):
        client.remaining = geometric(self.sim.rng, self.objects_mean)
        self.transaction_manager.p(TXN_START, client)

    def next_object(self, client):
        if client.remaining == 0:
            self.transaction_manager.v(client)
            sim = self.sim
            sim.schedule(SUBMIT, sim.tnow + sim.rng.exponential(self.think_mean), client)
        else:
            self.object_manager.p(OM_GRANTED, client)

    def om_granted(self, client):
        self.processor.p(CPU_GRANTED, client)

    def cpu_granted(self, client):
        sim = self.sim
        sim.schedule(LOOKUP_DONE, sim.tnow + self.cpu_time, client)

    def lookup_done(self, client):
        self.processor.v(client)
        self.object_manager.v(client)
        self.buffer_manager.p(BM_GRANTED, client)

    def bm_granted(self, client):
        if self.sim.rng.uniform01() < self.hit_prob:
            self._object_done(client)
        else:
            self.io_subsystem.p(IO_GRANTED, client)

    def io_granted(self, client):
        self.disk.p(DISK_GRANTED, client)

    def disk_granted(self, client):
        sim = self.sim
        sim.schedule(IO_DONE, sim.tnow + self.io_time, client)

    def io_done(self, client):
        self.disk.v(client)
        self.io_subsystem.v(client)
        self._object_done(client)

    def _object_done(self, client):
        self.buffer_manager.v(client)
        client.remaining -= 1
        self.sim.schedule(NEXT_OBJECT, self.sim.tnow, client)


def minioodb_model(params=None, **kwargs):
    return MiniOODB(params, **kwargs)
