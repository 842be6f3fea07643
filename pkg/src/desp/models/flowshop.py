"""Two-machine flow shop served by a single transport robot."""

from desp.errors import ConfigurationError
from desp.models.base import Model, require_positive

(ARRIVAL, M1_START, M1_END, T1_START, T1_END,
 M2_START, M2_END, T2_START, T2_END) = range(9)


class FlowShop(Model):
    """Products visit machine 1, the robot, machine 2, then the robot again.

    Arrivals are Poisson with mean gap ``interarrival_mean``. Machine times
    are exponential, transports uniform on ``[transport_min, transport_max]``.
    Each station has capacity 1.
    """

    name = "flowshop"
    defaults = {
        "m1_mean": 10.0,
        "m2_mean": 12.0,
        "transport_min": 4.0,
        "transport_max": 6.0,
        "interarrival_mean": 300.0,
    }

    def validate(self, params):
        require_positive(params, "m1_mean", "m2_mean", "interarrival_mean")
        lo, hi = params["transport_min"], params["transport_max"]
        if not 0 <= lo <= hi:
            raise ConfigurationError(
                f"need 0 <= transport_min <= transport_max, got {lo} and {hi}")

    def build(self):
        p = self.params
        self.m1_mean = p["m1_mean"]
        self.m2_mean = p["m2_mean"]
        self.t_lo = p["transport_min"]
        self.t_hi = p["transport_max"]
        self.ia_mean = p["interarrival_mean"]
        self.machine1 = self.add_resource("machine1", 1, active=True)
        self.machine2 = self.add_resource("machine2", 1, active=True)
        self.robot = self.add_resource("robot", 1)
        self.handlers = {
            ARRIVAL: self.arrival,
            M1_START: self.m1_start,
            M1_END: self.m1_end,
            T1_START: self.t1_start,
            T1_END: self.t1_end,
            M2_START: self.m2_start,
            M2_END: self.m2_end,
            T2_START: self.t2_start,
            T2_END: self.t2_end,
        }

    def arrival(self, client):
        sim = self.sim
        sim.schedule(ARRIVAL, sim.tnow + sim.rng.exponential(self.ia_mean), sim.new_client())
        self.machine1.p(M1_START, client)

    def m1_start(self, client):
        sim = self.sim
        sim.schedule(M1_END, sim.tnow + sim.rng.exponential(self.m1_mean), client)

    def m1_end(self, client):
        self.machine1.v(client)
        self.robot.p(T1_START, client)

    def t1_start(self, client):
        sim = self.sim
        sim.schedule(T1_END, sim.tnow + sim.rng.uniform(self.t_lo, self.t_hi), client)

    def t1_end(self, client):
        self.robot.v(client)
        self.machine2.p(M2_START, client)

    def m2_start(self, client):
        sim = self.sim
        sim.schedule(M2_END, sim.tnow + sim.rng.exponential(self.m2_mean), client)

    def m2_end(self, client):
        self.machine2.v(client)
        self.robot.p(T2_START, client)

    def t2_start(self, client):
        sim = self.sim
        sim.schedule(T2_END, sim.tnow + sim.rng.uniform(self.t_lo, self.t_hi), client)

    def t2_end(self, client):
        self.robot.v(client)
        self.sim.dispose_client(client)


def flowshop_model(params=None, **kwargs):
    return FlowShop(params, **kwargs)
