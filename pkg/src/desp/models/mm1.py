"""M/M/1 queue, used to check the engine against closed-form results."""

from desp.errors import ConfigurationError
from desp.models.base import Model, require_positive

ARRIVAL, START, END = 0, 1, 2


class MM1(Model):
    """Poisson arrivals at rate ``lambda`` served by one exponential server at rate ``mu``."""

    name = "mm1"
    defaults = {"lambda": 0.05, "mu": 0.1}

    def validate(self, params):
        require_positive(params, "lambda", "mu")
        if params["lambda"] >= params["mu"]:
            raise ConfigurationError(
                f"unstable queue: lambda={params['lambda']} >= mu={params['mu']}")

    def build(self):
        self.interarrival_mean = 1.0 / self.params["lambda"]
        self.service_mean = 1.0 / self.params["mu"]
        self.server = self.add_resource("server", 1, active=True)
        self.handlers = {ARRIVAL: self.arrival, START: self.start, END: self.end}

    def arrival(self, client):
        sim = self.sim
        nxt = sim.new_client()
        sim.schedule(ARRIVAL, sim.tnow + sim.rng.exponential(self.interarrival_mean), nxt)
        self.server.p(START, client)

    def start(self, client):
        sim = self.sim
        sim.schedule(END, sim.tnow + sim.rng.exponential(self.service_mean), client)

    def end(self, client):
        self.server.v(client)
        self.sim.dispose_client(client)


def mm1_model(params=None, **kwargs):
    return MM1(params, **kwargs)


def mm1_response_time(lam, mu):
    """Mean sojourn time 1 / (mu - lambda)."""
    return 1.0 / (mu - lam)


def mm1_wait_time(lam, mu):
    """Mean time in queue rho / (mu - lambda)."""
    return (lam / mu) / (mu - lam)
