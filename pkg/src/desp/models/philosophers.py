"""Dining philosophers.

Philosopher ``i`` sits between fork ``i`` (left) and fork ``(i + 1) % n``
(right). Each philosopher owns one circulating client that loops through

    think -> reserve philosopher -> first fork -> second fork -> eat
          -> release both forks and the philosopher -> think ...

With ``ordered_forks`` false the first fork is the left one, which admits
circular wait. With it true the lower-numbered fork is taken first.
A deadlock shows up as an empty scheduler before the time horizon.
"""

from desp.errors import ConfigurationError, InvariantError
from desp.models.base import Model, require_positive

INIT, HUNGRY, FIRST_FORK, SECOND_FORK, EAT, DONE = range(6)


class Philosophers(Model):
    name = "philosophers"
    defaults = {
        "n_philosophers": 4,
        "eat_mean": 5.0,
        "think_mean": 2.0,
        "ordered_forks": False,
    }

    def validate(self, params):
        n = params["n_philosophers"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise ConfigurationError(f"n_philosophers must be an integer >= 2, got {n!r}")
        require_positive(params, "eat_mean", "think_mean")
        if not isinstance(params["ordered_forks"], bool):
            raise ConfigurationError("ordered_forks must be a boolean")

    def build(self):
        p = self.params
        n = p["n_philosophers"]
        self.n = n
        self.eat_mean = p["eat_mean"]
        self.think_mean = p["think_mean"]
        self.ordered_forks = p["ordered_forks"]
        self.philosophers = [self.add_resource(f"philosopher{i}", 1, active=True)
                             for i in range(n)]
        self.forks = [self.add_resource(f"fork{i}", 1) for i in range(n)]
        self.fork_order = []
        for i in range(n):
            left, right = i, (i + 1) % n
            if self.ordered_forks and right < left:
                left, right = right, left
            self.fork_order.append((self.forks[left], self.forks[right]))
        self.eats = 0
        self.handlers = {
            INIT: self.start,
            HUNGRY: self.hungry,
            FIRST_FORK: self.first_fork,
            SECOND_FORK: self.second_fork,
            EAT: self.eat,
            DONE: self.done,
        }

    def start(self, client):
        sim = self.sim
        rng = sim.rng
        for seat in range(self.n):
            c = client if seat == 0 else sim.new_client()
            c.seat = seat
            sim.schedule(HUNGRY, sim.tnow + rng.exponential(self.think_mean), c)

    def hungry(self, client):
        self.philosophers[client.seat].p(FIRST_FORK, client)

    def first_fork(self, client):
        self.fork_order[client.seat][0].p(SECOND_FORK, client)

    def second_fork(self, client):
        self.fork_order[client.seat][1].p(EAT, client)

    def eat(self, client):
        first, second = self.fork_order[client.seat]
        if not (first.holds(client) and second.holds(client)):
            raise InvariantError(f"philosopher {client.seat} eats without both forks")
        self.eats += 1
        sim = self.sim
        sim.schedule(DONE, sim.tnow + sim.rng.exponential(self.eat_mean), client)

    def done(self, client):
        first, second = self.fork_order[client.seat]
        second.v(client)
        first.v(client)
        self.philosophers[client.seat].v(client)
        sim = self.sim
        sim.schedule(HUNGRY, sim.tnow + sim.rng.exponential(self.think_mean), client)

    def init_replication(self):
        self.eats = 0
        super().init_replication()


def philosophers_model(params=None, **kwargs):
    return Philosophers(params, **kwargs)
