import math

import pytest

from desp.errors import ConfigurationError
from desp.kernel import Simulation, SimulationConfig, run
from desp.models import (MM1, MODELS, FlowShop, MiniOODB, Philosophers, make_model,
                         mm1_response_time, mm1_wait_time)
from desp.models.minioodb import geometric
from desp.rng import seed
from conftest import ConstantStream


def _within_ci(summary, value, slack=0.0):
    return summary.ci_low - slack <= value <= summary.ci_high + slack


# -- generic ---------------------------------------------------------------

@pytest.mark.parametrize("name,tmax", [("flowshop", 2000.0), ("philosophers", 100.0),
                                       ("mm1", 1000.0), ("minioodb", 100.0)])
def test_defaults_run_without_unknown_events(name, tmax):
    stats = run(make_model(name), SimulationConfig(tmax=tmax, seed=13, nreplic=1000))
    assert stats.n == 1000


def test_unknown_model_and_param():
    with pytest.raises(ConfigurationError, match="known models"):
        make_model("nosuch")
    with pytest.raises(ConfigurationError, match="unknown parameter"):
        make_model("mm1", {"rho": 0.5})
    with pytest.raises(ConfigurationError):
        make_model("mm1", {"lambda": "fast"})


def test_string_params_are_parsed():
    m = make_model("philosophers", {"n_philosophers": "5", "ordered_forks": "true"})
    assert m.params["n_philosophers"] == 5 and m.params["ordered_forks"] is True


# -- flow shop -------------------------------------------------------------

def test_flowshop_structure():
    stats = run(FlowShop(), SimulationConfig(tmax=20000.0, seed=3, nreplic=200))
    robot = stats["robot"]["response_mean"]
    assert 4.85 <= robot.mean <= 5.15
    for s in stats.samples:
        m1, m2, rb = (s.resources[k] for k in ("machine1", "machine2", "robot"))
        assert m2.served <= m1.served
        in_flight = sum(r.in_service + r.still_waiting for r in (m1, m2, rb))
        assert abs(rb.served - (m1.served + m2.served)) <= in_flight + 2


def test_flowshop_machine1_alone_is_mm1():
    model = FlowShop(interarrival_mean=20.0, m1_mean=10.0, m2_mean=1e-6,
                     transport_min=0.0, transport_max=0.0)
    stats = run(model, SimulationConfig(tmax=20000.0, seed=21, nreplic=60))
    expected = mm1_response_time(1 / 20.0, 1 / 10.0)
    resp = stats["machine1"]["response_mean"]
    assert abs(resp.mean - expected) / expected < 0.05
    assert _within_ci(resp, expected, slack=resp.ci_halfwidth)


@pytest.mark.parametrize("bad", [dict(m1_mean=0), dict(transport_min=7.0),
                                 dict(transport_min=-1.0, transport_max=0.0),
                                 dict(interarrival_mean=-3)])
def test_flowshop_bad_params(bad):
    with pytest.raises(ConfigurationError):
        FlowShop(**bad)


# -- philosophers ----------------------------------------------------------

def test_naive_philosophers_can_deadlock():
    sim = Simulation(0.0, 200.0, seed=1, rng=ConstantStream(2**30))
    stats = sim.run(Philosophers(), 1)
    assert stats.drained_replications == 1
    snap = stats.samples[0].resources
    assert all(snap[f"fork{i}"].in_service == 1 for i in range(4))
    assert all(snap[f"fork{i}"].still_waiting == 1 for i in range(4))


def test_ordered_philosophers_survive_simultaneous_requests():
    sim = Simulation(0.0, 200.0, seed=1, rng=ConstantStream(2**30))
    stats = sim.run(Philosophers(ordered_forks=True), 1)
    assert stats.drained_replications == 0


def test_two_ordered_philosophers_never_deadlock():
    stats = run(Philosophers(n_philosophers=2, ordered_forks=True),
                SimulationConfig(tmax=200.0, seed=8, nreplic=1000))
    assert stats.drained_replications == 0


def test_fork_grants_per_eat():
    model = Philosophers(ordered_forks=True)
    run(model, SimulationConfig(tmax=500.0, seed=4))
    grants = sum(f.grants for f in model.forks)
    one_fork = sum(1 for seat, (a, b) in enumerate(model.fork_order)
                   if sum(f.in_flight.get(seat) is not None for f in (a, b)) == 1)
    assert model.eats > 0
    assert grants == 2 * model.eats + one_fork


def test_fork_response_exceeds_eating_time():
    stats = run(Philosophers(ordered_forks=True), SimulationConfig(tmax=200.0, seed=6, nreplic=200))
    forks = [stats[f"fork{i}"]["response_mean"].mean for i in range(4)]
    assert sum(forks) / 4 > 5.0


@pytest.mark.parametrize("bad", [dict(n_philosophers=1), dict(eat_mean=0),
                                 dict(ordered_forks="maybe")])
def test_philosophers_bad_params(bad):
    with pytest.raises(ConfigurationError):
        Philosophers(**bad)


# -- M/M/1 -----------------------------------------------------------------

class _MM1Busy(MM1):
    def build(self):
        super().build()
        self.busy = []

    def end_replication(self, end_time=float("nan"), drained=False):
        # busy time = completed service + elapsed part of the one in progress
        busy = self.server.service_time_sum
        for _, granted in self.server.in_flight.values():
            busy += end_time - granted
        self.busy.append(busy / (end_time - self.sim.tstart))
        super().end_replication(end_time, drained)


def test_mm1_response_wait_and_utilization():
    model = _MM1Busy()
    stats = run(model, SimulationConfig(tmax=10000.0, seed=17, nreplic=100))
    resp = stats["server"]["response_mean"]
    wait = stats["server"]["wait_mean"]
    for summary, expected in ((resp, mm1_response_time(0.05, 0.1)),
                              (wait, mm1_wait_time(0.05, 0.1))):
        assert abs(summary.mean - expected) <= 3 * summary.stddev / math.sqrt(summary.n)
    n = len(model.busy)
    mean = sum(model.busy) / n
    sd = math.sqrt(sum((b - mean) ** 2 for b in model.busy) / (n - 1))
    assert abs(mean - 0.5) <= 3 * sd / math.sqrt(n)


def test_mm1_light_load_limit():
    stats = run(MM1({"lambda": 1e-4, "mu": 0.1}), SimulationConfig(tmax=2e6, seed=2, nreplic=5))
    assert stats["server"]["response_mean"].mean == pytest.approx(10.0, rel=0.05)
    assert stats["server"]["wait_mean"].mean < 0.05


@pytest.mark.parametrize("lam,mu", [(0.2, 0.1), (0.1, 0.1), (0.0, 0.1), (0.05, -1)])
def test_mm1_unstable_or_invalid(lam, mu):
    with pytest.raises(ConfigurationError):
        MM1({"lambda": lam, "mu": mu})


def test_analytic_helpers():
    assert mm1_response_time(0.05, 0.1) == pytest.approx(20.0)
    assert mm1_wait_time(0.05, 0.1) == pytest.approx(10.0)


# -- mini OODB -------------------------------------------------------------

_OODB_CFG = SimulationConfig(tmax=1000.0, seed=12, nreplic=30)


def test_oodb_all_hits_no_io():
    stats = run(MiniOODB(buffer_hit_prob=1.0), _OODB_CFG)
    assert all(v == 0 for v in stats.per_replication("disk", "served"))


def test_oodb_all_misses_every_access_reads_disk():
    stats = run(MiniOODB(buffer_hit_prob=0.0), _OODB_CFG)
    assert stats.per_replication("disk", "served") == \
        stats.per_replication("buffer_manager", "served")


def test_oodb_miss_ratio_binomial():
    stats = run(MiniOODB(buffer_hit_prob=0.7), _OODB_CFG)
    disk = sum(stats.per_replication("disk", "served"))
    accesses = sum(stats.per_replication("buffer_manager", "served"))
    sigma = math.sqrt(0.3 * 0.7 / accesses)
    assert abs(disk / accesses - 0.3) <= 3 * sigma


def test_oodb_objects_per_transaction():
    stats = run(MiniOODB(objects_per_txn_mean=8.0), SimulationConfig(tmax=3000.0, seed=5,
                                                                        nreplic=20))
    txns = sum(stats.per_replication("transaction_manager", "served"))
    accesses = sum(stats.per_replication("buffer_manager", "served"))
    # geometric(mean 8) has sd sqrt(56); allow 4 standard errors plus in-flight work
    tol = 4 * math.sqrt(56.0 / txns) * 8.0 + 20 * 5 * 8.0 / txns
    assert abs(accesses / txns - 8.0) <= tol


def test_geometric_mean():
    g = seed(3)
    draws = [geometric(g, 10.0) for _ in range(200000)]
    assert min(draws) == 1
    assert abs(sum(draws) / len(draws) - 10.0) < 4 * math.sqrt(90.0 / len(draws))
    assert geometric(g, 1.0) == 1


@pytest.mark.parametrize("bad", [dict(buffer_hit_prob=1.5), dict(buffer_hit_prob=-0.1),
                                 dict(n_users=0), dict(objects_per_txn_mean=0.5)])
def test_oodb_bad_params(bad):
    with pytest.raises(ConfigurationError):
        MiniOODB(**bad)


def test_registry_complete():
    assert set(MODELS) == {"flowshop", "philosophers", "mm1", "minioodb"}
