"""Dining philosophers and deadlock detection.

A deadlock leaves every client blocked on a resource, so the scheduler
empties before the horizon. The kernel flags such replications as drained.

With continuous think and eat times two philosophers almost never become
hungry at the same instant, and a philosopher grabs both forks in the
same time step. So the naive protocol essentially never deadlocks on its
own. Forcing every draw to the same value makes all four philosophers
hungry at once, and then each holds its left fork and waits for the right.
"""
from desp import GFSR, SimulationConfig, run
from desp.models import Philosophers


class Lockstep(GFSR):
    """Every uniform draw is 0.5, so all timings coincide."""

    def uniform01(self):
        return 0.5


cfg = SimulationConfig(tmax=200.0, seed=1, nreplic=200)
for ordered in (False, True):
    stats = run(Philosophers(ordered_forks=ordered), cfg)
    print(f"ordered_forks={ordered!s:<5}  drained {stats.drained_replications}/{stats.n}"
          f"  fork0 response {stats['fork0']['response_mean'].mean:.2f}")

for ordered in (False, True):
    stats = run(Philosophers(ordered_forks=ordered),
                SimulationConfig(tmax=200.0, seed=1, nreplic=1), rng=Lockstep(1))
    print(f"lockstep ordered_forks={ordered!s:<5} drained {stats.drained_replications}")
