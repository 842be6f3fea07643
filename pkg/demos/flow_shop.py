"""A two-machine flow shop with one transport robot.

Each product takes the robot twice, so per replication the robot serves
roughly as many transports as the two machines serve jobs combined.
With sparse arrivals the robot rarely queues and its response time sits
near the mean transport time of 5.
"""
from desp import SimulationConfig, run
from desp.models import FlowShop

stats = run(FlowShop(), SimulationConfig(tmax=50_000.0, seed=3, nreplic=200))

for name in stats.resources:
    r = stats[name]
    print(f"{name:<9} response {r['response_mean'].mean:7.3f}   served {r['served'].mean:8.2f}")

gap = [abs(s.resources["robot"].served
           - s.resources["machine1"].served - s.resources["machine2"].served)
       for s in stats.samples]
print("mean |robot - (m1 + m2)|:", sum(gap) / len(gap))

# a busier shop: the robot starts to queue
busy = run(FlowShop(interarrival_mean=15.0), SimulationConfig(tmax=5_000.0, seed=3, nreplic=50))
print("robot response at interarrival 15:", round(busy["robot"]["response_mean"].mean, 3))
