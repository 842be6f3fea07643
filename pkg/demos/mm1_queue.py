"""An M/M/1 queue checked against its closed form.

With arrival rate lambda and service rate mu the mean response time is
1 / (mu - lambda). Here lambda = 0.05 and mu = 0.1, so the answer is 20.
"""
from desp import SimulationConfig, run
from desp.models import MM1, mm1_response_time, mm1_wait_time

model = MM1({"lambda": 0.05, "mu": 0.1})
stats = run(model, SimulationConfig(tmax=10_000.0, seed=1, nreplic=100))

resp = stats["server"]["response_mean"]
wait = stats["server"]["wait_mean"]
print(f"response {resp.mean:.3f}  95% CI [{resp.ci_low:.3f}, {resp.ci_high:.3f}]"
      f"  theory {mm1_response_time(0.05, 0.1):.3f}")
print(f"wait     {wait.mean:.3f}  95% CI [{wait.ci_low:.3f}, {wait.ci_high:.3f}]"
      f"  theory {mm1_wait_time(0.05, 0.1):.3f}")
