"""A small object-database pipeline.

Every object access checks the buffer. A miss costs a disk I/O, so the
share of accesses reaching the disk estimates 1 - hit probability.
"""
from desp import SimulationConfig, run
from desp.models import MiniOODB

cfg = SimulationConfig(tmax=2_000.0, seed=5, nreplic=50)
for h in (0.5, 0.7, 0.9, 1.0):
    stats = run(MiniOODB(buffer_hit_prob=h), cfg)
    disk = sum(stats.per_replication("disk", "served"))
    accesses = sum(stats.per_replication("buffer_manager", "served"))
    txn = stats["transaction_manager"]["response_mean"].mean
    print(f"h={h:.1f}  miss ratio {disk / accesses:.4f} (expect {1 - h:.1f})"
          f"  mean transaction time {txn:.2f}")
