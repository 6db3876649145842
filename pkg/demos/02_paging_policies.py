# The classic paging policies are one engine with different knobs.
#
# On uniform traces (size 1, cost 1) the engine reproduces LRU, FIFO and
# flush-when-full fault for fault, position for position.

import random

from cachelab import (
    LandlordPolicy,
    decompose_phases,
    paging_sequence,
    run_trace,
    simulate_paging,
)

rng = random.Random(0)
trace = [str(rng.randrange(9)) for _ in range(200)]
seq = paging_sequence(trace)

for k in (2, 4, 7):
    print(f"cache size {k}:")
    for name, policy in (("lru", LandlordPolicy.lru()),
                         ("fifo", LandlordPolicy.fifo()),
                         ("fwf", LandlordPolicy.fwf())):
        faults, positions = simulate_paging(trace, k, name)
        engine = run_trace(seq, k, policy)
        assert engine.fault_positions == positions
        print(f"  {name:4s}: {faults} faults (engine agrees)")

# Flush-when-full cuts the trace into phases: each full phase touches
# exactly k distinct items, and its fault count is the sum of those counts.
k = 4
dec = decompose_phases(trace, k)
distinct = [len(set(trace[s:e])) for s, e in dec.phases]
print(f"\nphases at k={k}: {len(dec.phases)} "
      f"(first five: {dec.phases[:5]})")
assert all(d == k for d in distinct[:-1])
assert sum(distinct) == simulate_paging(trace, k, "fwf")[0]

# The randomized marking policy needs a seed and is reproducible under it.
a = simulate_paging(trace, 4, "marking", seed=123)
b = simulate_paging(trace, 4, "marking", seed=123)
assert a == b
print(f"\nmarking at k=4, seed 123: {a[0]} faults (deterministic per seed)")
