# The exact offline optimum, with a replayable witness schedule.
#
# The search walks the trace forward over reachable resident sets, memoized
# on (request index, resident set), and on each miss branches over the
# inclusion-minimal eviction subsets that make room.

import random
from fractions import Fraction as Fr

from cachelab import (
    FileSpec,
    LandlordPolicy,
    belady_opt,
    opt_cost,
    opt_cost_full_subsets,
    paging_sequence,
    replay_witness,
    run_trace,
)

a = FileSpec("a", 2, Fr(4))
b = FileSpec("b", 1, Fr(1))
c = FileSpec("c", 2, Fr(3))

# a and c cannot coexist in 3 slots, so the second a must re-fault at k=3;
# at k=4 the optimum sacrifices b instead and keeps a resident.
for k in (3, 4):
    result = opt_cost([a, b, c, a], k)
    print(f"k={k}: min cost {result.min_cost}, witness {result.witness_schedule}")
    assert replay_witness([a, b, c, a], k, result.witness_schedule) == result.min_cost
assert opt_cost([a, b, c, a], 3).min_cost == 12
assert opt_cost([a, b, c, a], 4).min_cost == 8

# Minimal-subset branching loses nothing: holding a file is free, so any
# non-minimal eviction can be deferred.  The full-subset search is kept as
# an oracle for exactly this claim.
rng = random.Random(1)
pool = [FileSpec(f"f{i}", rng.randint(1, 3), Fr(rng.randint(0, 9))) for i in range(5)]
for _ in range(30):
    seq = [rng.choice(pool) for _ in range(rng.randint(1, 10))]
    assert opt_cost(seq, 5).min_cost == opt_cost_full_subsets(seq, 5)
print("minimal-eviction branching == full-subset search on 30 random instances")

# On paging-shaped input the farthest-in-future rule gives the same number.
# (The search guards its exponential state space: the default limits are 12
# distinct files and 24 requests, both overridable per call.)
items = [str(rng.randrange(7)) for _ in range(40)]
seq = paging_sequence(items)
assert opt_cost(seq, 4, max_length=40).min_cost == belady_opt(items, 4)
print(f"belady agrees with the search: {belady_opt(items, 4)} faults")

# And no online policy beats it.
optimum = opt_cost(seq, 4, max_length=40).min_cost
for policy in (LandlordPolicy.lru(), LandlordPolicy.fifo(), LandlordPolicy.fwf()):
    assert optimum <= run_trace(seq, 4, policy).total_cost
print("every online policy pays at least the optimum")
