# How the credit/rent engine serves a weighted file trace.
#
# Three files with different sizes and costs compete for a 3-unit cache.
# Watch the rent rounds: each round charges every resident delta * size,
# with delta chosen so at least one credit hits exactly zero.

from fractions import Fraction as Fr

from cachelab import FileSpec, LandlordPolicy, run_trace

a = FileSpec("a", 2, Fr(4))   # big and expensive
b = FileSpec("b", 1, Fr(1))   # small and cheap
c = FileSpec("c", 2, Fr(3))

report = run_trace([a, b, c], 3, LandlordPolicy.lru())

for i, out in enumerate(report.outcomes):
    kind = "hit " if out.was_hit else "miss"
    print(f"request {i}: {kind} paid={out.retrieval_cost_paid}")
    for rnd in out.rent_rounds:
        print(f"    rent round: delta={rnd.delta}, zeroed={sorted(rnd.zeroed)}")
    if out.evicted:
        print(f"    evicted: {list(out.evicted)}")

print("total retrieval cost:", report.total_cost)
assert report.total_cost == 8

# The request for c pays two rounds of rent: first b's single credit unit
# drains (delta=1), then a's remaining two (delta=1 again, 2 per unit size).
assert [r.delta for r in report.outcomes[2].rent_rounds] == [1, 1]
assert report.outcomes[2].evicted == ("b", "a")

# A zero-cost file enters with zero credit: it is the first to go, and the
# delta=0 rent round that removes it is still recorded.
free = FileSpec("free", 1, Fr(0))
report = run_trace([free, a, c], 3, LandlordPolicy.fifo())
out = report.outcomes[2]
print("\nzero-cost file: evicted =", list(out.evicted),
      "first round delta =", out.rent_rounds[0].delta)
assert out.evicted[0] == "free" and out.rent_rounds[0].delta == 0

# The refresh knob: lambda=1 restores full credit on every hit (recency
# wins), lambda=0 never refreshes (pure first-in survival).  Both are legal;
# they become LRU and FIFO on uniform traces.
print("\npolicies:", LandlordPolicy.lru(), LandlordPolicy.fifo(), sep="\n  ")
