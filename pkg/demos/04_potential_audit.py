# Auditing the k/(k-h+1) guarantee, one event at a time.
#
# The audit replays the engine (cache size k) against an optimal schedule
# (cache size h) and tracks the potential
#
#     phi = (h-1) * sum of resident credits
#         + k * sum over the optimal cache of (cost - credit).
#
# The guarantee telescopes from three event bounds: an optimal retrieval may
# raise phi by at most k*cost, an engine retrieval must lower it by at least
# (k-h+1)*cost, and nothing else may raise it.

from fractions import Fraction as Fr

from cachelab import FileSpec, LandlordPolicy, audit_landlord

a = FileSpec("a", 2, Fr(4))
b = FileSpec("b", 1, Fr(1))
c = FileSpec("c", 2, Fr(3))

audit = audit_landlord([a, b, c, a, b], h=3, k=4, policy=LandlordPolicy.lru())

print(f"h={audit.h}, k={audit.k}")
print(f"{'event':20s} {'phi before':>10s} {'phi after':>10s} {'bound':>8s}")
for step in audit.steps:
    print(f"{step.kind:20s} {str(step.phi_before):>10s} "
          f"{str(step.phi_after):>10s} {str(step.bound):>8s}")

assert audit.all_satisfied
assert audit.phi_nonnegative
print(f"\nengine paid {audit.landlord_cost}, optimum paid {audit.opt_cost}")

# Summing the bounds gives the exact rational inequality:
#   (k - h + 1) * engine cost <= k * optimal cost
lhs = (audit.k - audit.h + 1) * audit.landlord_cost
rhs = audit.k * audit.opt_cost
print(f"(k-h+1)*cost = {lhs} <= k*opt = {rhs}")
assert audit.ratio_certified and lhs <= rhs
