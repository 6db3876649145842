# Loose competitiveness: at most cache sizes, the cost is either tiny or
# within a constant factor of optimal.
#
# A size k in {1..n} is "bad" when the algorithm's cost exceeds both
# c * optimum(k) and epsilon * (total requested cost).  The closed-form
# constants below make the bad fraction provably small for any policy with
# the k/(k-h+1) guarantee.

import random
from fractions import Fraction as Fr

from cachelab import (
    FileSpec,
    LandlordPolicy,
    bound_c_deterministic,
    bound_c_randomized,
    evaluate_loose,
    landlord_algorithm,
    lower_bound_c,
    marking_bound_c,
)

eps, delta = Fr(1, 10), Fr(1, 5)
c_det = bound_c_deterministic(eps, delta)
print(f"deterministic constant at (eps={eps}, delta={delta}): {c_det:.6f}")
print(f"marking constant:                                    "
      f"{marking_bound_c(eps, delta):.6f}")
print(f"flush-when-full impossibility threshold:             "
      f"{lower_bound_c(eps, delta):.6f}")
print(f"randomized form with alpha=1, beta=0 (sanity: e):    "
      f"{bound_c_randomized(1, 0, eps, delta):.6f}")

# Sweep a weighted trace over k = 1..12 and count the bad sizes.
rng = random.Random(4)
pool = [FileSpec(f"f{i}", 1, Fr(rng.randint(1, 12), rng.randint(1, 3)))
        for i in range(9)]
seq = [rng.choice(pool) for _ in range(18)]

report = evaluate_loose(seq, 12, eps, Fr(c_det),
                        landlord_algorithm(LandlordPolicy.lru()))
print(f"\n{'k':>3s} {'alg':>8s} {'opt':>8s} {'bad':>5s}")
for k in sorted(report.per_k):
    row = report.per_k[k]
    print(f"{k:3d} {str(row.alg_cost):>8s} {str(row.opt_cost):>8s} "
          f"{'yes' if k in report.bad_ks else 'no':>5s}")
print(f"bad fraction: {report.bad_fraction} (must stay below delta = {delta})")
assert report.bad_fraction < delta
