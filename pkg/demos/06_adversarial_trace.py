# A trace on which flush-when-full is bad at every cache size in [k0, n]
# at once, while LRU stays near-optimal.
#
# The construction doubles a string repeatedly: items introduced at step i
# recur with exact period k0 * 2**i, every window of that length touches
# exactly k_i distinct items, and one-shot "special" requests keep the
# distinct counts climbing between levels.

from fractions import Fraction as Fr

from cachelab import (
    LandlordPolicy,
    build_sequence,
    lower_bound_c,
    measure_fault_rates,
    minimal_valid_n,
    paging_sequence,
    run_trace,
    simulate_paging,
    verify_structure,
)

eps, delta = Fr(1, 32), Fr(1, 4)
n = minimal_valid_n(eps, delta)
s = build_sequence(eps, delta, n)
c = lower_bound_c(eps, delta)

print(f"eps={eps}, delta={delta}: smallest workable n is {n}")
print(f"levels {s.k_levels}, trace length {len(s.items)}, "
      f"{len(s.level_of_item)} distinct items, ratio target c={c}")

structure = verify_structure(s)
assert structure.ok
print(f"structure: {structure.checks} checks, no violations")

rates = measure_fault_rates(s)
print(f"\n{'level':>5s} {'k_i':>4s} {'FWF rate':>9s} {'LRU (recurrent)':>16s}")
for row in rates.levels:
    assert row.fwf_rate == row.expected_fwf_rate
    assert row.lru_recurrent_rate == row.expected_lru_rate
    print(f"{row.level:5d} {row.k:4d} {str(row.fwf_rate):>9s} "
          f"{str(row.lru_recurrent_rate):>16s}")

# In the periodic regime the FWF/LRU fault ratio beats c at every size in
# [k0, n], and FWF's fault rate never falls below epsilon.
for row in rates.per_k:
    assert row.recurrent_ratio > c
    assert row.fwf_rate >= eps
print(f"\nFWF/LRU recurrent ratio > {c} and FWF rate >= {eps} "
      f"for every k in [{s.k0}, {n}]")

# The variant that evicts one file at a time, always the one needed soonest,
# faults exactly like the full flush: evicting all at once is not the sin.
seq = paging_sequence(s.items)
for k in (s.k0, n):
    _, fwf_positions = simulate_paging(list(s.items), k, "fwf")
    run = run_trace(seq, k, LandlordPolicy.pessimal_flush())
    assert run.fault_positions == fwf_positions
print("pessimal one-at-a-time flusher matches FWF fault for fault")
