import dataclasses
import itertools
from fractions import Fraction as Fr

import pytest

from cachelab import (
    InvalidParams,
    LandlordPolicy,
    NTooSmall,
    SPECIAL,
    build_sequence,
    decompose_phases,
    lower_bound_c,
    measure_fault_rates,
    minimal_valid_n,
    paging_sequence,
    run_trace,
    simulate_paging,
    verify_structure,
)

# a comfortable multi-level instance: c = 2, growth 9/8, levels 30/34/38/43
EPS, DELTA, N = Fr(1, 32), Fr(1, 4), 40


def test_worked_example_via_override():
    s = build_sequence(levels_override=[4, 5])
    assert len(s.items) == 8
    levels = [s.level_of_item[x] for x in s.items]
    assert levels == [SPECIAL, 0, 0, 0, SPECIAL, 0, 0, 0]
    # the two special occurrences are distinct items; the regulars repeat
    assert s.items[0] != s.items[4]
    assert s.items[1:4] == s.items[5:8]
    assert len(set(s.items)) == 5 == s.k_levels[-1]
    # whole string is one window of length 8 with k_1 = 5 distinct items
    assert verify_structure(s).ok


def test_lengths_and_level_heads():
    s = build_sequence(EPS, DELTA, N)
    assert s.k_levels == (30, 34, 38, 43)
    assert s.k0 == 30 and s.m == 3
    assert len(s.items) == 30 * 2 ** 3
    assert s.k_levels[-2] <= N < s.k_levels[-1]


def test_structure_clean_on_parameter_grid():
    grid = [(Fr(1, 8), Fr(1, 4), 6), (Fr(1, 8), Fr(1, 4), 20),
            (Fr(1, 32), Fr(1, 4), 40), (Fr(1, 16), Fr(1, 3), 30),
            (Fr(1, 4), Fr(2, 5), 25)]
    for eps, delta, n in grid:
        s = build_sequence(eps, delta, n)
        report = verify_structure(s)
        assert report.ok, (eps, delta, n, report.violations)


def test_window_sampling_bound_still_passes():
    s = build_sequence(EPS, DELTA, N)
    report = verify_structure(s, max_windows_per_level=7)
    assert report.ok
    assert report.checks < verify_structure(s).checks


def test_every_window_references_k_i_distinct_items():
    s = build_sequence(EPS, DELTA, N)
    items = s.items
    for level, k_i in enumerate(s.k_levels):
        window = s.k0 * 2 ** level
        for start in range(len(items) - window + 1):
            assert len(set(items[start:start + window])) == k_i


def test_phases_align_with_doubling():
    s = build_sequence(EPS, DELTA, N)
    for level, k_i in enumerate(s.k_levels):
        window = s.k0 * 2 ** level
        dec = decompose_phases(list(s.items), k_i)
        assert all(e - b == window for b, e in dec.phases)
        assert all(s.periodicity_exceeds(s.items[b], level) for b, _ in dec.phases)


def test_corrupted_periodicity_is_flagged():
    s = build_sequence(Fr(1, 8), Fr(1, 4), 6)
    items = list(s.items)
    p = items.index("L0_0")
    q = items.index("L0_1")
    items[p], items[q] = items[q], items[p]  # swap across a period boundary
    corrupted = dataclasses.replace(s, items=tuple(items))
    report = verify_structure(corrupted)
    assert not report.ok
    assert any("period" in v for v in report.violations)


def test_specials_occur_exactly_once():
    s = build_sequence(EPS, DELTA, N)
    specials = [x for x in s.items if s.level_of_item[x] == SPECIAL]
    counts = {x: specials.count(x) for x in specials}
    assert all(c == 1 for c in counts.values())


def test_param_domain():
    with pytest.raises(InvalidParams):
        build_sequence(Fr(1, 2), Fr(1, 4), 50)  # ratio target collapses to 0
    with pytest.raises(InvalidParams):
        build_sequence(Fr(1, 8), Fr(3, 5), 50)
    with pytest.raises(InvalidParams):
        build_sequence(Fr(1, 8), Fr(1, 4), None)


def test_n_too_small_reports_minimal_feasible_n():
    with pytest.raises(NTooSmall) as err:
        build_sequence(Fr(1, 8), Fr(1, 4), 5)
    assert err.value.minimal_n == 6
    assert "6" in str(err.value)
    assert minimal_valid_n(Fr(1, 8), Fr(1, 4)) == 6
    # and the reported n really is feasible
    assert verify_structure(build_sequence(Fr(1, 8), Fr(1, 4), 6)).ok


class TestFaultRates:
    def test_levels_match_closed_forms_exactly(self):
        s = build_sequence(EPS, DELTA, N)
        report = measure_fault_rates(s)
        ks = [row.k for row in report.levels]
        assert ks == [30, 34, 38]  # levels with k_i <= n
        for row in report.levels:
            period = s.k0 * 2 ** row.level
            k_next = s.k_levels[row.level + 1]
            assert row.fwf_rate == Fr(row.k, period)
            assert row.fwf_recurrent_rate == Fr(row.k, period)
            assert row.lru_recurrent_rate == Fr(k_next - row.k, period)
            # the whole-trace LRU rate carries the one-off cold misses
            cold = 2 * row.k - k_next
            assert row.lru_faults == (k_next - row.k) * len(s.items) // period + cold
        assert report.level_rates_exact

    def test_lru_faults_exactly_on_long_period_items_after_warmup(self):
        s = build_sequence(EPS, DELTA, N)
        for row_level, k_i in enumerate(s.k_levels[:-1]):
            if k_i > s.n:
                break
            period = s.k0 * 2 ** row_level
            _, positions = simulate_paging(list(s.items), k_i, "lru")
            warm = [p for p in positions if p >= period]
            expected = [p for p in range(period, len(s.items))
                        if s.periodicity_exceeds(s.items[p], row_level)]
            assert warm == expected

    def test_ratio_and_rate_thresholds(self):
        s = build_sequence(EPS, DELTA, N)
        report = measure_fault_rates(s)
        c = lower_bound_c(EPS, DELTA)
        for level_row in report.levels:
            k_next = s.k_levels[level_row.level + 1]
            steady_ratio = Fr(level_row.k, k_next - level_row.k)
            assert steady_ratio >= 2 * c
        for k_row in report.per_k:
            # in the periodic regime FWF beats the target everywhere; the
            # whole-trace ratio can dip below c = 2 near the top level, where
            # LRU's one-off cold misses still dominate its fault count
            assert k_row.recurrent_ratio > c
            assert k_row.fwf_rate >= EPS

    def test_whole_trace_ratio_holds_at_small_c(self):
        for eps, delta, n in [(Fr(1, 8), Fr(1, 4), 6), (Fr(1, 8), Fr(1, 4), 20),
                              (Fr(1, 16), Fr(1, 3), 30)]:
            s = build_sequence(eps, delta, n)
            c = lower_bound_c(eps, delta)
            for k_row in measure_fault_rates(s).per_k:
                assert k_row.ratio > c

    def test_pessimal_flusher_matches_fwf_costs(self):
        s = build_sequence(Fr(1, 8), Fr(1, 4), 6)
        seq = paging_sequence(s.items)
        for k in range(s.k0, s.n + 1):
            fwf_faults, fwf_positions = simulate_paging(list(s.items), k, "fwf")
            report = run_trace(seq, k, LandlordPolicy.pessimal_flush(), validate=False)
            assert report.fault_positions == fwf_positions
            assert report.total_cost == fwf_faults
