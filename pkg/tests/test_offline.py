import random
from fractions import Fraction as Fr

import pytest

from cachelab import (
    FileSpec,
    InstanceTooLarge,
    LandlordPolicy,
    RequestTooLarge,
    belady_opt,
    opt_cost,
    opt_cost_fast_paging,
    opt_cost_full_subsets,
    paging_sequence,
    replay_witness,
    run_trace,
)

A = FileSpec("a", 2, Fr(4))
B = FileSpec("b", 1, Fr(1))
C = FileSpec("c", 2, Fr(3))


def random_instance(rng, max_files=5, max_len=12, max_size=3):
    pool = [FileSpec(f"f{i}", rng.randrange(1, max_size + 1),
                     Fr(rng.randrange(0, 13), rng.randrange(1, 4)))
            for i in range(rng.randrange(1, max_files + 1))]
    seq = [pool[rng.randrange(len(pool))] for _ in range(rng.randrange(1, max_len + 1))]
    k = rng.randrange(max(f.size for f in pool), 7)
    return seq, k


def test_paging_example_matches_belady():
    result = opt_cost(paging_sequence("abcab"), 2)
    assert result.min_cost == 4 == belady_opt(list("abcab"), 2)


def test_everything_fits_costs_each_distinct_file_once():
    seq = [A, B, A, B, B, A]
    result = opt_cost(seq, 3)
    assert result.min_cost == A.cost + B.cost
    assert all(evicted == () for _, evicted in result.witness_schedule)


def test_weighted_example_conflicting_sizes():
    # a and c (sizes 2+2) can never share a 3-slot cache, so the final a
    # must re-fault at k=3; one slot more lets b go instead and a stay
    seq = [A, B, C, A]
    assert opt_cost(seq, 3).min_cost == 12
    assert opt_cost(seq, 4).min_cost == 8
    assert opt_cost_full_subsets(seq, 3) == 12
    assert opt_cost_full_subsets(seq, 4) == 8


def test_witness_replays_to_min_cost():
    rng = random.Random(17)
    for _ in range(80):
        seq, k = random_instance(rng)
        result = opt_cost(seq, k)
        assert replay_witness(seq, k, result.witness_schedule) == result.min_cost


def test_witness_is_deterministic():
    rng = random.Random(23)
    for _ in range(20):
        seq, k = random_instance(rng)
        assert opt_cost(seq, k) == opt_cost(seq, k)


def test_minimal_equals_full_subsets_on_random_instances():
    rng = random.Random(29)
    for _ in range(120):
        seq, k = random_instance(rng)
        assert opt_cost(seq, k).min_cost == opt_cost_full_subsets(seq, k)


def test_minimal_equals_full_subsets_six_files_length_ten():
    # sampled at the six-file/length-10 box; the acceptance suite covers the
    # five-file/length-9 box exhaustively
    rng = random.Random(31)
    for _ in range(150):
        seq, k = random_instance(rng, max_files=6, max_len=10)
        assert opt_cost(seq, k).min_cost == opt_cost_full_subsets(seq, k)


def test_monotone_in_k():
    rng = random.Random(37)
    for _ in range(60):
        seq, k = random_instance(rng)
        a = opt_cost(seq, k).min_cost
        b = opt_cost(seq, k + 1).min_cost
        assert b <= a


def test_never_beats_no_algorithm_is_cheaper():
    rng = random.Random(41)
    policies = [LandlordPolicy.lru(), LandlordPolicy.fifo(), LandlordPolicy.fwf(),
                LandlordPolicy.pessimal_flush()]
    for _ in range(60):
        seq, k = random_instance(rng)
        optimum = opt_cost(seq, k).min_cost
        for policy in policies:
            assert optimum <= run_trace(seq, k, policy).total_cost


def test_limits_enforced():
    pool = [FileSpec(f"f{i}", 1, Fr(1)) for i in range(13)]
    with pytest.raises(InstanceTooLarge):
        opt_cost(pool, 13)
    with pytest.raises(InstanceTooLarge):
        opt_cost([A] * 25, 3)
    # raising the limits explicitly unlocks the same instance
    assert opt_cost([A] * 25, 3, max_length=30).min_cost == 4


def test_size_larger_than_cache():
    with pytest.raises(RequestTooLarge):
        opt_cost([A], 1)


def test_fast_paging_dispatch():
    seq = paging_sequence("abcab")
    assert opt_cost_fast_paging(seq, 2) == 4
    # non-paging input falls back to the general search
    assert opt_cost_fast_paging([A, B, C, A], 4) == 8


def test_empty_sequence():
    assert opt_cost([], 3).min_cost == 0
    assert opt_cost([], 3).witness_schedule == ()
