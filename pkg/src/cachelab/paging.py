"""Direct paging simulators: LRU, FIFO, FWF, randomized marking, Belady.

Paging is the uniform case (every item has size 1 and cost 1).  These
straight-line implementations are deliberately independent of the Landlord
engine so the two can cross-check each other, and they count faults rather
than costs.
"""

import random
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidCapacity, InvalidParams

__all__ = [
    "PagingAlg",
    "PhaseDecomposition",
    "simulate_paging",
    "belady_opt",
    "decompose_phases",
]

_NEVER = float("inf")


class PagingAlg(Enum):
    LRU = "lru"
    FIFO = "fifo"
    FWF = "fwf"
    MARKING = "marking"


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise InvalidCapacity(f"cache size must be a positive integer, got {k!r}")


def _as_alg(alg):
    return alg if isinstance(alg, PagingAlg) else PagingAlg(str(alg).lower())


def simulate_paging(trace, k, alg, seed=None):
    """Run one paging policy over a trace.

    Returns ``(fault_count, fault_positions)``.  A seed is required for
    MARKING and rejected for the deterministic policies; the same seed
    always yields the same evictions.
    """
    _check_k(k)
    alg = _as_alg(alg)
    if alg is PagingAlg.MARKING:
        if seed is None:
            raise InvalidParams("MARKING is randomized: a seed is required")
    elif seed is not None:
        raise InvalidParams(f"{alg.value} is deterministic: seed must be omitted")

    faults = []
    if alg is PagingAlg.LRU:
        cache = {}  # insertion order doubles as recency order
        for i, x in enumerate(trace):
            if x in cache:
                del cache[x]
            else:
                faults.append(i)
                if len(cache) == k:
                    del cache[next(iter(cache))]
            cache[x] = None
    elif alg is PagingAlg.FIFO:
        cache = {}
        for i, x in enumerate(trace):
            if x not in cache:
                faults.append(i)
                if len(cache) == k:
                    del cache[next(iter(cache))]
                cache[x] = None
    elif alg is PagingAlg.FWF:
        cache = set()
        for i, x in enumerate(trace):
            if x not in cache:
                faults.append(i)
                if len(cache) == k:
                    cache.clear()
                cache.add(x)
    else:  # MARKING
        rng = random.Random(seed)
        marked = {}  # id -> bool
        for i, x in enumerate(trace):
            if x in marked:
                marked[x] = True
            else:
                faults.append(i)
                if len(marked) == k:
                    unmarked = sorted(f for f, m in marked.items() if not m)
                    if not unmarked:
                        for f in marked:
                            marked[f] = False
                        unmarked = sorted(marked)
                    del marked[rng.choice(unmarked)]
                marked[x] = True
    return len(faults), faults


def belady_opt(trace, k):
    """Minimum fault count for paging: evict the item used farthest in future."""
    _check_k(k)
    occurrences = {}
    for i, x in enumerate(trace):
        occurrences.setdefault(x, []).append(i)
    cursor = {x: 0 for x in occurrences}

    faults = 0
    next_use = {}  # resident -> position of its next request (or _NEVER)
    for i, x in enumerate(trace):
        cursor[x] += 1
        upcoming = occurrences[x]
        j = cursor[x]
        coming = upcoming[j] if j < len(upcoming) else _NEVER
        if x in next_use:
            next_use[x] = coming
            continue
        faults += 1
        if len(next_use) == k:
            victim = max(next_use, key=lambda f: (next_use[f], f))
            del next_use[victim]
        next_use[x] = coming
    return faults


@dataclass(frozen=True)
class PhaseDecomposition:
    """Trace split at flush-when-full boundaries.

    ``phases`` are half-open index ranges covering the trace.  Every phase
    except possibly the last references exactly k distinct items, and every
    phase after the first begins with an item absent from the previous phase.
    """

    k: int
    phases: tuple

    def __len__(self):
        return len(self.phases)

    def items_of(self, trace, phase_index):
        start, end = self.phases[phase_index]
        return trace[start:end]


def decompose_phases(trace, k):
    """Cut the trace where FWF with cache size k would flush.

    The request that triggers a flush belongs to the new phase.  An empty
    trace has no phases.
    """
    _check_k(k)
    phases = []
    start = 0
    seen = set()
    for i, x in enumerate(trace):
        if x not in seen:
            if len(seen) == k:
                phases.append((start, i))
                start = i
                seen = {x}
            else:
                seen.add(x)
    if len(trace):
        phases.append((start, len(trace)))
    return PhaseDecomposition(k, tuple(phases))
