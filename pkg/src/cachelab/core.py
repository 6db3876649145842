"""Landlord cache engine: credit-based eviction for files with sizes and costs.

Every file in the cache holds a credit in [0, cost].  A requested file that
is already resident may have its credit refreshed (interpolated toward its
cost by ``refresh_lambda``).  A miss charges "rent" to every resident --
``delta * size`` per round, with delta chosen as the minimum credit/size so
at least one resident reaches exactly zero -- and evicts zero-credit files
until the newcomer fits.  All arithmetic is exact (``fractions.Fraction``):
the eviction trigger is an exact-zero test, so runs are reproducible across
platforms.

The selector/greediness knobs choose *which* zero-credit files go, which is
how the classic paging policies fall out of the same engine:

* LRU    -> lambda=1, LRU_ORDER, EVICT_UNTIL_ROOM
* FIFO   -> lambda=0, FIFO_ORDER, EVICT_UNTIL_ROOM
* FWF    -> lambda=0, ALL_ZERO, EVICT_ALL_ZERO
* balance (uniform sizes, arbitrary costs) -> lambda=0, EVICT_UNTIL_ROOM
* pessimal flush -> lambda=0, PESSIMAL_NEXT_REQUEST, EVICT_UNTIL_ROOM
  (offline: evicts the zero-credit file that will be requested soonest)
"""

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConsistencyError, InvalidCapacity, InvalidParams, RequestTooLarge

__all__ = [
    "FileSpec",
    "LandlordPolicy",
    "EvictionSelector",
    "EvictionGreediness",
    "CacheState",
    "RentRound",
    "RequestOutcome",
    "RunReport",
    "new_cache",
    "request",
    "run_trace",
    "validate_sequence",
]

_INFINITY = float("inf")
_FR0 = Fraction(0)

# entry field indices (entries are small lists for speed)
_SPEC, _CREDIT, _LAST, _INS = 0, 1, 2, 3


class EvictionSelector(Enum):
    """Order in which zero-credit files are considered for eviction."""

    ALL_ZERO = "all"            # insertion order; meant for evict-all flushing
    LRU_ORDER = "lru"           # least recently requested first
    FIFO_ORDER = "fifo"         # earliest inserted first
    PESSIMAL_NEXT_REQUEST = "pessimal"  # soonest next request first (offline)


class EvictionGreediness(Enum):
    EVICT_ALL_ZERO = "all-zero"      # evict every zero-credit file
    EVICT_UNTIL_ROOM = "until-room"  # stop as soon as the newcomer fits


@dataclass(frozen=True)
class FileSpec:
    """A cacheable file: opaque id, positive integer size, rational cost >= 0."""

    id: str
    size: int
    cost: Fraction

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise InvalidParams(f"file {self.id!r}: size must be a positive integer")
        object.__setattr__(self, "cost", Fraction(self.cost))
        if self.cost < 0:
            raise InvalidParams(f"file {self.id!r}: cost must be non-negative")


@dataclass(frozen=True)
class LandlordPolicy:
    """Tunable knobs of the engine.

    ``refresh_lambda`` controls the credit refresh on a hit:
    new credit = credit + lambda * (cost - credit).  lambda=1 restores full
    credit (LRU-like), lambda=0 leaves it unchanged (FIFO/FWF-like); any
    rational in between is legal.
    """

    refresh_lambda: Fraction = Fraction(1)
    selector: EvictionSelector = EvictionSelector.LRU_ORDER
    greediness: EvictionGreediness = EvictionGreediness.EVICT_UNTIL_ROOM

    def __post_init__(self):
        lam = Fraction(self.refresh_lambda)
        if not 0 <= lam <= 1:
            raise InvalidParams("refresh_lambda must lie in [0, 1]")
        object.__setattr__(self, "refresh_lambda", lam)

    @classmethod
    def lru(cls):
        return cls(Fraction(1), EvictionSelector.LRU_ORDER, EvictionGreediness.EVICT_UNTIL_ROOM)

    @classmethod
    def fifo(cls):
        return cls(Fraction(0), EvictionSelector.FIFO_ORDER, EvictionGreediness.EVICT_UNTIL_ROOM)

    @classmethod
    def fwf(cls):
        return cls(Fraction(0), EvictionSelector.ALL_ZERO, EvictionGreediness.EVICT_ALL_ZERO)

    @classmethod
    def balance(cls):
        # the classic balance policy for uniform-size caches: never refresh,
        # evict only as much as needed
        return cls(Fraction(0), EvictionSelector.FIFO_ORDER, EvictionGreediness.EVICT_UNTIL_ROOM)

    @classmethod
    def pessimal_flush(cls):
        return cls(Fraction(0), EvictionSelector.PESSIMAL_NEXT_REQUEST,
                   EvictionGreediness.EVICT_UNTIL_ROOM)


@dataclass(frozen=True)
class RentRound:
    """One pass of rent collection: every resident pays delta * size."""

    delta: Fraction
    zeroed: frozenset

    def __post_init__(self):
        object.__setattr__(self, "zeroed", frozenset(self.zeroed))


@dataclass(frozen=True)
class RequestOutcome:
    was_hit: bool
    retrieval_cost_paid: Fraction
    rent_rounds: tuple
    evicted: tuple


class CacheState:
    """Mutable cache: resident files with credits, bounded by capacity_k.

    Owned by a single simulation at a time; independent simulations may run
    concurrently as long as they do not share a state.

    ``_zero`` mirrors the residents whose credit is exactly 0, kept in the
    same insertion order as ``_entries``; it lets a rent round with zero
    minimum skip the full credit scan.
    """

    __slots__ = ("capacity_k", "_free", "_entries", "_zero", "_clock")

    def __init__(self, capacity_k):
        if not isinstance(capacity_k, int) or capacity_k < 1:
            raise InvalidCapacity(f"capacity must be a positive integer, got {capacity_k!r}")
        self.capacity_k = capacity_k
        self._free = capacity_k
        self._entries = {}
        self._zero = {}  # ordered set: id -> None
        self._clock = 0

    def __contains__(self, file_id):
        return file_id in self._entries

    def __len__(self):
        return len(self._entries)

    @property
    def used_size(self):
        return self.capacity_k - self._free

    @property
    def free_space(self):
        return self._free

    @property
    def resident_ids(self):
        return list(self._entries)

    def residents(self):
        """Snapshot of residents as {id: (FileSpec, credit)}."""
        return {fid: (e[_SPEC], e[_CREDIT]) for fid, e in self._entries.items()}

    def spec_of(self, file_id):
        return self._entries[file_id][_SPEC]

    def credit_of(self, file_id):
        """Credit of a file; 0 for non-residents by convention."""
        e = self._entries.get(file_id)
        return e[_CREDIT] if e is not None else Fraction(0)

    def clone(self):
        other = CacheState.__new__(CacheState)
        other.capacity_k = self.capacity_k
        other._free = self._free
        other._entries = {fid: e.copy() for fid, e in self._entries.items()}
        other._zero = self._zero.copy()
        other._clock = self._clock
        return other


def new_cache(k):
    """Empty cache of capacity k (k >= 1)."""
    return CacheState(k)


class _FutureView:
    """Next-occurrence lookup for the pessimal selector.

    ``occurrences`` maps id -> sorted request positions; ``position`` is the
    index of the request being served.  Files never requested again sort last
    (ties broken by id).
    """

    __slots__ = ("occurrences", "position")

    def __init__(self, occurrences, position=-1):
        self.occurrences = occurrences
        self.position = position

    def next_after(self, file_id):
        positions = self.occurrences.get(file_id)
        if positions is None:
            return _INFINITY
        j = bisect_right(positions, self.position)
        return positions[j] if j < len(positions) else _INFINITY


def _eviction_order(selector, zeroed, entries, future):
    if selector is EvictionSelector.ALL_ZERO:
        return zeroed  # already in insertion order
    if selector is EvictionSelector.LRU_ORDER:
        return sorted(zeroed, key=lambda fid: entries[fid][_LAST])
    if selector is EvictionSelector.FIFO_ORDER:
        return sorted(zeroed, key=lambda fid: entries[fid][_INS])
    if future is None:
        raise InvalidParams(
            "PESSIMAL_NEXT_REQUEST needs the future request sequence; "
            "serve the trace through run_trace or pass future="
        )
    return sorted(zeroed, key=lambda fid: (future.next_after(fid), fid))


def serve_events(state, g, policy, future=None):
    """Serve one request, yielding fine-grained events as they happen.

    Events: ``("refresh", old_credit, new_credit)`` on a hit;
    ``("rent", delta, zeroed_ids)``, ``("evict", file_id)`` repeated as
    needed, then ``("retrieve",)`` on a miss.  The potential-function audit
    consumes these directly; `request` folds them into a RequestOutcome.
    """
    entries = state._entries
    zero = state._zero
    state._clock += 1
    now = state._clock

    entry = entries.get(g.id)
    if entry is not None:
        entry[_LAST] = now
        old = entry[_CREDIT]
        lam = policy.refresh_lambda
        if lam and old != g.cost:
            new = g.cost if lam == 1 else old + lam * (g.cost - old)
            entry[_CREDIT] = new
            if new and not old:
                del zero[g.id]
        else:
            new = old
        yield ("refresh", old, new)
        return

    gsize = g.size
    if gsize > state.capacity_k:
        raise RequestTooLarge(
            f"file {g.id!r} (size {gsize}) exceeds cache capacity {state.capacity_k}"
        )

    until_room = policy.greediness is EvictionGreediness.EVICT_UNTIL_ROOM
    while state._free < gsize:
        if zero:
            # some resident already has credit 0, so this round charges nothing
            delta = _FR0
            zeroed = tuple(zero)
        else:
            delta = min(e[_CREDIT] / e[_SPEC].size for e in entries.values())
            newly = []
            for fid, e in entries.items():
                credit = e[_CREDIT] - delta * e[_SPEC].size
                e[_CREDIT] = credit
                if not credit:
                    newly.append(fid)
                    zero[fid] = None
            zeroed = tuple(newly)
        yield ("rent", delta, zeroed)
        for fid in _eviction_order(policy.selector, zeroed, entries, future):
            if until_room and state._free >= gsize:
                break
            gone = entries.pop(fid)
            del zero[fid]
            state._free += gone[_SPEC].size
            yield ("evict", fid)

    entries[g.id] = [g, g.cost, now, now]
    if not g.cost:
        zero[g.id] = None
    state._free -= gsize
    yield ("retrieve",)


_HIT_OUTCOME = None  # initialized below; hits share one outcome object


def request(state, g, policy, future=None):
    """Serve one request against ``state``, mutating it; returns the outcome."""
    rounds = []
    evicted = []
    hit = False
    for event in serve_events(state, g, policy, future):
        tag = event[0]
        if tag == "rent":
            rounds.append(RentRound(event[1], event[2]))
        elif tag == "evict":
            evicted.append(event[1])
        elif tag == "refresh":
            hit = True
    if hit:
        return _HIT_OUTCOME
    return RequestOutcome(False, g.cost, tuple(rounds), tuple(evicted))


_HIT_OUTCOME = RequestOutcome(True, _FR0, (), ())


@dataclass(frozen=True)
class RunReport:
    """Per-request outcome log plus the total retrieval cost."""

    capacity_k: int
    policy: LandlordPolicy
    outcomes: tuple
    total_cost: Fraction

    @property
    def fault_positions(self):
        return [i for i, out in enumerate(self.outcomes) if not out.was_hit]

    @property
    def fault_count(self):
        return sum(1 for out in self.outcomes if not out.was_hit)


def validate_sequence(seq):
    """Check one id never carries two different (size, cost) pairs."""
    seen = {}
    for i, g in enumerate(seq):
        known = seen.get(g.id)
        if known is None:
            seen[g.id] = (g.size, g.cost)
        elif known != (g.size, g.cost):
            raise ConsistencyError(
                f"request {i}: file {g.id!r} seen as (size={g.size}, cost={g.cost}) "
                f"but previously (size={known[0]}, cost={known[1]})"
            )
    return seen


def run_trace(seq, k, policy, state=None, validate=True):
    """Fold the engine over a request sequence; deterministic for fixed inputs.

    ``validate=False`` skips the id-consistency check, for callers sweeping
    many cache sizes over one already-validated sequence.
    """
    if validate:
        validate_sequence(seq)
    if state is None:
        state = new_cache(k)
    elif state.capacity_k != k:
        raise InvalidParams(
            f"resumed state has capacity {state.capacity_k}, expected {k}")
    future = None
    if policy.selector is EvictionSelector.PESSIMAL_NEXT_REQUEST:
        occurrences = {}
        for i, g in enumerate(seq):
            occurrences.setdefault(g.id, []).append(i)
        future = _FutureView(occurrences)
    outcomes = []
    total = Fraction(0)
    for i, g in enumerate(seq):
        if future is not None:
            future.position = i
        try:
            out = request(state, g, policy, future)
        except RequestTooLarge as exc:
            raise RequestTooLarge(f"request {i}: {exc}", index=i) from None
        outcomes.append(out)
        if not out.was_hit:
            total += out.retrieval_cost_paid
    return RunReport(k, policy, tuple(outcomes), total)
