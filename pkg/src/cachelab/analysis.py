"""Competitive-analysis instruments.

Three groups of tools live here:

* the potential function over a Landlord cache and an optimal cache, plus an
  event-by-event audit that replays both caches side by side and checks the
  bound each event must satisfy for the k/(k-h+1) guarantee to telescope;
* the loose-competitiveness evaluator: which cache sizes k in {1..n} are
  "bad" for an algorithm, i.e. its cost exceeds both c times the optimum and
  epsilon times the total requested cost;
* closed-form threshold formulas for c (deterministic, randomized, the
  underlying technical bound, and the flush-when-full lower bound).

Audits and bad-set tests are exact rational comparisons.  The c-formulas are
plain floating point (about 16 significant digits); they feed thresholds,
never exact-equality tests.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import EvictionSelector, _FutureView, new_cache, run_trace, serve_events, validate_sequence
from .errors import InvalidParams, InvalidSizes
from .offline import DEFAULT_MAX_DISTINCT, DEFAULT_MAX_LENGTH, opt_cost

__all__ = [
    "potential",
    "AuditStep",
    "PotentialAudit",
    "audit_landlord",
    "KRow",
    "BadSetReport",
    "evaluate_loose",
    "landlord_algorithm",
    "bound_c_deterministic",
    "bound_c_randomized",
    "MARKING_ALPHA",
    "MARKING_BETA",
    "marking_bound_c",
    "BoundQuery",
    "bound_c_technical",
    "lower_bound_c",
    "proof_b",
    "holds_trivially",
]

E = math.e

OPT_EVICT = "opt_evict"
OPT_RETRIEVE = "opt_retrieve"
RENT_ROUND = "rent_round"
LANDLORD_EVICT = "landlord_evict"
LANDLORD_RETRIEVE = "landlord_retrieve"
CREDIT_REFRESH = "credit_refresh"


def potential(ll, opt_residents, h, k):
    """(h-1) * sum of resident credits + k * sum over the optimal cache of
    (cost - credit).  Non-residents contribute credit 0.  Zero when both
    caches are empty; never negative."""
    if not 1 <= h <= k:
        raise InvalidSizes(f"need 1 <= h <= k, got h={h}, k={k}")
    credits = sum((credit for _, credit in ll.residents().values()), Fraction(0))
    uncovered = sum((f.cost - ll.credit_of(f.id) for f in opt_residents), Fraction(0))
    return (h - 1) * credits + k * uncovered


@dataclass(frozen=True)
class AuditStep:
    request_index: int
    kind: str
    phi_before: Fraction
    phi_after: Fraction
    bound: Fraction
    satisfied: bool

    @property
    def delta_phi(self):
        return self.phi_after - self.phi_before


@dataclass(frozen=True)
class PotentialAudit:
    """Every event of a side-by-side replay with its verdict.

    Event bounds: an optimal-cache retrieval may raise the potential by at
    most k*cost; a Landlord retrieval must lower it by at least (k-h+1)*cost;
    every other event must not raise it.  When all verdicts hold, the
    telescoped inequality (k-h+1) * landlord_cost <= k * opt_cost follows,
    recorded in ``ratio_certified``.
    """

    h: int
    k: int
    steps: tuple
    landlord_cost: Fraction
    opt_cost: Fraction
    all_satisfied: bool
    phi_nonnegative: bool
    ratio_certified: bool


def audit_landlord(seq, h, k, policy, *, max_distinct=DEFAULT_MAX_DISTINCT,
                   max_length=DEFAULT_MAX_LENGTH):
    """Replay Landlord (cache k) against an optimal schedule (cache h).

    Events are ordered as the accounting argument requires: the optimal cache
    first evicts and retrieves the requested file, then Landlord collects
    rent, evicts, and retrieves (or refreshes credit on a hit).
    """
    if not 1 <= h <= k:
        raise InvalidSizes(f"need 1 <= h <= k, got h={h}, k={k}")
    validate_sequence(seq)
    opt = opt_cost(seq, h, max_distinct=max_distinct, max_length=max_length)
    opt_evictions = dict(opt.witness_schedule)

    state = new_cache(k)
    future = None
    if policy.selector is EvictionSelector.PESSIMAL_NEXT_REQUEST:
        occurrences = {}
        for i, g in enumerate(seq):
            occurrences.setdefault(g.id, []).append(i)
        future = _FutureView(occurrences)

    specs = {g.id: g for g in seq}
    opt_set = set()
    # running aggregates: phi = (h-1)*credit_sum + k*uncovered_sum
    credit_sum = Fraction(0)
    uncovered_sum = Fraction(0)
    size_ll = 0
    size_opt_ll = 0  # total size of files in both caches
    zero = Fraction(0)

    steps = []
    ll_total = zero
    opt_total = zero
    all_ok = True
    phi_ok = True
    phi = zero

    def record(index, kind, bound, new_phi):
        nonlocal phi, all_ok, phi_ok
        ok = new_phi - phi <= bound
        steps.append(AuditStep(index, kind, phi, new_phi, bound, ok))
        all_ok = all_ok and ok
        phi_ok = phi_ok and new_phi >= 0
        phi = new_phi

    for i, g in enumerate(seq):
        if future is not None:
            future.position = i
        if g.id not in opt_set:
            for fid in opt_evictions.get(i, ()):
                f = specs[fid]
                opt_set.discard(fid)
                credit = state.credit_of(fid)
                uncovered_sum -= f.cost - credit
                if fid in state:
                    size_opt_ll -= f.size
                record(i, OPT_EVICT, zero, (h - 1) * credit_sum + k * uncovered_sum)
            opt_set.add(g.id)
            opt_total += g.cost
            uncovered_sum += g.cost - state.credit_of(g.id)
            if g.id in state:
                size_opt_ll += g.size
            record(i, OPT_RETRIEVE, k * g.cost,
                   (h - 1) * credit_sum + k * uncovered_sum)

        for event in serve_events(state, g, policy, future):
            tag = event[0]
            if tag == "rent":
                delta = event[1]
                credit_sum -= delta * size_ll
                uncovered_sum += delta * size_opt_ll
                record(i, RENT_ROUND, zero,
                       (h - 1) * credit_sum + k * uncovered_sum)
            elif tag == "evict":
                fid = event[1]
                if fid in opt_set:
                    size_opt_ll -= specs[fid].size
                size_ll -= specs[fid].size
                # credit was exactly zero, so phi is unchanged
                record(i, LANDLORD_EVICT, zero, phi)
            elif tag == "retrieve":
                ll_total += g.cost
                credit_sum += g.cost
                size_ll += g.size
                if g.id in opt_set:
                    size_opt_ll += g.size
                    uncovered_sum -= g.cost
                record(i, LANDLORD_RETRIEVE, -(k - h + 1) * g.cost,
                       (h - 1) * credit_sum + k * uncovered_sum)
            else:  # refresh
                increase = event[2] - event[1]
                credit_sum += increase
                if g.id in opt_set:
                    uncovered_sum -= increase
                record(i, CREDIT_REFRESH, zero,
                       (h - 1) * credit_sum + k * uncovered_sum)

    if phi != potential(state, [specs[fid] for fid in opt_set], h, k):
        raise AssertionError("incremental potential drifted from its definition")
    if opt_total != opt.min_cost:
        raise AssertionError("optimal replay cost drifted from the search result")

    certified = (k - h + 1) * ll_total <= k * opt_total
    return PotentialAudit(h, k, tuple(steps), ll_total, opt_total,
                          all_ok, phi_ok, certified)


@dataclass(frozen=True)
class KRow:
    alg_cost: Fraction
    opt_cost: Fraction
    total_request_cost: Fraction


@dataclass(frozen=True)
class BadSetReport:
    """Per-k costs and the set of cache sizes violating the loose bound.

    A size k is bad when alg_cost > max(c * opt_cost, epsilon * total
    requested cost), compared exactly.  Sizes smaller than the largest
    request are inapplicable and excluded from both the bad set and the
    fraction's denominator.
    """

    n: int
    epsilon: Fraction
    c: Fraction
    per_k: dict
    bad_ks: frozenset
    inapplicable_ks: frozenset
    bad_fraction: Fraction


def landlord_algorithm(policy):
    """Adapt a Landlord policy into an algorithm handle for evaluate_loose."""
    def run(seq, k):
        return run_trace(seq, k, policy).total_cost
    return run


def evaluate_loose(seq, n, epsilon, c, alg, *, opt_costs=None,
                   max_distinct=DEFAULT_MAX_DISTINCT, max_length=DEFAULT_MAX_LENGTH):
    """Evaluate the loose-competitiveness condition for k in {1..n}.

    ``alg`` is a callable (seq, k) -> cost.  ``opt_costs`` may supply
    precomputed per-k optimal costs (or any upper bounds on them, which makes
    the bad-set test conservative); otherwise the exact offline search runs
    per k.  ``epsilon`` and ``c`` are converted to Fractions so the test is
    an exact comparison.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParams(f"n must be a positive integer, got {n!r}")
    epsilon = Fraction(epsilon)
    c = Fraction(c)
    validate_sequence(seq)
    total = sum((g.cost for g in seq), Fraction(0))
    largest = max((g.size for g in seq), default=1)

    per_k = {}
    bad = set()
    inapplicable = set()
    for k in range(1, n + 1):
        if k < largest:
            inapplicable.add(k)
            continue
        if opt_costs is not None:
            opt_k = Fraction(opt_costs[k])
        else:
            opt_k = opt_cost(seq, k, max_distinct=max_distinct,
                             max_length=max_length).min_cost
        alg_k = Fraction(alg(seq, k))
        per_k[k] = KRow(alg_k, opt_k, total)
        if alg_k > max(c * opt_k, epsilon * total):
            bad.add(k)
    applicable = n - len(inapplicable)
    fraction = Fraction(len(bad), applicable) if applicable else Fraction(0)
    return BadSetReport(n, epsilon, c, per_k, frozenset(bad),
                        frozenset(inapplicable), fraction)


def _check_unit_interval(**named):
    for name, value in named.items():
        if not 0 < value <= 1:
            raise InvalidParams(f"{name} must lie in (0, 1], got {value!r}")


def bound_c_deterministic(epsilon, delta):
    """Loose-competitiveness constant (e/delta) * ln(e/epsilon) guaranteed for
    every k/(k-h+1)-competitive algorithm."""
    epsilon, delta = float(epsilon), float(delta)
    _check_unit_interval(epsilon=epsilon, delta=delta)
    return (E / delta) * math.log(E / epsilon)


def bound_c_randomized(alpha, beta, epsilon, delta):
    """Constant e*alpha + e*beta * ln((1/delta) * ln(e/epsilon)) guaranteed for
    every (alpha + beta * ln(k/(k-h+1)))-competitive algorithm."""
    alpha, beta = float(alpha), float(beta)
    epsilon, delta = float(epsilon), float(delta)
    _check_unit_interval(epsilon=epsilon, delta=delta)
    if alpha < 0 or beta < 0:
        raise InvalidParams("alpha and beta must be non-negative")
    return E * alpha + E * beta * math.log(math.log(E / epsilon) / delta)


# The randomized marking policy is (1 + 2 ln 2 + 2 ln(k/(k-h+1)))-competitive,
# so these constants plug straight into bound_c_randomized.
MARKING_ALPHA = 1 + 2 * math.log(2)
MARKING_BETA = 2.0


def marking_bound_c(epsilon, delta):
    return bound_c_randomized(MARKING_ALPHA, MARKING_BETA, epsilon, delta)


@dataclass(frozen=True)
class BoundQuery:
    """Competitive-ratio shape tau for the technical bound.

    ``tau_kind`` is "ratio" for tau(k, d) = k/(d+1) or "log" for
    tau(k, d) = alpha + beta * ln(k/(d+1)); ``b`` is the spacing parameter,
    0 < b < delta*n - 1.
    """

    tau_kind: str
    b: float
    alpha: float = 0.0
    beta: float = 0.0

    def tau(self, k, d):
        if self.tau_kind == "ratio":
            return k / (d + 1)
        if self.tau_kind == "log":
            return self.alpha + self.beta * math.log(k / (d + 1))
        raise InvalidParams(f"unknown tau_kind {self.tau_kind!r}")


def bound_c_technical(query, n, epsilon, delta):
    """tau(n, b) * epsilon ** (-(b+1) / (delta*n - b - 1)).

    Any tau(k, k-h)-competitive algorithm (tau increasing in k, decreasing in
    k-h) is loosely c-competitive for this c; the deterministic and
    randomized constants are instances of it under the right b.
    """
    epsilon, delta = float(epsilon), float(delta)
    _check_unit_interval(epsilon=epsilon, delta=delta)
    b = float(query.b)
    if b <= 0 or b >= delta * n:
        raise InvalidParams(f"need 0 < b < delta*n, got b={b}, delta*n={delta * n}")
    denom = delta * n - b - 1
    if denom <= 0:
        raise InvalidParams(
            f"need b < delta*n - 1 for a positive exponent denominator, got b={b}"
        )
    return query.tau(n, b) * epsilon ** (-(b + 1) / denom)


def lower_bound_c(epsilon, delta):
    """(1/(8*delta)) * log2(1/(2*epsilon)): no flush-when-full-like policy is
    loosely c-competitive at this c (for epsilon < 1, delta < 1/2)."""
    epsilon, delta = float(epsilon), float(delta)
    if not 0 < epsilon < 1:
        raise InvalidParams(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not 0 < delta < 0.5:
        raise InvalidParams(f"delta must lie in (0, 1/2), got {delta!r}")
    return math.log2(1 / (2 * epsilon)) / (8 * delta)


def proof_b(epsilon, delta, n):
    """The spacing parameter delta*n / ln(e/epsilon) - 1 used to derive the
    deterministic and randomized constants from the technical bound."""
    epsilon, delta = float(epsilon), float(delta)
    _check_unit_interval(epsilon=epsilon, delta=delta)
    return delta * n / math.log(E / epsilon) - 1


def holds_trivially(epsilon, delta, n):
    """True when the spacing parameter is non-positive: then the constant is
    at least n, and plain k-competitiveness already implies the loose bound
    for every k <= n."""
    return proof_b(epsilon, delta, n) <= 0
