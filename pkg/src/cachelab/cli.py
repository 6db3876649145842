"""Command-line harness: run, sweep, opt, audit, gen, bounds.

Exit codes: 0 on success, 1 when an audit or structure verification reports a
violation, 2 on usage or input errors.  Reports are byte-deterministic for
fixed inputs, seed, and format version.
"""

import argparse
import sys
from fractions import Fraction

from . import advgen, analysis, offline
from .core import (
    EvictionGreediness,
    EvictionSelector,
    LandlordPolicy,
    run_trace,
)
from .errors import CacheLabError
from .paging import PagingAlg, simulate_paging
from .reports import ExperimentReport
from .trace import load_trace, paging_sequence, save_trace

_SELECTORS = {
    "all": EvictionSelector.ALL_ZERO,
    "lru": EvictionSelector.LRU_ORDER,
    "fifo": EvictionSelector.FIFO_ORDER,
    "pessimal": EvictionSelector.PESSIMAL_NEXT_REQUEST,
}
_GREEDINESS = {
    "all-zero": EvictionGreediness.EVICT_ALL_ZERO,
    "until-room": EvictionGreediness.EVICT_UNTIL_ROOM,
}


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational literal") from None


def _policy_from(args):
    return LandlordPolicy(
        refresh_lambda=args.refresh_lambda,
        selector=_SELECTORS[args.selector],
        greediness=_GREEDINESS[args.greediness],
    )


def _policy_params(args):
    return {
        "lambda": args.refresh_lambda,
        "selector": args.selector,
        "greediness": args.greediness,
    }


def _emit(report, args):
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _add_report_flags(parser, include_out=True):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    if include_out:
        parser.add_argument("--out", help="write the report here instead of stdout")


def _add_policy_flags(parser):
    parser.add_argument("--lambda", dest="refresh_lambda", type=_fraction,
                        default=Fraction(1), help="credit refresh weight in [0,1]")
    parser.add_argument("--selector", choices=sorted(_SELECTORS), default="lru")
    parser.add_argument("--greediness", choices=sorted(_GREEDINESS), default="until-room")


def cmd_run(args):
    seq = load_trace(args.trace)
    policy = _policy_from(args)
    report = run_trace(seq, args.cache_size, policy)
    rows = []
    for i, (g, out) in enumerate(zip(seq, report.outcomes)):
        rows.append({
            "index": i,
            "id": g.id,
            "hit": out.was_hit,
            "cost_paid": out.retrieval_cost_paid,
            "rent_rounds": len(out.rent_rounds),
            "evicted": "|".join(out.evicted),
        })
    params = {"trace": args.trace, "cache_size": args.cache_size,
              "total_cost": report.total_cost, "faults": report.fault_count,
              **_policy_params(args)}
    _emit(ExperimentReport("run", params,
                           ("index", "id", "hit", "cost_paid", "rent_rounds", "evicted"),
                           tuple(rows)), args)
    return 0


def _algorithm_handle(args, seq):
    name = args.alg
    if name == "landlord":
        return analysis.landlord_algorithm(_policy_from(args))
    if name in ("lru", "fifo", "fwf"):
        items = [g.id for g in seq]
        alg = PagingAlg(name)

        def run_paging(_seq, k):
            faults, _ = simulate_paging(items, k, alg)
            return Fraction(faults)

        if all(g.size == 1 and g.cost == 1 for g in seq):
            return run_paging
        return analysis.landlord_algorithm(
            LandlordPolicy.lru() if name == "lru"
            else LandlordPolicy.fifo() if name == "fifo"
            else LandlordPolicy.fwf())
    if name == "marking":
        if args.seed is None:
            raise CacheLabError("--alg marking needs --seed")
        if not all(g.size == 1 and g.cost == 1 for g in seq):
            raise CacheLabError("--alg marking is defined for paging traces only")
        items = [g.id for g in seq]

        def run_marking(_seq, k):
            faults, _ = simulate_paging(items, k, PagingAlg.MARKING, seed=args.seed)
            return Fraction(faults)

        return run_marking
    # name == "opt": the baseline itself
    return lambda _seq, k: offline.opt_cost(seq, k).min_cost


def cmd_sweep(args):
    seq = load_trace(args.trace)
    alg = _algorithm_handle(args, seq)
    c = analysis.bound_c_deterministic(args.epsilon, args.delta)
    report = analysis.evaluate_loose(seq, args.range, args.epsilon, Fraction(c), alg)
    rows = []
    for k in range(1, args.range + 1):
        if k in report.inapplicable_ks:
            rows.append({"k": k, "alg_cost": "", "opt_cost": "", "ratio": "",
                         "total_request_cost": "", "bad": "inapplicable"})
            continue
        row = report.per_k[k]
        ratio = float(row.alg_cost / row.opt_cost) if row.opt_cost else float("inf")
        rows.append({
            "k": k,
            "alg_cost": row.alg_cost,
            "opt_cost": row.opt_cost,
            "ratio": ratio,
            "total_request_cost": row.total_request_cost,
            "bad": k in report.bad_ks,
        })
    params = {"trace": args.trace, "range": args.range, "epsilon": args.epsilon,
              "delta": args.delta, "c": c, "alg": args.alg,
              "bad_fraction": report.bad_fraction, **_policy_params(args)}
    _emit(ExperimentReport("sweep", params,
                           ("k", "alg_cost", "opt_cost", "ratio", "total_request_cost", "bad"),
                           tuple(rows), seed=args.seed), args)
    return 0


def cmd_opt(args):
    seq = load_trace(args.trace)
    if all(g.size == 1 and g.cost == 1 for g in seq):
        cost = offline.opt_cost_fast_paging(seq, args.cache_size)
        witness = ()
    else:
        result = offline.opt_cost(seq, args.cache_size)
        cost, witness = result.min_cost, result.witness_schedule
    rows = [{"index": i, "evicted": "|".join(ev)} for i, ev in witness]
    params = {"trace": args.trace, "cache_size": args.cache_size, "min_cost": cost}
    _emit(ExperimentReport("opt", params, ("index", "evicted"), tuple(rows)), args)
    return 0


def cmd_audit(args):
    seq = load_trace(args.trace)
    h = args.handicap if args.handicap is not None else args.cache_size
    audit = analysis.audit_landlord(seq, h, args.cache_size, _policy_from(args))
    rows = [{
        "index": step.request_index,
        "kind": step.kind,
        "phi_before": step.phi_before,
        "phi_after": step.phi_after,
        "bound": step.bound,
        "satisfied": step.satisfied,
    } for step in audit.steps]
    params = {"trace": args.trace, "cache_size": args.cache_size, "handicap": h,
              "landlord_cost": audit.landlord_cost, "opt_cost": audit.opt_cost,
              "all_satisfied": audit.all_satisfied,
              "phi_nonnegative": audit.phi_nonnegative,
              "ratio_certified": audit.ratio_certified, **_policy_params(args)}
    _emit(ExperimentReport("audit", params,
                           ("index", "kind", "phi_before", "phi_after", "bound", "satisfied"),
                           tuple(rows)), args)
    ok = audit.all_satisfied and audit.phi_nonnegative and audit.ratio_certified
    return 0 if ok else 1


def cmd_gen(args):
    s = advgen.build_sequence(args.epsilon, args.delta, args.range)
    structure = advgen.verify_structure(s)
    save_trace(paging_sequence(s.items), args.out)
    rows = [{"level": i, "k": k} for i, k in enumerate(s.k_levels)]
    params = {"epsilon": args.epsilon, "delta": args.delta, "range": args.range,
              "c": s.c, "length": len(s.items), "distinct": len(s.level_of_item),
              "out": args.out, "violations": len(structure.violations),
              "checks": structure.checks}
    report = ExperimentReport("gen", params, ("level", "k"), tuple(rows))
    sys.stdout.write(report.render(args.format))
    if structure.violations:
        for violation in structure.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return 1
    return 0


def cmd_bounds(args):
    rows = [{"bound": "deterministic",
             "value": analysis.bound_c_deterministic(args.epsilon, args.delta)}]
    alpha = args.alpha if args.alpha is not None else analysis.MARKING_ALPHA
    beta = args.beta if args.beta is not None else analysis.MARKING_BETA
    rows.append({"bound": "randomized",
                 "value": analysis.bound_c_randomized(alpha, beta, args.epsilon, args.delta)})
    if 0 < float(args.epsilon) < 1 and 0 < float(args.delta) < 0.5:
        rows.append({"bound": "lower",
                     "value": analysis.lower_bound_c(args.epsilon, args.delta)})
    if args.range is not None:
        b = analysis.proof_b(args.epsilon, args.delta, args.range)
        if b > 0:
            query = analysis.BoundQuery("ratio", b)
            rows.append({"bound": "technical_ratio",
                         "value": analysis.bound_c_technical(
                             query, args.range, args.epsilon, args.delta)})
            query = analysis.BoundQuery("log", b, alpha=alpha, beta=beta)
            rows.append({"bound": "technical_log",
                         "value": analysis.bound_c_technical(
                             query, args.range, args.epsilon, args.delta)})
    params = {"epsilon": args.epsilon, "delta": args.delta,
              "alpha": alpha, "beta": beta, "range": args.range}
    _emit(ExperimentReport("bounds", params, ("bound", "value"), tuple(rows)), args)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cachelab",
        description="File-caching policy engine and competitive-analysis harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the Landlord engine over a trace")
    p_run.add_argument("--trace", required=True)
    p_run.add_argument("--cache-size", type=int, required=True)
    _add_policy_flags(p_run)
    _add_report_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="bad-set sweep over k in {1..n}")
    p_sweep.add_argument("--trace", required=True)
    p_sweep.add_argument("--range", type=int, required=True, metavar="N")
    p_sweep.add_argument("--epsilon", type=_fraction, required=True)
    p_sweep.add_argument("--delta", type=_fraction, required=True)
    p_sweep.add_argument("--alg", default="landlord",
                         choices=("landlord", "lru", "fifo", "fwf", "marking", "opt"))
    p_sweep.add_argument("--seed", type=int, help="required for --alg marking")
    _add_policy_flags(p_sweep)
    _add_report_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_opt = sub.add_parser("opt", help="exact offline minimum cost")
    p_opt.add_argument("--trace", required=True)
    p_opt.add_argument("--cache-size", type=int, required=True)
    _add_report_flags(p_opt)
    p_opt.set_defaults(func=cmd_opt)

    p_audit = sub.add_parser("audit", help="potential-function audit of a run")
    p_audit.add_argument("--trace", required=True)
    p_audit.add_argument("--cache-size", type=int, required=True,
                         help="Landlord's cache size k")
    p_audit.add_argument("--handicap", type=int,
                         help="optimal cache size h (default: k)")
    _add_policy_flags(p_audit)
    _add_report_flags(p_audit)
    p_audit.set_defaults(func=cmd_audit)

    p_gen = sub.add_parser("gen", help="generate the adversarial trace")
    p_gen.add_argument("--epsilon", type=_fraction, required=True)
    p_gen.add_argument("--delta", type=_fraction, required=True)
    p_gen.add_argument("--range", type=int, required=True, metavar="N")
    p_gen.add_argument("--out", required=True, help="trace file to write")
    _add_report_flags(p_gen, include_out=False)
    p_gen.set_defaults(func=cmd_gen)

    p_bounds = sub.add_parser("bounds", help="closed-form threshold constants")
    p_bounds.add_argument("--epsilon", type=_fraction, required=True)
    p_bounds.add_argument("--delta", type=_fraction, required=True)
    p_bounds.add_argument("--alpha", type=float)
    p_bounds.add_argument("--beta", type=float)
    p_bounds.add_argument("--range", type=int, metavar="N")
    _add_report_flags(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CacheLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
