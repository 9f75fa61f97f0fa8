"""Command-line front end.

Exit status: 0 on success, 1 when an analysis reports a mismatch (a
failing ``repro`` check, non-equivalent processes for ``equiv``) or a
state limit is hit, 2 on usage errors including unparsable expressions.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from collections import Counter

from .decomp import check_unique, parallel_decompositions
from .equiv import Semantics, check_relation, equivalent, verdict_json
from .generators import random_expr
from .lts import DEFAULT_STATE_LIMIT, StateLimitExceeded, build_lts, explore, export_dot
from .norms import INF, classify
from .order import check_axioms, power_cancellation, reachability_order
from .quotient import process_quotient
from .syntax import NIL, ParseError, format_expr, merge_all, parse_expr

EX_OK, EX_MISMATCH, EX_USAGE = 0, 1, 2

P_TEXT = "a*tau.b.0"
Q_TEXT = "b.0"


class UsageError(Exception):
    pass


def _read_expr(arg: str):
    """``-`` reads standard input, ``@path`` reads a file, anything else is literal."""
    if arg == "-":
        text = sys.stdin.read()
    elif arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    else:
        text = arg
    return parse_expr(text)


def _fmt_num(x):
    return "inf" if x == INF else str(int(x))


def _emit(args, text, payload):
    if args.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# --------------------------------------------------------------------------
# subcommands

def cmd_parse(args):
    e = _read_expr(args.expr)
    _emit(args, format_expr(e), {"expr": format_expr(e)})
    return EX_OK


def cmd_lts(args):
    lts = build_lts(_read_expr(args.expr), args.state_limit)
    if args.output == "json":
        print(json.dumps(lts.to_json(), indent=2))
    else:
        print(export_dot(lts), end="")
    return EX_OK


def cmd_equiv(args):
    p, q = _read_expr(args.left), _read_expr(args.right)
    verdict = verdict_json(p, q, args.semantics, args.state_limit)
    word = "equivalent" if verdict["equivalent"] else "not equivalent"
    _emit(args, f"{word} ({args.semantics})", verdict)
    return EX_OK if verdict["equivalent"] else EX_MISMATCH


def cmd_norm(args):
    c = classify(_read_expr(args.expr), args.semantics, args.state_limit)
    _emit(args, _fmt_num(c.weak_norm), {"weak_norm": c.to_json()["weak_norm"]})
    return EX_OK


def cmd_classify(args):
    c = classify(_read_expr(args.expr), args.semantics, args.state_limit)
    text = "\n".join([
        f"weakly normed:  {c.weakly_normed}",
        f"totally normed: {c.totally_normed}",
        f"weakly bounded: {c.weakly_bounded}",
        f"weak norm:      {_fmt_num(c.weak_norm)}",
        f"weak depth:     {_fmt_num(c.weak_depth)}",
    ])
    _emit(args, text, c.to_json())
    return EX_OK


def cmd_decompose(args):
    verdict = check_unique(_read_expr(args.expr), args.semantics, args.state_limit)
    _emit(args, str(verdict), verdict.to_json())
    return EX_OK


def cmd_axioms(args):
    try:
        q = process_quotient(_read_expr(args.expr), args.semantics, args.state_limit,
                             normed_only=args.normed_only)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise UsageError(str(exc)) from None
    report = check_axioms(q, reachability_order(q))
    if args.output == "json":
        payload = report.to_json()
        payload["classes"] = {str(c): q.label(c) for c in q.elements}
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EX_OK
    lines = ["classes: " + ", ".join(f"{c}={q.label(c)}" for c in q.elements)]
    for name, result in report.to_json().items():
        if isinstance(result, bool):
            lines.append(f"{name}: {result}")
            continue
        line = f"{name}: {result['status']}"
        witness = getattr(report, name).witness
        if witness is not None:
            shown = [q.label(w) if name != "power_cancellation" or i != 1 else str(w)
                     for i, w in enumerate(witness)]
            line += " (witness: " + ", ".join(shown) + ")"
        lines.append(line)
    print("\n".join(lines))
    return EX_OK


# --------------------------------------------------------------------------
# reproduction of the worked examples

def _pair_graph_checks(limit):
    p = parse_expr(P_TEXT)
    lts = build_lts(merge_all([p, p]), limit)
    counts = Counter(a for _, a, _ in lts.transitions)
    yield "P || P has 9 states", len(lts) == 9
    yield "P || P has 17 transitions", len(lts.transitions) == 17
    yield "5 a-loops, 6 tau-steps, 6 b-steps", counts == Counter(a=5, tau=6, b=6)
    yield "every a-step is a loop", all(s == t for s, a, t in lts.transitions if a == "a")


def _nil_iteration_checks(limit):
    e = parse_expr("a*0")
    for s in (Semantics.BRANCHING, Semantics.WEAK):
        yield f"a*0 and a*0 || a*0 are {s} equivalent", \
            equivalent(e, merge_all([e, e]), s, limit)
        yield f"a*0 has no decomposition ({s})", \
            not parallel_decompositions(e, s, limit).classes
        q = process_quotient(e, s, limit)
        order = reachability_order(q)
        report = check_axioms(q, order)
        yield f"[a*0] is minimal ({s})", not order.strictly_below(q.root_class)
        yield f"identity is not least ({s})", report.least_identity.status == "fail"
        yield f"order is not Archimedean ({s})", report.archimedean.status == "fail"


def _iterated_pair_checks(limit):
    p, q = parse_expr(P_TEXT), parse_expr(Q_TEXT)
    pp, pq, qp = merge_all([p, p]), merge_all([p, q]), merge_all([q, p])
    for s in (Semantics.BRANCHING, Semantics.WEAK):
        yield f"P || P and P || Q are {s} equivalent", equivalent(pp, pq, s, limit)
        yield f"P and Q are not {s} equivalent", not equivalent(p, q, s, limit)
        c_p, c_q = classify(p, s, limit), classify(q, s, limit)
        yield f"|P| = |Q| = 1 ({s})", c_p.weak_norm == c_q.weak_norm == 1
        verdict = check_unique(pp, s, limit)
        expected = {(P_TEXT, P_TEXT), (P_TEXT, Q_TEXT)}
        found = {tuple(sorted(map(format_expr, d), key=lambda t: t != P_TEXT))
                 for d in (verdict.parts, verdict.alt_parts or ())}
        yield f"P || P has decompositions {{P,P}} and {{P,Q}} ({s})", \
            verdict.status == "multiple" and found == expected

    lts = build_lts(pp, limit)
    idx = lts.index
    rel = [(pp, pq), (pp, qp), (pq, qp),
           (merge_all([p, NIL]), merge_all([NIL, p])),
           (merge_all([q, NIL]), merge_all([NIL, q]))]
    pairs = {(idx(x), idx(y)) for x, y in rel} | {(i, i) for i in range(len(lts))}
    for s in (Semantics.BRANCHING, Semantics.WEAK):
        yield f"the five-pair relation is a {s} bisimulation", \
            check_relation(lts, pairs, s) is None


def _props_checks(limit, seed, count=50):
    rng = random.Random(seed)
    checked = 0
    unique = True
    cancel = True
    while checked < count:
        e = random_expr(rng, 4, iteration="tau")
        try:
            explore([e], 300)
        except StateLimitExceeded:
            continue
        checked += 1
        for s in (Semantics.BRANCHING, Semantics.WEAK):
            unique &= check_unique(e, s, limit).status == "unique"
            q = process_quotient(e, s, limit)
            cancel &= power_cancellation(q, reachability_order(q)).ok
    yield f"{count} random weakly bounded expressions decompose uniquely", unique
    yield f"power cancellation holds on their quotients", cancel


REPRO = {"fig1": _pair_graph_checks, "ex1": _nil_iteration_checks, "ex2": _iterated_pair_checks}


def cmd_repro(args):
    targets = list(REPRO) if args.target == "all" else [args.target]
    results = []
    for t in targets:
        results += [(t, name, bool(ok)) for name, ok in REPRO[t](args.state_limit)]
    if args.target == "all":
        results += [("props", name, bool(ok))
                    for name, ok in _props_checks(args.state_limit, args.seed)]
    if args.output == "json":
        print(json.dumps([{"target": t, "check": n, "ok": ok} for t, n, ok in results],
                         indent=2))
    else:
        for t, name, ok in results:
            print(f"{'ok  ' if ok else 'FAIL'} [{t}] {name}")
    return EX_OK if all(ok for _, _, ok in results) else EX_MISMATCH


# --------------------------------------------------------------------------
# argument handling

def _state_limit_default():
    raw = os.environ.get("PARDEC_STATE_LIMIT")
    if raw is None:
        return DEFAULT_STATE_LIMIT
    try:
        return _positive_int(raw)
    except argparse.ArgumentTypeError:
        raise UsageError(f"PARDEC_STATE_LIMIT must be a positive integer, got {raw!r}")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser(state_limit=DEFAULT_STATE_LIMIT) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semantics", type=Semantics, default=Semantics.BRANCHING,
                        choices=list(Semantics),
                        help="equivalence used for analyses (default: branching)")
    common.add_argument("--state-limit", type=_positive_int, default=state_limit,
                        help=f"abort after this many states (default: {state_limit}; "
                             "env PARDEC_STATE_LIMIT)")
    common.add_argument("--output", choices=["text", "json", "dot"], default="text",
                        help="output format (default: text; dot applies to lts)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for the randomised checks of 'repro all' (default: 0)")

    parser = argparse.ArgumentParser(
        prog="pardec",
        description="Parallel decomposition of processes up to branching and weak "
                    "bisimilarity. EXPR may be '-' (stdin) or '@file'.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, *positional):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "print the canonical form of EXPR", "expr")
    add("lts", cmd_lts, "transition graph of EXPR as DOT or JSON", "expr")
    add("equiv", cmd_equiv, "decide whether two expressions are equivalent", "left", "right")
    add("norm", cmd_norm, "weak norm of EXPR", "expr")
    add("classify", cmd_classify, "normedness and boundedness of EXPR", "expr")
    add("decompose", cmd_decompose, "parallel decompositions of EXPR", "expr")
    ax = add("axioms", cmd_axioms, "decomposition-order axioms on the quotient below EXPR",
             "expr")
    ax.add_argument("--normed-only", action="store_true",
                    help="keep only weakly normed classes (the totally normed monoid)")
    rp = add("repro", cmd_repro, "re-check the worked examples")
    rp.add_argument("target", choices=[*REPRO, "all"])
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser(_state_limit_default())
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EX_USAGE if exc.code not in (0, None) else EX_OK
        args.semantics = Semantics(args.semantics)
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"pardec: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except StateLimitExceeded as exc:
        print(f"pardec: {exc}", file=sys.stderr)
        return EX_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
