import random

import pytest

from pardec.decomp import (check_unique, is_indecomposable, is_totally_normed,
                           parallel_decompositions, part_bound)
from pardec.equiv import Semantics, equivalent
from pardec.generators import random_expr
from pardec.lts import StateLimitExceeded, build_lts, explore
from pardec.norms import classify
from pardec.quotient import process_quotient
from pardec.syntax import NIL, TAU, Merge, Prefix, format_expr, merge_all, parse_expr

B, W = Semantics.BRANCHING, Semantics.WEAK


def texts(parts):
    return sorted(format_expr(p) for p in parts)


def small_exprs(seed, count, cap=150, **kw):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        e = random_expr(rng, 4, **kw)
        try:
            explore([e], cap)
        except StateLimitExceeded:
            continue
        out.append(e)
    return out


@pytest.mark.parametrize("text, semantics, expected", [
    ("b.0", B, True), ("a*tau.b.0", B, True), ("0", B, False), ("0", W, False),
    ("a.0 || b.0", B, False), ("tau*0", W, False), ("a.b.0", W, True),
])
def test_is_indecomposable(text, semantics, expected):
    assert is_indecomposable(parse_expr(text), semantics) is expected


def test_iterated_pair(P, Q):
    for s in (B, W):
        pd = parallel_decompositions(Merge(P, P), s)
        got = {tuple(texts(d)) for d in pd.expressions()}
        assert got == {("a*tau.b.0", "a*tau.b.0"), ("a*tau.b.0", "b.0")}
        assert pd.exact
        v = check_unique(Merge(P, P), s)
        assert v.status == "multiple"
        assert {tuple(texts(v.parts)), tuple(texts(v.alt_parts))} == got


def test_nil_and_iteration_of_nil():
    pd = parallel_decompositions(NIL)
    assert [len(d) for d in pd.classes] == [0]
    v = check_unique(parse_expr("a*0"))
    assert v.status == "none" and not v.exact
    assert parallel_decompositions(parse_expr("a*0")).classes == ()


def test_unique_examples():
    v = check_unique(parse_expr("a.0 || (b.0 + c.0)"))
    assert v.status == "unique" and texts(v.parts) == ["a.0", "b.0 + c.0"] and v.exact
    v = check_unique(parse_expr("tau*0"), W)
    assert v.status == "unique" and v.parts == ()
    v = check_unique(parse_expr("a.0 || a.0 || b.0"), W)
    assert texts(v.parts) == ["a.0", "a.0", "b.0"]


def test_verdict_rendering(P):
    v = check_unique(Merge(P, P))
    assert str(v).startswith("multiple: {")
    data = v.to_json()
    assert data["status"] == "multiple" and len(data["alt_parts"]) == 2
    assert str(check_unique(parse_expr("a*0"))).startswith("none")
    assert check_unique(parse_expr("a.0")).to_json() == {
        "status": "unique", "semantics": "branching", "parts": ["a.0"], "exact": True}


def test_recomposition():
    for e in small_exprs(101, 40, iteration="any"):
        for s in (B, W):
            for parts in parallel_decompositions(e, s).expressions():
                assert equivalent(merge_all(parts), e, s)
                for p in parts:
                    assert is_indecomposable(p, s)


def test_uniqueness_on_bounded_expressions():
    for e in small_exprs(103, 100, iteration="tau"):
        for s in (B, W):
            v = check_unique(e, s)
            assert v.status == "unique" and v.exact, format_expr(e)


def test_cancellation():
    rng = random.Random(107)
    pool = small_exprs(109, 30, cap=40, iteration="tau")
    for _ in range(60):
        p, q, r = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        if rng.random() < 0.5:
            q = Prefix(TAU, p)  # branching and weakly equivalent to p
        for s in (B, W):
            if equivalent(Merge(p, r), Merge(q, r), s):
                assert equivalent(p, q, s)


def test_totally_normed_have_decompositions():
    found = 0
    for e in small_exprs(113, 120, iteration="any"):
        for s in (B, W):
            q = process_quotient(e, s)
            if is_totally_normed(q):
                found += 1
                assert parallel_decompositions(e, s).classes, format_expr(e)
    assert found >= 50


def test_component_reachability():
    rng = random.Random(127)
    checked = 0
    while checked < 60:
        q, r = random_expr(rng, 3), random_expr(rng, 3)
        if not (classify(q).weakly_normed and classify(r).weakly_normed):
            continue
        checked += 1
        lts = build_lts(Merge(q, r))
        for s in (B, W):
            assert any(equivalent(state, q, s) for state in lts.states)


def test_part_bound_uses_depth_then_norm(P):
    q = process_quotient(parse_expr("a.0 || b.c.0"))
    assert part_bound(q) == (3, True)
    q = process_quotient(Merge(P, P))
    assert part_bound(q) == (2, True)
    q = process_quotient(parse_expr("a*0"))
    assert part_bound(q)[1] is False
