"""Seeded random process expressions and transition systems for testing."""
from __future__ import annotations

import random

from .lts import Lts
from .syntax import NIL, TAU, Choice, Iter, Merge, Prefix

ACTIONS = ("a", "b", "c")


def random_expr(rng: random.Random, depth: int, actions=ACTIONS, iteration="any",
                tau_weight=0.2):
    """A random expression of nesting depth at most ``depth``.

    ``iteration`` is ``"any"`` (iterate any action), ``"tau"`` (iterate only
    ``tau``, which keeps every expression weakly bounded) or ``"none"``.
    """
    if iteration not in ("any", "tau", "none"):
        raise ValueError(f"unknown iteration mode {iteration!r}")

    def action():
        return TAU if rng.random() < tau_weight else rng.choice(actions)

    def gen(d):
        if d <= 0:
            return NIL if rng.random() < 0.3 else Prefix(rng.choice(actions), NIL)
        kinds = ["nil", "prefix", "prefix", "choice", "merge"]
        if iteration != "none":
            kinds.append("iter")
        kind = rng.choice(kinds)
        if kind == "nil":
            return NIL
        if kind == "prefix":
            return Prefix(action(), gen(d - 1))
        if kind == "iter":
            a = TAU if iteration == "tau" else action()
            return Iter(a, gen(d - 1))
        left, right = gen(d - 1), gen(d - 1)
        return Choice(left, right) if kind == "choice" else Merge(left, right)

    return gen(depth)


def random_lts(rng: random.Random, n: int, actions=("a", "b"), edge_prob=None,
               tau_prob=0.35) -> Lts:
    """A random LTS on ``n`` states with roughly two transitions per state."""
    if edge_prob is None:
        edge_prob = min(1.0, 2.0 / max(n, 1))
    edges = set()
    for s in range(n):
        for t in range(n):
            if rng.random() < edge_prob:
                a = TAU if rng.random() < tau_prob else rng.choice(actions)
                edges.add((s, a, t))
    return Lts.from_edges(n, edges)
