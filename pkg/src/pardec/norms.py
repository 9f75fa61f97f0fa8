"""Weak norm, weak depth and the normedness/boundedness classification.

Norm and depth values are ints, or ``math.inf`` when no finite value
exists (inf absorbs under addition, as floats do).
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass

from ._graph import reachable, sccs
from .equiv import Semantics, bisim
from .lts import DEFAULT_STATE_LIMIT, Lts, explore
from .syntax import NIL, TAU, ProcessExpr

INF = math.inf


def weak_norms(lts: Lts) -> list:
    """Weak norm of every state: fewest visible steps to a deadlock.

    0/1 breadth-first search backwards from the deadlocked states
    (tau edges cost 0, visible edges cost 1).
    """
    n = len(lts)
    pred = [[] for _ in range(n)]
    for s, a, t in lts.transitions:
        pred[t].append((s, 0 if a == TAU else 1))
    dist = [INF] * n
    queue = deque()
    for s in range(n):
        if lts.deadlocked(s):
            dist[s] = 0
            queue.append(s)
    while queue:
        t = queue.popleft()
        for s, w in pred[t]:
            d = dist[t] + w
            if d < dist[s]:
                dist[s] = d
                if w == 0:
                    queue.appendleft(s)
                else:
                    queue.append(s)
    return dist


def weak_norm(lts: Lts, s: int):
    return weak_norms(lts)[s]


def weak_depths(lts: Lts) -> list:
    """Weak depth of every state: most visible steps along any path.

    Infinite for states that reach a cycle carrying a visible label;
    otherwise a longest path over the strongly connected components,
    whose internal edges are then all tau.
    """
    n = len(lts)
    adj = [[t for _, t in lts.succ[s]] for s in range(n)]
    comps = sccs(n, adj)
    comp_of = [0] * n
    for c, comp in enumerate(comps):
        for s in comp:
            comp_of[s] = c
    depth = [0] * len(comps)
    for c, comp in enumerate(comps):  # successors first
        best = 0
        for s in comp:
            for a, t in lts.succ[s]:
                w = 0 if a == TAU else 1
                if comp_of[t] == c:
                    if w:
                        best = INF
                else:
                    best = max(best, depth[comp_of[t]] + w)
        depth[c] = best
    return [depth[comp_of[s]] for s in range(n)]


def weak_depth(lts: Lts, s: int):
    return weak_depths(lts)[s]


@dataclass(frozen=True)
class Classification:
    weakly_normed: bool
    totally_normed: bool
    weakly_bounded: bool
    weak_norm: float
    weak_depth: float

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("weak_norm", "weak_depth"):
            if d[k] == INF:
                d[k] = "inf"
        return d


def nil_equivalent_states(lts: Lts, semantics=Semantics.BRANCHING) -> set:
    """States of ``lts`` equivalent to ``0``.  ``lts`` must contain ``0``."""
    part = bisim(lts, semantics)
    zero = lts.index(NIL)
    return {s for s in range(len(lts)) if part.same(s, zero)}


def classify(e: ProcessExpr, semantics=Semantics.BRANCHING,
             state_limit=DEFAULT_STATE_LIMIT) -> Classification:
    lts = explore([e, NIL], state_limit)
    root = lts.roots[0]
    reach = reachable([[t for _, t in out] for out in lts.succ], root)
    norms = weak_norms(lts)
    depth = weak_depths(lts)[root]
    normed = norms[root] != INF
    total = False
    if normed:
        zero_like = nil_equivalent_states(lts, semantics)
        total = all(s in zero_like for s in reach if norms[s] == 0)
    return Classification(normed, total, depth != INF, norms[root], depth)

