"""Labelled transition systems generated by the structural operational rules."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .syntax import TAU, Choice, Iter, Merge, Nil, Prefix, ProcessExpr, format_expr

DEFAULT_STATE_LIMIT = 100_000


class StateLimitExceeded(RuntimeError):
    def __init__(self, limit, count):
        self.limit = limit
        self.count = count
        super().__init__(f"more than {limit} states (explored {count} so far)")


@lru_cache(maxsize=200_000)
def successors(e: ProcessExpr) -> frozenset:
    """All pairs ``(action, target)`` with ``e --action--> target``."""
    if isinstance(e, Nil):
        return frozenset()
    if isinstance(e, Prefix):
        return frozenset({(e.action, e.body)})
    if isinstance(e, Choice):
        return successors(e.left) | successors(e.right)
    if isinstance(e, Merge):
        left = {(a, Merge(t, e.right)) for a, t in successors(e.left)}
        right = {(a, Merge(e.left, t)) for a, t in successors(e.right)}
        return frozenset(left | right)
    if isinstance(e, Iter):
        return frozenset({(e.action, e)}) | successors(e.body)
    raise TypeError(f"not a process expression: {e!r}")


@dataclass(frozen=True)
class Lts:
    """A finite LTS over indexed states.

    ``states[i]`` is whatever the state stands for (a process expression
    for generated systems, an arbitrary label for hand-built ones).
    ``transitions`` is a sorted tuple of ``(source, action, target)``.
    """
    states: tuple
    initial: int
    transitions: tuple
    roots: tuple = field(default=())

    def __post_init__(self):
        n = len(self.states)
        if not 0 <= self.initial < max(n, 1):
            raise ValueError("initial state out of range")
        for s, _, t in self.transitions:
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"transition ({s}, {t}) out of range")

    @classmethod
    def from_edges(cls, n, edges, initial=0, states=None):
        """Build an LTS from raw edges; states default to ``0..n-1``."""
        states = tuple(range(n)) if states is None else tuple(states)
        return cls(states, initial, tuple(sorted(set(edges))), (initial,))

    def __len__(self):
        return len(self.states)

    @cached_property
    def succ(self) -> list:
        """``succ[s]`` lists ``(action, target)`` in sorted order."""
        out = [[] for _ in self.states]
        for s, a, t in self.transitions:
            out[s].append((a, t))
        return out

    @cached_property
    def tau_succ(self) -> list:
        out = [[] for _ in self.states]
        for s, a, t in self.transitions:
            if a == TAU:
                out[s].append(t)
        return out

    def index(self, state) -> int:
        return self._index[state]

    @cached_property
    def _index(self):
        return {st: i for i, st in enumerate(self.states)}

    def deadlocked(self, s) -> bool:
        return not self.succ[s]

    def label(self, s) -> str:
        st = self.states[s]
        if isinstance(st, (Nil, Prefix, Choice, Merge, Iter)):
            return format_expr(st)
        return str(st)

    def to_json(self) -> dict:
        return {
            "states": [self.label(i) for i in range(len(self))],
            "initial": self.initial,
            "transitions": [[s, a, t] for s, a, t in self.transitions],
        }


def explore(roots, state_limit=DEFAULT_STATE_LIMIT) -> Lts:
    """Breadth-first closure of several roots into one shared state space.

    States are deduplicated by structural equality and numbered in
    discovery order; the roots come first, in the given order (a root
    equal to an earlier one shares its index).
    """
    if state_limit < 1:
        raise ValueError("state_limit must be at least 1")
    states = []
    index = {}
    queue = deque()

    def add(e):
        i = index.get(e)
        if i is None:
            if len(states) >= state_limit:
                raise StateLimitExceeded(state_limit, len(states) + 1)
            i = len(states)
            index[e] = i
            states.append(e)
            queue.append(i)
        return i

    root_ids = tuple(add(r) for r in roots)
    transitions = set()
    while queue:
        s = queue.popleft()
        for a, t in successors(states[s]):
            transitions.add((s, a, add(t)))
    lts = Lts(tuple(states), root_ids[0] if root_ids else 0,
              tuple(sorted(transitions)), root_ids)
    lts.__dict__["_index"] = index
    return lts


def build_lts(root: ProcessExpr, state_limit=DEFAULT_STATE_LIMIT) -> Lts:
    """The reachable LTS of ``root``; the initial state is 0."""
    return explore([root], state_limit)


def tau_reach(lts: Lts, s: int) -> set:
    """States reachable from ``s`` by zero or more tau steps."""
    seen = {s}
    stack = [s]
    tau_succ = lts.tau_succ
    while stack:
        u = stack.pop()
        for v in tau_succ[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def tau_closures(lts: Lts) -> list:
    return [frozenset(tau_reach(lts, s)) for s in range(len(lts))]


def weak_saturate(lts: Lts) -> Lts:
    """Same states; ``s =a=> t`` edges for visible ``a`` and ``s =tau=> t``
    for every tau-reachable ``t`` (reflexive loops included)."""
    closure = tau_closures(lts)
    edges = set()
    for s in range(len(lts)):
        for u in closure[s]:
            edges.add((s, TAU, u))
            for a, v in lts.succ[u]:
                if a == TAU:
                    continue
                for t in closure[v]:
                    edges.add((s, a, t))
    return Lts(lts.states, lts.initial, tuple(sorted(edges)), lts.roots)


def _dot_quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(lts: Lts, name="lts") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i in range(len(lts)):
        shape = "doublecircle" if i == lts.initial else "ellipse"
        lines.append(f"  s{i} [label={_dot_quote(lts.label(i))}, shape={shape}];")
    for s, a, t in sorted(lts.transitions, key=lambda e: (e[0], e[1], e[2])):
        lines.append(f"  s{s} -> s{t} [label={_dot_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(lts: Lts) -> str:
    return json.dumps(lts.to_json(), indent=2)
