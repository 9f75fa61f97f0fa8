"""Strong, branching and weak bisimilarity on finite LTSs."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ._graph import sccs
from .lts import DEFAULT_STATE_LIMIT, Lts, explore, tau_closures, weak_saturate
from .syntax import TAU


class Semantics(str, Enum):
    STRONG = "strong"
    BRANCHING = "branching"
    WEAK = "weak"

    def __str__(self):
        return self.value


class Partition:
    """An equivalence on states ``0..n-1``.

    Block ids are normalised so that blocks are numbered in order of their
    least state.
    """

    def __init__(self, block_of):
        renumber = {}
        self.block_of = tuple(renumber.setdefault(b, len(renumber)) for b in block_of)
        blocks = [[] for _ in renumber]
        for s, b in enumerate(self.block_of):
            blocks[b].append(s)
        self.blocks = tuple(tuple(b) for b in blocks)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.block_of == other.block_of

    def __hash__(self):
        return hash(self.block_of)

    def __repr__(self):
        return f"Partition({[list(b) for b in self.blocks]})"

    def same(self, s, t) -> bool:
        return self.block_of[s] == self.block_of[t]

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` lies inside a block of ``other``."""
        return all(len({other.block_of[s] for s in b}) == 1 for b in self.blocks)

    def pairs(self) -> set:
        return {(s, t) for b in self.blocks for s in b for t in b}


def _refine(n, signatures) -> Partition:
    """Split blocks by signature until the number of blocks is stable."""
    block = [0] * n
    count = 1 if n else 0
    while True:
        sigs = signatures(block)
        keys = {}
        new = [keys.setdefault((block[s], sigs[s]), len(keys)) for s in range(n)]
        if len(keys) == count:
            return Partition(new)
        block, count = new, len(keys)


def strong_bisim(lts: Lts) -> Partition:
    succ = lts.succ

    def signatures(block):
        return [frozenset((a, block[t]) for a, t in succ[s]) for s in range(len(lts))]

    return _refine(len(lts), signatures)


def _branching_signatures(lts):
    n = len(lts)
    succ = lts.succ
    tau_succ = lts.tau_succ

    def signatures(block):
        inert = [[t for t in tau_succ[s] if block[t] == block[s]] for s in range(n)]
        sig = [None] * n
        # successor components are finished before their predecessors
        for comp in sccs(n, inert):
            acc = set()
            for s in comp:
                b = block[s]
                for a, t in succ[s]:
                    if a == TAU and block[t] == b:
                        if sig[t] is not None:
                            acc |= sig[t]
                    else:
                        acc.add((a, block[t]))
            frozen = frozenset(acc)
            for s in comp:
                sig[s] = frozen
        return sig

    return signatures


def _branching_fixpoint(lts: Lts) -> Partition:
    """Greatest fixpoint of the transfer condition over all state pairs."""
    n = len(lts)
    closure = tau_closures(lts)
    rel = {(p, q) for p in range(n) for q in range(n)}
    changed = True
    while changed:
        changed = False
        for p, q in sorted(rel):
            if (p, q) in rel and not _branching_ok(lts, rel, closure, p, q):
                rel.discard((p, q))
                rel.discard((q, p))
                changed = True
    block = list(range(n))
    for p, q in rel:
        block[q] = min(block[q], p)
    return Partition(block)


def branching_bisim(lts: Lts, method="signature") -> Partition:
    """Coarsest branching bisimulation.

    ``method="signature"`` refines by branching signatures (inert tau paths
    stay inside the current block); ``method="fixpoint"`` removes violating
    pairs from the full relation until stable, quadratic in the number of
    states and meant for cross-checking.
    """
    if method == "fixpoint":
        return _branching_fixpoint(lts)
    if method != "signature":
        raise ValueError(f"unknown method {method!r}")
    return _refine(len(lts), _branching_signatures(lts))


def weak_bisim(lts: Lts) -> Partition:
    return strong_bisim(weak_saturate(lts))


def bisim(lts: Lts, semantics) -> Partition:
    semantics = Semantics(semantics)
    if semantics is Semantics.STRONG:
        return strong_bisim(lts)
    if semantics is Semantics.BRANCHING:
        return branching_bisim(lts)
    return weak_bisim(lts)


# --------------------------------------------------------------------------
# relation checking

@dataclass(frozen=True)
class Violation:
    """``left --action--> target`` has no matching answer from ``right``."""
    left: int
    right: int
    action: str
    target: int
    reason: str


def _branching_ok(lts, rel, closure, p, q):
    for a, p2 in lts.succ[p]:
        if not _branching_match(lts, rel, closure, p, q, a, p2):
            return False
    return True


def _branching_match(lts, rel, closure, p, q, a, p2):
    for q2 in closure[q]:
        if (p, q2) not in rel:
            continue
        if a == TAU and (p2, q2) in rel:
            return True
        for b, q3 in lts.succ[q2]:
            if b == a and (p2, q3) in rel:
                return True
    return False


def check_relation(lts: Lts, pairs, semantics) -> Violation | None:
    """Check that the symmetric closure of ``pairs`` is a bisimulation.

    Returns None when it is, otherwise the first violation in order of
    ``(left, right, action, target)``.
    """
    semantics = Semantics(semantics)
    n = len(lts)
    rel = set()
    for p, q in pairs:
        if not (0 <= p < n and 0 <= q < n):
            raise IndexError(f"state pair ({p}, {q}) out of range for {n} states")
        rel.add((p, q))
        rel.add((q, p))
    closure = tau_closures(lts) if semantics is not Semantics.STRONG else None
    weak = weak_saturate(lts).succ if semantics is Semantics.WEAK else None

    for p, q in sorted(rel):
        for a, p2 in lts.succ[p]:
            if semantics is Semantics.STRONG:
                ok = any(b == a and (p2, q2) in rel for b, q2 in lts.succ[q])
                reason = f"no {a}-step of {q} reaches a state related to {p2}"
            elif semantics is Semantics.BRANCHING:
                ok = _branching_match(lts, rel, closure, p, q, a, p2)
                reason = (f"no tau-path from {q} to a state related to {p} "
                          f"that can answer {a} into a state related to {p2}")
            else:
                ok = any(b == a and (p2, q2) in rel for b, q2 in weak[q])
                reason = f"no weak {a}-step of {q} reaches a state related to {p2}"
            if not ok:
                return Violation(p, q, a, p2, reason)
    return None


def equivalent(p, q, semantics=Semantics.BRANCHING, state_limit=DEFAULT_STATE_LIMIT) -> bool:
    """Decide ``p`` and ``q`` equivalent by exploring both into one state space."""
    lts = explore([p, q], state_limit)
    i, j = lts.roots
    return i == j or bisim(lts, semantics).same(i, j)


def verdict_json(p, q, semantics=Semantics.BRANCHING, state_limit=DEFAULT_STATE_LIMIT) -> dict:
    lts = explore([p, q], state_limit)
    part = bisim(lts, semantics)
    i, j = lts.roots
    blocks = [[lts.label(s) for s in b] for b in part.blocks]
    return {
        "equivalent": part.same(i, j),
        "semantics": str(Semantics(semantics)),
        "witness_blocks": blocks,
    }
