"""Orders on finite partial monoids and the decomposition-order axioms."""
from __future__ import annotations

from dataclasses import dataclass, fields
from itertools import combinations_with_replacement, product

from ._graph import reachable
from .monoid import (Multiset, PartialMonoid, decompositions_of, indecomposables,
                     sort_key)


class Order:
    """A preorder on a finite carrier, stored as down-sets.

    Construction checks reflexivity and transitivity; antisymmetry is left
    to :func:`check_axioms` (it is the finite form of well-foundedness).
    """

    def __init__(self, elements, below: dict, check=True):
        self.elements = tuple(elements)
        self.below = {x: frozenset(below[x]) for x in self.elements}
        if check:
            for x in self.elements:
                if x not in self.below[x]:
                    raise ValueError(f"not reflexive at {x!r}")
                for y in self.below[x]:
                    if not self.below[y] <= self.below[x]:
                        raise ValueError(f"not transitive at {y!r} <= {x!r}")

    @classmethod
    def from_predicate(cls, elements, leq):
        elements = tuple(elements)
        return cls(elements, {y: [x for x in elements if leq(x, y)] for y in elements})

    def leq(self, x, y) -> bool:
        return x in self.below[y]

    def lt(self, x, y) -> bool:
        return x != y and x in self.below[y]

    def strictly_below(self, y) -> list:
        return sorted((x for x in self.below[y] if x != y), key=sort_key)


def natural_order(m: PartialMonoid) -> Order:
    return Order.from_predicate(m.elements, lambda x, y: x <= y)


def divisibility_order(m: PartialMonoid) -> Order:
    return Order.from_predicate(m.elements, lambda x, y: y % x == 0)


def inclusion_order(m: PartialMonoid) -> Order:
    return Order.from_predicate(m.elements, lambda x, y: x.issubset(y))


def reachability_order(q) -> Order:
    """``[y] <= [x]`` iff ``[y]`` is reachable from ``[x]`` in the class graph."""
    adj = [[t for _, t in out] for out in q.graph.succ]
    carrier = set(q.elements)
    return Order(q.elements, {x: reachable(adj, x) & carrier for x in q.elements})


# --------------------------------------------------------------------------
# axioms

PASS, FAIL, CAPPED = "pass", "fail", "capped-pass"


@dataclass(frozen=True)
class AxiomResult:
    status: str
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self):
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = [_json_elem(x) for x in self.witness]
        return d


def _json_elem(x):
    if isinstance(x, Multiset):
        return [_json_elem(y) for y in x]
    return x


@dataclass(frozen=True)
class AxiomReport:
    well_founded: AxiomResult
    least_identity: AxiomResult
    compatible: AxiomResult
    strictly_compatible: AxiomResult
    precompositional: AxiomResult
    archimedean: AxiomResult
    power_cancellation: AxiomResult

    @property
    def weak_decomposition_order(self) -> bool:
        return all(r.status == PASS for r in (
            self.well_founded, self.least_identity, self.compatible,
            self.precompositional, self.archimedean))

    @property
    def decomposition_order(self) -> bool:
        return self.weak_decomposition_order and self.strictly_compatible.status == PASS

    def to_json(self) -> dict:
        d = {f.name: getattr(self, f.name).to_json() for f in fields(self)}
        d["weak_decomposition_order"] = self.weak_decomposition_order
        d["decomposition_order"] = self.decomposition_order
        return d


def _well_founded(m, o):
    for i, x in enumerate(m.elements):
        for y in m.elements[i + 1:]:
            if o.leq(x, y) and o.leq(y, x):
                return AxiomResult(FAIL, (x, y))
    return AxiomResult(PASS)


def _least_identity(m, o):
    for x in m.elements:
        if not o.leq(m.identity, x):
            return AxiomResult(FAIL, (x,))
    return AxiomResult(PASS)


def _compatible(m, o, strict):
    rel = o.lt if strict else o.leq
    for y in m.elements:
        for x in m.elements:
            if not rel(x, y):
                continue
            for z in m.elements:
                yz = m.compose(y, z)
                if yz is None:
                    continue
                xz = m.compose(x, z)
                if xz is None or not rel(xz, yz):
                    return AxiomResult(FAIL, (x, y, z))
    return AxiomResult(PASS)


def _precompositional(m, o):
    # reachable[(y', z)] = { y' . z' : z' <= z }
    partial = {}
    for y in m.elements:
        for z in m.elements:
            yz = m.compose(y, z)
            if yz is None:
                continue
            achievable = set()
            for y2 in o.below[y]:
                key = (y2, z)
                if key not in partial:
                    partial[key] = {w for z2 in o.below[z]
                                    if (w := m.compose(y2, z2)) is not None}
                achievable |= partial[key]
            for x in sorted(o.below[yz], key=m.index):
                if x not in achievable:
                    return AxiomResult(FAIL, (x, y, z))
    return AxiomResult(PASS)


def _power_orbit(m, x, cap, start=0):
    """Distinct defined powers ``x^start, x^(start+1), ...`` (at most ``cap`` steps).

    Returns ``(values, total, closed)``: ``total`` when no power is undefined,
    ``closed`` when the sequence was followed until it repeated or stopped.
    Powers are determined step by step, so on a finite carrier the sequence
    always either stops or cycles.
    """
    acc = m.identity if start == 0 else x
    values = [acc]
    seen = {acc}
    for _ in range(cap):
        acc = m.compose(acc, x)
        if acc is None:
            return values, False, True
        if acc in seen:
            return values, True, True
        values.append(acc)
        seen.add(acc)
    return values, True, False


def _archimedean(m, o, cap):
    # powers from n = 1: x^0 is the identity, whose position is a separate axiom
    capped = False
    for x in m.elements:
        if x == m.identity:
            continue
        values, total, closed = _power_orbit(m, x, cap, start=1)
        if not total:
            continue
        capped |= not closed
        for y in m.elements:
            if all(o.leq(v, y) for v in values):
                if closed:
                    return AxiomResult(FAIL, (x, y))
                break
    return AxiomResult(CAPPED if capped else PASS)


def power_cancellation(m: PartialMonoid, o: Order) -> AxiomResult:
    """For indecomposable p not strictly below x or y: p^k.x = p^k.y forces x = y.

    Witness on failure: ``(p, k, x, y)``.
    """
    for p in indecomposables(m):
        allowed = [x for x in m.elements if not o.lt(p, x)]
        values, _, _ = _power_orbit(m, p, len(m) + 1)
        for k, v in enumerate(values):
            seen = {}
            for x in allowed:
                vx = m.compose(v, x)
                if vx is None:
                    continue
                if vx in seen:
                    return AxiomResult(FAIL, (p, k, seen[vx], x))
                seen[vx] = x
    return AxiomResult(PASS)


def check_axioms(m: PartialMonoid, o: Order, archimedean_exponent_cap=64) -> AxiomReport:
    """Decide every axiom by exhaustive evaluation over the finite carrier.

    The powers of an element form an eventually periodic sequence on a
    finite carrier, so the Archimedean check is exact whenever the orbit
    closes within ``archimedean_exponent_cap`` steps, and reported as
    ``capped-pass`` otherwise.
    """
    return AxiomReport(
        well_founded=_well_founded(m, o),
        least_identity=_least_identity(m, o),
        compatible=_compatible(m, o, strict=False),
        strictly_compatible=_compatible(m, o, strict=True),
        precompositional=_precompositional(m, o),
        archimedean=_archimedean(m, o, archimedean_exponent_cap),
        power_cancellation=power_cancellation(m, o),
    )


# --------------------------------------------------------------------------
# decomposition extension and minimal counterexamples

class DecompositionExtension:
    """The extension of the strict order to decompositions, with memoisation.

    ``d2`` is a predecessor of ``d`` when some occurrences ``p1..pk`` in
    ``d`` (k >= 1) are each replaced by a decomposition of an element
    strictly below it.
    """

    def __init__(self, m: PartialMonoid, o: Order, bound=None):
        self.m = m
        self.o = o
        self.bound = bound
        self._replacements = {}
        self._preds = {}
        self._down = {}

    def replacements(self, p) -> list:
        if p not in self._replacements:
            found = set()
            for x in self.o.strictly_below(p):
                found.update(decompositions_of(self.m, x, self.bound).decompositions)
            self._replacements[p] = sorted(found)
        return self._replacements[p]

    def predecessors(self, d: Multiset) -> frozenset:
        if d in self._preds:
            return self._preds[d]
        per_part = []
        for p, count in d.items():
            reps = self.replacements(p)
            choices = []
            for j in range(count + 1):
                for picked in combinations_with_replacement(reps, j):
                    added = Multiset()
                    for r in picked:
                        added = added + r
                    choices.append((j, Multiset([p] * j), added))
            per_part.append(choices)
        out = set()
        for combo in product(*per_part):
            if not any(j for j, _, _ in combo):
                continue
            removed, added = Multiset(), Multiset()
            for _, r, a in combo:
                removed, added = removed + r, added + a
            d2 = (d - removed) + added
            if _compose_multiset(self.m, d2) is not None:
                out.add(d2)
        self._preds[d] = frozenset(out)
        return self._preds[d]

    def down(self, d: Multiset) -> frozenset:
        """Reflexive-transitive closure of :meth:`predecessors`."""
        if d not in self._down:
            seen = {d}
            stack = [d]
            while stack:
                for e in self.predecessors(stack.pop()):
                    if e not in seen:
                        seen.add(e)
                        stack.append(e)
            self._down[d] = frozenset(seen)
        return self._down[d]


def _compose_multiset(m, d):
    acc = m.identity
    for x in d:
        acc = m.compose(acc, x)
        if acc is None:
            return None
    return acc


def dec_ext_predecessors(m: PartialMonoid, o: Order, d: Multiset, bound=None) -> frozenset:
    return DecompositionExtension(m, o, bound).predecessors(d)


def _pair_key(pair):
    return (pair[0].sort_key(), pair[1].sort_key())


def minimal_pair(ext: DecompositionExtension, decompositions) -> tuple | None:
    """A pair of distinct decompositions from ``decompositions`` (all of one
    element) with no other counterexample below it in the product order."""
    pairs = sorted(((d1, d2) for d1 in decompositions for d2 in decompositions if d1 != d2),
                   key=_pair_key)
    m = ext.m
    for d1, d2 in pairs:
        down1, down2 = ext.down(d1), ext.down(d2)
        comp2 = {}
        for e2 in down2:
            comp2.setdefault(_compose_multiset(m, e2), []).append(e2)
        smaller = any(
            e1 != e2 and (e1, e2) != (d1, d2)
            for e1 in down1
            for e2 in comp2.get(_compose_multiset(m, e1), ()))
        if not smaller:
            return d1, d2
    return pairs[0] if pairs else None


def find_minimal_counterexample(m: PartialMonoid, o: Order, bound=None) -> tuple | None:
    """A minimal pair ``(d1, d2)`` of distinct decompositions with equal composition.

    The common composition is order-minimal among elements with several
    decompositions; ties go to the lowest carrier index, then to the
    lexicographically least pair.  None when every element has at most one
    decomposition.
    """
    multi = {}
    for x in m.elements:
        ds = decompositions_of(m, x, bound).decompositions
        if len(ds) >= 2:
            multi[x] = ds
    if not multi:
        return None
    minimal = [x for x in multi if not any(o.lt(y, x) for y in multi)]
    candidates = sorted(minimal, key=m.index) + sorted(set(multi) - set(minimal), key=m.index)
    ext = DecompositionExtension(m, o, bound)
    for x in candidates:
        pair = minimal_pair(ext, multi[x])
        if pair is not None:
            return pair
    return None
