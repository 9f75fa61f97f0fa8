"""Parallel decomposition of process expressions."""
from __future__ import annotations

from dataclasses import dataclass

from .equiv import Semantics
from .lts import DEFAULT_STATE_LIMIT
from .monoid import Multiset, decompositions_of, indecomposables
from .norms import INF
from .order import DecompositionExtension, minimal_pair, reachability_order
from .quotient import ProcessQuotient, process_quotient
from .syntax import ProcessExpr, format_expr


def is_totally_normed(q: ProcessQuotient) -> bool:
    if q.norms[q.root_class] == INF:
        return False
    return all(c == q.zero_class for c in q.elements if q.norms[c] == 0)


def is_weakly_bounded(q: ProcessQuotient) -> bool:
    return q.depths[q.root_class] != INF


def part_bound(q: ProcessQuotient):
    """Largest possible number of parts in a decomposition of the root.

    Every indecomposable class has weak depth and (when totally normed)
    weak norm at least 1, and both are additive over parallel composition.
    Returns ``(bound, exact)``; without either argument the carrier size is
    used and the search is not claimed exhaustive.
    """
    if is_weakly_bounded(q):
        return int(q.depths[q.root_class]), True
    if is_totally_normed(q):
        return int(q.norms[q.root_class]), True
    return len(q), False


@dataclass(frozen=True)
class ParallelDecompositions:
    quotient: ProcessQuotient
    classes: tuple  # Multisets of class ids
    truncated: bool
    exact: bool

    def expressions(self) -> list:
        return [tuple(self.quotient.rep(c) for c in d) for d in self.classes]


def parallel_decompositions(e: ProcessExpr, semantics=Semantics.BRANCHING,
                            state_limit=DEFAULT_STATE_LIMIT) -> ParallelDecompositions:
    """All multisets of indecomposable classes whose composition is ``[e]``.

    Candidates are the indecomposable classes below ``e``.  For weakly
    bounded or totally normed ``e`` every component of ``e`` is equivalent
    to a state reachable from ``e`` (run the other components to a state
    equivalent to ``0``), so the enumeration is exhaustive there.
    """
    q = process_quotient(e, semantics, state_limit)
    bound, exact = part_bound(q)
    search = decompositions_of(q, q.root_class, bound)
    truncated = search.truncated and not exact
    return ParallelDecompositions(q, search.decompositions, truncated, exact)


def is_indecomposable(e: ProcessExpr, semantics=Semantics.BRANCHING,
                      state_limit=DEFAULT_STATE_LIMIT) -> bool:
    q = process_quotient(e, semantics, state_limit)
    return q.root_class != q.zero_class and q.root_class in indecomposables(q)


@dataclass(frozen=True)
class DecompVerdict:
    status: str  # "unique" | "multiple" | "none" | "truncated"
    semantics: Semantics
    parts: tuple = ()
    alt_parts: tuple | None = None
    exact: bool = True
    part_classes: Multiset | None = None
    alt_classes: Multiset | None = None

    def to_json(self) -> dict:
        d = {"status": self.status, "semantics": str(self.semantics),
             "parts": [format_expr(p) for p in self.parts], "exact": self.exact}
        if self.alt_parts is not None:
            d["alt_parts"] = [format_expr(p) for p in self.alt_parts]
        return d

    def __str__(self):
        def show(ps):
            return "{" + ", ".join(format_expr(p) for p in ps) + "}"
        text = f"{self.status}: {show(self.parts)}" if self.status != "none" else "none"
        if self.alt_parts is not None:
            text += f" and {show(self.alt_parts)}"
        if not self.exact:
            text += " (search not exhaustive for this kind of process)"
        return text


def check_unique(e: ProcessExpr, semantics=Semantics.BRANCHING,
                 state_limit=DEFAULT_STATE_LIMIT) -> DecompVerdict:
    pd = parallel_decompositions(e, semantics, state_limit)
    q = pd.quotient
    semantics = q.semantics
    ds = pd.classes

    def reps(d):
        return tuple(q.rep(c) for c in d)

    if len(ds) >= 2:
        bound, _ = part_bound(q)
        ext = DecompositionExtension(q, reachability_order(q), bound)
        d1, d2 = minimal_pair(ext, ds)
        return DecompVerdict("multiple", semantics, reps(d1), reps(d2), pd.exact, d1, d2)
    if pd.truncated:
        found = ds[0] if ds else None
        return DecompVerdict("truncated", semantics, reps(found) if found else (),
                             exact=False, part_classes=found)
    if not ds:
        return DecompVerdict("none", semantics, exact=pd.exact)
    return DecompVerdict("unique", semantics, reps(ds[0]), exact=pd.exact,
                         part_classes=ds[0])
