"""Finite partial commutative monoids, multisets and decompositions.

An undefined composition is represented by ``None``.  Infinite monoids
(naturals under addition, positive naturals under multiplication,
multisets) are available as bounded restrictions, which are partial
monoids in their own right.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Hashable, Iterable


def sort_key(x):
    """Total order on the element types used here (ints, strings, multisets)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, Multiset):
        return (2, x.sort_key())
    if isinstance(x, tuple):
        return (3, tuple(sort_key(y) for y in x))
    return (4, repr(x))


class Multiset:
    """Immutable finite multiset; absent elements have multiplicity 0."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, elements: Iterable = ()):
        counts = Counter(elements)
        self._counts = {x: c for x, c in counts.items() if c > 0}
        self._hash = None

    @classmethod
    def from_counts(cls, counts):
        m = cls()
        m._counts = {x: c for x, c in dict(counts).items() if c > 0}
        if any(c < 0 for c in dict(counts).values()):
            raise ValueError("negative multiplicity")
        return m

    def __getitem__(self, x) -> int:
        return self._counts.get(x, 0)

    def __len__(self):
        return sum(self._counts.values())

    def __iter__(self):
        for x in self.support():
            for _ in range(self._counts[x]):
                yield x

    def __bool__(self):
        return bool(self._counts)

    def support(self) -> list:
        return sorted(self._counts, key=sort_key)

    def items(self):
        return [(x, self._counts[x]) for x in self.support()]

    def __add__(self, other: "Multiset") -> "Multiset":
        counts = Counter(self._counts)
        counts.update(other._counts)
        return Multiset.from_counts(counts)

    def __sub__(self, other: "Multiset") -> "Multiset":
        # truncated at zero
        return Multiset.from_counts(
            {x: c - other[x] for x, c in self._counts.items() if c > other[x]})

    def __mul__(self, k: int) -> "Multiset":
        if k < 0:
            raise ValueError("negative scale")
        return Multiset.from_counts({x: c * k for x, c in self._counts.items()})

    __rmul__ = __mul__

    def restrict(self, keep: Callable) -> "Multiset":
        return Multiset.from_counts({x: c for x, c in self._counts.items() if keep(x)})

    def issubset(self, other: "Multiset") -> bool:
        return all(c <= other[x] for x, c in self._counts.items())

    def __eq__(self, other):
        return isinstance(other, Multiset) and self._counts == other._counts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def sort_key(self):
        return (len(self), tuple(sort_key(x) for x in self))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return "{{" + ", ".join(repr(x) for x in self) + "}}"


class PartialMonoid:
    """A finite carrier with an identity and a partial binary operation.

    ``op(x, y)`` returns the composite or ``None`` when undefined; results
    outside the carrier are treated as undefined.  Compositions are cached.
    """

    def __init__(self, elements: Iterable[Hashable], identity, op, name="monoid"):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if identity not in self._index:
            raise ValueError("identity not in carrier")
        self.identity = identity
        self.name = name
        self._op = op
        self._cache = {}
        self._factorizations = None
        self._indecomposables = None

    def __contains__(self, x):
        return x in self._index

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<PartialMonoid {self.name} |{len(self)}|>"

    def index(self, x) -> int:
        return self._index[x]

    def compose(self, x, y):
        key = (x, y)
        if key not in self._cache:
            z = self._op(x, y)
            self._cache[key] = z if z is not None and z in self._index else None
        return self._cache[key]

    def table(self) -> dict:
        """All defined compositions ``(x, y) -> z``."""
        out = {}
        for x in self.elements:
            for y in self.elements:
                z = self.compose(x, y)
                if z is not None:
                    out[(x, y)] = z
        return out

    def factorizations(self) -> dict:
        """``z -> [(x, y), ...]`` over all defined ``x . y = z``."""
        if self._factorizations is None:
            fac = {z: [] for z in self.elements}
            for (x, y), z in self.table().items():
                fac[z].append((x, y))
            self._factorizations = fac
        return self._factorizations

    def to_json(self, with_table=True) -> dict:
        d = {"name": self.name, "carrier": [_jsonable(x) for x in self.elements],
             "identity": _jsonable(self.identity)}
        if with_table:
            d["table"] = [[_jsonable(x), _jsonable(y), _jsonable(z)]
                          for (x, y), z in self.table().items()]
        return d


def _jsonable(x):
    if isinstance(x, Multiset):
        return [_jsonable(y) for y in x]
    return x


def from_table(elements, identity, table, name="table") -> PartialMonoid:
    """Monoid given by an explicit composition table ``{(x, y): z}``."""
    table = dict(table)
    return PartialMonoid(elements, identity, lambda x, y: table.get((x, y)), name)


def natural_segment(n: int) -> PartialMonoid:
    """``{0..n}`` under addition, defined when the sum stays ``<= n``."""
    return PartialMonoid(range(n + 1), 0, lambda x, y: x + y if x + y <= n else None,
                         f"N[0..{n}](+)")


def positive_multiplicative(cap: int) -> PartialMonoid:
    """``{1..cap}`` under multiplication, defined when the product stays ``<= cap``."""
    return PartialMonoid(range(1, cap + 1), 1,
                         lambda x, y: x * y if x * y <= cap else None,
                         f"N>0[1..{cap}](*)")


def multiset_monoid(symbols, max_card: int) -> PartialMonoid:
    """Multisets over ``symbols`` of cardinality ``<= max_card`` under sum."""
    symbols = sorted(symbols, key=sort_key)
    elements = [Multiset(c) for k in range(max_card + 1)
                for c in combinations_with_replacement(symbols, k)]
    return PartialMonoid(elements, Multiset(),
                         lambda x, y: x + y if len(x) + len(y) <= max_card else None,
                         f"M({','.join(map(str, symbols))})[<={max_card}]")


# --------------------------------------------------------------------------
# generalised products and decompositions

def compose_all(m: PartialMonoid, xs):
    """Left fold of ``xs``; the identity when empty, ``None`` once undefined."""
    acc = m.identity
    for x in xs:
        acc = m.compose(acc, x)
        if acc is None:
            return None
    return acc


def power(m: PartialMonoid, x, k: int):
    return compose_all(m, [x] * k)


def powers(m: PartialMonoid, x) -> list:
    """The distinct defined powers ``x^0, x^1, ...`` in order of first appearance.

    The sequence of powers is determined step by step, so on a finite
    carrier it either becomes undefined or enters a cycle; both are
    detected and the list is complete.
    """
    seen = []
    seen_set = set()
    acc = m.identity
    while acc is not None and acc not in seen_set:
        seen.append(acc)
        seen_set.add(acc)
        acc = m.compose(acc, x)
    return seen


def indecomposables(m: PartialMonoid) -> tuple:
    """Non-identity elements with no factorisation into two non-identities."""
    if m._indecomposables is None:
        e = m.identity
        fac = m.factorizations()
        m._indecomposables = tuple(
            p for p in m.elements
            if p != e and all(x == e or y == e for x, y in fac[p]))
    return m._indecomposables


def is_indecomposable(m: PartialMonoid, p) -> bool:
    return p in set(indecomposables(m))


@dataclass(frozen=True)
class DecompositionSearch:
    decompositions: tuple  # of Multiset, sorted
    truncated: bool
    bound: int


def decompositions_of(m: PartialMonoid, x, bound: int | None = None) -> DecompositionSearch:
    """All multisets of indecomposables (at most ``bound`` of them) composing to ``x``.

    ``bound`` defaults to the carrier size.  A decomposition with more parts
    than the carrier has elements would revisit a partial product, so under
    the default the search is exact unless ``truncated`` is set.
    """
    if bound is None:
        bound = len(m)
    indec = indecomposables(m)
    rank = {p: i for i, p in enumerate(indec)}
    fac = m.factorizations()
    # z -> [(rank of p, y)] with p . y = z, p indecomposable
    splits = {z: sorted(((rank[p], y) for p, y in fac[z] if p in rank),
                        key=lambda t: (t[0], m.index(t[1])))
              for z in m.elements}
    memo = {}
    truncated = False

    def search(z, lo, budget):
        nonlocal truncated
        key = (z, lo, budget)
        if key in memo:
            return memo[key]
        found = {Multiset()} if z == m.identity else set()
        options = [(j, y) for j, y in splits[z] if j >= lo]
        if budget == 0:
            if options:
                truncated = True
        else:
            for j, y in options:
                single = Multiset([indec[j]])
                for rest in search(y, j, budget - 1):
                    found.add(rest + single)
        memo[key] = frozenset(found)
        return memo[key]

    result = search(x, 0, bound)
    return DecompositionSearch(tuple(sorted(result)), truncated, bound)


@dataclass(frozen=True)
class UniquenessVerdict:
    status: str  # "unique" | "witness" | "missing"
    element: object = None
    first: Multiset | None = None
    second: Multiset | None = None
    truncated: bool = False

    @property
    def unique(self) -> bool:
        return self.status == "unique"


def has_unique_decomposition(m: PartialMonoid, bound: int | None = None) -> UniquenessVerdict:
    """Scan the carrier for an element with no, or more than one, decomposition."""
    truncated = False
    for x in m.elements:
        search = decompositions_of(m, x, bound)
        truncated |= search.truncated
        ds = search.decompositions
        if len(ds) >= 2:
            return UniquenessVerdict("witness", x, ds[0], ds[1], truncated)
        if not ds:
            return UniquenessVerdict("missing", x, truncated=truncated)
    return UniquenessVerdict("unique", truncated=truncated)
