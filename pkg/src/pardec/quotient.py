"""The partial monoid of behaviours below a root process.

Elements are the equivalence classes of the states reachable from the
root, plus the class of ``0``.  Composition is parallel composition of
representatives; it is defined when the resulting class is again one of
the elements (for classes other than ``0``: reachable from the root).
"""
from __future__ import annotations

from collections import deque

from ._graph import reachable
from .equiv import Semantics, bisim
from .lts import DEFAULT_STATE_LIMIT, Lts, explore
from .monoid import PartialMonoid
from .norms import INF, weak_depths, weak_norms
from .syntax import NIL, TAU, ProcessExpr, drop_nil_components, format_expr, merge_all


class ProcessQuotient(PartialMonoid):
    """Classes are numbered by their lowest state index; the root's class is 0.

    Attributes of interest: ``lts`` (states of root and ``0``), ``partition``,
    ``graph`` (the quotient LTS over class ids, inert tau steps removed),
    ``reps`` (lowest-index member of each class, with ``0`` merge operands
    dropped).
    """

    def __init__(self, root, semantics, lts, partition, graph, table, carrier):
        self.root = root
        self.semantics = Semantics(semantics)
        self.lts = lts
        self.partition = partition
        self.graph = graph
        self.reps = tuple(drop_nil_components(lts.states[b[0]]) for b in partition.blocks)
        self.root_class = partition.block_of[lts.roots[0]]
        self.zero_class = partition.block_of[lts.roots[1]]
        self.norms = weak_norms(graph)
        self.depths = weak_depths(graph)
        super().__init__(carrier, self.zero_class, lambda x, y: table.get((x, y)),
                         f"quotient({format_expr(root)}, {self.semantics})")

    def rep(self, c) -> ProcessExpr:
        return self.reps[c]

    def label(self, c) -> str:
        return format_expr(self.reps[c])

    def class_of(self, state: int) -> int:
        return self.partition.block_of[state]

    def recompose(self, parts) -> ProcessExpr:
        """Parallel composition of representatives of ``parts``."""
        return merge_all(self.reps[c] for c in parts)

    def to_json(self, with_table=True) -> dict:
        d = {
            "root": format_expr(self.root),
            "semantics": str(self.semantics),
            "identity": self.identity,
            "classes": [{"id": c, "rep": self.label(c),
                         "members": [self.lts.label(s) for s in self.partition.blocks[c]]}
                        for c in self.elements],
        }
        if with_table:
            d["table"] = [[x, y, z] for (x, y), z in self.table().items() if x <= y]
        return d


def quotient_graph(lts: Lts, partition) -> Lts:
    """Class-level LTS: ``[s] -a-> [t]`` for every non-inert ``s -a-> t``."""
    b = partition.block_of
    edges = {(b[s], a, b[t]) for s, a, t in lts.transitions
             if not (a == TAU and b[s] == b[t])}
    return Lts(tuple(range(len(partition))), b[lts.initial], tuple(sorted(edges)))


def _product_table(graph, semantics, seeds, carrier):
    """Classes of the parallel composition of class states, for each seed pair.

    Builds the interleaving product of ``graph`` with itself from the seed
    pairs, puts it next to ``graph`` and reads off which class state each
    product state is equivalent to.
    """
    k = len(graph)
    index = {}
    pairs = []
    queue = deque()

    def add(p):
        if p not in index:
            index[p] = k + len(pairs)
            pairs.append(p)
            queue.append(p)
        return index[p]

    for p in seeds:
        add(p)
    edges = list(graph.transitions)
    while queue:
        i, j = queue.popleft()
        src = index[(i, j)]
        for a, i2 in graph.succ[i]:
            edges.append((src, a, add((i2, j))))
        for a, j2 in graph.succ[j]:
            edges.append((src, a, add((i, j2))))
    union = Lts.from_edges(k + len(pairs), edges,
                           states=[("class", c) for c in range(k)] + pairs)
    part = bisim(union, semantics)
    class_of_block = {}
    for c in carrier:
        class_of_block[part.block_of[c]] = c
    table = {}
    for i, j in seeds:
        c = class_of_block.get(part.block_of[index[(i, j)]])
        if c is not None:
            table[(i, j)] = table[(j, i)] = c
    return table


def process_quotient(root: ProcessExpr, semantics=Semantics.BRANCHING,
                     state_limit=DEFAULT_STATE_LIMIT, normed_only=False) -> ProcessQuotient:
    """Quotient below ``root``.

    With ``normed_only`` the carrier keeps just the weakly normed classes,
    which is the monoid of totally normed behaviours when ``root`` is
    totally normed: normed classes compose to normed classes, and every
    path between two normed classes stays among normed classes.
    """
    semantics = Semantics(semantics)
    lts = explore([root, NIL], state_limit)
    partition = bisim(lts, semantics)
    graph = quotient_graph(lts, partition)
    root_class = partition.block_of[lts.roots[0]]
    zero_class = partition.block_of[lts.roots[1]]
    adj = [[t for _, t in out] for out in graph.succ]
    carrier = reachable(adj, root_class) | {zero_class}
    if normed_only:
        norms = weak_norms(graph)
        carrier = {c for c in carrier if norms[c] != INF}
        if root_class not in carrier:
            raise ValueError(f"{format_expr(root)} is not weakly normed")
    carrier = sorted(carrier)

    depths = weak_depths(graph)
    limit = depths[root_class]
    seeds = [(i, j) for n, i in enumerate(carrier) for j in carrier[n:]
             if limit == INF or depths[i] + depths[j] <= limit]
    table = _product_table(graph, semantics, seeds, carrier)
    return ProcessQuotient(root, semantics, lts, partition, graph, table, carrier)
