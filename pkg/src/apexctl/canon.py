"""Canonical labeling, isomorphism testing, and isomorph-free dedup.

The certificate is the lexicographically least upper-triangle bit string
(column-major, the graph6 bit order) over the leaves of a refinement /
individualization search tree.  Discovered automorphisms prune the search
and double as generators for orbit computations elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Graph, bits, relabel


@dataclass(frozen=True)
class CanonicalCertificate:
    """Canonical adjacency bits plus the relabeling that realizes them.

    ``order[i]`` is the input vertex placed at canonical position i; two
    graphs are isomorphic iff their (n, bits) pairs coincide.
    """

    n: int
    bits: int
    order: tuple[int, ...]

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.bits)


def invariant_colors(adj: Sequence[int], n: int) -> list[int]:
    """Label-invariant vertex coloring: power sums of neighbour colors,
    iterated from degrees to a fixed point.  Power sums are symmetric in the
    neighbours, so re-indexing by sorted signature commutes with relabeling."""
    color = [r.bit_count() for r in adj]
    ncolors = len(set(color))
    while True:
        sigs = []
        for v in range(n):
            s1 = s3 = 0
            m = adj[v]
            while m:
                low = m & -m
                m ^= low
                c = color[low.bit_length() - 1] + 1
                s1 += c
                s3 += c * c * c
            sigs.append((color[v] << 40) | (s1 << 20) | s3)
        remap = {s: i for i, s in enumerate(sorted(set(sigs)))}
        if len(remap) == ncolors:
            return [remap[s] for s in sigs]
        ncolors = len(remap)
        color = [remap[s] for s in sigs]


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Coarsest equitable refinement of an ordered partition of vertex masks.

    Cells are bitmasks; splitting is by neighbour counts into a splitter
    cell, with subcells ordered by count.  Splitter masks are queued once at
    creation: cells are always split before their own parts are used as
    splitters, so the fixed point is equitable against every final cell.
    The procedure is deterministic and commutes with relabeling, which is
    all canonicity needs.
    """
    cells = list(cells)
    if all(not c & (c - 1) for c in cells):
        return cells
    queue = list(cells)
    qi = 0
    while qi < len(queue):
        splitter = queue[qi]
        qi += 1
        i = 0
        while i < len(cells):
            cell = cells[i]
            if cell & (cell - 1):  # at least two vertices
                groups: dict[int, int] = {}
                m = cell
                while m:
                    low = m & -m
                    m ^= low
                    cnt = (adj[low.bit_length() - 1] & splitter).bit_count()
                    g = groups.get(cnt)
                    groups[cnt] = low if g is None else g | low
                if len(groups) > 1:
                    parts = [groups[c] for c in sorted(groups)]
                    cells[i : i + 1] = parts
                    queue.extend(parts)
                    i += len(parts) - 1
            i += 1
    return cells


def _leaf_bits(adj: Sequence[int], order: Sequence[int]) -> int:
    """Upper-triangle bits of the relabeled graph, column-major, MSB first."""
    n = len(order)
    out = 0
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            out = out << 1 | (row >> order[i] & 1)
    return out


class _CanonSearch:
    def __init__(self, g: Graph, colors: Sequence[int] | None):
        self.adj = g.adj
        self.n = g.n
        if colors is None:
            colors = invariant_colors(g.adj, g.n)
        init: dict[int, int] = {}
        for v, c in enumerate(colors):
            init[c] = init.get(c, 0) | (1 << v)
        self.root_cells = [init[c] for c in sorted(init)]
        self.best_bits: int | None = None
        self.best_order: tuple[int, ...] | None = None
        self.first_order: tuple[int, ...] | None = None
        self.first_bits: int | None = None
        self.autos: list[tuple[int, ...]] = []

    def run(self) -> tuple[CanonicalCertificate, list[tuple[int, ...]]]:
        if self.n == 0:
            return CanonicalCertificate(0, 0, ()), []
        self._descend(_refine(self.adj, self.root_cells), ())
        assert self.best_bits is not None and self.best_order is not None
        cert = CanonicalCertificate(self.n, self.best_bits, self.best_order)
        return cert, self.autos

    def _descend(self, cells: list[int], fixed: tuple[int, ...]) -> None:
        target = next((i for i, c in enumerate(cells) if c.bit_count() > 1), None)
        if target is None:
            order = tuple(c.bit_length() - 1 for c in cells)
            self._leaf(order)
            return
        cell = cells[target]
        explored = 0
        for v in bits(cell):
            # skip v when a known automorphism fixing the prefix maps an
            # already-explored sibling onto it
            if self._orbit_of(v, fixed) & explored:
                continue
            explored |= 1 << v
            branch = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1 :]
            self._descend(_refine(self.adj, branch), fixed + (v,))

    def _orbit_of(self, v: int, fixed: tuple[int, ...]) -> int:
        """Orbit mask of v under known automorphisms fixing ``fixed`` pointwise."""
        gens = [a for a in self.autos if all(a[x] == x for x in fixed)]
        orbit = 1 << v
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for a in gens:
                y = a[x]
                if not orbit >> y & 1:
                    orbit |= 1 << y
                    frontier.append(y)
        return orbit

    def _leaf(self, order: tuple[int, ...]) -> None:
        leaf = _leaf_bits(self.adj, order)
        if self.first_bits is None:
            self.first_bits, self.first_order = leaf, order
        elif leaf == self.first_bits:
            self._record_auto(self.first_order, order)
        if self.best_bits is None or leaf < self.best_bits:
            self.best_bits, self.best_order = leaf, order
        elif leaf == self.best_bits and order != self.best_order:
            self._record_auto(self.best_order, order)

    def _record_auto(self, ref: Sequence[int], other: Sequence[int]) -> None:
        perm = [0] * self.n
        for i in range(self.n):
            perm[ref[i]] = other[i]
        tperm = tuple(perm)
        if any(p != i for i, p in enumerate(tperm)) and tperm not in self.autos:
            self.autos.append(tperm)


def canonical_data(g: Graph, colors: Sequence[int] | None = None) -> tuple[CanonicalCertificate, list[tuple[int, ...]]]:
    """Certificate plus a generating set of discovered automorphisms."""
    if colors is None and g.n:
        colors = invariant_colors(g.adj, g.n)
        if len(set(colors)) == g.n:
            # discrete invariant coloring: the only consistent labeling is by
            # color rank, and the automorphism group is trivial
            order = tuple(v for _, v in sorted((c, v) for v, c in enumerate(colors)))
            return CanonicalCertificate(g.n, _leaf_bits(g.adj, order), order), []
    return _CanonSearch(g, colors).run()


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> CanonicalCertificate:
    return canonical_data(g, colors)[0]


def canonical_key(g: Graph) -> tuple[int, int]:
    return canonical_form(g).key


def canonical_graph(g: Graph) -> Graph:
    cert = canonical_form(g)
    return relabel(g, cert.order)


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    return canonical_data(g)[1]


def vertex_orbits(g: Graph, gens: Iterable[tuple[int, ...]] | None = None) -> list[int]:
    """Vertex orbit masks under the automorphism group, ordered by least member."""
    if gens is None:
        gens = automorphism_generators(g)
    gens = list(gens)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in gens:
        for v in range(g.n):
            ra, rb = find(v), find(a[v])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        groups[r] = groups.get(r, 0) | (1 << v)
    return [groups[r] for r in sorted(groups)]


def pair_orbit_reps(
    pairs: Iterable[tuple[int, int]], gens: Sequence[tuple[int, ...]]
) -> list[tuple[int, int]]:
    """One representative per orbit of unordered pairs under the given perms."""
    pool = {(min(p), max(p)) for p in pairs}
    reps: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for p in sorted(pool):
        if p in seen:
            continue
        reps.append(p)
        stack = [p]
        seen.add(p)
        while stack:
            u, v = stack.pop()
            for a in gens:
                q = (min(a[u], a[v]), max(a[u], a[v]))
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    return reps


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.size != h.size:
        return False
    if sorted(r.bit_count() for r in g.adj) != sorted(r.bit_count() for r in h.adj):
        return False
    return canonical_form(g).key == canonical_form(h).key


def dedup(graphs: Iterable[Graph]) -> list[Graph]:
    """One representative per isomorphism class, in first-seen order."""
    seen: set[tuple[int, int]] = set()
    out: list[Graph] = []
    for g in graphs:
        key = canonical_form(g).key
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def iter_dedup_keys(graphs: Iterable[Graph]) -> Iterator[tuple[Graph, tuple[int, int]]]:
    seen: set[tuple[int, int]] = set()
    for g in graphs:
        key = canonical_form(g).key
        if key not in seen:
            seen.add(key)
            yield g, key
