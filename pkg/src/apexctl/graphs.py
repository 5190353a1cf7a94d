"""Immutable bitset graphs: construction, graph6 codec, edits, simplification.

Vertices are dense ids 0..n-1 and each adjacency row is one Python int used
as a bitmask, which keeps neighbourhood intersection, degree and subset
iteration branch-free for everything up to the 64-vertex cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    """Base class for graph argument errors."""


class CapacityError(GraphError):
    """Graph exceeds the 64-vertex capacity."""


class Graph6ParseError(GraphError):
    """Malformed graph6 text; ``offset`` is the byte position in the input."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"order {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count differs from order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references vertices >= {self.n}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
        for v, row in enumerate(self.adj):
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric edge {v}-{u}")

    # -- basic accessors ---------------------------------------------------

    @property
    def size(self) -> int:
        """Number of edges."""
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges (u, v) with u < v in lexicographic order."""
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            for off in bits(row):
                yield u, u + 1 + off

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, g6={to_graph6(self)!r})"


# -- constructors ----------------------------------------------------------


def graph_nocheck(n: int, rows: tuple[int, ...]) -> Graph:
    """Wrap already-validated adjacency rows without invariant re-checks."""
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "adj", rows)
    return g


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"bad edge ({u}, {v}) for order {n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int = 0) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def complete_multipartite(*sizes: int) -> Graph:
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        rows.extend([(full ^ part)] * s)
        start += s
    return Graph(n, tuple(rows))


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): outer 5-cycle, inner pentagram, spokes."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return from_edges(10, outer + inner + spokes)


def heawood_graph() -> Graph:
    """Point-line incidence graph of the Fano plane, via LCF [5,-5]^7."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    for i in range(0, 14, 2):
        edges.append((i, (i + 5) % 14))
    return from_edges(14, edges)


def disjoint_union(*parts: Graph) -> Graph:
    n = sum(p.n for p in parts)
    if n > MAX_VERTICES:
        raise CapacityError(f"union order {n} exceeds {MAX_VERTICES}")
    rows: list[int] = []
    offset = 0
    for p in parts:
        rows.extend(row << offset for row in p.adj)
        offset += p.n
    return Graph(n, tuple(rows))


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex i is ``order[i]`` of ``g``."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * g.n
    for i, v in enumerate(order):
        row = 0
        for u in bits(g.adj[v]):
            row |= 1 << pos[u]
        rows[i] = row
    return Graph(g.n, tuple(rows))


# -- graph6 codec ----------------------------------------------------------


def _g6_size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    # 63..258047 use the '~' + 3 byte form; our cap is 64.
    return bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])


def to_graph6(g: Graph) -> str:
    """Canonical graph6 text (no header, no trailing newline)."""
    out = bytearray(_g6_size_bytes(g.n))
    acc = 0
    nbits = 0
    for v in range(1, g.n):
        for u in range(v):
            acc = acc << 1 | (g.adj[u] >> v & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str) -> Graph:
    """Parse graph6 text; an optional '>>graph6<<' header is allowed."""
    s = text.strip()
    base = 0
    if s.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        s = s[base:]
    data = s.encode("ascii", errors="replace")
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6ParseError(f"character {chr(b)!r} outside graph6 range", base + i)
    if not data:
        raise Graph6ParseError("empty graph6 input", base)
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6ParseError("graph6 long-size form exceeds capacity", base + 1)
        if len(data) < 4:
            raise Graph6ParseError("truncated graph6 size field", base + len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
        body_base = base + 4
    else:
        n = data[0] - 63
        body = data[1:]
        body_base = base + 1
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 order {n} exceeds {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6ParseError(
            f"graph6 body too short: need {need} bytes, got {len(body)}",
            body_base + len(body),
        )
    if len(body) > need:
        raise Graph6ParseError("trailing bytes after graph6 body", body_base + need)
    rows = [0] * n
    k = 0
    for i, b in enumerate(body):
        chunk = b - 63
        take = min(6, nbits - k)
        for j in range(take):
            if chunk >> (5 - j) & 1:
                # bit k is pair (u, v) in column-major upper-triangle order
                u, v = _pair_of_index(k + j)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        if take < 6 and chunk & ((1 << (6 - take)) - 1):
            raise Graph6ParseError("nonzero padding bits", body_base + i)
        k += take
    return Graph(n, tuple(rows))


def _pair_of_index(k: int) -> tuple[int, int]:
    """Inverse of column-major upper-triangle enumeration (0,1),(0,2),(1,2),..."""
    v = 1
    while v * (v - 1) // 2 <= k:
        v += 1
    v -= 1
    return k - v * (v - 1) // 2, v


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


# -- elementary edits ------------------------------------------------------


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")


def induced_subgraph(g: Graph, keep_mask: int) -> Graph:
    """Induced subgraph on the masked vertices, ids re-densified in order."""
    keep = list(bits(keep_mask))
    pos = {v: i for i, v in enumerate(keep)}
    rows = [0] * len(keep)
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & keep_mask):
            row |= 1 << pos[u]
        rows[pos[v]] = row
    return Graph(len(keep), tuple(rows))


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    drop = 0
    for v in vertices:
        _check_vertex(g, v)
        drop |= 1 << v
    return induced_subgraph(g, g.vertex_mask() & ~drop)


def mask_vertices(g: Graph, drop_mask: int) -> Graph:
    """Clear the masked vertices' edges without re-densifying ids."""
    rows = [0 if (drop_mask >> v & 1) else (g.adj[v] & ~drop_mask) for v in range(g.n)]
    return Graph(g.n, tuple(rows))


def _check_edge(g: Graph, e: tuple[int, int]) -> tuple[int, int]:
    u, v = e
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u > v:
        u, v = v, u
    if u == v or not g.has_edge(u, v):
        raise GraphError(f"edge ({e[0]}, {e[1]}) not present")
    return u, v


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = _check_edge(g, e)
    rows = list(g.adj)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Simple contraction: merge v into u, drop the loop, collapse parallels."""
    u, v = _check_edge(g, e)
    rows = list(g.adj)
    merged = (rows[u] | rows[v]) & ~(1 << u) & ~(1 << v)
    rows[u] = merged
    for w in bits(rows[v]):
        rows[w] &= ~(1 << v)
    rows[v] = 0
    for w in bits(merged):
        rows[w] |= 1 << u
    return induced_subgraph(Graph(g.n, tuple(rows)), g.vertex_mask() & ~(1 << v))


# -- simplification --------------------------------------------------------


@dataclass(frozen=True)
class SimplificationResult:
    """Simplified graph plus the map from its vertex ids back to the input."""

    simplified: Graph
    branch_map: tuple[int, ...]


def simplify(g: Graph) -> SimplificationResult:
    """Delete degree-0/1 vertices and suppress degree-2 vertices to a fixed point.

    Suppressing v with neighbours a, b removes v and adds the edge ab when it
    is absent.  The result has minimum degree >= 3 or is empty, and its vertex
    set is a subset of the input's (the branch vertices).
    """
    simplified, branch, _ = _simplify_tracked(g)
    return SimplificationResult(simplified, branch)


def simplify_edge_paths(g: Graph) -> tuple[Graph, tuple[int, ...], dict[tuple[int, int], tuple[int, ...]]]:
    """Like :func:`simplify` but also reports, for each simplified edge (in
    input ids), the interior input vertices absorbed into it by suppression."""
    return _simplify_tracked(g)


def _simplify_tracked(
    g: Graph,
) -> tuple[Graph, tuple[int, ...], dict[tuple[int, int], tuple[int, ...]]]:
    adj = list(g.adj)
    alive = g.vertex_mask()
    # chain interiors per current edge, keyed (min, max) in input ids
    chains: dict[tuple[int, int], tuple[int, ...]] = {}

    def key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def drop_edge(a: int, b: int) -> tuple[int, ...]:
        adj[a] &= ~(1 << b)
        adj[b] &= ~(1 << a)
        return chains.pop(key(a, b), ())

    while alive:
        low = next((v for v in bits(alive) if adj[v].bit_count() <= 1), None)
        if low is not None:
            for u in bits(adj[low]):
                drop_edge(low, u)
            alive &= ~(1 << low)
            continue
        two = next((v for v in bits(alive) if adj[v].bit_count() == 2), None)
        if two is None:
            break
        a, b = bits(adj[two])
        left = drop_edge(two, a)
        right = drop_edge(two, b)
        alive &= ~(1 << two)
        if not adj[a] >> b & 1:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
            path = tuple(reversed(left)) + (two,) + right
            chains[key(a, b)] = path if a < b else tuple(reversed(path))
        # when ab already exists the suppressed chain dissolves entirely

    branch = tuple(bits(alive))
    pos = {v: i for i, v in enumerate(branch)}
    rows = [0] * len(branch)
    for v in branch:
        for u in bits(adj[v]):
            rows[pos[v]] |= 1 << pos[u]
    paths = {key(a, b): interior for (a, b), interior in chains.items()}
    return Graph(len(branch), tuple(rows)), branch, paths


# -- delta-wye moves -------------------------------------------------------


def triangles(g: Graph) -> Iterator[tuple[int, int, int]]:
    """Yield triangles (a, b, c) with a < b < c."""
    for a in range(g.n):
        row_a = g.adj[a] & ~((1 << (a + 1)) - 1)
        for b in bits(row_a):
            common = g.adj[a] & g.adj[b] & ~((1 << (b + 1)) - 1)
            for c in bits(common):
                yield a, b, c


def nabla_y(g: Graph, t: tuple[int, int, int]) -> Graph:
    """Replace triangle t by a new degree-3 vertex joined to its corners."""
    a, b, c = t
    for v in t:
        _check_vertex(g, v)
    if len({a, b, c}) != 3 or not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        raise GraphError(f"vertices {t} do not induce a triangle")
    if g.n + 1 > MAX_VERTICES:
        raise CapacityError("nabla-y would exceed the vertex capacity")
    rows = list(g.adj)
    for u, v in ((a, b), (b, c), (a, c)):
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    new = 1 << a | 1 << b | 1 << c
    for v in (a, b, c):
        rows[v] |= 1 << g.n
    rows.append(new)
    return Graph(g.n + 1, tuple(rows))


def y_nabla(g: Graph, v: int) -> Graph:
    """Delete a degree-3 vertex and make its three neighbours pairwise adjacent."""
    _check_vertex(g, v)
    if g.degree(v) != 3:
        raise GraphError(f"vertex {v} has degree {g.degree(v)}, need 3")
    a, b, c = bits(g.adj[v])
    rows = list(g.adj)
    for x, y in ((a, b), (b, c), (a, c)):
        rows[x] |= 1 << y
        rows[y] |= 1 << x
    for u in (a, b, c):
        rows[u] &= ~(1 << v)
    rows[v] = 0
    return induced_subgraph(Graph(g.n, tuple(rows)), g.vertex_mask() & ~(1 << v))


# -- degree utilities ------------------------------------------------------


def degree_sequence(g: Graph) -> tuple[int, ...]:
    """Sorted (ascending) degree multiset."""
    return tuple(sorted(g.degrees()))


def min_degree(g: Graph) -> int:
    return min(g.degrees(), default=0)


def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == g.vertex_mask()


def connected_components(g: Graph) -> list[int]:
    """Vertex masks of connected components, ordered by smallest member."""
    remaining = g.vertex_mask()
    comps = []
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & remaining & ~seen
            seen |= frontier
        comps.append(seen)
        remaining &= ~seen
    return comps
