"""Minor containment with explicit models, minor minimality, and nearness.

Minor search grows disjoint connected branch sets, one per pattern vertex,
with the pattern ordered so each new vertex attaches to already-placed
neighbours; host symmetry is broken at the root through automorphism orbit
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence

from .apex import is_n_apex
from .canon import are_isomorphic, canonical_form, vertex_orbits
from .graphs import (
    Graph,
    GraphError,
    bits,
    complete_bipartite,
    complete_graph,
    contract_edge,
    delete_edge,
    delete_vertices,
    mask_vertices,
    simplify,
    simplify_edge_paths,
    to_graph6,
)
from .planarity import planar_bool

_K33 = complete_bipartite(3, 3)
_K5 = complete_graph(5)
_K5_KEY = canonical_form(_K5).key
_K33_KEY = canonical_form(_K33).key


class SimplificationDomainError(GraphError):
    """Raised when an operation needs (g - v) to simplify to K5 or K33."""

    def __init__(self, actual: Graph) -> None:
        super().__init__(
            f"deleted-vertex graph simplifies to {to_graph6(actual)!r}, not K5 or K33"
        )
        self.actual = actual


# -- minor models ------------------------------------------------------------


@dataclass(frozen=True)
class MinorModel:
    """Branch sets (host vertex tuples) indexed by pattern vertex."""

    branch_sets: tuple[tuple[int, ...], ...]


def _pattern_order(pattern: Graph) -> list[int]:
    """Place high-degree vertices first, preferring ones tied to placed vertices."""
    order: list[int] = []
    placed = 0
    for _ in range(pattern.n):
        best = max(
            (v for v in range(pattern.n) if not placed >> v & 1),
            key=lambda v: ((pattern.adj[v] & placed).bit_count(), pattern.degree(v), -v),
        )
        order.append(best)
        placed |= 1 << best
    return order


def _connected_sets(adj: Sequence[int], seed: int, allowed: int, max_size: int) -> Iterator[int]:
    """All connected vertex masks containing ``seed`` within ``allowed``, once each."""

    def rec(s_mask: int, ext: int, banned: int) -> Iterator[int]:
        yield s_mask
        if s_mask.bit_count() >= max_size:
            return
        cand = ext & ~banned
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            s2 = s_mask | low
            yield from rec(s2, (ext | (adj[x] & allowed)) & ~s2, banned)
            banned |= low

    yield from rec(1 << seed, adj[seed] & allowed, 0)


def minor_model(host: Graph, pattern: Graph) -> MinorModel | None:
    """A branch-set model of ``pattern`` in ``host``, or None."""
    if pattern.n == 0:
        return MinorModel(())
    if pattern.n > host.n or pattern.size > host.size:
        return None
    order = _pattern_order(pattern)
    adj = host.adj
    root_reps = _root_orbit_reps(host.n, host.adj)

    # A model spends |B_p| - 1 host edges inside each branch set and one per
    # pattern edge between sets, so the branch sets cannot total more than
    # this many host vertices.  This is what keeps false cases cheap.
    size_budget = host.size - pattern.size + pattern.n
    host_deg = host.degrees()
    pat_deg = pattern.degrees()

    assignment: list[int] = [0] * pattern.n
    nbr_union: list[int] = [0] * pattern.n  # host neighbourhood of each branch set

    def place(i: int, free: int, budget: int) -> bool:
        if i == pattern.n:
            return True
        p = order[i]
        need_deg = pat_deg[p]
        req = [order[j] for j in range(i) if pattern.has_edge(order[j], p)]
        remaining_after = pattern.n - i - 1
        max_size = min(free.bit_count(), budget) - remaining_after
        if max_size <= 0:
            return False
        if req:
            seed_pool = nbr_union[req[0]] & free
        else:
            seed_pool = free
            if i == 0:
                seed_pool &= root_reps
        req_nbrs = [nbr_union[j] for j in req]
        # free-subgraph component containing each seed: a branch set can
        # never leave it, so untouchable requirements prune the whole seed
        comp_of: dict[int, int] = {}
        rest = free
        while rest:
            start = rest & -rest
            region = _reach(adj, start, free)
            m = region
            while m:
                low = m & -m
                m ^= low
                comp_of[low] = region
            rest &= ~region
        pool = seed_pool
        banned_seeds = 0
        while pool:
            low = pool & -pool
            pool ^= low
            seed = low.bit_length() - 1
            allowed = free & ~banned_seeds
            if all(comp_of[low] & nb for nb in req_nbrs):
                for cand in _connected_sets(adj, seed, allowed, max_size):
                    if any(not cand & nb for nb in req_nbrs):
                        continue
                    # enough host edges must leave the set to serve p's degree
                    k = cand.bit_count()
                    if sum(host_deg[v] for v in bits(cand)) - 2 * (k - 1) < need_deg:
                        continue
                    assignment[p] = cand
                    nb2 = 0
                    for v in bits(cand):
                        nb2 |= adj[v]
                    nbr_union[p] = nb2 & ~cand
                    if place(i + 1, free & ~cand, budget - k):
                        return True
            banned_seeds |= low
        return False

    if place(0, host.vertex_mask(), size_budget):
        return MinorModel(tuple(tuple(bits(assignment[p])) for p in range(pattern.n)))
    return None


@lru_cache(maxsize=4096)
def _root_orbit_reps(n: int, adj: tuple[int, ...]) -> int:
    from .graphs import graph_nocheck

    reps = 0
    for orb in vertex_orbits(graph_nocheck(n, adj)):
        reps |= orb & -orb
    return reps


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def has_minor(host: Graph, pattern: Graph) -> bool:
    """Exact minor containment.

    Patterns of minimum degree >= 3 survive simplification of the host (each
    reduction step preserves such minors both ways), so the search runs on
    the usually much smaller simplified host.
    """
    if pattern.n > 0 and min(pattern.degrees()) >= 3:
        host = simplify(host).simplified
    return minor_model(host, pattern) is not None


def verify_minor_model(host: Graph, pattern: Graph, model: MinorModel) -> bool:
    """Re-check disjointness, connectivity, and pattern-edge coverage."""
    if len(model.branch_sets) != pattern.n:
        return False
    masks = []
    used = 0
    for vs in model.branch_sets:
        m = 0
        for v in vs:
            if not 0 <= v < host.n:
                return False
            m |= 1 << v
        if m == 0 or m & used:
            return False
        used |= m
        # connectivity by BFS inside the set
        start = m & -m
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= host.adj[v]
            frontier = nxt & m & ~seen
            seen |= frontier
        if seen != m:
            return False
        masks.append(m)
    for u, v in pattern.edges():
        if not any(host.adj[x] & masks[v] for x in bits(masks[u])):
            return False
    return True


# -- minor minimality --------------------------------------------------------


class MinorProperty(Enum):
    NONPLANAR = "non-planar"
    NA = "na"
    N2A = "n2a"


def has_property(g: Graph, prop: MinorProperty) -> bool:
    if prop is MinorProperty.NONPLANAR:
        return not planar_bool(g)
    if prop is MinorProperty.NA:
        return not is_n_apex(g, 1).is_n_apex
    return not is_n_apex(g, 2).is_n_apex


def one_step_minors(g: Graph) -> Iterator[tuple[str, Graph]]:
    """Single edge deletions, single contractions, single isolated-vertex
    deletions: the moves generating the proper-minor order."""
    for e in g.edges():
        yield f"delete {e}", delete_edge(g, e)
    for e in g.edges():
        yield f"contract {e}", contract_edge(g, e)
    for v in range(g.n):
        if g.degree(v) == 0:
            yield f"drop isolated {v}", delete_vertices(g, [v])


@dataclass(frozen=True)
class MinimalityVerdict:
    is_minimal: bool
    has_prop: bool
    failing_move: str | None
    failing_child: Graph | None

    def __bool__(self) -> bool:
        return self.is_minimal


def is_minor_minimal(g: Graph, prop: MinorProperty) -> MinimalityVerdict:
    """True iff g has the property and no one-step minor does.

    Properties NA/N2A/non-planarity are inherited upward in the minor order,
    and that order is generated by single edge deletions, contractions and
    isolated-vertex deletions, so checking one-step children suffices.
    """
    if not has_property(g, prop):
        return MinimalityVerdict(False, False, None, None)
    seen: set[tuple[int, int]] = set()
    for move, child in one_step_minors(g):
        key = canonical_form(child).key
        if key in seen:
            continue
        seen.add(key)
        if has_property(child, prop):
            return MinimalityVerdict(False, True, move, child)
    return MinimalityVerdict(True, True, None, None)


# -- branch vertices and nearness ---------------------------------------------


def branch_vertices(g: Graph) -> tuple[int, ...]:
    """Vertices of g surviving into its simplification."""
    return simplify(g).branch_map


@dataclass(frozen=True)
class NearnessReport:
    vertex: int
    kind: str  # "K5" or "K33"
    branch: tuple[int, ...]
    near_vertices: tuple[int, ...]
    near_edges: tuple[tuple[int, int], ...]

    @property
    def near_all(self) -> bool:
        return self.near_vertices == self.branch


def nearness(g: Graph, v: int) -> NearnessReport:
    """Near-vertex and near-edge sets of ``v`` against the simplification of g - v.

    ``v`` is near branch vertex b when some v-b path avoids every other
    branch vertex; near a simplified edge when a neighbour of v sits on that
    edge's suppressed subdivision chain.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    gv = mask_vertices(g, 1 << v)
    simp, branch, chains = simplify_edge_paths(gv)
    key = canonical_form(simp).key
    if key == _K5_KEY:
        kind = "K5"
    elif key == _K33_KEY:
        kind = "K33"
    else:
        raise SimplificationDomainError(simp)

    branch_mask = 0
    for b in branch:
        branch_mask |= 1 << b
    near_verts = []
    for b in branch:
        blocked = branch_mask & ~(1 << b)
        seen = 1 << v
        frontier = 1 << v
        target = 1 << b
        while frontier and not seen & target:
            nxt = 0
            for x in bits(frontier):
                nxt |= g.adj[x]
            frontier = nxt & ~seen & ~blocked
            seen |= frontier
        if seen & target:
            near_verts.append(b)

    nbr = g.adj[v]
    near_edges = []
    for (a, b), interior in sorted(chains.items()):
        if any(nbr >> x & 1 for x in interior):
            near_edges.append((a, b))
    return NearnessReport(v, kind, branch, tuple(near_verts), tuple(near_edges))


def na_by_nearness(g: Graph, v: int) -> bool:
    """Not-apex test via nearness: true iff v is near every branch vertex of g - v."""
    return nearness(g, v).near_all


# -- split-K33 recognition -----------------------------------------------------


def is_split_of(g: Graph, pattern: Graph) -> bool:
    """True iff V(g) partitions into |pattern| tree-inducing branch sets whose
    quotient has exactly the pattern's edges.  Only K33 patterns are supported."""
    if not are_isomorphic(pattern, _K33):
        raise GraphError("split recognition supports only the K33 pattern")
    n = g.n
    if n < 6 or g.size != n + 3:
        return False
    adj = g.adj
    full = g.vertex_mask()
    # parts 0,1,2 one side, 3,4,5 the other; order interleaves the sides so
    # each placement has cross-edge constraints against placed parts
    order = (0, 3, 1, 4, 2, 5)
    side = (0, 0, 0, 1, 1, 1)
    assignment = [0] * 6

    def tree_ok(mask: int) -> bool:
        edges_in = sum((adj[x] & mask).bit_count() for x in bits(mask)) // 2
        if edges_in != mask.bit_count() - 1:
            return False
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= adj[x]
            frontier = nxt & mask & ~seen
            seen |= frontier
        return seen == mask

    def cross_edges(a_mask: int, b_mask: int) -> int:
        return sum((adj[x] & b_mask).bit_count() for x in bits(a_mask))

    def place(i: int, free: int) -> bool:
        p = order[i]
        if i == 5:
            cands: Iterator[int] = iter((free,)) if free else iter(())
        else:
            max_size = free.bit_count() - (5 - i)
            if i == 0:
                seeds = [0]  # pattern is vertex-transitive: host 0 sits in part 0
            else:
                seeds = list(bits(free))
            cands = (
                c
                for k, s in enumerate(seeds)
                for c in _connected_sets(adj, s, free & ~sum(1 << x for x in seeds[:k]), max_size)
            )
        for cand in cands:
            if not tree_ok(cand):
                continue
            ok = True
            for j in range(i):
                q = order[j]
                want = 1 if side[p] != side[q] else 0
                if cross_edges(cand, assignment[q]) != want:
                    ok = False
                    break
            if not ok:
                continue
            # break the symmetry among same-side parts by least member
            if p in (1, 2) and (cand & -cand) < (assignment[0] & -assignment[0]):
                continue
            if p == 2 and (cand & -cand) < (assignment[1] & -assignment[1]):
                continue
            if p in (4, 5) and (cand & -cand) < (assignment[3] & -assignment[3]):
                continue
            if p == 5 and (cand & -cand) < (assignment[4] & -assignment[4]):
                continue
            assignment[p] = cand
            if i == 5 or place(i + 1, free & ~cand):
                return True
        return False

    return place(0, full)
