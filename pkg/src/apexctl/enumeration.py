"""Isomorph-free graph generation and the obstruction searches built on it.

Generation is canonical edge augmentation: a child with one more edge is
kept only when the added edge lies in the child's canonical-deletion orbit,
and augmentations are tried once per parent automorphism orbit.  Together
these give exactly one generation path per isomorphism class, so streams
carry no duplicates and need no global dedup memory.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from .apex import is_n_apex
from .canon import canonical_data, canonical_form, invariant_colors, pair_orbit_reps
from .graphs import Graph, bits, disjoint_union, graph_nocheck, is_connected
from .minors import MinorProperty, has_property, is_minor_minimal
from .planarity import planar_bool

MAX_ORDER = 24


@dataclass(frozen=True)
class Constraints:
    """Target shape of the generated graphs.

    ``order`` and ``size`` are exact values or inclusive (lo, hi) ranges;
    ``regular`` forces k-regularity, ``degree_sequence`` an exact degree
    multiset (sorted ascending).
    """

    order: int | tuple[int, int]
    size: int | tuple[int, int] | None = None
    min_degree: int = 0
    regular: int | None = None
    connected: bool = False
    degree_sequence: tuple[int, ...] | None = None

    def orders(self) -> tuple[int, int]:
        lo, hi = (self.order, self.order) if isinstance(self.order, int) else self.order
        if not 0 <= lo <= hi <= MAX_ORDER:
            raise ValueError(f"order range {lo}..{hi} outside 0..{MAX_ORDER}")
        return lo, hi

    def sizes(self, n: int) -> tuple[int, int]:
        cap = n * (n - 1) // 2
        if self.size is None:
            lo, hi = 0, cap
        elif isinstance(self.size, int):
            lo = hi = self.size
        else:
            lo, hi = self.size
        return max(lo, 0), min(hi, cap)

    def validate(self) -> None:
        lo, hi = self.orders()
        if self.degree_sequence is not None:
            n = len(self.degree_sequence)
            if not lo <= n <= hi:
                raise ValueError("degree_sequence length outside the order range")
            if sum(self.degree_sequence) % 2:
                raise ValueError("degree_sequence has odd sum")
            if self.regular is not None and set(self.degree_sequence) != {self.regular}:
                raise ValueError("degree_sequence conflicts with regular")
            slo, shi = self.sizes(n)
            if not slo <= sum(self.degree_sequence) // 2 <= shi:
                raise ValueError("degree_sequence conflicts with size")
        if self.regular is not None and self.min_degree > self.regular:
            raise ValueError("min_degree exceeds regular degree")


def _target_multiset(c: Constraints, n: int) -> tuple[int, ...] | None:
    if c.degree_sequence is not None:
        return c.degree_sequence if len(c.degree_sequence) == n else ()
    if c.regular is not None:
        if (c.regular * n) % 2:
            return ()  # no k-regular graph of this order
        return (c.regular,) * n
    return None


class _OrderGenerator:
    """Canonical-augmentation generation of all graphs on ``n`` vertices."""

    def __init__(self, n: int, c: Constraints):
        self.n = n
        self.c = c
        self.size_lo, self.size_hi = c.sizes(n)
        self.target = _target_multiset(c, n)
        if self.target is not None and self.target != ():
            m = sum(self.target) // 2
            self.size_lo = self.size_hi = m
            self.target_desc = tuple(sorted(self.target, reverse=True))
            self.cap = self.target_desc[0]
        else:
            self.target_desc = None
            self.cap = n - 1
        self.min_deg = c.min_degree

    # -- feasibility ---------------------------------------------------------

    def _feasible(self, rows: Sequence[int], m: int) -> bool:
        if self.target_desc is not None:
            degs = sorted((r.bit_count() for r in rows), reverse=True)
            if any(d > t for d, t in zip(degs, self.target_desc)):
                return False
            return m <= self.size_hi
        deficiency = sum(
            max(0, self.min_deg - r.bit_count()) for r in rows
        )
        return deficiency <= 2 * (self.size_hi - m)

    def _emits(self, rows: Sequence[int], m: int) -> bool:
        if m < self.size_lo or m > self.size_hi:
            return False
        if self.target_desc is not None:
            if sorted((r.bit_count() for r in rows), reverse=True) != list(self.target_desc):
                return False
        elif any(r.bit_count() < self.min_deg for r in rows):
            return False
        if self.c.connected and not is_connected(graph_nocheck(self.n, tuple(rows))):
            return False
        return True

    def _saturated_component(self, rows: Sequence[int], u: int, k: int) -> bool:
        """Is u's component all at the regular degree yet not the whole graph?

        Such a component can never gain an edge, so a connected target is
        unreachable; the test only runs when the last edge saturated both
        endpoints.  Pruning is sound along canonical chains: a subgraph of a
        connected k-regular graph with a saturated proper component would
        force that component onto the final graph as well.
        """
        seen = 1 << u
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                m ^= low
                nxt |= rows[low.bit_length() - 1]
            frontier = nxt & ~seen
            seen |= frontier
        if seen.bit_count() == self.n:
            return False
        m = seen
        while m:
            low = m & -m
            m ^= low
            if rows[low.bit_length() - 1].bit_count() != k:
                return False
        return True

    # -- canonical-parent test -------------------------------------------------

    @staticmethod
    def _colors(rows: tuple[int, ...], n: int) -> list[int]:
        return invariant_colors(rows, n)

    @staticmethod
    def _bridges(rows: Sequence[int], n: int) -> set[tuple[int, int]]:
        """Bridge edges of all components (iterative DFS lowpoints)."""
        disc = [-1] * n
        low = [0] * n
        out: set[tuple[int, int]] = set()
        counter = 0
        for root in range(n):
            if disc[root] != -1 or not rows[root]:
                continue
            stack = [(root, -1, rows[root])]
            disc[root] = low[root] = counter
            counter += 1
            while stack:
                v, parent, todo = stack[-1]
                if todo:
                    lowbit = todo & -todo
                    stack[-1] = (v, parent, todo ^ lowbit)
                    w = lowbit.bit_length() - 1
                    if disc[w] == -1:
                        disc[w] = low[w] = counter
                        counter += 1
                        stack.append((w, v, rows[w] & ~(1 << v)))
                    elif disc[w] < low[v]:
                        low[v] = disc[w]
                else:
                    stack.pop()
                    if parent != -1:
                        if low[v] < low[parent]:
                            low[parent] = low[v]
                        if low[v] > disc[parent]:
                            out.add((parent, v) if parent < v else (v, parent))
        return out

    def _accept(self, rows, pedges, pdegs, pnds, u, v, child_forest, e_on_cycle):
        """(is (u, v) canonical-deletion in the child, child canon if computed).

        The deletion key ranks cycle edges above bridges, then by packed
        endpoint degree pair, refinement color pair, and finally canonical
        position orbits.  Preferring non-bridges keeps the canonical chain
        of a connected graph connected all the way down to its forests.
        """
        if not child_forest and not e_on_cycle:
            return (False, None)  # the added edge is a bridge but cycles exist
        du, dv = pdegs[u] + 1, pdegs[v] + 1
        best0 = (du << 8 | dv) if du >= dv else (dv << 8 | du)
        ties0 = [(u, v)]
        higher: list[tuple[int, int]] = []
        for a, b in pedges:
            da = pdegs[a] + (1 if (a == u or a == v) else 0)
            db = pdegs[b] + (1 if (b == u or b == v) else 0)
            k = (da << 8 | db) if da >= db else (db << 8 | da)
            if k > best0:
                if child_forest:
                    return (False, None)
                higher.append((a, b))
            elif k == best0:
                ties0.append((a, b))
        if not child_forest and (higher or len(ties0) > 1):
            bridges = self._bridges(rows, self.n)
            if any(e not in bridges for e in higher):
                return (False, None)
            ties0 = [e for e in ties0 if e == (u, v) or e not in bridges]
        if len(ties0) == 1:
            return (True, None)

        # secondary key: neighbour-degree sums, O(1) from the parent arrays
        prow_u = rows[u] & ~(1 << v)
        prow_v = rows[v] & ~(1 << u)

        def nds(a: int) -> int:
            s = pnds[a] + (prow_u >> a & 1) + (prow_v >> a & 1)
            if a == u:
                s += pdegs[v] + 1
            elif a == v:
                s += pdegs[u] + 1
            return s

        def key2(a: int, b: int) -> int:
            da = pdegs[a] + (1 if (a == u or a == v) else 0)
            db = pdegs[b] + (1 if (b == u or b == v) else 0)
            ka = da << 16 | nds(a)
            kb = db << 16 | nds(b)
            return (ka << 32 | kb) if ka >= kb else (kb << 32 | ka)

        ekey1 = key2(u, v)
        best1 = ekey1
        ties1 = []
        for a, b in ties0:
            k = ekey1 if (a, b) == (u, v) else key2(a, b)
            if k > best1:
                return (False, None)
            if k == best1:
                ties1.append((a, b))
        if len(ties1) == 1:
            return (True, None)
        ties0 = ties1

        # tertiary key: refinement color pair among the surviving edges
        color = self._colors(rows, self.n)
        cu, cv = color[u], color[v]
        ekey = (cu << 8 | cv) if cu >= cv else (cv << 8 | cu)
        ties: list[tuple[int, int]] = []
        best = ekey
        for a, b in ties0:
            ca, cb = color[a], color[b]
            k = (ca << 8 | cb) if ca >= cb else (cb << 8 | ca)
            if k > best:
                return (False, None)
            if k == best:
                ties.append((a, b))
        if len(ties) == 1:
            return (True, None)
        if ekey != best:
            return (False, None)
        # tie: fall back to the canonical labeling and automorphism orbits
        g = graph_nocheck(self.n, rows)
        canon = canonical_data(g)
        cert, gens = canon
        pos = [0] * self.n
        for i, w in enumerate(cert.order):
            pos[w] = i

        def cpos(e: tuple[int, int]) -> tuple[int, int]:
            a, b = pos[e[0]], pos[e[1]]
            return (a, b) if a < b else (b, a)

        chosen = min(ties, key=cpos)
        # accept iff (u, v) maps to the same canonical position pair under Aut
        if cpos((u, v)) == cpos(chosen):
            return (True, canon)
        orbit = {chosen}
        stack = [chosen]
        while stack:
            a, b = stack.pop()
            for perm in gens:
                q = (perm[a], perm[b]) if perm[a] < perm[b] else (perm[b], perm[a])
                if q not in orbit:
                    orbit.add(q)
                    stack.append(q)
        return ((u, v) in orbit or (v, u) in orbit, canon)

    # -- search -----------------------------------------------------------------

    def run(self, emit: Callable[[Graph], None]) -> None:
        rows0 = (0,) * self.n
        if self._feasible(rows0, 0) or self._emits(rows0, 0):
            self._rec(rows0, 0, emit, None)

    def run_split(self, depth: int) -> tuple[list[Graph], list[tuple[tuple[int, ...], int]]]:
        """Shallow emissions plus the frontier nodes at ``depth`` edges.

        Each frontier node roots an independent subtree (the canonical-parent
        test is a pure function), so workers can enumerate them in parallel.
        """
        shallow: list[Graph] = []
        frontier: list[tuple[tuple[int, ...], int]] = []
        self._frontier = frontier
        rows0 = (0,) * self.n
        if self._feasible(rows0, 0) or self._emits(rows0, 0):
            self._rec(rows0, 0, shallow.append, None, cutoff=depth)
        del self._frontier
        return shallow, frontier

    def _candidates(self, rows: tuple[int, ...], m: int) -> list[tuple[int, int]]:
        out = []
        if m >= self.size_hi:
            return out
        for u in range(self.n):
            du = rows[u].bit_count()
            if du >= self.cap:
                continue
            free = ~rows[u] & ~((1 << (u + 1)) - 1) & ((1 << self.n) - 1)
            for off in bits(free):
                v = off
                if rows[v].bit_count() >= self.cap:
                    continue
                out.append((u, v))
        return out

    def _rec(self, rows, m, emit, canon, cutoff: int | None = None) -> None:
        if cutoff is not None and m >= cutoff:
            self._frontier.append((rows, m))
            return
        if self._emits(rows, m):
            emit(graph_nocheck(self.n, rows))
        cands = self._candidates(rows, m)
        if not cands:
            return
        n = self.n
        pdegs = [r.bit_count() for r in rows]
        pedges = [(a, a + 1 + off) for a in range(n) for off in bits(rows[a] >> (a + 1))]
        pnds = [0] * n
        for a, b in pedges:
            pnds[a] += pdegs[b]
            pnds[b] += pdegs[a]
        if len(cands) > 1:
            # Same-orbit augmentations give the same child and must be tried
            # once.  Orbits refine the color-pair classes, so unique-key
            # candidates stand alone; automorphisms are only computed when
            # keys actually collide.
            pcolor = self._colors(rows, n)
            groups: dict[int, int] = {}
            for u, v in cands:
                cu, cv = pcolor[u], pcolor[v]
                k = (cu << 8 | cv) if cu >= cv else (cv << 8 | cu)
                groups[k] = groups.get(k, 0) + 1
            if any(c > 1 for c in groups.values()):
                if canon is not None:
                    gens = canon[1]
                elif len(set(pcolor)) == n:
                    gens = []
                else:
                    gens = canonical_data(graph_nocheck(n, rows))[1]
                if gens:
                    cands = pair_orbit_reps(cands, gens)
        k_reg = self.c.regular
        untouched = sum(1 for d in pdegs if d == 0)
        # component labels over touched vertices; untouched stay -1
        comp = [-1] * n
        tc = 0
        for s in range(n):
            if pdegs[s] == 0 or comp[s] != -1:
                continue
            frontier = 1 << s
            seen = frontier
            while frontier:
                nxt = 0
                mm = frontier
                while mm:
                    low = mm & -mm
                    mm ^= low
                    nxt |= rows[low.bit_length() - 1]
                frontier = nxt & ~seen
                seen |= frontier
            mm = seen
            while mm:
                low = mm & -mm
                mm ^= low
                comp[low.bit_length() - 1] = tc
            tc += 1
        parent_forest = m == (n - untouched) - tc if tc else True
        for u, v in cands:
            same_comp = comp[u] == comp[v] and comp[u] != -1
            if self.c.connected and same_comp and tc > 1:
                # a cycle in a disconnected core can never reach a connected
                # final along a bridge-last canonical chain
                continue
            child = list(rows)
            child[u] |= 1 << v
            child[v] |= 1 << u
            trows = tuple(child)
            if not self._feasible(trows, m + 1) and not self._emits(trows, m + 1):
                continue
            if self.c.connected:
                # isolated vertices are components of their own; k components
                # need k-1 merging edges
                iso = untouched - (pdegs[u] == 0) - (pdegs[v] == 0)
                if self.size_hi - (m + 1) < iso + (1 if m + 1 else 0) - 1:
                    continue
                if (
                    k_reg is not None
                    and pdegs[u] + 1 == k_reg
                    and pdegs[v] + 1 == k_reg
                    and self._saturated_component(trows, u, k_reg)
                ):
                    continue
            ok, child_canon = self._accept(
                trows, pedges, pdegs, pnds, u, v, parent_forest and not same_comp, same_comp
            )
            if ok:
                self._rec(trows, m + 1, emit, child_canon, cutoff)


def _subtree_worker(args: tuple) -> list[tuple[int, ...]]:
    n, c, rows, m = args
    gen = _OrderGenerator(n, c)
    out: list[tuple[int, ...]] = []
    gen._rec(rows, m, lambda g: out.append(g.adj), None)
    return out


def generate(c: Constraints, jobs: int = 1) -> Iterator[Graph]:
    """Exactly one representative per isomorphism class satisfying ``c``.

    With ``jobs`` > 1 the augmentation tree is split at a shallow edge-count
    frontier and the subtrees enumerated by worker processes; the merged
    stream is sorted canonically so reports stay deterministic.
    """
    c.validate()
    lo, hi = c.orders()
    for n in range(lo, hi + 1):
        if c.degree_sequence is not None and len(c.degree_sequence) != n:
            continue
        gen = _OrderGenerator(n, c)
        if gen.target == ():
            continue
        if jobs <= 1:
            collected: list[Graph] = []
            gen.run(collected.append)
            yield from collected
            continue
        from multiprocessing import Pool

        shallow, frontier = gen.run_split(depth=min(4, gen.size_hi))
        results: list[Graph] = list(shallow)
        with Pool(jobs) as pool:
            for adjs in pool.imap_unordered(
                _subtree_worker, [(n, c, rows, m) for rows, m in frontier], chunksize=8
            ):
                results.extend(graph_nocheck(n, adj) for adj in adjs)
        results.sort(key=lambda g: (g.size, canonical_form(g).bits))
        yield from results


def count(c: Constraints) -> int:
    return sum(1 for _ in generate(c))


# -- disjoint unions -----------------------------------------------------------


def compose_unions(
    part_streams: Sequence[Iterable[Graph]], max_total_size: int | None = None
) -> list[Graph]:
    """Disjoint unions taking one graph from each stream, isomorph-free."""
    pools = [list(s) for s in part_streams]
    if not pools:
        return []
    seen: set[tuple[int, int]] = set()
    out: list[Graph] = []

    def rec(i: int, acc: Graph | None) -> None:
        if i == len(pools):
            assert acc is not None
            key = canonical_form(acc).key
            if key not in seen:
                seen.add(key)
                out.append(acc)
            return
        for g in pools[i]:
            nxt = g if acc is None else disjoint_union(acc, g)
            if max_total_size is not None and nxt.size > max_total_size:
                continue
            rec(i + 1, nxt)

    rec(0, None)
    return out


def _multiset_unions(
    pieces: Sequence[Graph],
    max_order: int,
    max_size: int,
    exact_order: int | None = None,
    exact_size: int | None = None,
) -> Iterator[Graph]:
    """All disjoint unions of >= 2 pieces (repetition allowed) within bounds.

    Distinct piece multisets give non-isomorphic unions (unique factorization
    into connected components), so no dedup pass is needed.
    """

    def rec(start: int, chosen: list[Graph], order: int, size: int) -> Iterator[Graph]:
        if len(chosen) >= 2 and (exact_order is None or order == exact_order) and (
            exact_size is None or size == exact_size
        ):
            yield disjoint_union(*chosen)
        for i in range(start, len(pieces)):
            p = pieces[i]
            if order + p.n > max_order or size + p.size > max_size:
                continue
            yield from rec(i, chosen + [p], order + p.n, size + p.size)

    yield from rec(0, [], 0, 0)


# -- obstruction search ----------------------------------------------------------


@dataclass
class ObstructionReport:
    property: str
    max_edges: int
    scope: dict
    members: list[dict] = field(default_factory=list)
    candidates: int = 0
    property_holders: int = 0
    elapsed_ms: int = 0
    jobs: int = 1

    def graphs(self) -> list[Graph]:
        from .graphs import from_graph6

        return [from_graph6(m["graph6"]) for m in self.members]

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "max_edges": self.max_edges,
            "scope": self.scope,
            "members": self.members,
            "counts": {
                "candidates": self.candidates,
                "property_holders": self.property_holders,
                "minor_minimal": len(self.members),
            },
            "elapsed_ms": self.elapsed_ms,
            "jobs": self.jobs,
        }


def default_jobs() -> int:
    env = os.environ.get("APEXCTL_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _property_of(tag: str) -> MinorProperty:
    return {"na": MinorProperty.NA, "n2a": MinorProperty.N2A}[tag]


def _candidate_stream(
    prop: MinorProperty, max_edges: int, scope: Constraints | None, include_unions: bool
) -> Iterator[Graph]:
    """Connected candidates plus disjoint unions, all with min degree >= 3.

    Restricting to minimum degree three is sound for minor-minimal searches:
    deleting an isolated vertex or contracting an edge at a vertex of degree
    one or two yields a proper minor that keeps NA/N2A, so no minor-minimal
    graph has such a vertex.
    """
    if scope is None:
        scope = Constraints(order=(4, (2 * max_edges) // 3), min_degree=3)
    lo, hi = scope.orders()
    base = Constraints(
        order=(lo, hi),
        size=(0, max_edges) if scope.size is None else scope.size,
        min_degree=max(scope.min_degree, 3),
        regular=scope.regular,
        connected=True,
        degree_sequence=scope.degree_sequence,
    )
    yield from generate(base)
    if not include_unions:
        return
    # pieces for unions: connected, min degree >= 3, small enough to combine
    piece_c = Constraints(
        order=(4, hi - 4),
        size=(6, max_edges - 6),
        min_degree=max(scope.min_degree, 3),
        regular=scope.regular,
        connected=True,
    )
    pieces = list(generate(piece_c))
    exact_order = hi if isinstance(scope.order, int) else None
    exact_size = scope.size if isinstance(scope.size, int) else None
    if scope.degree_sequence is not None:
        exact_order = len(scope.degree_sequence)
        exact_size = sum(scope.degree_sequence) // 2
    for g in _multiset_unions(pieces, hi, max_edges, exact_order, exact_size):
        if scope.degree_sequence is not None and tuple(sorted(g.degrees())) != scope.degree_sequence:
            continue
        yield g


def _test_candidate(g: Graph, prop: MinorProperty) -> tuple[bool, bool]:
    """(has property, is minor minimal) with the cheap tests first."""
    if g.size <= 8 or planar_bool(g):
        return False, False
    budget = 1 if prop is MinorProperty.NA else 2
    if is_n_apex(g, budget).is_n_apex:
        return False, False
    return True, is_minor_minimal(g, prop).is_minimal


def search_obstructions(
    property_tag: str,
    max_edges: int,
    scope: Constraints | None = None,
    jobs: int | None = None,
    include_unions: bool = True,
    progress: Callable[[int], None] | None = None,
) -> ObstructionReport:
    """Complete list of minor-minimal graphs for the property within scope."""
    from .families import identify

    prop = _property_of(property_tag)
    jobs = jobs or default_jobs()
    t0 = time.monotonic()
    report = ObstructionReport(
        property=property_tag,
        max_edges=max_edges,
        scope=_scope_dict(scope, max_edges),
        jobs=jobs,
    )
    stream = _candidate_stream(prop, max_edges, scope, include_unions)
    found: list[Graph] = []
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            for g, (holds, minimal) in zip(
                s := list(stream), pool.starmap(_test_candidate, ((x, prop) for x in s), chunksize=64)
            ):
                report.candidates += 1
                report.property_holders += holds
                if minimal:
                    found.append(g)
    else:
        for g in stream:
            report.candidates += 1
            holds, minimal = _test_candidate(g, prop)
            report.property_holders += holds
            if minimal:
                found.append(g)
            if progress and report.candidates % 500 == 0:
                progress(report.candidates)
    found.sort(key=lambda g: (g.n, g.size, canonical_form(g).bits))
    from .canon import canonical_graph
    from .graphs import to_graph6

    for g in found:
        assert min(g.degrees()) >= 3, "scope reduction violated: low-degree obstruction"
        report.members.append({"graph6": to_graph6(canonical_graph(g)), "name": identify(g)})
    report.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return report


def _scope_dict(scope: Constraints | None, max_edges: int) -> dict:
    if scope is None:
        return {
            "order": [4, (2 * max_edges) // 3],
            "min_degree": 3,
            "unions": True,
        }
    return {
        "order": list(scope.orders()),
        "size": scope.size,
        "min_degree": max(scope.min_degree, 3),
        "regular": scope.regular,
        "degree_sequence": scope.degree_sequence,
        "unions": True,
    }
