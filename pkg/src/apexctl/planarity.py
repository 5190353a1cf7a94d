"""Planarity with certificates: rotation-system embedding or Kuratowski witness.

The decision procedure is Demoucron face insertion run per biconnected
block; quadratic behaviour is fine at the orders handled here.  Witnesses
(K5/K33 subdivisions) are produced by pruning edges from a non-planar
component until every remaining edge is load-bearing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graphs import Graph, bits, connected_components


@dataclass(frozen=True)
class KuratowskiWitness:
    """A K5 or K33 subdivision inside the host graph (host vertex ids)."""

    kind: str  # "K5" or "K33"
    branch_vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]  # branch-to-branch, interiors degree 2
    edges: tuple[tuple[int, int], ...]

    def vertex_mask(self) -> int:
        mask = 0
        for u, v in self.edges:
            mask |= 1 << u | 1 << v
        return mask


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    embedding: tuple[tuple[int, ...], ...] | None
    witness: KuratowskiWitness | None


# -- low-level boolean test on adjacency rows --------------------------------


def _planar_rows(rows: Sequence[int]) -> bool:
    n = len(rows)
    m = sum(r.bit_count() for r in rows) // 2
    if m <= 8:
        return True
    active = sum(1 for r in rows if r)
    if m > 3 * active - 6:
        return False
    remaining = 0
    for v, r in enumerate(rows):
        if r:
            remaining |= 1 << v
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        if not _component_planar(rows, seen):
            return False
        remaining &= ~seen
    return True


def _component_planar(rows: Sequence[int], comp: int) -> bool:
    cm = sum((rows[v] & comp).bit_count() for v in bits(comp)) // 2
    if cm <= 8:
        return True
    if cm > 3 * comp.bit_count() - 6:
        return False
    for block in _blocks(rows, comp):
        if len(block) > 8 and _demoucron(rows, block) is None:
            return False
    return True


def _blocks(rows: Sequence[int], comp: int) -> list[list[tuple[int, int]]]:
    """Edge lists of the biconnected blocks of one component (iterative DFS)."""
    root = (comp & -comp).bit_length() - 1
    num: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int] = {root: -1}
    estack: list[tuple[int, int]] = []
    out: list[list[tuple[int, int]]] = []
    counter = 0
    stack: list[tuple[int, Iterator[int]]] = [(root, bits(rows[root] & comp))]
    num[root] = low[root] = counter
    counter += 1
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in num:
                parent[w] = v
                estack.append((v, w))
                num[w] = low[w] = counter
                counter += 1
                stack.append((w, bits(rows[w] & comp)))
                advanced = True
                break
            elif w != parent[v] and num[w] < num[v]:
                estack.append((v, w))
                if num[w] < low[v]:
                    low[v] = num[w]
        if advanced:
            continue
        stack.pop()
        if stack:
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= num[u]:
                block = []
                while True:
                    e = estack.pop()
                    block.append(e)
                    if e == (u, v):
                        break
                out.append(block)
    return out


def _find_cycle(adj: Sequence[int], verts: int) -> list[int]:
    """Any cycle in a subgraph of minimum degree >= 2 (walk without backtracking)."""
    start = (verts & -verts).bit_length() - 1
    walk = [start]
    pos = {start: 0}
    prev = -1
    while True:
        v = walk[-1]
        w = next(x for x in bits(adj[v] & verts) if x != prev)
        if w in pos:
            return walk[pos[w] :]
        pos[w] = len(walk)
        walk.append(w)
        prev = v


def _demoucron(rows: Sequence[int], block_edges: list[tuple[int, int]]):
    """Planar face set of one biconnected block, or None when non-planar."""
    adj: dict[int, int] = {}
    verts = 0
    for u, v in block_edges:
        adj[u] = adj.get(u, 0) | 1 << v
        adj[v] = adj.get(v, 0) | 1 << u
        verts |= 1 << u | 1 << v
    n = verts.bit_count()
    m = len(block_edges)
    if m > 3 * n - 6:
        return None
    arows = [0] * (max(adj) + 1)
    for v, r in adj.items():
        arows[v] = r

    cycle = _find_cycle(arows, verts)
    faces: list[tuple[int, ...]] = [tuple(cycle), tuple(reversed(cycle))]
    fmasks: list[int] = []
    for f in faces:
        fm = 0
        for v in f:
            fm |= 1 << v
        fmasks.append(fm)
    emb = [0] * len(arows)
    s_mask = 0
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        emb[v] |= 1 << w
        emb[w] |= 1 << v
        s_mask |= 1 << v
    embedded_count = len(cycle)

    while embedded_count < m:
        best = None  # (count, face_idx, path)
        # chord fragments
        done = False
        for u in bits(s_mask):
            pend = arows[u] & s_mask & ~emb[u]
            for v in bits(pend):
                if v < u:
                    continue
                att = 1 << u | 1 << v
                adm = [i for i, fm in enumerate(fmasks) if fm & att == att]
                if not adm:
                    return None
                if best is None or len(adm) < best[0]:
                    best = (len(adm), adm[0], [u, v])
                    if len(adm) == 1:
                        done = True
                        break
            if done:
                break
        # component fragments
        if not done:
            outside = verts & ~s_mask
            while outside:
                seed = outside & -outside
                compv = seed
                frontier = seed
                while frontier:
                    nxt = 0
                    for v in bits(frontier):
                        nxt |= arows[v]
                    frontier = nxt & ~compv & ~s_mask
                    compv |= frontier
                outside &= ~compv
                att = 0
                for v in bits(compv):
                    att |= arows[v] & s_mask
                adm = [i for i, fm in enumerate(fmasks) if fm & att == att]
                if not adm:
                    return None
                if best is None or len(adm) < best[0]:
                    a = att & -att
                    a = a.bit_length() - 1
                    path = _alpha_path(arows, a, compv, s_mask)
                    best = (len(adm), adm[0], path)
                    if len(adm) == 1:
                        break
        assert best is not None
        _, fi, path = best
        face = faces[fi]
        a, b = path[0], path[-1]
        i = face.index(a)
        j = face.index(b)
        if i > j:
            i, j = j, i
            path = path[::-1]
            a, b = b, a
        interior = tuple(path[1:-1])
        face1 = face[i : j + 1] + tuple(reversed(interior))
        face2 = face[j:] + face[:i + 1] + interior
        faces[fi] = face1
        faces.append(face2)
        fm1 = 0
        for v in face1:
            fm1 |= 1 << v
        fm2 = 0
        for v in face2:
            fm2 |= 1 << v
        fmasks[fi] = fm1
        fmasks.append(fm2)
        for x, y in zip(path, path[1:]):
            emb[x] |= 1 << y
            emb[y] |= 1 << x
            s_mask |= 1 << x | 1 << y
        embedded_count += len(path) - 1
    return faces


def _alpha_path(arows: Sequence[int], a: int, compv: int, s_mask: int) -> list[int]:
    """Path from attachment ``a`` through the fragment to another attachment."""
    prev = {a: -1}
    queue = [a]
    qi = 0
    first_level = True
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        nbrs = arows[v] & compv if first_level else arows[v]
        first_level = False
        for w in bits(nbrs):
            if w in prev:
                continue
            prev[w] = v
            if s_mask >> w & 1:
                path = [w]
                x = w
                while x != a:
                    x = prev[x]
                    path.append(x)
                return path[::-1]
            if compv >> w & 1:
                queue.append(w)
    raise AssertionError("fragment with a single attachment in a biconnected block")


# -- public API --------------------------------------------------------------


def planar_bool(g: Graph, removed: int = 0) -> bool:
    """Fast planarity decision; ``removed`` masks vertices out in place."""
    if removed:
        rows = [0 if removed >> v & 1 else g.adj[v] & ~removed for v in range(g.n)]
    else:
        rows = g.adj
    return _planar_rows(rows)


def kuratowski_edges(g: Graph, removed: int = 0) -> list[tuple[int, int]]:
    """Edge set of an edge-minimal non-planar subgraph (a K5/K33 subdivision).

    The subgraph comes from the first non-planar component in smallest-vertex
    order; the input must be non-planar after masking.
    """
    rows = [0 if removed >> v & 1 else g.adj[v] & ~removed for v in range(g.n)]
    comp = next(c for c in _components_of(rows) if not _component_planar(rows, c))
    rows = [rows[v] & comp if comp >> v & 1 else 0 for v in range(g.n)]
    edges = [(u, v) for u in bits(comp) for v in bits(rows[u]) if u < v]
    for u, v in edges:
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        if _planar_rows(rows):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return [(u, v) for u in range(g.n) for v in bits(rows[u]) if u < v]


def _components_of(rows: Sequence[int]) -> Iterator[int]:
    remaining = 0
    for v, r in enumerate(rows):
        if r:
            remaining |= 1 << v
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        yield seen
        remaining &= ~seen


def witness_from_edges(edges: Sequence[tuple[int, int]]) -> KuratowskiWitness:
    """Classify an edge-minimal non-planar subgraph as a K5/K33 subdivision."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    branch = sorted(v for v, nb in adj.items() if len(nb) >= 3)
    degs = sorted(len(adj[v]) for v in branch)
    if len(branch) == 5 and degs == [4] * 5:
        kind = "K5"
    elif len(branch) == 6 and degs == [3] * 6:
        kind = "K33"
    else:  # pragma: no cover - guarded by minimality
        raise AssertionError(f"pruned witness is not a Kuratowski subdivision: {degs}")
    branch_set = set(branch)
    paths: list[tuple[int, ...]] = []
    for b in branch:
        for s in sorted(adj[b]):
            path = [b, s]
            prev, cur = b, s
            while cur not in branch_set:
                nxt = next(x for x in adj[cur] if x != prev)
                path.append(nxt)
                prev, cur = cur, nxt
            if path[0] < path[-1] or (path[0] == path[-1] and False):
                paths.append(tuple(path))
    paths.sort()
    return KuratowskiWitness(kind, tuple(branch), tuple(paths), tuple(sorted(edges)))


def kuratowski_witness(g: Graph, removed: int = 0) -> KuratowskiWitness:
    return witness_from_edges(kuratowski_edges(g, removed))


def _rotation_from_faces(
    n: int, faces: list[list[tuple[int, ...]]], bridge_pairs: list[tuple[int, int]]
) -> tuple[tuple[int, ...], ...]:
    """Merge per-block oriented face sets into one rotation system."""
    rotations: list[list[int]] = [[] for _ in range(n)]
    for block_faces in faces:
        nxt: dict[int, dict[int, int]] = {}
        for face in block_faces:
            k = len(face)
            for i, v in enumerate(face):
                a = face[(i - 1) % k]
                b = face[(i + 1) % k]
                nxt.setdefault(v, {})[a] = b
        # realize each block's corner maps as a cyclic neighbour order
        for v, succ in nxt.items():
            start = min(succ)
            cyc = [start]
            while True:
                w = succ[cyc[-1]]
                if w == start:
                    break
                cyc.append(w)
            rotations[v].extend(cyc)
    for u, v in bridge_pairs:
        rotations[u].append(v)
        rotations[v].append(u)
    return tuple(tuple(r) for r in rotations)


def is_planar(g: Graph) -> PlanarityResult:
    """Planarity with a certificate: embedding if planar, witness if not."""
    comps = connected_components(g)
    block_faces: list[list[tuple[int, ...]]] = []
    bridges: list[tuple[int, int]] = []
    for comp in comps:
        if comp.bit_count() == 1:
            continue
        for block in _blocks(g.adj, comp):
            if len(block) == 1:
                bridges.append(block[0])
                continue
            faces = _demoucron(g.adj, block)
            if faces is None:
                return PlanarityResult(False, None, kuratowski_witness(g))
            block_faces.append(faces)
    embedding = _rotation_from_faces(g.n, block_faces, bridges)
    return PlanarityResult(True, embedding, None)


def trace_faces(embedding: Sequence[Sequence[int]]) -> list[tuple[tuple[int, int], ...]]:
    """Faces of a rotation system as cycles of directed edges."""
    succ: dict[tuple[int, int], tuple[int, int]] = {}
    for v, rot in enumerate(embedding):
        k = len(rot)
        for i, u in enumerate(rot):
            # next directed edge of the face containing (u, v) after arrival at v
            succ[(u, v)] = (v, rot[(i + 1) % k])
    faces = []
    seen: set[tuple[int, int]] = set()
    for e in sorted(succ):
        if e in seen:
            continue
        face = []
        cur = e
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            cur = succ[cur]
        faces.append(tuple(face))
    return faces


def euler_check(g: Graph, embedding: Sequence[Sequence[int]]) -> bool:
    """V - E + F == 2 on every connected component with >= 1 edge."""
    faces = trace_faces(embedding)
    for comp in connected_components(g):
        vcount = comp.bit_count()
        ecount = sum((g.adj[v] & comp).bit_count() for v in bits(comp)) // 2
        if ecount == 0:
            continue
        fcount = sum(1 for f in faces if comp >> f[0][0] & 1)
        if vcount - ecount + fcount != 2:
            return False
    return True
