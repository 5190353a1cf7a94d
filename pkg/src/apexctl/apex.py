"""Exact n-apex decisions via Kuratowski-witness hitting sets.

Any vertex set whose deletion planarizes the graph must meet every
non-planar subgraph, in particular a Kuratowski witness; so the search
branches only over witness vertices, refreshing the witness per level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, bits, delete_vertices
from .planarity import is_planar, kuratowski_edges, planar_bool


@dataclass(frozen=True)
class ApexVerdict:
    budget: int
    is_n_apex: bool
    witness: tuple[int, ...] | None
    refuted: int

    def __bool__(self) -> bool:
        return self.is_n_apex


def is_n_apex(g: Graph, n: int, hint: tuple[int, ...] | None = None) -> ApexVerdict:
    """Decide whether deleting at most ``n`` vertices makes ``g`` planar.

    ``hint`` optionally supplies the vertices of a known non-planar subgraph
    of ``g``; every deletion set must hit it, which skips one witness
    extraction at the root.
    """
    if n < 0:
        raise ValueError("apex budget must be >= 0")
    refuted = 0
    failed: dict[int, int] = {}  # removed-mask -> largest budget already refuted

    def search(removed: int, budget: int, hint_vertices: tuple[int, ...] | None):
        nonlocal refuted
        if failed.get(removed, -1) >= budget:
            return None
        if planar_bool(g, removed):
            return ()
        if budget == 0:
            refuted += 1
            failed[removed] = 0
            return None
        if hint_vertices is None:
            wmask = 0
            for u, v in kuratowski_edges(g, removed):
                wmask |= 1 << u | 1 << v
            hint_vertices = tuple(bits(wmask))
        for v in hint_vertices:
            sub = search(removed | 1 << v, budget - 1, None)
            if sub is not None:
                return (v,) + sub
        failed[removed] = budget
        return None

    found = search(0, n, hint)
    if found is None:
        return ApexVerdict(n, False, None, refuted)
    witness = tuple(sorted(found))
    # independent re-check of the reported witness
    assert is_planar(delete_vertices(g, witness)).planar
    return ApexVerdict(n, True, witness, refuted)


def apex_number(g: Graph, cap: int) -> int | None:
    """Least n <= cap with is_n_apex true, or None when the cap is exceeded."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    for n in range(cap + 1):
        if is_n_apex(g, n).is_n_apex:
            return n
    return None
