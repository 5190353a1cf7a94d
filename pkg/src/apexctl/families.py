"""Petersen and Heawood family catalogs generated by move closure.

Both catalogs are breadth-first closures under triangle-to-star and
star-to-triangle moves, deduplicated canonically and regenerated at run
time; nothing is baked in beyond the seeds and the naming rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .canon import canonical_form, canonical_graph
from .graphs import (
    Graph,
    bits,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    delete_edge,
    heawood_graph,
    nabla_y,
    petersen_graph,
    to_graph6,
    triangles,
    y_nabla,
)


@dataclass(frozen=True)
class FamilyEntry:
    name: str
    graph: Graph  # canonical labeling
    order: int
    size: int
    family: str  # "petersen" or "heawood"
    conventional_index: int | None = None  # position in the standard 1..20 listing

    @property
    def graph6(self) -> str:
        return to_graph6(self.graph)


def move_images(g: Graph, moves: str = "both") -> list[Graph]:
    """All single-move images of g (triangle collapses and/or star expansions)."""
    out: list[Graph] = []
    if moves in ("both", "nabla"):
        for t in triangles(g):
            out.append(nabla_y(g, t))
    if moves in ("both", "ynabla"):
        for v in range(g.n):
            if g.degree(v) == 3:
                out.append(y_nabla(g, v))
    return out


def move_closure(seed: Graph, moves: str = "both") -> list[Graph]:
    """Breadth-first closure of ``seed`` under the selected moves.

    Termination: a triangle collapse keeps the edge count, a star expansion
    never raises it, and the order is bounded by edge count, so the state
    space is finite.  Output is canonical forms sorted by (order, size, bits).
    """
    if moves not in ("both", "nabla", "ynabla"):
        raise ValueError(f"unknown move set {moves!r}")
    seen = {canonical_form(seed).key: canonical_graph(seed)}
    frontier = [seed]
    while frontier:
        nxt = []
        for g in frontier:
            for img in move_images(g, moves):
                key = canonical_form(img).key
                if key not in seen:
                    seen[key] = canonical_graph(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen.values(), key=lambda g: (g.n, g.size, canonical_form(g).bits))


def _named(graphs: list[Graph], family: str, aliases: dict[tuple[int, int], tuple[str, int | None]]) -> list[FamilyEntry]:
    prefix = {"petersen": "PF", "heawood": "HW"}[family]
    entries = []
    counter: dict[int, int] = {}
    for g in graphs:
        idx = counter.get(g.n, 0) + 1
        counter[g.n] = idx
        key = canonical_form(g).key
        if key in aliases:
            name, conv = aliases[key]
        else:
            name, conv = f"{prefix}-{g.n:02d}-{idx}", None
        entries.append(FamilyEntry(name, g, g.n, g.size, family, conv))
    return entries


def _petersen_aliases() -> dict[tuple[int, int], tuple[str, int | None]]:
    k6 = complete_graph(6)
    p7 = nabla_y(k6, (0, 1, 2))
    p10 = petersen_graph()
    p9 = y_nabla(p10, 0)
    p8 = y_nabla(p9, next(v for v in range(9) if p9.degree(v) == 3))
    named = {
        "K6": k6,
        "P7": p7,
        "K331": complete_multipartite(3, 3, 1),
        "P8": p8,
        "K44-e": delete_edge(complete_bipartite(4, 4), (0, 4)),
        "P9": p9,
        "P10": p10,
    }
    return {canonical_form(g).key: (name, None) for name, g in named.items()}


def _heawood_aliases(members: list[Graph]) -> dict[tuple[int, int], tuple[str, int | None]]:
    """Conventionally named members, identified by invariants that single
    them out inside the family: order where unique, else degree sequence,
    with a triangle flag separating the two (3^6,4^6) twelve-vertex members."""
    k7 = complete_graph(7)
    out: dict[tuple[int, int], tuple[str, int | None]] = {
        canonical_form(k7).key: ("K7", 1),
        canonical_form(nabla_y(k7, (0, 1, 2))).key: ("H8", None),
        canonical_form(heawood_graph()).key: ("C14", 18),
    }
    deg_named_11 = {
        (3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 6): ("C11", 10),
        (3, 3, 3, 3, 3, 4, 4, 4, 5, 5, 5): ("E11", 8),
        (3, 3, 3, 3, 4, 4, 4, 4, 4, 5, 5): ("H11", 11),
        (3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 5): ("N'11", 16),
        (3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4): ("N11", 17),
    }
    for g in members:
        degs = tuple(sorted(g.degrees()))
        if g.n == 11 and degs in deg_named_11:
            out[canonical_form(g).key] = deg_named_11[degs]
        elif g.n == 12 and degs == (3, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 5):
            out[canonical_form(g).key] = ("C12", 13)
        elif g.n == 12 and degs == (3,) * 6 + (4,) * 6:
            has_triangle = next(iter(triangles(g)), None) is not None
            out[canonical_form(g).key] = ("N'12", 19) if has_triangle else ("H12", 12)
        elif g.n == 13:
            out[canonical_form(g).key] = ("C13", 15)
    return out


@lru_cache(maxsize=1)
def petersen_family() -> tuple[FamilyEntry, ...]:
    members = move_closure(complete_graph(6))
    return tuple(_named(members, "petersen", _petersen_aliases()))


@lru_cache(maxsize=1)
def heawood_family() -> tuple[FamilyEntry, ...]:
    members = move_closure(complete_graph(7))
    return tuple(_named(members, "heawood", _heawood_aliases(members)))


@lru_cache(maxsize=1)
def ks_graphs() -> tuple[FamilyEntry, ...]:
    """The triangle-collapse-only closure of K7 (14 members), with catalog names."""
    members = move_closure(complete_graph(7), moves="nabla")
    catalog = {e.graph.adj: e for e in heawood_family()}
    out = []
    for g in members:
        entry = catalog.get(g.adj)
        assert entry is not None, "nabla-only closure escaped the full closure"
        out.append(entry)
    return tuple(out)


def identify(g: Graph) -> str | None:
    """Catalog name of g, or None when it is in neither family."""
    key = canonical_form(g).key
    for entry in petersen_family() + heawood_family():
        if canonical_form(entry.graph).key == key:
            return entry.name
    return None


def catalog_lines(entries: tuple[FamilyEntry, ...]) -> str:
    """Persistable catalog: one graph6 line per member plus tab-separated name."""
    return "".join(f"{e.graph6}\t{e.name}\n" for e in entries)
