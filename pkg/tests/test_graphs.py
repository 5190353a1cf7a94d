import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apexctl.canon import are_isomorphic, canonical_form
from apexctl.graphs import (
    CapacityError,
    Graph6ParseError,
    GraphError,
    complete_bipartite,
    complete_graph,
    contract_edge,
    cycle_graph,
    degree_sequence,
    delete_edge,
    delete_vertices,
    disjoint_union,
    from_edges,
    from_graph6,
    heawood_graph,
    nabla_y,
    path_graph,
    petersen_graph,
    simplify,
    to_graph6,
    triangles,
    y_nabla,
)
from apexctl.minors import has_minor

graphs_strategy = st.integers(0, 12).flatmap(
    lambda n: st.builds(
        lambda edges: from_edges(n, edges),
        st.lists(
            st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))).filter(
                lambda e: e[0] != e[1]
            ),
            max_size=30,
        )
        if n >= 2
        else st.just([]),
    )
)


class TestGraph6:
    def test_k5_is_known_string(self, k5):
        assert to_graph6(k5) == "D~{"
        assert from_graph6("D~{").adj == k5.adj

    def test_empty_graph(self):
        assert to_graph6(from_edges(0, [])) == "?"
        assert from_graph6("?").n == 0

    def test_header_allowed(self, k5):
        assert from_graph6(">>graph6<<D~{").adj == k5.adj

    def test_petersen_round_trip_against_reference_codec(self, petersen):
        # independent reference: the networkx graph6 codec
        text = to_graph6(petersen)
        ref = nx.from_graph6_bytes(text.encode())
        assert ref.number_of_nodes() == 10
        assert ref.number_of_edges() == 15
        assert all(d == 3 for _, d in ref.degree())
        again = from_graph6(nx.to_graph6_bytes(ref, header=False).decode().strip())
        assert are_isomorphic(again, petersen)

    @given(graphs_strategy)
    @settings(max_examples=150, deadline=None)
    def test_round_trip_identity(self, g):
        assert from_graph6(to_graph6(g)).adj == g.adj

    def test_round_trip_at_capacity(self):
        rng = random.Random(0)
        g = from_edges(64, [(u, v) for u in range(64) for v in range(u + 1, 64) if rng.random() < 0.1])
        assert from_graph6(to_graph6(g)).adj == g.adj

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            from_graph6(chr(65 + 63))  # order 65

    @pytest.mark.parametrize(
        "text",
        ["", "D~", "D~{{", "D~z"],  # empty, short body, long body, bad padding
    )
    def test_parse_errors_name_offset(self, text):
        with pytest.raises(Graph6ParseError) as err:
            from_graph6(text)
        assert err.value.offset >= 0

    def test_bad_character_offset(self):
        with pytest.raises(Graph6ParseError) as err:
            from_graph6("D~\x07")
        assert err.value.offset == 2


class TestEdits:
    def test_delete_vertex_of_complete(self, k7, k6):
        assert delete_vertices(k7, [3]).adj == k6.adj

    def test_delete_nothing(self, k5):
        assert delete_vertices(k5, []).adj == k5.adj

    def test_delete_adjacent_pair_of_petersen(self, petersen):
        # 3-regular and triangle-free: removing an edge's endpoints kills 5 edges
        g = delete_vertices(petersen, [0, 1])
        assert g.n == 8 and g.size == 10

    def test_delete_out_of_range(self, k5):
        with pytest.raises(GraphError):
            delete_vertices(k5, [7])

    def test_contract_k5(self, k5, k4):
        assert are_isomorphic(contract_edge(k5, (0, 1)), k4)

    def test_delete_edge_c4(self):
        assert are_isomorphic(delete_edge(cycle_graph(4), (0, 1)), path_graph(4))

    def test_contract_c4_no_parallel(self):
        assert are_isomorphic(contract_edge(cycle_graph(4), (0, 1)), complete_graph(3))

    def test_contract_collapses_parallels(self):
        # triangle with a doubled route: contracting one edge of C3 gives K2
        g = contract_edge(complete_graph(3), (0, 1))
        assert g.n == 2 and g.size == 1

    def test_absent_edge_error(self, k33):
        with pytest.raises(GraphError):
            delete_edge(k33, (0, 1))
        with pytest.raises(GraphError):
            contract_edge(k33, (0, 1))


class TestSimplify:
    def test_cycle_collapses_to_empty(self):
        r = simplify(cycle_graph(5))
        assert r.simplified.n == 0 and r.branch_map == ()

    def test_subdivided_k33(self, k33):
        edges = [e for e in k33.edges() if e != (0, 3)] + [(0, 6), (6, 3)]
        r = simplify(from_edges(7, edges))
        assert r.branch_map == (0, 1, 2, 3, 4, 5)
        assert are_isomorphic(r.simplified, k33)

    def test_pendant_removed(self, k5):
        g = from_edges(6, list(k5.edges()) + [(0, 5)])
        r = simplify(g)
        assert are_isomorphic(r.simplified, k5)
        assert r.branch_map == (0, 1, 2, 3, 4)

    @given(graphs_strategy)
    @settings(max_examples=80, deadline=None)
    def test_idempotent_and_min_degree(self, g):
        s = simplify(g).simplified
        assert s.n == 0 or min(s.degrees()) >= 3
        assert simplify(s).simplified.adj == s.adj

    def test_result_is_minor(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(4, 9)
            g = from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
            )
            s = simplify(g).simplified
            assert has_minor(g, s)

    def test_branch_map_image_has_degree_three(self):
        rng = random.Random(6)
        for _ in range(25):
            n = rng.randint(4, 10)
            g = from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45]
            )
            r = simplify(g)
            assert len(set(r.branch_map)) == len(r.branch_map) == r.simplified.n


class TestMoves:
    def test_nabla_y_k6_is_p7(self, k6):
        from apexctl.families import identify

        p7 = nabla_y(k6, (0, 1, 2))
        assert p7.size == 15
        assert identify(p7) == "P7"

    def test_nabla_y_k7_is_h8(self, k7):
        from apexctl.families import identify

        h8 = nabla_y(k7, (0, 1, 2))
        assert identify(h8) == "H8"

    def test_edge_count_preserved(self, k7):
        assert nabla_y(k7, (0, 1, 2)).size == k7.size == 21

    def test_non_triangle_rejected(self, k33):
        with pytest.raises(GraphError):
            nabla_y(k33, (0, 1, 2))

    def test_y_nabla_inverts(self, k6):
        p7 = nabla_y(k6, (0, 1, 2))
        v = next(u for u in range(7) if p7.degree(u) == 3)
        assert are_isomorphic(y_nabla(p7, v), k6)

    def test_y_nabla_k4(self, k4):
        assert are_isomorphic(y_nabla(k4, 0), complete_graph(3))
        assert y_nabla(k4, 0).size == 3

    def test_y_nabla_degree_check(self, k5):
        with pytest.raises(GraphError):
            y_nabla(k5, 0)

    def test_edge_count_law(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(4, 9)
            g = from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
            )
            for v in range(n):
                if g.degree(v) != 3:
                    continue
                a, b, c = g.neighbors(v)
                absent = sum(
                    1 for x, y in [(a, b), (a, c), (b, c)] if not g.has_edge(x, y)
                )
                assert y_nabla(g, v).size == g.size - 3 + absent
                break

    def test_nabla_then_y_nabla_round_trip(self):
        rng = random.Random(12)
        done = 0
        while done < 20:
            n = rng.randint(4, 9)
            g = from_edges(
                n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
            )
            t = next(iter(triangles(g)), None)
            if t is None:
                continue
            img = nabla_y(g, t)
            assert are_isomorphic(y_nabla(img, g.n), g)
            done += 1


class TestDegrees:
    def test_complete(self, k7):
        assert degree_sequence(k7) == (6,) * 7

    def test_heawood(self, heawood):
        assert heawood.n == 14 and heawood.size == 21
        assert degree_sequence(heawood) == (3,) * 14

    def test_p9_catalog_sequence(self):
        from apexctl.families import petersen_family

        p9 = next(e for e in petersen_family() if e.name == "P9")
        assert degree_sequence(p9.graph) == (3,) * 6 + (4,) * 3

    @given(graphs_strategy)
    @settings(max_examples=100, deadline=None)
    def test_handshake(self, g):
        assert sum(degree_sequence(g)) == 2 * g.size


def test_disjoint_union_sizes(k5, k6):
    u = disjoint_union(k6, k5)
    assert u.n == 11 and u.size == 25
