from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotorchip.bruteforce import enumerate_digraphs, reachability_matrix
from rotorchip.multigraph import (
    DirectedMultigraph,
    induced_subgraph,
    is_eulerian,
    is_strongly_connected,
    scc_decompose,
)


def small_graphs(max_n: int = 5, max_mult: int = 3) -> st.SearchStrategy[DirectedMultigraph]:
    def build(n: int, draw_rows: list[list[int]]) -> DirectedMultigraph:
        rows = [[0 if u == v else draw_rows[u][v] for v in range(n)] for u in range(n)]
        return DirectedMultigraph(n=n, mult=tuple(tuple(r) for r in rows))

    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(
                st.lists(st.integers(min_value=0, max_value=max_mult), min_size=n, max_size=n),
                min_size=n,
                max_size=n,
            ),
        )
    )


class TestConstruction:
    def test_from_edges_accumulates_multiplicity(self) -> None:
        g = DirectedMultigraph.from_edges(2, [(0, 1, 1), (0, 1, 2)])
        assert g.mult == ((0, 3), (0, 0))

    def test_rejects_loops(self) -> None:
        with pytest.raises(ValueError):
            DirectedMultigraph.from_edges(2, [(0, 0, 1)])

    def test_rejects_negative_multiplicity(self) -> None:
        with pytest.raises(ValueError):
            DirectedMultigraph(n=2, mult=((0, -1), (0, 0)))

    def test_rejects_bad_shape(self) -> None:
        with pytest.raises(ValueError):
            DirectedMultigraph(n=2, mult=((0, 1),))

    def test_add_edge_returns_new_graph(self) -> None:
        g = DirectedMultigraph.empty(2)
        h = g.add_edge(0, 1, 2)
        assert g.mult == ((0, 0), (0, 0))
        assert h.mult == ((0, 2), (0, 0))

    def test_degrees_and_successors(self) -> None:
        g = DirectedMultigraph.from_edges(3, [(0, 1, 2), (0, 2, 1), (1, 0, 1)])
        assert g.out_degree(0) == 3
        assert g.in_degree(0) == 1
        assert g.successors(0) == (1, 2)
        assert g.predecessors(1) == (0,)
        assert g.edge_count() == 4
        assert g.is_sink_vertex(2)
        assert not g.is_sink_vertex(0)


class TestLaplacian:
    def test_two_cycle(self, c2: DirectedMultigraph) -> None:
        # Column v carries -outdeg(v) on the diagonal and d(v, u) off it.
        assert c2.laplacian() == ((-1, 1), (1, -1))

    def test_double_edge(self, d21: DirectedMultigraph) -> None:
        assert d21.laplacian() == ((-2, 1), (2, -1))

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_columns_sum_to_zero(self, g: DirectedMultigraph) -> None:
        lap = g.laplacian()
        for v in range(g.n):
            assert sum(lap[u][v] for u in range(g.n)) == 0


class TestScc:
    def test_two_cycle_single_component(self, c2: DirectedMultigraph) -> None:
        scc = scc_decompose(c2)
        assert len(scc.components) == 1
        assert scc.is_sink == (True,)
        assert scc.is_trivial == (False,)

    def test_sink_vertex_is_trivial_sink_component(self, fig1: DirectedMultigraph) -> None:
        scc = scc_decompose(fig1)
        assert len(scc.components) == 2
        sink_comp = scc.component_of[3]
        assert scc.is_sink[sink_comp]
        assert scc.is_trivial[sink_comp]
        other = scc.component_of[0]
        assert scc.component_of[1] == other and scc.component_of[2] == other
        assert not scc.is_sink[other]

    def test_sink_component_always_exists(self) -> None:
        for g in enumerate_digraphs(3, 1):
            scc = scc_decompose(g)
            assert scc.sink_component_ids()

    @given(small_graphs(max_n=6, max_mult=1))
    @settings(max_examples=80, deadline=None)
    def test_components_match_mutual_reachability(self, g: DirectedMultigraph) -> None:
        scc = scc_decompose(g)
        reach = reachability_matrix(g)
        for u in range(g.n):
            for v in range(g.n):
                same = scc.component_of[u] == scc.component_of[v]
                assert same == (reach[u][v] and reach[v][u])

    @given(small_graphs(max_n=6, max_mult=1))
    @settings(max_examples=80, deadline=None)
    def test_sink_components_have_no_exits(self, g: DirectedMultigraph) -> None:
        scc = scc_decompose(g)
        for cid, members in enumerate(scc.components):
            exits = [
                w
                for v in members
                for w in g.successors(v)
                if scc.component_of[w] != cid
            ]
            assert scc.is_sink[cid] == (not exits)


class TestPredicates:
    def test_strongly_connected(self, c2: DirectedMultigraph, fig1: DirectedMultigraph) -> None:
        assert is_strongly_connected(c2)
        assert not is_strongly_connected(fig1)

    def test_eulerian_balance(self, c2: DirectedMultigraph, d21: DirectedMultigraph) -> None:
        assert is_eulerian(c2)
        assert not is_eulerian(d21)

    def test_induced_subgraph(self, fig1: DirectedMultigraph) -> None:
        sub, remap = induced_subgraph(fig1, [0, 1, 2])
        assert sub.n == 3
        assert remap == {0: 0, 1: 1, 2: 2}
        # The sink column vanished; remaining multiplicities survive.
        assert sub.mult[0][1] == 1 and sub.mult[2][0] == 1
        assert sub.out_degree(0) == 2
