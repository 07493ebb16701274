import pytest
from hypothesis import given, strategies as st

from mcastcap import (
    Multigraph,
    TerminalSet,
    degree,
    dump_instance,
    load_instance,
    prune_to_core,
    scale_capacities,
    validate,
)
from mcastcap.errors import (
    BridgeBetweenTerminals,
    DisconnectedTerminals,
    InvalidGraph,
    UnknownVertex,
)


def triangle():
    g = Multigraph.build(["s", "r1", "r2"], [("s", "r1", 1), ("r1", "r2", 1), ("r2", "s", 1)])
    return g, TerminalSet("s", ("r1", "r2"))


class TestValidate:
    def test_triangle_ok(self):
        g, a = triangle()
        validate(g, a)

    def test_dangling_endpoint(self):
        g = Multigraph.build(["s", "r1"], [("s", "zz", 1)])
        with pytest.raises(InvalidGraph):
            validate(g, TerminalSet("s", ("r1",)))

    def test_zero_capacity(self):
        g = Multigraph.build(["s", "r1"], [("s", "r1", 0)])
        with pytest.raises(InvalidGraph):
            validate(g, TerminalSet("s", ("r1",)))

    def test_self_loop(self):
        g = Multigraph.build(["s", "r1"], [("s", "s", 1), ("s", "r1", 1)])
        with pytest.raises(InvalidGraph):
            validate(g, TerminalSet("s", ("r1",)))

    def test_disconnected_terminals(self):
        g = Multigraph.build(
            ["a", "b", "c", "d", "e", "f"],
            [("a", "b", 1), ("b", "c", 1), ("c", "a", 1),
             ("d", "e", 1), ("e", "f", 1), ("f", "d", 1)],
        )
        with pytest.raises(DisconnectedTerminals):
            validate(g, TerminalSet("a", ("d",)))


class TestScale:
    def test_triangle_doubled(self):
        g, _ = triangle()
        g2 = scale_capacities(g, 2)
        assert [e.cap for e in g2.edges] == [2, 2, 2]
        assert g2.vertices == g.vertices
        assert [e.id for e in g2.edges] == [e.id for e in g.edges]

    def test_identity(self):
        g, _ = triangle()
        assert scale_capacities(g, 1) == g

    def test_path(self):
        g = Multigraph.build(["a", "b", "c"], [("a", "b", 2), ("b", "c", 3)])
        assert [e.cap for e in scale_capacities(g, 3).edges] == [6, 9]

    @given(st.integers(1, 5), st.integers(1, 5))
    def test_composition(self, m, n):
        g, _ = triangle()
        assert scale_capacities(scale_capacities(g, m), n) == scale_capacities(g, m * n)


class TestDegree:
    def test_triangle_vertex(self):
        g, _ = triangle()
        assert degree(g, "s") == 2

    def test_capacity_weighting(self):
        g = Multigraph.build(["a", "b"], [("a", "b", 3)])
        assert degree(g, "a") == 3
        assert degree(g, "a", raw=True) == 1

    def test_isolated(self):
        g = Multigraph.build(["a", "b", "c"], [("a", "b", 1)])
        assert degree(g, "c") == 0

    def test_unknown_vertex(self):
        g, _ = triangle()
        with pytest.raises(UnknownVertex):
            degree(g, "nope")

    def test_degree_sum_is_twice_capacity(self):
        g = Multigraph.build(
            ["a", "b", "c", "d"],
            [("a", "b", 2), ("b", "c", 1), ("c", "d", 3), ("a", "d", 1), ("a", "c", 2)],
        )
        assert sum(degree(g, v) for v in g.vertices) == 2 * g.total_capacity()


class TestPrune:
    def test_pendant_path_removed(self):
        g, a = triangle()
        g = g.restrict(g.vertices)  # copy
        g = Multigraph(
            g.vertices | {"p1", "p2"},
            g.edges,
        ).add_edge("r1", "p1").add_edge("p1", "p2")
        core = prune_to_core(g, a)
        assert core.vertices == {"s", "r1", "r2"}
        assert len(core.edges) == 3

    def test_bridgeless_unchanged(self):
        g, a = triangle()
        assert prune_to_core(g, a) == g

    def test_bridge_between_terminals(self):
        g = Multigraph.build(["s", "t"], [("s", "t", 1)])
        with pytest.raises(BridgeBetweenTerminals):
            prune_to_core(g, TerminalSet("s", ("t",)))

    def test_idempotent(self):
        g, a = triangle()
        g = Multigraph(g.vertices | {"p"}, g.edges).add_edge("s", "p")
        once = prune_to_core(g, a)
        assert prune_to_core(once, a) == once

    def test_terminal_free_component_dropped(self):
        g, a = triangle()
        g = Multigraph(g.vertices | {"q1", "q2"}, g.edges).add_edge("q1", "q2")
        assert prune_to_core(g, a).vertices == {"s", "r1", "r2"}


class TestInterchange:
    def test_round_trip(self):
        g, a = triangle()
        g2, a2 = load_instance(dump_instance(g, a))
        assert g2.vertices == g.vertices
        assert [(e.u, e.v, e.cap) for e in g2.edges] == [(e.u, e.v, e.cap) for e in g.edges]
        assert a2 == a

    def test_duplicate_triples_are_parallel_edges(self):
        g, _ = load_instance(
            '{"vertices": ["a", "b"], "edges": [["a", "b", 1], ["a", "b", 1]],'
            ' "source": "a", "sinks": ["b"]}'
        )
        assert len(g.edges) == 2

    def test_rejects_self_loop(self):
        with pytest.raises(InvalidGraph):
            load_instance(
                '{"vertices": ["a", "b"], "edges": [["a", "a", 1], ["a", "b", 1]],'
                ' "source": "a", "sinks": ["b"]}'
            )

    def test_rejects_nonpositive_capacity(self):
        with pytest.raises(InvalidGraph):
            load_instance(
                '{"vertices": ["a", "b"], "edges": [["a", "b", -2]],'
                ' "source": "a", "sinks": ["b"]}'
            )

    def test_rejects_garbage(self):
        with pytest.raises(InvalidGraph):
            load_instance("not json at all")


class TestUnitForm:
    def test_expansion_and_origin_map(self):
        g = Multigraph.build(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1)])
        unit, origin = g.unit_form()
        assert unit.is_unit()
        assert len(unit.edges) == 3
        assert sorted(origin.values()) == [0, 0, 1]

    def test_aggregated_inverts_expansion(self):
        g = Multigraph.build(["a", "b", "c"], [("a", "b", 2), ("b", "c", 3)])
        unit, _ = g.unit_form()
        agg = unit.aggregated()
        assert sorted((e.u, e.v, e.cap) for e in agg.edges) == sorted(
            (e.u, e.v, e.cap) for e in g.edges
        )
