"""
Graph and path tests.

Covers graph construction and validation, finite path composition,
canonical forms of eventually periodic paths, reachability and the
entry structure used by condition (L).
"""

import pytest
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


class TestGraphConstruction:
    """Test build_graph and the standing assumptions on E."""

    def test_valid_graph(self):
        """A rose with two petals is valid."""
        from src.tools.graph_tool import build_graph

        graph = build_graph(["x"], [("a", "x", "x"), ("b", "x", "x")], name="rose")

        assert graph.vertices == ("x",)
        assert graph.edges == ("a", "b")
        assert graph.r("a") == "x"
        assert graph.edges_into("x") == ["a", "b"]

    def test_source_vertex_rejected(self):
        """A vertex that receives no edge is a source."""
        from src.models.errors import SourceVertex
        from src.tools.graph_tool import build_graph

        with pytest.raises(SourceVertex) as info:
            build_graph(["x", "y"], [("a", "x", "y"), ("b", "x", "x")])

        assert info.value.vertex == "y"

    def test_dangling_edge_rejected(self):
        """Edges must point at existing vertices."""
        from src.models.errors import DanglingEdge
        from src.tools.graph_tool import build_graph

        with pytest.raises(DanglingEdge) as info:
            build_graph(["x"], [("a", "x", "z")])

        assert info.value.endpoint == "domain"

    def test_duplicate_edge_rejected(self):
        """Edge ids are unique."""
        from src.models.errors import SelfSimError
        from src.tools.graph_tool import build_graph

        with pytest.raises(SelfSimError):
            build_graph(["x"], [("a", "x", "x"), ("a", "x", "x")])

    def test_errors_are_value_errors(self):
        """The CLI relies on every domain error being a ValueError."""
        from src.models.errors import SelfSimError, SourceVertex

        assert issubclass(SelfSimError, ValueError)
        assert issubclass(SourceVertex, SelfSimError)

    def test_sinks_are_allowed(self):
        """A vertex that is the domain of no edge is a sink, not an error."""
        from src.tools.graph_tool import build_graph, has_sinks, sink_vertices

        graph = build_graph(["x", "y"], [("a", "x", "x"), ("b", "y", "x")])

        assert sink_vertices(graph) == ["y"]
        assert has_sinks(graph)


class TestFinitePaths:
    """Test FinitePath composition."""

    def test_make_path(self, triv2):
        """Consecutive edges must satisfy d(e_i) = r(e_{i+1})."""
        from src.tools.graph_tool import make_path

        path = make_path(triv2.graph, ["uv", "vu", "uu"])

        assert path.length == 3
        assert path.range == "u"
        assert path.domain == "u"
        assert str(path) == "uv vu uu"

    def test_make_path_rejects_gap(self, triv2):
        """uu ends at u but vv starts at v."""
        from src.models.errors import NotComposable
        from src.tools.graph_tool import make_path

        with pytest.raises(NotComposable):
            make_path(triv2.graph, ["uu", "vv"])

    def test_vertex_path(self, triv2):
        """The empty edge sequence with a vertex is the vertex path."""
        from src.tools.graph_tool import make_path

        path = make_path(triv2.graph, [], vertex="v")

        assert path.is_vertex()
        assert path.length == 0
        assert str(path) == "v"

    def test_prefix_order(self, triv2):
        """Prefixes, concatenation and stripping agree."""
        from src.tools.graph_tool import make_path

        alpha = make_path(triv2.graph, ["uv"])
        beta = make_path(triv2.graph, ["vu", "uu"])
        whole = alpha.concat(beta)

        assert alpha.is_prefix_of(whole)
        assert not beta.is_prefix_of(whole)
        assert whole.strip_prefix(alpha) == beta
        assert whole.prefix(1) == alpha
        assert whole.suffix_from(1) == beta

    def test_vertex_is_prefix_of_paths_from_it(self, triv2):
        """r(α) ⪯ α."""
        from src.models.graph_models import FinitePath
        from src.tools.graph_tool import make_path

        alpha = make_path(triv2.graph, ["uv", "vv"])

        assert FinitePath.vertex("u").is_prefix_of(alpha)
        assert not FinitePath.vertex("v").is_prefix_of(alpha)

    def test_power(self, swap):
        """γ⁰ is the vertex, γ³ repeats the circuit."""
        from src.tools.graph_tool import make_path

        gamma = make_path(swap.graph, ["a", "b"])

        assert gamma.power(0).is_vertex()
        assert str(gamma.power(3)) == "a b a b a b"

    def test_paths_from_counts(self, triv2):
        """Every vertex of the complete two-vertex graph receives two edges."""
        from src.tools.graph_tool import all_paths_up_to, paths_from

        assert len(paths_from(triv2.graph, "u", 3)) == 8
        assert len(all_paths_up_to(triv2.graph, 2)) == 2 * (1 + 2 + 4)


class TestEventuallyPeriodicPaths:
    """Test canonical forms of prefix·cycle^∞."""

    def test_canonical_prefix(self, swap):
        """a·(b a)^∞ = (a b)^∞."""
        from src.models.graph_models import EvPeriodicPath
        from src.tools.graph_tool import make_path

        graph = swap.graph
        first = EvPeriodicPath.of(make_path(graph, ["a"]), make_path(graph, ["b", "a"]))
        second = EvPeriodicPath.of(make_path(graph, [], "x"), make_path(graph, ["a", "b"]))

        assert first == second

    def test_primitive_cycle(self, swap):
        """(a a)^∞ = a^∞."""
        from src.models.graph_models import EvPeriodicPath
        from src.tools.graph_tool import make_path

        graph = swap.graph
        doubled = EvPeriodicPath.of(make_path(graph, [], "x"), make_path(graph, ["a", "a"]))

        assert doubled.cycle.length == 1
        assert str(doubled) == "x|a"

    def test_edges_and_truncation(self, swap):
        """ξ = b (a)^∞."""
        from src.models.graph_models import EvPeriodicPath
        from src.tools.graph_tool import make_path

        graph = swap.graph
        xi = EvPeriodicPath.of(make_path(graph, ["b"]), make_path(graph, ["a"]))

        assert xi.edge_at(1) == "b"
        assert xi.edge_at(5) == "a"
        assert str(xi.truncate(3)) == "b a a"
        assert xi.shift(1) == EvPeriodicPath.of(make_path(graph, [], "x"), make_path(graph, ["a"]))
        assert xi.has_prefix(make_path(graph, ["b", "a"]))
        assert not xi.has_prefix(make_path(graph, ["a"]))

    def test_prepend_then_strip(self, triv2):
        """strip_prefix undoes prepend."""
        from src.models.graph_models import EvPeriodicPath
        from src.tools.graph_tool import make_path

        graph = triv2.graph
        xi = EvPeriodicPath.of(make_path(graph, [], "u"), make_path(graph, ["uv", "vu"]))
        head = make_path(graph, ["vu", "uu"])

        eta = xi.prepend(head)

        assert eta.has_prefix(head)
        assert eta.strip_prefix(head) == xi

    def test_empty_cycle_rejected(self, swap):
        """The periodic part must be a nonempty circuit."""
        from src.models.errors import NotComposable
        from src.models.graph_models import EvPeriodicPath
        from src.tools.graph_tool import make_path

        with pytest.raises(NotComposable):
            EvPeriodicPath.of(make_path(swap.graph, [], "x"), make_path(swap.graph, [], "x"))

    def test_non_circuit_rejected(self, triv2):
        """uv is not closed."""
        from src.models.errors import NotComposable
        from src.models.graph_models import EvPeriodicPath
        from src.tools.graph_tool import make_path

        with pytest.raises(NotComposable):
            EvPeriodicPath.of(make_path(triv2.graph, [], "u"), make_path(triv2.graph, ["uv"]))


class TestReachabilityAndEntries:
    """Test reachability, strongly connected structure and entries."""

    def test_reaches_from_domain_to_range(self):
        """y reaches x when some path has domain y and range x."""
        from src.tools.graph_tool import build_graph, reaches, reachable_set

        graph = build_graph(["x", "y"], [("a", "x", "x"), ("b", "x", "y"), ("c", "y", "y")])

        assert reaches(graph, "y", "x")
        assert not reaches(graph, "x", "y")
        assert reachable_set(graph, "y") == {"x", "y"}
        assert reachable_set(graph, "x") == {"x"}

    def test_strong_connectivity(self, triv2, zswap2):
        """The complete graph is strongly connected, two disjoint loops are not."""
        from src.tools.graph_tool import is_strongly_connected

        assert is_strongly_connected(triv2.graph)
        assert not is_strongly_connected(zswap2.graph)

    def test_entryless_loops(self, zswap2, loop):
        """Loops at vertices receiving one edge have no entry."""
        from src.tools.graph_tool import circuits_without_entry

        assert sorted(str(c) for c in circuits_without_entry(zswap2.graph)) == ["p", "q"]
        assert [str(c) for c in circuits_without_entry(loop.graph)] == ["e"]

    def test_simple_vertices(self, zswap2, swap):
        """u receives only p; x receives both loops of the rose."""
        from src.tools.graph_tool import is_simple_vertex

        assert is_simple_vertex(zswap2.graph, "u")
        assert not is_simple_vertex(swap.graph, "x")

    def test_circuits_with_entries(self, swap, triv2):
        """Every circuit of the rose and of the complete graph has an entry."""
        from src.tools.graph_tool import circuits_without_entry, has_entry, make_path

        assert circuits_without_entry(swap.graph) == []
        assert circuits_without_entry(triv2.graph) == []
        assert has_entry(triv2.graph, make_path(triv2.graph, ["uv", "vu"]))

    def test_cycle_paths_expand_parallel_edges(self, swap):
        """The rose has the simple circuits a and b."""
        from src.tools.graph_tool import cycle_paths, walk_graph

        cycles = cycle_paths(swap.graph, walk_graph(swap.graph))

        assert sorted(str(c) for c in cycles) == ["a", "b"]
