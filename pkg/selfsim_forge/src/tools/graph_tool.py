"""
Graph construction, validation and graph-theoretic predicates.

Two networkx views of a Graph are used throughout the package:

- the walk graph has an arrow r(e) → d(e) for every edge e, so a finite path
  e₁e₂…eₙ is a walk starting at its range;
- the reach graph reverses it (d(e) → r(e)), matching the relation x → y
  "some path has domain x and range y".

Both are MultiDiGraphs keyed by edge id, so parallel edges stay distinct.
"""

import itertools
import logging
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..models.errors import DanglingEdge, LiteralError, NotComposable, SelfSimError, SourceVertex
from ..models.graph_models import FinitePath, Graph


logger = logging.getLogger(__name__)


def build_graph(vertices: Sequence[str], edges: Sequence[Tuple[str, str, str]], name: str = "") -> Graph:
    """
    Build a Graph from vertex ids and (edge id, range, domain) triples.

    Raises:
        SelfSimError: duplicate or clashing identifiers
        DanglingEdge: an endpoint is not a vertex
        SourceVertex: some vertex receives no edge
    """
    range_map = {}
    domain_map = {}
    for edge_id, rng, dom in edges:
        if edge_id in range_map:
            raise SelfSimError(f"edge id '{edge_id}' is used twice")
        range_map[edge_id] = rng
        domain_map[edge_id] = dom
    if len(set(vertices)) != len(vertices):
        raise SelfSimError("vertex ids must be distinct")
    graph = Graph(
        vertices=tuple(vertices),
        edges=tuple(e for e, _, _ in edges),
        range_map=range_map,
        domain_map=domain_map,
        name=name,
    )
    validate_graph(graph)
    return graph


def validate_graph(graph: Graph) -> None:
    """
    Check the standing assumptions on E: finite, total maps, no sources.

    Raises:
        SelfSimError: a vertex id is also an edge id
        DanglingEdge: range or domain names an unknown vertex
        SourceVertex: r⁻¹(x) is empty for some vertex x
    """
    vertex_set = set(graph.vertices)
    clash = vertex_set.intersection(graph.edges)
    if clash:
        raise SelfSimError(f"identifier '{sorted(clash)[0]}' names both a vertex and an edge")
    for e in graph.edges:
        if graph.range_map.get(e) not in vertex_set:
            raise DanglingEdge(e, "range", graph.range_map.get(e))
        if graph.domain_map.get(e) not in vertex_set:
            raise DanglingEdge(e, "domain", graph.domain_map.get(e))
    receiving = {graph.r(e) for e in graph.edges}
    for x in graph.vertices:
        if x not in receiving:
            raise SourceVertex(x)
    logger.debug(f"Graph '{graph.name}' valid: {len(graph.vertices)} vertices, {len(graph.edges)} edges")


def make_path(graph: Graph, edges: Sequence[str], vertex: Optional[str] = None) -> FinitePath:
    """
    Build a FinitePath from an edge sequence, or the vertex path when edges is empty.

    Raises:
        LiteralError: unknown edge or vertex id
        NotComposable: d(eᵢ) ≠ r(eᵢ₊₁)
    """
    if not edges:
        if vertex is None or not graph.is_vertex(vertex):
            raise LiteralError(f"'{vertex}' is not a vertex")
        return FinitePath.vertex(vertex)
    for e in edges:
        if not graph.is_edge(e):
            raise LiteralError(f"'{e}' is not an edge")
    vertices = [graph.r(edges[0])]
    for i, e in enumerate(edges):
        if graph.r(e) != vertices[-1]:
            raise NotComposable(
                f"NotComposable: d({edges[i - 1]}) = {vertices[-1]} but r({e}) = {graph.r(e)}"
            )
        vertices.append(graph.d(e))
    if vertex is not None and vertex != vertices[0]:
        raise NotComposable(f"NotComposable: path starts at {vertices[0]}, not {vertex}")
    return FinitePath(tuple(edges), tuple(vertices))


def edge_path(graph: Graph, e: str) -> FinitePath:
    return FinitePath((e,), (graph.r(e), graph.d(e)))


def paths_from(graph: Graph, x: str, n: int) -> List[FinitePath]:
    """All paths of length n with range x, in lexicographic input order."""
    layer = [FinitePath.vertex(x)]
    for _ in range(n):
        layer = [p.concat(edge_path(graph, e)) for p in layer for e in graph.edges_into(p.domain)]
    return layer


def all_paths_up_to(graph: Graph, n: int) -> List[FinitePath]:
    """Every path of length ≤ n, vertices included."""
    result = []
    for x in graph.vertices:
        for k in range(n + 1):
            result.extend(paths_from(graph, x, k))
    return result


def is_simple_vertex(graph: Graph, x: str) -> bool:
    """A vertex is simple when exactly one edge has it as range."""
    return len(graph.edges_into(x)) == 1


def has_entry(graph: Graph, gamma: FinitePath) -> bool:
    """Some d(γᵢ) receives two or more edges."""
    return any(not is_simple_vertex(graph, v) for v in gamma.vertices[1:])


def walk_graph(graph: Graph, edges: Optional[Iterable[str]] = None) -> nx.MultiDiGraph:
    """Arrows r(e) → d(e), optionally restricted to a subset of edges."""
    walk = nx.MultiDiGraph()
    walk.add_nodes_from(graph.vertices)
    for e in (graph.edges if edges is None else edges):
        walk.add_edge(graph.r(e), graph.d(e), key=e)
    return walk


def reach_graph(graph: Graph) -> nx.MultiDiGraph:
    """Arrows d(e) → r(e)."""
    reach = nx.MultiDiGraph()
    reach.add_nodes_from(graph.vertices)
    for e in graph.edges:
        reach.add_edge(graph.d(e), graph.r(e), key=e)
    return reach


def reaches(graph: Graph, x: str, y: str) -> bool:
    """x → y: some path α has d(α) = x and r(α) = y. Reflexive."""
    return x == y or y in nx.descendants(reach_graph(graph), x)


def reachable_set(graph: Graph, x: str) -> Set[str]:
    """{y : x → y}."""
    return {x} | nx.descendants(reach_graph(graph), x)


def cycle_paths(graph: Graph, walk: nx.MultiDiGraph, cap: Optional[int] = None) -> List[FinitePath]:
    """
    Simple circuits of a walk graph, one FinitePath per choice of parallel edges.

    Stops after `cap` circuits when a cap is given.
    """
    result: List[FinitePath] = []
    for nodes in nx.simple_cycles(nx.DiGraph(walk)):
        hops = list(zip(nodes, nodes[1:] + nodes[:1]))
        choices = [sorted(walk[u][v]) for u, v in hops]
        for picked in itertools.product(*choices):
            result.append(FinitePath(tuple(picked), tuple(nodes) + (nodes[0],)))
            if cap is not None and len(result) >= cap:
                logger.debug(f"Circuit enumeration stopped at cap {cap}")
                return result
    return result


def shortest_walk(graph: Graph, walk: nx.MultiDiGraph, source: str, target: str) -> Optional[FinitePath]:
    """A shortest path with range `source` and domain `target` inside the walk graph."""
    try:
        nodes = nx.shortest_path(walk, source, target)
    except nx.NetworkXNoPath:
        return None
    edges = tuple(min(walk[u][v]) for u, v in zip(nodes, nodes[1:]))
    return FinitePath(edges, tuple(nodes))


def circuits_without_entry(graph: Graph) -> List[FinitePath]:
    """
    Entryless circuits, one per cycle of the simple-vertex subgraph.

    Empty exactly when condition (L) holds.
    """
    simple = {x for x in graph.vertices if is_simple_vertex(graph, x)}
    edges = [e for e in graph.edges if graph.r(e) in simple and graph.d(e) in simple]
    return cycle_paths(graph, walk_graph(graph, edges))


def sink_vertices(graph: Graph) -> List[str]:
    """Vertices that are the domain of no edge."""
    sources_of_edges = {graph.d(e) for e in graph.edges}
    return [x for x in graph.vertices if x not in sources_of_edges]


def has_sinks(graph: Graph) -> bool:
    return bool(sink_vertices(graph))


def is_strongly_connected(graph: Graph) -> bool:
    return nx.is_strongly_connected(reach_graph(graph))
