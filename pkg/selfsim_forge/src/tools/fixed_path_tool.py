"""
Strongly fixed paths and the search for minimal ones.

A path α is strongly fixed by g when gα = α and φ(g, α) = 1. Reading α edge
by edge, that means every edge is fixed by the running restriction and the
last restriction is the identity; α is minimal when no earlier restriction
already was. The search below explores states (h, v) = (restriction, vertex
reached) with h ≠ 1 and sends every identity restriction to a terminal node,
so minimal strongly fixed paths are exactly the source-to-terminal walks of
the state graph.
"""

import logging
from collections import deque
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from ..models.graph_models import FinitePath, Graph
from ..models.report_models import MinFixedKind, MinFixedSet, PumpingWitness
from ..models.triple_models import Triple
from .action_tool import act_and_cocycle
from .graph_tool import all_paths_up_to


logger = logging.getLogger(__name__)

SOURCE = "source"
TERMINAL = "terminal"


def is_strongly_fixed_stepwise(triple: Triple, g: Any, path: FinitePath) -> bool:
    """Edge-by-edge form: every edge fixed by the running restriction, final restriction 1."""
    if path.is_vertex():
        return triple.group.is_identity(g)
    h = g
    for e in path.edges:
        if triple.act_edge(h, e) != e:
            return False
        h = triple.phi(h, e)
    return triple.group.is_identity(h)


def is_strongly_fixed(triple: Triple, g: Any, path: FinitePath) -> bool:
    """gα = α and φ(g, α) = 1."""
    image, restriction = act_and_cocycle(triple, g, path)
    result = image == path and triple.group.is_identity(restriction)
    assert result == is_strongly_fixed_stepwise(triple, g, path)
    return result


def is_minimal_strongly_fixed(triple: Triple, g: Any, path: FinitePath) -> bool:
    if not is_strongly_fixed(triple, g, path):
        return False
    return not any(is_strongly_fixed(triple, g, path.prefix(k)) for k in range(path.length))


def brute_force_minimal(triple: Triple, g: Any, length: int) -> List[FinitePath]:
    """Minimal strongly fixed paths of length ≤ `length`, by exhaustive enumeration."""
    found = [p for p in all_paths_up_to(triple.graph, length) if is_minimal_strongly_fixed(triple, g, p)]
    return sorted(found, key=_path_key)


def _path_key(path: FinitePath) -> Tuple:
    return (path.length, path.vertices[0], path.edges)


class FixedStateSearch:
    """
    Breadth-first exploration of the restriction-state graph for one element.

    Nodes are SOURCE, TERMINAL and ("state", h, v). SOURCE has an arrow to
    every start state (g, x) with g·x = x; an edge e leaving (h, v) exists
    when r(e) = v and h·e = e, and leads to TERMINAL when φ(h, e) = 1.

    Attributes:
        closed: Whether every reachable state was expanded
        parents: BFS tree (state -> (parent state, edge))
    """

    def __init__(self, triple: Triple, g: Any, bound: int):
        self.triple = triple
        self.g = g
        self.bound = bound
        self.states = nx.MultiDiGraph()
        self.states.add_node(SOURCE)
        self.states.add_node(TERMINAL)
        self.parents: Dict[Any, Tuple[Any, Optional[str]]] = {}
        self.closed = False

    def run(self) -> "FixedStateSearch":
        triple = self.triple
        graph = triple.graph
        one = triple.group.identity
        queue = deque()
        for x in graph.vertices:
            if triple.act_vertex(self.g, x) == x:
                start = ("state", self.g, x)
                self.states.add_edge(SOURCE, start, key=x)
                self.parents[start] = (SOURCE, None)
                queue.append(start)
        expanded = 0
        while queue:
            if expanded >= self.bound:
                logger.warning(f"Fixed-path search for g={self.g} stopped after {self.bound} states")
                return self
            node = queue.popleft()
            expanded += 1
            _, h, v = node
            for e in graph.edges_into(v):
                if triple.act_edge(h, e) != e:
                    continue
                nxt = triple.phi(h, e)
                if nxt == one:
                    self.states.add_edge(node, TERMINAL, key=e)
                    continue
                child = ("state", nxt, graph.d(e))
                if child not in self.parents:
                    self.parents[child] = (node, e)
                    queue.append(child)
                self.states.add_edge(node, child, key=e)
        self.closed = True
        logger.debug(f"Fixed-path search for g={self.g} closed with {expanded} states")
        return self

    def useful(self) -> nx.MultiDiGraph:
        """The subgraph of nodes on some SOURCE → TERMINAL walk."""
        forward = nx.descendants(self.states, SOURCE) | {SOURCE}
        backward = nx.ancestors(self.states, TERMINAL) | {TERMINAL}
        return self.states.subgraph(forward & backward)

    def walk_to(self, graph: nx.MultiDiGraph, source: Any, target: Any) -> List[str]:
        nodes = nx.shortest_path(graph, source, target)
        return [min(graph[u][v]) for u, v in zip(nodes, nodes[1:])]

    def tree_path(self, node: Any) -> FinitePath:
        """The BFS-tree path from the start vertex to `node`."""
        edges = []
        while True:
            parent, edge = self.parents[node]
            if parent == SOURCE:
                break
            edges.append(edge)
            node = parent
        start_vertex = node[2]
        return _path_from(self.triple.graph, start_vertex, list(reversed(edges)))


def _path_from(graph: Graph, start: str, edges: List[str]) -> FinitePath:
    vertices = [start]
    for e in edges:
        vertices.append(graph.d(e))
    return FinitePath(tuple(edges), tuple(vertices))


def _state_vertex(node: Any) -> str:
    return node[2]


def _pumping_from_cycle(search: FixedStateSearch, useful: nx.MultiDiGraph) -> Optional[PumpingWitness]:
    core = useful.subgraph([n for n in useful if n not in (SOURCE, TERMINAL)])
    try:
        cycle = nx.find_cycle(core)
    except nx.NetworkXNoCycle:
        return None
    graph = search.triple.graph
    anchor = cycle[0][0]
    loop_edges = [key for _, _, key in cycle]
    head = search.walk_to(useful, SOURCE, anchor)
    start_vertex = head[0]
    prefix = _path_from(graph, start_vertex, head[1:])
    loop = _path_from(graph, _state_vertex(anchor), loop_edges)
    suffix = _path_from(graph, _state_vertex(anchor), search.walk_to(useful, anchor, TERMINAL))
    return PumpingWitness(g=search.g, prefix=prefix, loop=loop, suffix=suffix)


def _pumping_from_divisibility(search: FixedStateSearch) -> Optional[PumpingWitness]:
    """
    Integer restrictions only: a tree ancestor (K, v) of (K', v) with K | K'.

    Along a fixed walk the restriction is multiplied by S_e / L_e at each step
    and fixedness only needs L_e | K, so the loop from (K, v) to (K', v)
    repeats from (K', v), and a finishing path from (K, v) finishes from
    every multiple of K.
    """
    finishing = nx.ancestors(search.states, TERMINAL)
    graph = search.triple.graph
    for node in list(search.parents):
        _, k_node, v = node
        ancestor = search.parents[node][0]
        loop_edges = [search.parents[node][1]]
        while ancestor != SOURCE:
            _, k_anc, v_anc = ancestor
            if v_anc == v and ancestor in finishing and k_node % k_anc == 0:
                prefix = search.tree_path(ancestor)
                loop = _path_from(graph, v, list(reversed(loop_edges)))
                tail = search.walk_to(search.states, ancestor, TERMINAL)
                suffix = _path_from(graph, v, tail)
                return PumpingWitness(g=search.g, prefix=prefix, loop=loop, suffix=suffix)
            parent, edge = search.parents[ancestor]
            if parent != SOURCE:
                loop_edges.append(edge)
            ancestor = parent
    return None


def minimal_strongly_fixed_paths(triple: Triple, g: Any, bound: int = 10000) -> MinFixedSet:
    """
    The set M_g of minimal strongly fixed paths.

    M_1 is the set of vertices. For finite groups the answer is exact. For
    the integers the search is exact when it closes within `bound` states;
    otherwise a divisibility pumping certificate proves INFINITE, or the
    answer is UNKNOWN.
    """
    if triple.group.is_identity(g):
        return MinFixedSet(MinFixedKind.FINITE, paths=[FinitePath.vertex(x) for x in triple.graph.vertices])

    search = FixedStateSearch(triple, g, bound).run()
    if not search.closed:
        witness = _pumping_from_divisibility(search) if not triple.is_finite() else None
        if witness is not None:
            logger.info(f"M_{g} is infinite (divisibility pumping at {witness.loop})")
            return MinFixedSet(MinFixedKind.INFINITE, witness=witness)
        return MinFixedSet(MinFixedKind.UNKNOWN, bound=bound)

    useful = search.useful()
    witness = _pumping_from_cycle(search, useful)
    if witness is not None:
        logger.info(f"M_{g} is infinite (state cycle through {witness.loop})")
        return MinFixedSet(MinFixedKind.INFINITE, witness=witness)

    if TERMINAL not in useful:
        return MinFixedSet(MinFixedKind.FINITE, paths=[])
    graph = triple.graph
    paths = []
    for walk in nx.all_simple_edge_paths(useful, SOURCE, TERMINAL):
        start_vertex = walk[0][2]
        paths.append(_path_from(graph, start_vertex, [key for _, _, key in walk[1:]]))
        if len(paths) > bound:
            return MinFixedSet(MinFixedKind.UNKNOWN, bound=bound)
    return MinFixedSet(MinFixedKind.FINITE, paths=sorted(paths, key=_path_key))


def strongly_fixed_edges(triple: Triple, g: Any) -> List[str]:
    return [e for e in triple.graph.edges
            if triple.act_edge(g, e) == e and triple.group.is_identity(triple.phi(g, e))]
