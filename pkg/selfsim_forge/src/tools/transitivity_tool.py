"""
Orbit-aware reachability between vertices.

x ≫ y when some path goes from x into the G-orbit of y. Equivalently some
vertex in the orbit of x reaches y, because G acts by graph automorphisms;
both readings are computed and compared.
"""

import logging
from typing import Dict, List, Set

import networkx as nx

from ..models.triple_models import Triple
from .action_tool import vertex_orbits
from .graph_tool import reachable_set, reaches, walk_graph


logger = logging.getLogger(__name__)


def _orbit_index(triple: Triple) -> Dict[str, Set[str]]:
    index: Dict[str, Set[str]] = {}
    for orbit in vertex_orbits(triple):
        for x in orbit:
            index[x] = set(orbit)
    return index


def ggeq(triple: Triple, x: str, y: str) -> bool:
    """x ≫ y."""
    orbits = _orbit_index(triple)
    into_orbit = bool(reachable_set(triple.graph, x) & orbits[y])
    from_orbit = any(reaches(triple.graph, v, y) for v in orbits[x])
    assert into_orbit == from_orbit, f"orbit reachability disagrees for {x}, {y}"
    return into_orbit


def ggeq_table(triple: Triple) -> Dict[str, Set[str]]:
    """x ↦ {y : x ≫ y}, computed once for all pairs."""
    graph = triple.graph
    orbits = _orbit_index(triple)
    table = {}
    for x in graph.vertices:
        reach = reachable_set(graph, x)
        table[x] = {y for y in graph.vertices if reach & orbits[y]}
    return table


def is_g_transitive(triple: Triple) -> bool:
    """x ≫ y for every pair of vertices."""
    table = ggeq_table(triple)
    vertices = set(triple.graph.vertices)
    return all(table[x] == vertices for x in triple.graph.vertices)


def is_weakly_g_transitive(triple: Triple) -> bool:
    """
    Every infinite path passes through some vertex v with v ≫ x, for every x.

    An infinite path avoiding {v : v ≫ x} must eventually circle inside the
    complement, so the criterion is that this complement spans no cycle of
    the walk graph.
    """
    graph = triple.graph
    table = ggeq_table(triple)
    walk = walk_graph(graph)
    for x in graph.vertices:
        bad = [v for v in graph.vertices if x not in table[v]]
        if not nx.is_directed_acyclic_graph(walk.subgraph(bad)):
            logger.debug(f"An infinite path avoids every vertex above {x}")
            return False
    return True


def vertex_classes(triple: Triple) -> List[List[str]]:
    """
    The classes of x ≈ y (x ≫ y and y ≫ x), ordered so that a class comes
    before every class it lies above.
    """
    graph = triple.graph
    table = ggeq_table(triple)
    relation = nx.DiGraph()
    relation.add_nodes_from(graph.vertices)
    relation.add_edges_from((x, y) for x in graph.vertices for y in table[x] if x != y)
    condensed = nx.condensation(relation)
    order = {v: i for i, v in enumerate(graph.vertices)}
    ranked = nx.lexicographical_topological_sort(
        condensed, key=lambda c: min(order[v] for v in condensed.nodes[c]["members"])
    )
    return [sorted(condensed.nodes[c]["members"], key=order.get) for c in ranked]
