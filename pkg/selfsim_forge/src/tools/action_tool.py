"""
Triple validation and the extension of the action and cocycle to paths.

On a path the action is a Mealy machine whose state is the current
restriction: reading edge e in state h writes h·e and moves to φ(h, e).
Everything here is a loop over that machine; infinite eventually periodic
paths are handled by running whole cycle blocks until a state repeats.
"""

import itertools
import logging
from typing import Any, Dict, List, Tuple

import networkx as nx

from ..models.errors import (
    CocycleViolation,
    NotAutomorphism,
    NotEventuallyPeriodicWithinBound,
    NotHomomorphism,
    SelfSimError,
    VertexConditionViolation,
)
from ..models.graph_models import EvPeriodicPath, FinitePath
from ..models.triple_models import FiniteTriple, IntTriple, Triple


logger = logging.getLogger(__name__)


def validate_triple(triple: Triple) -> None:
    """
    Check every standing assumption on (G, E, φ).

    Finite groups are checked exhaustively. For the integers only the
    generator's data is checked: the cocycle identity holds by construction
    and the vertex condition for m follows from the one for 1.

    Raises:
        GroupAxiomViolation, NotAutomorphism, NotHomomorphism,
        CocycleViolation, VertexConditionViolation
    """
    if isinstance(triple, FiniteTriple):
        _validate_finite(triple)
    elif isinstance(triple, IntTriple):
        _validate_integers(triple)
    else:
        raise SelfSimError(f"unsupported triple type {type(triple).__name__}")
    logger.debug(f"Triple '{triple.name}' satisfies the standing assumptions")


def _check_automorphism(triple: Triple, g: Any, vmap: Dict[str, str], emap: Dict[str, str]) -> None:
    graph = triple.graph
    if sorted(vmap.get(x, "") for x in graph.vertices) != sorted(graph.vertices):
        raise NotAutomorphism(f"NotAutomorphism: {g} does not permute the vertices")
    if sorted(emap.get(e, "") for e in graph.edges) != sorted(graph.edges):
        raise NotAutomorphism(f"NotAutomorphism: {g} does not permute the edges")
    for e in graph.edges:
        if graph.r(emap[e]) != vmap[graph.r(e)]:
            raise NotAutomorphism(f"NotAutomorphism: r({g}.{e}) != {g}.r({e})")
        if graph.d(emap[e]) != vmap[graph.d(e)]:
            raise NotAutomorphism(f"NotAutomorphism: d({g}.{e}) != {g}.d({e})")


def _validate_finite(triple: FiniteTriple) -> None:
    group = triple.group
    graph = triple.graph
    group.validate()
    for g in group.elements:
        if g not in triple.vertex_perm or g not in triple.edge_perm or g not in triple.cocycle_table:
            raise NotHomomorphism(f"NotHomomorphism: no action data for group element '{g}'")
        _check_automorphism(triple, g, triple.vertex_perm[g], triple.edge_perm[g])
        for e in graph.edges:
            if triple.cocycle_table[g].get(e) not in group.elements:
                raise CocycleViolation(g, group.identity, e, "a group element", triple.cocycle_table[g].get(e))

    one = group.identity
    for x in graph.vertices:
        if triple.act_vertex(one, x) != x:
            raise NotHomomorphism(f"NotHomomorphism: the identity moves vertex '{x}'")
    for e in graph.edges:
        if triple.act_edge(one, e) != e:
            raise NotHomomorphism(f"NotHomomorphism: the identity moves edge '{e}'")
    for g, h in itertools.product(group.elements, repeat=2):
        gh = group.mul(g, h)
        for x in graph.vertices:
            if triple.act_vertex(g, triple.act_vertex(h, x)) != triple.act_vertex(gh, x):
                raise NotHomomorphism(f"NotHomomorphism: {g}.({h}.{x}) != ({g}*{h}).{x}")
        for e in graph.edges:
            if triple.act_edge(g, triple.act_edge(h, e)) != triple.act_edge(gh, e):
                raise NotHomomorphism(f"NotHomomorphism: {g}.({h}.{e}) != ({g}*{h}).{e}")

    for g, h in itertools.product(group.elements, repeat=2):
        gh = group.mul(g, h)
        for e in graph.edges:
            expected = group.mul(triple.phi(g, triple.act_edge(h, e)), triple.phi(h, e))
            actual = triple.phi(gh, e)
            if expected != actual:
                raise CocycleViolation(g, h, e, expected, actual)

    for g in group.elements:
        for e in graph.edges:
            restriction = triple.phi(g, e)
            for x in graph.vertices:
                if triple.act_vertex(restriction, x) != triple.act_vertex(g, x):
                    raise VertexConditionViolation(g, e, x)


def _validate_integers(triple: IntTriple) -> None:
    graph = triple.graph
    _check_automorphism(triple, 1, triple.sigma1_vertices, triple.sigma1_edges)
    for e in graph.edges:
        if not isinstance(triple.phi1.get(e), int):
            raise CocycleViolation(1, 0, e, "an integer", triple.phi1.get(e))
    for e in graph.edges:
        restriction = triple.phi1[e]
        for x in graph.vertices:
            if triple.act_vertex(restriction, x) != triple.act_vertex(1, x):
                raise VertexConditionViolation(1, e, x)


def act_and_cocycle(triple: Triple, g: Any, path: FinitePath) -> Tuple[FinitePath, Any]:
    """(g·α, φ(g, α)); for a vertex x this is (g·x, g)."""
    if path.is_vertex():
        return FinitePath.vertex(triple.act_vertex(g, path.range)), g
    h = g
    out_edges = []
    for e in path.edges:
        out_edges.append(triple.act_edge(h, e))
        h = triple.phi(h, e)
    vertices = [triple.act_vertex(g, path.range)]
    graph = triple.graph
    for e in out_edges:
        vertices.append(graph.d(e))
    return FinitePath(tuple(out_edges), tuple(vertices)), h


def act(triple: Triple, g: Any, path: FinitePath) -> FinitePath:
    return act_and_cocycle(triple, g, path)[0]


def cocycle(triple: Triple, g: Any, path: FinitePath) -> Any:
    return act_and_cocycle(triple, g, path)[1]


def act_infinite(triple: Triple, g: Any, xi: EvPeriodicPath, bound: int = 10000) -> EvPeriodicPath:
    """
    g·ξ for an eventually periodic ξ, in canonical form.

    The restriction at the start of each cycle block is recorded; the first
    repeated restriction closes the output cycle.

    Raises:
        NotEventuallyPeriodicWithinBound: more than `bound` blocks without a repeat
    """
    out_prefix, h = act_and_cocycle(triple, g, xi.prefix)
    seen: Dict[Any, int] = {}
    blocks: List[FinitePath] = []
    while h not in seen:
        if len(blocks) >= bound:
            logger.warning(f"act_infinite: no repeated restriction within {bound} blocks")
            raise NotEventuallyPeriodicWithinBound(bound)
        seen[h] = len(blocks)
        block, h = act_and_cocycle(triple, h, xi.cycle)
        blocks.append(block)
    start = seen[h]
    prefix = out_prefix
    for block in blocks[:start]:
        prefix = prefix.concat(block)
    cycle = blocks[start]
    for block in blocks[start + 1:]:
        cycle = cycle.concat(block)
    return EvPeriodicPath.of(prefix, cycle)


def restriction_states(triple: Triple, g: Any, xi: EvPeriodicPath, bound: int = 10000):
    """
    The restriction stream n ↦ φ(g, ξ|ₙ₋₁) as (transient, period) lists.

    Raises:
        NotEventuallyPeriodicWithinBound: no repeat within `bound` cycle blocks
    """
    stream = [g]
    h = g
    for e in xi.prefix.edges:
        h = triple.phi(h, e)
        stream.append(h)
    seen: Dict[Any, int] = {}
    block_starts: List[int] = []
    while h not in seen:
        if len(block_starts) >= bound:
            logger.warning(f"restriction_states: no repeated restriction within {bound} blocks")
            raise NotEventuallyPeriodicWithinBound(bound)
        seen[h] = len(block_starts)
        block_starts.append(len(stream) - 1)
        for e in xi.cycle.edges:
            h = triple.phi(h, e)
            stream.append(h)
    # stream[-1] equals stream[block_starts[seen[h]]]; the stream repeats from there
    start = block_starts[seen[h]]
    return stream[:start], stream[start:-1]


def _orbit_partition(points, moves) -> List[List[str]]:
    linked = nx.Graph()
    linked.add_nodes_from(points)
    for move in moves:
        for p in points:
            linked.add_edge(p, move(p))
    order = {p: i for i, p in enumerate(points)}
    classes = [sorted(c, key=order.get) for c in nx.connected_components(linked)]
    return sorted(classes, key=lambda c: order[c[0]])


def vertex_orbits(triple: Triple) -> List[List[str]]:
    """Orbits of G on E⁰, each listed in input order."""
    moves = [lambda x, g=g: triple.act_vertex(g, x) for g in triple.generators()]
    return _orbit_partition(list(triple.graph.vertices), moves)


def edge_orbits(triple: Triple) -> List[List[str]]:
    """Orbits of G on E¹, each listed in input order."""
    moves = [lambda e, g=g: triple.act_edge(g, e) for g in triple.generators()]
    return _orbit_partition(list(triple.graph.edges), moves)


def same_orbit(triple: Triple, x: str, y: str) -> bool:
    return any(y in orbit and x in orbit for orbit in vertex_orbits(triple))
