"""
Ratio analysis for integer triples.

Over ℤ an edge e with σ₁-orbit length L and orbit sum S is fixed by K exactly
when L | K, and then φ(K, e) = K·S/L. Following a path therefore multiplies
the running restriction by the ratios S/L, subject to divisibility at every
step. Edges with S = 0 are "killing": they send every restriction to 0, the
identity of ℤ. The remaining edges are "live".

All questions about integers fixing or strongly fixing families of paths
reduce to products of ratios around cycles of the live walk graph:

- M_l is infinite for some l iff the restriction can be pumped forever along
  live edges and then killed, which needs an integral cycle product;
- l ≠ 0 fixes every infinite path from x iff every live cycle reachable from
  x has an integral product;
- a fixing l is slack at x iff no live cycle is reachable from x at all.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from sympy import factorint

from ..models.graph_models import FinitePath
from ..models.report_models import Decision, PumpingWitness
from ..models.triple_models import IntTriple, KatsuraData


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioArc:
    """
    One class of edges with the same endpoints and the same (L, S).

    Attributes:
        key: A representative edge id
        range: r(e)
        domain: d(e)
        length: L, the σ₁-orbit length
        total: S, the orbit sum of φ(1, ·)
    """
    key: str
    range: str
    domain: str
    length: int
    total: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.total, self.length)

    @property
    def live(self) -> bool:
        return self.total != 0


@dataclass
class RatioSystem:
    """
    The data ratio analysis runs on.

    Attributes:
        vertices: Vertex ids in input order
        arcs: Edge classes
        vertex_period: Smallest positive integer fixing each vertex
    """
    vertices: Tuple[str, ...]
    arcs: List[RatioArc]
    vertex_period: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_triple(cls, triple: IntTriple) -> "RatioSystem":
        graph = triple.graph
        seen = set()
        arcs = []
        for e in graph.edges:
            signature = (graph.r(e), graph.d(e), triple.orbit_length(e), triple.orbit_sum(e))
            if signature in seen:
                continue
            seen.add(signature)
            arcs.append(RatioArc(e, *signature))
        periods = {x: triple.vertex_orbit_length(x) for x in graph.vertices}
        return cls(vertices=graph.vertices, arcs=arcs, vertex_period=periods)

    @classmethod
    def from_matrices(cls, data: KatsuraData) -> "RatioSystem":
        """One arc per nonzero A[i][j]: L = A/gcd(A, B), S = B/gcd(A, B) (L = 1, S = 0 when B = 0)."""
        n = data.size
        vertices = tuple(str(i + 1) for i in range(n))
        arcs = []
        for i, j in data.omega():
            a, b = data.A[i][j], data.B[i][j]
            g = gcd(a, b)
            length, total = (1, 0) if b == 0 else (a // g, b // g)
            arcs.append(RatioArc(f"e:{i + 1}:{j + 1}:0", str(i + 1), str(j + 1), length, total))
        return cls(vertices=vertices, arcs=arcs, vertex_period={v: 1 for v in vertices})

    def live_walk_graph(self) -> nx.MultiDiGraph:
        walk = nx.MultiDiGraph()
        walk.add_nodes_from(self.vertices)
        for arc in self.arcs:
            if arc.live:
                walk.add_edge(arc.range, arc.domain, key=arc.key, arc=arc)
        return walk

    def killing_arcs(self) -> List[RatioArc]:
        return [arc for arc in self.arcs if not arc.live]


def cycle_product(arcs: Sequence[RatioArc]) -> Fraction:
    return prod((arc.ratio for arc in arcs), start=Fraction(1))


def _arcs_of(walk: nx.MultiDiGraph, nodes: Sequence[str]) -> List[List[RatioArc]]:
    """Every choice of parallel arcs around the node cycle."""
    result: List[List[RatioArc]] = [[]]
    for u, v in zip(nodes, list(nodes[1:]) + [nodes[0]]):
        options = [data["arc"] for data in walk[u][v].values()]
        result = [chosen + [arc] for chosen in result for arc in options]
    return result


def simple_cycles(walk: nx.MultiDiGraph, cap: int) -> Tuple[List[List[RatioArc]], bool]:
    """Simple cycles of a live walk graph as arc lists, and whether the list is complete."""
    cycles: List[List[RatioArc]] = []
    for nodes in nx.simple_cycles(nx.DiGraph(walk)):
        for arcs in _arcs_of(walk, nodes):
            cycles.append(arcs)
            if len(cycles) >= cap:
                return cycles, False
    return cycles, True


def closed_trails(walk: nx.MultiDiGraph, cap: int) -> Tuple[List[List[RatioArc]], bool]:
    """Closed walks using each arc at most once, up to `cap` of them."""
    trails: List[List[RatioArc]] = []
    all_arcs = [(u, v, data["arc"]) for u, v, data in walk.edges(data=True)]

    def extend(start: str, node: str, used: List[RatioArc]) -> bool:
        for u, v, arc in all_arcs:
            if u != node or arc in used:
                continue
            trail = used + [arc]
            if v == start:
                trails.append(trail)
                if len(trails) >= cap:
                    return False
            if not extend(start, v, trail):
                return False
        return True

    for start in walk.nodes:
        if not extend(start, start, []):
            return trails, False
    return trails, True


def _is_integral(value: Fraction) -> bool:
    return value.denominator == 1


def _separating_prime(products: Sequence[Fraction]) -> Optional[int]:
    """A prime p with v_p(P) < 0 for every product P."""
    if not products:
        return None
    for p in factorint(products[0].denominator):
        if all(factorint(q.denominator).get(p, 0) > factorint(abs(q.numerator)).get(p, 0) for q in products):
            return p
    return None


def _relevant_components(system: RatioSystem, walk: nx.MultiDiGraph) -> List[set]:
    """Nontrivial strongly connected pieces that can walk live to the range of a killing arc."""
    targets = {arc.range for arc in system.killing_arcs()}
    relevant = []
    for component in nx.strongly_connected_components(walk):
        node = next(iter(component))
        nontrivial = len(component) > 1 or walk.has_edge(node, node)
        if not nontrivial:
            continue
        reachable = nx.descendants(walk, node) | {node}
        if reachable & targets:
            relevant.append(component)
    return relevant


def _witness(system: RatioSystem, walk: nx.MultiDiGraph, loop: List[RatioArc]) -> PumpingWitness:
    """prefix = start vertex of the loop, then the loop, then a shortest live walk to a killing arc."""
    start = loop[0].range
    best = None
    for kill in system.killing_arcs():
        try:
            nodes = nx.shortest_path(walk, loop[0].range, kill.range)
        except nx.NetworkXNoPath:
            continue
        if best is None or len(nodes) < len(best[0]):
            best = (nodes, kill)
    nodes, kill = best
    tail = [min(walk[u][v].values(), key=lambda d: d["arc"].key)["arc"] for u, v in zip(nodes, nodes[1:])]
    tail.append(kill)
    l_value = system.vertex_period.get(start, 1) * prod(arc.length for arc in loop + tail)
    return PumpingWitness(
        g=l_value,
        prefix=FinitePath.vertex(start),
        loop=_arc_path(loop),
        suffix=_arc_path(tail, start=loop[0].range),
    )


def _arc_path(arcs: Sequence[RatioArc], start: Optional[str] = None) -> FinitePath:
    if not arcs:
        return FinitePath.vertex(start)
    vertices = [arcs[0].range] + [arc.domain for arc in arcs]
    return FinitePath(tuple(arc.key for arc in arcs), tuple(vertices))


def hausdorff_by_ratios(system: RatioSystem, cap: int = 500) -> Tuple[Decision, Optional[PumpingWitness]]:
    """
    Whether every integer has finitely many minimal strongly fixed paths.

    NO comes with a pumping witness built from an integral cycle (or closed
    trail). YES needs, on every relevant component, either all cycle
    products of modulus < 1 or a prime whose valuation is negative on all of
    them. Anything else is UNKNOWN.
    """
    if not system.killing_arcs():
        return Decision.yes(reason="no killing edges (pseudo free)"), None
    walk = system.live_walk_graph()
    undecided = []
    for component in _relevant_components(system, walk):
        sub = walk.subgraph(component)
        cycles, complete = simple_cycles(sub, cap)
        for cycle in cycles:
            if _is_integral(cycle_product(cycle)):
                witness = _witness(system, walk, cycle)
                logger.info(f"Integral cycle product at {witness.loop}: not Hausdorff")
                return Decision.no(reason="integral cycle product before a killing edge", witness=str(witness)), witness
        if not complete:
            undecided.append(component)
            continue
        products = [cycle_product(c) for c in cycles]
        if all(abs(p) < 1 for p in products):
            continue
        if _separating_prime(products) is not None:
            continue
        trails, _ = closed_trails(sub, cap)
        for trail in trails:
            if _is_integral(cycle_product(trail)):
                witness = _witness(system, walk, trail)
                return Decision.no(reason="integral closed-walk product before a killing edge",
                                   witness=str(witness)), witness
        undecided.append(component)
    if undecided:
        logger.warning(f"Ratio analysis undecided on {len(undecided)} component(s)")
        return Decision.unknown(cap, reason="no separating weight found for some cycle family"), None
    return Decision.yes(reason="every pumpable cycle eventually breaks integrality"), None


def _reachable_live(system: RatioSystem, walk: nx.MultiDiGraph, x: str) -> nx.MultiDiGraph:
    return walk.subgraph(nx.descendants(walk, x) | {x})


def live_cycle_reachable(system: RatioSystem, x: str) -> bool:
    walk = system.live_walk_graph()
    return not nx.is_directed_acyclic_graph(_reachable_live(system, walk, x))


def fixer_exists(system: RatioSystem, x: str, cap: int = 500) -> Decision:
    """Some l ≠ 0 fixes every infinite path in Z(x)."""
    walk = system.live_walk_graph()
    cycles, complete = simple_cycles(_reachable_live(system, walk, x), cap)
    for cycle in cycles:
        if not _is_integral(cycle_product(cycle)):
            return Decision.no(reason="reachable live cycle with non-integral product",
                               witness=str(_arc_path(cycle)))
    if not complete:
        return Decision.unknown(cap, reason="cycle enumeration capped")
    return Decision.yes(reason="all reachable live cycles have integral products")


def slack_condition_at(system: RatioSystem, x: str, cap: int = 500) -> Decision:
    """
    Every l ≠ 0 fixing Z(x) is slack at x.

    Holds when no live cycle is reachable from x (every fixer is slack) or
    when no fixer exists.
    """
    if not live_cycle_reachable(system, x):
        return Decision.yes(reason="every walk from x dies within finitely many steps")
    fixer = fixer_exists(system, x, cap)
    if fixer.is_no:
        return Decision.yes(reason="no nonzero integer fixes Z(x)", witness=fixer.witness)
    if fixer.is_unknown:
        return fixer
    return Decision.no(reason=f"nonzero integers fix Z({x}) but are not slack there")
