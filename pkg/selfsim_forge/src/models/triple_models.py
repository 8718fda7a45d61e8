"""
Triple data models: a group acting on a finite graph with an edge cocycle.

A triple answers three questions for a group element g: where g sends a
vertex, where it sends an edge, and the restriction φ(g, e). Finite groups
store these as full tables. The integers store only the generator's data
(σ₁ on vertices and edges, φ(1, ·)) and derive the rest from the cocycle
identity, so φ(m, e) is a closed-form orbit sum for every integer m.
"""

import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .graph_models import Graph
from .errors import NotAutomorphism
from .group_models import FiniteGroup, GroupBackend, IntGroup


@dataclass
class KatsuraData:
    """
    An admissible Katsura matrix pair.

    Attributes:
        A: N×N nonnegative integer matrix (edge counts, A[i][j] edges from j to i)
        B: N×N integer matrix, B[i][j] = 0 wherever A[i][j] = 0
    """
    A: List[List[int]]
    B: List[List[int]]

    @property
    def size(self) -> int:
        return len(self.A)

    def omega(self) -> List[Tuple[int, int]]:
        """Ω_A: the index pairs (i, j) with A[i][j] > 0 (0-based)."""
        n = self.size
        return [(i, j) for i in range(n) for j in range(n) if self.A[i][j] > 0]


class Triple:
    """
    Common interface of (G, E, φ).

    Subclasses provide act_vertex, act_edge and phi for single group
    elements; everything on paths lives in tools/action_tool.py.
    """

    graph: Graph
    group: GroupBackend
    name: str
    tag: str

    def act_vertex(self, g: Any, x: str) -> str:
        raise NotImplementedError

    def act_edge(self, g: Any, e: str) -> str:
        raise NotImplementedError

    def phi(self, g: Any, e: str) -> Any:
        raise NotImplementedError

    def generators(self) -> List[Any]:
        """Group elements whose orbits generate the orbit partitions."""
        raise NotImplementedError

    def is_finite(self) -> bool:
        return self.group.is_finite()


@dataclass(eq=False)
class FiniteTriple(Triple):
    """
    A triple over a finite group, given by complete tables.

    Attributes:
        graph: The underlying graph
        group: Finite group backend
        vertex_perm: vertex_perm[g][x] = g·x
        edge_perm: edge_perm[g][e] = g·e
        cocycle_table: cocycle_table[g][e] = φ(g, e)
        name: Label used in reports
    """
    graph: Graph
    group: FiniteGroup
    vertex_perm: Dict[str, Dict[str, str]]
    edge_perm: Dict[str, Dict[str, str]]
    cocycle_table: Dict[str, Dict[str, str]]
    name: str = ""
    tag: str = field(default_factory=lambda: uuid.uuid4().hex)

    def act_vertex(self, g: str, x: str) -> str:
        return self.vertex_perm[g][x]

    def act_edge(self, g: str, e: str) -> str:
        return self.edge_perm[g][e]

    def phi(self, g: str, e: str) -> str:
        return self.cocycle_table[g][e]

    def generators(self) -> List[str]:
        return list(self.group.elements)

    def with_cocycle(self, g: str, e: str, value: str) -> "FiniteTriple":
        """A copy with one cocycle entry replaced (used to build negative fixtures)."""
        table = {h: dict(row) for h, row in self.cocycle_table.items()}
        table[g][e] = value
        return FiniteTriple(
            graph=self.graph,
            group=self.group,
            vertex_perm=self.vertex_perm,
            edge_perm=self.edge_perm,
            cocycle_table=table,
            name=f"{self.name}-modified",
        )


def _orbits(perm: Dict[str, str], order: Tuple[str, ...]) -> Dict[str, Tuple[str, ...]]:
    """For each point, its cycle under perm listed starting at that point."""
    if sorted(perm.get(p, "") for p in order) != sorted(order):
        raise NotAutomorphism("NotAutomorphism: the generator does not permute " + ", ".join(order))
    result: Dict[str, Tuple[str, ...]] = {}
    for start in order:
        if start in result:
            continue
        cycle = [start]
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            nxt = perm[nxt]
        for k in range(len(cycle)):
            result[cycle[k]] = tuple(cycle[k:] + cycle[:k])
    return result


@dataclass(eq=False)
class IntTriple(Triple):
    """
    A triple over ℤ determined by the generator 1.

    For an edge e with σ₁-orbit e = o₀, o₁, …, o_{L-1} and orbit sum
    S = Σ φ(1, oᵢ), the cocycle identity forces
    φ(m, e) = Σ_{i=0}^{m-1} φ(1, oᵢ mod L), which extends to negative m and
    has the closed form (m // L)·S + (partial sum of the first m mod L terms).

    Attributes:
        graph: The underlying graph
        sigma1_vertices: σ₁ on vertices
        sigma1_edges: σ₁ on edges
        phi1: φ(1, e) for every edge
        name: Label used in reports
        katsura: The matrix pair the triple was built from, if any
    """
    graph: Graph
    sigma1_vertices: Dict[str, str]
    sigma1_edges: Dict[str, str]
    phi1: Dict[str, int]
    name: str = ""
    katsura: Optional[KatsuraData] = None
    group: IntGroup = field(default_factory=IntGroup)
    tag: str = field(default_factory=lambda: uuid.uuid4().hex)

    def __post_init__(self):
        self._vertex_orbit = _orbits(self.sigma1_vertices, self.graph.vertices)
        self._edge_orbit = _orbits(self.sigma1_edges, self.graph.edges)
        self._partial_sums: Dict[str, List[int]] = {}
        for e, orbit in self._edge_orbit.items():
            sums = [0]
            for o in orbit:
                sums.append(sums[-1] + self.phi1[o])
            self._partial_sums[e] = sums

    def act_vertex(self, m: int, x: str) -> str:
        orbit = self._vertex_orbit[x]
        return orbit[m % len(orbit)]

    def act_edge(self, m: int, e: str) -> str:
        orbit = self._edge_orbit[e]
        return orbit[m % len(orbit)]

    def phi(self, m: int, e: str) -> int:
        sums = self._partial_sums[e]
        length = len(sums) - 1
        q, rem = divmod(m, length)
        return q * sums[-1] + sums[rem]

    def generators(self) -> List[int]:
        return [1]

    def orbit_length(self, e: str) -> int:
        """L_e: the smallest m > 0 with σ_m(e) = e."""
        return len(self._edge_orbit[e])

    def orbit_sum(self, e: str) -> int:
        """S_e = φ(L_e, e)."""
        return self._partial_sums[e][-1]

    def ratio(self, e: str) -> Fraction:
        """φ(K, e) / K for every K fixing e."""
        return Fraction(self.orbit_sum(e), self.orbit_length(e))

    def is_live(self, e: str) -> bool:
        """A live edge never sends a nonzero restriction to 0."""
        return self.orbit_sum(e) != 0

    def vertex_orbit_length(self, x: str) -> int:
        return len(self._vertex_orbit[x])
