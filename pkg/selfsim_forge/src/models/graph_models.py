"""
Graph and path data models.

Paths follow the range-first convention: in α = e₁e₂…eₙ the first edge carries
the range of the path and consecutive edges satisfy d(eᵢ) = r(eᵢ₊₁).
A FinitePath stores its visited vertices alongside its edges, so every path
operation below works without consulting the graph.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import NotComposable


@dataclass(frozen=True)
class Graph:
    """
    A finite directed graph E = (E⁰, E¹, r, d).

    Attributes:
        vertices: Vertex identifiers, in input order
        edges: Edge identifiers, in input order (disjoint from vertices)
        range_map: Edge id -> range vertex r(e)
        domain_map: Edge id -> domain vertex d(e)
        name: Optional label used in reports
    """
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]
    range_map: Dict[str, str] = field(hash=False)
    domain_map: Dict[str, str] = field(hash=False)
    name: str = ""

    def r(self, edge: str) -> str:
        return self.range_map[edge]

    def d(self, edge: str) -> str:
        return self.domain_map[edge]

    def edges_into(self, vertex: str) -> List[str]:
        """Edges e with r(e) = vertex, in input order."""
        return [e for e in self.edges if self.range_map[e] == vertex]

    def edges_out_of(self, vertex: str) -> List[str]:
        """Edges e with d(e) = vertex, in input order."""
        return [e for e in self.edges if self.domain_map[e] == vertex]

    def is_vertex(self, token: str) -> bool:
        return token in self.vertices

    def is_edge(self, token: str) -> bool:
        return token in self.range_map


@dataclass(frozen=True)
class FinitePath:
    """
    A finite path: a vertex (length 0) or a composable edge sequence.

    Attributes:
        edges: e₁ … eₙ (empty for a vertex path)
        vertices: r(e₁), d(e₁), …, d(eₙ); a single vertex for length 0
    """
    edges: Tuple[str, ...]
    vertices: Tuple[str, ...]

    @classmethod
    def vertex(cls, x: str) -> "FinitePath":
        return cls(edges=(), vertices=(x,))

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def range(self) -> str:
        return self.vertices[0]

    @property
    def domain(self) -> str:
        return self.vertices[-1]

    def is_vertex(self) -> bool:
        return not self.edges

    def prefix(self, n: int) -> "FinitePath":
        """The first n edges (α|ₙ); prefix(0) is the range vertex."""
        return FinitePath(self.edges[:n], self.vertices[:n + 1])

    def suffix_from(self, n: int) -> "FinitePath":
        """Everything after the first n edges; starts at vertices[n]."""
        return FinitePath(self.edges[n:], self.vertices[n:])

    def concat(self, other: "FinitePath") -> "FinitePath":
        """
        αβ, defined iff d(α) = r(β).

        A vertex on either side acts as a unit: x·β = β and α·d(α) = α.

        Raises:
            NotComposable: when d(α) ≠ r(β)
        """
        if self.domain != other.range:
            raise NotComposable(
                f"NotComposable: d({self}) = {self.domain} but r({other}) = {other.range}"
            )
        return FinitePath(self.edges + other.edges, self.vertices + other.vertices[1:])

    def is_prefix_of(self, other: "FinitePath") -> bool:
        """The prefix order α ⪯ β (β = αγ for some γ)."""
        if self.length > other.length:
            return False
        return (self.range == other.range
                and other.edges[:self.length] == self.edges)

    def strip_prefix(self, head: "FinitePath") -> "FinitePath":
        """γ such that self = head·γ; caller guarantees head ⪯ self."""
        return self.suffix_from(head.length)

    def power(self, k: int) -> "FinitePath":
        """γᵏ for a circuit γ; γ⁰ is the vertex r(γ)."""
        result = FinitePath.vertex(self.range)
        for _ in range(k):
            result = result.concat(self)
        return result

    def __str__(self) -> str:
        if not self.edges:
            return self.vertices[0]
        return " ".join(self.edges)


def _rotate_right(cycle: FinitePath) -> FinitePath:
    """Move the last edge of a circuit to the front."""
    n = cycle.length
    edges = (cycle.edges[-1],) + cycle.edges[:-1]
    vertices = (cycle.vertices[n - 1],) + cycle.vertices[:n]
    return FinitePath(edges, vertices)


def _primitive_root(cycle: FinitePath) -> FinitePath:
    n = cycle.length
    for d in range(1, n + 1):
        if n % d == 0 and cycle.edges == cycle.edges[:d] * (n // d):
            return cycle.prefix(d)
    return cycle


@dataclass(frozen=True)
class EvPeriodicPath:
    """
    The eventually periodic infinite path prefix·cycle·cycle·…

    Always build instances through `EvPeriodicPath.of`, which brings the pair
    into canonical form (primitive cycle, shortest prefix); equality of infinite
    paths is then plain dataclass equality.

    Attributes:
        prefix: Finite path with d(prefix) = r(cycle)
        cycle: Nonempty circuit
    """
    prefix: FinitePath
    cycle: FinitePath

    @classmethod
    def of(cls, prefix: FinitePath, cycle: FinitePath) -> "EvPeriodicPath":
        if cycle.is_vertex():
            raise NotComposable("NotComposable: the periodic part of an infinite path must be nonempty")
        if cycle.domain != cycle.range:
            raise NotComposable(f"NotComposable: '{cycle}' is not a circuit")
        if prefix.domain != cycle.range:
            raise NotComposable(
                f"NotComposable: prefix '{prefix}' ends at {prefix.domain}, "
                f"cycle starts at {cycle.range}"
            )
        cycle = _primitive_root(cycle)
        while prefix.length > 0 and prefix.edges[-1] == cycle.edges[-1]:
            cycle = _rotate_right(cycle)
            prefix = prefix.prefix(prefix.length - 1)
        return cls(prefix=prefix, cycle=cycle)

    @property
    def range(self) -> str:
        return self.prefix.range

    def edge_at(self, i: int) -> str:
        """ξᵢ for i ≥ 1."""
        if i <= self.prefix.length:
            return self.prefix.edges[i - 1]
        j = (i - self.prefix.length - 1) % self.cycle.length
        return self.cycle.edges[j]

    def truncate(self, n: int) -> FinitePath:
        """ξ|ₙ, the finite path made of the first n edges."""
        if n <= self.prefix.length:
            return self.prefix.prefix(n)
        extra = n - self.prefix.length
        whole, rest = divmod(extra, self.cycle.length)
        return self.prefix.concat(self.cycle.power(whole)).concat(self.cycle.prefix(rest))

    def shift(self, n: int) -> "EvPeriodicPath":
        """The tail ξ_{n+1}ξ_{n+2}…"""
        if n <= self.prefix.length:
            return EvPeriodicPath.of(self.prefix.suffix_from(n), self.cycle)
        rest = (n - self.prefix.length) % self.cycle.length
        rotated = self.cycle.suffix_from(rest).concat(self.cycle.prefix(rest))
        return EvPeriodicPath.of(FinitePath.vertex(rotated.range), rotated)

    def has_prefix(self, path: FinitePath) -> bool:
        """ξ ∈ Z(path)."""
        return path.is_prefix_of(self.truncate(path.length))

    def strip_prefix(self, path: FinitePath) -> "EvPeriodicPath":
        """η with ξ = path·η; caller guarantees ξ ∈ Z(path)."""
        return self.shift(path.length)

    def prepend(self, path: FinitePath) -> "EvPeriodicPath":
        """path·ξ."""
        return EvPeriodicPath.of(path.concat(self.prefix), self.cycle)

    def description_size(self) -> int:
        return self.prefix.length + self.cycle.length

    def __str__(self) -> str:
        head = " ".join(self.prefix.edges) if self.prefix.edges else self.prefix.range
        return f"{head}|{' '.join(self.cycle.edges)}"

