"""
Exception hierarchy for Self-Similar Forge.

Every domain error derives from SelfSimError, which itself is a ValueError.
The CLI runner catches ValueError and turns it into exit status 2 with a
one-line diagnostic, so library code never needs to know about exit codes.
"""

from typing import Any, Optional


class SelfSimError(ValueError):
    """Base class for all input and domain errors."""


# Graph errors

class SourceVertex(SelfSimError):
    """A vertex receives no edge (r⁻¹(x) is empty)."""

    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"SourceVertex: vertex '{vertex}' is the range of no edge")


class DanglingEdge(SelfSimError):
    """An edge references a vertex that does not exist."""

    def __init__(self, edge: str, endpoint: str, vertex: Any):
        self.edge = edge
        self.endpoint = endpoint
        self.vertex = vertex
        super().__init__(
            f"DanglingEdge: {endpoint} of edge '{edge}' is unknown vertex '{vertex}'"
        )


class NotComposable(SelfSimError):
    """Two paths cannot be concatenated (d(α) ≠ r(β))."""


# Triple errors

class GroupAxiomViolation(SelfSimError):
    """A finite group table fails associativity, identity or inverses."""


class NotAutomorphism(SelfSimError):
    """Some σ_g does not commute with the range or domain map."""


class NotHomomorphism(SelfSimError):
    """σ_g σ_h ≠ σ_gh or σ_1 is not the identity."""


class CocycleViolation(SelfSimError):
    """φ(gh, e) ≠ φ(g, he) φ(h, e)."""

    def __init__(self, g: Any, h: Any, edge: str, expected: Any, actual: Any):
        self.g = g
        self.h = h
        self.edge = edge
        super().__init__(
            f"CocycleViolation: phi({g}*{h}, {edge}) = {actual} but "
            f"phi({g}, {h}.{edge}) * phi({h}, {edge}) = {expected}"
        )


class VertexConditionViolation(SelfSimError):
    """φ(g, e) does not act on some vertex the way g does."""

    def __init__(self, g: Any, edge: str, vertex: str):
        self.g = g
        self.edge = edge
        self.vertex = vertex
        super().__init__(
            f"VertexConditionViolation: phi({g}, {edge}) moves vertex '{vertex}' "
            f"differently from {g}"
        )


class UnsupportedBackend(SelfSimError):
    """The requested operation is only available for finite groups."""


class MixedTriples(SelfSimError):
    """Semigroup elements from different triples were combined."""


# Search errors

class NotEventuallyPeriodicWithinBound(SelfSimError):
    """A restriction-state iteration did not revisit a state within the bound."""

    def __init__(self, bound: int, what: str = "restriction sequence"):
        self.bound = bound
        super().__init__(
            f"NotEventuallyPeriodicWithinBound: {what} did not repeat within {bound} states"
        )


class NotGCircuit(SelfSimError):
    """(g, γ) is not a G-circuit: d(γ) ≠ g·r(γ) or γ is a vertex."""


class NotPseudoFree(SelfSimError):
    """Germ arithmetic is only defined here for pseudo-free triples."""


class NotComposableGerms(SelfSimError):
    """d(u₁) ≠ r(u₂)."""


# Katsura / algebra errors

class InvalidKatsuraData(SelfSimError):
    """Matrices violate the Katsura admissibility conditions."""


class RelationFailed(SelfSimError):
    """A correspondence identity failed on the concrete model."""

    def __init__(self, name: str, witness: Optional[str] = None):
        self.name = name
        self.witness = witness
        detail = f" ({witness})" if witness else ""
        super().__init__(f"RelationFailed: {name}{detail}")


# Input errors

class DocumentError(SelfSimError):
    """A triple document does not match the schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class LiteralError(SelfSimError):
    """A textual path, element or stream literal could not be parsed."""
