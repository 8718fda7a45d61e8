"""
Inverse semigroup element model.

An element of S_{G,E} is either zero or a triple (α, g, β) of two finite
paths and a group element with d(α) = g·d(β). Elements remember which triple
they were built over (the `tag`) so that products of elements from different
triples can be refused; the tag takes no part in equality.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

from .graph_models import FinitePath


@dataclass(frozen=True)
class SemigroupElement:
    """
    A nonzero (α, g, β) or the zero element.

    Attributes:
        alpha: Range-side path α (None for zero)
        g: Middle group element
        beta: Domain-side path β (None for zero)
        tag: Identifier of the owning triple
    """
    alpha: Optional[FinitePath]
    g: Any
    beta: Optional[FinitePath]
    tag: str = field(default="", compare=False)

    @classmethod
    def zero(cls, tag: str = "") -> "SemigroupElement":
        return cls(alpha=None, g=None, beta=None, tag=tag)

    @classmethod
    def idempotent(cls, path: FinitePath, identity: Any, tag: str = "") -> "SemigroupElement":
        """f_α = (α, 1, α)."""
        return cls(alpha=path, g=identity, beta=path, tag=tag)

    @property
    def is_zero(self) -> bool:
        return self.alpha is None

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"({self.alpha}; {self.g}; {self.beta})"
