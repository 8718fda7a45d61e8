"""
Concrete matrices for the coefficient algebra and its module.

The coefficient algebra is represented on the space spanned by the pairs
(y, h) with y a vertex and h a group element. A module element is a column
of |E¹| coefficient blocks stacked on top of each other, so module operators
are square block matrices and every identity is an equality of integer arrays.
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np


@dataclass
class CoefficientModel:
    """
    C(E⁰) ⋊ G acting on pairs (y, h).

    Attributes:
        vertices: Vertex ids, in graph order
        elements: Group element names, in group order
        index: (y, h) -> coordinate
        q: Vertex projections q_x
        v: Unitaries v_g
    """
    vertices: Tuple[str, ...]
    elements: Tuple[str, ...]
    index: Dict[Tuple[str, str], int] = field(repr=False)
    q: Dict[str, np.ndarray] = field(repr=False)
    v: Dict[str, np.ndarray] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.index)

    @property
    def unit(self) -> np.ndarray:
        return np.eye(self.dimension, dtype=np.int64)


@dataclass
class ModuleModel:
    """
    M = ⊕ A^e with its generators and the covariant pair (Q, V).

    Attributes:
        edges: Edge ids, in graph order
        coefficients: The coefficient algebra the blocks live in
        t: Generators t_e (a column with q_{d(e)} in block e)
        V: V_g for every group element
        Q: Q_x for every vertex
        identity: The identity operator of M
        sinks: Vertices that are the domain of no edge
    """
    edges: Tuple[str, ...]
    coefficients: CoefficientModel
    t: Dict[str, np.ndarray] = field(repr=False)
    V: Dict[str, np.ndarray] = field(repr=False)
    Q: Dict[str, np.ndarray] = field(repr=False)
    identity: np.ndarray = field(repr=False)
    sinks: Tuple[str, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.edges) * self.coefficients.dimension

    def block(self, e: str) -> slice:
        """Rows of the coordinate space that belong to the summand of e."""
        k = self.edges.index(e)
        size = self.coefficients.dimension
        return slice(k * size, (k + 1) * size)
