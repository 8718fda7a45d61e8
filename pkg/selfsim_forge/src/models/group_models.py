"""
Group backends.

Two concrete groups are supported: finite groups given by a multiplication
table, and the integers under addition. Group elements are plain hashable
values (strings for finite groups, Python ints for ℤ), so they can be used as
dictionary keys and graph-search states without wrapping.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .errors import GroupAxiomViolation, LiteralError


class GroupKind(str, Enum):
    """Which backend a triple uses."""
    FINITE = "finite"
    INTEGERS = "integers"


class GroupBackend:
    """Common interface of the group backends."""

    kind: GroupKind

    @property
    def identity(self) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def is_identity(self, a: Any) -> bool:
        return a == self.identity

    def is_finite(self) -> bool:
        return self.kind == GroupKind.FINITE

    def parse(self, token: str) -> Any:
        raise NotImplementedError


@dataclass
class FiniteGroup(GroupBackend):
    """
    A finite group given by its Cayley table.

    Attributes:
        elements: Element names, identity included
        identity_name: Name of the identity element
        table: (a, b) -> a·b for every pair of elements
    """
    elements: Tuple[str, ...]
    identity_name: str
    table: Dict[Tuple[str, str], str] = field(repr=False)
    kind: GroupKind = field(default=GroupKind.FINITE, init=False)
    _inverse: Dict[str, str] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        for a in self.elements:
            for b in self.elements:
                if self.table.get((a, b)) == self.identity_name:
                    self._inverse[a] = b
                    break

    @classmethod
    def from_rows(cls, elements: List[str], identity: str, rows: Dict[str, Dict[str, str]]) -> "FiniteGroup":
        """Build from a nested mapping rows[a][b] = a·b."""
        table = {(a, b): rows[a][b] for a in elements for b in elements}
        return cls(elements=tuple(elements), identity_name=identity, table=table)

    @classmethod
    def cyclic(cls, n: int, names: Optional[List[str]] = None) -> "FiniteGroup":
        """ℤ/n with element names names[k] (defaults to '0', '1', …)."""
        names = names or [str(k) for k in range(n)]
        table = {(names[a], names[b]): names[(a + b) % n] for a in range(n) for b in range(n)}
        return cls(elements=tuple(names), identity_name=names[0], table=table)

    @property
    def identity(self) -> str:
        return self.identity_name

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inv(self, a: str) -> str:
        return self._inverse[a]

    def order(self) -> int:
        return len(self.elements)

    def parse(self, token: str) -> str:
        if token not in self.elements:
            raise LiteralError(f"'{token}' is not an element of the group")
        return token

    def validate(self) -> None:
        """
        Check the group axioms exhaustively.

        Raises:
            GroupAxiomViolation: naming the first failing axiom
        """
        names = set(self.elements)
        if self.identity_name not in names:
            raise GroupAxiomViolation(f"identity '{self.identity_name}' is not an element")
        for a, b in itertools.product(self.elements, repeat=2):
            if (a, b) not in self.table:
                raise GroupAxiomViolation(f"multiplication table has no entry for ({a}, {b})")
            if self.table[(a, b)] not in names:
                raise GroupAxiomViolation(f"{a}*{b} = {self.table[(a, b)]} is not an element")
        for a in self.elements:
            if self.mul(self.identity_name, a) != a or self.mul(a, self.identity_name) != a:
                raise GroupAxiomViolation(f"'{self.identity_name}' is not an identity for '{a}'")
            if a not in self._inverse or self.mul(self._inverse[a], a) != self.identity_name:
                raise GroupAxiomViolation(f"'{a}' has no two-sided inverse")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise GroupAxiomViolation(f"associativity fails at ({a}, {b}, {c})")


@dataclass
class IntGroup(GroupBackend):
    """The integers under addition; elements are arbitrary-precision ints."""
    kind: GroupKind = field(default=GroupKind.INTEGERS, init=False)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def parse(self, token: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise LiteralError(f"'{token}' is not an integer") from None

