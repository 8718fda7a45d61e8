"""
Groupoid data models: eventually periodic group sequences, corona classes,
lag values and germs.

Sequences are 1-indexed to match Φ(g, ξ)ₙ = φ(g, ξ|ₙ₋₁). A corona class only
remembers what a sequence does for large n, which for an eventually periodic
sequence is its period read at residues modulo the period length.
"""

from dataclasses import dataclass
from typing import Any, Tuple

from .graph_models import EvPeriodicPath
from .semigroup_models import SemigroupElement


def _primitive(period: Tuple[Any, ...]) -> Tuple[Any, ...]:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicSequence:
    """
    The sequence transient + period + period + …

    Build with `of` to get the canonical (shortest) representation.

    Attributes:
        transient: Values at indices 1 … len(transient)
        period: Nonempty repeating block
    """
    transient: Tuple[Any, ...]
    period: Tuple[Any, ...]

    @classmethod
    def of(cls, transient, period) -> "EventuallyPeriodicSequence":
        transient = tuple(transient)
        period = _primitive(tuple(period))
        if not period:
            raise ValueError("an eventually periodic sequence needs a nonempty period")
        while transient and transient[-1] == period[-1]:
            period = (period[-1],) + period[:-1]
            transient = transient[:-1]
        return cls(transient=transient, period=period)

    def at(self, n: int) -> Any:
        """The n-th term, n ≥ 1."""
        t = len(self.transient)
        if n <= t:
            return self.transient[n - 1]
        return self.period[(n - t - 1) % len(self.period)]

    def prefix(self, n: int) -> Tuple[Any, ...]:
        return tuple(self.at(k) for k in range(1, n + 1))

    def residue_form(self) -> Tuple[Any, ...]:
        """Tail values indexed by n mod p (for all sufficiently large n)."""
        p = len(self.period)
        t = len(self.transient)
        return tuple(self.period[(k - t - 1) % p] for k in range(p))

    def __str__(self) -> str:
        head = " ".join(str(v) for v in self.transient)
        tail = " ".join(str(v) for v in self.period)
        return f"{head}|{tail}" if head else f"|{tail}"


@dataclass(frozen=True)
class CoronaElement:
    """
    A class in G^∞ modulo eventually trivial sequences.

    residues[k] is the value of every representative at all large n with
    n ≡ k (mod len(residues)); the tuple is primitive, so equal classes have
    equal residues.

    Attributes:
        residues: Tail values by residue class
    """
    residues: Tuple[Any, ...]

    @classmethod
    def of_sequence(cls, seq: EventuallyPeriodicSequence) -> "CoronaElement":
        return cls.of_residues(seq.residue_form())

    @classmethod
    def of_residues(cls, residues) -> "CoronaElement":
        residues = tuple(residues)
        p = len(residues)
        for d in range(1, p + 1):
            if p % d == 0 and residues == residues[:d] * (p // d):
                return cls(residues=residues[:d])
        return cls(residues=residues)

    @property
    def period(self) -> int:
        return len(self.residues)

    def tail_at(self, n: int) -> Any:
        return self.residues[n % len(self.residues)]

    def is_trivial(self, identity: Any) -> bool:
        return all(v == identity for v in self.residues)

    def shifted_right(self, k: int = 1) -> "CoronaElement":
        """ρ̌ᵏ: (ρa)ₙ = aₙ₋₁; negative k gives λ̌."""
        p = len(self.residues)
        return CoronaElement(tuple(self.residues[(j - k) % p] for j in range(p)))

    def __str__(self) -> str:
        return "[" + " ".join(str(v) for v in self.residues) + "]"


@dataclass(frozen=True)
class LagValue:
    """
    An element (a, k) of the semidirect product Ǧ ⋊ ℤ.

    Attributes:
        corona: The corona part a
        shift: The integer part k
    """
    corona: CoronaElement
    shift: int

    def __str__(self) -> str:
        return f"({self.corona}, {self.shift})"


@dataclass(frozen=True)
class Germ:
    """
    A germ [α, g, β; η] with η ∈ Z(β).

    Attributes:
        element: Nonzero semigroup element (α, g, β)
        basepoint: The infinite path η = βξ at which the germ is taken
    """
    element: SemigroupElement
    basepoint: EvPeriodicPath

    def __str__(self) -> str:
        s = self.element
        return f"[{s.alpha}, {s.g}, {s.beta}; {self.basepoint}]"
