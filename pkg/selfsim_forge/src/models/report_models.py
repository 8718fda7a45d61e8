"""
Result models for the decision procedures.

Verdicts are three-valued: searches over the integers can run out of states,
and an exhausted search is reported as UNKNOWN together with the bound that
was hit rather than guessed.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .graph_models import FinitePath


class Verdict(str, Enum):
    """Outcome of a decision procedure."""
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass
class Decision:
    """
    A verdict together with whatever supports it.

    Attributes:
        verdict: YES, NO or UNKNOWN
        witness: Human-readable certificate (a path, an element, a cycle)
        reason: Which criterion produced the verdict
        bound: Search bound that was exhausted (UNKNOWN only)
    """
    verdict: Verdict
    witness: str = ""
    reason: str = ""
    bound: Optional[int] = None

    @classmethod
    def yes(cls, reason: str = "", witness: str = "") -> "Decision":
        return cls(Verdict.YES, witness=witness, reason=reason)

    @classmethod
    def no(cls, reason: str = "", witness: str = "") -> "Decision":
        return cls(Verdict.NO, witness=witness, reason=reason)

    @classmethod
    def unknown(cls, bound: Optional[int], reason: str = "") -> "Decision":
        return cls(Verdict.UNKNOWN, reason=reason, bound=bound)

    @classmethod
    def of_bool(cls, value: bool, reason: str = "", witness: str = "") -> "Decision":
        return cls.yes(reason, witness) if value else cls.no(reason, witness)

    @property
    def is_yes(self) -> bool:
        return self.verdict == Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict == Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict == Verdict.UNKNOWN

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"verdict": self.verdict.value}
        if self.witness:
            data["witness"] = self.witness
        if self.reason:
            data["reason"] = self.reason
        if self.bound is not None:
            data["bound"] = self.bound
        return data

    def __str__(self) -> str:
        text = self.verdict.value
        if self.is_unknown and self.bound is not None:
            text += f" (bound {self.bound} reached)"
        return text


def conjunction(*decisions: Decision) -> Verdict:
    """Three-valued AND: any NO wins, then any UNKNOWN."""
    verdicts = [d.verdict for d in decisions]
    if Verdict.NO in verdicts:
        return Verdict.NO
    if Verdict.UNKNOWN in verdicts:
        return Verdict.UNKNOWN
    return Verdict.YES


class MinFixedKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    UNKNOWN = "unknown"


@dataclass
class PumpingWitness:
    """
    A family of minimal strongly fixed paths prefix·loopᵏ·suffix.

    Attributes:
        g: The group element fixing the family
        prefix: Path from the vertex where the search starts to the loop
        loop: Circuit that can be repeated without changing the search state
        suffix: Path that finishes the restriction off at the identity
    """
    g: Any
    prefix: FinitePath
    loop: FinitePath
    suffix: FinitePath

    def replay(self, k: int) -> FinitePath:
        return self.prefix.concat(self.loop.power(k)).concat(self.suffix)

    def __str__(self) -> str:
        return f"g={self.g}: ({self.prefix}) ({self.loop})^k ({self.suffix})"


@dataclass
class MinFixedSet:
    """
    The set M_g of minimal strongly fixed paths for one group element.

    Attributes:
        kind: FINITE (paths is the whole set), INFINITE (witness pumps it) or
              UNKNOWN (bound exhausted)
        paths: The minimal paths found, sorted by length then edges
        witness: Pumping witness for INFINITE
        bound: Search bound for UNKNOWN
    """
    kind: MinFixedKind
    paths: List[FinitePath] = field(default_factory=list)
    witness: Optional[PumpingWitness] = None
    bound: Optional[int] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == MinFixedKind.FINITE


@dataclass
class AbelianGroup:
    """
    A finitely generated abelian group ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k.

    Attributes:
        free_rank: r
        torsion: Invariant factors d₁ | d₂ | … (all > 1)
    """
    free_rank: int
    torsion: List[int] = field(default_factory=list)

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        """Only used with a free summand, so the torsion list stays in order."""
        return AbelianGroup(self.free_rank + other.free_rank, sorted(self.torsion + other.torsion))

    def to_dict(self) -> Dict[str, Any]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        factors = ["Z"] * self.free_rank + [f"C{d}" for d in self.torsion]
        if not factors:
            return "trivial"
        return " x ".join(factors)


@dataclass
class RelationCheck:
    """
    One identity checked on the concrete correspondence model.

    Attributes:
        name: Identity name (e.g. 'cocycle_commutation')
        passed: Whether it held for every instance
        witness: The first failing instance, if any
        instances: How many instances were checked
    """
    name: str
    passed: bool
    witness: str = ""
    instances: int = 0


@dataclass
class RelationReport:
    """Outcome of verifying every relation of the correspondence model."""
    checks: List[RelationCheck] = field(default_factory=list)
    full_module: bool = True
    sinks: List[str] = field(default_factory=list)
    summary: str = ""

    def has_failures(self) -> bool:
        return any(not c.passed for c in self.checks)

    def get_failure_count(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def first_failure(self) -> Optional[RelationCheck]:
        return next((c for c in self.checks if not c.passed), None)


@dataclass
class KatsuraNote:
    """
    Matrix-level facts attached to reports for Katsura inputs.

    Attributes:
        k0: K₀ = coker(I−A) ⊕ ker(I−B)
        k1: K₁ = coker(I−B) ⊕ ker(I−A)
        classical_condition: A irreducible, A_ii ≥ 2 and B_ii = 1 for all i
        specialized: Verdicts from the matrix criteria, keyed like the report
        sufficient_ep: Whether the contraction criterion alone proves essential principality
        disagreements: Report keys where both sides decided and disagree
    """
    k0: AbelianGroup
    k1: AbelianGroup
    classical_condition: bool
    specialized: Dict[str, str] = field(default_factory=dict)
    sufficient_ep: bool = False
    disagreements: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "K0": self.k0.to_dict(),
            "K1": self.k1.to_dict(),
            "K0_text": str(self.k0),
            "K1_text": str(self.k1),
            "classical_condition": self.classical_condition,
            "sufficient_ep": self.sufficient_ep,
            "disagreements": list(self.disagreements),
            "specialized": dict(self.specialized),
        }


@dataclass
class Report:
    """
    Structural verdicts for one triple.

    Attributes:
        name: Triple label
        group_kind: 'finite' or 'integers'
        pseudo_free: No edge is strongly fixed by a nontrivial element
        hausdorff: Every element has finitely many minimal strongly fixed paths
        weakly_g_transitive: Every infinite path passes a vertex ≫ every target
        g_transitive: x ≫ y for all vertices
        condition_l: Every circuit has an entry (local contractivity)
        topologically_free: condition L and the slack condition
        essentially_principal: Same as topologically_free
        simple: Simplicity of the associated algebra
        purely_infinite_simple: Same as simple under the Hausdorff hypothesis
        group_fixed_cylinders: Edges whose cylinders the whole group fixes
        vertex_classes: ≈ classes, listed top-down
        sinks: Vertices with no outgoing edge
        nuclear_note: Amenability remark
        ideal_note: Ideal-intersection remark, set when the groupoid is Hausdorff
                    and essentially principal
        katsura: Extra facts for Katsura inputs
    """
    name: str
    group_kind: str
    pseudo_free: Decision
    hausdorff: Decision
    weakly_g_transitive: bool
    g_transitive: bool
    condition_l: bool
    topologically_free: Decision
    essentially_principal: Decision
    simple: Decision
    purely_infinite_simple: Decision
    group_fixed_cylinders: List[str] = field(default_factory=list)
    vertex_classes: List[List[str]] = field(default_factory=list)
    sinks: List[str] = field(default_factory=list)
    nuclear_note: str = ""
    ideal_note: str = ""
    katsura: Optional[KatsuraNote] = None

    def undecided(self) -> List[str]:
        """Names of the verdicts left UNKNOWN."""
        decisions = {
            "pseudo_free": self.pseudo_free,
            "hausdorff": self.hausdorff,
            "topologically_free": self.topologically_free,
            "essentially_principal": self.essentially_principal,
            "simple": self.simple,
            "purely_infinite_simple": self.purely_infinite_simple,
        }
        return [key for key, decision in decisions.items() if decision.is_unknown]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "name": self.name,
            "group_kind": self.group_kind,
            "pseudo_free": self.pseudo_free.to_dict(),
            "hausdorff": self.hausdorff.to_dict(),
            "minimal": self.weakly_g_transitive,
            "weakly_g_transitive": self.weakly_g_transitive,
            "g_transitive": self.g_transitive,
            "condition_l": self.condition_l,
            "locally_contracting": self.condition_l,
            "topologically_free": self.topologically_free.to_dict(),
            "essentially_principal": self.essentially_principal.to_dict(),
            "simple": self.simple.to_dict(),
            "purely_infinite_simple": self.purely_infinite_simple.to_dict(),
            "group_fixed_cylinders": list(self.group_fixed_cylinders),
            "vertex_classes": [list(c) for c in self.vertex_classes],
            "sinks": list(self.sinks),
            "nuclear_note": self.nuclear_note,
            "ideal_note": self.ideal_note,
        }
        if self.katsura is not None:
            data["katsura"] = self.katsura.to_dict()
        return data


class FixedPointKind(str, Enum):
    NONE = "none"
    UNIQUE = "unique"
    FAMILY = "family"


@dataclass
class FixedPoints:
    """
    Fixed points of one semigroup element on the infinite path space.

    Attributes:
        kind: NONE, UNIQUE (a single eventually periodic point) or FAMILY
              (every βξ with gξ = ξ)
        point: The unique fixed point
        isolated: Whether the unique fixed point is isolated
        whole_cylinder: For FAMILY, whether g fixes every point of Z(d(β))
        description: One-line summary
    """
    kind: FixedPointKind
    point: Optional[Any] = None
    isolated: bool = False
    whole_cylinder: Optional[Decision] = None
    description: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value, "description": self.description}
        if self.point is not None:
            data["point"] = str(self.point)
            data["isolated"] = self.isolated
        if self.whole_cylinder is not None:
            data["whole_cylinder"] = self.whole_cylinder.to_dict()
        return data
