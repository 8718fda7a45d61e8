"""Data models for graphs, triples, semigroup elements, germs and reports."""

from .graph_models import Graph, FinitePath, EvPeriodicPath
from .group_models import GroupKind, GroupBackend, FiniteGroup, IntGroup
from .triple_models import KatsuraData, Triple, FiniteTriple, IntTriple
from .semigroup_models import SemigroupElement
from .groupoid_models import EventuallyPeriodicSequence, CoronaElement, LagValue, Germ
from .correspondence_models import CoefficientModel, ModuleModel
from .report_models import (
    Verdict,
    Decision,
    MinFixedKind,
    MinFixedSet,
    PumpingWitness,
    AbelianGroup,
    RelationCheck,
    RelationReport,
    KatsuraNote,
    Report,
    FixedPointKind,
    FixedPoints,
)

__all__ = [
    "Graph",
    "FinitePath",
    "EvPeriodicPath",
    "GroupKind",
    "GroupBackend",
    "FiniteGroup",
    "IntGroup",
    "KatsuraData",
    "Triple",
    "FiniteTriple",
    "IntTriple",
    "SemigroupElement",
    "EventuallyPeriodicSequence",
    "CoronaElement",
    "LagValue",
    "Germ",
    "Verdict",
    "Decision",
    "MinFixedKind",
    "MinFixedSet",
    "PumpingWitness",
    "AbelianGroup",
    "RelationCheck",
    "RelationReport",
    "KatsuraNote",
    "Report",
    "FixedPointKind",
    "FixedPoints",
    "CoefficientModel",
    "ModuleModel",
]
