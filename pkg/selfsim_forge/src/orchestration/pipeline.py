"""
Analysis pipeline for Self-Similar Forge.

Runs every decision procedure on a triple in a fixed order and assembles the
Report. Katsura inputs additionally get the matrix-level note (K-groups,
classical condition) and a comparison of each matrix criterion with the
generic verdict it specializes.

Order of evaluation:
1. pseudo freeness and the Hausdorff property
2. orbit reachability (minimality)
3. condition (L) and topological freeness
4. simplicity and pure infiniteness, from the verdicts above
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from ..models.report_models import Decision, KatsuraNote, Report, Verdict
from ..models.triple_models import IntTriple, KatsuraData, Triple
from ..tools.action_tool import edge_orbits, vertex_orbits
from ..tools.freeness_tool import (
    condition_l,
    group_fixed_cylinders,
    is_hausdorff,
    is_pseudo_free,
    is_topologically_free,
    verdicts_agree,
)
from ..tools.graph_tool import sink_vertices
from ..tools.katsura_tool import (
    build_katsura,
    classical_condition,
    find_matrix_pairs,
    k_theory,
    load_katsura,
    specialized_verdicts,
    sufficient_ep,
)
from ..tools.transitivity_tool import is_g_transitive, is_weakly_g_transitive, vertex_classes


logger = logging.getLogger(__name__)

OUTSIDE_HAUSDORFF = "outside the Hausdorff hypothesis"


@dataclass
class AnalysisOptions:
    """
    Search budgets for one analysis run.

    Attributes:
        bound: State budget of the bounded searches
        cap: Cap on enumerated simple cycles (integer triples)
    """
    bound: int = 10000
    cap: int = 500


def nuclear_note(triple: Triple) -> str:
    """Amenability remark; finite groups and ℤ are both amenable."""
    group = "finite group" if triple.is_finite() else "the integers"
    return (
        f"The acting group is {group}, which is amenable, so the tight groupoid is "
        f"amenable and its algebra is nuclear."
    )


def ideal_note(hausdorff: Decision, essentially_principal: Decision) -> str:
    """Empty unless the groupoid is Hausdorff and essentially principal."""
    if not (hausdorff.is_yes and essentially_principal.is_yes):
        return ""
    return (
        "The groupoid is essentially principal, so every nonzero ideal of its algebra meets "
        "the diagonal subalgebra, and simplicity follows from minimality alone."
    )


def simplicity(hausdorff: Decision, minimal: bool, topologically_free: Decision) -> Decision:
    """
    Simplicity of the algebra, decided only for Hausdorff groupoids:
    simple iff minimal and topologically free.
    """
    if not hausdorff.is_yes:
        return Decision.unknown(hausdorff.bound, reason=OUTSIDE_HAUSDORFF)
    if not minimal:
        return Decision.no(reason="the groupoid is not minimal")
    if topologically_free.is_no:
        return Decision.no(reason="the groupoid is not topologically free", witness=topologically_free.witness)
    if topologically_free.is_unknown:
        return Decision(Verdict.UNKNOWN, reason=topologically_free.reason, bound=topologically_free.bound)
    return Decision.yes(reason="Hausdorff, minimal and topologically free")


def pure_infiniteness(simple: Decision, locally_contracting: bool) -> Decision:
    """Simple and locally contracting gives purely infinite simple."""
    if simple.is_yes and locally_contracting:
        return Decision.yes(reason="simple and locally contracting")
    if simple.is_yes:
        return Decision.no(reason="not locally contracting")
    return Decision(simple.verdict, witness=simple.witness, reason=simple.reason, bound=simple.bound)


def analyze(triple: Triple, options: Optional[AnalysisOptions] = None,
            progress_callback: Optional[Callable[[str, int], None]] = None) -> Report:
    """
    Run every decision procedure on a validated triple.

    Args:
        triple: The triple to analyze (validated by the caller)
        options: Search budgets
        progress_callback: Optional callback(stage, percent)

    Returns:
        Report with all structural verdicts
    """
    options = options or AnalysisOptions()
    name = triple.name or "triple"
    logger.info(f"Analyzing {name} ({len(triple.graph.vertices)} vertices, {len(triple.graph.edges)} edges)")

    def progress(stage: str, percent: int) -> None:
        logger.debug(f"{stage} ({percent}%)")
        if progress_callback:
            progress_callback(stage, percent)

    progress("freeness", 10)
    pseudo_free = is_pseudo_free(triple)
    hausdorff, witness = is_hausdorff(triple, options.bound, options.cap)
    if witness is not None:
        logger.info(f"Hausdorff fails for {name}: {witness}")

    progress("transitivity", 40)
    weakly = is_weakly_g_transitive(triple)
    transitive = is_g_transitive(triple)
    classes = vertex_classes(triple)

    progress("topological freeness", 60)
    entries, _ = condition_l(triple)
    topfree = is_topologically_free(triple, options.bound, options.cap)

    progress("simplicity", 90)
    simple = simplicity(hausdorff, weakly, topfree)
    purely_infinite = pure_infiniteness(simple, entries)

    essentially_principal = Decision(
        topfree.verdict, witness=topfree.witness, reason=topfree.reason, bound=topfree.bound
    )
    report = Report(
        name=name,
        group_kind=triple.group.kind.value,
        pseudo_free=pseudo_free,
        hausdorff=hausdorff,
        weakly_g_transitive=weakly,
        g_transitive=transitive,
        condition_l=entries,
        topologically_free=topfree,
        essentially_principal=essentially_principal,
        simple=simple,
        purely_infinite_simple=purely_infinite,
        group_fixed_cylinders=group_fixed_cylinders(triple),
        vertex_classes=classes,
        sinks=sink_vertices(triple.graph),
        nuclear_note=nuclear_note(triple),
        ideal_note=ideal_note(hausdorff, essentially_principal),
    )
    progress("done", 100)
    logger.info(f"{name}: hausdorff={hausdorff} minimal={weakly} simple={simple}")
    return report


def generic_verdicts(report: Report) -> Dict[str, Decision]:
    """Report verdicts under the keys used by the matrix criteria."""
    return {
        "pseudo_free": report.pseudo_free,
        "hausdorff": report.hausdorff,
        "minimal": Decision.of_bool(report.weakly_g_transitive),
        "condition_l": Decision.of_bool(report.condition_l),
        "essentially_principal": report.essentially_principal,
        "simple": report.simple,
    }


def compare_with_generic(specialized: Dict[str, str], report: Report) -> List[str]:
    """Keys on which a decided matrix criterion contradicts the decided generic verdict."""
    generic = generic_verdicts(report)
    disagreements = []
    for key, value in specialized.items():
        if not verdicts_agree(Decision(Verdict(value)), generic[key]):
            logger.error(f"Matrix criterion for {key} says {value}, generic analysis says {generic[key]}")
            disagreements.append(key)
    return disagreements


def analyze_katsura(data: KatsuraData, name: str = "katsura",
                    options: Optional[AnalysisOptions] = None) -> Tuple[IntTriple, Report]:
    """
    Build the Katsura triple, analyze it and attach the matrix-level note.

    Raises:
        InvalidKatsuraData
    """
    options = options or AnalysisOptions()
    triple = build_katsura(data, name=name)
    report = analyze(triple, options)
    k0, k1 = k_theory(data)
    specialized = specialized_verdicts(data, options.cap)
    note = KatsuraNote(
        k0=k0,
        k1=k1,
        classical_condition=classical_condition(data),
        specialized=specialized,
        sufficient_ep=sufficient_ep(data, options.cap),
        disagreements=compare_with_generic(specialized, report),
    )
    if note.classical_condition and not (report.simple.is_yes and report.purely_infinite_simple.is_yes):
        logger.warning(f"{name}: classical condition holds but simple={report.simple}")
    report.katsura = note
    return triple, report


def analyze_katsura_files(a_path: Path, b_path: Path, name: Optional[str] = None,
                          options: Optional[AnalysisOptions] = None) -> Tuple[IntTriple, Report]:
    data = load_katsura(Path(a_path), Path(b_path))
    if name is None:
        stem = Path(a_path).stem
        name = stem[:-2] if stem.endswith("_A") else stem
    return analyze_katsura(data, name, options)


def analyze_katsura_directory(directory: Path,
                              options: Optional[AnalysisOptions] = None) -> List[Tuple[str, Report]]:
    """One report per NAME_A.txt / NAME_B.txt pair, in name order."""
    results = []
    for name, a_path, b_path in find_matrix_pairs(directory):
        _, report = analyze_katsura_files(a_path, b_path, name, options)
        results.append((name, report))
    logger.info(f"Analyzed {len(results)} matrix pairs from {directory}")
    return results


def orbit_summary(triple: Triple) -> Dict[str, List[List[str]]]:
    return {"vertex_orbits": vertex_orbits(triple), "edge_orbits": edge_orbits(triple)}
