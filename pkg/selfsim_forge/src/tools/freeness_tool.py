"""
Freeness-type properties of a triple.

- pseudo freeness: no nontrivial element strongly fixes an edge;
- the Hausdorff property: every M_g is finite;
- slackness, and topological freeness of the path-space action;
- fixed points of individual semigroup elements.

Finite groups are decided by exhaustive state search. Questions about a
single element (fixes_cylinder, is_slack, minimal fixed paths) use the same
state search over the integers, with a state budget. Questions quantified
over all of ℤ go through the ratio analysis in ratio_tool, which certifies
NO answers with explicit witnesses and reports UNKNOWN when a capped
enumeration runs out.
"""

import logging
from typing import Any, Dict, List, Optional, Tuple

from ..models.errors import NotEventuallyPeriodicWithinBound, NotGCircuit
from ..models.graph_models import EvPeriodicPath, FinitePath
from ..models.report_models import (
    Decision,
    FixedPointKind,
    FixedPoints,
    MinFixedKind,
    PumpingWitness,
    Verdict,
)
from ..models.semigroup_models import SemigroupElement
from ..models.triple_models import IntTriple, Triple
from .action_tool import act_and_cocycle
from .fixed_path_tool import is_minimal_strongly_fixed, minimal_strongly_fixed_paths
from .graph_tool import circuits_without_entry, has_entry
from .ratio_tool import (
    RatioSystem,
    fixer_exists,
    hausdorff_by_ratios,
    slack_condition_at,
)


logger = logging.getLogger(__name__)

REPLAY_DEPTH = 5


def _nontrivial(triple: Triple) -> List[Any]:
    return [g for g in triple.group.elements if not triple.group.is_identity(g)]


def is_pseudo_free(triple: Triple) -> Decision:
    """
    Whether (g, e) strongly fixed forces g = 1.

    Over ℤ an edge is strongly fixed by some m ≠ 0 exactly when its orbit sum
    of restrictions is 0 (take m = L_e).
    """
    graph = triple.graph
    if isinstance(triple, IntTriple):
        for e in graph.edges:
            if triple.orbit_sum(e) == 0:
                m = triple.orbit_length(e)
                return Decision.no(reason="an edge is strongly fixed by a nonzero integer", witness=f"({m}, {e})")
        return Decision.yes(reason="every edge orbit has nonzero restriction sum")
    for g in _nontrivial(triple):
        for e in graph.edges:
            if triple.act_edge(g, e) == e and triple.group.is_identity(triple.phi(g, e)):
                return Decision.no(reason="a nontrivial element strongly fixes an edge", witness=f"({g}, {e})")
    return Decision.yes(reason="no nontrivial element strongly fixes an edge")


def group_fixed_cylinders(triple: Triple) -> List[str]:
    """Edges strongly fixed by every group element, so that G fixes all of Z(e)."""
    graph = triple.graph
    if isinstance(triple, IntTriple):
        return [e for e in graph.edges if triple.orbit_length(e) == 1 and triple.orbit_sum(e) == 0]
    return [
        e for e in graph.edges
        if all(triple.act_edge(g, e) == e and triple.group.is_identity(triple.phi(g, e))
               for g in triple.group.elements)
    ]


def verify_pumping(triple: Triple, witness: PumpingWitness, depth: int = REPLAY_DEPTH) -> bool:
    """Every prefix·loopᵏ·suffix with 1 ≤ k ≤ depth is a minimal strongly fixed path."""
    return all(is_minimal_strongly_fixed(triple, witness.g, witness.replay(k)) for k in range(1, depth + 1))


def is_hausdorff(triple: Triple, bound: int = 10000, cap: int = 500) -> Tuple[Decision, Optional[PumpingWitness]]:
    """
    Whether M_g is finite for every g, which makes the tight groupoid Hausdorff.

    Pseudo free triples are always Hausdorff. A NO answer carries a pumping
    witness that has been replayed and checked.
    """
    if is_pseudo_free(triple).is_yes:
        return Decision.yes(reason="pseudo free"), None
    if isinstance(triple, IntTriple):
        decision, witness = hausdorff_by_ratios(RatioSystem.from_triple(triple), cap)
    else:
        decision, witness = _hausdorff_by_search(triple, bound)
    if witness is not None and not verify_pumping(triple, witness):
        raise AssertionError(f"pumping witness {witness} does not replay")
    return decision, witness


def _hausdorff_by_search(triple: Triple, bound: int) -> Tuple[Decision, Optional[PumpingWitness]]:
    undecided = None
    for g in _nontrivial(triple):
        found = minimal_strongly_fixed_paths(triple, g, bound)
        if found.kind == MinFixedKind.INFINITE:
            return Decision.no(reason=f"M_{g} is infinite", witness=str(found.witness)), found.witness
        if found.kind == MinFixedKind.UNKNOWN:
            undecided = found.bound
    if undecided is not None:
        return Decision.unknown(undecided, reason="fixed-path search exhausted"), None
    return Decision.yes(reason="every M_g is finite"), None


def fixes_cylinder(triple: Triple, g: Any, x: str, bound: int = 10000) -> Decision:
    """
    Whether g fixes every infinite path in Z(x).

    Explores states (h, v) reachable from (g, x): every edge into v must be
    fixed by h, and a branch ends once the restriction is the identity. Over
    ℤ a state (K', v) is skipped once some (K, v) with K | K' has been seen,
    since everything K fixes is fixed by its multiples.
    """
    if triple.act_vertex(g, x) != x:
        return Decision.no(reason=f"{g} moves the vertex {x}", witness=x)
    graph = triple.graph
    group = triple.group
    integers = isinstance(triple, IntTriple)
    seen: Dict[str, List[Any]] = {v: [] for v in graph.vertices}
    stack: List[Tuple[Any, str, FinitePath]] = [(g, x, FinitePath.vertex(x))]
    explored = 0
    while stack:
        h, v, path = stack.pop()
        if group.is_identity(h):
            continue
        if integers and any(h % k == 0 for k in seen[v]):
            continue
        if not integers and h in seen[v]:
            continue
        seen[v].append(h)
        explored += 1
        if explored > bound:
            logger.warning(f"fixes_cylinder({g}, {x}) stopped after {bound} states")
            return Decision.unknown(bound, reason="state exploration exhausted")
        for e in graph.edges_into(v):
            if triple.act_edge(h, e) != e:
                return Decision.no(reason=f"restriction {h} moves an edge", witness=str(path.concat(_edge(graph, e))))
            stack.append((triple.phi(h, e), graph.d(e), path.concat(_edge(graph, e))))
    return Decision.yes(reason=f"{g} fixes Z({x}) pointwise")


def _edge(graph, e: str) -> FinitePath:
    return FinitePath((e,), (graph.r(e), graph.d(e)))


def is_slack(triple: Triple, g: Any, x: str, bound: int = 10000) -> Tuple[Decision, Optional[int]]:
    """
    Whether some n makes every path of length ≥ n from x strongly fixed by g.

    Walks the layers of restriction states (h, v) reached after n edges. The
    answer is YES at the first layer made of identities and NO once an edge is
    moved or a layer repeats. Over ℤ the restrictions can grow without
    repeating, so more than `bound` states gives UNKNOWN.

    Returns the decision and the least such n when it holds.
    """
    if triple.group.is_identity(g):
        return Decision.yes(reason="the identity is slack everywhere"), 0
    if triple.act_vertex(g, x) != x:
        return Decision.no(reason=f"{g} moves the vertex {x}"), None

    graph = triple.graph
    group = triple.group
    layer = frozenset({(g, x)})
    history = {layer}
    depth = 0
    explored = 1
    while True:
        if all(group.is_identity(h) for h, _ in layer):
            return Decision.yes(reason=f"all paths of length {depth} are strongly fixed"), depth
        following = set()
        for h, v in layer:
            for e in graph.edges_into(v):
                if triple.act_edge(h, e) != e:
                    return Decision.no(reason=f"restriction {h} moves edge {e}", witness=e), None
                following.add((triple.phi(h, e), graph.d(e)))
        layer = frozenset(following)
        depth += 1
        explored += len(layer)
        if layer in history:
            return Decision.no(reason="the restriction states cycle without reaching the identity"), None
        if explored > bound:
            logger.warning(f"is_slack({g}, {x}) stopped after {bound} states")
            return Decision.unknown(bound, reason="restriction layers exhausted"), None
        history.add(layer)


def condition_l(triple: Triple) -> Tuple[bool, List[FinitePath]]:
    """Every circuit has an entry; returns the entryless circuits otherwise."""
    bad = circuits_without_entry(triple.graph)
    return (not bad), bad


def slack_condition(triple: Triple, bound: int = 10000, cap: int = 500) -> Decision:
    """Every g fixing all of Z(x) is slack at x, for every vertex x."""
    graph = triple.graph
    if isinstance(triple, IntTriple):
        system = RatioSystem.from_triple(triple)
        decisions = [slack_condition_at(system, x, cap) for x in graph.vertices]
        for x, decision in zip(graph.vertices, decisions):
            if decision.is_no:
                return Decision.no(reason=decision.reason, witness=x)
        if any(d.is_unknown for d in decisions):
            return Decision.unknown(cap, reason="cycle enumeration capped")
        return Decision.yes(reason="every cylinder fixer is slack")

    undecided = None
    for g in _nontrivial(triple):
        for x in graph.vertices:
            fixes = fixes_cylinder(triple, g, x, bound)
            if fixes.is_unknown:
                undecided = fixes.bound
                continue
            if fixes.is_no:
                continue
            slack, _ = is_slack(triple, g, x, bound)
            if slack.is_no:
                return Decision.no(reason=f"{g} fixes Z({x}) but is not slack there", witness=f"({g}, {x})")
    if undecided is not None:
        return Decision.unknown(undecided, reason="cylinder exploration exhausted")
    return Decision.yes(reason="every cylinder fixer is slack")


def cylinder_fixed_by_nontrivial(triple: Triple, bound: int = 10000, cap: int = 500) -> Decision:
    """Some g ≠ 1 fixes a whole cylinder Z(x)."""
    graph = triple.graph
    if isinstance(triple, IntTriple):
        system = RatioSystem.from_triple(triple)
        decisions = [(x, fixer_exists(system, x, cap)) for x in graph.vertices]
        for x, decision in decisions:
            if decision.is_yes:
                return Decision.yes(reason="a nonzero integer fixes a cylinder", witness=x)
        if any(d.is_unknown for _, d in decisions):
            return Decision.unknown(cap, reason="cycle enumeration capped")
        return Decision.no(reason="no nonzero integer fixes a cylinder")
    undecided = None
    for g in _nontrivial(triple):
        for x in graph.vertices:
            fixes = fixes_cylinder(triple, g, x, bound)
            if fixes.is_yes:
                return Decision.yes(reason=f"{g} fixes Z({x})", witness=f"({g}, {x})")
            if fixes.is_unknown:
                undecided = fixes.bound
    if undecided is not None:
        return Decision.unknown(undecided, reason="cylinder exploration exhausted")
    return Decision.no(reason="no nontrivial element fixes a cylinder")


def is_topologically_free(triple: Triple, bound: int = 10000, cap: int = 500) -> Decision:
    """
    Topological freeness of the path-space action: condition (L) and the
    slack condition.

    Pseudo free triples take the shortcut "no g ≠ 1 fixes a cylinder", and a
    single vertex with two or more edges only needs faithfulness. Both
    shortcuts are cross-checked against the general criterion when it is
    decided.
    """
    entries, bad = condition_l(triple)
    if not entries:
        return Decision.no(reason="a circuit has no entry", witness=str(bad[0]))
    general = slack_condition(triple, bound, cap)

    shortcut = None
    if is_pseudo_free(triple).is_yes:
        fixed = cylinder_fixed_by_nontrivial(triple, bound, cap)
        shortcut = _negate(fixed, "pseudo free and no nontrivial element fixes a cylinder")
    elif len(triple.graph.vertices) == 1 and len(triple.graph.edges) >= 2:
        fixed = cylinder_fixed_by_nontrivial(triple, bound, cap)
        if fixed.is_no:
            shortcut = Decision.yes(reason="single vertex and a faithful action")
    if shortcut is not None and not shortcut.is_unknown and not general.is_unknown:
        assert shortcut.verdict == general.verdict, f"shortcut {shortcut} disagrees with {general}"
    if general.is_unknown and shortcut is not None and not shortcut.is_unknown:
        return shortcut
    return general


def _negate(decision: Decision, yes_reason: str) -> Decision:
    if decision.is_no:
        return Decision.yes(reason=yes_reason)
    if decision.is_yes:
        return Decision.no(reason=decision.reason, witness=decision.witness)
    return decision


def iterate_g_circuit(triple: Triple, g: Any, gamma: FinitePath, n: int) -> List[Tuple[FinitePath, Any]]:
    """
    The first n pairs (γᵏ, g_k) with γ¹ = γ, g₁ = g, γᵏ⁺¹ = g_k·γᵏ and
    g_{k+1} = φ(g_k, γᵏ).

    Raises:
        NotGCircuit: γ is a vertex or d(γ) ≠ g·r(γ)
    """
    _require_g_circuit(triple, g, gamma)
    pairs = [(gamma, g)]
    while len(pairs) < n:
        current, h = pairs[-1]
        moved, restriction = act_and_cocycle(triple, h, current)
        pairs.append((moved, restriction))
    return pairs


def _require_g_circuit(triple: Triple, g: Any, gamma: FinitePath) -> None:
    if gamma.is_vertex():
        raise NotGCircuit(f"NotGCircuit: '{gamma}' has length zero")
    if gamma.domain != triple.act_vertex(g, gamma.range):
        raise NotGCircuit(f"NotGCircuit: d({gamma}) = {gamma.domain} is not {g}.r({gamma})")


def canonical_fixed_point(triple: Triple, g: Any, gamma: FinitePath, beta: FinitePath,
                          bound: int = 10000) -> EvPeriodicPath:
    """
    The fixed point β·γ¹γ²γ³… of (βγ, g, β) as an eventually periodic path.

    Raises:
        NotGCircuit: (g, γ) is not a G-circuit
        NotEventuallyPeriodicWithinBound: no repeated (γᵏ, g_k) within `bound` steps
    """
    _require_g_circuit(triple, g, gamma)
    seen: Dict[Tuple[FinitePath, Any], int] = {}
    blocks: List[FinitePath] = []
    current, h = gamma, g
    while (current, h) not in seen:
        if len(blocks) >= bound:
            raise NotEventuallyPeriodicWithinBound(bound, "G-circuit iteration")
        seen[(current, h)] = len(blocks)
        blocks.append(current)
        current, h = act_and_cocycle(triple, h, current)
    start = seen[(current, h)]
    prefix = beta
    for block in blocks[:start]:
        prefix = prefix.concat(block)
    cycle = blocks[start]
    for block in blocks[start + 1:]:
        cycle = cycle.concat(block)
    return EvPeriodicPath.of(prefix, cycle)


def fixed_points_of(triple: Triple, s: SemigroupElement, bound: int = 10000) -> FixedPoints:
    """
    Describe the fixed points of s = (α, g, β).

    When |α| > |β| there is at most one, present iff β ⪯ α, and it is
    isolated iff the G-circuit has no entry. When |α| < |β| the fixed points
    are those of s*. When |α| = |β| they exist only for α = β and are the
    paths βξ with gξ = ξ.
    """
    if s.is_zero:
        return FixedPoints(FixedPointKind.NONE, description="the zero element fixes nothing")
    alpha, g, beta = s.alpha, s.g, s.beta
    if alpha.length < beta.length:
        flipped = SemigroupElement(beta, triple.group.inv(g), alpha, tag=s.tag)
        return fixed_points_of(triple, flipped, bound)
    if alpha.length > beta.length:
        if not beta.is_prefix_of(alpha):
            return FixedPoints(FixedPointKind.NONE, description=f"{beta} is not a prefix of {alpha}")
        gamma = alpha.strip_prefix(beta)
        point = canonical_fixed_point(triple, g, gamma, beta, bound)
        isolated = not has_entry(triple.graph, gamma)
        return FixedPoints(
            FixedPointKind.UNIQUE,
            point=point,
            isolated=isolated,
            description=f"unique fixed point from the G-circuit ({g}, {gamma})",
        )
    if alpha != beta:
        return FixedPoints(FixedPointKind.NONE, description="equal lengths but different paths")
    whole = fixes_cylinder(triple, g, beta.domain, bound)
    return FixedPoints(
        FixedPointKind.FAMILY,
        whole_cylinder=whole,
        description=f"{beta}·ξ for every ξ in Z({beta.domain}) fixed by {g}",
    )


def verdicts_agree(first: Decision, second: Decision) -> bool:
    """Decided verdicts must match; UNKNOWN agrees with anything."""
    if Verdict.UNKNOWN in (first.verdict, second.verdict):
        return True
    return first.verdict == second.verdict
