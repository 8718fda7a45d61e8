"""
Germs of the path-space action over eventually periodic points.

A germ [α, g, β; η] is the class of (α, g, β) at a point η = βξ. Its range
is α·(gξ) and its domain is η. For pseudo free triples germs are compared
through the "push a common segment through" normal form, and the lag
function ℓ[α, g, β; βξ] = (ρ̌^|α|(Φ̌(g, ξ)), |α| − |β|) together with range
and domain determines the germ.
"""

import logging
from math import lcm
from typing import Any, Tuple

from ..models.errors import NotComposable, NotComposableGerms, NotPseudoFree
from ..models.graph_models import EvPeriodicPath
from ..models.groupoid_models import CoronaElement, EventuallyPeriodicSequence, Germ, LagValue
from ..models.semigroup_models import SemigroupElement
from ..models.triple_models import Triple
from .action_tool import act_and_cocycle, act_infinite, restriction_states
from .freeness_tool import is_pseudo_free


logger = logging.getLogger(__name__)


def phi_stream(triple: Triple, g: Any, xi: EvPeriodicPath, bound: int = 10000) -> EventuallyPeriodicSequence:
    """Φ(g, ξ)ₙ = φ(g, ξ|ₙ₋₁); the first term is g."""
    transient, period = restriction_states(triple, g, xi, bound)
    return EventuallyPeriodicSequence.of(transient, period)


def corona_of(seq: EventuallyPeriodicSequence) -> CoronaElement:
    return CoronaElement.of_sequence(seq)


def corona_identity(triple: Triple) -> CoronaElement:
    return CoronaElement((triple.group.identity,))


def corona_mul(triple: Triple, a: CoronaElement, b: CoronaElement) -> CoronaElement:
    """Pointwise product of tails."""
    p = lcm(a.period, b.period)
    return CoronaElement.of_residues(triple.group.mul(a.tail_at(k), b.tail_at(k)) for k in range(p))


def corona_inv(triple: Triple, a: CoronaElement) -> CoronaElement:
    return CoronaElement.of_residues(triple.group.inv(v) for v in a.residues)


def lag_mul(triple: Triple, x: LagValue, y: LagValue) -> LagValue:
    """(a, k)·(b, m) = (a·ρ̌ᵏ(b), k + m)."""
    return LagValue(corona_mul(triple, x.corona, y.corona.shifted_right(x.shift)), x.shift + y.shift)


def lag_inv(triple: Triple, x: LagValue) -> LagValue:
    return LagValue(corona_inv(triple, x.corona).shifted_right(-x.shift), -x.shift)


def lag_identity(triple: Triple) -> LagValue:
    return LagValue(corona_identity(triple), 0)


def make_germ(triple: Triple, s: SemigroupElement, basepoint: EvPeriodicPath) -> Germ:
    """
    [s; η] after checking η ∈ Z(β).

    Raises:
        NotComposable: s is zero or η does not start with β
    """
    if s.is_zero:
        raise NotComposable("NotComposable: the zero element has no germs")
    if not basepoint.has_prefix(s.beta):
        raise NotComposable(f"NotComposable: {basepoint} is not in Z({s.beta})")
    return Germ(s, basepoint)


def germ_domain(germ: Germ) -> EvPeriodicPath:
    return germ.basepoint


def germ_range(triple: Triple, germ: Germ, bound: int = 10000) -> EvPeriodicPath:
    """α·(gξ) where η = βξ."""
    s = germ.element
    xi = germ.basepoint.strip_prefix(s.beta)
    return act_infinite(triple, s.g, xi, bound).prepend(s.alpha)


def _require_pseudo_free(triple: Triple) -> None:
    if not is_pseudo_free(triple).is_yes:
        raise NotPseudoFree("NotPseudoFree: germ comparison needs a pseudo free triple")


def push_through(triple: Triple, germ: Germ, extra: int) -> Germ:
    """[α, g, β; βγξ] = [α·gγ, φ(g, γ), βγ; βγξ] with |γ| = extra."""
    s = germ.element
    gamma = germ.basepoint.shift(s.beta.length).truncate(extra)
    moved, restriction = act_and_cocycle(triple, s.g, gamma)
    element = SemigroupElement(s.alpha.concat(moved), restriction, s.beta.concat(gamma), tag=s.tag)
    return Germ(element, germ.basepoint)


def normalize_germ(triple: Triple, germ: Germ, n: int, side: str = "beta") -> Germ:
    """
    The representative with |β| = n (side 'beta') or |α| = n (side 'alpha').

    Raises:
        ValueError: n is smaller than max(|α|, |β|)
    """
    s = germ.element
    floor = max(s.alpha.length, s.beta.length)
    if n < floor:
        raise ValueError(f"normalize needs n >= {floor}, got {n}")
    current = s.beta.length if side == "beta" else s.alpha.length
    return push_through(triple, germ, n - current)


def germ_eq(triple: Triple, first: Germ, second: Germ) -> bool:
    """
    Equality of germs for pseudo free triples.

    With |β₁| ≤ |β₂| the germs agree iff the basepoints agree, β₂ = β₁γ,
    α₂ = α₁·g₁γ and g₂ = φ(g₁, γ).

    Raises:
        NotPseudoFree
    """
    _require_pseudo_free(triple)
    if first.basepoint != second.basepoint:
        return False
    if first.element.beta.length > second.element.beta.length:
        first, second = second, first
    s, t = first.element, second.element
    if not s.beta.is_prefix_of(t.beta):
        return False
    gamma = t.beta.strip_prefix(s.beta)
    moved, restriction = act_and_cocycle(triple, s.g, gamma)
    return t.alpha == s.alpha.concat(moved) and t.g == restriction


def invert_germ(triple: Triple, germ: Germ, bound: int = 10000) -> Germ:
    """[β, g⁻¹, α; r(u)]."""
    s = germ.element
    inverse = SemigroupElement(s.beta, triple.group.inv(s.g), s.alpha, tag=s.tag)
    return Germ(inverse, germ_range(triple, germ, bound))


def compose_germs(triple: Triple, first: Germ, second: Germ, bound: int = 10000) -> Germ:
    """
    u₁u₂, defined when d(u₁) = r(u₂).

    Both germs are brought to representatives whose inner paths have the same
    length; those paths then coincide and the middle elements multiply.

    Raises:
        NotComposableGerms
    """
    if germ_domain(first) != germ_range(triple, second, bound):
        raise NotComposableGerms(
            f"NotComposableGerms: d(u1) = {germ_domain(first)} but r(u2) = {germ_range(triple, second, bound)}"
        )
    s, t = first.element, second.element
    n = max(s.alpha.length, s.beta.length, t.alpha.length, t.beta.length)
    left = normalize_germ(triple, first, n, side="beta")
    right = normalize_germ(triple, second, n, side="alpha")
    assert left.element.beta == right.element.alpha, "aligned representatives must share their middle path"
    product = SemigroupElement(
        left.element.alpha,
        triple.group.mul(left.element.g, right.element.g),
        right.element.beta,
        tag=s.tag,
    )
    return Germ(product, second.basepoint)


def is_unit_germ(triple: Triple, germ: Germ) -> bool:
    s = germ.element
    return s.alpha == s.beta and triple.group.is_identity(s.g)


def lag_stream(triple: Triple, germ: Germ, bound: int = 10000) -> EventuallyPeriodicSequence:
    """A representative of ρ^|α|(Φ(g, ξ)), padded with the identity."""
    s = germ.element
    xi = germ.basepoint.strip_prefix(s.beta)
    stream = phi_stream(triple, s.g, xi, bound)
    pad = (triple.group.identity,) * s.alpha.length
    return EventuallyPeriodicSequence.of(pad + stream.transient, stream.period)


def lag(triple: Triple, germ: Germ, bound: int = 10000) -> LagValue:
    """
    ℓ(u) in Ǧ ⋊ ℤ.

    Raises:
        NotPseudoFree, NotEventuallyPeriodicWithinBound
    """
    _require_pseudo_free(triple)
    s = germ.element
    corona = corona_of(lag_stream(triple, germ, bound))
    return LagValue(corona, s.alpha.length - s.beta.length)


def f_map(triple: Triple, germ: Germ, bound: int = 10000) -> Tuple[EvPeriodicPath, LagValue, EvPeriodicPath]:
    """F(u) = (r(u), ℓ(u), d(u))."""
    return germ_range(triple, germ, bound), lag(triple, germ, bound), germ_domain(germ)


def is_groupoid_element(triple: Triple, eta: EvPeriodicPath, stream: EventuallyPeriodicSequence,
                        p: int, q: int, zeta: EvPeriodicPath) -> bool:
    """
    Whether (η; [stream], p − q; ζ) lies in the concrete groupoid: for all n ≥ 1

        stream_{n+p+1} = φ(stream_{n+p}, ζ_{n+q})   and   η_{n+p} = stream_{n+p}·ζ_{n+q}.

    Every sequence involved is eventually periodic, so checking past all
    transients for one common period covers every n.

    Raises:
        NotPseudoFree
    """
    _require_pseudo_free(triple)
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    settle = max(
        eta.prefix.length - p,
        zeta.prefix.length - q,
        len(stream.transient) - p,
        0,
    ) + 1
    horizon = settle + lcm(eta.cycle.length, zeta.cycle.length, len(stream.period))
    for n in range(1, horizon + 1):
        g_here = stream.at(n + p)
        edge = zeta.edge_at(n + q)
        if triple.act_edge(g_here, edge) != eta.edge_at(n + p):
            logger.debug(f"edge condition fails at n={n}")
            return False
        if stream.at(n + p + 1) != triple.phi(g_here, edge):
            logger.debug(f"restriction condition fails at n={n}")
            return False
    return True
