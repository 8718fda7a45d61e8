"""
Parsing of the textual literals accepted on the command line.

Every literal is the inverse of the corresponding __str__:

    finite path        "e1 e2 e3" or a vertex id "x"
    infinite path      "prefix|cycle", e.g. "e1|e0 e0" or "x|a"
    semigroup element  "(α; g; β)" or "0"
    stream             "t1 t2|p1 p2" or "|p"
    germ               "[α, g, β; prefix|cycle]"
"""

import re
from typing import List

from ..models.errors import LiteralError
from ..models.graph_models import EvPeriodicPath, FinitePath
from ..models.groupoid_models import EventuallyPeriodicSequence, Germ
from ..models.semigroup_models import SemigroupElement
from ..models.triple_models import Triple
from .graph_tool import make_path


def normalize_whitespace(text: str) -> str:
    """Collapse whitespace runs to single spaces and strip the ends."""
    return re.sub(r'\s+', ' ', text).strip()


def tokens(text: str) -> List[str]:
    text = normalize_whitespace(text)
    return text.split(" ") if text else []


def parse_path(triple: Triple, text: str) -> FinitePath:
    """
    A single token naming a vertex is the vertex path; anything else is an
    edge sequence.

    Raises:
        LiteralError, NotComposable
    """
    parts = tokens(text)
    if not parts:
        raise LiteralError("empty path literal")
    if len(parts) == 1 and triple.graph.is_vertex(parts[0]):
        return FinitePath.vertex(parts[0])
    return make_path(triple.graph, parts)


def parse_infinite_path(triple: Triple, text: str) -> EvPeriodicPath:
    """
    Raises:
        LiteralError: no '|' or an empty cycle
        NotComposable: the prefix does not end where the cycle starts
    """
    if text.count("|") != 1:
        raise LiteralError(f"infinite path '{text}' must look like 'prefix|cycle'")
    head, tail = text.split("|")
    cycle = parse_path(triple, tail)
    if cycle.is_vertex():
        raise LiteralError(f"infinite path '{text}' has an empty cycle")
    prefix = parse_path(triple, head) if tokens(head) else FinitePath.vertex(cycle.range)
    return EvPeriodicPath.of(prefix, cycle)


_ELEMENT = re.compile(r'^\(\s*([^;]*);\s*([^;]*);\s*([^;]*)\)$')


def parse_element(triple: Triple, text: str) -> SemigroupElement:
    """
    Parse "(α; g; β)" and check d(α) = g·d(β).

    Raises:
        LiteralError
    """
    text = normalize_whitespace(text)
    if text == "0":
        return SemigroupElement.zero(tag=triple.tag)
    match = _ELEMENT.match(text)
    if not match:
        raise LiteralError(f"'{text}' is not of the form '(alpha; g; beta)'")
    alpha = parse_path(triple, match.group(1))
    g = triple.group.parse(normalize_whitespace(match.group(2)))
    beta = parse_path(triple, match.group(3))
    if triple.act_vertex(g, beta.domain) != alpha.domain:
        raise LiteralError(
            f"'{text}' is not an element: d(alpha) = {alpha.domain} but g.d(beta) = "
            f"{triple.act_vertex(g, beta.domain)}"
        )
    return SemigroupElement(alpha, g, beta, tag=triple.tag)


def parse_stream(triple: Triple, text: str) -> EventuallyPeriodicSequence:
    """
    Raises:
        LiteralError
    """
    if text.count("|") != 1:
        raise LiteralError(f"stream '{text}' must look like 'transient|period'")
    head, tail = text.split("|")
    transient = [triple.group.parse(t) for t in tokens(head)]
    period = [triple.group.parse(t) for t in tokens(tail)]
    if not period:
        raise LiteralError(f"stream '{text}' has an empty period")
    return EventuallyPeriodicSequence.of(transient, period)


_GERM = re.compile(r'^\[\s*([^,]*),\s*([^,]*),\s*([^;]*);\s*(.*)\]$')


def parse_germ(triple: Triple, text: str) -> Germ:
    """
    Raises:
        LiteralError: malformed text or a basepoint outside Z(β)
    """
    text = normalize_whitespace(text)
    match = _GERM.match(text)
    if not match:
        raise LiteralError(f"'{text}' is not of the form '[alpha, g, beta; prefix|cycle]'")
    element = parse_element(triple, f"({match.group(1)}; {match.group(2)}; {match.group(3)})")
    basepoint = parse_infinite_path(triple, match.group(4))
    if not basepoint.has_prefix(element.beta):
        raise LiteralError(f"basepoint {basepoint} does not start with {element.beta}")
    return Germ(element, basepoint)


def parse_group_element(triple: Triple, text: str):
    return triple.group.parse(normalize_whitespace(text))
