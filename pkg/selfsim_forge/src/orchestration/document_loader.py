"""
Triple documents: JSON files describing (G, E, φ).

Schema (finite group):

    {
      "name": "swap",
      "graph": {"vertices": ["x"], "edges": [{"id": "a", "range": "x", "domain": "x"}, ...]},
      "group": {"kind": "finite", "elements": ["1", "s"], "identity": "1",
                "mul": {"1": {"1": "1", "s": "s"}, "s": {"1": "s", "s": "1"}}},
      "action": {"vertices": {g: {x: gx}}, "edges": {g: {e: ge}}},
      "cocycle": {g: {e: φ(g, e)}}
    }

Schema (integers): "group": {"kind": "integers"}, "action":
{"sigma1_vertices": {...}, "sigma1_edges": {...}} and "cocycle": {e: φ(1, e)}.

Katsura inputs replace graph/group/action/cocycle by "katsura": {"A": rows, "B": rows}.

Schema problems raise DocumentError carrying the offending path, e.g.
graph.edges[3].domain. Mathematical problems (a cocycle that is not a
cocycle, a source vertex) surface as the named errors of validate_triple.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from ..models.errors import DocumentError
from ..models.group_models import FiniteGroup
from ..models.triple_models import FiniteTriple, IntTriple, KatsuraData, Triple
from ..tools.action_tool import validate_triple
from ..tools.graph_tool import build_graph
from ..tools.katsura_tool import build_katsura, validate_katsura


logger = logging.getLogger(__name__)

GRAPH_SECTIONS = ("graph", "group", "action", "cocycle")


def _require(data: Dict[str, Any], key: str, path: str, kind: type) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise DocumentError(f"{path}.{key}" if path else key, "missing")
    value = data[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise DocumentError(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return value


def _strings(values: Any, path: str) -> List[str]:
    if not isinstance(values, list):
        raise DocumentError(path, "expected a list")
    for k, v in enumerate(values):
        if not isinstance(v, str) or not v:
            raise DocumentError(f"{path}[{k}]", "expected a non-empty string")
    return list(values)


def _table(data: Any, rows: List[str], cols: List[str], path: str, values: Any = None) -> Dict[str, Dict[str, Any]]:
    """A nested mapping rows × cols, optionally checking every entry is in `values`."""
    if not isinstance(data, dict):
        raise DocumentError(path, "expected an object")
    for r in rows:
        if r not in data or not isinstance(data[r], dict):
            raise DocumentError(f"{path}.{r}", "missing")
        for c in cols:
            if c not in data[r]:
                raise DocumentError(f"{path}.{r}.{c}", "missing")
            if values is not None and data[r][c] not in values:
                raise DocumentError(f"{path}.{r}.{c}", f"'{data[r][c]}' is not allowed here")
    return {r: {c: data[r][c] for c in cols} for r in rows}


def _mapping(data: Any, keys: List[str], path: str, values: List[str]) -> Dict[str, str]:
    if not isinstance(data, dict):
        raise DocumentError(path, "expected an object")
    for k in keys:
        if k not in data:
            raise DocumentError(f"{path}.{k}", "missing")
        if data[k] not in values:
            raise DocumentError(f"{path}.{k}", f"'{data[k]}' is not allowed here")
    return {k: data[k] for k in keys}


def _parse_graph(doc: Dict[str, Any], name: str):
    graph = _require(doc, "graph", "", dict)
    vertices = _strings(_require(graph, "vertices", "graph", list), "graph.vertices")
    raw_edges = _require(graph, "edges", "graph", list)
    edges = []
    for k, edge in enumerate(raw_edges):
        path = f"graph.edges[{k}]"
        if not isinstance(edge, dict):
            raise DocumentError(path, "expected an object")
        ident = _require(edge, "id", path, str)
        rng = _require(edge, "range", path, str)
        dom = _require(edge, "domain", path, str)
        if rng not in vertices:
            raise DocumentError(f"{path}.range", f"unknown vertex '{rng}'")
        if dom not in vertices:
            raise DocumentError(f"{path}.domain", f"unknown vertex '{dom}'")
        edges.append((ident, rng, dom))
    return build_graph(vertices, edges, name=name)


def _parse_finite(doc: Dict[str, Any], graph, name: str) -> FiniteTriple:
    group_doc = doc["group"]
    elements = _strings(_require(group_doc, "elements", "group", list), "group.elements")
    identity = _require(group_doc, "identity", "group", str)
    if identity not in elements:
        raise DocumentError("group.identity", f"'{identity}' is not listed in group.elements")
    rows = _table(group_doc.get("mul"), elements, elements, "group.mul", elements)
    group = FiniteGroup.from_rows(elements, identity, rows)

    action = _require(doc, "action", "", dict)
    vertices, edges = list(graph.vertices), list(graph.edges)
    vertex_perm = _table(action.get("vertices"), elements, vertices, "action.vertices", vertices)
    edge_perm = _table(action.get("edges"), elements, edges, "action.edges", edges)
    cocycle = _table(_require(doc, "cocycle", "", dict), elements, edges, "cocycle", elements)
    return FiniteTriple(
        graph=graph,
        group=group,
        vertex_perm=vertex_perm,
        edge_perm=edge_perm,
        cocycle_table=cocycle,
        name=name,
    )


def _parse_integers(doc: Dict[str, Any], graph, name: str) -> IntTriple:
    action = _require(doc, "action", "", dict)
    vertices, edges = list(graph.vertices), list(graph.edges)
    sigma_v = _mapping(action.get("sigma1_vertices"), vertices, "action.sigma1_vertices", vertices)
    sigma_e = _mapping(action.get("sigma1_edges"), edges, "action.sigma1_edges", edges)
    cocycle = _require(doc, "cocycle", "", dict)
    phi1 = {}
    for e in edges:
        phi1[e] = _require(cocycle, e, "cocycle", int)
    return IntTriple(graph=graph, sigma1_vertices=sigma_v, sigma1_edges=sigma_e, phi1=phi1, name=name)


def _parse_katsura(doc: Dict[str, Any], name: str) -> IntTriple:
    clash = [k for k in GRAPH_SECTIONS if k in doc]
    if clash:
        raise DocumentError(clash[0], "not allowed together with katsura")
    katsura = doc["katsura"]
    matrices = {}
    for key in ("A", "B"):
        rows = _require(katsura, key, "katsura", list)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
                raise DocumentError(f"katsura.{key}[{i}]", "expected a list of integers")
        matrices[key] = rows
    data = KatsuraData(A=matrices["A"], B=matrices["B"])
    validate_katsura(data)
    return build_katsura(data, name=name)


def parse_document(doc: Any, name: str = "") -> Triple:
    """
    Turn a decoded JSON document into a validated triple.

    Raises:
        DocumentError: schema violations, naming the offending path
        SelfSimError: the data violate the standing assumptions
    """
    if not isinstance(doc, dict):
        raise DocumentError("$", "a triple document must be a JSON object")
    if isinstance(doc.get("name"), str):
        name = doc["name"]
    if "katsura" in doc:
        triple = _parse_katsura(doc, name)
    else:
        graph = _parse_graph(doc, name)
        group_doc = _require(doc, "group", "", dict)
        kind = _require(group_doc, "kind", "group", str)
        if kind == "finite":
            triple = _parse_finite(doc, graph, name)
        elif kind == "integers":
            triple = _parse_integers(doc, graph, name)
        else:
            raise DocumentError("group.kind", f"expected 'finite' or 'integers', got '{kind}'")
    validate_triple(triple)
    logger.info(f"Loaded triple '{triple.name}' ({triple.group.kind.value})")
    return triple


def load_document(path: Union[str, Path]) -> Triple:
    """
    Read and validate a triple document.

    Raises:
        FileNotFoundError, DocumentError, SelfSimError
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise DocumentError("$", f"invalid JSON at line {e.lineno}: {e.msg}") from None
    return parse_document(doc, name=path.stem)


def serialize_triple(triple: Triple) -> Dict[str, Any]:
    """The document a triple was (or could have been) loaded from."""
    if isinstance(triple, IntTriple) and triple.katsura is not None:
        return {"name": triple.name, "katsura": {"A": triple.katsura.A, "B": triple.katsura.B}}
    graph = triple.graph
    doc: Dict[str, Any] = {
        "name": triple.name,
        "graph": {
            "vertices": list(graph.vertices),
            "edges": [{"id": e, "range": graph.r(e), "domain": graph.d(e)} for e in graph.edges],
        },
    }
    if isinstance(triple, FiniteTriple):
        group = triple.group
        doc["group"] = {
            "kind": "finite",
            "elements": list(group.elements),
            "identity": group.identity,
            "mul": {a: {b: group.mul(a, b) for b in group.elements} for a in group.elements},
        }
        doc["action"] = {
            "vertices": {g: dict(triple.vertex_perm[g]) for g in group.elements},
            "edges": {g: dict(triple.edge_perm[g]) for g in group.elements},
        }
        doc["cocycle"] = {g: dict(triple.cocycle_table[g]) for g in group.elements}
    else:
        doc["group"] = {"kind": "integers"}
        doc["action"] = {
            "sigma1_vertices": dict(triple.sigma1_vertices),
            "sigma1_edges": dict(triple.sigma1_edges),
        }
        doc["cocycle"] = dict(triple.phi1)
    return doc


def save_document(triple: Triple, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(serialize_triple(triple), indent=2) + "\n", encoding="utf-8")
