"""
The correspondence over C(E⁰) ⋊ G, materialized as integer matrices.

build_model turns a finite triple into the coefficient algebra, the module
M = ⊕ A^e, its generators t_e and the operators V_g and Q_x. verify_relations
checks every identity the family {q_x, v_g, t_e} must satisfy as exact array
equalities. All entries are 0 or 1, so nothing here needs a tolerance.
"""

import itertools
import logging
from typing import Callable, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from ..models.correspondence_models import CoefficientModel, ModuleModel
from ..models.errors import RelationFailed, UnsupportedBackend
from ..models.report_models import RelationCheck, RelationReport
from ..models.triple_models import FiniteTriple, Triple
from .graph_tool import sink_vertices


logger = logging.getLogger(__name__)

Instance = Tuple[str, np.ndarray, np.ndarray]


def build_coefficients(triple: FiniteTriple) -> CoefficientModel:
    """q_x and v_g on the pairs (y, h): v_g(y, h) = (gy, gh), q_x(y, h) = [x = y](y, h)."""
    group = triple.group
    vertices = triple.graph.vertices
    pairs = list(itertools.product(vertices, group.elements))
    index = {pair: k for k, pair in enumerate(pairs)}
    size = len(pairs)

    q = {}
    for x in vertices:
        q[x] = np.zeros((size, size), dtype=np.int64)
        for h in group.elements:
            k = index[(x, h)]
            q[x][k, k] = 1

    v = {}
    for g in group.elements:
        v[g] = np.zeros((size, size), dtype=np.int64)
        for (y, h), k in index.items():
            v[g][index[(triple.act_vertex(g, y), group.mul(g, h))], k] = 1

    return CoefficientModel(vertices=tuple(vertices), elements=tuple(group.elements), index=index, q=q, v=v)


def build_model(triple: Triple) -> ModuleModel:
    """
    Materialize the module and its covariant pair.

    V_g has block (ge, e) equal to v_{φ(g,e)} q_{d(e)}; Q_x is block diagonal
    with q_{d(e)} in block (e, e) whenever r(e) = x. The triple is not
    validated here, so corrupted fixtures can still be inspected.

    Raises:
        UnsupportedBackend: the group is not finite
    """
    if not isinstance(triple, FiniteTriple) or not triple.is_finite():
        raise UnsupportedBackend("UnsupportedBackend: the correspondence model needs a finite group")

    graph = triple.graph
    coefficients = build_coefficients(triple)
    size = coefficients.dimension
    edges = tuple(graph.edges)
    position = {e: k for k, e in enumerate(edges)}
    total = len(edges) * size

    def at(e: str) -> slice:
        return slice(position[e] * size, (position[e] + 1) * size)

    t = {}
    for e in edges:
        t[e] = np.zeros((total, size), dtype=np.int64)
        t[e][at(e), :] = coefficients.q[graph.d(e)]

    V = {}
    for g in coefficients.elements:
        V[g] = np.zeros((total, total), dtype=np.int64)
        for e in edges:
            V[g][at(triple.act_edge(g, e)), at(e)] = coefficients.v[triple.phi(g, e)] @ coefficients.q[graph.d(e)]

    Q = {}
    for x in coefficients.vertices:
        Q[x] = np.zeros((total, total), dtype=np.int64)
        for e in graph.edges_into(x):
            Q[x][at(e), at(e)] = coefficients.q[graph.d(e)]

    identity = np.zeros((total, total), dtype=np.int64)
    for e in edges:
        identity[at(e), at(e)] = coefficients.q[graph.d(e)]

    logger.debug(f"Correspondence model for {triple.name or 'triple'}: A has dimension {size}, M has {total}")
    return ModuleModel(
        edges=edges,
        coefficients=coefficients,
        t=t,
        V=V,
        Q=Q,
        identity=identity,
        sinks=tuple(sink_vertices(graph)),
    )


def inner(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """⟨y, z⟩ = Σ_e y_e* z_e."""
    return y.T @ z


def rank_one(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Θ_{y,z}: ξ ↦ y⟨z, ξ⟩."""
    return y @ z.T


# Relations, in the order they are reported

def _cocycle_commutation(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    v = model.coefficients.v
    group = triple.group
    for g, e in itertools.product(model.coefficients.elements, model.edges):
        moved = model.t[triple.act_edge(g, e)] @ v[triple.phi(g, e)]
        yield f"g={g}, e={e}", model.V[g] @ model.t[e], moved
        # pulling the moved generator back must land on t_e again
        yield f"g={g}, e={e} (inverse)", model.V[group.inv(g)] @ moved, model.t[e]


def _unitary_representation(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    group = triple.group
    elements = model.coefficients.elements
    yield "V_1", model.V[group.identity], model.identity
    for g in elements:
        yield f"adjoint of V_{g}", model.V[g].T, model.V[group.inv(g)]
    for g, h in itertools.product(elements, repeat=2):
        yield f"V_{g} V_{h}", model.V[g] @ model.V[h], model.V[group.mul(g, h)]


def _inner_product_invariance(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    group = triple.group
    for g in model.coefficients.elements:
        for e, f in itertools.product(model.edges, repeat=2):
            te, tf = model.t[e], model.t[f]
            yield f"g={g}, e={e}, f={f}", inner(model.V[g] @ te, model.V[g] @ tf), inner(te, tf)
            yield (
                f"g={g}, e={e}, f={f} (adjoint)",
                inner(model.V[g] @ te, tf),
                inner(te, model.V[group.inv(g)] @ tf),
            )


def _coefficient_covariance(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    c = model.coefficients
    group = triple.group
    for g in c.elements:
        yield f"adjoint of v_{g}", c.v[g].T, c.v[group.inv(g)]
        for x in c.vertices:
            yield f"g={g}, x={x}", c.v[g] @ c.q[x], c.q[triple.act_vertex(g, x)] @ c.v[g]
    for g, h in itertools.product(c.elements, repeat=2):
        yield f"v_{g} v_{h}", c.v[g] @ c.v[h], c.v[group.mul(g, h)]


def _module_covariance(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    for g, x in itertools.product(model.coefficients.elements, model.coefficients.vertices):
        yield f"g={g}, x={x}", model.V[g] @ model.Q[x], model.Q[triple.act_vertex(g, x)] @ model.V[g]


def _left_action(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    graph = triple.graph
    v = model.coefficients.v
    for g, e, x in itertools.product(model.coefficients.elements, model.edges, model.coefficients.vertices):
        ge = triple.act_edge(g, e)
        expected = model.t[ge] @ v[triple.phi(g, e)] * int(graph.r(ge) == x)
        yield f"g={g}, e={e}, x={x}", model.Q[x] @ model.V[g] @ model.t[e], expected


def _source_projection(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    c = model.coefficients
    zero = np.zeros_like(c.unit)
    for e, f in itertools.product(model.edges, repeat=2):
        expected = c.q[triple.graph.d(e)] if e == f else zero
        yield f"e={e}, f={f}", inner(model.t[e], model.t[f]), expected


def _range_projection(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    for x in model.coefficients.vertices:
        total = sum((rank_one(model.t[e], model.t[e]) for e in triple.graph.edges_into(x)),
                    np.zeros_like(model.identity))
        yield f"x={x}", total, model.Q[x]


def _edge_partition(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    total = sum((rank_one(model.t[e], model.t[e]) for e in model.edges), np.zeros_like(model.identity))
    yield "sum over edges", total, model.identity


def _vertex_partition(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    vertices = model.coefficients.vertices
    yield "sum over vertices", sum(model.Q[x] for x in vertices), model.identity
    for x, y in itertools.product(vertices, repeat=2):
        expected = model.Q[x] if x == y else np.zeros_like(model.identity)
        yield f"Q_{x} Q_{y}", model.Q[x] @ model.Q[y], expected


def _projection_family(triple: FiniteTriple, model: ModuleModel) -> Iterator[Instance]:
    c = model.coefficients
    yield "sum over vertices", sum(c.q[x] for x in c.vertices), c.unit
    for x in c.vertices:
        yield f"q_{x} self-adjoint", c.q[x].T, c.q[x]
    for x, y in itertools.product(c.vertices, repeat=2):
        expected = c.q[x] if x == y else np.zeros_like(c.unit)
        yield f"q_{x} q_{y}", c.q[x] @ c.q[y], expected


RELATIONS: List[Tuple[str, Callable[[FiniteTriple, ModuleModel], Iterable[Instance]]]] = [
    ("cocycle_commutation", _cocycle_commutation),
    ("unitary_representation", _unitary_representation),
    ("inner_product_invariance", _inner_product_invariance),
    ("coefficient_covariance", _coefficient_covariance),
    ("module_covariance", _module_covariance),
    ("left_action", _left_action),
    ("source_projection", _source_projection),
    ("range_projection", _range_projection),
    ("edge_partition", _edge_partition),
    ("vertex_partition", _vertex_partition),
    ("projection_family", _projection_family),
]


def _run(name: str, instances: Iterable[Instance]) -> RelationCheck:
    count = 0
    for label, lhs, rhs in instances:
        count += 1
        if not np.array_equal(lhs, rhs):
            logger.debug(f"{name} fails at {label}")
            return RelationCheck(name=name, passed=False, witness=label, instances=count)
    return RelationCheck(name=name, passed=True, instances=count)


def verify_relations(triple: Triple, model: Optional[ModuleModel] = None) -> RelationReport:
    """
    Check every relation of the correspondence model.

    Args:
        triple: A finite triple
        model: A model built from the same triple (built here when omitted)

    Returns:
        RelationReport with one RelationCheck per relation, in a fixed order

    Raises:
        UnsupportedBackend: the group is not finite
    """
    model = model if model is not None else build_model(triple)
    checks = [_run(name, check(triple, model)) for name, check in RELATIONS]
    report = RelationReport(
        checks=checks,
        full_module=not model.sinks,
        sinks=list(model.sinks),
    )
    failed = report.get_failure_count()
    report.summary = (
        f"{len(checks) - failed}/{len(checks)} relations hold"
        + ("" if report.full_module else f"; sinks {', '.join(model.sinks)} so M is not known to be full")
    )
    logger.info(f"Correspondence relations: {report.summary}")
    return report


def require_relations(report: RelationReport) -> None:
    """
    Raises:
        RelationFailed: naming the first failing relation and its witness
    """
    failure = report.first_failure()
    if failure is not None:
        raise RelationFailed(failure.name, failure.witness)
