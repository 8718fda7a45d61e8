"""
Katsura triples built from integer matrix pairs (A, B).

Vertices are 1 … N. For every (i, j) with A[i][j] > 0 there are A[i][j]
edges e:i:j:n (0 ≤ n < A[i][j]) with range i and domain j. The integers fix
every vertex and act on edges by Euclidean division:

    m·B[i][j] + n = k̂·A[i][j] + n̂,  0 ≤ n̂ < A[i][j]
    m·e:i:j:n = e:i:j:n̂,  φ(m, e:i:j:n) = k̂

Besides construction this module holds the matrix-level criteria for the
structural properties and the K-groups K₀ = coker(I−A) ⊕ ker(I−B),
K₁ = coker(I−B) ⊕ ker(I−A).
"""

import logging
from fractions import Fraction
from math import prod
from pathlib import Path
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np

from ..models.errors import DocumentError, InvalidKatsuraData
from ..models.graph_models import FinitePath
from ..models.report_models import AbelianGroup, Decision, RelationCheck, Verdict, conjunction
from ..models.triple_models import IntTriple, KatsuraData
from .graph_tool import build_graph
from .ratio_tool import RatioSystem, hausdorff_by_ratios, slack_condition_at
from .snf_tool import cokernel, kernel


logger = logging.getLogger(__name__)


def edge_id(i: int, j: int, n: int) -> str:
    """1-based matrix indices, 0-based copy index."""
    return f"e:{i}:{j}:{n}"


def parse_edge_id(e: str) -> Tuple[int, int, int]:
    _, i, j, n = e.split(":")
    return int(i), int(j), int(n)


def validate_katsura(data: KatsuraData) -> None:
    """
    Raises:
        InvalidKatsuraData: shapes differ, A has a negative entry, some row of A
            is zero, or B is nonzero outside the support of A
    """
    n = len(data.A)
    if n == 0:
        raise InvalidKatsuraData("InvalidKatsuraData: A is empty")
    if len(data.B) != n or any(len(row) != n for row in data.A) or any(len(row) != n for row in data.B):
        raise InvalidKatsuraData(f"InvalidKatsuraData: A and B must both be {n}x{n}")
    for i in range(n):
        if any(a < 0 for a in data.A[i]):
            raise InvalidKatsuraData(f"InvalidKatsuraData: row {i + 1} of A has a negative entry")
        if not any(a > 0 for a in data.A[i]):
            raise InvalidKatsuraData(f"InvalidKatsuraData: row {i + 1} of A is zero")
        for j in range(n):
            if data.A[i][j] == 0 and data.B[i][j] != 0:
                raise InvalidKatsuraData(
                    f"InvalidKatsuraData: B[{i + 1}][{j + 1}] = {data.B[i][j]} but A[{i + 1}][{j + 1}] = 0"
                )


def katsura_step(data: KatsuraData, m: int, i: int, j: int, n: int) -> Tuple[int, int]:
    """(n̂, k̂) with m·B[i][j] + n = k̂·A[i][j] + n̂ (1-based i, j)."""
    quotient, remainder = divmod(m * data.B[i - 1][j - 1] + n, data.A[i - 1][j - 1])
    return remainder, quotient


def build_katsura(data: KatsuraData, name: str = "katsura") -> IntTriple:
    """
    The integer triple of (A, B).

    Raises:
        InvalidKatsuraData
    """
    validate_katsura(data)
    size = data.size
    vertices = [str(i + 1) for i in range(size)]
    edges = []
    sigma1_edges: Dict[str, str] = {}
    phi1: Dict[str, int] = {}
    for i0, j0 in data.omega():
        i, j = i0 + 1, j0 + 1
        for n in range(data.A[i0][j0]):
            e = edge_id(i, j, n)
            edges.append((e, str(i), str(j)))
            target, quotient = katsura_step(data, 1, i, j, n)
            sigma1_edges[e] = edge_id(i, j, target)
            phi1[e] = quotient
    graph = build_graph(vertices, edges, name=name)
    triple = IntTriple(
        graph=graph,
        sigma1_vertices={v: v for v in vertices},
        sigma1_edges=sigma1_edges,
        phi1=phi1,
        name=name,
        katsura=data,
    )
    logger.info(f"Built Katsura triple '{name}': {size} vertices, {len(edges)} edges")
    return triple


def _ratio(data: KatsuraData, e: str) -> Fraction:
    i, j, _ = parse_edge_id(e)
    return Fraction(data.B[i - 1][j - 1], data.A[i - 1][j - 1])


def fixed_by_int(triple: IntTriple, l: int, path: FinitePath) -> Tuple[bool, List[Fraction]]:
    """
    Whether l fixes α, through the quotients K_t = l·B_{α|t}/A_{α|t}.

    α is fixed iff every K_t is an integer, and then φ(l, α|t) = K_t. The
    trace stops at the first non-integral quotient.
    """
    data = triple.katsura
    trace: List[Fraction] = []
    current = Fraction(l)
    fixed = True
    for e in path.edges:
        current = current * _ratio(data, e)
        trace.append(current)
        if current.denominator != 1:
            fixed = False
            break
    h = l
    for k, e in enumerate(path.edges):
        moved = triple.act_edge(h, e) != e
        assert moved == (trace[k].denominator != 1), f"fixedness of {e} disagrees with the quotient trace"
        if moved:
            break
        assert triple.phi(h, e) == trace[k], f"restriction on {e} disagrees with the quotient trace"
        h = triple.phi(h, e)
    return fixed, trace


def is_pseudo_free_katsura(data: KatsuraData) -> Decision:
    """Pseudo free iff B[i][j] ≠ 0 on the whole support of A."""
    for i, j in data.omega():
        if data.B[i][j] == 0:
            return Decision.no(reason="B vanishes on the support of A", witness=f"({i + 1}, {j + 1})")
    return Decision.yes(reason="B is nonzero on the support of A")


def _adjacency(data: KatsuraData) -> nx.DiGraph:
    """Arrow i → j for every (i, j) in the support, i.e. from range to domain."""
    walk = nx.DiGraph()
    walk.add_nodes_from(range(1, data.size + 1))
    walk.add_edges_from((i + 1, j + 1) for i, j in data.omega())
    return walk


def is_irreducible(data: KatsuraData) -> bool:
    return nx.is_strongly_connected(_adjacency(data))


def is_minimal_katsura(data: KatsuraData) -> bool:
    """
    Exactly one strongly connected class of A carries a cycle.

    Every walk ends up circling in such a class, so a single one is reached
    from everywhere. Without zero columns this is irreducibility; a zero
    column (a vertex that is no edge's domain) can only start paths and
    does not spoil minimality.
    """
    walk = _adjacency(data)
    cyclic = [
        component for component in nx.strongly_connected_components(walk)
        if len(component) > 1 or walk.has_edge(next(iter(component)), next(iter(component)))
    ]
    return len(cyclic) == 1


def condition_l_katsura(data: KatsuraData) -> bool:
    """Every circuit has an entry: no cycle runs only through rows summing to 1."""
    simple = [i + 1 for i in range(data.size) if sum(data.A[i]) == 1]
    return nx.is_directed_acyclic_graph(_adjacency(data).subgraph(simple))


def hausdorff_katsura(data: KatsuraData, cap: int = 500) -> Decision:
    decision, _ = hausdorff_by_ratios(RatioSystem.from_matrices(data), cap)
    return decision


def essentially_principal_katsura(data: KatsuraData, cap: int = 500) -> Decision:
    """Condition (L) and, at every vertex, every cylinder fixer eventually dies."""
    if not condition_l_katsura(data):
        return Decision.no(reason="a circuit has no entry")
    system = RatioSystem.from_matrices(data)
    per_vertex = [slack_condition_at(system, str(i + 1), cap) for i in range(data.size)]
    verdict = conjunction(*per_vertex)
    for v, decision in zip(system.vertices, per_vertex):
        if decision.is_no:
            return Decision.no(reason=decision.reason, witness=v)
    if verdict == Verdict.UNKNOWN:
        return Decision.unknown(cap, reason="cycle enumeration capped")
    return Decision.yes(reason="every cylinder fixer is slack")


def sufficient_ep(data: KatsuraData, cap: int = 500) -> bool:
    """
    The contraction criterion: condition (L), and from every vertex some
    infinite path has ratios l·B/A tending to 0, namely by reaching a cycle
    with ratio product of modulus < 1 or an entry with B = 0.
    """
    if not condition_l_katsura(data):
        return False
    walk = _adjacency(data)
    zero_ranges = {i + 1 for i, j in data.omega() if data.B[i][j] == 0}
    contracting = set()
    for count, nodes in enumerate(nx.simple_cycles(walk)):
        if count >= cap:
            break
        pairs = zip(nodes, nodes[1:] + nodes[:1])
        product = prod((Fraction(data.B[u - 1][v - 1], data.A[u - 1][v - 1]) for u, v in pairs), start=Fraction(1))
        if abs(product) < 1:
            contracting.update(nodes)
    targets = zero_ranges | contracting
    for v in walk.nodes:
        if not ({v} | nx.descendants(walk, v)) & targets:
            return False
    return True


def classical_condition(data: KatsuraData) -> bool:
    """A irreducible, A[i][i] ≥ 2 and B[i][i] = 1 for every i."""
    return is_irreducible(data) and all(data.A[i][i] >= 2 and data.B[i][i] == 1 for i in range(data.size))


def simple_katsura(data: KatsuraData, cap: int = 500) -> Decision:
    """Under the Hausdorff property: minimal, condition (L) and the slack condition."""
    hausdorff = hausdorff_katsura(data, cap)
    if not hausdorff.is_yes:
        return Decision.unknown(None, reason="outside the Hausdorff hypothesis")
    if not is_minimal_katsura(data):
        return Decision.no(reason="A has more than one cyclic class")
    principal = essentially_principal_katsura(data, cap)
    if principal.is_yes:
        return Decision.yes(reason="Hausdorff, minimal and essentially principal")
    return principal


def specialized_verdicts(data: KatsuraData, cap: int = 500) -> Dict[str, str]:
    """Verdicts from the matrix criteria, keyed like the generic report."""
    return {
        "pseudo_free": is_pseudo_free_katsura(data).verdict.value,
        "hausdorff": hausdorff_katsura(data, cap).verdict.value,
        "minimal": "YES" if is_minimal_katsura(data) else "NO",
        "condition_l": "YES" if condition_l_katsura(data) else "NO",
        "essentially_principal": essentially_principal_katsura(data, cap).verdict.value,
        "simple": simple_katsura(data, cap).verdict.value,
    }


def generator_form(data: KatsuraData, i: int, j: int, n: int) -> Tuple[str, int]:
    """s_{i,j,n} for any integer n, written as s_e u_j^k with e = e:i:j:(n mod A[i][j])."""
    power, r = divmod(n, data.A[i - 1][j - 1])
    return edge_id(i, j, r), power


def defining_relations(triple: IntTriple, shifts: range = range(-3, 4)) -> List[RelationCheck]:
    """
    Check the generator relations of the Katsura algebra against the triple.

    Indices n of s_{i,j,n} are read modulo A[i][j] with the quotient carried
    by the unitary at j, so s_{i,j,n} u_j = s_{i,j,n+A} is index bookkeeping
    and u_i^m s_{i,j,n} = s_{i,j,n+mB} becomes m·e:i:j:n = e:i:j:n̂ with
    φ(m, e:i:j:n) = k̂. index_shift covers both for indices outside 0..A-1.
    """
    data = triple.katsura
    graph = triple.graph
    checks = []

    index = RelationCheck("index_shift", True)
    for e in graph.edges:
        i, j, r = parse_edge_id(e)
        a, b = data.A[i - 1][j - 1], data.B[i - 1][j - 1]
        for k in shifts:
            n = r + k * a
            edge, power = generator_form(data, i, j, n)
            index.instances += 1
            # s_{i,j,n} u_j = s_{i,j,n+A}
            absorbed = generator_form(data, i, j, n + a) == (edge, power + 1)
            # u_i^m s_{i,j,n} = s_{i,j,n+mB}, through the tables
            shifted = all(
                generator_form(data, i, j, n + m * b) == (triple.act_edge(m, edge), triple.phi(m, edge) + power)
                for m in shifts
            )
            if not (graph.is_edge(edge) and graph.d(edge) == str(j) and absorbed and shifted):
                index.passed = False
                index.witness = f"n={n}, edge {e}"
                break
        if not index.passed:
            break
    checks.append(index)

    unitary = RelationCheck("unitary_shift", True)
    for e in graph.edges:
        i, j, n = parse_edge_id(e)
        for m in shifts:
            unitary.instances += 1
            target, quotient = katsura_step(data, m, i, j, n)
            if triple.act_edge(m, e) != edge_id(i, j, target) or triple.phi(m, e) != quotient:
                unitary.passed = False
                unitary.witness = f"m={m}, edge {e}"
                break
        if not unitary.passed:
            break
    checks.append(unitary)

    source = RelationCheck("source_projection", True)
    for e in graph.edges:
        i, j, _ = parse_edge_id(e)
        source.instances += 1
        if graph.d(e) != str(j) or graph.r(e) != str(i):
            source.passed, source.witness = False, e
            break
    checks.append(source)

    partition = RelationCheck("range_partition", True)
    for i in range(data.size):
        partition.instances += 1
        if len(graph.edges_into(str(i + 1))) != sum(data.A[i]):
            partition.passed, partition.witness = False, f"vertex {i + 1}"
            break
    checks.append(partition)
    return checks


def k_theory(data: KatsuraData) -> Tuple[AbelianGroup, AbelianGroup]:
    """(K₀, K₁) = (coker(I−A) ⊕ ker(I−B), coker(I−B) ⊕ ker(I−A))."""
    validate_katsura(data)
    identity = np.eye(data.size, dtype=object)
    i_minus_a = identity - np.array(data.A, dtype=object)
    i_minus_b = identity - np.array(data.B, dtype=object)
    k0 = cokernel(i_minus_a).direct_sum(kernel(i_minus_b))
    k1 = cokernel(i_minus_b).direct_sum(kernel(i_minus_a))
    logger.debug(f"K0 = {k0}, K1 = {k1}")
    return k0, k1


def read_matrix(path: Path) -> List[List[int]]:
    """
    Whitespace-separated integer rows; blank lines and '#' comments are skipped.

    Raises:
        FileNotFoundError, DocumentError
    """
    path = Path(path)
    rows: List[List[int]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                rows.append([int(token) for token in text.split()])
            except ValueError:
                raise DocumentError(f"{path}:{number}", "expected whitespace-separated integers") from None
    if not rows:
        raise DocumentError(str(path), "no matrix rows")
    width = len(rows[0])
    for k, row in enumerate(rows):
        if len(row) != width:
            raise DocumentError(f"{path}[{k}]", f"row has {len(row)} entries, expected {width}")
    return rows


def load_katsura(a_path: Path, b_path: Path) -> KatsuraData:
    data = KatsuraData(A=read_matrix(a_path), B=read_matrix(b_path))
    validate_katsura(data)
    return data


def find_matrix_pairs(directory: Path) -> List[Tuple[str, Path, Path]]:
    """(name, A file, B file) for every NAME_A.txt with a matching NAME_B.txt."""
    directory = Path(directory)
    pairs = []
    for a_path in sorted(directory.glob("*_A.txt")):
        name = a_path.name[: -len("_A.txt")]
        b_path = directory / f"{name}_B.txt"
        if b_path.exists():
            pairs.append((name, a_path, b_path))
        else:
            logger.warning(f"No B matrix for {a_path.name}; skipping")
    return pairs
