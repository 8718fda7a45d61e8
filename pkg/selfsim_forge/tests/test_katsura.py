"""
Katsura triple tests.

Covers admissibility checks, the construction of O_{A,B} triples, the
matrix-level criteria and their agreement with the generic analysis, the
Smith normal form behind the K-groups, and reading matrix files.
"""

import pytest
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from conftest import FUZZ_SEED


def data(A, B):
    from src.models.triple_models import KatsuraData

    return KatsuraData(A=A, B=B)


def random_pair(rng, max_size: int = 3, max_entry: int = 3):
    """A random admissible pair: every row of A nonzero, B supported on A."""
    n = rng.randint(1, max_size)
    A = []
    for _ in range(n):
        row = [rng.randint(0, max_entry) for _ in range(n)]
        if not any(row):
            row[rng.randrange(n)] = rng.randint(1, max_entry)
        A.append(row)
    B = [[rng.randint(-2, max_entry) if a else 0 for a in row] for row in A]
    return data(A, B)


class TestValidation:
    """Test validate_katsura."""

    @pytest.mark.parametrize("A,B,fragment", [
        ([], [], "empty"),
        ([[1, 0], [0, 1]], [[1]], "2x2"),
        ([[2, -1], [1, 1]], [[1, 0], [1, 1]], "negative"),
        ([[1, 1], [0, 0]], [[1, 1], [0, 0]], "zero"),
        ([[1, 0], [0, 1]], [[1, 5], [0, 1]], "B[1][2]"),
    ])
    def test_rejected(self, A, B, fragment):
        """Each admissibility violation is named."""
        from src.models.errors import InvalidKatsuraData
        from src.tools.katsura_tool import validate_katsura

        with pytest.raises(InvalidKatsuraData) as info:
            validate_katsura(data(A, B))

        assert fragment in str(info.value)

    def test_zero_b_is_allowed(self):
        """B may vanish on the support of A; those edges kill restrictions."""
        from src.tools.katsura_tool import validate_katsura

        validate_katsura(data([[2, 1], [0, 2]], [[2, 0], [0, 2]]))


class TestConstruction:
    """Test build_katsura and the edge naming."""

    def test_edge_ids(self):
        """e:i:j:n round trips through parse_edge_id."""
        from src.tools.katsura_tool import edge_id, parse_edge_id

        assert edge_id(1, 2, 0) == "e:1:2:0"
        assert parse_edge_id("e:3:1:7") == (3, 1, 7)

    def test_odometer_graph(self, od):
        """A = (2) gives two loops at vertex 1."""
        assert od.graph.vertices == ("1",)
        assert od.graph.edges == ("e:1:1:0", "e:1:1:1")
        assert od.katsura.A == [[2]]

    def test_range_and_domain(self, k15):
        """e:i:j:n has range i and domain j."""
        assert k15.graph.r("e:1:2:0") == "1"
        assert k15.graph.d("e:1:2:0") == "2"
        assert len(k15.graph.edges_into("1")) == 3

    def test_katsura_step(self):
        """m·B + n = k̂·A + n̂."""
        from src.tools.katsura_tool import katsura_step

        od = data([[2]], [[1]])

        assert katsura_step(od, 1, 1, 1, 1) == (0, 1)
        assert katsura_step(od, 1, 1, 1, 0) == (1, 0)
        assert katsura_step(od, -1, 1, 1, 0) == (1, -1)
        assert katsura_step(od, 5, 1, 1, 1) == (0, 3)

    def test_action_follows_step(self, nh):
        """act_edge and phi agree with katsura_step for a spread of integers."""
        from src.tools.katsura_tool import edge_id, katsura_step, parse_edge_id

        for e in nh.graph.edges:
            i, j, n = parse_edge_id(e)
            for m in range(-12, 13):
                target, quotient = katsura_step(nh.katsura, m, i, j, n)
                assert nh.act_edge(m, e) == edge_id(i, j, target)
                assert nh.phi(m, e) == quotient

    def test_fixed_by_int(self, od):
        """4 halves twice along e₀ e₀ and then stops being an integer."""
        from fractions import Fraction
        from src.tools.graph_tool import make_path
        from src.tools.katsura_tool import fixed_by_int

        fixed, trace = fixed_by_int(od, 4, make_path(od.graph, ["e:1:1:0", "e:1:1:0"]))
        assert fixed
        assert trace == [2, 1]

        fixed, trace = fixed_by_int(od, 4, make_path(od.graph, ["e:1:1:0"] * 3))
        assert not fixed
        assert trace[-1] == Fraction(1, 2)

    def test_defining_relations(self, od, k15, nh):
        """Every generator relation holds on the built triples."""
        from src.tools.katsura_tool import defining_relations

        for triple in (od, k15, nh):
            checks = defining_relations(triple)
            assert [c.name for c in checks] == [
                "index_shift", "unitary_shift", "source_projection", "range_partition",
            ]
            assert all(c.passed for c in checks)
            assert all(c.instances > 0 for c in checks)

    def test_generator_form(self):
        """s_{1,1,n} for A = (2): the quotient moves onto the unitary."""
        from src.tools.katsura_tool import generator_form

        od = data([[2]], [[1]])

        assert generator_form(od, 1, 1, 1) == ("e:1:1:1", 0)
        assert generator_form(od, 1, 1, 5) == ("e:1:1:1", 2)
        assert generator_form(od, 1, 1, -1) == ("e:1:1:1", -1)
        assert generator_form(od, 1, 1, 3) == ("e:1:1:1", generator_form(od, 1, 1, 1)[1] + 1)

    def test_wrong_cocycle_breaks_index_shift(self, od):
        """With φ(1, ·) = 0 the carry from e:1:1:1 is lost."""
        import dataclasses
        from src.tools.katsura_tool import defining_relations

        broken = dataclasses.replace(od, phi1={"e:1:1:0": 0, "e:1:1:1": 0})
        checks = {c.name: c for c in defining_relations(broken)}

        assert not checks["index_shift"].passed
        assert "edge e:1:1:" in checks["index_shift"].witness
        assert not checks["unitary_shift"].passed
        assert checks["source_projection"].passed


class TestMatrixCriteria:
    """Test the criteria read off A and B directly."""

    def test_pseudo_free(self):
        """Zero entries of B on the support of A break pseudo freeness."""
        from src.tools.katsura_tool import is_pseudo_free_katsura

        assert is_pseudo_free_katsura(data([[2]], [[1]])).is_yes
        decision = is_pseudo_free_katsura(data([[2, 1], [1, 2]], [[1, 0], [0, 1]]))
        assert decision.is_no
        assert decision.witness == "(1, 2)"

    def test_irreducible_and_condition_l(self):
        """Irreducibility is strong connectivity; a cycle of rows summing to 1 has no entry."""
        from src.tools.katsura_tool import condition_l_katsura, is_irreducible

        assert is_irreducible(data([[2, 1], [1, 2]], [[1, 0], [0, 1]]))
        assert not is_irreducible(data([[2, 1], [0, 2]], [[2, 0], [0, 2]]))
        assert not condition_l_katsura(data([[1]], [[1]]))
        assert condition_l_katsura(data([[0, 1], [1, 1]], [[0, 1], [1, 1]]))

    def test_minimality_with_a_zero_column(self):
        """Vertex 2 is no edge's domain; the path space is still minimal though A is reducible."""
        from src.orchestration.pipeline import analyze_katsura
        from src.tools.katsura_tool import is_irreducible, is_minimal_katsura

        pair = data([[1, 0], [1, 0]], [[1, 0], [1, 0]])
        _, report = analyze_katsura(pair, name="zero_column")

        assert not is_irreducible(pair)
        assert is_minimal_katsura(pair)
        assert report.weakly_g_transitive
        assert not is_minimal_katsura(data([[2, 1], [0, 2]], [[2, 0], [0, 2]]))

    def test_classical_condition(self):
        """A irreducible with A_ii ≥ 2 and B_ii = 1."""
        from src.tools.katsura_tool import classical_condition

        assert classical_condition(data([[2]], [[1]]))
        assert classical_condition(data([[2, 1], [1, 2]], [[1, 0], [0, 1]]))
        assert not classical_condition(data([[3]], [[3]]))
        assert not classical_condition(data([[2, 1], [0, 2]], [[2, 0], [0, 2]]))

    def test_sufficient_ep(self):
        """Contracting cycles or zero entries reachable from every vertex."""
        from src.tools.katsura_tool import sufficient_ep

        assert sufficient_ep(data([[2]], [[1]]))
        assert sufficient_ep(data([[2, 1], [1, 2]], [[1, 0], [0, 1]]))
        assert not sufficient_ep(data([[3]], [[3]]))

    def test_specialized_verdicts(self):
        """The matrix verdicts for the odometer and K16."""
        from src.tools.katsura_tool import specialized_verdicts

        od = specialized_verdicts(data([[2]], [[1]]))
        assert od == {
            "pseudo_free": "YES",
            "hausdorff": "YES",
            "minimal": "YES",
            "condition_l": "YES",
            "essentially_principal": "YES",
            "simple": "YES",
        }
        k16 = specialized_verdicts(data([[2]], [[2]]))
        assert k16["essentially_principal"] == "NO"
        assert k16["simple"] == "NO"

    def test_nh_simplicity_is_open(self):
        """Outside the Hausdorff hypothesis the matrix criterion does not decide."""
        from src.tools.katsura_tool import hausdorff_katsura, simple_katsura

        nh = data([[2, 1], [0, 2]], [[2, 0], [0, 2]])

        assert hausdorff_katsura(nh).is_no
        assert simple_katsura(nh).is_unknown

    def test_essential_principality(self):
        """K15 passes; an entryless loop at vertex 2 fails before any fixer is examined."""
        from src.tools.katsura_tool import essentially_principal_katsura

        k15 = data([[2, 1], [1, 2]], [[1, 0], [0, 1]])
        die = data([[1, 1], [0, 1]], [[0, 0], [0, 1]])

        assert essentially_principal_katsura(k15).is_yes
        decision = essentially_principal_katsura(die)
        assert decision.is_no
        assert decision.reason == "a circuit has no entry"


class TestKTheory:
    """Test k_theory and the Smith normal form."""

    def test_named_examples(self):
        """Odometer ℤ/ℤ, K15 ℤ³/ℤ³, K16 with n = 3 gives C2/C2."""
        from src.tools.katsura_tool import k_theory

        k0, k1 = k_theory(data([[2]], [[1]]))
        assert (k0.free_rank, k0.torsion, k1.free_rank, k1.torsion) == (1, [], 1, [])

        k0, k1 = k_theory(data([[2, 1], [1, 2]], [[1, 0], [0, 1]]))
        assert (k0.free_rank, k1.free_rank) == (3, 3)

        k0, k1 = k_theory(data([[3]], [[3]]))
        assert (k0.free_rank, k0.torsion) == (0, [2])
        assert str(k1) == "C2"

        k0, k1 = k_theory(data([[2]], [[2]]))
        assert str(k0) == "trivial"

    def test_nh_is_trivial(self):
        """I − A is unimodular and I − B = −I."""
        from src.tools.katsura_tool import k_theory

        k0, k1 = k_theory(data([[2, 1], [0, 2]], [[2, 0], [0, 2]]))

        assert str(k0) == "trivial"
        assert str(k1) == "trivial"

    def test_exgcd(self):
        """A determinant-one matrix sending (a, b) to (gcd, 0)."""
        import numpy as np
        from src.tools.snf_tool import exgcd

        for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (3, 9), (-5, -15)]:
            M = exgcd(a, b)
            image = M.dot(np.array([a, b], dtype=object))
            assert abs(image[0]) == np.gcd(a, b)
            assert image[1] == 0
            assert M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] == 1

    def test_smith_form_matches_minors(self, rng):
        """d₁⋯d_k is the gcd of the k×k minors, computed with sympy."""
        from itertools import combinations
        from math import gcd

        import numpy as np
        from sympy import Matrix
        from src.tools.snf_tool import invariant_factors, is_divisibility_chain, smith_normal_form

        for _ in range(100):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            M = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
            U, S, V = smith_normal_form(M)
            assert (U.dot(np.array(M, dtype=object)).dot(V) == S).all()
            ours = invariant_factors(M)
            assert is_divisibility_chain(ours)
            whole = Matrix(M)
            running = 1
            for k in range(1, min(rows, cols) + 1):
                minors = 0
                for r in combinations(range(rows), k):
                    for c in combinations(range(cols), k):
                        minors = gcd(minors, int(whole.extract(list(r), list(c)).det()))
                running *= ours[k - 1]
                assert running == minors

    def test_divisibility_chain(self):
        """Zeros may only come last."""
        from src.tools.snf_tool import is_divisibility_chain

        assert is_divisibility_chain([1, 2, 6, 0])
        assert not is_divisibility_chain([2, 3])
        assert not is_divisibility_chain([0, 1])

    def test_cokernel_and_kernel(self):
        """ℤ² / ⟨(2, 0), (0, 0)⟩ = ℤ ⊕ C2, and the kernel has rank 1."""
        from src.tools.snf_tool import cokernel, kernel

        group = cokernel([[2, 0], [0, 0]])

        assert group.free_rank == 1
        assert group.torsion == [2]
        assert kernel([[2, 0], [0, 0]]).free_rank == 1


class TestAgreement:
    """Matrix criteria against the generic analysis."""

    @pytest.mark.parametrize("name", ["od", "k15", "k16_n2", "k16_n3", "nh"])
    def test_named_pairs(self, name, matrices_dir):
        """No decided matrix verdict contradicts the generic one."""
        from src.orchestration.pipeline import analyze_katsura_files

        _, report = analyze_katsura_files(matrices_dir / f"{name}_A.txt", matrices_dir / f"{name}_B.txt")

        assert report.katsura.disagreements == []

    def test_random_pairs(self):
        """50 random pairs up to 3×3 with entries up to 3."""
        import random
        from src.orchestration.pipeline import analyze_katsura

        rng = random.Random(FUZZ_SEED)
        for k in range(50):
            pair = random_pair(rng)
            _, report = analyze_katsura(pair, name=f"random{k}")
            assert report.katsura.disagreements == [], f"A={pair.A} B={pair.B}"

    def test_odometer_note(self):
        """K-groups, classical condition and specialized verdicts land in the note."""
        from src.orchestration.pipeline import analyze_katsura

        triple, report = analyze_katsura(data([[2]], [[1]]), name="od")

        note = report.katsura
        assert triple.name == "od"
        assert note.classical_condition
        assert note.sufficient_ep
        assert note.k0.free_rank == 1
        assert note.specialized["simple"] == "YES"
        assert report.to_dict()["katsura"]["K0_text"] == "Z"

    def test_compare_with_generic_flags_contradictions(self, od):
        """A made-up NO against a decided YES is reported."""
        from src.orchestration.pipeline import analyze, compare_with_generic

        report = analyze(od)

        assert compare_with_generic({"simple": "NO", "minimal": "YES"}, report) == ["simple"]
        assert compare_with_generic({"hausdorff": "UNKNOWN"}, report) == []


SAMPLED_ELEMENTS = [g for k in range(1, 7) for g in (k, -k)]


def check_against_state_search(pair, bound: int = 2000):
    """Compare the matrix verdicts for `pair` with per-element state searches."""
    from src.models.report_models import MinFixedKind
    from src.tools.fixed_path_tool import minimal_strongly_fixed_paths
    from src.tools.freeness_tool import fixes_cylinder, is_hausdorff, is_slack
    from src.tools.katsura_tool import build_katsura, hausdorff_katsura
    from src.tools.ratio_tool import RatioSystem, slack_condition_at

    triple = build_katsura(pair)
    label = f"A={pair.A} B={pair.B}"

    hausdorff = hausdorff_katsura(pair)
    if hausdorff.is_yes:
        for g in SAMPLED_ELEMENTS:
            found = minimal_strongly_fixed_paths(triple, g, bound)
            assert found.kind != MinFixedKind.INFINITE, f"{label}: M_{g} infinite"
    elif hausdorff.is_no:
        decision, witness = is_hausdorff(triple)
        assert not decision.is_yes, label
        if witness is not None:
            found = minimal_strongly_fixed_paths(triple, witness.g, bound)
            assert found.kind != MinFixedKind.FINITE, f"{label}: M_{witness.g} searched finite"

    system = RatioSystem.from_matrices(pair)
    for x in triple.graph.vertices:
        if not slack_condition_at(system, x).is_yes:
            continue
        for g in SAMPLED_ELEMENTS:
            if fixes_cylinder(triple, g, x, bound).is_yes:
                decision, _ = is_slack(triple, g, x, bound)
                assert not decision.is_no, f"{label}: {g} fixes Z({x}) but is not slack"


class TestStateSearchAgreement:
    """Ratio verdicts against searches that only follow restrictions."""

    @pytest.mark.parametrize("name", ["od", "k15", "k16_n2", "k16_n3", "nh"])
    def test_named_pairs(self, name, matrices_dir):
        from src.tools.katsura_tool import load_katsura

        pair = load_katsura(matrices_dir / f"{name}_A.txt", matrices_dir / f"{name}_B.txt")

        check_against_state_search(pair)

    def test_random_pairs(self):
        """The same 50 random pairs as the generic agreement check."""
        import random

        rng = random.Random(FUZZ_SEED)
        for _ in range(50):
            check_against_state_search(random_pair(rng))

    def test_k16_fixer_is_not_slack(self):
        """1 fixes Z(1) for A = B = (2) but never reaches the identity."""
        from src.tools.freeness_tool import fixes_cylinder, is_slack
        from src.tools.katsura_tool import build_katsura

        pair = data([[2]], [[2]])
        triple = build_katsura(pair)

        assert fixes_cylinder(triple, 1, "1").is_yes
        decision, n = is_slack(triple, 1, "1")
        assert decision.is_no
        assert n is None

    def test_dying_fixer_is_slack(self):
        """Every path out of vertex 1 is killed after one edge."""
        from src.tools.freeness_tool import is_slack
        from src.tools.katsura_tool import build_katsura

        triple = build_katsura(data([[1, 1], [0, 1]], [[0, 0], [0, 1]]))

        decision, n = is_slack(triple, 3, "1")
        assert decision.is_yes
        assert n == 1


class TestMatrixFiles:
    """Test read_matrix, load_katsura and find_matrix_pairs."""

    def test_comments_and_blank_lines(self, tmp_path):
        """'#' starts a comment; blank lines are skipped."""
        from src.tools.katsura_tool import read_matrix

        path = tmp_path / "m_A.txt"
        path.write_text("# header\n2 1\n\n1 2  # second row\n")

        assert read_matrix(path) == [[2, 1], [1, 2]]

    @pytest.mark.parametrize("text", ["1 x\n", "1 2\n3\n", "# nothing\n\n"])
    def test_malformed(self, tmp_path, text):
        """Non-integers, ragged rows and empty files are DocumentErrors."""
        from src.models.errors import DocumentError
        from src.tools.katsura_tool import read_matrix

        path = tmp_path / "bad_A.txt"
        path.write_text(text)

        with pytest.raises(DocumentError):
            read_matrix(path)

    def test_missing_file(self, tmp_path):
        """Missing files propagate as FileNotFoundError."""
        from src.tools.katsura_tool import read_matrix

        with pytest.raises(FileNotFoundError):
            read_matrix(tmp_path / "absent_A.txt")

    def test_inadmissible_pair(self, tmp_path):
        """load_katsura validates the pair."""
        from src.models.errors import InvalidKatsuraData
        from src.tools.katsura_tool import load_katsura

        (tmp_path / "x_A.txt").write_text("0\n")
        (tmp_path / "x_B.txt").write_text("0\n")

        with pytest.raises(InvalidKatsuraData):
            load_katsura(tmp_path / "x_A.txt", tmp_path / "x_B.txt")

    def test_find_pairs(self, matrices_dir):
        """Every shipped A file has its B file."""
        from src.tools.katsura_tool import find_matrix_pairs

        names = [name for name, _, _ in find_matrix_pairs(matrices_dir)]

        assert names == ["k15", "k16_n2", "k16_n3", "k16_n5", "nh", "od"]

    def test_unpaired_file_is_skipped(self, tmp_path):
        """An A file without B is ignored."""
        from src.tools.katsura_tool import find_matrix_pairs

        (tmp_path / "lonely_A.txt").write_text("2\n")
        (tmp_path / "pair_A.txt").write_text("2\n")
        (tmp_path / "pair_B.txt").write_text("1\n")

        assert [name for name, _, _ in find_matrix_pairs(tmp_path)] == ["pair"]

    def test_directory_analysis(self, matrices_dir):
        """One report per pair, in name order."""
        from src.orchestration.pipeline import analyze_katsura_directory

        results = analyze_katsura_directory(matrices_dir)

        assert [name for name, _ in results] == ["k15", "k16_n2", "k16_n3", "k16_n5", "nh", "od"]
        assert all(report.katsura is not None for _, report in results)
