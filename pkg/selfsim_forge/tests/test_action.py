"""
Action and cocycle tests.

Covers validation of the standing assumptions, the extension of the action
and the cocycle to finite and eventually periodic paths, the closed form of
the integer cocycle and orbit computations. The law suites run FUZZ_CASES
random instances over every fixture.
"""

import dataclasses

import pytest
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from conftest import FUZZ_CASES

TRIPLES = ["swap", "zswap2", "triv2", "loop", "od", "k15", "nh"]


class TestValidation:
    """Test validate_triple on good and corrupted triples."""

    @pytest.mark.parametrize("name", TRIPLES)
    def test_fixtures_are_valid(self, name, request):
        """Every fixture satisfies the standing assumptions."""
        from src.tools.action_tool import validate_triple

        validate_triple(request.getfixturevalue(name))

    def test_broken_cocycle(self, swap_broken):
        """φ(s, a) = s breaks φ(s·s, a) = φ(s, s·a)·φ(s, a)."""
        from src.models.errors import CocycleViolation
        from src.tools.action_tool import validate_triple

        with pytest.raises(CocycleViolation) as info:
            validate_triple(swap_broken)

        assert "CocycleViolation" in str(info.value)

    def test_vertex_condition(self, zswap2):
        """A restriction that fixes the vertices while g swaps them."""
        from src.models.errors import VertexConditionViolation
        from src.tools.action_tool import validate_triple

        bad = zswap2.with_cocycle("1", "p", "0").with_cocycle("1", "q", "0")

        with pytest.raises(VertexConditionViolation) as info:
            validate_triple(bad)

        assert info.value.g == "1"

    def test_not_automorphism(self, swap):
        """s must permute the edges."""
        from src.models.errors import NotAutomorphism
        from src.tools.action_tool import validate_triple

        edge_perm = {"1": {"a": "a", "b": "b"}, "s": {"a": "a", "b": "a"}}
        bad = dataclasses.replace(swap, edge_perm=edge_perm)

        with pytest.raises(NotAutomorphism):
            validate_triple(bad)

    def test_not_homomorphism(self, zswap2):
        """The identity must act trivially."""
        from src.models.errors import NotHomomorphism
        from src.tools.action_tool import validate_triple

        vertex_perm = {"0": {"u": "v", "v": "u"}, "1": {"u": "v", "v": "u"}}
        edge_perm = {"0": {"p": "q", "q": "p"}, "1": {"p": "q", "q": "p"}}
        bad = dataclasses.replace(zswap2, vertex_perm=vertex_perm, edge_perm=edge_perm)

        with pytest.raises(NotHomomorphism):
            validate_triple(bad)

    def test_group_axioms(self):
        """A table without inverses is not a group."""
        from src.models.errors import GroupAxiomViolation
        from src.models.group_models import FiniteGroup

        rows = {"1": {"1": "1", "s": "s"}, "s": {"1": "s", "s": "s"}}
        group = FiniteGroup.from_rows(["1", "s"], "1", rows)

        with pytest.raises(GroupAxiomViolation):
            group.validate()

    def test_cyclic_group(self):
        """ℤ/3 built by FiniteGroup.cyclic."""
        from src.models.group_models import FiniteGroup

        group = FiniteGroup.cyclic(3)
        group.validate()

        assert group.mul("2", "2") == "1"
        assert group.inv("1") == "2"
        assert group.order() == 3


class TestPathAction:
    """Test the Mealy machine on concrete paths."""

    def test_swap_moves_first_edge_only(self, swap):
        """φ = 1, so s swaps the first letter and stops."""
        from src.tools.action_tool import act_and_cocycle
        from src.tools.graph_tool import make_path

        image, restriction = act_and_cocycle(swap, "s", make_path(swap.graph, ["a", "a", "b"]))

        assert str(image) == "b a b"
        assert restriction == "1"

    def test_vertex_path(self, zswap2):
        """(g·x, g) on a vertex."""
        from src.models.graph_models import FinitePath
        from src.tools.action_tool import act_and_cocycle

        image, restriction = act_and_cocycle(zswap2, "1", FinitePath.vertex("u"))

        assert image == FinitePath.vertex("v")
        assert restriction == "1"

    def test_odometer_adds_with_carry(self, od):
        """1 + (1 1 0) = (0 0 1) in binary, read least significant first."""
        from src.tools.action_tool import act_and_cocycle
        from src.tools.graph_tool import make_path

        path = make_path(od.graph, ["e:1:1:1", "e:1:1:1", "e:1:1:0"])
        image, restriction = act_and_cocycle(od, 1, path)

        assert list(image.edges) == ["e:1:1:0", "e:1:1:0", "e:1:1:1"]
        assert restriction == 0

    def test_odometer_generator_data(self, od):
        """1·e₀ = e₁ with φ = 0, 1·e₁ = e₀ with φ = 1."""
        assert od.act_edge(1, "e:1:1:0") == "e:1:1:1"
        assert od.phi(1, "e:1:1:0") == 0
        assert od.act_edge(1, "e:1:1:1") == "e:1:1:0"
        assert od.phi(1, "e:1:1:1") == 1

    def test_act_infinite_odometer(self, od):
        """1 + e₁^∞ = e₀^∞: the carry never stops."""
        from src.tools.literal_parser_tool import parse_infinite_path
        from src.tools.action_tool import act_infinite

        xi = parse_infinite_path(od, "|e:1:1:1")
        image = act_infinite(od, 1, xi)

        assert image == parse_infinite_path(od, "|e:1:1:0")

    def test_act_infinite_matches_truncations(self, sampler):
        """(g·ξ)|ₙ = g·(ξ|ₙ) on the odometer and on SWAP."""
        from conftest import katsura, load_example
        from src.tools.action_tool import act, act_infinite

        for triple in (katsura([[2]], [[1]]), load_example("swap")):
            for _ in range(100):
                g = sampler.element(triple)
                xi = sampler.infinite_path(triple)
                image = act_infinite(triple, g, xi)
                assert image.truncate(12) == act(triple, g, xi.truncate(12))

    def test_restriction_stream_bound(self, od):
        """A budget of zero blocks cannot find a repeat."""
        from src.models.errors import NotEventuallyPeriodicWithinBound
        from src.tools.action_tool import restriction_states
        from src.tools.literal_parser_tool import parse_infinite_path

        with pytest.raises(NotEventuallyPeriodicWithinBound):
            restriction_states(od, 5, parse_infinite_path(od, "|e:1:1:0"), bound=0)

    def test_restriction_stream(self, od):
        """Φ(−1, e₀^∞) is constantly −1."""
        from src.tools.action_tool import restriction_states
        from src.tools.literal_parser_tool import parse_infinite_path

        transient, period = restriction_states(od, -1, parse_infinite_path(od, "|e:1:1:0"))

        assert transient == []
        assert period == [-1]


class TestCocycleLaws:
    """Randomized laws of the action and the cocycle on paths."""

    @pytest.mark.parametrize("name", TRIPLES)
    def test_action_laws(self, name, request, sampler):
        """(gh)α = g(hα), φ(gh, α) = φ(g, hα)φ(h, α) and the identity acts trivially."""
        from src.tools.action_tool import act_and_cocycle

        triple = request.getfixturevalue(name)
        group = triple.group
        for _ in range(FUZZ_CASES):
            g, h = sampler.element(triple), sampler.element(triple)
            alpha = sampler.path(triple)
            h_alpha, phi_h = act_and_cocycle(triple, h, alpha)
            g_h_alpha, phi_g = act_and_cocycle(triple, g, h_alpha)
            gh_alpha, phi_gh = act_and_cocycle(triple, group.mul(g, h), alpha)
            assert gh_alpha == g_h_alpha
            assert phi_gh == group.mul(phi_g, phi_h)
            assert act_and_cocycle(triple, group.identity, alpha) == (alpha, group.identity)

    @pytest.mark.parametrize("name", TRIPLES)
    def test_concatenation_laws(self, name, request, sampler):
        """g(αβ) = (gα)(φ(g, α)β) and φ(g, αβ) = φ(φ(g, α), β)."""
        from src.tools.action_tool import act_and_cocycle

        triple = request.getfixturevalue(name)
        for _ in range(FUZZ_CASES):
            g = sampler.element(triple)
            alpha = sampler.path(triple, 4)
            beta = sampler.path(triple, 4, start=alpha.domain)
            moved_alpha, restriction = act_and_cocycle(triple, g, alpha)
            moved_beta, final = act_and_cocycle(triple, restriction, beta)
            whole, whole_restriction = act_and_cocycle(triple, g, alpha.concat(beta))
            assert whole == moved_alpha.concat(moved_beta)
            assert whole_restriction == final

    @pytest.mark.parametrize("name", TRIPLES)
    def test_length_endpoints_and_vertex_condition(self, name, request, sampler):
        """|gα| = |α|, r(gα) = g·r(α), d(gα) = g·d(α) and φ(g, α)·x = g·x."""
        from src.tools.action_tool import act_and_cocycle

        triple = request.getfixturevalue(name)
        vertices = triple.graph.vertices
        for _ in range(FUZZ_CASES):
            g = sampler.element(triple)
            alpha = sampler.path(triple)
            image, restriction = act_and_cocycle(triple, g, alpha)
            assert image.length == alpha.length
            assert image.range == triple.act_vertex(g, alpha.range)
            assert image.domain == triple.act_vertex(g, alpha.domain)
            for x in vertices:
                assert triple.act_vertex(restriction, x) == triple.act_vertex(g, x)

    @pytest.mark.parametrize("name", ["loop", "od", "k15", "nh"])
    def test_integer_closed_form(self, name, request):
        """φ(m, e) from the closed form agrees with φ(m + 1, e) = φ(1, m·e) + φ(m, e)."""
        triple = request.getfixturevalue(name)
        for e in triple.graph.edges:
            value = 0
            for m in range(0, 40):
                assert triple.phi(m, e) == value
                value = triple.phi(1, triple.act_edge(m, e)) + value
            value = 0
            for m in range(0, -40, -1):
                assert triple.phi(m, e) == value
                # φ(m − 1, e) = φ(−1, m·e) + φ(m, e)
                value = triple.phi(-1, triple.act_edge(m, e)) + value

    def test_orbit_sum_and_ratio(self, od, k15):
        """L_e and S_e for the odometer and K15."""
        from fractions import Fraction

        assert od.orbit_length("e:1:1:0") == 2
        assert od.orbit_sum("e:1:1:0") == 1
        assert od.ratio("e:1:1:1") == Fraction(1, 2)
        assert k15.orbit_length("e:1:2:0") == 1
        assert k15.orbit_sum("e:1:2:0") == 0
        assert not k15.is_live("e:1:2:0")


class TestOrbits:
    """Test vertex and edge orbits."""

    def test_swap_orbits(self, swap):
        """s swaps the two loops."""
        from src.tools.action_tool import edge_orbits, vertex_orbits

        assert vertex_orbits(swap) == [["x"]]
        assert edge_orbits(swap) == [["a", "b"]]

    def test_zswap2_orbits(self, zswap2):
        """Both vertices and both loops form one orbit each."""
        from src.tools.action_tool import edge_orbits, same_orbit, vertex_orbits

        assert vertex_orbits(zswap2) == [["u", "v"]]
        assert edge_orbits(zswap2) == [["p", "q"]]
        assert same_orbit(zswap2, "u", "v")

    def test_k15_orbits(self, k15):
        """ℤ fixes the vertices; the loops at each vertex form one orbit."""
        from src.tools.action_tool import edge_orbits, same_orbit, vertex_orbits

        assert vertex_orbits(k15) == [["1"], ["2"]]
        assert ["e:1:1:0", "e:1:1:1"] in edge_orbits(k15)
        assert ["e:1:2:0"] in edge_orbits(k15)
        assert not same_orbit(k15, "1", "2")
