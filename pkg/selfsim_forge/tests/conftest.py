"""
Shared fixtures: the named triples every test module works with.

    swap      ℤ/2 = {1, s} on one vertex x with two loops a, b swapped by s, φ = 1
    zswap2    ℤ/2 swapping two vertices u, v and their loops p, q
    triv2     trivial group on the complete graph with two vertices
    loop      ℤ acting on a single loop with φ(1, e) = 1
    od        the odometer, Katsura A = (2), B = (1)
    k15       A = [[2, 1], [1, 2]], B = I
    k16       A = B = (n)
    nh        A = [[2, 1], [0, 2]], B = 2I, not Hausdorff
"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

EXAMPLES_DIR = project_root / "examples"
MATRICES_DIR = EXAMPLES_DIR / "matrices"
GOLDEN_DIR = EXAMPLES_DIR / "golden"

FUZZ_CASES = 1000
FUZZ_SEED = 20240601


def load_example(name: str):
    from src.orchestration.document_loader import load_document

    return load_document(EXAMPLES_DIR / f"{name}.json")


def katsura(A, B, name: str = "katsura"):
    from src.models.triple_models import KatsuraData
    from src.tools.katsura_tool import build_katsura

    return build_katsura(KatsuraData(A=A, B=B), name=name)


@pytest.fixture
def examples_dir() -> Path:
    return EXAMPLES_DIR


@pytest.fixture
def matrices_dir() -> Path:
    return MATRICES_DIR


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture
def swap():
    return load_example("swap")


@pytest.fixture
def swap_broken(swap):
    """SWAP with φ(s, a) = s; not a cocycle, so it is built without validation."""
    return swap.with_cocycle("s", "a", "s")


@pytest.fixture
def zswap2():
    return load_example("zswap2")


@pytest.fixture
def triv2():
    return load_example("triv2")


@pytest.fixture
def loop():
    return load_example("loop")


@pytest.fixture
def od():
    return katsura([[2]], [[1]], name="od")


@pytest.fixture
def k15():
    return katsura([[2, 1], [1, 2]], [[1, 0], [0, 1]], name="k15")


@pytest.fixture(params=[2, 3, 5], ids=["n2", "n3", "n5"])
def k16(request):
    n = request.param
    return katsura([[n]], [[n]], name=f"k16_n{n}")


@pytest.fixture
def nh():
    return katsura([[2, 1], [0, 2]], [[2, 0], [0, 2]], name="nh")


@pytest.fixture
def rng():
    import random

    return random.Random(FUZZ_SEED)


class Sampler:
    """Random group elements and paths over a triple, driven by one seeded Random."""

    def __init__(self, rng):
        self.rng = rng

    def element(self, triple, spread: int = 30):
        if triple.is_finite():
            return self.rng.choice(triple.group.elements)
        return self.rng.randint(-spread, spread)

    def extend(self, triple, path, length: int):
        """path followed by `length` random edges."""
        from src.tools.graph_tool import edge_path

        for _ in range(length):
            e = self.rng.choice(triple.graph.edges_into(path.domain))
            path = path.concat(edge_path(triple.graph, e))
        return path

    def path(self, triple, max_length: int = 6, start=None):
        from src.models.graph_models import FinitePath

        start = start or self.rng.choice(triple.graph.vertices)
        return self.extend(triple, FinitePath.vertex(start), self.rng.randint(0, max_length))

    def infinite_path(self, triple, start=None, lead: int = 3):
        """A random walk that is closed up at its first repeated vertex."""
        from src.models.graph_models import EvPeriodicPath

        walk = self.path(triple, lead, start)
        seen = {walk.domain: walk.length}
        while True:
            walk = self.extend(triple, walk, 1)
            if walk.domain in seen:
                k = seen[walk.domain]
                return EvPeriodicPath.of(walk.prefix(k), walk.suffix_from(k))
            seen[walk.domain] = walk.length


@pytest.fixture
def sampler(rng):
    return Sampler(rng)
