import pathlib
import random
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from firecontain.embedding import build

DATA_DIR = pathlib.Path(__file__).parent / "data"


def random_connected_graph(n, p, seed):
    """Arbitrary (not necessarily planar) connected graph; rotations in
    sorted order, embedding unverified."""
    rng = random.Random(seed)
    while True:
        rot = [[] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    rot[i].append(j)
                    rot[j].append(i)
        try:
            return build(rot, embedding_verified=False)
        except Exception:
            continue


@pytest.fixture(scope="session")
def small_corpus():
    from firecontain.formats import parse_graph6
    data = (DATA_DIR / "small_connected.g6").read_bytes()
    return parse_graph6(data)
