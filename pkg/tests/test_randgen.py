from firecontain import randgen
from firecontain.families import cycle


def test_random_triangulation():
    for seed in range(5):
        g = randgen.random_triangulation(12, seed)
        assert g.n == 12
        assert all(f.degree == 3 for f in g.faces())
        assert g.num_edges == 3 * g.n - 6


def test_random_tf_maximal():
    for seed in range(5):
        g = randgen.random_tf_maximal(14, seed)
        assert g.n == 14
        assert g.is_triangle_free()
        assert all(f.degree == 4 for f in g.faces())
        # quadrangulation: m = 2n - 4
        assert g.num_edges == 2 * g.n - 4


def test_determinism():
    a = randgen.random_triangulation(15, 7)
    b = randgen.random_triangulation(15, 7)
    assert a.rotations == b.rotations
    a = randgen.random_tf_maximal(15, 7)
    b = randgen.random_tf_maximal(15, 7)
    assert a.rotations == b.rotations


def test_subdivide():
    g = cycle(3)
    s = randgen.subdivide(g, 2)
    assert s.n == 3 + 2 * 3
    assert s.girth() == 9
    assert randgen.subdivide(g, 0) is g


def test_random_tree():
    for seed in range(5):
        g = randgen.random_tree(10, seed)
        assert g.n == 10 and g.num_edges == 9


def test_random_girth5_planar():
    import math
    for seed in range(10):
        g = randgen.random_girth5_planar(60, seed)
        assert g.n <= 60
        assert g.girth() >= 5 or g.girth() == math.inf
