import pytest

from firecontain import families as F
from firecontain.errors import BadParameter


def test_path_and_cycle():
    p = F.path(5)
    assert p.n == 5 and p.num_edges == 4
    c = F.cycle(6)
    assert c.n == 6 and c.num_edges == 6
    assert all(c.degree(v) == 2 for v in range(6))


def test_star_total_count_convention():
    s = F.star(6)
    assert s.n == 6
    assert s.degree(0) == 5
    assert all(s.degree(v) == 1 for v in range(1, 6))


def test_complete_bipartite():
    g = F.complete_bipartite_2_m(4)
    assert g.n == 6 and g.num_edges == 8
    assert g.degree(0) == g.degree(1) == 4
    assert not g.has_edge(0, 1)
    assert all(g.degree(v) == 2 for v in range(2, 6))
    # all faces are quadrilaterals in this drawing
    assert all(f.degree == 4 for f in g.faces())


def test_rect_grid():
    g = F.rect_grid(4, 3)
    assert g.n == 12
    assert g.degree(0) == 2          # corner
    assert g.degree(1) == 3          # edge
    assert g.degree(1 * 4 + 1) == 4  # interior
    assert g.num_edges == 3 * 3 + 2 * 4  # h-edges + v-edges = 9 + 8 = 17


def test_hex_patch():
    for r in range(4):
        g = F.hex_patch(r)
        assert g.n == 3 * r * r + 3 * r + 1
    g = F.hex_patch(3)
    assert g.degree(0) == 6  # centre
    inner = [f for f in g.faces() if f.degree == 3]
    assert len(inner) == len(g.faces()) - 1  # all but the outer face


def test_hex_patch_interior_degrees():
    g = F.hex_patch(4)
    # depth-3 interior around the centre is all degree 6
    dist = g.distances_from(0)
    assert all(g.degree(v) == 6 for v in range(g.n) if dist[v] <= 3)


def test_platonic_degrees():
    degs = {"tetrahedron": 3, "cube": 3, "octahedron": 4,
            "dodecahedron": 3, "icosahedron": 5}
    for name, d in degs.items():
        g = F.platonic(name)
        assert all(g.degree(v) == d for v in range(g.n))


def test_parse_family():
    spec = F.parse_family("star:5")
    assert spec.family == "star" and spec.params == {"n": 5}
    spec = F.parse_family("rect_grid:4,5")
    assert spec.params == {"width": 4, "height": 5}
    spec = F.parse_family("cube")
    assert spec.family == "platonic"
    assert F.generate(spec).n == 8
    with pytest.raises(BadParameter):
        F.parse_family("nonsense:3")


def test_bad_parameters():
    with pytest.raises(BadParameter):
        F.cycle(2)
    with pytest.raises(BadParameter):
        F.star(1)
    with pytest.raises(BadParameter):
        F.hex_patch(-1)
    with pytest.raises(BadParameter):
        F.rect_grid(1, 1)
