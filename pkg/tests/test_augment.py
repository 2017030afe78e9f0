import pytest

from firecontain import families as F
from firecontain.augment import (
    augment_maximal_planar,
    augment_maximal_triangle_free,
    insert_chord,
    insert_vertex_in_face,
)
from firecontain.errors import NotTriangleFree


def test_insert_chord_splits_face():
    g = F.cycle(6)
    face = g.faces()[0]
    g2 = insert_chord(g, face, 0, 3)
    assert g2.num_edges == g.num_edges + 1
    assert len(g2.faces()) == len(g.faces()) + 1
    assert g2.has_edge(face.boundary[0], face.boundary[3])


def test_insert_vertex_in_face():
    g = F.cycle(4)
    face = g.faces()[0]
    g2 = insert_vertex_in_face(g, face, [0, 2])
    assert g2.n == 5
    assert g2.degree(4) == 2
    # the split face becomes two quadrilaterals; the other stays degree 4
    assert sorted(f.degree for f in g2.faces()) == [4, 4, 4]


def test_augment_maximal_planar():
    for g in (F.cycle(5), F.hex_patch(2), F.rect_grid(3, 3)):
        t = augment_maximal_planar(g)
        assert all(f.degree == 3 for f in t.faces())
        assert t.n == g.n
        assert t.num_edges == 3 * t.n - 6
        # old edges survive
        assert set(g.edges()) <= set(t.edges())


def test_augment_maximal_planar_idempotent():
    g = F.platonic("icosahedron")
    assert augment_maximal_planar(g) is g


def test_augment_maximal_triangle_free():
    g = F.cycle(8)
    t = augment_maximal_triangle_free(g)
    assert t.is_triangle_free()
    assert t.num_edges > g.num_edges
    # local maximality: no face of degree >= 5 admits a triangle-free chord
    for f in t.faces():
        if f.degree < 5:
            continue
        b = f.boundary
        for i in range(f.degree):
            for step in range(2, f.degree - 1):
                u, v = b[i], b[(i + step) % f.degree]
                if u != v and not t.has_edge(u, v):
                    assert t.adjacency[u] & t.adjacency[v]


def test_augment_triangle_free_rejects_triangles():
    with pytest.raises(NotTriangleFree):
        augment_maximal_triangle_free(F.cycle(3))


def test_augment_triangle_free_idempotent_on_quadrangulation():
    g = F.rect_grid(4, 4)
    t = augment_maximal_triangle_free(g)
    # interior faces are 4-cycles; only the outer face can gain chords
    assert t.is_triangle_free()
