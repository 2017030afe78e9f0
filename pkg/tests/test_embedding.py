import math

import pytest

from firecontain import families as F
from firecontain.embedding import build, density_report
from firecontain.errors import (
    AsymmetricAdjacency,
    Disconnected,
    EmbeddingInconsistent,
    LoopOrMultiEdge,
    UnverifiedEmbedding,
)


def test_face_counts_platonic():
    expected = {"tetrahedron": 4, "cube": 6, "octahedron": 8,
                "dodecahedron": 12, "icosahedron": 20}
    for name, faces in expected.items():
        g = F.platonic(name)
        assert len(g.faces()) == faces
        assert g.n - g.num_edges + len(g.faces()) == 2


def test_face_tracing_cycle():
    g = F.cycle(5)
    assert len(g.faces()) == 2
    assert all(f.degree == 5 for f in g.faces())


def test_edge_and_vertex_faces():
    g = F.platonic("cube")
    for u, v in g.edges():
        assert len(g.edge_faces(u, v)) == 2
    for v in range(g.n):
        assert len(g.incident_faces(v)) == 3


def test_girth():
    assert F.cycle(7).girth() == 7
    assert F.platonic("cube").girth() == 4
    assert F.platonic("icosahedron").girth() == 3
    assert F.path(6).girth() == math.inf
    assert F.platonic("dodecahedron").girth() == 5


def test_triangle_free():
    assert F.cycle(4).is_triangle_free()
    assert F.platonic("cube").is_triangle_free()
    assert not F.platonic("octahedron").is_triangle_free()


def test_build_rejects_bad_input():
    with pytest.raises(LoopOrMultiEdge):
        build([[0]])
    with pytest.raises(LoopOrMultiEdge):
        build([[1, 1], [0, 0]])
    with pytest.raises(AsymmetricAdjacency):
        build([[1], []])
    with pytest.raises(Disconnected):
        build([[1], [0], [3], [2]])


def test_inconsistent_rotation_raises():
    # K4 with one rotation flipped has nonzero Euler residual
    g = F.platonic("tetrahedron")
    rot = [list(r) for r in g.rotations]
    rot[0] = rot[0][::-1]
    bad = build(rot)
    with pytest.raises(EmbeddingInconsistent):
        bad.faces()


def test_unverified_embedding_refuses_faces():
    g = build([[1], [0]], embedding_verified=False)
    with pytest.raises(UnverifiedEmbedding):
        g.faces()


def test_density_report():
    rep = density_report(F.platonic("dodecahedron"))
    assert rep.girth == 5
    assert rep.bound_satisfied
    rep = density_report(F.path(4))
    assert rep.girth == math.inf
    assert rep.bound == 3 and rep.bound_satisfied


def test_distances():
    g = F.path(5)
    assert g.distance(0, 4) == 4
    assert g.distances_from(2) == [2, 1, 0, 1, 2]
