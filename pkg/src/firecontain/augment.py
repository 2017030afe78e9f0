"""Embedding-preserving edge and vertex insertion, plus the two
maximality augmentations used before classification.

Chord insertion keeps the rotation system consistent: a chord between
boundary positions i < j of a face is placed immediately after the
previous boundary vertex in each endpoint's rotation, which splits the
face into two traced faces.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .embedding import EmbeddedGraph, Face, build
from .errors import CannotTriangulate, NotTriangleFree


def insert_chord(g: EmbeddedGraph, face: Face, i: int, j: int
                 ) -> EmbeddedGraph:
    """Add the chord between boundary positions i and j of ``face``."""
    b = face.boundary
    k = len(b)
    u, v = b[i], b[j]
    rot = [list(r) for r in g.rotations]
    pu = b[(i - 1) % k]
    pv = b[(j - 1) % k]
    rot[u].insert(rot[u].index(pu) + 1, v)
    rot[v].insert(rot[v].index(pv) + 1, u)
    return build(rot, labels=g.labels, positions=g.positions)


def insert_vertex_in_face(g: EmbeddedGraph, face: Face,
                          attach_positions: Sequence[int],
                          position: Optional[tuple[float, float]] = None
                          ) -> EmbeddedGraph:
    """Add a new vertex inside ``face`` joined to the given boundary
    positions (in walk order)."""
    b = face.boundary
    k = len(b)
    new = g.n
    rot = [list(r) for r in g.rotations]
    for p in attach_positions:
        prev = b[(p - 1) % k]
        rot[b[p]].insert(rot[b[p]].index(prev) + 1, new)
    rot.append([b[p] for p in reversed(attach_positions)])
    pos = None
    if g.positions is not None:
        if position is None:
            xs = [g.positions[b[p]][0] for p in attach_positions]
            ys = [g.positions[b[p]][1] for p in attach_positions]
            position = (sum(xs) / len(xs), sum(ys) / len(ys))
        pos = list(g.positions) + [position]
    return build(rot, positions=pos)


def _chord_ok(g: EmbeddedGraph, u: int, v: int) -> bool:
    return u != v and not g.has_edge(u, v)


def augment_maximal_planar(g: EmbeddedGraph) -> EmbeddedGraph:
    """Insert chords until every face is a triangle.

    Each big face is fan-triangulated from its minimum-id boundary vertex;
    if a fan chord already exists elsewhere in the graph the fan is
    rerooted to the next vertex.
    """
    g.require_verified()
    while True:
        face = next((f for f in g.faces() if f.degree > 3), None)
        if face is None:
            return g
        b = face.boundary
        k = len(b)
        chord = None
        # roots in increasing vertex id, then walk position
        for _, p in sorted((b[p], p) for p in range(k)):
            for step in range(2, k - 1):
                q = (p + step) % k
                if _chord_ok(g, b[p], b[q]):
                    chord = (p, q)
                    break
            if chord:
                break
        if chord is None:
            raise CannotTriangulate(
                f"face {face.boundary} admits no new chord")
        g = insert_chord(g, face, *chord)


def augment_maximal_triangle_free(g: EmbeddedGraph) -> EmbeddedGraph:
    """Greedy local maximality: insert triangle-avoiding chords inside
    faces of degree >= 5 until none is insertable."""
    g.require_verified()
    if not g.is_triangle_free():
        raise NotTriangleFree("input contains a triangle")
    while True:
        chord = None
        for face in g.faces():
            k = face.degree
            if k < 5:
                continue
            b = face.boundary
            for i in range(k):
                for step in range(2, k - 1):
                    j = (i + step) % k
                    u, v = b[i], b[j]
                    if not _chord_ok(g, u, v):
                        continue
                    if g.adjacency[u] & g.adjacency[v]:
                        continue  # chord would close a triangle
                    chord = (face, i, j)
                    break
                if chord:
                    break
            if chord:
                break
        if chord is None:
            return g
        g = insert_chord(g, chord[0], chord[1], chord[2])
