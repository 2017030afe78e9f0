"""Local configuration detection and X/Y vertex classification.

Vertices are split into X (the fire, starting there, can be contained
within the context's burn cap) and Y (everything else).  Three contexts
are supported:

* ``girth5_thm2``: girth >= 5 planar, two firefighters; purely structural.
* ``planar_thm3``: maximal planar, schedule (4, 3), burn cap 6.
* ``trianglefree_thm5``: triangle-free planar, two firefighters, cap 18.

Cheap structural rules run first; in ``exact`` mode the remaining
candidate vertices are decided by the containment search.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .embedding import EmbeddedGraph, Face
from .engine import Schedule, min_burned_containment
from .errors import (
    ContainsTriangle,
    GirthTooSmall,
    NotTriangulation,
    RequiresExactClassification,
    WrongContext,
    WrongDegree,
)

CONTEXTS = ("girth5_thm2", "planar_thm3", "trianglefree_thm5")

FOUR_OPPOSITE = "four_opposite"
FOUR_ADJACENT = "four_adjacent"
FIVE_ADJACENT = "five_adjacent"


@dataclass(frozen=True)
class Relation:
    """Adjacency flavours holding between a vertex pair, with witnesses."""

    u: int
    v: int
    flavors: frozenset[str]
    witness_faces: tuple[int, ...] = ()


@dataclass(frozen=True)
class Element:
    """A vertex or a face, tagged with its degree."""

    kind: str  # "vertex" | "face"
    id: int
    degree: int


@dataclass(frozen=True)
class ConfigMatch:
    config: str
    anchor: int
    witness: dict


@dataclass
class ClassificationReport:
    context: str
    mode: str  # "rules_only" | "exact"
    labels: dict[int, str]  # vertex -> "X_3", "Y_5", ...
    evidence: dict[int, dict]

    def side(self, v: int) -> str:
        return self.labels[v][0]

    def x_vertices(self) -> list[int]:
        return [v for v, lab in self.labels.items() if lab[0] == "X"]

    def y_vertices(self) -> list[int]:
        return [v for v, lab in self.labels.items() if lab[0] == "Y"]

    def count(self, label: str) -> int:
        return sum(1 for lab in self.labels.values() if lab == label)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for lab in self.labels.values():
            out[lab] = out.get(lab, 0) + 1
        return out

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "mode": self.mode,
            "labels": {str(v): lab for v, lab in sorted(self.labels.items())},
            "evidence": {str(v): ev for v, ev in sorted(self.evidence.items())},
            "counts": dict(sorted(self.counts().items())),
        }


# -- adjacency flavours -----------------------------------------------------

def relation_flavors(g: EmbeddedGraph, u: int, v: int) -> Relation:
    """All flavours holding between u and v, with witnessing face ids."""
    g.require_verified()
    flavors: set[str] = set()
    witnesses: list[int] = []
    if g.has_edge(u, v):
        deg4 = [f for f in g.edge_faces(u, v) if f.degree == 4]
        if len(deg4) == 2:
            flavors.add(FOUR_ADJACENT)
        elif len(deg4) == 1:
            flavors.add(FIVE_ADJACENT)
        witnesses.extend(f.id for f in deg4)
    else:
        for f in _opposite_faces(g, u, v):
            flavors.add(FOUR_OPPOSITE)
            witnesses.append(f.id)
    return Relation(u, v, frozenset(flavors), tuple(witnesses))


def _opposite_faces(g: EmbeddedGraph, u: int, v: int) -> list[Face]:
    """Degree-4 faces with boundary u,a,v,b where a or b has degree 4."""
    out = []
    for f in g.incident_faces(u):
        if f.degree != 4 or v not in f.boundary:
            continue
        b = f.boundary
        i, j = b.index(u), b.index(v)
        if (j - i) % 4 != 2:
            continue
        a1, a2 = b[(i + 1) % 4], b[(i + 3) % 4]
        if g.degree(a1) == 4 or g.degree(a2) == 4:
            out.append(f)
    return out


def contiguous_elements(g: EmbeddedGraph, v: int) -> list[Element]:
    """Faces incident with v plus vertices 4-opposite or 4-adjacent to v
    (each element listed once)."""
    g.require_verified()
    out = [Element("face", f.id, f.degree) for f in g.incident_faces(v)]
    seen: set[int] = set()
    for u in g.adjacency[v]:
        if FOUR_ADJACENT in relation_flavors(g, v, u).flavors:
            seen.add(u)
    for f in g.incident_faces(v):
        if f.degree != 4:
            continue
        b = f.boundary
        u = b[(b.index(v) + 2) % 4]
        if u not in seen and not g.has_edge(u, v) and _opposite_faces(g, v, u):
            seen.add(u)
    out.extend(Element("vertex", u, g.degree(u)) for u in sorted(seen))
    return out


def _contiguous_vertices(g: EmbeddedGraph, v: int) -> list[int]:
    return [e.id for e in contiguous_elements(g, v) if e.kind == "vertex"]


def _five_adjacent_vertices(g: EmbeddedGraph, v: int) -> list[int]:
    return [u for u in sorted(g.adjacency[v])
            if FIVE_ADJACENT in relation_flavors(g, v, u).flavors]


# -- degree-3 configurations (triangle-free context) ------------------------

def detect_local_configs(g: EmbeddedGraph, v: int) -> list[ConfigMatch]:
    """All matching containment-friendly local patterns around a degree-3
    vertex of a triangle-free embedded graph."""
    if g.degree(v) != 3:
        raise WrongDegree(f"vertex {v} has degree {g.degree(v)}, need 3")
    g.require_verified()
    out: list[ConfigMatch] = []
    nbrs = sorted(g.adjacency[v])
    # 3.1: a neighbour of degree <= 3
    for u in nbrs:
        if g.degree(u) <= 3:
            out.append(ConfigMatch("3.1", v, {"vertex": u}))
            break
    # 3.2: a degree-4 neighbour with another neighbour of degree <= 3
    for u in nbrs:
        if g.degree(u) != 4:
            continue
        w = next((w for w in sorted(g.adjacency[u])
                  if w != v and g.degree(w) <= 3), None)
        if w is not None:
            out.append(ConfigMatch("3.2", v, {"vertex": u, "low": w}))
            break
    opposites = _opposite_partners(g, v)
    # 3.3: 4-opposite to a vertex of degree <= 4
    for u, fid in opposites:
        if g.degree(u) <= 4:
            out.append(ConfigMatch("3.3", v, {"vertex": u, "face": fid}))
            break
    # 3.4: 4-opposite to a degree-5 vertex with a neighbour of degree <= 3
    for u, fid in opposites:
        if g.degree(u) != 5:
            continue
        w = next((w for w in sorted(g.adjacency[u]) if g.degree(w) <= 3),
                 None)
        if w is not None:
            out.append(ConfigMatch("3.4", v, {"vertex": u, "face": fid,
                                              "low": w}))
            break
    # 3.5: a degree-5 neighbour w with three consecutive neighbours of
    # degree <= 3 (v among them), the middle one 4-adjacent to w
    for w in nbrs:
        if g.degree(w) != 5:
            continue
        rot = g.rotations[w]
        hit = None
        for i in range(5):
            window = [rot[i], rot[(i + 1) % 5], rot[(i + 2) % 5]]
            if v not in window:
                continue
            if any(g.degree(x) > 3 for x in window):
                continue
            mid = window[1]
            if FOUR_ADJACENT in relation_flavors(g, w, mid).flavors:
                hit = window
                break
        if hit is not None:
            out.append(ConfigMatch("3.5", v, {"vertex": w, "window": hit}))
            break
    # 3.6: 4-adjacent to a degree-6 vertex that is 4-adjacent to six
    # vertices of degree <= 3
    for u in nbrs:
        if g.degree(u) != 6:
            continue
        if FOUR_ADJACENT not in relation_flavors(g, v, u).flavors:
            continue
        sat = [w for w in sorted(g.adjacency[u])
               if g.degree(w) <= 3
               and FOUR_ADJACENT in relation_flavors(g, u, w).flavors]
        if len(sat) >= 6:
            out.append(ConfigMatch("3.6", v, {"vertex": u, "low": sat}))
            break
    return out


def _opposite_partners(g: EmbeddedGraph, v: int) -> list[tuple[int, int]]:
    out = []
    for f in g.incident_faces(v):
        if f.degree != 4:
            continue
        b = f.boundary
        u = b[(b.index(v) + 2) % 4]
        if not g.has_edge(u, v) and _opposite_faces(g, v, u):
            out.append((u, f.id))
    return sorted(set(out))


# -- grid neighbourhood tests and escape paths ------------------------------

@dataclass(frozen=True)
class EscapePath:
    """A short path leaving the pure grid pattern around a vertex.

    ``donor`` is ("vertex", id) or ("face", id): the off-grid element at
    the far end, used as the charge donor in the discharging rules.
    """
    path: tuple[int, ...]
    donor: tuple[str, int]

    @property
    def length(self) -> int:
        return len(self.path) - 1


def grid_neighborhood_test(g: EmbeddedGraph, v: int, kind: str
                           ) -> tuple[bool, Optional[EscapePath]]:
    """True iff the neighbourhood of v matches the pure grid pattern
    (depth 3 for ``hex``, depth 7 for ``rect``); otherwise an escape path
    witnessing the defect is returned."""
    if kind == "hex":
        if g.degree(v) != 6:
            raise WrongContext(f"hex test needs degree 6, got {g.degree(v)}")
        esc = hex_escape_path(g, v)
    elif kind == "rect":
        if g.degree(v) != 4:
            raise WrongContext(f"rect test needs degree 4, got {g.degree(v)}")
        esc = rect_escape_path(g, v)
    else:
        raise WrongContext(f"unknown grid kind {kind!r}")
    return esc is None, esc


def hex_escape_path(g: EmbeddedGraph, v: int) -> Optional[EscapePath]:
    """Shortest path (length <= 3) from v to a vertex of degree != 6 whose
    internal vertices all have degree 6; None if the depth-3 neighbourhood
    is pure.  Ties broken by (length, endpoint id), parents minimal."""
    g.require_verified()
    dist = {v: 0}
    parent: dict[int, int] = {}
    queue = [v]
    best = None
    for u in queue:
        d = dist[u]
        if d >= 1 and g.degree(u) != 6:
            if best is None or (d, u) < best:
                best = (d, u)
            continue  # endpoint found; do not extend through it
        if d == 3 or (best is not None and d + 1 > best[0]):
            continue
        for w in sorted(g.adjacency[u]):
            if w not in dist:
                dist[w] = d + 1
                parent[w] = u
                queue.append(w)
    if best is None:
        return None
    path = _unwind(parent, v, best[1])
    return EscapePath(tuple(path), ("vertex", best[1]))


def rect_escape_path(g: EmbeddedGraph, v: int) -> Optional[EscapePath]:
    """Shortest escape (length <= 7) from v: either a vertex of degree != 4
    or a degree-4 path endpoint lying on a face of degree >= 5 shared with
    its path predecessor.  Internal path vertices have degree 4."""
    g.require_verified()
    dist = {v: 0}
    parent: dict[int, int] = {}
    queue = [v]
    best = None  # (dist, endpoint id, donor)
    for u in queue:
        d = dist[u]
        if d >= 1:
            if g.degree(u) != 4:
                cand = (d, u, ("vertex", u))
            else:
                big = [f.id for f in g.edge_faces(u, parent[u])
                       if f.degree >= 5]
                cand = (d, u, ("face", min(big))) if big else None
            if cand is not None and (best is None or cand[:2] < best[:2]):
                best = cand
            if g.degree(u) != 4:
                continue  # cannot be an internal vertex
        if d == 7 or (best is not None and d + 1 > best[0]):
            continue
        for w in sorted(g.adjacency[u]):
            if w not in dist:
                dist[w] = d + 1
                parent[w] = u
                queue.append(w)
    if best is None:
        return None
    path = _unwind(parent, v, best[1])
    return EscapePath(tuple(path), best[2])


def _unwind(parent: dict[int, int], start: int, end: int) -> list[int]:
    path = [end]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return path[::-1]


# -- context classifiers ----------------------------------------------------

def classify_girth5(g: EmbeddedGraph) -> ClassificationReport:
    """Two-firefighter classes on girth >= 5 planar graphs; purely
    degree-determined, no solver calls."""
    if g.girth() < 5:
        raise GirthTooSmall(f"girth {g.girth()} < 5")
    labels: dict[int, str] = {}
    evidence: dict[int, dict] = {}
    for v in range(g.n):
        d = g.degree(v)
        if d <= 2:
            labels[v] = "X_2"
            evidence[v] = {"rule": "degree_le_2"}
        elif d == 3:
            low = next((u for u in sorted(g.adjacency[v])
                        if g.degree(u) <= 3), None)
            if low is not None:
                labels[v] = "X_3"
                evidence[v] = {"rule": "low_degree_neighbor", "vertex": low}
            else:
                labels[v] = "Y_3"
                evidence[v] = {"rule": "no_low_neighbor"}
        else:
            labels[v] = "Y_4"
            evidence[v] = {"rule": "degree_ge_4"}
    return ClassificationReport("girth5_thm2", "rules_only", labels, evidence)


def require_triangulation(g: EmbeddedGraph) -> None:
    if any(f.degree != 3 for f in g.faces()):
        raise NotTriangulation("some face is not a triangle")


def classify_planar(g: EmbeddedGraph, mode: str = "exact",
                    node_limit: int = 2_000_000) -> ClassificationReport:
    """Schedule-(4,3) classes on a maximal planar graph, burn cap 6."""
    require_triangulation(g)
    sched = Schedule(4, 3)
    labels: dict[int, str] = {}
    evidence: dict[int, dict] = {}
    for v in range(g.n):
        d = g.degree(v)
        if d >= 7:
            labels[v] = f"Y_{d}"
            evidence[v] = {"rule": "degree_ge_7"}
            continue
        if d <= 4:
            labels[v] = f"X_{d}"
            evidence[v] = {"rule": "degree_le_4"}
            continue
        if d == 5:
            low = next((u for u in sorted(g.adjacency[v])
                        if g.degree(u) <= 6), None)
            if low is not None:
                labels[v] = "X_5"
                evidence[v] = {"rule": "degree5_low_neighbor", "vertex": low}
                continue
        if d == 6:
            ok, esc = grid_neighborhood_test(g, v, "hex")
            if ok:
                labels[v] = "X_6"
                evidence[v] = {"rule": "hex_neighborhood"}
                continue
        labels[v], evidence[v] = _resolve_exact(
            g, v, d, mode, sched, burn_cap=6, node_limit=node_limit)
    return ClassificationReport("planar_thm3", mode, labels, evidence)


def classify_triangle_free(g: EmbeddedGraph, mode: str = "exact",
                           node_limit: int = 2_000_000
                           ) -> ClassificationReport:
    """Two-firefighter classes on a triangle-free planar graph, cap 18."""
    g.require_verified()
    if not g.is_triangle_free():
        raise ContainsTriangle("graph contains a triangle")
    sched = Schedule.constant(2)
    labels: dict[int, str] = {}
    evidence: dict[int, dict] = {}
    for v in range(g.n):
        d = g.degree(v)
        if d >= 5:
            labels[v] = f"Y_{d}"
            evidence[v] = {"rule": "degree_ge_5"}
            continue
        if d <= 2:
            labels[v] = f"X_{d}"
            evidence[v] = {"rule": "degree_le_2"}
            continue
        if d == 3:
            configs = detect_local_configs(g, v)
            if configs:
                c = configs[0]
                labels[v] = "X_3"
                evidence[v] = {"rule": f"config_{c.config}",
                               "witness": c.witness}
                continue
        if d == 4:
            ok, esc = grid_neighborhood_test(g, v, "rect")
            if ok:
                labels[v] = "X_4"
                evidence[v] = {"rule": "rect_neighborhood"}
                continue
        labels[v], evidence[v] = _resolve_exact(
            g, v, d, mode, sched, burn_cap=18, node_limit=node_limit)
    return ClassificationReport("trianglefree_thm5", mode, labels, evidence)


def _resolve_exact(g, v, d, mode, sched, burn_cap, node_limit):
    if mode != "exact":
        return f"Y_{d}", {"rule": "unmatched"}
    from . import strategies  # deferred: strategies imports this module
    probes = strategies.lattice_probes(g, v, sched, burn_cap)
    res = min_burned_containment(g, v, sched, burn_cap=burn_cap,
                                 node_limit=node_limit, probes=probes)
    if res.status == "feasible":
        return f"X_{d}", {"rule": "exact", "trace": res.trace.to_json()}
    if res.status == "infeasible":
        return f"Y_{d}", {"rule": "exact_infeasible"}
    return f"Y_{d}", {"rule": "exact_unknown"}


# -- derived special sets and structural checks -----------------------------

def special_sets(g: EmbeddedGraph, report: ClassificationReport) -> dict:
    """The derived sets over an exact triangle-free classification:
    Y32 = Y_3 vertices contiguous with exactly two elements of degree >= 5;
    Y53 = Y_5 vertices 4-adjacent to three Y_3 vertices."""
    _require_exact_tf(report)
    y3 = {v for v, lab in report.labels.items() if lab == "Y_3"}
    y5 = {v for v, lab in report.labels.items() if lab == "Y_5"}
    y32 = {}
    for v in sorted(y3):
        big = [e for e in contiguous_elements(g, v) if e.degree >= 5]
        if len(big) == 2:
            y32[v] = [(e.kind, e.id) for e in big]
    y53 = {}
    for v in sorted(y5):
        partners = [u for u in sorted(g.adjacency[v])
                    if u in y3
                    and FOUR_ADJACENT in relation_flavors(g, v, u).flavors]
        if len(partners) >= 3:
            y53[v] = partners
    return {"Y32": y32, "Y53": y53}


def _require_exact_tf(report: ClassificationReport) -> None:
    if report.context != "trianglefree_thm5" or report.mode != "exact":
        raise RequiresExactClassification(
            "needs an exact triangle-free classification")


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    passed: bool
    counterexamples: tuple = ()


def verify_structural_claims(g: EmbeddedGraph, report: ClassificationReport
                             ) -> list[ClaimResult]:
    """Check the structural consequences of the classification.  Failures
    indicate an implementation bug; they are reported with witnesses."""
    if report.mode != "exact" and report.context != "girth5_thm2":
        raise RequiresExactClassification("claims need exact labels")
    if report.context == "planar_thm3":
        return [_check_y5_neighbor_cap(g, report)]
    if report.context != "trianglefree_thm5":
        raise RequiresExactClassification(
            "structural claims apply to the planar or triangle-free context")
    sets = special_sets(g, report)
    y3 = {v for v, lab in report.labels.items() if lab == "Y_3"}
    y53 = set(sets["Y53"])
    out = []
    out.append(_check_y3_contiguous_support(g, report, y3))
    out.append(_check_y5_contiguity_cap(g, report, y3))
    out.append(_check_y3_y53_cap(g, y3, y53))
    out.append(_check_y6_cap(g, report, y3))
    out.append(_check_high_degree_cap(g, report, y3))
    return out


def _check_y5_neighbor_cap(g, report):
    """Degree >= 7 vertices have at most floor(d/2) neighbours labelled
    Y_5 (maximal planar context)."""
    bad = []
    for v in range(g.n):
        d = g.degree(v)
        if d < 7:
            continue
        cnt = sum(1 for u in g.adjacency[v] if report.labels[u] == "Y_5")
        if cnt > d // 2:
            bad.append((v, cnt))
    return ClaimResult("high_degree_y5_neighbor_cap", not bad, tuple(bad))


def _check_y3_contiguous_support(g, report, y3):
    """Every Y_3 vertex is contiguous with >= 2 elements of degree >= 5;
    with exactly 2 it is also 5-adjacent to two degree->=5 vertices and
    touches a face of degree >= 5 and a face of degree 4."""
    bad = []
    for v in sorted(y3):
        big = [e for e in contiguous_elements(g, v) if e.degree >= 5]
        if len(big) < 2:
            bad.append((v, "support", len(big)))
        elif len(big) == 2:
            fives = [u for u in _five_adjacent_vertices(g, v)
                     if g.degree(u) >= 5]
            faces = g.incident_faces(v)
            if len(fives) < 2:
                bad.append((v, "five_adjacent", len(fives)))
            if not any(f.degree >= 5 for f in faces) or \
                    not any(f.degree == 4 for f in faces):
                bad.append((v, "face_mix", [f.degree for f in faces]))
    return ClaimResult("y3_contiguous_support", not bad, tuple(bad))


def _check_y5_contiguity_cap(g, report, y3):
    """At most three Y_3 vertices are contiguous with any Y_5 vertex; with
    exactly three they are pairwise non-consecutive neighbours and every
    face at the vertex has degree 4."""
    bad = []
    for v in range(g.n):
        if report.labels[v] != "Y_5":
            continue
        part = [u for u in _contiguous_vertices(g, v) if u in y3]
        if len(part) > 3:
            bad.append((v, "count", part))
        elif len(part) == 3:
            rot = g.rotations[v]
            if not all(u in rot for u in part):
                bad.append((v, "not_neighbors", part))
                continue
            idx = sorted(rot.index(u) for u in part)
            k = len(rot)
            gaps = [(idx[(i + 1) % 3] - idx[i]) % k for i in range(3)]
            if any(gap == 1 for gap in gaps):
                bad.append((v, "consecutive", part))
            if any(f.degree != 4 for f in g.incident_faces(v)):
                bad.append((v, "faces", [f.degree
                                         for f in g.incident_faces(v)]))
    return ClaimResult("y5_y3_contiguity_cap", not bad, tuple(bad))


def _check_y3_y53_cap(g, y3, y53):
    """Every Y_3 vertex is 4-adjacent to at most one Y53 vertex."""
    bad = []
    for v in sorted(y3):
        cnt = [u for u in sorted(g.adjacency[v]) if u in y53
               and FOUR_ADJACENT in relation_flavors(g, v, u).flavors]
        if len(cnt) > 1:
            bad.append((v, cnt))
    return ClaimResult("y3_y53_adjacency_cap", not bad, tuple(bad))


def _check_y6_cap(g, report, y3):
    """At most six Y_3 vertices are contiguous with or 5-adjacent to a Y_6
    vertex; with exactly six, at least two are 5-adjacent."""
    bad = []
    for v in range(g.n):
        if report.labels[v] != "Y_6":
            continue
        near = {u for u in _contiguous_vertices(g, v) if u in y3}
        fives = {u for u in _five_adjacent_vertices(g, v) if u in y3}
        near |= fives
        if len(near) > 6:
            bad.append((v, sorted(near)))
        elif len(near) == 6 and len(fives) < 2:
            bad.append((v, "five_adjacent_short", sorted(fives)))
    return ClaimResult("y6_y3_cap", not bad, tuple(bad))


def _check_high_degree_cap(g, report, y3):
    """A degree-d vertex labelled Y with d >= 7 has at most d Y_3 vertices
    contiguous with or 5-adjacent to it."""
    bad = []
    for v in range(g.n):
        d = g.degree(v)
        if d < 7 or report.side(v) != "Y":
            continue
        near = {u for u in _contiguous_vertices(g, v) if u in y3}
        near |= {u for u in _five_adjacent_vertices(g, v) if u in y3}
        if len(near) > d:
            bad.append((v, sorted(near)))
    return ClaimResult("high_degree_y3_cap", not bad, tuple(bad))


def report_to_json_str(report: ClassificationReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True)
