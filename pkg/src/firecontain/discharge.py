"""Discharging in exact rational arithmetic: initial charges, transfer
rules, conservation audits, and the X/Y counting consequences.

Two contexts:

* ``planar_sigma``: maximal planar; vertex charge d(v) - 6, total -12;
  rules R1 (high-degree vertices support Y_5 neighbours) and R2 (an
  escape-path endpoint supports each Y_6 vertex).
* ``trianglefree_nu``: triangle-free; vertices and faces carry d - 4,
  total -8; rules S1-S4 support Y_3 vertices and S5 supports Y_4 via the
  depth-7 escape path.

All amounts are ``fractions.Fraction``; conservation is checked bit-exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from . import classify
from .classify import (
    FIVE_ADJACENT,
    FOUR_ADJACENT,
    ClassificationReport,
    contiguous_elements,
    hex_escape_path,
    rect_escape_path,
    relation_flavors,
    special_sets,
)
from .embedding import EmbeddedGraph
from .errors import (
    ContainsTriangle,
    NoEscapePath,
    NotTriangulation,
    NotTwoConnected,
    RequiresExactClassification,
)

PLANAR_ALPHA = Fraction(1, 872)
TF_ALPHA = Fraction(1, 360720)
TF_BETA = 2186 * TF_ALPHA

# crude per-donor frequency caps for the escape-path rules (paths counted
# through bounded-degree interiors)
R2_PATHS_PER_DEGREE = 31      # 1 + 5 + 25
S5_VERTEX_PATHS_PER_DEGREE = 1093   # 1 + 3 + ... + 3^6
S5_FACE_PATHS_PER_DEGREE = 728      # 2 * (1 + 3 + ... + 3^5)


@dataclass(frozen=True)
class TransferRecord:
    rule: str
    donor: tuple[str, int]
    recipient: tuple[str, int]
    amount: Fraction
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "donor": list(self.donor),
            "recipient": list(self.recipient),
            "amount": _rat(self.amount),
            "witness": self.witness,
        }


@dataclass(frozen=True)
class ChargeLedger:
    context: str  # "planar_sigma" | "trianglefree_nu"
    vertex_charge: dict[int, Fraction]
    face_charge: dict[int, Fraction]
    alpha: Fraction
    beta: Optional[Fraction]
    transfers: tuple[TransferRecord, ...] = ()

    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), Fraction(0)) + \
            sum(self.face_charge.values(), Fraction(0))

    def charge(self, element: tuple[str, int]) -> Fraction:
        kind, eid = element
        if kind == "vertex":
            return self.vertex_charge[eid]
        return self.face_charge[eid]

    def with_transfers(self, records: list[TransferRecord]) -> "ChargeLedger":
        vc = dict(self.vertex_charge)
        fc = dict(self.face_charge)
        for r in records:
            src = vc if r.donor[0] == "vertex" else fc
            dst = vc if r.recipient[0] == "vertex" else fc
            src[r.donor[1]] -= r.amount
            dst[r.recipient[1]] += r.amount
        return replace(self, vertex_charge=vc, face_charge=fc,
                       transfers=self.transfers + tuple(records))


def replay_transfers(initial: ChargeLedger, final: ChargeLedger) -> bool:
    """Re-apply the final ledger's log to the initial charges and compare."""
    redo = initial.with_transfers(list(final.transfers))
    return redo.vertex_charge == final.vertex_charge and \
        redo.face_charge == final.face_charge


# -- planar context ---------------------------------------------------------

def init_planar_charges(g: EmbeddedGraph,
                        alpha: Fraction = PLANAR_ALPHA) -> ChargeLedger:
    classify.require_triangulation(g)
    vc = {v: Fraction(g.degree(v) - 6) for v in range(g.n)}
    ledger = ChargeLedger("planar_sigma", vc, {}, alpha, None)
    assert ledger.total() == -12
    return ledger


def transfer_planar(g: EmbeddedGraph, ledger: ChargeLedger,
                    classification: ClassificationReport) -> ChargeLedger:
    """Apply the planar rules.  R1: every degree >= 7 vertex gives 1/4 to
    each Y_5 neighbour.  R2: for every Y_6 vertex, the escape-path
    endpoint (degree != 6, distance <= 3) gives alpha."""
    _require_exact(classification, "planar_thm3")
    records: list[TransferRecord] = []
    for v in range(g.n):
        if g.degree(v) < 7:
            continue
        for u in sorted(g.adjacency[v]):
            if classification.labels[u] == "Y_5":
                records.append(TransferRecord(
                    "R1", ("vertex", v), ("vertex", u), Fraction(1, 4)))
    for v in range(g.n):
        if classification.labels[v] != "Y_6":
            continue
        esc = hex_escape_path(g, v)
        if esc is None:
            raise NoEscapePath(
                f"Y_6 vertex {v} sits in a pure hex neighbourhood")
        records.append(TransferRecord(
            "R2", esc.donor, ("vertex", v), ledger.alpha,
            witness={"path": list(esc.path)}))
    return ledger.with_transfers(records)


# -- triangle-free context --------------------------------------------------

def init_tf_charges(g: EmbeddedGraph,
                    alpha: Fraction = TF_ALPHA,
                    beta: Optional[Fraction] = None) -> ChargeLedger:
    g.require_verified()
    if not g.is_triangle_free():
        raise ContainsTriangle("graph contains a triangle")
    for f in g.faces():
        if len(set(f.boundary)) != len(f.boundary):
            raise NotTwoConnected(
                f"face {f.id} repeats a vertex; boundaries must be cycles")
    if beta is None:
        beta = 2186 * alpha
    vc = {v: Fraction(g.degree(v) - 4) for v in range(g.n)}
    fc = {f.id: Fraction(f.degree - 4) for f in g.faces()}
    ledger = ChargeLedger("trianglefree_nu", vc, fc, alpha, beta)
    assert ledger.total() == -8
    return ledger


def transfer_tf(g: EmbeddedGraph, ledger: ChargeLedger,
                classification: ClassificationReport) -> ChargeLedger:
    """Apply the triangle-free rules S1-S5 (see module docstring)."""
    _require_exact(classification, "trianglefree_thm5")
    beta = ledger.beta
    sets = special_sets(g, classification)
    y53 = sets["Y53"]
    y3 = {v for v, lab in classification.labels.items() if lab == "Y_3"}
    records: list[TransferRecord] = []
    # S1: a Y53 vertex gives 1/3 - beta to each of its three 4-adjacent
    # Y_3 neighbours
    for v in sorted(y53):
        for u in y53[v]:
            records.append(TransferRecord(
                "S1", ("vertex", v), ("vertex", u), Fraction(1, 3) - beta))
    # S2: a degree >= 5 vertex not in Y53 gives 2/5 - beta to each Y_3
    # vertex it is contiguous with
    for v in sorted(y3):
        for e in contiguous_elements(g, v):
            if e.kind != "vertex" or e.degree < 5 or e.id in y53:
                continue
            records.append(TransferRecord(
                "S2", ("vertex", e.id), ("vertex", v), Fraction(2, 5) - beta))
    # S3: a degree >= 5 vertex gives 1/10 - beta to each Y_3 vertex it is
    # 5-adjacent to
    for v in sorted(y3):
        for u in sorted(g.adjacency[v]):
            if g.degree(u) < 5:
                continue
            if FIVE_ADJACENT in relation_flavors(g, v, u).flavors:
                records.append(TransferRecord(
                    "S3", ("vertex", u), ("vertex", v),
                    Fraction(1, 10) - beta))
    # S4: a face of degree >= 5 gives 1/2 - beta to each incident Y_3
    # vertex
    for v in sorted(y3):
        for f in g.incident_faces(v):
            if f.degree >= 5:
                records.append(TransferRecord(
                    "S4", ("face", f.id), ("vertex", v),
                    Fraction(1, 2) - beta))
    # S5: the escape-path endpoint (or its big face) gives alpha to each
    # Y_4 vertex
    for v in range(g.n):
        if classification.labels[v] != "Y_4":
            continue
        esc = rect_escape_path(g, v)
        if esc is None:
            raise NoEscapePath(
                f"Y_4 vertex {v} sits in a pure square-grid neighbourhood")
        records.append(TransferRecord(
            "S5", esc.donor, ("vertex", v), ledger.alpha,
            witness={"path": list(esc.path)}))
    return ledger.with_transfers(records)


def _require_exact(report: ClassificationReport, context: str) -> None:
    if report.context != context or report.mode != "exact":
        raise RequiresExactClassification(
            f"discharging needs an exact {context} classification")


# -- audits -----------------------------------------------------------------

@dataclass
class AuditReport:
    context: str
    conservation_residual: Fraction
    bound_violations: list
    strict_x_bound: bool
    counting_ok: bool
    crude_counts_ok: bool
    x: int
    y: int
    counting_factor: Fraction
    extras: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.conservation_residual == 0
                and not self.bound_violations
                and self.counting_ok and self.crude_counts_ok)

    def to_json(self, transfers: tuple[TransferRecord, ...] = ()) -> dict:
        return {
            "context": self.context,
            "conservation_residual": _rat(self.conservation_residual),
            "bound_violations": [list(map(str, v))
                                 for v in self.bound_violations],
            "strict_x_bound": self.strict_x_bound,
            "counting_ok": self.counting_ok,
            "crude_counts_ok": self.crude_counts_ok,
            "x": self.x,
            "y": self.y,
            "counting_factor": _rat(self.counting_factor),
            "extras": self.extras,
            "transfers": [t.to_json() for t in transfers],
            "ok": self.ok,
        }


def audit_planar(g: EmbeddedGraph, ledger: ChargeLedger,
                 classification: ClassificationReport) -> AuditReport:
    """Check conservation (-12), the per-class charge bounds, the counting
    consequence, and the crude donor-frequency caps."""
    a = ledger.alpha
    x_bound = Fraction(-3) - 93 * a
    violations = []
    strict = True
    for v in range(g.n):
        c = ledger.vertex_charge[v]
        if classification.side(v) == "X":
            if c < x_bound:
                violations.append(("vertex", v, "x_bound", c))
            elif c == x_bound:
                strict = False
        else:
            if c < a:
                violations.append(("vertex", v, "y_bound", c))
    for v in range(g.n):
        d = g.degree(v)
        if d >= 7:
            cnt = sum(1 for u in g.adjacency[v]
                      if classification.labels[u] == "Y_5")
            if cnt > d // 2:
                violations.append(("vertex", v, "y5_neighbor_cap", cnt))
    factor = 93 + 3 / a
    x = len(classification.x_vertices())
    y = len(classification.y_vertices())
    counting_ok = y <= factor * x
    crude_ok = _check_crude(g, ledger, {"R2": R2_PATHS_PER_DEGREE}, {})
    return AuditReport(
        context="planar_sigma",
        conservation_residual=ledger.total() + 12,
        bound_violations=violations,
        strict_x_bound=strict,
        counting_ok=counting_ok,
        crude_counts_ok=crude_ok,
        x=x, y=y, counting_factor=factor)


def audit_tf(g: EmbeddedGraph, ledger: ChargeLedger,
             classification: ClassificationReport) -> AuditReport:
    """Check conservation (-8), the per-class vertex bounds, nonnegative
    face charges, the counting consequence, and the donor caps."""
    a, b = ledger.alpha, ledger.beta
    x_bound = Fraction(-2) - b
    violations = []
    strict = True
    for v in range(g.n):
        c = ledger.vertex_charge[v]
        if classification.side(v) == "X":
            if c < x_bound:
                violations.append(("vertex", v, "x_bound", c))
        else:
            if c < a:
                violations.append(("vertex", v, "y_bound", c))
    for f in g.faces():
        if ledger.face_charge[f.id] < 0:
            violations.append(("face", f.id, "face_bound",
                               ledger.face_charge[f.id]))
    factor = (2 + b) / a
    x = len(classification.x_vertices())
    y = len(classification.y_vertices())
    counting_ok = (y == 0 and x == 0) or (x > 0 and y < factor * x)
    crude_ok = _check_crude(
        g, ledger, {"S5": S5_VERTEX_PATHS_PER_DEGREE},
        {"S5": S5_FACE_PATHS_PER_DEGREE})
    return AuditReport(
        context="trianglefree_nu",
        conservation_residual=ledger.total() + 8,
        bound_violations=violations,
        strict_x_bound=strict,
        counting_ok=counting_ok,
        crude_counts_ok=crude_ok,
        x=x, y=y, counting_factor=factor)


def _check_crude(g, ledger, vertex_caps, face_caps) -> bool:
    counts: dict[tuple, int] = {}
    for t in ledger.transfers:
        key = (t.rule, t.donor)
        counts[key] = counts.get(key, 0) + 1
    faces = {f.id: f for f in g.faces()} if face_caps else {}
    for (rule, donor), cnt in counts.items():
        kind, eid = donor
        if kind == "vertex" and rule in vertex_caps:
            if cnt > vertex_caps[rule] * g.degree(eid):
                return False
        if kind == "face" and rule in face_caps:
            if cnt > face_caps[rule] * faces[eid].degree:
                return False
    return True


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def audit_to_json_str(report: AuditReport,
                      ledger: Optional[ChargeLedger] = None) -> str:
    transfers = ledger.transfers if ledger is not None else ()
    return json.dumps(report.to_json(transfers), sort_keys=True)
