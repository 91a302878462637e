"""Crease patterns and file emission: SVG, JSON documents and CSV tables.

Numbers are written with fixed formatting so identical inputs always give
byte-identical output.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Iterable, NamedTuple, TextIO
from xml.sax.saxutils import escape

import numpy as np

from .analysis import BoundRow, RibbonlengthReport, ribbonlength
from .constructions import ConstructionParams, LedgerTerm, RibbonDiagram
from .errors import DocumentParseError, RibbonError, SchemaVersionError
from .geometry import FoldSpec, PolylinePath, Side

SCHEMA_VERSION = "1"
TABLE_HEADER = ("q", "crossing_number", "construction_bound", "kny_bound")


class Parity(str, enum.Enum):
    MOUNTAIN = "mountain"
    VALLEY = "valley"


class Crease(NamedTuple):
    position: float
    angle: float
    parity: Parity


@dataclass(frozen=True)
class CreasePattern:
    """Fold lines on the unfolded strip, in order along its length.

    The strip is cut at the midpoint of the edge entering the origin
    vertex (A for the Moebius band, E for the other families), so every
    crease lies strictly inside ``(0, strip_length)``.
    """

    strip_length: float
    creases: tuple
    origin: str = ""


def crease_pattern(diagram: RibbonDiagram) -> CreasePattern:
    """Unfold a diagram into crease positions, angles and mountain/valley parity.

    The crease at a vertex with fold angle theta meets the strip edge at
    ``pi/2 - theta/2``. Left folds are mountains and right folds valleys,
    viewed from the overfold side.
    """
    edges = diagram.centerline.edge_lengths
    closing = float(edges[-1])
    start = closing / 2.0
    cum = np.concatenate([[0.0], np.cumsum(edges[:-1])])
    creases = []
    for pos, fold in zip(cum, diagram.folds):
        parity = Parity.MOUNTAIN if fold.side is Side.LEFT else Parity.VALLEY
        creases.append(Crease(start + float(pos), math.pi / 2.0 - fold.angle / 2.0, parity))
    origin = next((lab for lab, idx in diagram.landmarks.items() if idx == 0), "")
    return CreasePattern(ribbonlength(diagram), tuple(creases), origin)


# -- SVG ---------------------------------------------------------------------

@dataclass(frozen=True)
class RenderOptions:
    labels: bool = True
    layer_offset: float = 0.03
    scale: float = 80.0
    margin: float = 1.0
    stroke: float = 0.02


def _f(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _svg_open(width, height, metadata: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        f"<metadata>{escape(metadata)}</metadata>",
    ]


def _layered(vertices: np.ndarray, offset: float) -> np.ndarray:
    """Shift repeated visits of the same point so coincident layers stay visible."""
    seen: dict = {}
    out = vertices.copy()
    for i, (x, y) in enumerate(vertices):
        key = (round(float(x), 9), round(float(y), 9))
        layer = seen.get(key, 0)
        seen[key] = layer + 1
        out[i] = (x + layer * offset, y + layer * offset)
    return out


def render_diagram(diagram: RibbonDiagram, options: RenderOptions | None = None,
                   sink: TextIO | None = None) -> str:
    """SVG drawing of the centerline, ribbon boundary, fold lines and labels.

    Coincident layers are separated by ``options.layer_offset``; the
    offset is cosmetic and never enters any reported length.
    """
    opt = options or RenderOptions()
    corners = diagram.centerline.vertices[:-1]
    drawn = _layered(corners, opt.layer_offset)
    closed = np.vstack([drawn, drawn[:1]])

    lo = closed.min(axis=0) - opt.margin
    hi = closed.max(axis=0) + opt.margin
    sc = opt.scale
    width, height = (hi - lo) * sc

    def tx(p):
        return (p[0] - lo[0]) * sc, (hi[1] - p[1]) * sc

    meta = (f"family={diagram.family.value}; ribbonlength={ribbonlength(diagram):.12f}; "
            f"visual layer offset {opt.layer_offset} width units, not part of any length")
    lines = _svg_open(width, height, meta)
    sw = _f(opt.stroke * sc)

    pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in map(tx, closed))
    lines.append('<g id="centerline">')
    lines.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="{sw}"/>')
    lines.append("</g>")

    lines.append('<g id="boundary">')
    for sign in (1.0, -1.0):
        cmds = []
        for p, q in zip(closed[:-1], closed[1:]):
            u = (q - p) / math.hypot(*(q - p))
            nrm = np.array([-u[1], u[0]]) * 0.5 * sign
            a, b = tx(p + nrm), tx(q + nrm)
            cmds.append(f"M{_f(a[0])} {_f(a[1])}L{_f(b[0])} {_f(b[1])}")
        lines.append(f'<path d="{"".join(cmds)}" fill="none" stroke="gray" '
                     f'stroke-width="{sw}"/>')
    lines.append("</g>")

    lines.append('<g id="folds">')
    m = len(drawn)
    for i, fold in enumerate(diagram.folds):
        here, prev, nxt = drawn[i], drawn[i - 1], drawn[(i + 1) % m]
        u = (here - prev) / math.hypot(*(here - prev))
        v = (nxt - here) / math.hypot(*(nxt - here))
        axis = u + v
        if math.hypot(*axis) < 1e-9:
            axis = np.array([-u[1], u[0]])
        axis = axis / math.hypot(*axis)
        crease = math.pi / 2.0 - fold.angle / 2.0
        half = min(0.5 / max(math.sin(crease), 1e-9), 3.0)
        a, b = tx(here - half * axis), tx(here + half * axis)
        lines.append(f'<line class="fold {fold.side.value}" x1="{_f(a[0])}" y1="{_f(a[1])}" '
                     f'x2="{_f(b[0])}" y2="{_f(b[1])}" stroke="red" stroke-width="{sw}"/>')
    lines.append("</g>")

    lines.append('<g id="labels">')
    if opt.labels:
        fs = _f(0.25 * sc)
        for label in sorted(diagram.landmarks, key=lambda s: (diagram.landmarks[s], s)):
            a = tx(drawn[diagram.landmarks[label]])
            lines.append(f'<text x="{_f(a[0])}" y="{_f(a[1])}" font-size="{fs}">'
                         f"{escape(label)}</text>")
        for label in sorted(diagram.points):
            a = tx(diagram.points[label])
            lines.append(f'<text x="{_f(a[0])}" y="{_f(a[1])}" font-size="{fs}" '
                         f'fill="gray">{escape(label)}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return _emit("\n".join(lines) + "\n", sink)


def render_crease(pattern: CreasePattern, options: RenderOptions | None = None,
                  sink: TextIO | None = None) -> str:
    """SVG of the unfolded unit-width strip: mountains solid, valleys dashed."""
    opt = options or RenderOptions()
    sc = opt.scale
    width = (pattern.strip_length + 2 * opt.margin) * sc
    height = (1.0 + 2 * opt.margin) * sc
    sw = _f(opt.stroke * sc)

    def tx(x, y):
        return (x + opt.margin) * sc, (1.0 - y + opt.margin) * sc

    lines = _svg_open(width, height, f"crease pattern; strip length "
                                     f"{pattern.strip_length:.12f}; origin {pattern.origin}")
    x0, y0 = tx(0.0, 1.0)
    lines.append('<g id="strip">')
    lines.append(f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(pattern.strip_length * sc)}" '
                 f'height="{_f(sc)}" fill="none" stroke="black" stroke-width="{sw}"/>')
    lines.append("</g>")
    lines.append('<g id="creases">')
    for c in pattern.creases:
        # the crease crosses the strip's midline at its position
        run = 0.5 / math.tan(c.angle) if c.angle > 1e-12 else 0.0
        a, b = tx(c.position - run, 0.0), tx(c.position + run, 1.0)
        dash = "" if c.parity is Parity.MOUNTAIN else ' stroke-dasharray="6,4"'
        lines.append(f'<line class="{c.parity.value}" x1="{_f(a[0])}" y1="{_f(a[1])}" '
                     f'x2="{_f(b[0])}" y2="{_f(b[1])}" stroke="black" '
                     f'stroke-width="{sw}"{dash}/>')
    lines.append("</g>")
    lines.append('<g id="labels">')
    if opt.labels and pattern.origin:
        a = tx(0.0, -0.3)
        lines.append(f'<text x="{_f(a[0])}" y="{_f(a[1])}" font-size="{_f(0.25 * sc)}">'
                     f"cut before {escape(pattern.origin)}</text>")
    lines.append("</g>")
    lines.append("</svg>")
    return _emit("\n".join(lines) + "\n", sink)


# -- JSON documents ----------------------------------------------------------

@dataclass(frozen=True)
class DiagramDocument:
    schema_version: str
    diagram: RibbonDiagram
    reports: RibbonlengthReport | None = None


def _emit(text: str, sink: TextIO | None) -> str:
    if sink is not None:
        sink.write(text)
    return text


def _params_dict(p: ConstructionParams) -> dict:
    return {"family": p.family.value, "theta": p.theta, "d": p.d, "n": p.n, "k": p.k}


def _fold_dict(f: FoldSpec) -> dict:
    return {"side": f.side.value, "kind": f.kind.value, "angle": f.angle,
            "role": None if f.role is None else f.role.value}


def to_document(diagram: RibbonDiagram, reports: RibbonlengthReport | None = None,
                sink: TextIO | None = None) -> str:
    """Serialize a diagram (and optionally its report) as JSON with sorted keys."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "diagram": {
            "params": _params_dict(diagram.params),
            "vertices": diagram.centerline.vertices.tolist(),
            "folds": [_fold_dict(f) for f in diagram.folds],
            "landmarks": dict(diagram.landmarks),
            "points": {k: list(v) for k, v in diagram.points.items()},
            "ledger": [[t.name, t.length, t.multiplicity] for t in diagram.ledger],
        },
        "reports": None,
    }
    if reports is not None:
        doc["reports"] = {
            "formula_value": reports.formula_value,
            "oracle_value": reports.oracle_value,
            "limit_d_zero": reports.limit_d_zero,
            "ledger_total": reports.ledger_total,
            "linking_sign_convention": "each half-wrap counts +1",
        }
    return _emit(json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n", sink)


def from_document(text: str) -> DiagramDocument:
    """Parse a JSON document written by :func:`to_document`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(
            f"malformed document at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentParseError("document root must be an object")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION!r})")
    where = "diagram"
    try:
        dg = raw["diagram"]
        where = "diagram.params"
        params = ConstructionParams(**dg["params"])
        where = "diagram.folds"
        folds = tuple(FoldSpec(**f) for f in dg["folds"])
        where = "diagram.vertices"
        path = PolylinePath(np.array(dg["vertices"], dtype=float), closed=True)
        where = "diagram.ledger"
        ledger = tuple(LedgerTerm(str(nm), float(ln), int(m)) for nm, ln, m in dg["ledger"])
        where = "diagram.points"
        points = {str(k): (float(v[0]), float(v[1])) for k, v in dg["points"].items()}
        where = "diagram.landmarks"
        landmarks = {str(k): int(v) for k, v in dg["landmarks"].items()}
        where = "diagram"
        diagram = RibbonDiagram(path, folds, landmarks, points, ledger, params)
        report = None
        rep = raw.get("reports")
        if rep is not None:
            where = "reports"
            report = RibbonlengthReport(float(rep["formula_value"]), float(rep["oracle_value"]),
                                        float(rep["limit_d_zero"]), ledger, params)
    except (KeyError, TypeError, ValueError, IndexError, RibbonError) as exc:
        if isinstance(exc, (DocumentParseError, SchemaVersionError)):
            raise
        raise DocumentParseError(f"invalid document at {where}: {exc!r}") from None
    return DiagramDocument(version, diagram, report)


# -- tables -----------------------------------------------------------------

_SIX = Decimal("0.000001")


def fixed6(x: float) -> str:
    """Six decimal places, ties to even on the exact binary value."""
    return str(Decimal(x).quantize(_SIX, rounding=ROUND_HALF_EVEN))


def table_csv(rows: Iterable[BoundRow], sink: TextIO | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for r in rows:
        w.writerow([r.q, r.crossing_number, fixed6(r.construction_bound), fixed6(r.kny_bound)])
    return _emit(buf.getvalue(), sink)
