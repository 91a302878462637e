"""Folded ribbon constructions and their closed-form ribbonlengths.

Four families are built as closed planar centerlines:

* multi-twist Moebius bands (escape accordion + 2n+1 half-wraps + closure),
* (2, q)-torus knots (two ribbon pieces AB and CD, q half-wraps),
* twist knots with an odd number 2n+1 of half-twists (four-step clasp),
* twist knots with an even number 2n of half-twists (five-step clasp).

Coordinates follow one fixed frame: the folded accordion edge lies on
the x-axis starting at ``v_S = (0, 0)`` and the closing pieces run along
the line ``y = 1/2``. Layers that coincide once the ribbon is flat share
coordinates. Each diagram carries a *ledger* of named distances whose
values are computed from closed forms, independently of the coordinates,
so ``sum(ledger) == path_length(centerline)`` is a real check.

Escape accordions are always tight: with ``k`` folds their spacing is
``escape_min_kd(theta) / k`` so the clearance is exactly one width. The
half-wraps (and the V-units of piece CD under them) use the caller's
``d``. With the default fold count the accordion spacing never exceeds
``d``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConstraintError, DomainError
from .geometry import (
    FoldKind,
    FoldRole,
    FoldSpec,
    PolylinePath,
    Side,
    accordion_spacing,
    clearance_check,
    default_fold_count,
    escape_min_kd,
    fold_angle,
    path_length,
    zigzag_vertices,
)

SQRT3 = math.sqrt(3.0)
PI_3 = math.pi / 3.0


class Family(str, enum.Enum):
    MOEBIUS = "moebius"
    TORUS2Q = "torus2q"
    TWIST_ODD = "twist_odd"
    TWIST_EVEN = "twist_even"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError:
            raise DomainError(f"unknown family {value!r}") from None


class Parity(str, enum.Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class ConstructionParams:
    """Family tag and the (theta, d, n, k) that produced a diagram.

    ``n`` counts half-wraps as in the constructions: a Moebius band or a
    (2, 2n+1)-torus knot or odd twist knot has 2n+1 of them, an even twist
    knot has 2n.
    """

    family: Family
    theta: float
    d: float
    n: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        fold_angle(self.theta)
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if self.family is not Family.MOEBIUS:
            if self.n < 1:
                raise DomainError(f"{self.family.value} needs n >= 1, got {self.n}")
            if self.theta != PI_3:
                raise DomainError(f"{self.family.value} is only defined for theta = pi/3")
        if int(self.k) != self.k or self.k < 2 or self.k % 2:
            raise DomainError(
                f"escape accordion needs an even fold count >= 2, got k={self.k!r} (Lemma 3.3)")
        if not self.d > 0:
            raise DomainError(f"d must be > 0, got {self.d!r}")

    @property
    def accordion_d(self) -> float:
        return accordion_spacing(self.theta, self.k)

    @property
    def q(self) -> int:
        return 2 * self.n + 1

    @property
    def half_wraps(self) -> int:
        return 2 * self.n if self.family is Family.TWIST_EVEN else 2 * self.n + 1


class LedgerTerm(NamedTuple):
    """A named distance appearing ``multiplicity`` times in a length sum."""

    name: str
    length: float
    multiplicity: int = 1

    @property
    def total(self) -> float:
        return self.length * self.multiplicity


def ledger_total(ledger) -> float:
    return math.fsum(t.total for t in ledger)


@dataclass(frozen=True)
class RibbonDiagram:
    """A closed folded-ribbon knot diagram.

    ``folds[i]`` describes the fold at ``centerline.vertices[i]`` (the
    repeated closing vertex has no entry). ``landmarks`` names vertex
    indices; ``points`` holds named positions that are not vertices (they
    sit in the interior of a segment).
    """

    centerline: PolylinePath
    folds: tuple
    landmarks: dict
    points: dict
    ledger: tuple
    params: ConstructionParams

    def __post_init__(self):
        if not self.centerline.closed:
            raise DomainError("a ribbon diagram needs a closed centerline")
        if len(self.folds) != self.centerline.corner_count:
            raise DomainError(
                f"{len(self.folds)} fold specs for {self.centerline.corner_count} vertices")
        for label, idx in self.landmarks.items():
            if not 0 <= idx < self.centerline.corner_count:
                raise DomainError(f"landmark {label} index {idx} out of range")

    @property
    def family(self) -> Family:
        return self.params.family

    @property
    def fold_count(self) -> int:
        return len(self.folds)

    def vertex(self, label: str) -> np.ndarray:
        return self.centerline.vertices[self.landmarks[label]]

    def point(self, label: str) -> np.ndarray:
        if label in self.landmarks:
            return self.vertex(label)
        return np.asarray(self.points[label], dtype=float)


class ClaspDistances(NamedTuple):
    dK_MP: float
    d_PM: float
    d_JT: float


def clasp_distances() -> ClaspDistances:
    """Distances in the twist-knot clasp, derived from its right triangles.

    The pi/6 fold at N with half-width leg MQ = 1/2 and MN perpendicular to
    PQ gives d(M, N) = tan(pi/12) / 2; triangle MNP with the right angle at
    M gives d(N, P) = d(M, N) / cos(pi/6) and d(P, M) = d(M, N) tan(pi/6).
    The pi/3 fold at J against the half-width QT = 1/2 gives d(J, T).
    """
    fold_at_n = math.pi / 6.0
    angle_mnq = (math.pi - fold_at_n) / 2.0  # fold line bisects the supplement
    angle_nqm = math.pi / 2.0 - angle_mnq
    half_width = 0.5
    d_mn = half_width * math.tan(angle_nqm)
    d_np = d_mn / math.cos(fold_at_n)
    d_pm = d_mn * math.tan(fold_at_n)
    d_jt = half_width / math.tan(PI_3)
    return ClaspDistances(dK_MP=d_mn + d_np, d_PM=d_pm, d_JT=d_jt)


# -- closed forms -----------------------------------------------------------

def moebius_rib_formula(theta: float, d: float, n: int) -> float:
    """Ribbonlength of the multi-twist Moebius band construction."""
    theta = fold_angle(theta)
    _check_d_formula(d)
    _check_n(n, 0)
    h = theta / 2.0
    c, s = math.cos(h), math.sin(h)
    return 2.0 / c + 1.0 / (c * s) + math.tan(h) + 2.0 * n * d * (1.0 + s)


def torus_rib_formula(q: int, d: float) -> float:
    """Ribbonlength ``8 sqrt(3) + 6 n d`` of the (2, q)-torus construction, q = 2n+1."""
    n = _torus_n(q)
    _check_d_formula(d)
    return 8.0 * SQRT3 + 6.0 * n * d


def twist_rib_formula(n: int, parity, d: float) -> float:
    """Ribbonlength of the twist-knot constructions (odd: 2n+1, even: 2n half-twists)."""
    _check_n(n, 1)
    _check_d_formula(d)
    parity = _parity(parity)
    base = 9.0 * SQRT3 if parity is Parity.ODD else 8.0 * SQRT3
    return base + 2.0 + 6.0 * n * d


def family_rib_formula(params: ConstructionParams) -> float:
    f = params.family
    if f is Family.MOEBIUS:
        return moebius_rib_formula(params.theta, params.d, params.n)
    if f is Family.TORUS2Q:
        return torus_rib_formula(params.q, params.d)
    return twist_rib_formula(params.n, Parity.ODD if f is Family.TWIST_ODD else Parity.EVEN,
                             params.d)


def _check_d_formula(d):
    if not (math.isfinite(d) and d >= 0):
        raise DomainError(f"d must be >= 0, got {d!r}")


def _check_n(n, lo):
    if int(n) != n or n < lo:
        raise DomainError(f"n must be an integer >= {lo}, got {n!r}")


def _torus_n(q) -> int:
    if int(q) != q or q < 3 or q % 2 == 0:
        raise DomainError(
            f"q must be an odd integer >= 3, got {q!r}; even q gives a torus link, "
            "which is not constructed here")
    return (int(q) - 1) // 2


def _parity(parity) -> Parity:
    try:
        return Parity(getattr(parity, "value", parity))
    except ValueError:
        raise DomainError(f"parity must be 'odd' or 'even', got {parity!r}") from None


# -- builders ---------------------------------------------------------------

def resolve_fold_count(theta: float, d: float | None, k: int | None) -> tuple[float, int]:
    """Apply the fold-count policy and return ``(d, k)``.

    * ``k`` omitted: the smallest even k that lets spacing ``d`` escape.
    * ``d`` omitted: exact mode, ``d = escape_min_kd(theta) / k`` (k defaults to 2).
    * both given: ``k`` must satisfy the clearance inequality at spacing ``d``.
    """
    theta = fold_angle(theta)
    if d is None:
        k = 2 if k is None else k
        return accordion_spacing(theta, k), int(k)
    d = float(d)
    if not (math.isfinite(d) and d > 0):
        raise DomainError(f"d must be > 0, got {d!r}")
    if k is None:
        return d, default_fold_count(theta, d)
    check = clearance_check(theta, d, k)
    if not check.satisfied:
        raise ConstraintError(
            f"escape accordion clearance, Lemma 3.3: k={k}, d={d!r} give "
            f"separation {check.clearance:.6g} < 1 at theta={theta!r}")
    return d, int(k)


class _Builder:
    """Accumulates vertices and fold specs along the closed centerline."""

    def __init__(self):
        self.blocks: list = []
        self.folds: list = []
        self.landmarks: dict = {}
        self.count = 0

    def add(self, xy, fold: FoldSpec, label: str | None = None) -> int:
        self.blocks.append(np.asarray(xy, dtype=float).reshape(1, 2))
        self.folds.append(fold)
        idx = self.count
        self.count += 1
        if label is not None:
            self.landmarks[label] = idx
        return idx

    def add_run(self, xys, folds, labels=None):
        xys = np.asarray(xys, dtype=float).reshape(-1, 2)
        if len(xys) != len(folds):
            raise ValueError("vertex and fold counts differ")
        base = self.count
        self.blocks.append(xys)
        self.folds.extend(folds)
        self.count += len(xys)
        for j, label in (labels or {}).items():
            self.landmarks[label] = base + j

    def finish(self, points, ledger, params) -> RibbonDiagram:
        verts = np.vstack(self.blocks + [self.blocks[0][:1]])
        return RibbonDiagram(
            centerline=PolylinePath(verts, closed=True),
            folds=tuple(self.folds),
            landmarks=dict(self.landmarks),
            points={k: (float(v[0]), float(v[1])) for k, v in points.items()},
            ledger=tuple(ledger),
            params=params,
        )


def _alternating_folds(theta, count, first_side, role, kinds_by_side=None, start=0):
    """Fold specs for a zigzag run; ``start`` offsets the alternation."""
    # specs are immutable, so a run shares one instance per side
    by_side = {}
    for side in (Side.LEFT, Side.RIGHT):
        kind = FoldKind.OVERFOLD if kinds_by_side is None else kinds_by_side[side]
        by_side[side] = FoldSpec(side, kind, theta, role)
    pair = [by_side[first_side], by_side[first_side.flipped()]]
    if start % 2:
        pair.reverse()
    return (pair * (count // 2 + 1))[:count]


_WRAP_KINDS = {Side.LEFT: FoldKind.UNDERFOLD, Side.RIGHT: FoldKind.OVERFOLD}


def _accordion_then_wraps(theta, k, n_acc_after, wraps, d_acc, d, role_wraps):
    """Spacings and fold specs for the zigzag leaving v_S.

    Returns ``(spacings, folds)`` where ``folds[j]`` is the fold at the
    vertex reached after ``j + 1`` edges (v_S itself is excluded).
    """
    spacings = [d_acc] * k + [d] * wraps + [d_acc] * n_acc_after
    folds = _alternating_folds(theta, k - 1, Side.LEFT, FoldRole.ACCORDION, start=1)
    if role_wraps is FoldRole.HALF_WRAP:
        folds += _alternating_folds(theta, wraps + 1, Side.LEFT, FoldRole.HALF_WRAP,
                                    _WRAP_KINDS, start=k)
    else:
        folds += _alternating_folds(theta, wraps + 1, Side.LEFT, FoldRole.ACCORDION, start=k)
    folds += _alternating_folds(theta, n_acc_after, Side.LEFT, FoldRole.ACCORDION,
                                start=k + wraps + 1)
    return spacings, folds


def build_moebius(theta: float, d: float | None = None, n: int = 0,
                  k: int | None = None) -> RibbonDiagram:
    """Multi-twist Moebius band: escape accordion, 2n+1 half-wraps, closure behind.

    Vertex order starts at the closure vertex A and follows A -> v_S ->
    accordion -> w_1 ... w_{2n+1} -> E -> A.
    """
    theta = fold_angle(theta)
    _check_n(n, 0)
    d, k = resolve_fold_count(theta, d, k)
    params = ConstructionParams(Family.MOEBIUS, theta, d, int(n), k)
    d_acc = params.accordion_d
    h = theta / 2.0
    c, s, t = math.cos(h), math.sin(h), math.tan(h)
    closure_angle = math.pi / 2.0 - h
    wraps = 2 * n

    b = _Builder()
    v_s = np.array([0.0, 0.0])
    a = np.array([-0.5 * t, 0.5])
    b.add(a, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, closure_angle, FoldRole.CLOSURE), "A")
    b.add(v_s, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "v_S")
    spacings, folds = _accordion_then_wraps(theta, k, 0, wraps, d_acc, d, FoldRole.HALF_WRAP)
    zz = zigzag_vertices(v_s, theta, spacings, ascending_first=True)
    labels = {k - 1 + m: f"w_{m + 1}" for m in range(wraps + 1)}
    b.add_run(zz, folds, labels)
    b.landmarks["v_E"] = b.landmarks["w_1"]
    w_last = zz[-1]
    e = w_last + np.array([0.5 * t, 0.5])
    b.add(e, FoldSpec(Side.LEFT, FoldKind.UNDERFOLD, closure_angle, FoldRole.CLOSURE), "E")

    points = {"B": (0.0, 0.5), "C": (zz[k - 1][0], 0.5), "D": (w_last[0], 0.5)}
    ledger = [
        LedgerTerm("d_K(v_S,v_E)", 1.0 / (c * s)),
        LedgerTerm("d_K(w_1,w_{2n+1})", 2.0 * n * d),
        LedgerTerm("d(A,v_S)", 1.0 / (2.0 * c), 2),
        LedgerTerm("d(A,B)", 0.5 * t, 2),
        LedgerTerm("d(B,C)", 1.0 / c),
        LedgerTerm("d(C,D)", 2.0 * n * d * s),
    ]
    return b.finish(points, ledger, params)


def _pi3_params(family, n, d, k) -> ConstructionParams:
    d, k = resolve_fold_count(PI_3, d, k)
    return ConstructionParams(family, PI_3, d, int(n), k)


# Distances at theta = pi/3 shared by the torus and twist ledgers.
_D_E_VS = 1.0 / SQRT3          # d(E, v_S) = 1 / (2 cos(pi/6))
_DK_ACC = 4.0 / SQRT3          # d_K(v_S, v_E) = 1 / (cos(pi/6) sin(pi/6))
_D_E_F = 1.0 / (2.0 * SQRT3)   # d(E, F) = tan(pi/6) / 2
_D_ACC = 2.0 / SQRT3           # d(v_S, v_E) = 1 / cos(pi/6)
_ASCEND = np.array([0.5, SQRT3 / 2.0])
_DESCEND = np.array([0.5, -SQRT3 / 2.0])


def build_torus(q: int, d: float | None = None, k: int | None = None) -> RibbonDiagram:
    """(2, q)-torus knot from two escape accordions and q half-wraps of end B.

    The closed loop is piece CD from E through its long accordion to N and
    up to M, then piece AB from M back along the top to E, through its
    escape accordion and the q half-wraps to w_q and up to I, closing
    along the top to E.
    """
    n = _torus_n(q)
    params = _pi3_params(Family.TORUS2Q, n, d, k)
    d, k, d_acc = params.d, params.k, params.accordion_d
    theta = PI_3
    closure = math.pi / 2.0 - theta / 2.0
    wraps = 2 * n
    v_s = np.array([0.0, 0.0])
    e = np.array([-_D_E_F, 0.5])
    lift = np.array([_D_E_F, 0.5])

    b = _Builder()
    # piece CD: escape accordion, V-units under the wraps, extension to N
    b.add(e, FoldSpec(Side.LEFT, FoldKind.UNDERFOLD, closure, FoldRole.CLOSURE), "E")
    b.add(v_s, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "v_S")
    sp, folds = _accordion_then_wraps(theta, k, k, wraps, d_acc, d, FoldRole.ACCORDION)
    zz_cd = zigzag_vertices(v_s, theta, sp, ascending_first=True)
    b.add_run(zz_cd, folds, {len(zz_cd) - 1: "N"})
    n_pt = zz_cd[-1]
    b.add(n_pt + lift, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, closure, FoldRole.CLOSURE), "M")
    # piece AB: end A runs back to E, then the escape accordion and the wraps
    b.add(e, FoldSpec(Side.LEFT, FoldKind.UNDERFOLD, closure, FoldRole.CLOSURE), "E'")
    b.add(v_s, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "v_S'")
    sp, folds = _accordion_then_wraps(theta, k, 0, wraps, d_acc, d, FoldRole.HALF_WRAP)
    zz_ab = zigzag_vertices(v_s, theta, sp, ascending_first=True)
    labels = {k - 1 + m: f"w_{m + 1}" for m in range(wraps + 1)}
    b.add_run(zz_ab, folds, labels)
    b.landmarks["v_E"] = b.landmarks["w_1"]
    w_last = zz_ab[-1]
    b.add(w_last + lift, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, closure, FoldRole.CLOSURE), "I")

    points = {
        "F": (0.0, 0.5),
        "G": (zz_ab[k - 1][0], 0.5),
        "H": (w_last[0], 0.5),
        "J": (n_pt[0], 0.5),
    }
    ledger = [
        LedgerTerm("d(E,v_S)", _D_E_VS, 4),
        LedgerTerm("d_K(v_S,v_E)", _DK_ACC, 3),
        LedgerTerm("d_K(w_1,w_{2n+1})", 2.0 * n * d, 2),
        LedgerTerm("d(E,F)", _D_E_F, 4),
        LedgerTerm("d(v_S,v_E)", _D_ACC, 3),
        LedgerTerm("d(w_1,w_{2n+1})", n * d, 2),
    ]
    return b.finish(points, ledger, params)


def build_twist(n: int, parity, d: float | None = None, k: int | None = None) -> RibbonDiagram:
    """Twist knot with 2n+1 (odd) or 2n (even) half-twists closed by a clasp."""
    _check_n(n, 1)
    parity = _parity(parity)
    if parity is Parity.ODD:
        return _build_twist_odd(int(n), d, k)
    return _build_twist_even(int(n), d, k)


def _reverse_run(theta, zz, v_s, b: _Builder, drop_last: bool):
    """Traverse piece CD's zigzag backwards from its far end to v_S."""
    pts = zz[:-1] if drop_last else zz
    # vertex j is reached after j+1 edges; its side flips when walked backwards
    by_side = {side: FoldSpec(side, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION) for side in Side}
    folds = [by_side[Side.RIGHT] if j % 2 else by_side[Side.LEFT] for j in range(len(pts) - 1, -1, -1)]
    b.add_run(np.asarray(pts)[::-1], folds)
    b.add(v_s, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "v_S'")


def _build_twist_odd(n, d, k) -> RibbonDiagram:
    params = _pi3_params(Family.TWIST_ODD, n, d, k)
    d, k, d_acc = params.d, params.k, params.accordion_d
    theta = PI_3
    closure = math.pi / 2.0 - theta / 2.0
    clasp = clasp_distances()
    d_np = clasp.dK_MP - (1.0 - SQRT3 / 2.0)
    d_mn = 1.0 - SQRT3 / 2.0
    wraps = 2 * n
    v_s = np.array([0.0, 0.0])
    e = np.array([-_D_E_F, 0.5])

    b = _Builder()
    # piece AB: end B through accordion and 2n+1 half-wraps, then the clasp
    b.add(e, FoldSpec(Side.LEFT, FoldKind.UNDERFOLD, closure, FoldRole.CLOSURE), "E")
    b.add(v_s, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "v_S")
    sp, folds = _accordion_then_wraps(theta, k, 0, wraps, d_acc, d, FoldRole.HALF_WRAP)
    zz_ab = zigzag_vertices(v_s, theta, sp, ascending_first=True)
    labels = {k - 1 + m: f"w_{m + 1}" for m in range(wraps + 1)}
    b.add_run(zz_ab, folds, labels)
    b.landmarks["v_E"] = b.landmarks["w_1"]
    w = zz_ab[-1]
    p = w + 2.0 * _D_E_VS * _ASCEND
    n_pt = p + d_np * _ASCEND
    u = np.array([n_pt[0], 0.0])
    s_pt = np.array([n_pt[0], 0.5])
    # step 2: end B folds down at pi/6 and runs one width to U
    b.add(n_pt, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, math.pi / 6.0, FoldRole.CLASP), "N")
    b.add(u, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, 0.0, FoldRole.JOIN), "U")
    # piece CD walked backwards from the B-D join: U -> S -> (T) -> J -> V
    b.add(s_pt, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, math.pi / 2.0, FoldRole.CLASP), "S")
    sp, _ = _accordion_then_wraps(theta, k, k, wraps, d_acc, d, FoldRole.ACCORDION)
    zz_cd = zigzag_vertices(v_s, theta, sp, ascending_first=True)
    v = zz_cd[-1]
    j = v + _D_E_VS * _ASCEND
    b.add(j, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, PI_3, FoldRole.CLASP), "J")
    b.add(v, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "V")
    _reverse_run(theta, zz_cd, v_s, b, drop_last=True)
    b.add(e, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, closure, FoldRole.CLOSURE), "E'")
    # step 3: end C runs over to T and is joined to end A
    t = np.array([s_pt[0] + 0.5, 0.5])
    b.add(t, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, 0.0, FoldRole.JOIN), "T")

    points = {
        "F": (0.0, 0.5),
        "G": (zz_ab[k - 1][0], 0.5),
        "H": (w[0], 0.5),
        "I": (w[0] + _D_E_F, 0.5),
        "P": tuple(p),
        "M": (n_pt[0], n_pt[1] - d_mn),
        "R": (p[0], 0.5),
        "Q": (n_pt[0], 0.5),
    }
    ledger = [
        LedgerTerm("d(E,v_S)", _D_E_VS, 5),
        LedgerTerm("d_K(v_S,v_E)", _DK_ACC, 3),
        LedgerTerm("d_K(w_1,w_{2n+1})", 2.0 * n * d, 2),
        LedgerTerm("d(E,F)", _D_E_F, 6),
        LedgerTerm("d(R,T)", clasp.d_PM + 0.5, 2),
        LedgerTerm("d(v_S,v_E)", _D_ACC, 2),
        LedgerTerm("d(w_1,w_{2n+1})", n * d, 2),
        LedgerTerm("d_K(P,M)", clasp.dK_MP),
        LedgerTerm("d(M,U)", 1.0),
        LedgerTerm("d(J,T)", clasp.d_JT),
        LedgerTerm("d_K(T,U)", 1.0),
    ]
    return b.finish(points, ledger, params)


def _build_twist_even(n, d, k) -> RibbonDiagram:
    params = _pi3_params(Family.TWIST_EVEN, n, d, k)
    d, k, d_acc = params.d, params.k, params.accordion_d
    theta = PI_3
    closure = math.pi / 2.0 - theta / 2.0
    clasp = clasp_distances()
    d_np = clasp.dK_MP - (1.0 - SQRT3 / 2.0)
    wraps = 2 * n
    v_s = np.array([0.0, 0.0])
    e = np.array([-_D_E_F, 0.5])

    b = _Builder()
    # piece AB: 2n half-wraps end at the marker w_{2n+1}, which lies on
    # the straight segment into the pi/6 fold at Y
    b.add(e, FoldSpec(Side.LEFT, FoldKind.UNDERFOLD, closure, FoldRole.CLOSURE), "E")
    b.add(v_s, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, theta, FoldRole.ACCORDION), "v_S")
    sp, folds = _accordion_then_wraps(theta, k, 0, wraps - 1, d_acc, d, FoldRole.HALF_WRAP)
    sp.append(d)
    zz_ab = zigzag_vertices(v_s, theta, sp, ascending_first=True)
    labels = {k - 1 + m: f"w_{m + 1}" for m in range(wraps)}
    b.add_run(zz_ab[:-1], folds, labels)
    b.landmarks["v_E"] = b.landmarks["w_1"]
    w = zz_ab[-1]
    y = w + d_np * _DESCEND
    x = np.array([y[0], 0.0])
    r = np.array([y[0], 1.0])
    s_pt = np.array([y[0], 0.5])
    b.add(y, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, math.pi / 6.0, FoldRole.CLASP), "Y")
    b.add(r, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, 0.0, FoldRole.JOIN), "R")
    # piece CD walked backwards from the B-D join: R -> S -> U -> (V) -> W -> Z
    b.add(s_pt, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, math.pi / 2.0, FoldRole.CLASP), "S")
    sp, _ = _accordion_then_wraps(theta, k, k, wraps, d_acc, d, FoldRole.ACCORDION)
    zz_cd = zigzag_vertices(v_s, theta, sp, ascending_first=True)
    z = zz_cd[-1]
    w_pt = z + d_np * _DESCEND
    u = np.array([w_pt[0], 0.5])
    b.add(u, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, math.pi / 2.0, FoldRole.CLASP), "U")
    b.add(w_pt, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, math.pi / 6.0, FoldRole.CLASP), "W")
    _reverse_run(theta, zz_cd, v_s, b, drop_last=True)
    b.add(e, FoldSpec(Side.RIGHT, FoldKind.OVERFOLD, closure, FoldRole.CLOSURE), "E'")
    t = np.array([s_pt[0] + 0.5, 0.5])
    b.add(t, FoldSpec(Side.LEFT, FoldKind.OVERFOLD, 0.0, FoldRole.JOIN), "T")

    points = {
        "F": (0.0, 0.5),
        "w_{2n+1}": tuple(w),
        "X": tuple(x),
        "Z": tuple(z),
        "V": (w_pt[0], 0.0),
    }
    ledger = [
        LedgerTerm("d(E,v_S)", _D_E_VS, 2),
        LedgerTerm("d_K(v_S,v_E)", _DK_ACC, 3),
        LedgerTerm("d_K(w_1,w_{2n+1})", 2.0 * n * d, 2),
        LedgerTerm("d(E,F)", _D_E_F, 2),
        LedgerTerm("d_K(M,P)", clasp.dK_MP, 2),
        LedgerTerm("d(v_S,v_E)", _D_ACC, 3),
        LedgerTerm("d(w_1,w_{2n+1})", n * d, 2),
        LedgerTerm("d(X,R)", 1.0),
        LedgerTerm("d(P,M)", clasp.d_PM, 2),
        LedgerTerm("d(S,T)", 0.5, 4),
    ]
    return b.finish(points, ledger, params)


def build(family, theta: float | None = None, d: float | None = None, n: int | None = None,
          q: int | None = None, k: int | None = None) -> RibbonDiagram:
    """Dispatch to a family builder from loosely specified parameters."""
    family = Family.parse(family)
    if family is Family.MOEBIUS:
        return build_moebius(PI_3 if theta is None else theta, d, 0 if n is None else n, k)
    if theta is not None and abs(theta - PI_3) > 1e-12:
        raise DomainError(f"{family.value} is only constructed at theta = pi/3")
    if family is Family.TORUS2Q:
        if q is None:
            if n is None:
                raise DomainError("torus2q needs --q (or --n with q = 2n+1)")
            q = 2 * n + 1
        return build_torus(q, d, k)
    if n is None:
        raise DomainError(f"{family.value} needs n >= 1")
    parity = Parity.ODD if family is Family.TWIST_ODD else Parity.EVEN
    return build_twist(n, parity, d, k)


def diagram_length(diagram: RibbonDiagram) -> float:
    return path_length(diagram.centerline)
