"""Planar primitives and accordion (zigzag) fold geometry.

All lengths are in ribbon-width units (w = 1), so the length of a
centerline polyline is directly its folded ribbonlength.

Local frame for zigzags: V-unit bisectors are vertical and edges point
along ``(sin(theta/2), -cos(theta/2))`` (descending) or
``(sin(theta/2), +cos(theta/2))`` (ascending).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError

#: Exact closed-form identities are checked at this tolerance.
EXACT_TOL = 1e-12
#: Compositions of transcendental functions are checked at this tolerance.
CROSS_TOL = 1e-9


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    def flipped(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class FoldKind(str, enum.Enum):
    OVERFOLD = "overfold"
    UNDERFOLD = "underfold"


class FoldRole(str, enum.Enum):
    """Which part of a construction a fold belongs to."""

    ACCORDION = "accordion"
    HALF_WRAP = "half_wrap"
    CLOSURE = "closure"
    CLASP = "clasp"
    JOIN = "join"


def fold_angle(theta: float) -> float:
    """Validate a fold angle in the open interval (0, pi) and return it."""
    theta = float(theta)
    if not math.isfinite(theta) or not 0.0 < theta < math.pi:
        raise DomainError(f"fold angle must lie in (0, pi), got {theta!r}")
    return theta


@dataclass(frozen=True)
class PlanarPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"non-finite point ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


@dataclass(frozen=True)
class FoldSpec:
    """One fold event at a centerline vertex.

    ``angle`` is the interior angle of the diagram at the vertex. The
    closed range [0, pi] is accepted here: 0 is a doubling-back join fold
    and pi is the no-turn degeneracy used in tests.
    ``role`` records which construction stage produced the fold and is
    what the linking-number bookkeeping reads.
    """

    side: Side
    kind: FoldKind
    angle: float
    role: FoldRole | None = None

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "kind", FoldKind(self.kind))
        if self.role is not None:
            object.__setattr__(self, "role", FoldRole(self.role))
        a = float(self.angle)
        if not math.isfinite(a) or not 0.0 <= a <= math.pi:
            raise DomainError(f"fold angle must lie in [0, pi], got {a!r}")
        object.__setattr__(self, "angle", a)


@dataclass(frozen=True)
class ZigzagParams:
    theta: float
    d: float
    count: int

    def __post_init__(self):
        t = float(self.theta)
        # pi is admitted as the straight-line degeneracy hook
        if not (math.isfinite(t) and 0.0 < t <= math.pi):
            raise DomainError(f"zigzag fold angle must lie in (0, pi], got {t!r}")
        if not (math.isfinite(self.d) and self.d > 0):
            raise DomainError(f"vertex spacing d must be > 0, got {self.d!r}")
        if int(self.count) != self.count or self.count < 1:
            raise DomainError(f"fold count must be an integer >= 1, got {self.count!r}")
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "d", float(self.d))
        object.__setattr__(self, "count", int(self.count))


@dataclass(frozen=True, eq=False)
class PolylinePath:
    """An ordered vertex list; closed paths repeat the first vertex last."""

    vertices: np.ndarray
    closed: bool = False
    _length: float = field(default=float("nan"), init=False, repr=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 2:
            raise DomainError("a path needs at least two planar vertices")
        if not np.all(np.isfinite(v)):
            raise DomainError("path vertices must be finite")
        steps = np.hypot(*np.diff(v, axis=0).T)
        if np.any(steps == 0.0):
            i = int(np.argmin(steps))
            raise DomainError(f"consecutive vertices {i} and {i + 1} coincide")
        if self.closed and np.hypot(*(v[0] - v[-1])) > EXACT_TOL:
            raise DomainError("closed path must end at its first vertex")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolylinePath):
            return NotImplemented
        return (self.closed == other.closed
                and self.vertices.shape == other.vertices.shape
                and bool(np.array_equal(self.vertices, other.vertices)))

    def __hash__(self):
        return hash((self.closed, self.vertices.tobytes()))

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.hypot(*np.diff(self.vertices, axis=0).T)

    @property
    def corner_count(self) -> int:
        """Number of distinct vertices (a closed path's repeat is not counted)."""
        return len(self.vertices) - 1 if self.closed else len(self.vertices)


def _unit(v: Sequence[float]) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / math.hypot(v[0], v[1])


def turn_at_fold(direction: Sequence[float], fold: FoldSpec) -> np.ndarray:
    """Outgoing unit direction after a fold.

    The diagram turns by ``pi - fold.angle`` toward ``fold.side`` so that the
    interior angle between the two segments equals the fold angle.
    """
    u = np.asarray(direction, dtype=float)
    if u.shape != (2,) or abs(math.hypot(u[0], u[1]) - 1.0) > 1e-9:
        raise DomainError(f"incoming direction must be a unit planar vector, got {direction!r}")
    turn = math.pi - fold.angle
    if fold.side is Side.RIGHT:
        turn = -turn
    c, s = math.cos(turn), math.sin(turn)
    return np.array([c * u[0] - s * u[1], s * u[0] + c * u[1]])


def path_length(path: PolylinePath) -> float:
    """Sum of Euclidean segment lengths (compensated summation)."""
    return math.fsum(path.edge_lengths.tolist())


def v_unit_span(theta: float, d: float) -> float:
    """Planar distance between the start and end vertices of a V-unit."""
    if not d > 0:
        raise DomainError(f"d must be > 0, got {d!r}")
    return 2.0 * d * math.sin(theta / 2.0)


def escape_min_kd(theta: float) -> float:
    """Minimal product k*d for which an escape accordion clears one width."""
    theta = fold_angle(theta)
    h = theta / 2.0
    return 1.0 / (math.cos(h) * math.sin(h))


class Clearance(NamedTuple):
    satisfied: bool
    clearance: float
    margin: float


def clearance_check(theta: float, d: float, k: int) -> Clearance:
    """Check the escape-accordion separation for ``k`` folds of spacing ``d``.

    ``clearance`` is the perpendicular separation ``k d sin(theta/2) cos(theta/2)``
    between the parallel entering and leaving ribbon pieces; the accordion
    escapes when it is at least one ribbon width. ``margin = clearance - 1``.
    """
    theta = fold_angle(theta)
    if int(k) != k or k < 2 or k % 2:
        raise DomainError(
            f"escape accordion needs an even number of folds >= 2, got k={k!r} (Lemma 3.3)")
    if not d > 0:
        raise DomainError(f"d must be > 0, got {d!r}")
    h = theta / 2.0
    clearance = k * d * math.sin(h) * math.cos(h)
    margin = clearance - 1.0
    return Clearance(margin >= -EXACT_TOL, clearance, margin)


def default_fold_count(theta: float, d: float) -> int:
    """Smallest even k with ``k d sin(theta/2) >= 1/cos(theta/2)``."""
    if not d > 0:
        raise DomainError(f"d must be > 0, got {d!r}")
    ratio = escape_min_kd(theta) / d
    k = 2 * math.ceil(ratio / 2.0 * (1.0 - EXACT_TOL))
    return max(k, 2)


def accordion_spacing(theta: float, k: int) -> float:
    """Spacing that makes a k-fold accordion clear by exactly one width."""
    if int(k) != k or k < 2 or k % 2:
        raise DomainError(
            f"escape accordion needs an even number of folds >= 2, got k={k!r} (Lemma 3.3)")
    return escape_min_kd(theta) / k


def zigzag_vertices(origin: Sequence[float], theta: float, spacings: Sequence[float],
                    ascending_first: bool) -> np.ndarray:
    """Vertices reached from ``origin`` along a zigzag with the given edge spacings.

    Returns an array of shape ``(len(spacings), 2)``; the origin is not
    included. Baseline vertices keep the origin's y exactly, so even runs
    land back on the baseline without drift.
    """
    sp = np.asarray(spacings, dtype=float)
    h = theta / 2.0
    sin_h, cos_h = math.sin(h), math.cos(h)
    x = origin[0] + np.cumsum(sp * sin_h)
    sign = 1.0 if ascending_first else -1.0
    off = (np.arange(len(sp)) % 2) == 0
    y = np.full(len(sp), float(origin[1]))
    y[off] = origin[1] + sign * sp[off] * cos_h
    return np.column_stack([x, y])


def build_zigzag(params: ZigzagParams, start_point: PlanarPoint, start_side: Side,
                 fold_kinds: Sequence[FoldKind],
                 role: FoldRole | None = None) -> tuple[PolylinePath, list[FoldSpec]]:
    """Lay out ``count`` alternating folds as an open path of ``count + 1`` edges.

    A left start makes the first edge descend, so the first fold turns left.
    Serves accordion folds (all overfolds) and half-wrap runs (alternating
    under/over): the knot diagram is the same for both.
    """
    if len(fold_kinds) != params.count:
        raise DomainError(
            f"expected {params.count} fold kinds, got {len(fold_kinds)}")
    start_side = Side(start_side)
    h = params.theta / 2.0
    sin_h, cos_h = math.sin(h), math.cos(h)
    n_edges = params.count + 1
    j = np.arange(n_edges + 1)
    x = start_point.x + j * (params.d * sin_h)
    drop = -params.d * cos_h if start_side is Side.LEFT else params.d * cos_h
    y = np.where(j % 2 == 1, start_point.y + drop, start_point.y)
    path = PolylinePath(np.column_stack([x, y]), closed=False)
    folds = []
    side = start_side
    for kind in fold_kinds:
        folds.append(FoldSpec(side, FoldKind(kind), params.theta, role))
        side = side.flipped()
    return path, folds


def interior_angle(prev: np.ndarray, here: np.ndarray, nxt: np.ndarray) -> float:
    """Angle at ``here`` between the segments to ``prev`` and ``nxt``."""
    a = prev - here
    b = nxt - here
    cross = a[0] * b[1] - a[1] * b[0]
    dot = a[0] * b[0] + a[1] * b[1]
    return abs(math.atan2(cross, dot))


def turn_side(prev: np.ndarray, here: np.ndarray, nxt: np.ndarray) -> Side:
    """Side the path turns toward at ``here``; straight or reversed counts as left."""
    a = here - prev
    b = nxt - here
    cross = a[0] * b[1] - a[1] * b[0]
    return Side.RIGHT if cross < -EXACT_TOL * math.hypot(*a) * math.hypot(*b) else Side.LEFT
