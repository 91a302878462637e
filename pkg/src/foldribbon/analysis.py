"""Ribbonlength evaluation, fold-angle optimization and bound bookkeeping."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import mpmath
from scipy import optimize

from .constructions import (
    SQRT3,
    ConstructionParams,
    Family,
    Parity,
    RibbonDiagram,
    _torus_n,
    family_rib_formula,
    ledger_total,
    moebius_rib_formula,
)
from .errors import DomainError, NumericalError, UnsupportedInputError
from .geometry import FoldRole, FoldSpec, PolylinePath, fold_angle, path_length

#: Search interval for the optimal fold angle.
THETA_BRACKET = (0.1, math.pi - 0.1)


def ribbonlength(diagram: RibbonDiagram) -> float:
    """Folded ribbonlength Len / w with w = 1."""
    return path_length(diagram.centerline)


def rib_theta_derivative(theta: float) -> float:
    """d/dtheta of the d-independent part of the Moebius ribbonlength.

    Factored form ``(s + 1)^2 (2 s - 1) / (2 c^2 s^2)`` with
    ``s = sin(theta/2)``, ``c = cos(theta/2)``; its sign is that of
    ``2 s - 1``, so the only critical point in (0, pi) is pi/3.
    """
    theta = fold_angle(theta)
    s, c = math.sin(theta / 2.0), math.cos(theta / 2.0)
    return (s + 1.0) ** 2 * (2.0 * s - 1.0) / (2.0 * c * c * s * s)


def _moebius_limit_mp(theta):
    h = theta / 2
    c, s = mpmath.cos(h), mpmath.sin(h)
    return 2 / c + 1 / (c * s) + mpmath.tan(h)


def golden_section_min(f, lo, hi, tol):
    """Golden-section search for a unimodal minimum on [lo, hi].

    Works on whatever number type ``f`` and the bounds use, so it can run
    in extended precision. Returns ``(x, iterations)``.
    """
    invphi = (mpmath.sqrt(5) - 1) / 2 if isinstance(lo, mpmath.mpf) else (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol:
        it += 1
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if it > 10_000:
            raise NumericalError("golden-section search did not converge")
    return (a + b) / 2, it


class Optimum(NamedTuple):
    theta: float
    value: float
    iterations: int
    cross_check_theta: float
    cross_check_iterations: int


def optimal_theta(tolerance: float = 1e-9) -> Optimum:
    """Fold angle minimizing the d -> 0 Moebius ribbonlength.

    The primary route is Brent's bracketed root finder on the closed-form
    derivative. The cross-check minimizes the ribbonlength itself by
    golden-section search, evaluated in 30-digit arithmetic: in doubles a
    value-only search cannot locate a quadratic minimum better than about
    sqrt(machine epsilon). Both estimates must agree within ``tolerance``.
    """
    if not (tolerance > 0 and math.isfinite(tolerance)):
        raise DomainError(f"tolerance must be > 0, got {tolerance!r}")
    lo, hi = THETA_BRACKET
    xtol = max(tolerance / 4.0, 1e-15)
    try:
        root, info = optimize.brentq(rib_theta_derivative, lo, hi, xtol=xtol,
                                     full_output=True)
    except ValueError as exc:
        raise NumericalError(f"derivative does not change sign on {THETA_BRACKET}") from exc
    if not info.converged:
        raise NumericalError(f"root finding failed: {info.flag}")
    with mpmath.workdps(30):
        gs, gs_it = golden_section_min(_moebius_limit_mp, mpmath.mpf(lo), mpmath.mpf(hi),
                                       mpmath.mpf(tolerance) / 4)
        gs = float(gs)
    if abs(gs - root) > tolerance:
        raise NumericalError(
            f"optimizers disagree: root {root!r} vs golden section {gs!r}")
    return Optimum(root, moebius_rib_formula(root, 0.0, 0), info.iterations, gs, gs_it)


def derivative_roots(lo: float = 0.2, hi: float = 2.9, samples: int = 2000,
                     xtol: float = 1e-13) -> list[float]:
    """All sign changes of the derivative on a grid, refined by Brent's method."""
    step = (hi - lo) / samples
    grid = [lo + i * step for i in range(samples + 1)]
    vals = [rib_theta_derivative(t) for t in grid]
    roots = []
    for a, b, fa, fb in zip(grid, grid[1:], vals, vals[1:]):
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(optimize.brentq(rib_theta_derivative, a, b, xtol=xtol))
    return roots


_LIMITS = {
    Family.MOEBIUS: 3.0 * SQRT3,
    Family.TORUS2Q: 8.0 * SQRT3,
    Family.TWIST_ODD: 9.0 * SQRT3 + 2.0,
    Family.TWIST_EVEN: 8.0 * SQRT3 + 2.0,
}


def limit_rib(family, parity=None) -> float:
    """The d -> 0 ribbonlength of a family (at theta = pi/3)."""
    if isinstance(family, str) and family.replace("-", "_") == "twist":
        if parity is None:
            raise DomainError("twist family needs a parity")
        family = Family.TWIST_ODD if Parity(parity) is Parity.ODD else Family.TWIST_EVEN
    family = Family.parse(family)
    if parity is not None and family in (Family.TWIST_ODD, Family.TWIST_EVEN):
        expected = Family.TWIST_ODD if Parity(parity) is Parity.ODD else Family.TWIST_EVEN
        if expected is not family:
            raise DomainError(f"parity {parity!r} contradicts family {family.value}")
    return _LIMITS[family]


def torus_crossing_number(p: int, q: int) -> int:
    """Crossing number min((p-1) q, p (q-1)) of the T(p, q) torus link."""
    for v in (p, q):
        if int(v) != v or v < 2:
            raise DomainError(f"torus parameters must be integers >= 2, got ({p!r}, {q!r})")
    p, q = int(p), int(q)
    return min((p - 1) * q, p * (q - 1))


def kny_bound(crossing_number: int) -> float:
    """General upper bound 2.5 Cr + 1 on folded ribbonlength."""
    if crossing_number < 0:
        raise DomainError(f"crossing number must be >= 0, got {crossing_number!r}")
    return 2.5 * crossing_number + 1.0


@dataclass(frozen=True)
class BoundRow:
    q: int
    crossing_number: int
    construction_bound: float
    kny_bound: float


def comparison_table(q_values: Iterable[int]) -> list[BoundRow]:
    """Construction bound (d -> 0) against 2.5 Cr + 1 for (2, q)-torus knots."""
    rows = []
    for q in q_values:
        _torus_n(q)
        cr = torus_crossing_number(2, q)
        rows.append(BoundRow(int(q), cr, limit_rib(Family.TORUS2Q), kny_bound(cr)))
    return rows


def ribbon_linking_number(diagram) -> int:
    """Ribbon linking number by the fold-counting rule.

    Accordion fold pairs cancel, closure, clasp and join folds contribute
    nothing, and each half-wrap adds +1 (a fixed orientation convention;
    the opposite orientation negates every count). Accepts a diagram or
    any sequence of role-tagged fold specs.
    """
    folds = diagram.folds if isinstance(diagram, RibbonDiagram) else list(diagram)
    total = 0
    for f in folds:
        if not isinstance(f, FoldSpec) or f.role is None:
            raise UnsupportedInputError(
                "linking count needs folds tagged with their construction role")
        if f.role is FoldRole.HALF_WRAP:
            total += 1
    return total


class BandType(str, enum.Enum):
    MOEBIUS_BAND = "moebius_band"
    ANNULUS = "annulus"


def band_type(diagram) -> BandType:
    """Odd edge count gives a Moebius band, even an annulus."""
    path = diagram.centerline if isinstance(diagram, RibbonDiagram) else diagram
    if not isinstance(path, PolylinePath) or not path.closed:
        raise DomainError("band type is only defined for a closed diagram")
    edges = len(path.vertices) - 1
    return BandType.MOEBIUS_BAND if edges % 2 else BandType.ANNULUS


@dataclass(frozen=True)
class ReferenceConstant:
    name: str
    value: float
    citation: str


def reference_constants(n: int = 1) -> list[ReferenceConstant]:
    """Published comparison values; ``n`` sets the unknot annulus entry 2n."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return [
        ReferenceConstant("pentagon_trefoil", 5.0 / math.tan(math.pi / 5.0),
                          "pentagonal folded ribbon trefoil, 5 cot(pi/5)"),
        ReferenceConstant("trefoil_construction", 6.0, "folded ribbon trefoil constructions"),
        ReferenceConstant("unknot_annulus_lk_n", 2.0 * n,
                          "folded ribbon unknot annulus with linking number n"),
        ReferenceConstant("moebius_lower_bound", SQRT3, "embedded paper Moebius band bound"),
        ReferenceConstant("three_half_twist_bound", 3.0, "3 half-twist paper Moebius band"),
        ReferenceConstant("twisted_cylinder_bound", 2.0, "twisted paper cylinder"),
        ReferenceConstant("hennessey_general", 8.0, "earlier general bound"),
        ReferenceConstant("hennessey_moebius", 6.5, "earlier multi-twist Moebius band bound"),
        ReferenceConstant("hennessey_annulus", 7.45, "earlier multi-twist annulus bound"),
        ReferenceConstant("this_construction_moebius", 3.0 * SQRT3,
                          "escape accordion construction at theta = pi/3"),
    ]


@dataclass(frozen=True)
class RibbonlengthReport:
    formula_value: float
    oracle_value: float
    limit_d_zero: float
    ledger: tuple
    params: ConstructionParams

    @property
    def family(self) -> Family:
        return self.params.family

    @property
    def ledger_total(self) -> float:
        return ledger_total(self.ledger)

    @property
    def discrepancy(self) -> float:
        return abs(self.formula_value - self.oracle_value)


def analyze(diagram: RibbonDiagram) -> RibbonlengthReport:
    """Closed-form value, polyline oracle and d -> 0 limit for a built diagram."""
    params = diagram.params
    if params.family is Family.MOEBIUS:
        limit = moebius_rib_formula(params.theta, 0.0, params.n)
    else:
        limit = limit_rib(params.family)
    return RibbonlengthReport(
        formula_value=family_rib_formula(params),
        oracle_value=ribbonlength(diagram),
        limit_d_zero=limit,
        ledger=tuple(diagram.ledger),
        params=params,
    )
