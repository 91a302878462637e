import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import PI_3, SQRT3, spacings, thetas
from foldribbon.analysis import (
    BandType, analyze, band_type, comparison_table, derivative_roots, golden_section_min,
    kny_bound, limit_rib, optimal_theta, reference_constants, rib_theta_derivative,
    ribbon_linking_number, ribbonlength, torus_crossing_number,
)
from foldribbon.constructions import (
    Family, build, build_moebius, build_torus, build_twist, family_rib_formula,
    moebius_rib_formula,
)
from foldribbon.errors import DomainError, UnsupportedInputError
from foldribbon.geometry import FoldKind, FoldRole, FoldSpec, PolylinePath, Side


def square():
    return PolylinePath(np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], dtype=float),
                        closed=True)


def central_difference(theta, h=1e-5):
    f = lambda t: moebius_rib_formula(t, 0.0, 0)  # noqa: E731
    return (f(theta + h) - f(theta - h)) / (2 * h)


# -- ribbonlength ---------------------------------------------------------------

def test_ribbonlength_examples():
    assert ribbonlength(build_moebius(PI_3, n=0, k=6)) == pytest.approx(3 * SQRT3, abs=1e-9)
    dg = build_twist(1, "even", 1e-4)
    assert ribbonlength(dg) == pytest.approx(8 * SQRT3 + 2 + 6e-4, abs=1e-9)


@pytest.mark.slow
def test_ribbonlength_twist_even_tiny_d():
    dg = build_twist(1, "even", 1e-6)
    assert ribbonlength(dg) == pytest.approx(8 * SQRT3 + 2 + 6e-6, abs=1e-9)


# -- derivative ---------------------------------------------------------------------

def test_derivative_examples():
    assert abs(rib_theta_derivative(PI_3)) <= 1e-14
    s = c = math.sqrt(0.5)
    expected = (s + 1) ** 2 * (2 * s - 1) / (2 * c * c * s * s)
    assert rib_theta_derivative(math.pi / 2) == pytest.approx(expected, abs=1e-12)
    assert rib_theta_derivative(math.pi / 2) == pytest.approx(2.414214, abs=1e-6)
    assert central_difference(math.pi / 2) == pytest.approx(expected, abs=1e-6)
    assert rib_theta_derivative(math.pi / 6) < 0


def test_derivative_matches_mpmath_differentiation():
    with mpmath.workdps(40):
        f = lambda t: 2 / mpmath.cos(t / 2) + 1 / (mpmath.cos(t / 2) * mpmath.sin(t / 2)) \
            + mpmath.tan(t / 2)  # noqa: E731
        for theta in np.linspace(0.25, 2.85, 27):
            exact = float(mpmath.diff(f, mpmath.mpf(float(theta))))
            assert rib_theta_derivative(float(theta)) == pytest.approx(exact, rel=1e-12)


def test_derivative_sign_pattern():
    for theta in np.linspace(0.2, 3.0, 100):
        if abs(theta - PI_3) < 1e-12:
            continue
        assert (rib_theta_derivative(theta) < 0) == (theta < PI_3)


@given(st.floats(0.2, 2.9))
def test_derivative_sign_is_that_of_2s_minus_1(theta):
    val = rib_theta_derivative(theta)
    ref = 2 * math.sin(theta / 2) - 1
    if abs(ref) > 1e-12:
        assert math.copysign(1, val) == math.copysign(1, ref)


def test_derivative_roots_only_pi_over_3():
    roots = derivative_roots()
    assert len(roots) == 1
    assert abs(roots[0] - PI_3) <= 1e-9


# -- optimization -------------------------------------------------------------------

def test_optimal_theta():
    opt = optimal_theta(1e-9)
    assert abs(opt.theta - PI_3) <= 1e-9
    assert abs(opt.cross_check_theta - PI_3) <= 1e-9
    assert abs(opt.value - 3 * SQRT3) <= 1e-12
    assert opt.iterations > 0 and opt.cross_check_iterations > 0


@pytest.mark.parametrize("tol", [1e-4, 1e-7, 1e-12])
def test_optimal_theta_tolerances(tol):
    assert abs(optimal_theta(tol).theta - PI_3) <= tol


def test_optimal_theta_rejects_bad_tolerance():
    for tol in (0.0, -1.0, float("nan")):
        with pytest.raises(DomainError):
            optimal_theta(tol)


def test_golden_section_in_doubles():
    x, it = golden_section_min(lambda t: (t - 0.3) ** 2, 0.0, 1.0, 1e-8)
    assert x == pytest.approx(0.3, abs=1e-8)
    assert it > 10


# -- limits and bounds -----------------------------------------------------------------

def test_limit_values():
    assert limit_rib("moebius") == pytest.approx(3 * SQRT3, abs=1e-12) and 3 * SQRT3 <= 5.197
    assert limit_rib("torus2q") == pytest.approx(8 * SQRT3, abs=1e-12)
    assert limit_rib("twist_odd") <= 17.59
    assert limit_rib("twist", "odd") == limit_rib(Family.TWIST_ODD)
    assert limit_rib("twist", "even") == pytest.approx(8 * SQRT3 + 2, abs=1e-12)
    assert limit_rib("twist_even") <= 15.86
    with pytest.raises(DomainError):
        limit_rib("trefoil")
    with pytest.raises(DomainError):
        limit_rib("twist_odd", "even")


def test_limit_equals_formula_at_d_zero():
    assert limit_rib("moebius") == moebius_rib_formula(PI_3, 0.0, 4)
    for fam in ("torus2q", "twist_odd", "twist_even"):
        dg = build(fam, d=0.1, n=2)
        p = dg.params
        at_zero = family_rib_formula(type(p)(p.family, p.theta, p.d, p.n, p.k)) - 6 * p.n * p.d
        assert limit_rib(fam) == pytest.approx(at_zero, abs=1e-12)


def test_crossing_numbers():
    assert torus_crossing_number(2, 5) == 5
    assert all(torus_crossing_number(2, q) == q for q in range(2, 60))
    assert torus_crossing_number(3, 4) == 8
    with pytest.raises(DomainError):
        torus_crossing_number(1, 5)


def test_kny_bound():
    assert kny_bound(3) == 8.5 and kny_bound(0) == 1.0 and kny_bound(101) == 253.5
    with pytest.raises(DomainError):
        kny_bound(-1)


def test_comparison_table():
    rows = comparison_table(range(3, 1002, 2))
    assert rows[0].q == 3 and rows[0].kny_bound == 8.5
    assert rows[2].q == 7 and rows[2].kny_bound == 18.5
    assert {r.construction_bound for r in rows} == {8 * SQRT3}
    assert all(r.crossing_number == r.q for r in rows)
    assert [r.q for r in rows if r.kny_bound < r.construction_bound] == [3, 5]
    with pytest.raises(DomainError):
        comparison_table([4])


# -- topology ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 2, 7])
def test_moebius_linking_and_band(n):
    dg = build_moebius(PI_3, 0.05, n)
    assert ribbon_linking_number(dg) == 2 * n + 1
    assert band_type(dg) is BandType.MOEBIUS_BAND


@given(thetas, spacings, st.integers(0, 15))
def test_moebius_always_odd(theta, d, n):
    dg = build_moebius(theta, d, n)
    assert ribbon_linking_number(dg) % 2 == 1
    assert band_type(dg) is BandType.MOEBIUS_BAND


def test_linking_accordion_only_is_zero():
    folds = [FoldSpec(s, FoldKind.OVERFOLD, PI_3, FoldRole.ACCORDION)
             for s in [Side.LEFT, Side.RIGHT] * 4]
    assert ribbon_linking_number(folds) == 0


def test_linking_needs_roles():
    with pytest.raises(UnsupportedInputError):
        ribbon_linking_number([FoldSpec(Side.LEFT, FoldKind.OVERFOLD, PI_3)])


def test_band_type_by_parity():
    tri = PolylinePath(np.array([[0, 0], [1, 0], [0, 1], [0, 0]], dtype=float), closed=True)
    assert band_type(tri) is BandType.MOEBIUS_BAND
    assert band_type(square()) is BandType.ANNULUS
    with pytest.raises(DomainError):
        band_type(PolylinePath(np.array([[0, 0], [1, 0]], dtype=float)))


def test_other_families_band_and_linking():
    assert band_type(build_torus(5, 0.05)) is BandType.ANNULUS
    assert ribbon_linking_number(build_twist(2, "even", 0.05)) == 4


# -- references and reports ------------------------------------------------------------

def test_reference_constants():
    refs = {r.name: r.value for r in reference_constants()}
    assert refs["pentagon_trefoil"] == pytest.approx(5 / math.tan(math.pi / 5), abs=1e-12)
    assert refs["pentagon_trefoil"] == pytest.approx(6.881910, abs=1e-6)
    assert refs["moebius_lower_bound"] == SQRT3
    assert refs["unknot_annulus_lk_n"] == 2.0
    assert {r.name: r.value for r in reference_constants(4)}["unknot_annulus_lk_n"] == 8.0
    assert refs["this_construction_moebius"] < refs["hennessey_moebius"]
    assert all(r.citation for r in reference_constants())


@pytest.mark.parametrize("family", ["moebius", "torus2q", "twist-odd", "twist-even"])
def test_analyze_report(family):
    rep = analyze(build(family, d=0.02, n=2))
    assert rep.family is Family.parse(family)
    assert rep.discrepancy <= 1e-9
    assert rep.limit_d_zero <= rep.formula_value
    assert rep.ledger_total == pytest.approx(rep.oracle_value, abs=1e-9)
