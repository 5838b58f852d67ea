"""Small hand-checkable values, one per operation."""

import cmath
import math
from fractions import Fraction

import pytest

from qnyquist import (
    ModulusTrend,
    PhaseSense,
    Polynomial,
    asymptote_abscissa,
    classify_exit,
    dualize,
    endpoints,
    g_all,
    g_odd,
    nabla_k,
    parse_tf,
    real_axis_crossings,
)
from qnyquist.classify import lift_to_gbar
from qnyquist.features import sweep, tangent_vectors
from qnyquist.poly import imag_part_polynomial, poly_eval_complex
from qnyquist.taylor import b_poly, delta_ij

P1 = Polynomial([1, 2, 5, 4])


def test_complex_evaluation():
    assert poly_eval_complex(P1, 0) == 1
    assert poly_eval_complex(Polynomial([1, 0, 1]), 1j) == 0
    assert poly_eval_complex(Polynomial([1, 2, 6, 2]), 1j) == -5


def test_small_algebra():
    assert Polynomial([1, 1]) * Polynomial([1, -1]) == Polynomial([1, 0, -1])
    assert (Polynomial([0]) + Polynomial([0])).is_zero()
    assert Polynomial([1, 2]).scale(3) == Polynomial([3, 6])


def test_imag_part_polynomial(case1):
    assert imag_part_polynomial(Polynomial([1]), Polynomial([1, 1])) == Polynomial([-1])
    assert imag_part_polynomial(case1.num, case1.den)[0] == 0
    assert imag_part_polynomial(P1, P1).is_zero()


def test_dual_coefficients(case1, case2):
    d1 = dualize(case1)
    assert d1.num.coeffs == (2, 6, 2, 1) and d1.den.coeffs == (4, 5, 2, 1)
    assert d1.g0 == Fraction(1, 2)
    d2 = dualize(case2)
    assert d2.num.coeffs == (1, 12, 35) and d2.den.coeffs == (1, 12, 30, 28, 9)
    assert d2.g0 == 1


def test_negative_gain_endpoint():
    start, _ = endpoints(parse_tf("-1/(s+1)"))
    assert start.modulus == 1 and start.phase_radians == pytest.approx(math.pi)


def test_determinant_values(case1):
    assert delta_ij(case1, 1, 0) == 0
    assert delta_ij(case1, 3, 0) == -2
    assert delta_ij(case1, 2, 2) == 0
    assert nabla_k(case1, 1) == 0 and nabla_k(case1, 3) == -4
    assert b_poly(case1, 1) == -6 and b_poly(case1, 2) == 9
    assert b_poly(parse_tf("s+1"), 1) == 0


def test_recursion_values(case1):
    lag = parse_tf("1/(1+s)")
    assert g_odd(case1, 1) == 0 and g_odd(case1, 3) == -4
    assert g_odd(lag, 3) == -1
    assert g_all(case1, 2) == 1 and g_all(case1, 0) == 1


def test_first_order_lag():
    b = classify_exit(parse_tf("1/(1+s)"))
    assert b.phase_sense is PhaseSense.LAG and b.archetype == 2
    assert b.modulus_trend is ModulusTrend.DECREASING_FROM_M0
    assert real_axis_crossings(parse_tf("1/(1+s)")) == []
    start, _ = tangent_vectors(parse_tf("1/(1+s)"))
    assert abs(start.direction + 1j) < 1e-4


def test_lifted(case1, case2):
    lifted = lift_to_gbar(classify_exit(case2), case2)
    assert lifted.behavior.phase_sense is PhaseSense.LAG
    assert lifted.behavior.modulus_trend is ModulusTrend.DOMINATED_BY_ORIGIN_POLES
    assert lifted.endpoint.phase_radians == pytest.approx(-math.pi / 2)
    assert lift_to_gbar(classify_exit(case1), case1).behavior == classify_exit(case1)
    neg = parse_tf("-1/(1+s)")
    lifted = lift_to_gbar(classify_exit(neg), neg)
    assert lifted.behavior.phase_sense is PhaseSense.LAG and lifted.rotation == 1


def test_asymptote_values():
    assert asymptote_abscissa(parse_tf("1/(s(1+s))")).abscissa == -1
    assert asymptote_abscissa(parse_tf("1/(1+s)")) is None


def test_case1_tangents_within_a_degree(case1):
    start, end = tangent_vectors(case1)
    assert abs(cmath.phase(start.direction / -1)) < math.radians(1)
    assert abs(cmath.phase(end.direction / 1j)) < math.radians(1)


def test_constant_sweep():
    assert all(s.value == 1 for s in sweep(parse_tf("1"), 0.1, 10, 5))
