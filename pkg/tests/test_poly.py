from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qnyquist.errors import ZeroConstantDenominator
from qnyquist.poly import (
    Polynomial,
    cauchy_bound,
    imag_part_polynomial,
    isolate_positive_roots,
    modulus_squared_polynomial,
    poly_eval_complex,
    poly_gcd,
    real_part_polynomial,
    series_div,
    square_free_decomposition,
    sturm_sequence,
    to_scalar,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=6)


def polys(min_size=0, max_size=6):
    return st.lists(rationals, min_size=min_size, max_size=max_size).map(Polynomial)


def nonzero_const_polys(max_size=6):
    return st.tuples(rationals.filter(bool), st.lists(rationals, max_size=max_size - 1)).map(
        lambda t: Polynomial([t[0], *t[1]])
    )


def test_to_scalar():
    assert to_scalar("3/4") == Fraction(3, 4)
    assert to_scalar(0.25) == Fraction(1, 4)
    assert to_scalar(7) == 7
    with pytest.raises((TypeError, ValueError)):
        to_scalar(object())


def test_basic_shape():
    p = Polynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree() == 1
    assert Polynomial([]).degree() == -1 and Polynomial([0, 0]).is_zero()
    assert p[5] == 0
    assert Polynomial([0, 0, 3]).valuation() == 2


def test_format_descending():
    assert Polynomial([1, 2, 6, 2]).format() == "2*s^3 + 6*s^2 + 2*s + 1"
    assert Polynomial([0, 0, Fraction(1, 2)]).format() == "1/2*s^2"
    assert Polynomial([-1, 0, -3]).format("x") == "-3*x^2 - 1"


def test_arithmetic():
    p, q = Polynomial([1, 1]), Polynomial([-1, 1])
    assert p * q == Polynomial([-1, 0, 1])
    assert p + q == Polynomial([0, 2])
    assert p - p == Polynomial([])
    assert p**3 == Polynomial([1, 3, 3, 1])
    assert p.shift(2) == Polynomial([0, 0, 1, 1])
    assert Polynomial([0, 0, 1, 1]).shift(-2) == p
    assert Polynomial([1, 2, 3]).reversed() == Polynomial([3, 2, 1])
    assert Polynomial([1, 2, 3]).derivative() == Polynomial([2, 6])
    assert Polynomial([1, 2, 3])(2) == 17


def test_divmod_known():
    q, r = Polynomial([-1, 0, 1]).divmod(Polynomial([1, 1]))
    assert q == Polynomial([-1, 1]) and r.is_zero()
    with pytest.raises(ZeroDivisionError):
        Polynomial([1]).divmod(Polynomial([]))


@given(polys(), polys(min_size=1).filter(lambda p: not p.is_zero()))
@settings(max_examples=150, deadline=None)
def test_divmod_identity(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree() < b.degree()


def test_gcd_monic():
    a = Polynomial([-1, 0, 1]) * Polynomial([2, 1])
    b = Polynomial([1, 1]) * Polynomial([5, 0, 1])
    assert poly_gcd(a, b) == Polynomial([1, 1])


def test_series_div_known():
    # 1/(1 - s) = 1 + s + s^2 + ...
    assert list(series_div(Polynomial([1]), Polynomial([1, -1]), 5)) == [1] * 6
    s = series_div(Polynomial([35, 12, 1]), Polynomial([9, 28, 30, 12, 1]), 1)
    assert list(s) == [Fraction(35, 9), Fraction(-872, 81)]
    with pytest.raises(IndexError):
        s[2]
    with pytest.raises(ZeroConstantDenominator):
        series_div(Polynomial([1]), Polynomial([0, 1]), 3)


@given(polys(max_size=5), nonzero_const_polys(max_size=5))
@settings(max_examples=150, deadline=None)
def test_series_div_inverts_multiplication(p, q):
    prod = p * q
    series = series_div(prod, q, 8)
    assert list(series) == [p[k] for k in range(9)]


def test_even_odd_parts_reconstruct():
    p = Polynomial([3, -2, 5, 7, 1])
    for w in (0.3, 1.7):
        ne, no = p.even_part(), p.odd_part()
        direct = poly_eval_complex(p, 1j * w)
        assert direct == pytest.approx(ne(Fraction(w * w)) + 1j * w * no(Fraction(w * w)))


def test_part_polynomials():
    # G = 1/(1+s): G(jw) = (1 - jw)/(1 + w^2)
    num, den = Polynomial([1]), Polynomial([1, 1])
    assert real_part_polynomial(num, den) == Polynomial([1])
    assert imag_part_polynomial(num, den) == Polynomial([-1])
    assert modulus_squared_polynomial(den) == Polynomial([1, 1])


def test_square_free():
    p = Polynomial([-1, 1]) ** 2 * Polynomial([2, 1])
    parts = square_free_decomposition(p)
    assert sorted((f.coeffs, m) for f, m in parts) == [((-1, 1), 2), ((2, 1), 1)]


def test_sturm_and_bounds():
    p = Polynomial([-2, 0, 1])
    seq = sturm_sequence(p)
    assert seq[0] == p and seq[1] == p.derivative()
    assert cauchy_bound(p) >= 2 ** 0.5


def test_isolate_known_roots():
    # roots 1/3, 2, 5 and a negative one that must be ignored
    p = Polynomial([-1, 3]) * Polynomial([-2, 1]) * Polynomial([-5, 1]) * Polynomial([4, 1])
    found = isolate_positive_roots(p)
    assert len(found) == 3
    for (lo, hi), root in zip(found, (Fraction(1, 3), 2, 5)):
        assert lo <= root <= hi
        assert hi - lo < Fraction(1, 10**12)


@given(st.lists(st.fractions(min_value=Fraction(1, 8), max_value=20, max_denominator=8),
                min_size=1, max_size=5, unique=True))
@settings(max_examples=80, deadline=None)
def test_isolate_matches_planted_roots(roots):
    p = Polynomial([1])
    for r in roots:
        p = p * Polynomial([-r, 1])
    found = isolate_positive_roots(p)
    assert len(found) == len(roots)
    for (lo, hi), r in zip(found, sorted(roots)):
        assert lo <= r <= hi


def test_isolate_against_numpy():
    rng = np.random.default_rng(3)
    for _ in range(40):
        coeffs = [Fraction(int(c)) for c in rng.integers(-9, 10, size=7)]
        coeffs[-1] = coeffs[-1] or Fraction(1)
        p = Polynomial(coeffs)
        sf = Polynomial([1])
        for f, _ in square_free_decomposition(p):
            sf = sf * f
        ref = sorted(r.real for r in np.roots([float(c) for c in reversed(sf.coeffs)])
                     if abs(r.imag) < 1e-7 and r.real > 1e-9)
        got = [float((lo + hi) / 2) for lo, hi in isolate_positive_roots(sf)]
        assert got == pytest.approx(ref, rel=1e-6, abs=1e-9)
