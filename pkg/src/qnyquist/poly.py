"""Exact polynomial and truncated power-series arithmetic.

Coefficients are :class:`fractions.Fraction` values stored in ascending
powers: ``Polynomial([1, 2, 5, 4])`` is ``1 + 2 s + 5 s^2 + 4 s^3``.  The zero
polynomial is the empty coefficient tuple.

A frequency response evaluated on the imaginary axis splits as::

    p(jw) = p_even(w^2) + j w p_odd(w^2)

with ``p_even(u) = sum (-1)^i p[2i] u^i`` and ``p_odd(u) = sum (-1)^i p[2i+1] u^i``.
Most of the real/imaginary-part constructions below are built from that split.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import ZeroConstantDenominator

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]


def to_scalar(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"27/16"`` or ``"0.25"``.
    Floats are accepted and converted exactly (binary expansion), which is
    rarely what a caller wants; pass strings for decimal input.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


class Polynomial:
    """Immutable dense polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_scalar(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: ScalarLike = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def __getitem__(self, i: int) -> Fraction:
        # zero-extension: a_i = 0 outside 0..degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __repr__(self):
        return f"Polynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        return self.format()

    def format(self, var: str = "s") -> str:
        """Human-readable form in descending powers, parseable by :func:`qnyquist.parsing.parse_polynomial`."""
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                power = var if i == 1 else f"{var}^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # ring operations

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, factor) -> "Polynomial":
        f = to_scalar(factor)
        return Polynomial(c * f for c in self.coeffs)

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``s^k`` (k >= 0) or drop the lowest ``-k`` coefficients (k < 0)."""
        if k >= 0:
            return Polynomial([0] * k + list(self.coeffs)) if self.coeffs else Polynomial()
        return Polynomial(self.coeffs[-k:])

    def reversed(self) -> "Polynomial":
        """Coefficients in reverse order, ``s^deg p(1/s)`` for p(0) != 0."""
        return Polynomial(reversed(self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            q = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return Polynomial(quot), Polynomial(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self.scale(1 / self.coeffs[-1])

    def __call__(self, x):
        """Exact Horner evaluation at a rational (or any number supporting + and *)."""
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        return poly_eval_complex(self, z)

    def even_part(self) -> "Polynomial":
        """``p_even(u)`` with ``Re p(jw) = p_even(w^2)``."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs[::2]))

    def odd_part(self) -> "Polynomial":
        """``p_odd(u)`` with ``Im p(jw) = w p_odd(w^2)``."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs[1::2]))

    def float_coeffs(self):
        return [float(c) for c in self.coeffs]


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


def as_polynomial(x) -> Polynomial:
    """Coerce a coefficient sequence (ascending) or a Polynomial to a Polynomial."""
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction, str)):
        return Polynomial([x])
    return Polynomial(x)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return as_polynomial(p) + as_polynomial(q)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return as_polynomial(p) * as_polynomial(q)


def poly_scale(p: Polynomial, factor) -> Polynomial:
    return as_polynomial(p).scale(factor)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both are zero)."""
    a, b = as_polynomial(p), as_polynomial(q)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_eval_complex(p, z) -> complex:
    """Floating-point Horner evaluation of ``p`` at a complex point.

    ``z`` may be a complex number or a ``(re, im)`` pair.
    """
    if isinstance(z, tuple):
        z = complex(z[0], z[1])
    acc = 0j
    for c in reversed(as_polynomial(p).coeffs):
        acc = acc * z + float(c)
    return complex(acc)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series: coefficients of ``s^0 .. s^order``.

    Coefficients beyond ``order`` are unknown, not zero, so indexing past
    the truncation raises ``IndexError``.
    """

    coeffs: tuple
    order: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_scalar(c) for c in self.coeffs))
        if self.order < 0 or len(self.coeffs) != self.order + 1:
            raise ValueError("a series of order N carries exactly N+1 coefficients")

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)


def series_div(num, den, order: int) -> PowerSeries:
    """First ``order + 1`` Taylor coefficients of ``num/den`` at s = 0.

    Plain long division of power series::

        g_k = (a_k - sum_{j=1..k} g_{k-j} b_j) / b_0

    This route shares no code with the determinant recursions in
    :mod:`qnyquist.taylor` and is used as their oracle.
    """
    num, den = as_polynomial(num), as_polynomial(den)
    if order < 0:
        raise ValueError("order must be >= 0")
    b0 = den[0]
    if b0 == 0:
        raise ZeroConstantDenominator("denominator has a zero constant term")
    g = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, min(k, den.degree()) + 1):
            acc -= g[k - j] * den[j]
        g.append(acc / b0)
    return PowerSeries(tuple(g), order)


def imag_part_polynomial(num, den) -> Polynomial:
    """``Q(u)`` with ``Im[num(jw) conj(den(jw))] = w Q(w^2)``.

    The positive roots ``u`` of ``Q`` are the squared frequencies where
    ``num/den`` crosses the real axis.  ``Q(0) = a_1 b_0 - a_0 b_1``.
    """
    num, den = as_polynomial(num), as_polynomial(den)
    return num.odd_part() * den.even_part() - num.even_part() * den.odd_part()


def real_part_polynomial(num, den) -> Polynomial:
    """``R(u)`` with ``Re[num(jw) conj(den(jw))] = R(w^2)``."""
    num, den = as_polynomial(num), as_polynomial(den)
    u = Polynomial([0, 1])
    return num.even_part() * den.even_part() + u * num.odd_part() * den.odd_part()


def modulus_squared_polynomial(p) -> Polynomial:
    """``M(u)`` with ``|p(jw)|^2 = M(w^2)``."""
    p = as_polynomial(p)
    u = Polynomial([0, 1])
    return p.even_part() ** 2 + u * p.odd_part() ** 2


def square_free_decomposition(p: Polynomial) -> list:
    """Yun's algorithm over Q: ``[(f_1, 1), (f_2, 2), ...]`` with ``p ~ prod f_i^i``.

    Factors are monic and pairwise coprime; constant factors are omitted.
    """
    p = as_polynomial(p)
    if p.degree() < 1:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree() >= 1:
        a = poly_gcd(b, d)
        b_next = b // a
        c = d // a
        if a.degree() >= 1:
            out.append((a.monic(), i))
        b = b_next
        d = c - b.derivative()
        i += 1
    return out


def sturm_sequence(p: Polynomial) -> list:
    """Sturm chain ``p, p', -rem(p, p'), ...`` of a square-free polynomial."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sign_variations(seq: Sequence[Polynomial], x) -> int:
    signs = []
    for q in seq:
        v = q(x)
        if v:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every root of ``p`` lies in ``|x| <= bound``."""
    lead = abs(p.leading())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_positive_roots(p: Polynomial, width=Fraction(1, 10**12)) -> list:
    """Disjoint rational intervals, each holding exactly one positive root.

    ``p`` must be square-free.  Every interval ``(lo, hi)`` has ``p(lo)`` and
    ``p(hi)`` of opposite sign (or ``lo == hi`` for an exact rational root)
    and ``hi - lo < width`` as well as ``hi - lo < width * lo``.  Intervals
    are returned in increasing order.
    """
    p = as_polynomial(p)
    if p.degree() < 1:
        return []
    v = p.valuation()
    if v:
        p = p.shift(-v)  # roots at zero are not positive
        if p.degree() < 1:
            return []
    width = to_scalar(width)
    chain = sturm_sequence(p)
    hi = cauchy_bound(p)
    out = []
    stack = [(Fraction(0), hi)]
    while stack:
        a, b = stack.pop()
        count = sign_variations(chain, a) - sign_variations(chain, b)
        if count == 0:
            continue
        if count == 1:
            out.append(_refine(p, a, b, width))
            continue
        mid = _split_point(p, a, b)
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def _split_point(p, a, b):
    # avoid splitting exactly on a root; Sturm counts need p(split) != 0
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5)):
        m = a + (b - a) * num / den
        if p(m) != 0:
            return m
    raise AssertionError("unreachable: a square-free polynomial has finitely many roots")


def _refine(p, a, b, width):
    # (a, b] holds one simple root and p(a) != 0; p(b) may vanish
    fb = p(b)
    if fb == 0:
        return (b, b)
    fa = p(a)
    while (b - a) >= width or (b - a) >= width * a:
        m = (a + b) / 2
        fm = p(m)
        if fm == 0:
            return (m, m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a, b)
