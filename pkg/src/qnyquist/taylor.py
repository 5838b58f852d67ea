"""Taylor coefficients of G(s) at s = 0 and the normalised Delta parameters.

Everything here works on the rational factor ``G = num/den`` of a
:class:`~qnyquist.xfer.TransferFunction`; gain and origin poles are ignored.
Out-of-range coefficients are zero (``a_i = 0`` for ``i > m``, ``b_j = 0``
for ``j > n``).

Two independent recursions produce the coefficients ``G_k``:

* :func:`g_all` works for every ``k`` from the determinants ``Delta_k0``;
* :func:`g_odd` produces the odd ones only, from ``nabla_k`` and ``B_h``.

Both must agree with plain series division (:func:`qnyquist.poly.series_div`).
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import HypothesisViolated, OddIndexRequired
from .poly import (
    imag_part_polynomial,
    modulus_squared_polynomial,
    real_part_polynomial,
    series_div,
)


def delta_ij(tf, i: int, j: int) -> Fraction:
    """2x2 determinant ``a_i b_j - a_j b_i``."""
    a, b = tf.num, tf.den
    return a[i] * b[j] - a[j] * b[i]


def _check_odd(k):
    if k < 1 or k % 2 == 0:
        raise OddIndexRequired(f"index must be odd and >= 1, got {k}")


def nabla_k(tf, k: int) -> Fraction:
    """``sum_{j=0}^{(k-1)/2} (-1)^j Delta_{k-j, j}`` for odd ``k``."""
    _check_odd(k)
    return sum(
        ((-1) ** j * delta_ij(tf, k - j, j) for j in range((k - 1) // 2 + 1)),
        Fraction(0),
    )


def b_poly(tf, h: int) -> Fraction:
    """``b_h^2 + 2 sum_{j=1}^{h} (-1)^j b_{h-j} b_{h+j}``."""
    if h < 1:
        raise ValueError("h must be >= 1")
    b = tf.den
    acc = b[h] ** 2
    for j in range(1, h + 1):
        acc += 2 * (-1) ** j * b[h - j] * b[h + j]
    return acc


def odd_coefficients(tf, k_max: int) -> dict:
    """``{k: G_k}`` for odd ``k <= k_max`` through the nabla/B recursion."""
    b0sq = tf.den[0] ** 2
    g = {}
    for k in range(1, k_max + 1, 2):
        acc = nabla_k(tf, k)
        for h in range(1, (k - 1) // 2 + 1):
            acc -= (-1) ** h * g[k - 2 * h] * b_poly(tf, h)
        g[k] = acc / b0sq
    return g


def g_odd(tf, k: int) -> Fraction:
    """Odd Taylor coefficient ``G_k`` from the nabla/B recursion."""
    _check_odd(k)
    return odd_coefficients(tf, k)[k]


def all_coefficients(tf, k_max: int) -> list:
    """``[G_0, ..., G_k_max]`` through the ``Delta_k0`` recursion."""
    a, b = tf.num, tf.den
    b0 = b[0]
    b0sq = b0 * b0
    g = [a[0] / b0]
    for k in range(1, k_max + 1):
        acc = Fraction(0)
        for j in range(1, min(k - 1, b.degree()) + 1):
            acc += g[k - j] * b[j]
        g.append((delta_ij(tf, k, 0) - b0 * acc) / b0sq)
    return g


def g_all(tf, k: int) -> Fraction:
    """Taylor coefficient ``G_k`` (any ``k >= 0``) from the ``Delta_k0`` recursion."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return all_coefficients(tf, k)[k]


class Source(str, enum.Enum):
    ODD_RECURSION = "odd_recursion"
    FULL_RECURSION = "full_recursion"
    ORACLE = "oracle"


@dataclass(frozen=True)
class TaylorTable:
    """``G_0 .. G_N``; ``g[k]`` is None for even k when built from the odd recursion."""

    g: tuple
    source: Source
    order: int


def taylor_table(tf, order: int, source: Source = Source.FULL_RECURSION) -> TaylorTable:
    source = Source(source)
    if source is Source.FULL_RECURSION:
        g = all_coefficients(tf, order)
    elif source is Source.ORACLE:
        g = list(series_div(tf.num, tf.den, order))
    else:
        odd = odd_coefficients(tf, order)
        g = [tf.g0] + [odd.get(k) for k in range(1, order + 1)]
    return TaylorTable(tuple(g), source, order)


def default_order(tf) -> int:
    """Truncation that is guaranteed to reach the first nonzero odd and even terms.

    The imaginary part ``w Q(w^2)/|den|^2`` has ``deg Q <= (m+n-1)/2`` and the
    real-part deviation ``(R - G_0 |den|^2)/|den|^2`` has numerator degree
    ``<= max(m, n)`` in ``w^2``, so the first nonzero odd index is ``<= m+n``
    and the first nonzero even index is ``<= 2 max(m, n)`` when they exist.
    """
    m, n = tf.m, tf.n
    return max(m + n + 1, 2 * max(m, n) + 1)


def delta_tau(g, k: int) -> Fraction:
    """``(-1)^floor(k/2) G_k / G_0``."""
    return (-1) ** (k // 2) * g[k] / g[0]


@dataclass(frozen=True)
class DeltaTauSeries:
    """Normalised coefficients ``Delta_tau_k``, ``k = 0..N`` (``values[0] == 1``).

    ``first_nonzero_odd`` / ``first_nonzero_even`` (even index >= 2) are
    searched over the complete bound of :func:`default_order` even when
    ``order`` is smaller, so they are exact.  ``degenerate_imag`` means the
    response of G is real at every frequency; ``degenerate_modulus`` means its
    modulus is constant.
    """

    values: tuple
    g: tuple
    order: int
    first_nonzero_odd: Optional[int]
    first_nonzero_even: Optional[int]
    degenerate_imag: bool
    degenerate_modulus: bool
    even_part_constant: bool = field(default=False)
    # sign of |G(jw)|^2 - G_0^2 for small w, from the exact deviation polynomial
    modulus_deviation_sign: int = field(default=0)

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"Delta_tau_{k} is beyond order {self.order}")
        return self.values[k]

    @property
    def delta_k(self) -> Optional[Fraction]:
        """Value at the first nonzero odd index."""
        k = self.first_nonzero_odd
        return None if k is None else self._at(k)

    @property
    def delta_h(self) -> Optional[Fraction]:
        """Value at the first nonzero even index (>= 2)."""
        h = self.first_nonzero_even
        return None if h is None else self._at(h)

    def _at(self, k):
        if k <= self.order:
            return self.values[k]
        return self._extra[k]

    _extra: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self) -> dict:
        extra = {str(k): str(v) for k, v in sorted(self._extra.items())}
        return {
            "order": self.order,
            "values": [str(v) for v in self.values],
            "values_float": [float(v) for v in self.values],
            "g": [str(v) for v in self.g],
            "first_nonzero_odd": self.first_nonzero_odd,
            "first_nonzero_even": self.first_nonzero_even,
            "degenerate_imag": self.degenerate_imag,
            "degenerate_modulus": self.degenerate_modulus,
            "even_part_constant": self.even_part_constant,
            "modulus_deviation_sign": self.modulus_deviation_sign,
            "beyond_order": extra,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DeltaTauSeries":
        return cls(
            values=tuple(Fraction(v) for v in d["values"]),
            g=tuple(Fraction(v) for v in d["g"]),
            order=int(d["order"]),
            first_nonzero_odd=d.get("first_nonzero_odd"),
            first_nonzero_even=d.get("first_nonzero_even"),
            degenerate_imag=bool(d["degenerate_imag"]),
            degenerate_modulus=bool(d["degenerate_modulus"]),
            even_part_constant=bool(d.get("even_part_constant", False)),
            modulus_deviation_sign=int(d.get("modulus_deviation_sign", 0)),
            _extra={int(k): Fraction(v) for k, v in d.get("beyond_order", {}).items()},
        )


def delta_tau_series(tf, order: Optional[int] = None) -> DeltaTauSeries:
    """Delta parameters of ``G`` up to ``order`` (default :func:`default_order`)."""
    bound = default_order(tf)
    if order is None:
        order = bound
    span = max(order, bound)
    g = all_coefficients(tf, span)
    values = [delta_tau(g, k) for k in range(span + 1)]

    first_odd = next((k for k in range(1, span + 1, 2) if g[k] != 0), None)
    first_even = next((k for k in range(2, span + 1, 2) if g[k] != 0), None)

    num, den = tf.num, tf.den
    degenerate_imag = imag_part_polynomial(num, den).is_zero()
    mod_dev = modulus_squared_polynomial(num).scale(den[0] ** 2) - modulus_squared_polynomial(
        den
    ).scale(num[0] ** 2)
    degenerate_modulus = mod_dev.is_zero()
    lowest = mod_dev[mod_dev.valuation()]
    modulus_sign = (lowest > 0) - (lowest < 0)
    # Re G(jw) - G_0 vanishes identically iff R(u) b_0 - a_0 |den|^2 does
    even_dev = real_part_polynomial(num, den).scale(den[0]) - modulus_squared_polynomial(
        den
    ).scale(num[0])
    even_part_constant = even_dev.is_zero()

    # the completeness bound is a proof obligation; fail loudly if it is ever wrong
    assert (first_odd is None) == degenerate_imag, "odd search bound violated"
    assert (first_even is None) == even_part_constant, "even search bound violated"

    extra = {k: values[k] for k in range(order + 1, span + 1)}
    return DeltaTauSeries(
        values=tuple(values[: order + 1]),
        g=tuple(g[: order + 1]),
        order=order,
        first_nonzero_odd=first_odd,
        first_nonzero_even=first_even,
        degenerate_imag=degenerate_imag,
        degenerate_modulus=degenerate_modulus,
        even_part_constant=even_part_constant,
        modulus_deviation_sign=modulus_sign,
        _extra=extra,
    )


def delta_tau_via_nabla(tf, k: int) -> Fraction:
    """Closed form ``(-1)^((k-1)/2) nabla_k / (a_0 b_0)``.

    Valid only when ``G_1 = G_3 = ... = G_{k-2} = 0``; raises
    :class:`HypothesisViolated` otherwise.
    """
    _check_odd(k)
    if k > 1:
        g = all_coefficients(tf, k - 2)
        bad = [j for j in range(1, k - 1, 2) if g[j] != 0]
        if bad:
            raise HypothesisViolated(
                f"G_{bad[0]} = {g[bad[0]]} is nonzero; closed form needs G_1..G_{k - 2} = 0"
            )
    return (-1) ** ((k - 1) // 2) * nabla_k(tf, k) / (tf.num[0] * tf.den[0])
