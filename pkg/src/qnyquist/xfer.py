"""Transfer-function data model.

A transfer function is held as ``K / s^h * G(s)`` with ``G = num/den`` and
both constant terms nonzero.  Coefficients are ascending: the expression
``2s^3+6s^2+2s+1`` (descending, as usually written) becomes ``[1, 2, 6, 2]``.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ZeroDenominator, ZeroNumerator
from .parsing import parse_rational
from .poly import Polynomial, as_polynomial, to_scalar

# j**k for k mod 4
_J_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class TransferFunction:
    """``gain / s^origin_poles * num(s) / den(s)``.

    Construction factors common powers of ``s`` out of ``num`` and ``den``
    into ``origin_poles`` so that ``num[0]`` and ``den[0]`` are nonzero.
    Common factors other than powers of ``s`` are left alone.
    """

    num: Polynomial
    den: Polynomial
    gain: Fraction = Fraction(1)
    origin_poles: int = 0

    def __post_init__(self):
        num, den = as_polynomial(self.num), as_polynomial(self.den)
        gain = to_scalar(self.gain)
        if den.is_zero():
            raise ZeroDenominator("denominator is identically zero")
        if num.is_zero():
            raise ZeroNumerator("numerator is identically zero")
        if gain == 0:
            raise ZeroNumerator("gain is zero")
        vn, vd = num.valuation(), den.valuation()
        object.__setattr__(self, "num", num.shift(-vn))
        object.__setattr__(self, "den", den.shift(-vd))
        object.__setattr__(self, "gain", gain)
        object.__setattr__(self, "origin_poles", int(self.origin_poles) + vd - vn)

    @property
    def m(self) -> int:
        return self.num.degree()

    @property
    def n(self) -> int:
        return self.den.degree()

    @property
    def relative_degree(self) -> int:
        """``r = h + n - m``."""
        return self.origin_poles + self.n - self.m

    r = relative_degree

    @property
    def g0(self) -> Fraction:
        return self.num[0] / self.den[0]

    @property
    def ginf(self) -> Fraction:
        return self.num.leading() / self.den.leading()

    def is_constant(self) -> bool:
        return self.origin_poles == 0 and self.m == 0 and self.n == 0

    def g_part(self) -> "TransferFunction":
        """The rational factor ``G(s)`` alone (unit gain, no origin poles)."""
        if self.gain == 1 and self.origin_poles == 0:
            return self
        return TransferFunction(self.num, self.den)

    def __call__(self, omega):
        return self.frequency_response(omega)

    def frequency_response(self, omega):
        """Floating evaluation of the full response at ``s = j*omega``.

        ``omega`` may be a scalar or an array of positive frequencies.
        """
        w = np.asarray(omega, dtype=float)
        z = 1j * w
        num = np.polyval(self.num.float_coeffs()[::-1], z)
        den = np.polyval(self.den.float_coeffs()[::-1], z)
        h = self.origin_poles
        rot = _J_POWERS[(-h) % 4]
        val = float(self.gain) * rot * np.power(w, -float(h)) * num / den
        return val if val.ndim else complex(val)

    def __str__(self):
        return format_tf(self)


def parse_tf(text: str) -> TransferFunction:
    """Parse an expression such as ``"(s^2+12s+35)/(s*(s^4+12s^3+30s^2+28s+9))"``."""
    gain, num, den = parse_rational(text)
    return TransferFunction(num, den, gain)


def format_tf(tf: TransferFunction) -> str:
    """Expression that :func:`parse_tf` maps back to an identical ``tf``."""
    num = f"({tf.num.format()})"
    den = f"({tf.den.format()})"
    h = tf.origin_poles
    if h > 0:
        den = f"(s^{h}*{den})"
    elif h < 0:
        num = f"s^{-h}*{num}"
    return f"{tf.gain}*{num}/{den}"


def to_document(tf: TransferFunction) -> dict:
    return {
        "gain": str(tf.gain),
        "origin_poles": tf.origin_poles,
        "num": [str(c) for c in tf.num.coeffs],
        "den": [str(c) for c in tf.den.coeffs],
    }


def from_document(doc: dict) -> TransferFunction:
    """Build a transfer function from the structured form written by :func:`to_document`.

    Extra keys are ignored.  Coefficient lists are ascending powers.
    """
    try:
        num, den = doc["num"], doc["den"]
    except KeyError as exc:
        raise ValueError(f"transfer-function document lacks {exc.args[0]!r}") from None
    return TransferFunction(
        Polynomial(num),
        Polynomial(den),
        to_scalar(doc.get("gain", "1")),
        int(doc.get("origin_poles", 0)),
    )


def dualize(tf: TransferFunction) -> TransferFunction:
    """Reverse both coefficient sequences.

    The result is ``tf`` rewritten in ``1/s``: ``K * (1/s)^(-r) * num~/den~``
    with ``num~[i] = num[m-i]`` and ``den~[j] = den[n-j]``, so its
    ``origin_poles`` is ``-r``.  Dualizing twice gives ``tf`` back.
    """
    return TransferFunction(
        tf.num.reversed(), tf.den.reversed(), tf.gain, -tf.relative_degree
    )


class Which(str, enum.Enum):
    START = "start"
    END = "end"


class ModulusKind(str, enum.Enum):
    ZERO = "zero"
    FINITE = "finite"
    INFINITE = "infinite"


def _arg_pi(x: Fraction) -> Fraction:
    return Fraction(0) if x > 0 else Fraction(1)


@dataclass(frozen=True)
class EndpointSummary:
    """Limit point of the plot at ``w -> 0+`` (start) or ``w -> inf`` (end).

    ``phase`` is an unreduced rational multiple of pi; ``modulus`` is set only
    for finite endpoints.
    """

    which_end: Which
    modulus_kind: ModulusKind
    phase: Fraction
    g_value: Fraction
    modulus: Optional[Fraction] = None

    @property
    def phase_radians(self) -> float:
        return float(self.phase) * np.pi

    def point(self) -> Optional[complex]:
        """Location in the plane, or None when the endpoint is at infinity."""
        if self.modulus_kind is ModulusKind.INFINITE:
            return None
        if self.modulus_kind is ModulusKind.ZERO:
            return 0j
        return complex(float(self.modulus) * np.exp(1j * self.phase_radians))

    def to_dict(self) -> dict:
        return {
            "which_end": self.which_end.value,
            "modulus_kind": self.modulus_kind.value,
            "modulus": None if self.modulus is None else str(self.modulus),
            "phase_over_pi": str(self.phase),
            "g_value": str(self.g_value),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EndpointSummary":
        return cls(
            Which(d["which_end"]),
            ModulusKind(d["modulus_kind"]),
            Fraction(d["phase_over_pi"]),
            Fraction(d["g_value"]),
            None if d.get("modulus") is None else Fraction(d["modulus"]),
        )


def _kind(exponent: int) -> ModulusKind:
    # modulus of K/w^exponent as the relevant limit is approached
    if exponent > 0:
        return ModulusKind.INFINITE
    if exponent < 0:
        return ModulusKind.ZERO
    return ModulusKind.FINITE


def endpoints(tf: TransferFunction):
    """Start and end summaries of the plot.

    Start: ``|K| |G0| / w^h`` and phase ``arg K - h pi/2 + arg G0``.
    End: ``|K| |Ginf| / w^r`` and phase ``arg K - r pi/2 + arg Ginf``.
    """
    K, h, r = tf.gain, tf.origin_poles, tf.relative_degree
    g0, ginf = tf.g0, tf.ginf
    start_kind = _kind(h)
    end_kind = _kind(-r)
    start = EndpointSummary(
        Which.START,
        start_kind,
        _arg_pi(K) - Fraction(h, 2) + _arg_pi(g0),
        g0,
        abs(K * g0) if start_kind is ModulusKind.FINITE else None,
    )
    end = EndpointSummary(
        Which.END,
        end_kind,
        _arg_pi(K) - Fraction(r, 2) + _arg_pi(ginf),
        ginf,
        abs(K * ginf) if end_kind is ModulusKind.FINITE else None,
    )
    return start, end
