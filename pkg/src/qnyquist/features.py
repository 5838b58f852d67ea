"""Features between and around the endpoints: real-axis crossings, the
vertical asymptote for a single origin pole, endpoint tangents and the
frequency sweep used for rendering and validation.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .errors import DegenerateOnAxis
from .poly import (
    Polynomial,
    imag_part_polynomial,
    isolate_positive_roots,
    modulus_squared_polynomial,
    poly_gcd,
    real_part_polynomial,
    square_free_decomposition,
)
from .taylor import g_all
from .xfer import TransferFunction, Which, endpoints

CROSSING_METHOD = "exact Sturm root isolation of the imaginary-part polynomial in w^2"


@dataclass(frozen=True)
class AxisCrossing:
    omega: float
    real_value: float
    multiplicity_hint: int = 1
    # isolating interval for w^2, exact
    u_interval: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def to_dict(self) -> dict:
        return {
            "omega": self.omega,
            "real_value": self.real_value,
            "multiplicity_hint": self.multiplicity_hint,
            "omega_squared_interval": [str(self.u_interval[0]), str(self.u_interval[1])],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AxisCrossing":
        lo, hi = d.get("omega_squared_interval", ["0", "0"])
        return cls(
            float(d["omega"]),
            float(d["real_value"]),
            int(d.get("multiplicity_hint", 1)),
            (Fraction(lo), Fraction(hi)),
        )


def crossing_polynomial(tf: TransferFunction) -> Polynomial:
    """Exact polynomial in ``u = w^2`` whose positive roots are the crossings.

    ``(jw)^(-h)`` rotates the response by ``-h pi/2``: for even ``h`` the
    imaginary part of the full response is a multiple of ``Im G``, for odd
    ``h`` a multiple of ``Re G``.
    """
    if tf.origin_poles % 2 == 0:
        return imag_part_polynomial(tf.num, tf.den)
    return real_part_polynomial(tf.num, tf.den)


def imaginary_axis_poles(tf: TransferFunction, width=Fraction(1, 10**12)) -> List[float]:
    """Positive ``w`` where ``den(jw) = 0``; the plot passes through infinity there."""
    d2 = modulus_squared_polynomial(tf.den)
    out = []
    for factor, _ in square_free_decomposition(d2):
        out.extend(math.sqrt(float((lo + hi) / 2)) for lo, hi in isolate_positive_roots(factor, width))
    return sorted(out)


def real_axis_crossings(tf: TransferFunction, width=Fraction(1, 10**12)) -> List[AxisCrossing]:
    """Positive frequencies where the full response is real, sorted by frequency.

    Roots shared with ``|den(jw)|^2`` are poles on the imaginary axis, not
    crossings, and are left out (see :func:`imaginary_axis_poles`).
    Raises :class:`DegenerateOnAxis` when the response is real everywhere.
    """
    q = crossing_polynomial(tf)
    if q.is_zero():
        raise DegenerateOnAxis("the frequency response is real at every frequency")
    d2 = modulus_squared_polynomial(tf.den)
    found = []
    for factor, mult in square_free_decomposition(q):
        factor = factor // poly_gcd(factor, d2)
        for lo, hi in isolate_positive_roots(factor, width):
            u = (lo + hi) / 2
            w = math.sqrt(float(u))
            found.append(AxisCrossing(w, float(tf.frequency_response(w).real), mult, (lo, hi)))
    found.sort(key=lambda c: c.omega)
    return found


@dataclass(frozen=True)
class Asymptote:
    abscissa: Fraction
    kind: str = "vertical_line"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "abscissa": str(self.abscissa), "abscissa_float": float(self.abscissa)}

    @classmethod
    def from_dict(cls, d: dict) -> "Asymptote":
        return cls(Fraction(d["abscissa"]), d.get("kind", "vertical_line"))


def asymptote_abscissa(tf: TransferFunction) -> Optional[Asymptote]:
    """Vertical asymptote ``Re = K G_1`` of a plot with exactly one origin pole.

    ``K/(jw) (G_0 + j G_1 w + O(w^2))`` has real part ``K G_1 + O(w^2)``.
    """
    if tf.origin_poles != 1:
        return None
    return Asymptote(tf.gain * g_all(tf, 1))


@dataclass(frozen=True)
class TangentVector:
    end: Which
    direction: complex
    omega: float

    def to_dict(self) -> dict:
        return {
            "end": self.end.value,
            "direction": [self.direction.real, self.direction.imag],
            "omega": self.omega,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TangentVector":
        re, im = d["direction"]
        return cls(Which(d["end"]), complex(re, im), float(d["omega"]))


def _central_tangent(tf, omega, rel_step):
    h = omega * rel_step
    hi, lo, mid = tf.frequency_response(np.array([omega + h, omega - h, omega]))
    diff = hi - lo
    return diff / (2 * h), abs(diff), abs(mid)


def tangent_vectors(
    tf: TransferFunction,
    omega_start: float = 1e-6,
    omega_end: float = 1e6,
    rel_step: float = 0.1,
    max_backoff: int = 8,
) -> Tuple[Optional[TangentVector], Optional[TangentVector]]:
    """Unit tangents ``dG/dw`` at the start and end of the plot.

    Central differences at ``omega_start`` and ``omega_end``.  When the
    difference sinks into rounding noise (high-order first terms) the
    evaluation frequency is moved a decade toward the middle, at most
    ``max_backoff`` times.  None for a constant response.
    """
    if tf.is_constant():
        return None, None
    out = []
    for end, omega, step in ((Which.START, omega_start, 10.0), (Which.END, omega_end, 0.1)):
        vec = None
        w = omega
        for _ in range(max_backoff + 1):
            d, spread, size = _central_tangent(tf, w, rel_step)
            if spread > 1e-12 * size and abs(d) > 0 and np.isfinite(d):
                vec = TangentVector(end, complex(d / abs(d)), w)
                break
            w *= step
        out.append(vec)
    return out[0], out[1]


@dataclass(frozen=True)
class SweepSample:
    omega: float
    value: complex
    modulus: float
    phase_unwrapped: float


def default_omega_range(tf: TransferFunction) -> Tuple[float, float]:
    """``1e-3 .. 1e3`` times the geometric mean of the root magnitudes.

    For each nonconstant polynomial ``|c_0/c_deg|^(1/deg)`` is the geometric
    mean of its root magnitudes (and of its consecutive coefficient ratios);
    numerator and denominator are pooled weighted by degree.
    """
    log_sum, deg_sum = 0.0, 0
    for p in (tf.num, tf.den):
        d = p.degree()
        if d > 0:
            log_sum += math.log(abs(p[0])) - math.log(abs(p.leading()))
            deg_sum += d
    scale = math.exp(log_sum / deg_sum) if deg_sum else 1.0
    return 1e-3 * scale, 1e3 * scale


def sweep_arrays(tf, omega_min, omega_max, points_per_decade, max_passes=12):
    """Frequencies, values and unwrapped phase of a log-spaced sweep.

    Intervals whose wrapped phase step exceeds pi/4 are split geometrically
    (up to ``max_passes`` rounds) so that unwrapping stays unambiguous near
    sharp resonances.  The phase is shifted by a multiple of 2 pi so the first
    sample sits nearest the start-point phase.
    """
    if not 0 < omega_min < omega_max:
        raise ValueError("need 0 < omega_min < omega_max")
    if points_per_decade < 1:
        raise ValueError("points_per_decade must be >= 1")
    decades = math.log10(omega_max / omega_min)
    count = max(2, int(math.ceil(decades * points_per_decade)) + 1)
    w = np.logspace(math.log10(omega_min), math.log10(omega_max), count)
    g = tf.frequency_response(w)
    for _ in range(max_passes):
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.abs(np.angle(g[1:] / g[:-1]))
        bad = np.nonzero(step > np.pi / 4)[0]  # NaN (exact zeros) compares False
        if bad.size == 0:
            break
        mids = np.sqrt(w[bad] * w[bad + 1])
        w = np.insert(w, bad + 1, mids)
        g = np.insert(g, bad + 1, tf.frequency_response(mids))
    phase = np.unwrap(np.angle(g))
    start, _ = endpoints(tf)
    phase = phase + 2 * np.pi * np.round((start.phase_radians - phase[0]) / (2 * np.pi))
    return w, g, phase


def sweep(tf: TransferFunction, omega_min: float, omega_max: float, points_per_decade: int) -> List[SweepSample]:
    w, g, phase = sweep_arrays(tf, omega_min, omega_max, points_per_decade)
    return [
        SweepSample(float(wi), complex(gi), float(abs(gi)), float(pi))
        for wi, gi, pi in zip(w, g, phase)
    ]
