"""Self-checks: the analysis against independent oracles.

Each check compares one analytic result with something computed a different
way: the two coefficient recursions against plain series division, the
closed form against the recursion, the sign rules against a floating
evaluation of the response, the asymptote against the response at a very
low frequency, and the exact crossings against sign changes on a dense
sweep.  :func:`random_tf` draws the corpus used by ``verify --trials``.
"""

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .classify import (
    ApproachAxis,
    ModulusTrend,
    PhaseSense,
    classify_entry,
    classify_exit,
)
from .errors import DegenerateOnAxis
from .features import (
    asymptote_abscissa,
    imaginary_axis_poles,
    real_axis_crossings,
)
from .poly import Polynomial, modulus_squared_polynomial, series_div
from .taylor import (
    DeltaTauSeries,
    all_coefficients,
    delta_tau_series,
    delta_tau_via_nabla,
    odd_coefficients,
)
from .xfer import TransferFunction, dualize

FAULTS = ("delta_table",)

# offsets predicted below this size are lost in rounding and not checked
PREDICTION_FLOOR = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _ok(name, detail=""):
    return CheckResult(name, True, detail)


def _fail(name, detail):
    return CheckResult(name, False, detail)


def _skip(name, detail):
    return CheckResult(name, True, detail, skipped=True)


def _sign(x) -> int:
    return int(x > 0) - int(x < 0)


# -- corpus -----------------------------------------------------------------


def _coef(rng: random.Random, nonzero: bool) -> Fraction:
    while True:
        q = rng.randint(1, 4)
        c = Fraction(rng.randint(-10 * q, 10 * q), q)
        if c or not nonzero:
            return c


def _poly(rng, degree, zero_rate):
    coeffs = [_coef(rng, True)]
    for _ in range(1, degree):
        coeffs.append(Fraction(0) if rng.random() < zero_rate else _coef(rng, False))
    if degree:
        coeffs.append(_coef(rng, True))
    return coeffs


def _plant(a, b):
    """Make ``a_1 b_0 = a_0 b_1`` in place when that keeps the ranges and degrees."""
    if len(a) < 2 or len(b) < 2:
        return
    a1 = a[0] * b[1] / b[0]
    b1 = b[0] * a[1] / a[0]
    if abs(a1) <= 10 and (len(a) > 2 or a1 != 0):
        a[1] = a1
    elif abs(b1) <= 10 and (len(b) > 2 or b1 != 0):
        b[1] = b1


def random_tf(
    rng: random.Random,
    max_degree: int = 8,
    origin_poles=(-2, 2),
    zero_rate: float = 0.15,
    plant_rate: float = 1 / 3,
    allow_axis_poles: bool = False,
) -> TransferFunction:
    """Random transfer function with rational coefficients in [-10, 10].

    Denominators are ``1..4``; ``a_0, b_0, a_m, b_n`` are nonzero and inner
    coefficients are zero with probability ``zero_rate``.  With probability
    ``plant_rate`` the first odd Taylor coefficient is forced to zero
    (``a_1 b_0 = a_0 b_1``), and independently the same on the reversed
    coefficients, so higher odd indices and the non-borderline modulus
    regime get exercised at both ends.  Poles on the imaginary axis are rejected
    unless ``allow_axis_poles``.
    """
    while True:
        m = rng.randint(0, max_degree)
        n = rng.randint(0, max_degree)
        a = _poly(rng, m, zero_rate)
        b = _poly(rng, n, zero_rate)
        if rng.random() < plant_rate:
            _plant(a, b)
        if rng.random() < plant_rate:
            # same at the end point, on the reversed coefficients
            ra, rb = a[::-1], b[::-1]
            _plant(ra, rb)
            a, b = ra[::-1], rb[::-1]
        h = rng.randint(*origin_poles)
        tf = TransferFunction(Polynomial(a), Polynomial(b), _coef(rng, True), h)
        if tf.m != m or tf.n != n:
            continue  # a planted zero landed on a constant or leading term
        if not allow_axis_poles and imaginary_axis_poles(tf):
            continue
        return tf


# -- checks -----------------------------------------------------------------


def check_recursions(tf, series: DeltaTauSeries, k_max: int = 12) -> CheckResult:
    name = "recursions agree with series division"
    oracle = series_div(tf.num, tf.den, k_max)
    full = list(series.g[: k_max + 1])
    if len(full) <= k_max:
        full += all_coefficients(tf, k_max)[len(full):]
    for k in range(k_max + 1):
        if full[k] != oracle[k]:
            return _fail(name, f"G_{k}: recursion {full[k]} vs division {oracle[k]}")
    odd = odd_coefficients(tf, k_max - (k_max + 1) % 2)
    for k, v in odd.items():
        if v != oracle[k]:
            return _fail(name, f"odd G_{k}: {v} vs division {oracle[k]}")
    return _ok(name, f"k <= {k_max}")


def check_closed_form(tf, series: DeltaTauSeries) -> CheckResult:
    name = "closed form for the first odd term"
    k = series.first_nonzero_odd
    if k is None:
        return _skip(name, "no nonzero odd term")
    checked = 0
    for j in range(1, k + 1, 2):
        value = series.values[j] if j <= series.order else series.delta_k
        closed = delta_tau_via_nabla(tf, j)
        if closed != value:
            return _fail(name, f"k={j}: closed form {closed} vs table {value}")
        checked += 1
    return _ok(name, f"{checked} odd indices")


def check_duality(tf) -> CheckResult:
    name = "duality"
    dual = dualize(tf)
    if dualize(dual) != tf:
        return _fail(name, "dualize twice is not the identity")
    entry = classify_entry(tf)
    mirrored = classify_exit(dual)
    flip_phase = {PhaseSense.LEAD: PhaseSense.LAG, PhaseSense.LAG: PhaseSense.LEAD}
    flip_arch = {1: 2, 2: 1, 3: 4, 4: 3, None: None}
    to_end = {
        ModulusTrend.INCREASING_FROM_M0: ModulusTrend.APPROACH_FROM_ABOVE,
        ModulusTrend.DECREASING_FROM_M0: ModulusTrend.APPROACH_FROM_BELOW,
        ModulusTrend.CONSTANT_MODULUS: ModulusTrend.CONSTANT_MODULUS,
    }
    expected = (
        flip_phase.get(mirrored.phase_sense, mirrored.phase_sense),
        to_end[mirrored.modulus_trend],
        mirrored.approach_axis,
        flip_arch[mirrored.archetype],
        mirrored.k_odd,
        mirrored.h_even,
    )
    got = (
        entry.phase_sense,
        entry.modulus_trend,
        entry.approach_axis,
        entry.archetype,
        entry.k_odd,
        entry.h_even,
    )
    if got != expected:
        return _fail(name, f"entry {got} vs mirrored exit of dual {expected}")
    return _ok(name)


def _normalized(tf, omega, at_start):
    """Response divided by its leading term ``K G_ref / (jw)^e`` at that end."""
    e, ref = (tf.origin_poles, tf.g0) if at_start else (tf.relative_degree, tf.ginf)
    g = complex(tf.frequency_response(omega))
    return g * (1j * omega) ** e / float(tf.gain * ref)


def check_phase_signs(tf, start: DeltaTauSeries, end: DeltaTauSeries, low=1e-4, high=1e4):
    """Sign of the measured phase offset against the odd-term prediction."""
    out = []
    for where, series, omega, flip in (("start", start, low, 1), ("end", end, high, -1)):
        name = f"phase sense at {where}"
        k = series.first_nonzero_odd
        if k is None:
            out.append(_skip(name, "response of G is real"))
            continue
        dk = series.delta_k
        small = low if where == "start" else 1 / high
        predicted = abs(float(dk)) * small**k
        if predicted < PREDICTION_FLOOR:
            out.append(_skip(name, f"predicted offset {predicted:.1e} below floor"))
            continue
        measured = _sign(_normalized(tf, omega, where == "start").imag)
        want = flip * _sign(dk)
        if measured != want:
            out.append(_fail(name, f"w={omega:g}: measured sign {measured}, predicted {want}"))
        else:
            out.append(_ok(name, f"k={k}"))
    return out


def check_modulus_trends(tf, start: DeltaTauSeries, end: DeltaTauSeries, low=1e-4, high=1e4):
    """Sign of ``|G| - |G_ref|`` against the even-term rule, where it is proven."""
    out = []
    for where, series, omega in (("start", start, low), ("end", end, high)):
        name = f"modulus trend at {where}"
        k, h = series.first_nonzero_odd, series.first_nonzero_even
        if series.degenerate_modulus:
            out.append(_skip(name, "constant modulus"))
            continue
        if h is None or (k is not None and 2 * k <= h):
            out.append(_skip(name, "outside the regime 2k > h"))
            continue
        small = low if where == "start" else 1 / high
        predicted = abs(float(series.delta_h)) * small**h
        if predicted < PREDICTION_FLOOR:
            out.append(_skip(name, f"predicted change {predicted:.1e} below floor"))
            continue
        ratio = abs(_normalized(tf, omega, where == "start"))
        measured = _sign(ratio - 1.0)
        want = _sign(series.delta_h)
        if measured != want:
            out.append(_fail(name, f"w={omega:g}: |G/G_ref| - 1 has sign {measured}, predicted {want}"))
        else:
            out.append(_ok(name, f"h={h}"))
    return out


def check_asymptote(tf, omega: float = 1e-6) -> CheckResult:
    name = "asymptote abscissa"
    asym = asymptote_abscissa(tf)
    if asym is None:
        return _skip(name, "not a single origin pole")
    sigma = float(asym.abscissa)
    measured = complex(tf.frequency_response(omega)).real
    tol = 1e-3 * max(1.0, abs(sigma))
    if abs(measured - sigma) >= tol:
        return _fail(name, f"Re at w={omega:g} is {measured}, sigma_a = {asym.abscissa}")
    return _ok(name, f"sigma_a = {asym.abscissa}")


def sweep_sign_changes(tf, lo=1e-4, hi=1e4, per_decade=200, noise=1e-12):
    """Intervals ``(w_i, w_j)`` over which ``Im`` of the full response changes sign.

    Samples with ``|Im| <= noise * |value|`` carry no reliable sign and are
    skipped; a change is recorded between consecutive signed samples.
    """
    count = int(round(math.log10(hi / lo) * per_decade)) + 1
    w = np.logspace(math.log10(lo), math.log10(hi), count)
    g = tf.frequency_response(w)
    signed = np.abs(g.imag) > noise * np.abs(g)
    idx = np.nonzero(signed)[0]
    s = np.sign(g.imag[idx])
    flips = np.nonzero(s[1:] != s[:-1])[0]
    return [(float(w[idx[i]]), float(w[idx[i + 1]])) for i in flips]


def _local_sign_change(tf, omega):
    for rel in (1e-6, 1e-5, 1e-4, 1e-3):
        a, b = tf.frequency_response(np.array([omega * (1 - rel), omega * (1 + rel)]))
        if min(abs(a.imag) / abs(a), abs(b.imag) / abs(b)) > 1e-13:
            return _sign(a.imag) != _sign(b.imag)
    return False


def check_crossings(tf, lo=1e-4, hi=1e4, per_decade=200) -> CheckResult:
    name = "crossings against sweep"
    try:
        crossings = real_axis_crossings(tf)
    except DegenerateOnAxis:
        return _skip(name, "response real everywhere")
    poles = imaginary_axis_poles(tf)
    inside = [c for c in crossings if lo <= c.omega <= hi]
    for a, b in sweep_sign_changes(tf, lo, hi, per_decade):
        hits = [c for c in inside if a <= c.omega <= b and c.multiplicity_hint % 2]
        if any(a <= p <= b for p in poles):
            continue  # through infinity, not across the axis
        if len(hits) != 1:
            return _fail(name, f"sign change in [{a:.6g}, {b:.6g}] holds {len(hits)} crossings")
    for c in inside:
        if c.multiplicity_hint % 2 and not _local_sign_change(tf, c.omega):
            return _fail(name, f"no local sign change at w={c.omega:.9g}")
    return _ok(name, f"{len(inside)} crossings in range")


# -- drivers ----------------------------------------------------------------


def _corrupt(series: DeltaTauSeries) -> DeltaTauSeries:
    k = series.first_nonzero_odd or 1
    if k > series.order:
        return series
    values = list(series.values)
    g = list(series.g)
    values[k] = -values[k] if values[k] else Fraction(1)
    g[k] = -g[k] if g[k] else Fraction(1)
    return replace(series, values=tuple(values), g=tuple(g))


def verify_tf(tf: TransferFunction, fault: Optional[str] = None) -> List[CheckResult]:
    """Run every check on one transfer function.

    ``fault="delta_table"`` corrupts the start Delta table before checking,
    to exercise the failure path.
    """
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    if tf.is_constant():
        return [_skip("all checks", "constant transfer function")]
    start = delta_tau_series(tf)
    end = delta_tau_series(dualize(tf))
    if fault == "delta_table":
        start = _corrupt(start)
    results = [check_recursions(tf, start), check_closed_form(tf, start)]
    if fault is None:
        results.append(check_duality(tf))
    results += check_phase_signs(tf, start, end)
    results += check_modulus_trends(tf, start, end)
    results.append(check_asymptote(tf))
    results.append(check_crossings(tf))
    return results


def verify_corpus(trials: int, seed: int = 0, fault: Optional[str] = None):
    """``(tf, results)`` for ``trials`` random transfer functions."""
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        tf = random_tf(rng)
        out.append((tf, verify_tf(tf, fault)))
    return out
