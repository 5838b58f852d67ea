"""Qualitative behaviour of the plot next to its start and end points.

Near the start, with ``k`` the first odd and ``h`` the first even (>= 2)
index whose Taylor coefficient is nonzero::

    G(jw) ~ G_0 (1 + Dh w^h + j Dk w^k)

so the sign of ``Dk`` decides the phase offset, the sign of ``Dh`` the
modulus trend, and ``k < h`` (perpendicular) versus ``k > h`` (parallel) the
direction in which the curve leaves the real axis.  The end point is the
same analysis on the reversed coefficients, where the odd term enters with
a minus sign::

    G(jw) ~ G_inf (1 + Dh~ / w^h - j Dk~ / w^k)

Archetypes 1-4 label the quadrant the curve occupies next to the endpoint,
in the frame where ``G_0`` (or ``G_inf``) is positive: 1 above/left,
2 below/left, 3 above/right, 4 below/right.
"""

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .taylor import DeltaTauSeries, delta_tau_series
from .xfer import EndpointSummary, ModulusKind, TransferFunction, Which, dualize, endpoints


class PhaseSense(str, enum.Enum):
    LEAD = "lead"
    LAG = "lag"
    ON_REAL_AXIS = "on_real_axis"


class ModulusTrend(str, enum.Enum):
    INCREASING_FROM_M0 = "increasing_from_m0"
    DECREASING_FROM_M0 = "decreasing_from_m0"
    APPROACH_FROM_ABOVE = "approach_from_above"
    APPROACH_FROM_BELOW = "approach_from_below"
    CONSTANT_MODULUS = "constant_modulus"
    DOMINATED_BY_ORIGIN_POLES = "dominated_by_origin_poles"


class ApproachAxis(str, enum.Enum):
    PERPENDICULAR_TO_REAL = "perpendicular_to_real"
    PARALLEL_TO_REAL = "parallel_to_real"
    DEGENERATE = "degenerate"


# (sign of odd term, sign of even term) -> archetype, for the start point.
# The end point uses the same table with the odd sign flipped.
_ARCHETYPE = {(1, -1): 1, (-1, -1): 2, (1, 1): 3, (-1, 1): 4}


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class EndpointBehavior:
    end: Which
    phase_sense: PhaseSense
    modulus_trend: ModulusTrend
    approach_axis: ApproachAxis
    archetype: Optional[int]
    k_odd: Optional[int]
    h_even: Optional[int]
    delta_k: Optional[Fraction] = None
    delta_h: Optional[Fraction] = None
    # True when 2*k_odd <= h_even: the imaginary part can overturn the
    # modulus verdict, which is then reported as the even-term rule gives it
    modulus_borderline: bool = False
    # rotation (multiple of pi) from the frame archetypes are drawn in to the plot
    frame_rotation: Fraction = Fraction(0)
    # trend read off the exact modulus deviation; differs from modulus_trend
    # only in the borderline regime
    modulus_trend_exact: Optional[ModulusTrend] = None

    @property
    def panel(self) -> Optional[str]:
        """'a' for perpendicular approaches, 'b' for parallel ones."""
        if self.approach_axis is ApproachAxis.PERPENDICULAR_TO_REAL:
            return "a"
        if self.approach_axis is ApproachAxis.PARALLEL_TO_REAL:
            return "b"
        return None

    @property
    def motion(self) -> Optional[str]:
        """Sense of rotation about the origin as w increases."""
        if self.phase_sense is PhaseSense.ON_REAL_AXIS:
            return None
        lead = self.phase_sense is PhaseSense.LEAD
        if self.end is Which.END:
            lead = not lead
        return "counter-clockwise" if lead else "clockwise"

    def to_dict(self) -> dict:
        return {
            "end": self.end.value,
            "phase_sense": self.phase_sense.value,
            "modulus_trend": self.modulus_trend.value,
            "approach_axis": self.approach_axis.value,
            "archetype": self.archetype,
            "panel": self.panel,
            "motion": self.motion,
            "k_odd": self.k_odd,
            "h_even": self.h_even,
            "delta_k": None if self.delta_k is None else str(self.delta_k),
            "delta_h": None if self.delta_h is None else str(self.delta_h),
            "modulus_borderline": self.modulus_borderline,
            "frame_rotation_over_pi": str(self.frame_rotation),
            "modulus_trend_exact": None
            if self.modulus_trend_exact is None
            else self.modulus_trend_exact.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EndpointBehavior":
        return cls(
            end=Which(d["end"]),
            phase_sense=PhaseSense(d["phase_sense"]),
            modulus_trend=ModulusTrend(d["modulus_trend"]),
            approach_axis=ApproachAxis(d["approach_axis"]),
            archetype=d.get("archetype"),
            k_odd=d.get("k_odd"),
            h_even=d.get("h_even"),
            delta_k=None if d.get("delta_k") is None else Fraction(d["delta_k"]),
            delta_h=None if d.get("delta_h") is None else Fraction(d["delta_h"]),
            modulus_borderline=bool(d.get("modulus_borderline", False)),
            frame_rotation=Fraction(d.get("frame_rotation_over_pi", "0")),
            modulus_trend_exact=None
            if d.get("modulus_trend_exact") is None
            else ModulusTrend(d["modulus_trend_exact"]),
        )


def _classify(series: DeltaTauSeries, end: Which, g_ref: Fraction) -> EndpointBehavior:
    k, h = series.first_nonzero_odd, series.first_nonzero_even
    dk, dh = series.delta_k, series.delta_h
    odd_sign = 0 if dk is None else _sign(dk)
    if end is Which.END:
        odd_sign = -odd_sign

    if series.degenerate_imag:
        phase = PhaseSense.ON_REAL_AXIS
    else:
        phase = PhaseSense.LEAD if odd_sign > 0 else PhaseSense.LAG

    up, down = (
        (ModulusTrend.INCREASING_FROM_M0, ModulusTrend.DECREASING_FROM_M0)
        if end is Which.START
        else (ModulusTrend.APPROACH_FROM_ABOVE, ModulusTrend.APPROACH_FROM_BELOW)
    )
    if series.degenerate_modulus:
        trend = ModulusTrend.CONSTANT_MODULUS
    elif dh is not None:
        trend = up if dh > 0 else down
    else:
        # real part constant, imaginary part not: |G|^2 = G_0^2 + Im^2 grows
        trend = up

    if k is None and h is None:
        axis = ApproachAxis.DEGENERATE
    elif h is None or (k is not None and k < h):
        axis = ApproachAxis.PERPENDICULAR_TO_REAL
    else:
        assert k != h
        axis = ApproachAxis.PARALLEL_TO_REAL

    archetype = None
    if dk is not None and dh is not None:
        archetype = _ARCHETYPE[(odd_sign, _sign(dh))]

    # with either term absent the modulus is settled by the other alone
    borderline = k is not None and h is not None and 2 * k <= h
    if series.modulus_deviation_sign == 0:
        exact = ModulusTrend.CONSTANT_MODULUS
    else:
        exact = up if series.modulus_deviation_sign > 0 else down
    return EndpointBehavior(
        end=end,
        phase_sense=phase,
        modulus_trend=trend,
        approach_axis=axis,
        archetype=archetype,
        k_odd=k,
        h_even=h,
        delta_k=dk,
        delta_h=dh,
        modulus_borderline=borderline,
        frame_rotation=Fraction(0) if g_ref > 0 else Fraction(1),
        modulus_trend_exact=exact,
    )


def classify_exit(tf: TransferFunction, series: Optional[DeltaTauSeries] = None) -> EndpointBehavior:
    """How the plot of ``G`` leaves its start point."""
    if series is None:
        series = delta_tau_series(tf)
    return _classify(series, Which.START, tf.g0)


def classify_entry(tf: TransferFunction, series: Optional[DeltaTauSeries] = None) -> EndpointBehavior:
    """How the plot of ``G`` enters its end point.

    ``series`` is the Delta series of ``dualize(tf)`` if already computed.
    """
    if series is None:
        series = delta_tau_series(dualize(tf))
    return _classify(series, Which.END, tf.ginf)


def approach_direction(behavior: EndpointBehavior) -> Optional[complex]:
    """Unit tangent ``dG/dw`` predicted at the endpoint, in the plot of ``G``.

    Start: perpendicular exits move along ``j sign(Dk)``, parallel ones along
    ``sign(Dh)``.  End: perpendicular entries arrive along ``j sign(Dk~)``,
    parallel ones along ``-sign(Dh~)``.  The result is rotated by the
    endpoint's frame (pi when ``G_0`` or ``G_inf`` is negative).
    """
    if behavior.approach_axis is ApproachAxis.DEGENERATE:
        return None
    start = behavior.end is Which.START
    if behavior.approach_axis is ApproachAxis.PERPENDICULAR_TO_REAL:
        d = 1j * _sign(behavior.delta_k)
    else:
        d = complex(_sign(behavior.delta_h) if start else -_sign(behavior.delta_h))
    return -d if behavior.frame_rotation % 2 else d


@dataclass(frozen=True)
class LiftedBehavior:
    """Endpoint behaviour of the full response ``K/s^h G``.

    Phase sense survives the rigid rotation by ``arg K - h pi/2`` (start) or
    ``arg K - r pi/2`` (end).  When the endpoint sits at the origin or at
    infinity the modulus is ruled by the origin factor, so no trend is claimed.
    """

    behavior: EndpointBehavior
    endpoint: EndpointSummary
    rotation: Fraction

    def to_dict(self) -> dict:
        return {
            "behavior": self.behavior.to_dict(),
            "endpoint": self.endpoint.to_dict(),
            "rotation_over_pi": str(self.rotation),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LiftedBehavior":
        return cls(
            EndpointBehavior.from_dict(d["behavior"]),
            EndpointSummary.from_dict(d["endpoint"]),
            Fraction(d["rotation_over_pi"]),
        )


def lift_to_gbar(behavior: EndpointBehavior, tf: TransferFunction) -> LiftedBehavior:
    start, end = endpoints(tf)
    summary = start if behavior.end is Which.START else end
    exponent = tf.origin_poles if behavior.end is Which.START else tf.relative_degree
    arg_k = Fraction(0) if tf.gain > 0 else Fraction(1)
    rotation = arg_k - Fraction(exponent, 2)
    lifted = behavior
    if summary.modulus_kind is not ModulusKind.FINITE:
        lifted = replace(behavior, modulus_trend=ModulusTrend.DOMINATED_BY_ORIGIN_POLES)
    return LiftedBehavior(lifted, summary, rotation)
