from fractions import Fraction

import pytest

from conftest import corpus
from qnyquist import (
    ApproachAxis,
    ModulusTrend,
    PhaseSense,
    TransferFunction,
    Which,
    classify_entry,
    classify_exit,
    parse_tf,
)
from qnyquist.classify import EndpointBehavior, LiftedBehavior, approach_direction, lift_to_gbar
from qnyquist.features import tangent_vectors


def _inner(tf):
    return TransferFunction(tf.num, tf.den)


def test_case1(case1):
    ex, en = classify_exit(case1), classify_entry(case1)
    assert (ex.archetype, ex.panel, ex.motion) == (1, "b", "counter-clockwise")
    assert (ex.k_odd, ex.h_even, ex.delta_k, ex.delta_h) == (3, 2, 4, -1)
    assert not ex.modulus_borderline
    assert en.archetype == 4 and en.panel == "a"
    assert en.phase_sense is PhaseSense.LAG
    assert en.modulus_trend is ModulusTrend.APPROACH_FROM_ABOVE
    # 2k <= h at the end: the even-term verdict is flagged, and here it agrees
    assert en.modulus_borderline and en.modulus_trend_exact is en.modulus_trend


def test_case2(case2):
    ex, en = classify_exit(case2), classify_entry(case2)
    assert ex.archetype == 2 and ex.approach_axis is ApproachAxis.PERPENDICULAR_TO_REAL
    assert ex.modulus_trend is ModulusTrend.DECREASING_FROM_M0
    assert en.archetype == 2 and en.approach_axis is ApproachAxis.PARALLEL_TO_REAL
    assert en.modulus_trend is ModulusTrend.APPROACH_FROM_BELOW
    assert (en.k_odd, en.delta_k) == (3, 88)


def test_degenerate_cases():
    real = classify_exit(parse_tf("(1+s^2)/(2+s^2)"))
    assert real.phase_sense is PhaseSense.ON_REAL_AXIS
    assert real.approach_axis is ApproachAxis.PARALLEL_TO_REAL and real.archetype is None
    assert real.motion is None
    allpass = parse_tf("(1-s)/(1+s)")
    for b in (classify_exit(allpass), classify_entry(allpass)):
        assert b.modulus_trend is ModulusTrend.CONSTANT_MODULUS
    const = classify_exit(parse_tf("3"))
    assert const.approach_axis is ApproachAxis.DEGENERATE and approach_direction(const) is None


def test_odd_only_increases_modulus():
    # real part stays G0 while the imaginary part grows
    b = classify_exit(parse_tf("(1+s)/(1+s^4)"))
    assert b.h_even == 4 and b.k_odd == 1


def test_negative_reference_rotates_frame():
    tf = parse_tf("(s-2)/(s+1)")  # G0 = -2, Ginf = 1
    ex, en = classify_exit(tf), classify_entry(tf)
    assert ex.frame_rotation == 1 and en.frame_rotation == 0


@pytest.mark.parametrize("text", [
    "(2s^3+6s^2+2s+1)/(4s^3+5s^2+2s+1)",
    "(s-2)/(s+1)",
    "(s^2+3)/(s^3+2s^2+2s+5)",
    "(1+s)/(1+s^4)",
])
def test_predicted_direction_matches_tangent(text):
    g = _inner(parse_tf(text))
    # the entry is read in the frame of G (jw)^r, which has a finite end point
    start, _ = tangent_vectors(g)
    _, end = tangent_vectors(TransferFunction(g.num, g.den, 1, -g.relative_degree))
    for behavior, measured in ((classify_exit(g), start), (classify_entry(g), end)):
        predicted = approach_direction(behavior)
        assert abs(predicted - measured.direction) < 0.05, (behavior.end, predicted, measured)


def test_lift():
    tf = parse_tf("-1/(s^2 (s+1))")
    lifted = lift_to_gbar(classify_exit(tf), tf)
    assert lifted.rotation == 0  # pi - 2 pi/2
    assert lifted.behavior.modulus_trend is ModulusTrend.DOMINATED_BY_ORIGIN_POLES
    end = lift_to_gbar(classify_entry(tf), tf)
    assert end.rotation == Fraction(-1, 2)
    assert LiftedBehavior.from_dict(end.to_dict()) == end


def test_round_trip_over_corpus():
    for tf in corpus(100, seed=31):
        for b in (classify_exit(tf), classify_entry(tf)):
            assert EndpointBehavior.from_dict(b.to_dict()) == b
            assert b.end in (Which.START, Which.END)
