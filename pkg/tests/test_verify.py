import random

from conftest import CASE1, CASE2
from qnyquist import delta_tau_series, dualize, parse_tf
from qnyquist.verify import (
    _corrupt,
    check_crossings,
    check_duality,
    check_phase_signs,
    random_tf,
    sweep_sign_changes,
    verify_corpus,
    verify_tf,
)


def test_case_studies_pass():
    for text in (CASE1, CASE2):
        results = verify_tf(parse_tf(text))
        assert all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_constant_is_skipped():
    (r,) = verify_tf(parse_tf("7"))
    assert r.skipped and r.passed and r.line().startswith("SKIP")


def test_injected_fault_is_caught():
    results = verify_tf(parse_tf(CASE2), fault="delta_table")
    failed = {r.name for r in results if not r.passed}
    assert "recursions" in " ".join(failed)
    assert any(r.line().startswith("FAIL") for r in results)


def test_phase_check_catches_wrong_sign():
    tf = parse_tf(CASE1)
    start, end = delta_tau_series(tf), delta_tau_series(dualize(tf))
    assert all(r.passed for r in check_phase_signs(tf, start, end))
    assert not all(r.passed for r in check_phase_signs(tf, _corrupt(start), end))


def test_random_tf_shape():
    rng = random.Random(0)
    for _ in range(200):
        tf = random_tf(rng)
        coeffs = tf.num.coeffs + tf.den.coeffs
        assert -2 <= tf.origin_poles <= 2
        assert tf.num.degree() <= 8 and tf.den.degree() <= 8
        assert all(-10 <= c <= 10 for c in coeffs)
    # planting solves for a coefficient, so small denominators hold only without it
    for _ in range(200):
        tf = random_tf(rng, plant_rate=0)
        assert all(c.denominator <= 4 for c in tf.num.coeffs + tf.den.coeffs)


def test_small_corpus_passes():
    for tf, results in verify_corpus(40, seed=123):
        assert all(r.passed for r in results), (str(tf), [r.line() for r in results if not r.passed])


def test_sign_changes_and_crossings(case2):
    assert len(sweep_sign_changes(case2)) == 1
    assert check_crossings(case2).passed
    assert check_duality(case2).passed
