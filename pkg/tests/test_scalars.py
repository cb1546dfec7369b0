import math
import random
from fractions import Fraction

import pytest

from hha.scalars import (
    ComplexScalar,
    FieldMismatchError,
    Scalar,
    ScalarField,
    ZERO,
    ONE,
    complex_str,
    floating,
    parse_complex,
    parse_scalar,
    quadratic,
    rational,
    root,
    scalar_str,
    sign_of,
)


def test_sign_both_parts_positive():
    assert sign_of(quadratic(1, 2, 2)) == 1


def test_sign_integer_comparison_positive():
    # 3 - 2*sqrt(2): compare 9 against 8
    assert sign_of(quadratic(3, -2, 2)) == 1


def test_sign_integer_comparison_negative():
    # 1 - sqrt(2): compare 1 against 2
    assert sign_of(quadratic(1, -1, 2)) == -1


def test_sign_zero_cases():
    assert sign_of(ZERO) == 0
    assert sign_of(quadratic(2, -1, 4) if False else rational(0)) == 0
    # sqrt(2)*sqrt(2) - 2 == 0
    s = root(2) * root(2) - rational(2)
    assert sign_of(s) == 0


def test_rational_collapse():
    s = quadratic(1, 1, 2) - root(2)
    assert s.is_rational
    assert s == rational(1)


def test_arithmetic_in_quadratic_field():
    s = root(2)
    assert s * s == rational(2)
    assert (ONE + s) * (ONE - s) == rational(-1)
    inv = (rational(3) - 2 * s).inverse()
    assert (rational(3) - 2 * s) * inv == ONE
    assert (s / 2) * 2 == s


def test_power_and_galois_conjugate():
    s = quadratic(1, 1, 5)
    assert s ** 3 == s * s * s
    assert s ** 0 == ONE
    assert s.galois_conjugate() == quadratic(1, -1, 5)
    assert (s * s.galois_conjugate()).is_rational


def test_field_mismatch_rejected():
    with pytest.raises(FieldMismatchError):
        root(2) + root(3)


def test_square_free_validation():
    with pytest.raises(Exception):
        quadratic(0, 1, 8)
    with pytest.raises(Exception):
        quadratic(0, 1, 1)


def test_ordering():
    assert rational(1, 3) < rational(1, 2)
    assert root(2) > rational(1)
    assert root(2) < rational(3, 2)
    assert quadratic(0, 1, 2) >= quadratic(0, 1, 2)


def test_random_signs_match_float(seed=7, trials=200):
    rng = random.Random(seed)
    for _ in range(trials):
        a = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        b = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        s = Scalar(a, b, 7) if b else Scalar(a)
        approx = float(a) + float(b) * math.sqrt(7)
        if abs(approx) > 1e-9:
            assert s.sign() == (1 if approx > 0 else -1)


def test_scalar_str_round_trip():
    cases = [
        rational(3, 4),
        rational(-2),
        ZERO,
        root(2),
        -root(2),
        quadratic(1, 2, 2),
        quadratic(Fraction(1, 2), Fraction(-3, 4), 5),
    ]
    for s in cases:
        assert parse_scalar(scalar_str(s)) == s


def test_parse_rejects_garbage():
    for bad in ["", "1//2", "sqrt(2", "1 2", "x"]:
        with pytest.raises(Exception):
            parse_scalar(bad)


def test_float_backend_tolerance():
    x = floating(1.0)
    y = floating(1.0 + 1e-12)
    assert x == y
    assert sign_of(floating(1e-12)) == 0
    assert sign_of(floating(1e-6)) == 1
    z = x + rational(1, 2)
    assert z.is_float


def test_complex_conjugation_involution():
    z = ComplexScalar(quadratic(1, 1, 2), rational(-3, 7))
    assert z.conjugate().conjugate() == z


def test_complex_abs2_positive_definite():
    z = ComplexScalar(rational(3, 5), rational(-4, 5))
    assert z.abs2() == ONE
    assert sign_of(ComplexScalar(ZERO, ZERO).abs2()) == 0
    rng = random.Random(3)
    for _ in range(50):
        w = ComplexScalar(rational(rng.randint(-9, 9), 7), rational(rng.randint(-9, 9), 5))
        assert sign_of(w.abs2()) >= 0
        assert (sign_of(w.abs2()) == 0) == w.is_zero()


def test_complex_arithmetic():
    i = ComplexScalar(ZERO, ONE)
    assert i * i == ComplexScalar(rational(-1))
    z = ComplexScalar(rational(1), rational(2))
    assert z * z.inverse() == ComplexScalar(ONE)
    assert z.times_i() == i * z


def test_complex_str_round_trip():
    cases = [
        ComplexScalar(rational(1)),
        ComplexScalar(ZERO, rational(-1, 2)),
        ComplexScalar(quadratic(1, 1, 2), rational(3)),
    ]
    for z in cases:
        assert parse_complex(complex_str(z)) == z


def test_scalar_field_membership():
    q = ScalarField("quadratic", 2)
    assert q.contains(root(2))
    assert q.contains(rational(5))
    assert not q.contains(root(3))
    r = ScalarField("rational")
    assert not r.contains(root(2))
    f = ScalarField("float")
    assert f.coerce(root(2)).is_float
