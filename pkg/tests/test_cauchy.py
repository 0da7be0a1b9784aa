from fractions import Fraction

import pytest

from apery.cauchy import (
    UNKNOWN,
    Enclosure,
    b_over_a_cauchy,
    cauchy_lt,
    constant,
    decimal_digits,
    enclosures_overlap,
    k_certificate,
    z3_cauchy,
    z3_tail_bound_holds,
    z_enclosure,
    zeta3_enclosure,
)
from apery.sequences import a, z

ZETA3_30 = "1.202056903159594285399738161511"  # reference digits, truncated


def test_z3_modulus_examples():
    x = z3_cauchy()
    assert x.modulus(Fraction(1, 8)) == 2
    assert x.modulus(Fraction(1, 9)) == 3
    assert abs(z(10) - z(20)) <= Fraction(1, 200)
    enc = z_enclosure(2)
    assert enc == Enclosure(Fraction(9, 8), Fraction(9, 8) + Fraction(1, 8))
    assert enc.contains(z(3))


def test_z3_modulus_soundness():
    x = z3_cauchy()
    for t in range(1, 7):
        eps = Fraction(1, 10 ** t)
        m = x.modulus(eps)
        assert 2 * m * m * eps >= 1 and (m == 1 or 2 * (m - 1) ** 2 * eps < 1)
        for i in range(m, m + 51, 5):
            for j in range(m, m + 51, 7):
                assert abs(z(i) - z(j)) <= eps


def test_tail_bound():
    for lo in (1, 2, 5, 30):
        assert z3_tail_bound_holds(lo, lo + 60)


def test_b_over_a_terms():
    x = b_over_a_cauchy()
    assert x.term(1) == Fraction(6, 5)
    assert x.term(2) == Fraction(351, 292)
    assert x.term(1) < x.term(2) < x.term(3)


def test_b_over_a_modulus():
    x = b_over_a_cauchy()
    for t in range(1, 30, 4):
        eps = Fraction(1, 10 ** t)
        m = x.modulus(eps)
        assert x.term(m + 5) - x.term(m) <= eps
        assert 8 <= eps * a(m) ** 2
        assert m == 1 or 8 > eps * a(m - 1) ** 2


def test_k_certificate():
    assert k_certificate()


def test_enclosure_examples():
    with pytest.raises(ValueError):
        zeta3_enclosure(1)
    assert zeta3_enclosure(5).width < Fraction(1, 10 ** 8)
    e10 = zeta3_enclosure(10)
    assert z(50) < e10.hi
    assert e10.lo < z(50) + Fraction(1, 2 * 50 ** 2)


def test_nested_and_overlapping():
    encs = [zeta3_enclosure(m) for m in range(2, 32)]
    for outer, inner in zip(encs, encs[1:]):
        assert outer.contains_enclosure(inner)
    assert enclosures_overlap(range(2, 31), 100)


def test_width_contraction():
    for m in range(5, 26):
        assert zeta3_enclosure(m + 1).width * 500 < zeta3_enclosure(m).width


def test_digits():
    d12 = decimal_digits(zeta3_enclosure(12), 20)
    d20 = decimal_digits(zeta3_enclosure(20), 20)
    assert d12 == d20 == ZETA3_30[:22]
    assert decimal_digits(zeta3_enclosure(30), 30) == ZETA3_30
    assert decimal_digits(zeta3_enclosure(2), 20) is None
    assert decimal_digits(Enclosure(Fraction(1, 3), Fraction(1, 3)), 0) == "0"


def test_cauchy_lt():
    w = cauchy_lt(constant(0), constant(1))
    assert w is not UNKNOWN and w.eps == Fraction(1, 2)
    assert cauchy_lt(constant(Fraction(351, 292)), z3_cauchy()) is not UNKNOWN
    assert cauchy_lt(constant(Fraction(351, 292)), b_over_a_cauchy()) is not UNKNOWN
    assert cauchy_lt(z3_cauchy(), z3_cauchy(), budget=12) is UNKNOWN
    assert cauchy_lt(constant(1), constant(0), budget=12) is UNKNOWN


def test_witness_is_sound():
    x, y = constant(Fraction(351, 292)), z3_cauchy()
    w = cauchy_lt(x, y)
    for m in range(w.index, w.index + 200, 17):
        assert x.term(m) + w.eps <= y.term(m)


def test_empty_enclosure_rejected():
    with pytest.raises(ValueError):
        Enclosure(Fraction(2), Fraction(1))
