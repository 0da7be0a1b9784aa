from fractions import Fraction

import pytest

from apery.criterion import (
    contradiction_demo,
    criterion_report,
    decay_table,
    growth_check,
    integrality_check,
    parse_rational,
    positivity_check,
    refute_all_denominators,
)
from apery.numkit import lcm_upto
from apery.sequences import a, b, rho, z


def test_integrality_examples():
    assert integrality_check(1)["status"] == "pass"
    assert integrality_check(3)["status"] == "pass"
    assert (2 * lcm_upto(3) ** 3 * b(3)).denominator == 1
    assert (2 * lcm_upto(1) ** 3 * b(1)) == 12


def test_growth_examples():
    assert rho(2) < rho(3)
    assert rho(51) > 33
    assert a(60) >= a(52) * 33 ** 8
    with pytest.raises(ValueError):
        growth_check(10)
    assert growth_check(80)["status"] == "pass"


def test_positivity():
    assert positivity_check(30)["status"] == "pass"


def test_positivity_mutation():
    # b_5 := b_6 a_5 / a_6 makes two consecutive ratios equal
    def bent(m):
        return b(6) * a(5) / a(6) if m == 5 else b(m)

    verdict = positivity_check(10, bent)
    assert verdict["status"] == "fail"
    assert verdict["failures"][0]["n"] == 5


def test_decay_table_small():
    t = decay_table(10, with_hanson=False)
    assert t["rows"][0].n == 2
    assert t["rows"][0].exact == Fraction(64, 73)
    assert t["gate_27_lt_33"]


def test_decay_table_envelope_dominates():
    t = decay_table(130)
    assert t["status"] == "pass"
    rows = t["rows"]
    for r in rows:
        assert r.exact <= r.envelope
    tail = [r.envelope for r in rows if r.n >= t["n0"]]
    assert all(x > y for x, y in zip(tail, tail[1:]))
    assert rows[-1].exact < Fraction(1, 10 ** 6)


def test_contradiction_examples():
    r = contradiction_demo(6, 5, 50)
    assert r["refuted"] and r["witness"] == 2 and r["side"] == "below"
    assert Fraction(6, 5) < b(3) / a(3)
    r = contradiction_demo(1202057, 10 ** 6, 50)
    assert r["refuted"] and r["witness"] <= 8 and r["side"] == "above"


def test_contradiction_integer_gap():
    x = z(100)
    scale = 10 ** 30
    p = (x.numerator * scale + x.denominator // 2) // x.denominator
    r = contradiction_demo(p, scale, 200)
    assert r["refuted"]
    gap = r["integer_gap_witness"]
    assert gap is not None
    assert 16 * Fraction(p, scale).denominator * lcm_upto(gap) ** 3 < a(gap)
    # the integer X must then be <= 0 or >= 1: here p/q lies below zeta(3)
    assert r["integer_gap_value"] <= 0


def test_not_refuted_with_tiny_range():
    r = contradiction_demo(1202056903, 10 ** 9, 2)
    assert not r["refuted"]


def test_refute_all_denominators_small():
    assert refute_all_denominators(1000, 6)["status"] == "pass"
    # at n = 2 the enclosure is wide enough to hold fractions with small q
    assert refute_all_denominators(1000, 2)["status"] == "fail"


def test_parse_rational():
    assert parse_rational("6/5") == Fraction(6, 5)
    assert parse_rational(" 3 ") == 3
    with pytest.raises(ValueError):
        parse_rational("x/2")


def test_report():
    rep = criterion_report(20)
    assert rep.passed
    d = rep.to_dict()
    assert d["decay"]["rows"][0]["n"] == 2
