from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery.errors import SupportError
from apery.sequences import U, V, a, b, b_over_a, casoratian_w, d, lam, rho, s, v, z

# Apery numbers, first terms (independent table)
A_TABLE = [1, 5, 73, 1445, 33001, 819005, 21460825, 584307365, 16367912425]


def recurrence_oracle(y0, y1, count):
    ys = [Fraction(y0), Fraction(y1)]
    for m in range(count - 2):
        ys.append(((2 * m + 3) * (17 * m * m + 51 * m + 39) * ys[-1] - (m + 1) ** 3 * ys[-2]) / (m + 2) ** 3)
    return ys


def test_a_values():
    assert [a(i) for i in range(len(A_TABLE))] == A_TABLE


def test_b_values():
    assert [b(i) for i in range(5)] == [0, 6, Fraction(351, 4), Fraction(62531, 36), Fraction(11424695, 288)]


def test_closed_forms_match_recurrence_oracle():
    oa = recurrence_oracle(1, 5, 81)
    ob = recurrence_oracle(0, 6, 81)
    assert [a(i) for i in range(81)] == oa
    assert [b(i) for i in range(81)] == ob


def test_z_and_summands():
    assert z(0) == 0
    assert z(3) == Fraction(251, 216)
    assert d(3, 2) == Fraction(-1, 480)
    assert s(3, 0) == 0
    assert s(3, 2) == d(3, 1) + d(3, 2)
    assert lam(2, 1) == 36
    assert lam(2, 3) == 0 and lam(2, -1) == 0


def test_support_errors():
    with pytest.raises(SupportError):
        d(3, 0)
    with pytest.raises(SupportError):
        s(3, 4)
    with pytest.raises(SupportError):
        V(0, 0)
    with pytest.raises(SupportError):
        a(-1)


def test_v_and_U():
    assert v(2, 1) == lam(2, 1) * (z(2) + s(2, 1))
    assert U(1, 0) == -108 and U(1, 1) == -288
    assert V(1, 0) == -108
    assert v(3, 5) == 0


def test_casoratian_values():
    assert [casoratian_w(i) for i in range(3)] == [6, Fraction(3, 4), Fraction(2, 9)]
    for m in range(0, 60):
        assert casoratian_w(m) == Fraction(6, (m + 1) ** 3)


def test_rho_and_ratio():
    assert rho(0) == 5
    assert rho(2) == Fraction(1445, 73)
    assert b_over_a(1) == Fraction(6, 5)
    assert b_over_a(2) == Fraction(351, 292)


def test_memo_consistency():
    for table in (a, b, z, casoratian_w):
        table(30)
        assert table.cached() >= 31
        for m in (0, 1, 7, 30):
            assert table.recompute(m) == table(m)


@given(st.integers(0, 25), st.integers(-3, 28))
def test_telescoping_identities_pointwise(n, k):
    if n == 0:
        return
    c = 34 * n ** 3 + 51 * n ** 2 + 27 * n + 5
    assert U(n, k) - U(n, k - 1) == (n + 1) ** 3 * lam(n + 1, k) - c * lam(n, k) + n ** 3 * lam(n - 1, k)
    assert V(n, k) - V(n, k - 1) == (n + 1) ** 3 * v(n + 1, k) - c * v(n, k) + n ** 3 * v(n - 1, k)


def test_lambda_direct_oracle():
    for n in range(12):
        for k in range(n + 1):
            assert lam(n, k) == (comb(n, k) * comb(n + k, k)) ** 2
