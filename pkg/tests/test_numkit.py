from functools import reduce
from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apery.numkit import (
    binomial,
    factorial,
    is_prime,
    lcm_upto,
    multinomial,
    p_adic_val,
    primes_upto,
    trunc_log,
    val_factorial,
)


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [x + y for x, y in zip([0] + row, row + [0])]
    return row


def test_factorial_values():
    assert factorial(0) == 1
    assert factorial(4) == 24
    assert factorial(10) == 3628800
    with pytest.raises(ValueError):
        factorial(-1)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(4, -1) == 0
    assert binomial(-1, 2) == 1
    assert binomial(3, 5) == 0


def test_binomial_matches_pascal_triangle():
    for n in range(25):
        assert [binomial(n, k) for k in range(n + 1)] == pascal_row(n)


@given(st.integers(-30, 30), st.integers(-5, 30))
def test_binomial_pascal_rule_on_all_integers(n, k):
    # the extension keeps the rule valid off the natural support too
    assert binomial(n + 1, k + 1) == binomial(n, k + 1) + binomial(n, k)


@given(st.integers(0, 40), st.integers(0, 40))
def test_binomial_symmetry(n, k):
    if k <= n:
        assert binomial(n, k) == binomial(n, n - k)


def test_multinomial_examples():
    assert multinomial([]) == 1
    assert multinomial([1, 2]) == 3
    assert multinomial([2, 1, 1]) == 12


@given(st.lists(st.integers(0, 8), max_size=5))
def test_multinomial_factorial_form(parts):
    assert multinomial(parts) * prod(factorial(p) for p in parts) == factorial(sum(parts))


def test_valuations():
    assert p_adic_val(2, 12) == 2
    assert p_adic_val(3, 1) == 0
    assert p_adic_val(2, factorial(10)) == 8
    with pytest.raises(ValueError):
        p_adic_val(4, 8)
    with pytest.raises(ValueError):
        p_adic_val(2, 0)


def test_val_factorial_examples():
    assert val_factorial(2, 4, 2) == 3
    assert val_factorial(5, 4, 0) == 0
    assert val_factorial(3, 10, 2) == 4
    with pytest.raises(ValueError):
        val_factorial(2, 8, 2)


def test_legendre_formula_up_to_300():
    for n in range(1, 301):
        f = factorial(n)
        for p in primes_upto(n):
            assert p_adic_val(p, f) == val_factorial(p, n, trunc_log(p, n))


def test_trunc_log():
    assert trunc_log(2, 10) == 3
    assert trunc_log(7, 6) == 0
    assert trunc_log(3, 27) == 3
    for bad in ((1, 5), (2, 0)):
        with pytest.raises(ValueError):
            trunc_log(*bad)


@given(st.integers(2, 12), st.integers(1, 10 ** 9))
def test_trunc_log_brackets(base, m):
    t = trunc_log(base, m)
    assert base ** t <= m < base ** (t + 1)


def test_lcm_values_and_iterated_oracle():
    assert lcm_upto(0) == 1
    assert lcm_upto(4) == 12
    assert lcm_upto(10) == 2520
    for n in range(1, 200):
        assert lcm_upto(n) == reduce(lambda x, y: x * y // gcd(x, y), range(1, n + 1), 1)


def test_lcm_prime_power_form():
    for n in range(1, 301):
        assert lcm_upto(n) == prod(p ** trunc_log(p, n) for p in primes_upto(n))


def test_j_binomial_divides_lcm():
    for n in range(1, 101):
        ell = lcm_upto(n)
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                assert ell % (j * binomial(i, j)) == 0


def test_primes():
    assert primes_upto(1) == []
    assert primes_upto(10) == [2, 3, 5, 7]
    assert primes_upto(13) == [2, 3, 5, 7, 11, 13]
    assert primes_upto(1000) == [m for m in range(1001) if is_prime(m)]
