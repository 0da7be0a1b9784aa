"""Exact integer kernel: factorials, binomials, valuations, lcm prefixes, primes."""
from __future__ import annotations

import math
import threading
from math import isqrt

__all__ = [
    "factorial",
    "binomial",
    "multinomial",
    "is_prime",
    "p_adic_val",
    "val_factorial",
    "trunc_log",
    "lcm_upto",
    "primes_upto",
]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient extended to all integers n, k.

    Zero when ``k < 0`` or ``0 <= n < k``; for negative ``n`` the upper
    negation identity ``C(n, k) = (-1)^k C(k - n - 1, k)`` is used.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    sign = -1 if k % 2 else 1
    return sign * math.comb(k - n - 1, k)


def multinomial(parts) -> int:
    """prod_i C(l_1 + ... + l_i, l_i) for a list of naturals."""
    total = 0
    result = 1
    for part in parts:
        if part < 0:
            raise ValueError(f"negative multinomial part {part}")
        total += part
        result *= math.comb(total, part)
    return result


def is_prime(m: int) -> bool:
    """Deterministic trial division; fine for desk-scale inputs."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def p_adic_val(p: int, m: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    m = abs(m)
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def val_factorial(p: int, n: int, j: int) -> int:
    """Legendre sum  sum_{i=1}^{j} floor(n / p^i), requiring n < p^(j+1).

    Under that bound the sum equals the p-adic valuation of n!.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0 or j < 0:
        raise ValueError("n and j must be natural numbers")
    if n >= p ** (j + 1):
        raise ValueError(f"need n < p^(j+1), got n={n}, p={p}, j={j}")
    total = 0
    q = p
    for _ in range(j):
        total += n // q
        q *= p
    return total


def trunc_log(base: int, m: int) -> int:
    """Greatest a with base**a <= m."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if m < 1:
        raise ValueError(f"argument must be >= 1, got {m}")
    a = 0
    power = base
    while power <= m:
        power *= base
        a += 1
    return a


_lcm_lock = threading.Lock()
_lcm_table = [1]


def lcm_upto(n: int) -> int:
    """lcm(1, ..., n) with the convention lcm_upto(0) == 1."""
    if n < 0:
        raise ValueError(f"negative index {n}")
    table = _lcm_table
    if n < len(table):
        return table[n]
    with _lcm_lock:
        while len(table) <= n:
            m = len(table)
            table.append(math.lcm(table[-1], m))
    return table[n]


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if sieve[i]]
