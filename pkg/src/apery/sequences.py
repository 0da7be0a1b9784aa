"""Closed-form exact evaluators for the sequences of Apéry's construction.

Naming follows the construction table:

* ``lam(n, k)``   C(n,k)^2 C(n+k,k)^2, zero outside 0 <= k <= n
* ``d(n, m)``     (-1)^(m+1) / (2 m^3 C(n,m) C(n+m,m))
* ``s(n, k)``     sum_{m=1}^{k} d(n, m)
* ``z(n)``        sum_{m=1}^{n} 1/m^3
* ``v(n, k)``     lam(n, k) * (z(n) + s(n, k))
* ``a(n)``, ``b(n)``  the two Apéry sums
* ``U``, ``V``    the telescoping companions of lam and v

All tables are memoized; concurrent readers may race on filling a slot but
always store the same value.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .errors import SupportError

__all__ = [
    "SeqTable",
    "z",
    "lam",
    "d",
    "s",
    "v",
    "a",
    "b",
    "U",
    "V",
    "casoratian_w",
    "rho",
    "b_over_a",
    "apery_pair",
    "APERY_RECURRENCE",
]

# Coefficients of (n+2)^3 y(n+2) - (17n^2+51n+39)(2n+3) y(n+1) + (n+1)^3 y(n).
APERY_RECURRENCE = "(n+2)^3*Sn^2 - (2*n+3)*(17*n^2+51*n+39)*Sn + (n+1)^3"


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


class SeqTable:
    """Memoized univariate sequence; ``fill`` computes missing prefixes in order."""

    def __init__(self, tag: str, step):
        self.tag = tag
        self._step = step
        self._values: list = []
        self._lock = threading.Lock()

    def __call__(self, n: int):
        if n < 0:
            raise SupportError(f"{self.tag} is defined for n >= 0, got {n}", (n,))
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            while len(values) <= n:
                values.append(self._step(len(values), values))
        return values[n]

    def cached(self) -> int:
        return len(self._values)

    def recompute(self, n: int):
        """Value from the defining formula, bypassing the table."""
        return self._step(n, [self(i) for i in range(n)])

    def clear(self):
        with self._lock:
            self._values.clear()


def _z_step(n, prev):
    return Fraction(0) if n == 0 else prev[n - 1] + Fraction(1, n ** 3)


z = SeqTable("z", _z_step)


def lam(n: int, k: int) -> int:
    if k < 0 or k > n or n < 0:
        return 0
    return comb(n, k) ** 2 * comb(n + k, k) ** 2


def d(n: int, m: int) -> Fraction:
    if m < 1 or m > n:
        raise SupportError(f"d(n, m) needs 1 <= m <= n, got {(n, m)}", (n, m))
    return Fraction(_sign(m + 1), 2 * m ** 3 * comb(n, m) * comb(n + m, m))


_s_lock = threading.Lock()
_s_rows: dict = {}


def _s_row(n: int) -> list:
    row = _s_rows.get(n)
    if row is None:
        acc = Fraction(0)
        row = [acc]
        for m in range(1, n + 1):
            acc += d(n, m)
            row.append(acc)
        with _s_lock:
            _s_rows.setdefault(n, row)
    return row


def s(n: int, k: int) -> Fraction:
    """Partial sum of d(n, m) for m = 1..k (empty sum for k = 0)."""
    if n < 0 or k < 0 or k > n:
        raise SupportError(f"s(n, k) needs 0 <= k <= n, got {(n, k)}", (n, k))
    return _s_row(n)[k]


def v(n: int, k: int) -> Fraction:
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return lam(n, k) * (z(n) + s(n, k))


def _a_step(n, prev):
    return sum(lam(n, k) for k in range(n + 1))


def _b_step(n, prev):
    # a_n z_n + sum_{k=1}^{n} sum_{m=1}^{k} lam(n,k) d(n,m)
    inner = sum((lam(n, k) * s(n, k) for k in range(1, n + 1)), Fraction(0))
    return a(n) * z(n) + inner


a = SeqTable("a", _a_step)
b = SeqTable("b", _b_step)


def U(n: int, k: int) -> int:
    return 4 * (2 * n + 1) * (k * (2 * k + 1) - (2 * n + 1) ** 2) * lam(n, k)


def V(n: int, k: int) -> Fraction:
    """V(n, k), zero outside 0 <= k <= n; undefined at n = 0."""
    if n == 0:
        raise SupportError("V(n, k) needs n >= 1 (denominator n(n+1))", (n, k))
    if k < 0 or k > n:
        return Fraction(0)
    correction = Fraction(5 * (2 * n + 1) * k * _sign(k - 1), n * (n + 1)) * comb(n, k) * comb(n + k, k)
    return U(n, k) * (z(n) + s(n, k)) + correction


def _w_step(n, prev):
    return b(n + 1) * a(n) - a(n + 1) * b(n)


casoratian_w = SeqTable("w", _w_step)


def rho(n: int) -> Fraction:
    return Fraction(a(n + 1), a(n))


def b_over_a(n: int) -> Fraction:
    return b(n) / a(n)


def apery_pair(n: int) -> tuple:
    return a(n), b(n)
