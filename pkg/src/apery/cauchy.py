"""Rational Cauchy sequences with explicit moduli, and certified enclosures of zeta(3).

Nothing here decides equality or order of reals.  ``cauchy_lt`` either
produces a witness or gives up at its budget; ``enclosures_overlap`` is the
finite-precision face of Cauchy equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable

from .sequences import a, b, z

__all__ = [
    "CauchyReal",
    "Enclosure",
    "LtWitness",
    "UNKNOWN",
    "K_TAIL",
    "constant",
    "z3_cauchy",
    "b_over_a_cauchy",
    "z3_tail_bound_holds",
    "k_certificate",
    "zeta3_enclosure",
    "z_enclosure",
    "cauchy_lt",
    "enclosures_overlap",
    "decimal_digits",
]

# zeta(3) - b_n/a_n <= K_TAIL / a_n^2; any K > 6 zeta(3) works.
K_TAIL = 8


@dataclass(frozen=True)
class CauchyReal:
    term: Callable[[int], Fraction]
    modulus: Callable[[Fraction], int]
    name: str = ""

    def at_precision(self, eps) -> Fraction:
        """A rational within ``eps`` of every later term."""
        return Fraction(self.term(self.modulus(Fraction(eps))))


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_enclosure(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def to_dict(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}


def constant(x) -> CauchyReal:
    x = Fraction(x)
    return CauchyReal(lambda n: x, lambda eps: 0, str(x))


def _least_n_with(pred) -> int:
    """Least N >= 1 with pred(N), for pred monotone in N."""
    hi = 1
    while not pred(hi):
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _z3_modulus(eps) -> int:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("precision must be positive")
    # least N with 1/(2N^2) <= eps, i.e. 2 N^2 eps >= 1
    n = max(1, isqrt(eps.denominator // (2 * eps.numerator)))
    while 2 * n * n * eps < 1:
        n += 1
    while n > 1 and 2 * (n - 1) ** 2 * eps >= 1:
        n -= 1
    return n


def z3_cauchy() -> CauchyReal:
    return CauchyReal(z, _z3_modulus, "z")


def z3_tail_bound_holds(n: int, m: int) -> bool:
    """z(m) - z(n) < 1/(2 n^2) for m > n >= 1, by the telescoping majorant.

    Each term obeys 1/j^3 < (1/(j-1)^2 - 1/j^2)/2, equivalently
    2 (j-1)^2 < j (2j - 1), whose difference 3j - 2 is positive; summing
    from n+1 to m telescopes to (1/n^2 - 1/m^2)/2.  Both the termwise and
    the summed forms are checked here exactly.
    """
    for j in range(n + 1, m + 1):
        if not 2 * (j - 1) ** 2 < j * (2 * j - 1):
            return False
    majorant = (Fraction(1, n * n) - Fraction(1, m * m)) / 2
    return z(m) - z(n) <= majorant < Fraction(1, 2 * n * n)


def k_certificate() -> bool:
    """6 zeta(3) < K_TAIL, via zeta(3) < z(10) + 1/200."""
    return 6 * (z(10) + Fraction(1, 200)) < K_TAIL


def _ba_modulus(eps) -> int:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("precision must be positive")
    # b_i/a_i increases to zeta(3) and zeta(3) - b_i/a_i <= K/a_i^2
    return _least_n_with(lambda n: K_TAIL <= eps * a(n) ** 2)


def b_over_a_cauchy() -> CauchyReal:
    return CauchyReal(lambda n: b(n) / a(n), _ba_modulus, "b/a")


def zeta3_enclosure(n: int) -> Enclosure:
    """[b_n/a_n, b_n/a_n + K/a_n^2], certified to contain zeta(3)."""
    if n < 2:
        raise ValueError(f"enclosure needs n >= 2, got {n}")
    lo = b(n) / a(n)
    return Enclosure(lo, lo + Fraction(K_TAIL, a(n) ** 2))


def z_enclosure(n: int) -> Enclosure:
    """[z(n), z(n) + 1/(2 n^2)] from the partial sums."""
    if n < 1:
        raise ValueError(f"enclosure needs n >= 1, got {n}")
    return Enclosure(z(n), z(n) + Fraction(1, 2 * n * n))


@dataclass(frozen=True)
class LtWitness:
    eps: Fraction
    index: int


UNKNOWN = None


def cauchy_lt(x: CauchyReal, y: CauchyReal, budget: int = 64):
    """Search for eps > 0 and N with x_m + eps <= y_m for all m >= N.

    Returns an LtWitness or UNKNOWN once 2^-budget precision is exhausted.
    At precision e = 2^-t and N past both moduli, every later x_m lies
    within e of x_N (same for y), so once the gap g = y_N - x_N exceeds 2e,
    eps = g - 2e is a witness.
    """
    for t in range(1, budget + 1):
        e = Fraction(1, 2 ** t)
        n = max(x.modulus(e), y.modulus(e))
        gap = Fraction(y.term(n)) - Fraction(x.term(n))
        if gap > 2 * e:
            return LtWitness(gap - 2 * e, n)
    return UNKNOWN


def enclosures_overlap(indices, n_z: int = 100) -> bool:
    """Every b/a enclosure at ``indices`` meets the z-based enclosure at n_z."""
    ze = z_enclosure(n_z)
    return all(zeta3_enclosure(n).overlaps(ze) for n in indices)


def decimal_digits(enc: Enclosure, digits: int):
    """Digits fixed by the enclosure: floor(x * 10^digits) as a decimal string.

    Returns None when lo and hi disagree at that precision.
    """
    scale = 10 ** digits
    lo = enc.lo.numerator * scale // enc.lo.denominator
    hi = enc.hi.numerator * scale // enc.hi.denominator
    if lo != hi:
        return None
    text = str(lo).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}" if digits else text
