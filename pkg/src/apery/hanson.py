"""Hanson's bound lcm(1..n) = O(3^n), checked in exact integer arithmetic.

Fractional exponents never appear: every inequality is raised to a power
that clears them (alpha_i for 1/alpha_i exponents, 2 for half-integers)
before comparing.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .numkit import is_prime, lcm_upto, p_adic_val, primes_upto, trunc_log

__all__ = [
    "W",
    "W_BOUNDS",
    "W_PRODUCT",
    "LemmaVerdict",
    "alpha",
    "alpha_index",
    "hanson_C",
    "hanson_C_stable",
    "suminv_identity_check",
    "floor_identity",
    "beta_valuation_check",
    "analysis_ineq_check",
    "bounded_power_check",
    "cnk_bound_check",
    "k_loglog_check",
    "alpha_doubly_exponential_check",
    "w_bound_check",
    "obs1_check",
    "main_bound_check",
    "envelope_sq",
    "lcm_bigO_3n_report",
    "valuation_C",
    "hanson_suite",
]

W = Fraction(149, 50)
# alpha_i^(1/alpha_i) < W_BOUNDS[i-1] for i = 1..5
W_BOUNDS = (Fraction(283, 200), Fraction(1443, 1000), Fraction(1321, 1000), Fraction(273, 250), Fraction(201, 200))
W_PRODUCT = Fraction(5949909309448377, 2 * 10 ** 15)


@dataclass
class LemmaVerdict:
    name: str
    accepted: bool
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.accepted

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.accepted else "fail", **self.detail}


_alpha_lock = threading.Lock()
_alpha = [2]


def alpha(i: int) -> int:
    """alpha_1 = 2, alpha_{i+1} = alpha_i^2 - alpha_i + 1."""
    if i < 1:
        raise ValueError(f"alpha is indexed from 1, got {i}")
    if i > len(_alpha):
        with _alpha_lock:
            while len(_alpha) < i:
                x = _alpha[-1]
                _alpha.append(x * x - x + 1)
    return _alpha[i - 1]


def alpha_index(n: int) -> int:
    """The k with alpha_k <= n < alpha_{k+1} (n >= 2)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    k = 1
    while alpha(k + 1) <= n:
        k += 1
    return k


def hanson_C(n: int, k: int) -> int:
    """n! / prod_{i<=k} floor(n/alpha_i)!"""
    if n < 0 or k < 0:
        raise ValueError(f"need n, k >= 0, got {(n, k)}")
    den = 1
    for i in range(1, k + 1):
        q = n // alpha(i)
        if q == 0:
            break
        den *= factorial(q)
    return factorial(n) // den


def hanson_C_stable(n: int) -> int:
    """C(n) = C(n, k) for the least k with alpha_k >= n."""
    k = 1
    while alpha(k) < n:
        k += 1
    return hanson_C(n, k)


def suminv_identity_check(k: int, grid_max: int = 60) -> LemmaVerdict:
    if k < 1:
        raise ValueError("k >= 1 required")
    total = sum(Fraction(1, alpha(i)) for i in range(1, k + 1))
    nxt = alpha(k + 1)
    closed = Fraction(nxt - 2, nxt - 1)
    ok = total == closed and closed < 1
    bad = None
    for q in range(1, 5):
        for p in range(q, grid_max * q + 1):
            x = Fraction(p, q)
            fl = x.numerator // x.denominator
            if not fl > sum((x / alpha(i)).__floor__() for i in range(1, k + 1)):
                bad = str(x)
                break
        if bad:
            break
    return LemmaVerdict("suminv", ok and bad is None, {"k": k, "sum": str(total), "closed_form": str(closed), "floor_counterexample": bad})


def floor_identity(x: Fraction, m: int) -> bool:
    """floor(x/m) == floor(floor(x)/m) for rational x >= 0, integer m >= 1."""
    x = Fraction(x)
    return (x / m).__floor__() == (x.__floor__()) // m


def beta_valuation_check(n: int, k: int, p: int) -> LemmaVerdict:
    if n < 1 or not is_prime(p):
        raise ValueError(f"need n >= 1 and p prime, got {(n, p)}")
    val = p_adic_val(p, hanson_C(n, k))
    need = trunc_log(p, n)
    return LemmaVerdict("beta_valuation", val >= need, {"n": n, "k": k, "p": p, "valuation": val, "log": need})


def analysis_ineq_check(n: int, i: int) -> LemmaVerdict:
    """(n/a)^n / f^(a f) < (10 n/a)^(a - 1), a = alpha_i, f = floor(n/a)."""
    a_i = alpha(i)
    if n < a_i:
        raise ValueError(f"need n >= alpha_{i} = {a_i}, got {n}")
    f = n // a_i
    lhs = Fraction(n, a_i) ** n / Fraction(f) ** (a_i * f)
    rhs = Fraction(10 * n, a_i) ** (a_i - 1)
    return LemmaVerdict("analysis_ineq", lhs < rhs, {"n": n, "i": i})


def bounded_power_check(x) -> LemmaVerdict:
    """(1 + 1/x)^x < 10 as (p + q)^p < 10^q p^p for x = p/q."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    p, q = x.numerator, x.denominator
    return LemmaVerdict("bounded_power", (p + q) ** p < 10 ** q * p ** p, {"x": str(x)})


def _floor_powers(n: int, k: int) -> int:
    out = 1
    for i in range(1, k + 1):
        f = n // alpha(i)
        out *= f ** f  # 0^0 = 1
    return out


def cnk_bound_check(n: int, k: int) -> LemmaVerdict:
    if k < 1 or n < 2:
        raise ValueError(f"need k >= 1, n >= 2, got {(n, k)}")
    c = hanson_C(n, k)
    return LemmaVerdict("cnk_bound", c * _floor_powers(n, k) < n ** n, {"n": n, "k": k})


def k_loglog_check(n: int, k: int) -> LemmaVerdict:
    """k <= floor(log2 floor(log2 n)) + 2 (the non-strict form)."""
    if k < 3 or alpha(k) > n:
        raise ValueError(f"need k >= 3 and alpha_k <= n, got {(n, k)}")
    bound = trunc_log(2, trunc_log(2, n)) + 2
    return LemmaVerdict("k_loglog", k <= bound, {"n": n, "k": k, "bound": bound, "strict": k < bound})


def alpha_doubly_exponential_check(k: int) -> bool:
    """alpha_k > 2^(2^(k-2)) + 1 for k >= 3."""
    return alpha(k) > 2 ** (2 ** (k - 2)) + 1


def w_bound_check() -> LemmaVerdict:
    """Per-factor bounds alpha_i < b_i^alpha_i, then w_4 alpha_5^(2/alpha_5) < W."""
    factors = {}
    for i, bnd in enumerate(W_BOUNDS, start=1):
        a_i = alpha(i)
        factors[i] = bnd ** a_i > a_i
    product = W_BOUNDS[0] * W_BOUNDS[1] * W_BOUNDS[2] * W_BOUNDS[3] * W_BOUNDS[4] ** 2
    chain = product <= W_PRODUCT < W
    return LemmaVerdict(
        "w_bound",
        all(factors.values()) and chain,
        {"factor_bounds": {str(i): v for i, v in factors.items()}, "product": str(product), "W": str(W)},
    )


def obs1_check(k: int) -> LemmaVerdict:
    lhs = sum(Fraction(alpha(i) - 1, alpha(i)) for i in range(1, k + 1))
    rhs = k - 1 + Fraction(1, alpha(k + 1) - 1)
    return LemmaVerdict("obs1", lhs == rhs, {"k": k, "value": str(lhs)})


def main_bound_check(n: int) -> LemmaVerdict:
    """C(n)^2 < (10 n)^(2k-1) W^(2n+2) with alpha_k <= n < alpha_{k+1}."""
    k = alpha_index(n)
    c = hanson_C(n, k)
    e = 2 * n + 2
    ok = c * c * W.denominator ** e < (10 * n) ** (2 * k - 1) * W.numerator ** e
    return LemmaVerdict("main_bound", ok, {"n": n, "k": k})


def envelope_sq(n: int) -> Fraction:
    """((10 n)^(k - 1/2) (W/3)^(n+1))^2, the squared bound on l_n / 3^n."""
    k = alpha_index(n)
    return Fraction(10 * n) ** (2 * k - 1) * (W / 3) ** (2 * n + 2)


def lcm_bigO_3n_report(N: int) -> dict:
    if N < 2:
        raise ValueError("N >= 2 required")
    failures = []
    best = (Fraction(0), None)
    decreasing_from = 2
    prev = None
    for n in range(2, N + 1):
        ell = lcm_upto(n)
        c = hanson_C_stable(n)
        if not ell <= c:
            failures.append({"check": "lcm_le_C", "n": n})
        if not main_bound_check(n):
            failures.append({"check": "main_bound", "n": n})
        ratio = Fraction(ell, 3 ** n)
        if ratio > best[0]:
            best = (ratio, n)
        env = envelope_sq(n)
        if prev is not None and not env < prev:
            decreasing_from = n
        prev = env
    return {
        "range": [2, N],
        "status": "pass" if not failures else "fail",
        "failures": failures,
        "max_lcm_over_3n": str(best[0]),
        "max_at": best[1],
        "envelope_decreasing_from": decreasing_from,
        "primes_checked": len(primes_upto(N)),
    }


def _legendre(p: int, m: int) -> int:
    total, q = 0, p
    while q <= m:
        total += m // q
        q *= p
    return total


def valuation_C(p: int, n: int, k: int) -> int:
    """v_p(C(n, k)) by Legendre's formula, without forming C(n, k)."""
    return _legendre(p, n) - sum(_legendre(p, n // alpha(i)) for i in range(1, k + 1))


def hanson_suite(max_n: int = 500, lcm_max_n: int | None = None) -> dict:
    """Every lemma of the Hanson chain over its applicable range up to ``max_n``."""
    lcm_max_n = lcm_max_n or max_n
    results = []

    def record(name, failures, **extra):
        results.append({"name": name, "status": "pass" if not failures else "fail", "failures": failures[:10], **extra})

    ks = range(1, 9)
    record("alpha_product_form", [k for k in ks if alpha(k + 1) != prod(alpha(i) for i in range(1, k + 1)) + 1], k=[1, 8])
    record("suminv", [k for k in ks if not suminv_identity_check(k)], k=[1, 8])
    record("obs1", [k for k in ks if not obs1_check(k)], k=[1, 8])
    record("alpha_doubly_exponential", [k for k in range(3, 9) if not alpha_doubly_exponential_check(k)], k=[3, 8])

    bad = []
    for n in range(2, lcm_max_n + 1):
        k = alpha_index(n) + 1  # least k with alpha_k >= n, or one past it
        for p in primes_upto(n):
            if valuation_C(p, n, k) < trunc_log(p, n):
                bad.append({"n": n, "p": p})
    record("beta_valuation", bad, n=[2, lcm_max_n])

    bad = []
    for n in range(1, lcm_max_n + 1):
        if not lcm_upto(n) <= hanson_C_stable(n):
            bad.append(n)
    record("lcm_le_C", bad, n=[1, lcm_max_n])

    bad = []
    for i in range(1, 5):
        for n in range(alpha(i), max_n + 1):
            if not analysis_ineq_check(n, i):
                bad.append({"n": n, "i": i})
    record("analysis_ineq", bad, n=[1, max_n])

    grid = sorted({Fraction(p, q) for q in range(1, 11) for p in range(1, 101)})
    record("bounded_power", [str(x) for x in grid if not bounded_power_check(x)], grid_size=len(grid))

    bad = []
    for n in range(2, max_n + 1):
        for k in range(1, alpha_index(n) + 2):
            if not cnk_bound_check(n, k):
                bad.append({"n": n, "k": k})
    record("cnk_bound", bad, n=[2, max_n])

    bad = []
    for n in range(alpha(3), max_n + 1):
        for k in range(3, alpha_index(n) + 1):
            if not k_loglog_check(n, k):
                bad.append({"n": n, "k": k})
    record("k_loglog_nonstrict", bad, n=[alpha(3), max_n])

    results.append(w_bound_check().to_dict())
    record("main_bound", [n for n in range(2, max_n + 1) if not main_bound_check(n)], n=[2, max_n])

    report = lcm_bigO_3n_report(lcm_max_n)
    return {
        "max_n": max_n,
        "lcm_max_n": lcm_max_n,
        "status": "pass" if all(r["status"] == "pass" for r in results) and report["status"] == "pass" else "fail",
        "checks": results,
        "lcm_report": report,
    }

