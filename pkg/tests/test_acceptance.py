"""The twelve acceptance criteria, each run exactly at its stated range.

One line per criterion is printed in the terminal summary.
"""
from fractions import Fraction
from itertools import product

import pytest

from apery.cauchy import decimal_digits, enclosures_overlap, zeta3_enclosure
from apery.cli import hyper_terms
from apery.criterion import (
    GROWTH_BASE,
    GROWTH_INDEX,
    decay_table,
    integrality_check,
    refute_all_denominators,
)
from apery.dsl import parse_operator
from apery.hanson import W_BOUNDS, W_PRODUCT, hanson_C_stable, hanson_suite, main_bound_check, w_bound_check
from apery.numkit import binomial, factorial, lcm_upto, multinomial, p_adic_val, primes_upto, trunc_log, val_factorial
from apery.polyalg import MultiPoly, RatFun, newton_expand
from apery.sequences import APERY_RECURRENCE, U, V, a, b, casoratian_w, lam, rho, v
from apery.shiftalg import Proviso, ShiftOp, op_apply
from apery.telescope import (
    GuardedIdentity,
    binomial_term,
    ct_sum_check,
    triangle_grid,
    verify_hyper_identity,
    verify_pointwise,
)

n, k = MultiPoly.var("n"), MultiPoly.var("k")
Sn, Sk = ShiftOp.sn(), ShiftOp.sk()

# U(n,k) - U(n,k-1) = (n+1)^3 f(n+1,k) - (34n^3+51n^2+27n+5) f(n,k) + n^3 f(n-1,k)
TELE_COEFFS = [
    (MultiPoly.const(1), 0, 0, "u"),
    (MultiPoly.const(-1), 0, -1, "u"),
    (-(n + 1) ** 3, 1, 0, "f"),
    (34 * n ** 3 + 51 * n ** 2 + 27 * n + 5, 0, 0, "f"),
    (-(n ** 3), -1, 0, "f"),
]
TELE_DELTA = Proviso((k, n - k, n - k + 1, n + k))


def telescoping_identity(coeffs, u="U", f="lambda", delta=TELE_DELTA):
    names = {"u": u, "f": f}
    return GuardedIdentity("telescoping", [(RatFun(c), names[r], i, j) for c, i, j, r in coeffs], delta)


def telescoping_mutations():
    for idx, (poly, i, j, role) in enumerate(TELE_COEFFS):
        for mono, c in poly.terms.items():
            for step in (1, -1):
                terms = dict(poly.terms)
                terms[mono] = c + step
                mutated = list(TELE_COEFFS)
                mutated[idx] = (MultiPoly(terms), i, j, role)
                yield f"part {idx}, monomial {mono or '1'}, {step:+d}", mutated


@pytest.mark.criterion(1, "recurrence annihilates a and b for 0 <= n <= 100")
def test_criterion_01_recurrence():
    P = parse_operator(APERY_RECURRENCE).operator
    for seq in (a, b):
        for m in range(0, 101):
            assert op_apply(P, lambda i, j: seq(i), (m, 0)) == 0


@pytest.mark.criterion(2, "telescoping certificate: symbolic, pointwise with V analogue, mutations rejected")
def test_criterion_02_telescoping():
    terms = hyper_terms()
    assert verify_hyper_identity(telescoping_identity(TELE_COEFFS), terms).accepted
    grid = triangle_grid(1, 40)
    assert verify_pointwise(telescoping_identity(TELE_COEFFS), {"U": U, "lambda": lam}, grid).accepted
    assert verify_pointwise(telescoping_identity(TELE_COEFFS, "V", "v"), {"V": V, "v": v}, grid).accepted
    count = 0
    for label, mutated in telescoping_mutations():
        count += 1
        assert not verify_hyper_identity(telescoping_identity(mutated), terms).accepted, label
        assert not verify_pointwise(telescoping_identity(mutated), {"U": U, "lambda": lam}, grid).accepted, label
        assert not verify_pointwise(telescoping_identity(mutated, "V", "v"), {"V": V, "v": v}, grid).accepted, label
    assert count == 2 * 11


@pytest.mark.criterion(3, "binomial sum pipeline with P = Sn - 2, Q = Sn - 1 for n <= 30")
def test_criterion_03_binomial_sum():
    # summation runs k over 0..n + 1 so that Q = Sn - 1 keeps its sign
    verdict = ct_sum_check(Sn - 2, Sn - 1, binomial, 0, 1, Proviso(), range(0, 31))
    assert verdict.accepted and verdict.annihilates
    for m in range(0, 31):
        assert sum(binomial(m, j) for j in range(0, m + 1)) == 2 ** m


@pytest.mark.criterion(4, "guarded Pascal rule: accepted with its proviso, rejected without")
def test_criterion_04_pascal():
    rule = Sn * Sk - Sk - 1
    terms = {"binomial": binomial_term()}
    guarded = GuardedIdentity.from_operator("pascal", rule, "binomial", Proviso((k + 1, n - k)))
    bare = GuardedIdentity.from_operator("pascal", rule, "binomial")
    assert verify_hyper_identity(guarded, terms).accepted
    assert not verify_hyper_identity(bare, terms).accepted


@pytest.mark.criterion(5, "integrality of a_n, 2 l_n^3 b_n and j C(i,j) | l_n for n <= 100")
def test_criterion_05_integrality():
    assert integrality_check(100)["status"] == "pass"


@pytest.mark.criterion(6, "Casoratian closed form and first-order recurrence for n <= 100")
def test_criterion_06_casoratian():
    for m in range(0, 101):
        w = b(m + 1) * a(m) - a(m + 1) * b(m)
        assert w == casoratian_w(m)
        if m >= 2:
            assert w == Fraction(6, (m + 1) ** 3)
        w_next = b(m + 2) * a(m + 1) - a(m + 2) * b(m + 1)
        assert (m + 2) ** 3 * w_next == (m + 1) ** 3 * w


@pytest.mark.criterion(7, "rho_n strictly increasing on 2..200 and rho_51 > 33")
def test_criterion_07_growth():
    for m in range(2, 200):
        assert rho(m) < rho(m + 1)
    assert rho(51) > 33
    for m in range(GROWTH_INDEX, 201):
        assert a(m) >= a(GROWTH_INDEX) * GROWTH_BASE ** (m - GROWTH_INDEX)


@pytest.mark.criterion(8, "zeta(3) enclosures: nesting, contraction, digit agreement, overlap")
def test_criterion_08_enclosures():
    for m in range(2, 30):
        assert zeta3_enclosure(m).contains_enclosure(zeta3_enclosure(m + 1))
    for m in range(5, 26):
        assert zeta3_enclosure(m + 1).width * 500 < zeta3_enclosure(m).width
    d12 = decimal_digits(zeta3_enclosure(12), 20)
    assert d12 is not None and d12 == decimal_digits(zeta3_enclosure(20), 20)
    assert enclosures_overlap(range(2, 101), 100)


@pytest.mark.criterion(9, "Hanson lemma chain to n = 500, lcm bound to n = 2000, w-bound rationals")
def test_criterion_09_hanson():
    report = hanson_suite(500, 2000)
    assert report["status"] == "pass", [c for c in report["checks"] if c["status"] != "pass"]
    ranges = {c["name"]: c.get("n") for c in report["checks"]}
    assert ranges["beta_valuation"] == [2, 2000] and ranges["lcm_le_C"] == [1, 2000]
    assert ranges["main_bound"] == [2, 500]
    assert W_BOUNDS == (Fraction(283, 200), Fraction(1443, 1000), Fraction(1321, 1000), Fraction(273, 250), Fraction(201, 200))
    assert W_PRODUCT == Fraction(5949909309448377, 2 * 10 ** 15)
    assert W_PRODUCT < Fraction(298, 100)
    assert w_bound_check().accepted


@pytest.mark.criterion(10, "decay of l_n^3 delta_n: decreasing certified envelope, below 1e-20 at n = 300")
def test_criterion_10_decay():
    table = decay_table(300)
    assert table["status"] == "pass"
    rows = {r.n: r for r in table["rows"]}
    n0 = table["n0"]
    tail = [rows[m].envelope for m in range(n0, 301)]
    assert all(x > y for x, y in zip(tail, tail[1:]))
    for m in range(2, 301):
        assert rows[m].exact <= rows[m].envelope
        assert lcm_upto(m) <= hanson_C_stable(m)
        assert main_bound_check(m)
    assert rows[300].envelope < Fraction(1, 10 ** 20)
    assert rows[300].exact < Fraction(1, 10 ** 20)


@pytest.mark.criterion(11, "every p/q with q <= 10^6 refuted with witness n <= 12")
def test_criterion_11_refutation():
    assert refute_all_denominators(10 ** 6, 12)["status"] == "pass"


@pytest.mark.criterion(12, "Legendre valuation for n <= 300 and Newton expansion vs multinomial")
def test_criterion_12_numkit():
    for m in range(1, 301):
        f = factorial(m)
        for p in primes_upto(m):
            assert p_adic_val(p, f) == val_factorial(p, m, trunc_log(p, m))
    names = ["x", "y", "z"]
    for l in range(1, 4):
        for d in range(0, 7):
            expansion = newton_expand(names[:l], d)
            parts_seen = 0
            for parts in product(range(d + 1), repeat=l):
                if sum(parts) != d:
                    continue
                parts_seen += 1
                mono = tuple((x, e) for x, e in zip(names, parts) if e)
                assert expansion.terms.get(mono, 0) == multinomial(list(parts))
            assert len(expansion.terms) == parts_seen
