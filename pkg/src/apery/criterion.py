"""The three-property irrationality criterion, replayed on finite ranges.

delta_n = zeta(3) - b_n/a_n is never materialized; every statement about it
goes through the certified bracket 0 < delta_n <= 8/a_n^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .cauchy import K_TAIL, zeta3_enclosure
from .numkit import lcm_upto
from .sequences import a, b, casoratian_w, rho

__all__ = [
    "CriterionReport",
    "GROWTH_BASE",
    "GROWTH_INDEX",
    "integrality_check",
    "growth_check",
    "positivity_check",
    "decay_table",
    "contradiction_demo",
    "refute_all_denominators",
    "parse_rational",
    "criterion_report",
]

# a_n >= a_52 * 33^(n-52), from rho increasing and rho_51 > 33
GROWTH_BASE = 33
GROWTH_INDEX = 52
# l_n <= 3^n on the table's range, and 3^3 < 33 makes the envelope decrease
LCM_BASE = 3


def _verdict(name, failures, **extra) -> dict:
    return {"name": name, "status": "pass" if not failures else "fail", "failures": failures[:10], **extra}


def integrality_check(N: int) -> dict:
    if N < 1:
        raise ValueError("N >= 1 required")
    failures = []
    for n in range(0, N + 1):
        ell = lcm_upto(n)
        if not isinstance(a(n), int):
            failures.append({"check": "a_integer", "n": n})
        if (2 * ell ** 3 * b(n)).denominator != 1:
            failures.append({"check": "scaled_b_integer", "n": n})
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                if ell % (j * comb(i, j)):
                    failures.append({"check": "j_binomial_divides_lcm", "n": n, "i": i, "j": j})
    return _verdict("integrality", failures, range=[0, N])


def growth_check(N: int) -> dict:
    if N < GROWTH_INDEX:
        raise ValueError(f"N >= {GROWTH_INDEX} required")
    failures = []
    for n in range(2, N):
        if not rho(n) < rho(n + 1):
            failures.append({"check": "rho_increasing", "n": n})
    rho51 = rho(51)
    if not rho51 > GROWTH_BASE:
        failures.append({"check": "rho_51_gt_33", "value": str(rho51)})
    # induction replay: a_{n+1} = rho_n a_n >= 33 a_n once rho_n >= rho_51 > 33
    base = a(GROWTH_INDEX)
    for n in range(GROWTH_INDEX, N + 1):
        if not a(n) >= base * GROWTH_BASE ** (n - GROWTH_INDEX):
            failures.append({"check": "a_lower_bound", "n": n})
        if n < N and not a(n + 1) >= GROWTH_BASE * a(n):
            failures.append({"check": "induction_step", "n": n})
    return _verdict("growth", failures, range=[2, N], rho_51=str(rho51), rho_51_float=float(rho51))


def positivity_check(N: int, b_seq=None) -> dict:
    """b_n/a_n strictly increasing on 2..N (w_n > 0), so delta_n > 0 there."""
    if N < 2:
        raise ValueError("N >= 2 required")
    bs = b_seq or b
    failures = []
    for n in range(2, N + 1):
        if not bs(n) / a(n) < bs(n + 1) / a(n + 1):
            failures.append({"check": "b_over_a_increasing", "n": n})
        if b_seq is None and not casoratian_w(n) > 0:
            failures.append({"check": "casoratian_positive", "n": n})
    return _verdict("positivity", failures, range=[2, N])


def _growth_floor(n: int) -> int:
    if n <= GROWTH_INDEX:
        return a(n)
    return a(GROWTH_INDEX) * GROWTH_BASE ** (n - GROWTH_INDEX)


@dataclass
class DecayRow:
    n: int
    exact: Fraction
    envelope: Fraction
    hanson_sq: Fraction | None = None

    def to_dict(self) -> dict:
        out = {"n": self.n, "exact": str(self.exact), "envelope": str(self.envelope)}
        if self.hanson_sq is not None:
            out["hanson_envelope_sq"] = str(self.hanson_sq)
        return out


def decay_table(N: int, with_hanson: bool = True) -> dict:
    """Certified upper bounds on l_n^3 delta_n.

    ``exact`` is l_n^3 * 8/a_n.  ``envelope`` is 8 * 27^n / A_n with A_n = a_n
    up to index 52 and a_52 * 33^(n-52) after it; it dominates ``exact``
    wherever l_n <= 3^n, which is checked row by row.  Past n_0 it shrinks
    by the factor 27/33 per step.  The Hanson column is
    (8 (10n)^(3k-3/2) W^(3n+3) / A_n)^2, the fully analytic envelope, kept
    squared so that it stays rational.
    """
    if N < 2:
        raise ValueError("N >= 2 required")
    from .hanson import W, alpha_index

    rows = []
    failures = []
    for n in range(2, N + 1):
        ell = lcm_upto(n)
        exact = Fraction(K_TAIL * ell ** 3, a(n))
        floor_a = _growth_floor(n)
        envelope = Fraction(K_TAIL * LCM_BASE ** (3 * n), floor_a)
        if ell > LCM_BASE ** n:
            failures.append({"check": "lcm_le_3n", "n": n})
        if not exact <= envelope:
            failures.append({"check": "exact_le_envelope", "n": n})
        hanson = None
        if with_hanson:
            k = alpha_index(n)
            hanson = Fraction(K_TAIL ** 2 * (10 * n) ** (6 * k - 3)) * W ** (6 * n + 6) / floor_a ** 2
        rows.append(DecayRow(n, exact, envelope, hanson))
    n0 = rows[-1].n
    for prev, row in zip(reversed(rows[:-1]), reversed(rows)):
        if row.envelope < prev.envelope:
            n0 = prev.n
        else:
            break
    hanson_n0 = None
    if with_hanson:
        hanson_n0 = rows[-1].n
        for prev, row in zip(reversed(rows[:-1]), reversed(rows)):
            if row.hanson_sq < prev.hanson_sq:
                hanson_n0 = prev.n
            else:
                break
    last = rows[-1]
    if N >= 120 and not last.exact < Fraction(1, 10 ** 6):
        failures.append({"check": "bound_at_N_below_1e-6", "n": N})
    return {
        "name": "decay",
        "status": "pass" if not failures else "fail",
        "failures": failures[:10],
        "range": [2, N],
        "n0": n0,
        "hanson_n0": hanson_n0,
        "gate_27_lt_33": LCM_BASE ** 3 < GROWTH_BASE,
        "rows": rows,
    }


def _first_integer_gap(q: int, N: int):
    """Least n <= N with 16 q l_n^3 < a_n."""
    for n in range(2, N + 1):
        if 2 * K_TAIL * q * lcm_upto(n) ** 3 < a(n):
            return n
    return None


def contradiction_demo(p: int, q: int, N: int) -> dict:
    """Refute zeta(3) = p/q on indices n <= N.

    Two witnesses are searched.  The enclosure witness is the least n with
    p/q outside [b_n/a_n, b_n/a_n + 8/a_n^2].  The integer-gap witness is the
    least n with 16 q l_n^3 < a_n: there X = 2 l_n^3 (a_n p - q b_n) is an
    integer, and zeta(3) = p/q would force 0 < X <= 16 q l_n^3 / a_n < 1.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    x = Fraction(p, q)
    enc_witness = None
    side = None
    for n in range(2, N + 1):
        enc = zeta3_enclosure(n)
        if x < enc.lo or x > enc.hi:
            enc_witness = n
            side = "below" if x < enc.lo else "above"
            break
    gap = _first_integer_gap(x.denominator, N)
    gap_value = None
    if gap is not None:
        ell3 = lcm_upto(gap) ** 3
        X = 2 * ell3 * (a(gap) * x.numerator - x.denominator * b(gap))
        assert X.denominator == 1
        gap_value = int(X)
    witnesses = [w for w in (enc_witness, gap) if w is not None]
    return {
        "target": f"{x.numerator}/{x.denominator}",
        "refuted": bool(witnesses),
        "witness": min(witnesses) if witnesses else None,
        "enclosure_witness": enc_witness,
        "side": side,
        "integer_gap_witness": gap,
        "integer_gap_value": gap_value,
        "max_n": N,
    }


def refute_all_denominators(q_max: int, n: int) -> dict:
    """No p/q with q <= q_max lies in the enclosure at n.

    For each q the only candidate numerator is floor(q * hi); it is refuted
    when q * lo is not below it.
    """
    enc = zeta3_enclosure(n)
    lo_n, lo_d = enc.lo.numerator, enc.lo.denominator
    hi_n, hi_d = enc.hi.numerator, enc.hi.denominator
    survivors = []
    for q in range(1, q_max + 1):
        p = q * hi_n // hi_d
        if p * lo_d >= q * lo_n:  # lo <= p/q <= hi
            survivors.append(f"{p}/{q}")
            if len(survivors) >= 10:
                break
    return {"q_max": q_max, "n": n, "status": "pass" if not survivors else "fail", "survivors": survivors}


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)


@dataclass
class CriterionReport:
    max_n: int
    integrality: dict
    growth: dict
    positivity: dict
    decay: dict
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v["status"] == "pass" for v in (self.integrality, self.growth, self.positivity, self.decay))

    def to_dict(self) -> dict:
        decay = dict(self.decay)
        decay["rows"] = [r.to_dict() for r in decay["rows"]]
        return {
            "max_n": self.max_n,
            "status": "pass" if self.passed else "fail",
            "integrality": self.integrality,
            "growth": self.growth,
            "positivity": self.positivity,
            "decay": decay,
        }


def criterion_report(N: int) -> CriterionReport:
    return CriterionReport(
        N,
        integrality_check(N),
        growth_check(max(N, GROWTH_INDEX)),
        positivity_check(N),
        decay_table(N),
    )
