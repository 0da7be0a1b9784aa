"""Shift operators in S_n, S_k over Q(n, k), provisos, and Ore right division.

An operator is a finite sum  sum_{(i, j)} p_{i,j}(n, k) S_n^i S_k^j  kept in
normal form with every coefficient to the left of its shift monomial, so that
``(P . f)(n, k) = sum p_{i,j}(n, k) f(n + i, k + j)``.  Shifts move past
coefficients by substitution: ``S_n r(n, k) = r(n + 1, k) S_n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import SingularPointError, SupportError
from .polyalg import MultiPoly, RatFun

__all__ = [
    "ShiftOp",
    "Proviso",
    "AnnRec",
    "op_mul",
    "op_apply",
    "ore_right_divide",
    "order_reduction_check",
    "ReductionVerdict",
    "polynomial_covered",
]


class ShiftOp:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                c = RatFun.coerce(c)
                if not c.is_zero():
                    clean[(int(i), int(j))] = c
        self._terms = clean

    @classmethod
    def one(cls) -> "ShiftOp":
        return cls({(0, 0): 1})

    @classmethod
    def sn(cls, power: int = 1) -> "ShiftOp":
        return cls({(power, 0): 1})

    @classmethod
    def sk(cls, power: int = 1) -> "ShiftOp":
        return cls({(0, power): 1})

    @classmethod
    def coerce(cls, x) -> "ShiftOp":
        if isinstance(x, ShiftOp):
            return x
        return cls({(0, 0): RatFun.coerce(x)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(s == (0, 0) for s in self._terms)

    def scalar(self) -> RatFun:
        if not self.is_scalar():
            raise ValueError("operator involves shifts")
        return self._terms.get((0, 0), RatFun(0))

    def is_univariate_n(self) -> bool:
        return all(j == 0 for _, j in self._terms) and all(
            "k" not in c.variables for c in self._terms.values()
        )

    def order(self, var: str = "n") -> int:
        """Largest exponent of the shift in ``var`` (-1 for the zero operator)."""
        idx = 0 if var == "n" else 1
        if not self._terms:
            return -1
        return max(s[idx] for s in self._terms)

    def coefficient(self, i: int, j: int = 0) -> RatFun:
        return self._terms.get((i, j), RatFun(0))

    def leading_coefficient(self) -> RatFun:
        """Coefficient of the highest S_n power (univariate operators)."""
        return self.coefficient(self.order("n"), 0)

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = ShiftOp.coerce(other)
        terms = dict(self._terms)
        for s, c in other._terms.items():
            terms[s] = terms[s] + c if s in terms else c
        return ShiftOp(terms)

    __radd__ = __add__

    def __neg__(self):
        return ShiftOp({s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-ShiftOp.coerce(other))

    def __rsub__(self, other):
        return ShiftOp.coerce(other) - self

    def __mul__(self, other):
        return op_mul(self, ShiftOp.coerce(other))

    def __rmul__(self, other):
        return op_mul(ShiftOp.coerce(other), self)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"operator exponent must be a natural number, got {e!r}")
        result = ShiftOp.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = ShiftOp.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def apply(self, f, n: int, k: int = 0) -> Fraction:
        return op_apply(self, f, (n, k))

    def render(self) -> str:
        from .dsl import render_operator

        return render_operator(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ShiftOp({self.render()!r})"


def _shift_coeff(c: RatFun, i: int, j: int) -> RatFun:
    return c.shift("n", i).shift("k", j)


def op_mul(a: ShiftOp, b: ShiftOp) -> ShiftOp:
    """Non-commutative product a * b."""
    terms: dict = {}
    for (i1, j1), c1 in a._terms.items():
        for (i2, j2), c2 in b._terms.items():
            c = c1 * _shift_coeff(c2, i1, j1)
            key = (i1 + i2, j1 + j2)
            terms[key] = terms[key] + c if key in terms else c
    return ShiftOp(terms)


def op_apply(P: ShiftOp, f: Callable, at) -> Fraction:
    """(P . f) at the point ``at``.

    ``f`` takes ``(n, k)``; univariate sequences may ignore ``k``.  Raises
    SingularPointError when a coefficient denominator vanishes and
    SupportError when ``f`` is undefined at a shifted point.
    """
    n, k = at
    point = {"n": n, "k": k}
    total = Fraction(0)
    for (i, j), c in sorted(P._terms.items()):
        coeff = c.evaluate(point)
        if coeff == 0:
            continue
        try:
            value = f(n + i, k + j)
        except SupportError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise SupportError(f"sequence undefined at {(n + i, k + j)}: {exc}", (n + i, k + j)) from exc
        total += coeff * value
    return total


def ore_right_divide(A: ShiftOp, B: ShiftOp):
    """Euclidean right division A = Q*B + R in Q(n)[S_n] with order(R) < order(B)."""
    for name, op in (("dividend", A), ("divisor", B)):
        if not op.is_univariate_n():
            raise ValueError(f"{name} must be univariate in S_n with coefficients in Q(n)")
        if any(i < 0 for i, _ in op._terms):
            raise ValueError(f"{name} has negative shift powers")
    if B.is_zero():
        raise ZeroDivisionError("right division by the zero operator")
    s = B.order("n")
    lc_b = B.leading_coefficient()
    Q = ShiftOp()
    R = A
    while not R.is_zero() and R.order("n") >= s:
        d = R.order("n") - s
        c = R.leading_coefficient() / lc_b.shift("n", d)
        step = ShiftOp({(d, 0): c})
        Q = Q + step
        R = R - step * B
    return Q, R


@dataclass(frozen=True)
class Proviso:
    """Guard on integer points (n, k).

    ``nonvanishing`` polynomials must be nonzero; each of ``guards`` is a
    linear polynomial that must be >= 0.  A point failing either belongs to
    the excluded set.
    """

    nonvanishing: tuple = ()
    guards: tuple = ()
    source: str = field(default="", compare=False)

    def holds_at(self, n: int, k: int = 0) -> bool:
        point = {"n": n, "k": k}
        for p in self.nonvanishing:
            if p.evaluate(point) == 0:
                return False
        for g in self.guards:
            if g.evaluate(point) < 0:
                return False
        return True

    def excludes(self, n: int, k: int = 0) -> bool:
        return not self.holds_at(n, k)

    def is_empty(self) -> bool:
        return not self.nonvanishing and not self.guards

    def __and__(self, other: "Proviso") -> "Proviso":
        nv = tuple(dict.fromkeys(self.nonvanishing + other.nonvanishing))
        gd = tuple(dict.fromkeys(self.guards + other.guards))
        return Proviso(nv, gd)

    def shifted(self, i: int, j: int) -> "Proviso":
        return Proviso(
            tuple(p.shift("n", i).shift("k", j) for p in self.nonvanishing),
            tuple(g.shift("n", i).shift("k", j) for g in self.guards),
        )

    def render(self) -> str:
        parts = [f"{p.render()} <> 0" for p in self.nonvanishing]
        parts += [f"{g.render()} >= 0" for g in self.guards]
        return ", ".join(parts)


@dataclass(frozen=True)
class AnnRec:
    """Operator together with the proviso under which it annihilates a sequence."""

    operator: ShiftOp
    guard: Proviso = Proviso()
    name: str = ""

    def denominators(self) -> list:
        return [c.den for c in self.operator.terms.values() if not c.den.is_constant()]

    def guard_covers_denominators(self) -> bool:
        """True when every zero of every coefficient denominator is excluded by a
        nonvanishing guard."""
        return all(polynomial_covered(d, self.guard.nonvanishing) for d in self.denominators())


def polynomial_covered(required: MultiPoly, excluded) -> bool:
    """Whether ``required != 0`` follows from ``p != 0`` for all ``p`` in ``excluded``.

    Repeatedly strips common factors with the product of the excluded
    polynomials; coverage holds when only a constant remains.  Sufficient,
    not necessary: integer-only arguments are left to the caller.
    """
    from .polyalg import poly_gcd

    rest = MultiPoly.coerce(required)
    if rest.is_zero():
        return False
    product = MultiPoly.const(1)
    for p in excluded:
        product = product * p
    while not rest.is_constant():
        g = poly_gcd(rest, product)
        if g.is_constant():
            return False
        rest = rest.divide_exact(g)
    return True


@dataclass
class ReductionVerdict:
    accepted: bool
    quotient: ShiftOp | None = None
    remainder: ShiftOp | None = None
    failures: list = field(default_factory=list)
    checked_range: tuple = ()

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "quotient": self.quotient.render() if self.quotient is not None else None,
            "remainder": self.remainder.render() if self.remainder is not None else None,
            "failures": list(self.failures),
            "checked_range": list(self.checked_range),
        }


def _coefficient_problem(Q: ShiftOp, lead: RatFun, m: int):
    point = {"n": m, "k": 0}
    try:
        if lead.evaluate(point) == 0:
            return "leading coefficient vanishes"
        for c in Q.terms.values():
            c.evaluate(point)
    except SingularPointError:
        return "coefficient singular"
    return None


def order_reduction_check(A, B, y, initial_window, check_range) -> ReductionVerdict:
    """Show that y satisfies the lower-order B from the higher-order A.

    Accepts iff (1) A annihilates y on ``check_range``, (2) A = Q*B exactly,
    (3) (B . y)_n = 0 at the ``order(A) - order(B)`` indices of
    ``initial_window`` and (4) Q's leading coefficient is defined and nonzero
    along the induction; B then holds on ``check_range`` by induction on Q.
    """
    A = A.operator if isinstance(A, AnnRec) else A
    B = B.operator if isinstance(B, AnnRec) else B
    f = lambda n, k: y(n)  # noqa: E731
    failures = []
    lo, hi = check_range[0], check_range[-1]
    for n in check_range:
        try:
            if op_apply(A, f, (n, 0)) != 0:
                failures.append({"condition": "annihilated_by_A", "n": n})
                break
        except (SingularPointError, SupportError) as exc:
            failures.append({"condition": "annihilated_by_A", "n": n, "error": str(exc)})
            break

    Q, R = ore_right_divide(A, B)
    if not R.is_zero():
        failures.append({"condition": "exact_division", "remainder": R.render()})

    gap = A.order("n") - B.order("n")
    window = list(initial_window)
    if len(window) < gap:
        failures.append({"condition": "initial_values", "detail": f"need {gap} indices, got {len(window)}"})
    for n in window[:gap]:
        if op_apply(B, f, (n, 0)) != 0:
            failures.append({"condition": "initial_values", "n": n})

    # (B.y)_{m + gap} is solved from Q at index m, for m up to hi - gap
    start = window[0] if window else lo
    lead = Q.leading_coefficient()
    for m in range(start, hi - gap + 1):
        problem = _coefficient_problem(Q, lead, m)
        if problem:
            failures.append({"condition": "leading_coefficient", "n": m, "detail": problem})
            break
    return ReductionVerdict(not failures, Q, R, failures, (lo, hi))
