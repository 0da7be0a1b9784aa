"""Sparse multivariate polynomials and reduced rational functions over Q.

Monomials are tuples of ``(variable, exponent)`` pairs sorted by the global
variable order (``n`` first, then ``k``, then other names alphabetically),
with strictly positive exponents.  Every value is immutable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import SingularPointError, UnboundVariableError

__all__ = [
    "var_key",
    "MultiPoly",
    "RatFun",
    "poly_gcd",
    "poly_arith",
    "poly_eval",
    "ratfun_arith",
    "ratfun_equal_zero",
    "newton_expand",
]


def var_key(name: str):
    if name == "n":
        return (0, "")
    if name == "k":
        return (1, "")
    return (2, name)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: var_key(item[0])))


def _mono_div(a, b):
    """a / b as a monomial, or None when b does not divide a."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items(), key=lambda item: var_key(item[0])))


def _to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MultiPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _to_fraction(c)
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return cls.const(_to_fraction(x))

    # -- inspection -------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    @property
    def variables(self) -> tuple:
        names = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(names, key=var_key))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(mono == () for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e for _, e in mono) for mono in self._terms)
        return max(dict(mono).get(var, 0) for mono in self._terms)

    def _order_key(self, variables):
        def key(mono):
            exps = dict(mono)
            return (sum(exps.values()), tuple(exps.get(v, 0) for v in variables))

        return key

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        key = self._order_key(self.variables)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def coeffs_in(self, var: str) -> dict:
        """View as a univariate polynomial in ``var``: exponent -> coefficient."""
        buckets: dict = {}
        for mono, c in self._terms.items():
            e = 0
            rest = []
            for v, ev in mono:
                if v == var:
                    e = ev
                else:
                    rest.append((v, ev))
            buckets.setdefault(e, {})[tuple(rest)] = c
        return {e: MultiPoly(t) for e, t in buckets.items()}

    def lc_in(self, var: str) -> "MultiPoly":
        coeffs = self.coeffs_in(var)
        return coeffs[max(coeffs)] if coeffs else MultiPoly()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        other = MultiPoly.coerce(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        if not isinstance(other, MultiPoly):
            c = _to_fraction(other)
            return MultiPoly({m: v * c for m, v in self._terms.items()})
        terms: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                terms[m] = terms.get(m, 0) + ca * cb
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _to_fraction(other)
            if c == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (1 / c)
        return RatFun(self, other)

    def __rtruediv__(self, other):
        return RatFun(other, self)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"polynomial exponent must be a natural number, got {e!r}")
        result = MultiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return other == self
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation and substitution --------------------------------------
    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                if v not in point:
                    raise UnboundVariableError(v)
                term *= _to_fraction(point[v]) ** e
            total += term
        return total

    def subs(self, mapping) -> "MultiPoly":
        """Substitute polynomials (or numbers) for variables."""
        mapping = {v: MultiPoly.coerce(p) for v, p in mapping.items()}
        powers: dict = {}
        result = MultiPoly()
        for mono, c in self._terms.items():
            term = MultiPoly.const(c)
            kept = []
            for v, e in mono:
                if v in mapping:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = mapping[v] ** e
                    term = term * powers[key]
                else:
                    kept.append((v, e))
            if kept:
                term = term * MultiPoly({tuple(kept): 1})
            result = result + term
        return result

    def shift(self, var: str, s: int) -> "MultiPoly":
        if s == 0:
            return self
        return self.subs({var: MultiPoly.var(var) + s})

    # -- content / division -----------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        coeffs = list(self._terms.values())
        den = reduce(lcm, (c.denominator for c in coeffs), 1)
        num = reduce(gcd, (abs(c.numerator) * (den // c.denominator) for c in coeffs), 0)
        return Fraction(num, den)

    def normalized(self) -> "MultiPoly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    def divide_exact(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient self / other; raises ValueError when the division is not exact."""
        other = MultiPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self * (1 / other.constant_value())
        variables = tuple(sorted(set(self.variables) | set(other.variables), key=var_key))

        def lex(mono):
            exps = dict(mono)
            return tuple(exps.get(v, 0) for v in variables)

        lead_b = max(other._terms, key=lex)
        lc_b = other._terms[lead_b]
        rem = self
        quotient: dict = {}
        while rem._terms:
            lead_r = max(rem._terms, key=lex)
            m = _mono_div(lead_r, lead_b)
            if m is None:
                raise ValueError(f"{other} does not divide {self}")
            c = rem._terms[lead_r] / lc_b
            quotient[m] = quotient.get(m, 0) + c
            rem = rem - other * MultiPoly({m: c})
        return MultiPoly(quotient)

    # -- rendering --------------------------------------------------------
    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            mag = abs(c)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.render()!r})"


def _prem(a: MultiPoly, b: MultiPoly, x: str) -> MultiPoly:
    db = b.degree(x)
    lc = b.lc_in(x)
    xpoly = MultiPoly.var(x)
    r = a
    e = a.degree(x) - db + 1
    while not r.is_zero() and r.degree(x) >= db:
        shift = r.degree(x) - db
        r = r * lc - r.lc_in(x) * b * xpoly ** shift
        e -= 1
    return r * lc ** max(e, 0)


def _gcd_rec(a: MultiPoly, b: MultiPoly, variables: tuple) -> MultiPoly:
    # a, b nonzero and only involve ``variables``; result is defined up to a unit.
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(1)
    x = next((v for v in variables if a.degree(v) > 0 or b.degree(v) > 0))
    rest = tuple(v for v in variables if v != x)
    cont_a = _content_in(a, x, rest)
    cont_b = _content_in(b, x, rest)
    g_cont = _gcd_rec(cont_a, cont_b, rest)
    pa = a.divide_exact(cont_a).normalized()
    pb = b.divide_exact(cont_b).normalized()
    if pa.degree(x) < pb.degree(x):
        pa, pb = pb, pa
    while not pb.is_zero():
        if pb.degree(x) == 0:
            pa = MultiPoly.const(1)
            break
        r = _prem(pa, pb, x)
        pa, pb = pb, (r.divide_exact(_content_in(r, x, rest)).normalized() if not r.is_zero() else r)
    if pa.degree(x) > 0:
        pa = pa.divide_exact(_content_in(pa, x, rest))
    return (g_cont * pa).normalized()


def _content_in(p: MultiPoly, x: str, rest: tuple) -> MultiPoly:
    coeffs = [c for c in p.coeffs_in(x).values() if not c.is_zero()]
    g = coeffs[0].normalized()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = _gcd_rec(g, c, rest)
    return g.normalized() if not g.is_constant() else MultiPoly.const(1)


def poly_gcd(a, b) -> MultiPoly:
    """Greatest common divisor, normalized to an integer-primitive polynomial
    with positive leading coefficient (gcd(0, 0) == 0)."""
    a = MultiPoly.coerce(a)
    b = MultiPoly.coerce(b)
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    variables = tuple(sorted(set(a.variables) | set(b.variables), key=var_key))
    return _gcd_rec(a, b, variables)


class RatFun:
    """Reduced quotient of two polynomials.

    The denominator is integer-primitive with positive leading coefficient and
    shares no nonconstant factor with the numerator, so structural equality is
    mathematical equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        num = MultiPoly.coerce(num) if not isinstance(num, RatFun) else num
        den = MultiPoly.coerce(den) if not isinstance(den, RatFun) else den
        if isinstance(num, RatFun) or isinstance(den, RatFun):
            q = RatFun._as(num) / RatFun._as(den)
            num, den = q.num, q.den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = MultiPoly(), MultiPoly.const(1)
        elif den.is_constant():
            num, den = num * (1 / den.constant_value()), MultiPoly.const(1)
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.divide_exact(g)
                den = den.divide_exact(g)
            scale = den.content()
            if den.leading_coefficient() < 0:
                scale = -scale
            num = num * (1 / scale)
            den = den * (1 / scale)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _as(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        return RatFun(MultiPoly.coerce(x))

    @classmethod
    def coerce(cls, x) -> "RatFun":
        return cls._as(x)

    @property
    def variables(self) -> tuple:
        names = set(self.num.variables) | set(self.den.variables)
        return tuple(sorted(names, key=var_key))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def __add__(self, other):
        try:
            other = RatFun._as(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFun)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __sub__(self, other):
        try:
            other = RatFun._as(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFun._as(other) - self

    def __mul__(self, other):
        try:
            other = RatFun._as(other)
        except TypeError:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = RatFun._as(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun._as(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise ValueError(f"exponent must be an integer, got {e!r}")
        if e < 0:
            return RatFun(1) / (self ** (-e))
        return RatFun(self.num ** e, self.den ** e)

    def __eq__(self, other):
        try:
            other = RatFun._as(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise SingularPointError(f"denominator {self.den} vanishes at {dict(point)}", point)
        return self.num.evaluate(point) / d

    def subs(self, mapping) -> "RatFun":
        return RatFun(self.num.subs(mapping), self.den.subs(mapping))

    def shift(self, var: str, s: int) -> "RatFun":
        if s == 0:
            return self
        return RatFun(self.num.shift(var, s), self.den.shift(var, s))

    def render(self) -> str:
        num = self.num.render()
        if self.den.is_constant():
            return num
        if len(self.num.terms) > 1 or "/" in num:
            num = f"({num})"
        den = self.den.render()
        if len(self.den.terms) > 1 or self.den.leading_coefficient() != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatFun({self.render()!r})"


def poly_arith(a, b, op: str) -> MultiPoly:
    a, b = MultiPoly.coerce(a), MultiPoly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p, point) -> Fraction:
    return MultiPoly.coerce(p).evaluate(point)


def ratfun_arith(a, b, op: str) -> RatFun:
    a, b = RatFun.coerce(a), RatFun.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational-function operation {op!r}")


def ratfun_equal_zero(a) -> bool:
    return RatFun.coerce(a).is_zero()


def newton_expand(variables, n: int) -> MultiPoly:
    """(x_1 + ... + x_l)^n by repeated multiplication."""
    base = MultiPoly()
    for v in variables:
        base = base + MultiPoly.var(v)
    return base ** n

