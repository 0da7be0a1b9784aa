"""Parser and printer for the certificate language.

Grammar (whitespace-insensitive inside a logical line; a physical line that
starts with whitespace continues the previous one; ``#`` starts a comment)::

    file      = { stanza | check } ;
    stanza    = NAME ":" expr [ "where" guard { "," guard } ] ;
    check     = "verify" NAME "annihilates" NAME ( "symbolic" | ranges )
              | "verify" NAME "reduces" "to" NAME "on" NAME
                    "initial" INT ".." INT "for" range ;
    ranges    = "for" range { "," range } ;
    range     = NAME "in" expr ".." expr ;
    guard     = expr "<>" expr
              | expr cmp expr { cmp expr }
              | NAME "in" expr ".." expr ;
    cmp       = "<=" | "<" | ">=" | ">" ;
    expr      = term { ( "+" | "-" ) term } ;
    term      = unary { ( "*" | "/" ) unary } ;
    unary     = ( "-" | "+" ) unary | power ;
    power     = atom [ "^" INT ] ;
    atom      = INT | "n" | "k" | "Sn" | "Sk" | NAME | "(" expr ")" ;

Products are operator products, so ``Sn*(n+1)`` is ``(n+2)*Sn``.  A NAME in
an expression refers to an operator defined by an earlier stanza.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DSLSyntaxError, UnboundVariableError
from .polyalg import MultiPoly, RatFun
from .shiftalg import AnnRec, Proviso, ShiftOp

__all__ = [
    "parse_operator",
    "parse_expression",
    "render_operator",
    "render_annrec",
    "parse_certificate",
    "CertificateFile",
    "Check",
]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op><>|<=|>=|\.\.|[-+*/^(),:<>]))"
)
_KEYWORDS = {"where", "in", "verify", "annihilates", "symbolic", "for", "reduces", "to", "on", "initial"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int = 1, col0: int = 1):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise DSLSyntaxError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), line, col0 + start))
        pos = m.end()
    toks.append(_Tok("eof", "", line, col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, toks, env=None):
        self.toks = toks
        self.i = 0
        self.env = env or {}

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        raise DSLSyntaxError(message, tok.line, tok.col)

    def accept(self, text):
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of line"
            self.error(f"expected {text!r}, found {found!r}")

    def name(self) -> str:
        if self.tok.kind != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of line'!r}")
        t = self.tok.text
        self.i += 1
        return t

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "num":
            self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    def at_end(self):
        return self.tok.kind == "eof"

    # expressions -----------------------------------------------------------
    def expr(self) -> ShiftOp:
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ShiftOp:
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op_tok = self.tok
            self.i += 1
            rhs = self.unary()
            if op_tok.text == "*":
                value = value * rhs
            else:
                if not rhs.is_scalar():
                    self.error("division by an operator that contains shifts", op_tok)
                if rhs.is_zero():
                    self.error("division by zero", op_tok)
                value = value * ShiftOp.coerce(RatFun(1) / rhs.scalar())
        return value

    def unary(self) -> ShiftOp:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> ShiftOp:
        base = self.atom()
        if self.tok.text == "^":
            caret = self.tok
            self.i += 1
            if self.tok.text == "-":
                self.error("exponents must be nonnegative integers", caret)
            if self.tok.kind != "num":
                self.error("expected an integer exponent")
            e = int(self.tok.text)
            self.i += 1
            base = base ** e
        return base

    def atom(self) -> ShiftOp:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return ShiftOp.coerce(int(tok.text))
        if tok.kind == "name":
            self.i += 1
            if tok.text == "Sn":
                return ShiftOp.sn()
            if tok.text == "Sk":
                return ShiftOp.sk()
            if tok.text in ("n", "k"):
                return ShiftOp.coerce(MultiPoly.var(tok.text))
            if tok.text in self.env:
                return self.env[tok.text]
            raise _unbound(tok)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        self.error(f"unexpected {tok.text or 'end of line'!r}")

    # guards ----------------------------------------------------------------
    def polynomial(self) -> MultiPoly:
        start = self.tok
        value = self.expr()
        if not value.is_scalar() or not value.scalar().is_polynomial():
            self.error("guards must be polynomial in n and k", start)
        return value.scalar().num

    def guard(self, nonvanishing, guards):
        if self.tok.kind == "name" and self.toks[self.i + 1].text == "in":
            var_tok = self.tok
            var = self.name()
            if var not in ("n", "k"):
                raise _unbound(var_tok)
            self.expect("in")
            lo = self.polynomial()
            self.expect("..")
            hi = self.polynomial()
            x = MultiPoly.var(var)
            self._linear(x - lo, var_tok)
            self._linear(hi - x, var_tok)
            guards.extend([x - lo, hi - x])
            return
        start = self.tok
        left = self.polynomial()
        if self.accept("<>"):
            right = self.polynomial()
            diff = left - right
            if diff.is_zero():
                self.error("guard excludes every point", start)
            nonvanishing.append(diff)
            return
        if self.tok.text not in ("<=", "<", ">=", ">"):
            self.error("expected '<>', '<=', '<', '>=' or '>' in guard")
        while self.tok.text in ("<=", "<", ">=", ">"):
            op = self.tok.text
            self.i += 1
            right = self.polynomial()
            if op == "<=":
                g = right - left
            elif op == "<":
                g = right - left - 1
            elif op == ">=":
                g = left - right
            else:
                g = left - right - 1
            self._linear(g, start)
            guards.append(g)
            left = right

    def _linear(self, p: MultiPoly, tok):
        if p.degree() > 1:
            self.error("inequality guards must be linear", tok)

    def proviso(self) -> Proviso:
        nonvanishing, guards = [], []
        self.guard(nonvanishing, guards)
        while self.accept(","):
            self.guard(nonvanishing, guards)
        nonvanishing = dict.fromkeys(p.normalized() for p in nonvanishing)
        return Proviso(tuple(nonvanishing), tuple(dict.fromkeys(guards)))


def _unbound(tok):
    name = tok.text
    err = UnboundVariableError(name)
    err.line, err.column = tok.line, tok.col
    return err


def parse_expression(text: str, env=None) -> ShiftOp:
    p = _Parser(_tokenize(text), env)
    value = p.expr()
    if not p.at_end():
        p.error(f"unexpected {p.tok.text!r}")
    return value


def parse_operator(text: str, env=None, name: str = "") -> AnnRec:
    """Parse ``expr [where guards]`` into a guarded operator."""
    p = _Parser(_tokenize(text), env)
    op = p.expr()
    guard = Proviso()
    if p.accept("where"):
        guard = p.proviso()
    if not p.at_end():
        p.error(f"unexpected {p.tok.text!r}")
    return AnnRec(op, guard, name)


# -- rendering ----------------------------------------------------------------
def _shift_text(i: int, j: int) -> str:
    parts = []
    for sym, e in (("Sn", i), ("Sk", j)):
        if e == 1:
            parts.append(sym)
        elif e:
            parts.append(f"{sym}^{e}" if e > 0 else f"{sym}^({e})")
    return "*".join(parts)


def _coeff_text(c: RatFun) -> str:
    text = c.render()
    if c.is_polynomial() and len(c.num.terms) == 1:
        return text
    if c.is_polynomial():
        return f"({text})"
    num = c.num.render()
    den = c.den.render()
    return f"({num})/({den})"


def render_operator(op: ShiftOp) -> str:
    """Canonical text: terms by descending (S_n, S_k) power, coefficient first."""
    terms = sorted(op.terms.items(), key=lambda t: t[0], reverse=True)
    if not terms:
        return "0"
    out = []
    for idx, ((i, j), c) in enumerate(terms):
        negative = c.num.leading_coefficient() < 0
        mag = -c if negative else c
        shift = _shift_text(i, j)
        if not shift:
            body = _coeff_text(mag) if not mag.is_polynomial() or len(mag.num.terms) == 1 else mag.render()
        elif mag == RatFun(1):
            body = shift
        else:
            body = f"{_coeff_text(mag)}*{shift}"
        if idx == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append(("- " if negative else "+ ") + body)
    return " ".join(out)


def render_annrec(rec: AnnRec) -> str:
    text = render_operator(rec.operator)
    if not rec.guard.is_empty():
        text += " where " + rec.guard.render()
    return text


# -- certificate files --------------------------------------------------------
@dataclass
class Check:
    kind: str  # "annihilates", "symbolic" or "reduces"
    operator: str
    target: str
    ranges: dict = field(default_factory=dict)
    reduced: str = ""
    initial: tuple = ()
    line: int = 0


@dataclass
class CertificateFile:
    operators: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    comments: dict = field(default_factory=dict)


def _logical_lines(text: str):
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if raw[:1].isspace() and current is not None:
            current[1].append((lineno, body))
            continue
        if current is not None:
            yield current
        current = (lineno, [(lineno, body)])
    if current is not None:
        yield current


def _tokenize_logical(pieces):
    toks = []
    for lineno, body in pieces:
        toks.extend(_tokenize(body, lineno)[:-1])
    last_line, last_body = pieces[-1]
    toks.append(_Tok("eof", "", last_line, len(last_body.rstrip()) + 1))
    return toks


def _range_bound(p: _Parser):
    start = p.tok
    value = p.expr()
    if not value.is_scalar() or not value.scalar().is_polynomial():
        p.error("range bounds must be polynomial", start)
    return value.scalar().num


def parse_certificate(text: str) -> CertificateFile:
    cert = CertificateFile()
    for lineno, pieces in _logical_lines(text):
        toks = _tokenize_logical(pieces)
        p = _Parser(toks, {name: rec.operator for name, rec in cert.operators.items()})
        first = p.tok
        if first.text == "verify":
            p.i += 1
            cert.checks.append(_parse_check(p, lineno))
            continue
        name = p.name()
        if name in _KEYWORDS or name in ("n", "k", "Sn", "Sk"):
            p.error(f"reserved word {name!r} cannot name an operator", first)
        if name in cert.operators:
            p.error(f"operator {name!r} defined twice", first)
        p.expect(":")
        op = p.expr()
        guard = Proviso()
        if p.accept("where"):
            guard = p.proviso()
        if not p.at_end():
            p.error(f"unexpected {p.tok.text!r}")
        cert.operators[name] = AnnRec(op, guard, name)
    for chk in cert.checks:
        for ref in (chk.operator, chk.reduced):
            if ref and ref not in cert.operators:
                raise DSLSyntaxError(f"unknown operator {ref!r}", chk.line, 1)
    return cert


def _parse_check(p: _Parser, lineno: int) -> Check:
    op_name = p.name()
    if p.accept("annihilates"):
        target = p.name()
        if p.accept("symbolic"):
            chk = Check("symbolic", op_name, target, line=lineno)
        else:
            p.expect("for")
            chk = Check("annihilates", op_name, target, ranges=_parse_ranges(p), line=lineno)
    elif p.accept("reduces"):
        p.expect("to")
        reduced = p.name()
        p.expect("on")
        target = p.name()
        p.expect("initial")
        lo = p.integer()
        p.expect("..")
        hi = p.integer()
        p.expect("for")
        chk = Check("reduces", op_name, target, ranges=_parse_ranges(p), reduced=reduced, initial=(lo, hi), line=lineno)
    else:
        p.error("expected 'annihilates' or 'reduces'")
    if not p.at_end():
        p.error(f"unexpected {p.tok.text!r}")
    return chk


def _parse_ranges(p: _Parser) -> dict:
    ranges = {}
    while True:
        var_tok = p.tok
        var = p.name()
        if var not in ("n", "k"):
            raise _unbound(var_tok)
        p.expect("in")
        lo = _range_bound(p)
        p.expect("..")
        hi = _range_bound(p)
        ranges[var] = (lo, hi)
        if not p.accept(","):
            break
    if "n" not in ranges or not ranges["n"][0].is_constant() or not ranges["n"][1].is_constant():
        p.error("an integer range for n is required")
    return ranges
