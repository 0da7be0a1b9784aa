"""Verification of guarded telescoping identities and creative-telescoping sums.

Two independent routes:

* symbolic, for hypergeometric terms: every shifted instance is rewritten as a
  rational function times a common reference term by walking the shift
  ratios, the resulting rational function must normalize to zero, and every
  ratio instance used on the way must be licensed by the identity's proviso;
* pointwise, for anything with an exact evaluator: the identity is evaluated
  in rational arithmetic on a finite grid.

``ct_sum_check`` evaluates both sides of the summed identity, boundary terms,
overhang double sum and singular part included, for each n of a range.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import SingularPointError, SupportError
from .polyalg import MultiPoly, RatFun
from .shiftalg import Proviso, ShiftOp, op_apply, polynomial_covered

__all__ = [
    "HyperTerm",
    "GuardedIdentity",
    "Verdict",
    "SumVerdict",
    "verify_hyper_identity",
    "verify_pointwise",
    "ct_sum_check",
    "triangle_grid",
    "binomial_term",
    "lambda_term",
]

N = MultiPoly.var("n")
K = MultiPoly.var("k")


@dataclass(frozen=True)
class HyperTerm:
    """Bivariate term given by shift ratios.

    ``ratio_n`` is f(n+1,k)/f(n,k) and ``ratio_k`` is f(n,k+1)/f(n,k); both
    relations are assumed valid wherever their denominators do not vanish.
    ``relative_to`` = (name, factor) declares f = factor * (named term)
    instead, which lets identities mix e.g. U and lambda.
    """

    name: str
    ratio_n: RatFun | None = None
    ratio_k: RatFun | None = None
    anchor: tuple = (0, 0)
    base: Fraction = Fraction(1)
    support: Callable | None = None
    relative_to: tuple | None = None
    direct: Callable | None = None

    def by_ratios(self, n: int, k: int) -> Fraction:
        """Walk from the anchor: first along n at the anchor column, then along k."""
        if self.support is not None and not self.support(n, k):
            return Fraction(0)
        n0, k0 = self.anchor
        value = Fraction(self.base)
        for m in range(n0, n) if n >= n0 else ():
            value *= self.ratio_n.evaluate({"n": m, "k": k0})
        if n < n0:
            for m in range(n0 - 1, n - 1, -1):
                value /= self.ratio_n.evaluate({"n": m, "k": k0})
        if k >= k0:
            for j in range(k0, k):
                value *= self.ratio_k.evaluate({"n": n, "k": j})
        else:
            for j in range(k0 - 1, k - 1, -1):
                value /= self.ratio_k.evaluate({"n": n, "k": j})
        return value

    def __call__(self, n: int, k: int) -> Fraction:
        if self.direct is not None:
            return Fraction(self.direct(n, k))
        return self.by_ratios(n, k)


def binomial_term() -> HyperTerm:
    from .numkit import binomial

    return HyperTerm(
        "binomial",
        ratio_n=RatFun(N + 1, N + 1 - K),
        ratio_k=RatFun(N - K, K + 1),
        support=lambda n, k: 0 <= k <= n,
        direct=binomial,
    )


def lambda_term() -> HyperTerm:
    from .sequences import lam

    return HyperTerm(
        "lambda",
        ratio_n=RatFun((N + K + 1) ** 2, (N + 1 - K) ** 2),
        ratio_k=RatFun((N - K) ** 2 * (N + K + 1) ** 2, (K + 1) ** 4),
        support=lambda n, k: 0 <= k <= n,
        direct=lam,
    )


@dataclass
class GuardedIdentity:
    """sum_parts coeff(n, k) * term(n + i, k + j) = 0 whenever ``delta`` holds.

    ``delta`` describes the admissible points; its complement is the
    excluded set.
    """

    name: str
    parts: list
    delta: Proviso = Proviso()

    @classmethod
    def from_operator(cls, name, op: ShiftOp, term: str, delta: Proviso = Proviso()):
        parts = [(c, term, i, j) for (i, j), c in sorted(op.terms.items())]
        return cls(name, parts, delta)

    def with_delta(self, delta: Proviso) -> "GuardedIdentity":
        return GuardedIdentity(self.name, list(self.parts), delta)

    def evaluate(self, evaluators, n: int, k: int) -> Fraction:
        point = {"n": n, "k": k}
        total = Fraction(0)
        for c, term, i, j in self.parts:
            coeff = c.evaluate(point)
            if coeff:
                total += coeff * Fraction(evaluators[term](n + i, k + j))
        return total


@dataclass
class Verdict:
    name: str
    accepted: bool
    method: str
    reason: str = ""
    failing_point: tuple | None = None
    guard_trace: list = field(default_factory=list)
    residue: str = ""
    checked: int = 0
    skipped: int = 0
    grid: str = ""

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "status": "pass" if self.accepted else "fail",
            "method": self.method,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.failing_point is not None:
            out["failing_point"] = list(self.failing_point)
        if self.guard_trace:
            out["guard_trace"] = self.guard_trace
        if self.residue:
            out["residue"] = self.residue
        if self.method == "pointwise":
            out["checked"] = self.checked
            out["skipped_excluded"] = self.skipped
            out["grid"] = self.grid
        return out


# -- symbolic route -------------------------------------------------------------
def _ratio_walk(term: HyperTerm, i: int, j: int):
    """f(n+i, k+j) / f(n, k) as a RatFun, plus the instance conditions used."""
    if term.ratio_n is None or term.ratio_k is None:
        raise LookupError(term.name)
    product = RatFun(1)
    uses = []
    rk, rn = term.ratio_k, term.ratio_n
    for t in range(j) if j > 0 else ():
        r = rk.shift("k", t)
        product = product * r
        uses.append(("k", "forward", (0, t), r.den))
    for t in range(1, -j + 1) if j < 0 else ():
        r = rk.shift("k", -t)
        product = product / r
        uses.append(("k", "backward", (0, -t), r.den * r.num))
    for t in range(i) if i > 0 else ():
        r = rn.shift("n", t).shift("k", j)
        product = product * r
        uses.append(("n", "forward", (t, j), r.den))
    for t in range(1, -i + 1) if i < 0 else ():
        r = rn.shift("n", -t).shift("k", j)
        product = product / r
        uses.append(("n", "backward", (-t, j), r.den * r.num))
    return product, uses


def _box_points(radius: int):
    for r in range(radius + 1):
        for n in range(-r, r + 1):
            for k in range(-r, r + 1):
                if max(abs(n), abs(k)) == r:
                    yield n, k


def _find_violation(condition: MultiPoly, delta: Proviso, radius: int):
    for n, k in _box_points(radius):
        if delta.holds_at(n, k) and condition.evaluate({"n": n, "k": k}) == 0:
            return (n, k)
    return None


def verify_hyper_identity(identity: GuardedIdentity, terms: dict, box: int = 30) -> Verdict:
    """Symbolic check of a guarded identity between hypergeometric terms.

    Each requirement ``q(n, k) != 0`` collected from the ratio walk is
    discharged when ``delta``'s nonvanishing polynomials absorb every factor
    of q; otherwise admissible integer points in the box |n|, |k| <= ``box``
    are searched for a zero of q, and the first one found is reported as a
    guard violation.
    """
    resolved = {}
    reference = None
    for _, name, _, _ in identity.parts:
        term = terms.get(name)
        if term is None:
            return Verdict(identity.name, False, "symbolic", reason=f"non-hypergeometric term {name!r}: no ratios available")
        factor = RatFun(1)
        base = term
        if term.relative_to is not None:
            ref_name, factor = term.relative_to
            base = terms.get(ref_name)
            if base is None:
                return Verdict(identity.name, False, "symbolic", reason=f"non-hypergeometric term {ref_name!r}")
        if base.ratio_n is None or base.ratio_k is None:
            return Verdict(identity.name, False, "symbolic", reason=f"non-hypergeometric term {base.name!r}: no ratios available")
        if reference is None:
            reference = base.name
        elif base.name != reference:
            return Verdict(identity.name, False, "symbolic", reason=f"terms {reference!r} and {base.name!r} share no reference term")
        resolved[name] = (base, RatFun.coerce(factor))

    total = RatFun(0)
    requirements = []
    for c, name, i, j in identity.parts:
        base, factor = resolved[name]
        ratio, uses = _ratio_walk(base, i, j)
        shifted_factor = factor.shift("n", i).shift("k", j)
        if not shifted_factor.den.is_constant():
            requirements.append((name, "factor", (i, j), shifted_factor.den))
        total = total + c * shifted_factor * ratio
        for direction, kind, at, cond in uses:
            requirements.append((base.name, f"ratio_{direction} {kind}", at, cond))

    trace = []
    violation = None
    seen = set()
    for term_name, step, at, cond in requirements:
        if cond.is_constant() or (term_name, step, at) in seen:
            continue
        seen.add((term_name, step, at))
        entry = {"term": term_name, "step": step, "at": list(at), "requires": f"{cond.normalized().render()} <> 0"}
        if polynomial_covered(cond, identity.delta.nonvanishing):
            entry["covered_by"] = "proviso"
        else:
            witness = _find_violation(cond, identity.delta, box)
            if witness is None:
                entry["covered_by"] = f"no admissible zero with |n|,|k| <= {box}"
            else:
                entry["covered_by"] = None
                entry["violated_at"] = list(witness)
                if violation is None:
                    violation = (witness, entry)
        trace.append(entry)

    if not total.is_zero():
        return Verdict(identity.name, False, "symbolic", reason="identity does not normalize to zero",
                       guard_trace=trace, residue=total.render())
    if violation is not None:
        witness, entry = violation
        return Verdict(identity.name, False, "symbolic",
                       reason=f"guard violation: {entry['requires']} fails at {tuple(witness)}",
                       failing_point=tuple(witness), guard_trace=trace)
    return Verdict(identity.name, True, "symbolic", guard_trace=trace)


# -- pointwise route ------------------------------------------------------------
def triangle_grid(n_lo: int, n_hi: int, k_lo: int = 1):
    """Points with k_lo <= k <= n and n_lo <= n <= n_hi."""
    return [(n, k) for n in range(n_lo, n_hi + 1) for k in range(k_lo, n + 1)]


def verify_pointwise(identity: GuardedIdentity, evaluators: dict, grid) -> Verdict:
    points = sorted(set(grid))
    checked = skipped = 0
    label = f"{len(points)} points" if points else "empty"
    if points:
        label += f", n in {points[0][0]}..{points[-1][0]}"
    for n, k in points:
        if identity.delta.excludes(n, k):
            skipped += 1
            continue
        try:
            value = identity.evaluate(evaluators, n, k)
        except SingularPointError as exc:
            return Verdict(identity.name, False, "pointwise", reason=f"singular point: {exc}",
                           failing_point=(n, k), checked=checked, skipped=skipped, grid=label)
        except (SupportError, ValueError, ZeroDivisionError) as exc:
            return Verdict(identity.name, False, "pointwise", reason=f"support violation: {exc}",
                           failing_point=(n, k), checked=checked, skipped=skipped, grid=label)
        checked += 1
        if value != 0:
            return Verdict(identity.name, False, "pointwise", reason=f"identity evaluates to {value}",
                           failing_point=(n, k), checked=checked, skipped=skipped, grid=label)
    return Verdict(identity.name, True, "pointwise", checked=checked, skipped=skipped, grid=label)


# -- summation ------------------------------------------------------------------
@dataclass
class SumVerdict:
    accepted: bool
    annihilates: bool
    certificate_holds: bool
    n_range: tuple
    excluded: list = field(default_factory=list)
    first_mismatch: dict | None = None
    first_certificate_failure: tuple | None = None
    rows: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": "pass" if self.accepted else "fail",
            "annihilates": self.annihilates,
            "certificate_holds_off_delta": self.certificate_holds,
            "n_range": list(self.n_range),
            "excluded": self.excluded,
            "first_mismatch": self.first_mismatch,
            "first_certificate_failure": list(self.first_certificate_failure) if self.first_certificate_failure else None,
        }


def ct_sum_check(P: ShiftOp, Q, f: Callable, alpha: int, beta: int, delta: Proviso, n_range,
                 keep_rows: bool = False) -> SumVerdict:
    """Both sides of the guarded creative-telescoping summation, exactly.

    With F(n) = sum_{k=alpha}^{n+beta} f(n, k) and P = sum_i p_i(n) S_n^i,

        (P.F)(n) = (Qf)(n, n+beta+1) - (Qf)(n, alpha)
                   + sum_{i=1}^{r} sum_{j=1}^{i} p_i(n) f(n+i, n+beta+j)
                   + sum over excluded k in [alpha, n+beta] of
                     (P.f(., k))(n) - (Qf)(n, k+1) + (Qf)(n, k).

    ``Q`` is either an operator applied to f or a callable giving (Q.f)(n, k)
    directly (for certificates that are not operator images, such as V).
    """
    if not P.is_univariate_n():
        raise ValueError("telescoper must be univariate in S_n with coefficients in Q(n)")
    order = P.order("n")
    if isinstance(Q, ShiftOp):
        qf = lambda n, k: op_apply(Q, f, (n, k))  # noqa: E731
    else:
        qf = Q

    F_cache: dict = {}

    def F(m):
        if m not in F_cache:
            F_cache[m] = sum((Fraction(f(m, k)) for k in range(alpha, m + beta + 1)), Fraction(0))
        return F_cache[m]

    def pf_col(n, k, p):
        return sum((p[i] * Fraction(f(n + i, k)) for i in p if p[i]), Fraction(0))

    excluded, rows = [], []
    accepted = annihilates = certificate = True
    first_mismatch = first_cert = None
    for n in n_range:
        point = {"n": n, "k": 0}
        try:
            p = {i: P.coefficient(i).evaluate(point) for i in range(order + 1)}
        except SingularPointError:
            excluded.append({"n": n, "reason": "singular telescoper coefficient"})
            continue
        try:
            lhs = sum((p[i] * F(n + i) for i in p), Fraction(0))
            boundary = qf(n, n + beta + 1) - qf(n, alpha)
            overhang = sum(
                (p[i] * Fraction(f(n + i, n + beta + j)) for i in range(1, order + 1) for j in range(1, i + 1)),
                Fraction(0),
            )
            singular = Fraction(0)
            for k in range(alpha, n + beta + 1):
                pfk = pf_col(n, k, p)
                diff = qf(n, k + 1) - qf(n, k)
                if delta.excludes(n, k):
                    singular += pfk - diff
                elif pfk != diff:
                    certificate = False
                    if first_cert is None:
                        first_cert = (n, k)
        except SingularPointError as exc:
            excluded.append({"n": n, "reason": f"singular certificate: {exc}"})
            continue
        rhs = boundary + overhang + singular
        if keep_rows:
            rows.append({"n": n, "lhs": lhs, "boundary": boundary, "overhang": overhang, "singular": singular})
        if lhs != rhs:
            accepted = False
            if first_mismatch is None:
                first_mismatch = {"n": n, "lhs": str(lhs), "rhs": str(rhs)}
        if rhs != 0:
            annihilates = False
    rng = list(n_range)
    return SumVerdict(
        accepted,
        accepted and annihilates,
        certificate,
        (rng[0], rng[-1]) if rng else (),
        excluded,
        first_mismatch,
        first_cert,
        rows,
    )
