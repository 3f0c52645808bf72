"""The polynomial-reduction pipeline for the general degree-n polynomial:
depress (kill X^{n-1}), rescale roots (tie the last two coefficients), and the
characteristic-2/3 special paths, with a replayable transformation record and
a finite-field specialization oracle.

Conventions.  ``Shift(lam)`` turns f(X) into f(X + lam) and maps each root r
to r - lam.  ``ScaleRoots(lam)`` turns f into lam^{-n} f(lam X) and maps r to
r / lam.  ``InvertRoot`` reverses the coefficients (re-monicized) and maps r
to 1/r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import unipoly
from .errors import (CharDividesDegree, DegenerateTail, PoleAtAssignment,
                     PoleAtPoint, SplittingTooLarge, Unsupported)
from .exactfield import fq_context
from .ratfunc import QQ, MultiPoly, RatFn


def tvars(n):
    return tuple("t%d" % i for i in range(1, n + 1))


def _domain(char):
    return QQ if char == 0 else fq_context(char, 1)


class PowerProduct:
    """A coefficient kept in factored form: prod base_i ^ exp_i over reduced
    RatFns.  Avoids expanding b_i = a_i (a_n/a_{n-1})^{-i}, which is huge for
    n near 7, while staying exactly evaluable and comparably canonical."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        combined = {}
        for base, exp in factors:
            if exp == 0:
                continue
            if base.is_constant() or base in combined:
                combined[base] = combined.get(base, 0) + exp
            else:
                combined[base] = exp
        self.factors = tuple(sorted(((b, e) for b, e in combined.items() if e),
                                    key=lambda t: (repr(t[0]), t[1])))

    @classmethod
    def of(cls, ratfn):
        return cls([(ratfn, 1)])

    def is_zero(self):
        return any(b.is_zero() and e > 0 for b, e in self.factors)

    def is_constant(self):
        return self.is_zero() or all(b.is_constant() for b, e in self.factors)

    def __eq__(self, other):
        if not isinstance(other, PowerProduct):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __mul__(self, other):
        return PowerProduct(self.factors + other.factors)

    def __pow__(self, e):
        return PowerProduct(tuple((b, x * e) for b, x in self.factors))

    def evaluate(self, values):
        acc = None
        sample = next(iter(values.values()))
        for base, exp in self.factors:
            v = base.evaluate(values)
            if v.is_zero() and exp < 0:
                raise PoleAtPoint("negative power of a vanishing factor")
            v = v ** exp if exp >= 0 else (v.inverse()) ** (-exp)
            acc = v if acc is None else acc * v
        if acc is None:
            one = sample - sample + 1 if not hasattr(sample, "ctx") else \
                sample.ctx.one
            return one
        return acc

    def expand(self):
        if not self.factors:
            raise ValueError("expanding the empty product needs a ring context")
        acc = None
        for base, exp in self.factors:
            v = base ** exp
            acc = v if acc is None else acc * v
        return acc

    def render(self):
        if self.is_zero():
            return "0"
        if not self.factors:
            return "1"
        parts = []
        for base, exp in self.factors:
            s = repr(base)
            if " " in s or "*" in s:
                s = "(%s)" % s
            parts.append(s if exp == 1 else "%s^%d" % (s, exp))
        return " * ".join(parts)

    def __repr__(self):
        return self.render()


@dataclass(frozen=True)
class Shift:
    lam: RatFn

    def root_map(self, r, lam_value):
        return r - lam_value

    def kind(self):
        return "Shift"


@dataclass(frozen=True)
class ScaleRoots:
    lam: RatFn

    def root_map(self, r, lam_value):
        return r / lam_value

    def kind(self):
        return "ScaleRoots"


@dataclass(frozen=True)
class InvertRoot:
    lam = None

    def root_map(self, r, lam_value):
        return r.inverse()

    def kind(self):
        return "InvertRoot"


@dataclass(frozen=True)
class TransformRecord:
    steps: tuple


@dataclass(frozen=True)
class GeneralPoly:
    """Monic X^n + c_1 X^{n-1} + ... + c_n with PowerProduct coefficients in
    t_1..t_n; coeffs[j-1] is the coefficient of X^{n-j}."""

    n: int
    char: int
    coeffs: tuple

    def coefficient(self, j):
        return self.coeffs[j - 1]


def general_poly(n, char):
    dom = _domain(char)
    vs = tvars(n)
    coeffs = tuple(PowerProduct.of(RatFn.var(dom, vs, "t%d" % i))
                   for i in range(1, n + 1))
    return GeneralPoly(n, char, coeffs)


def parameter_count(gp):
    """Number of distinct non-constant coefficient entries."""
    distinct = []
    for c in gp.coeffs:
        if c.is_constant():
            continue
        if all(c != d for d in distinct):
            distinct.append(c)
    return len(distinct)


# ---------------------------------------------------------------------------
# the three elementary transformations
# ---------------------------------------------------------------------------

def _one(gp):
    dom = _domain(gp.char)
    return RatFn.const(dom, tvars(gp.n), dom.one)


def apply_shift(gp, lam):
    """f(X) -> f(X + lam); requires expandable coefficients."""
    n = gp.n
    a = [_one(gp)] + [c.expand() for c in gp.coeffs]
    out = []
    for j in range(1, n + 1):
        acc = None
        for i in range(0, j + 1):
            term = a[i] * math.comb(n - i, j - i) * lam ** (j - i)
            acc = term if acc is None else acc + term
        out.append(PowerProduct.of(acc))
    return GeneralPoly(n, gp.char, tuple(out))


def apply_scale(gp, lam, tie_last=False):
    """f(X) -> lam^{-n} f(lam X): coefficient j gets lam^{-j}.

    With tie_last (used by rescale, where lam = a_n / a_{n-1}), the constant
    term is emitted in the same factored form as the X-coefficient so their
    designed equality is visible structurally.
    """
    n = gp.n
    lampp = PowerProduct.of(lam)
    out = [gp.coefficient(j) * lampp ** (-j) for j in range(1, n + 1)]
    if tie_last:
        out[n - 1] = gp.coefficient(n - 1) * lampp ** (1 - n)
    return GeneralPoly(n, gp.char, tuple(out))


def apply_invert(gp):
    """f(X) -> X^n f(1/X) / f(0): coefficients reversed and re-monicized."""
    n = gp.n
    const = gp.coefficient(n)
    if const.is_zero():
        raise DegenerateTail("constant term is the zero rational function")
    inv = const ** (-1)
    rev = [gp.coefficient(n - j) * inv for j in range(1, n)]
    rev.append(PowerProduct.of(_one(gp)) * inv)
    return GeneralPoly(n, gp.char, tuple(rev))


# ---------------------------------------------------------------------------
# pipeline stages
# ---------------------------------------------------------------------------

def depress(gp):
    """Kill the X^{n-1} coefficient by shifting roots; char must not divide n."""
    n = gp.n
    if gp.char > 0 and n % gp.char == 0:
        raise CharDividesDegree("cannot depress degree %d in characteristic %d"
                                % (n, gp.char))
    a1 = gp.coefficient(1).expand() if not gp.coefficient(1).is_zero() else None
    if a1 is None:
        return gp, TransformRecord(())
    lam = -(a1 / n)
    out = apply_shift(gp, lam)
    assert out.coefficient(1).is_zero()
    return out, TransformRecord((Shift(lam),))


def rescale(gp):
    """Scale roots by lam = a_n/a_{n-1} so the last two coefficients agree."""
    n = gp.n
    an1 = gp.coefficient(n - 1)
    an = gp.coefficient(n)
    if an1.is_zero() or an.is_zero():
        raise DegenerateTail("rescale needs nonzero trailing coefficients")
    lam = an.expand() / an1.expand()
    if lam.is_constant() and lam.num == lam.den:
        return gp, TransformRecord(())
    out = apply_scale(gp, lam, tie_last=True)
    assert out.coefficient(n - 1) == out.coefficient(n)
    return out, TransformRecord((ScaleRoots(lam),))


def reduce_char3_cubic():
    """X^3 + t_1 X^2 + t_2 X + t_3 in characteristic 3, to X^3 + cX + c."""
    gp = general_poly(3, 3)
    t1 = gp.coefficient(1).expand()
    t2 = gp.coefficient(2).expand()
    lam = t2 / t1
    g = apply_shift(gp, lam)
    assert g.coefficient(2).is_zero()
    h = apply_invert(g)
    b1 = h.coefficient(2)
    b2 = h.coefficient(3)
    mu = b2.expand() / b1.expand()
    out = apply_scale(h, mu, tie_last=True)
    assert out.coefficient(2) == out.coefficient(3)
    assert out.coefficient(1).is_zero()
    record = TransformRecord((Shift(lam), InvertRoot(), ScaleRoots(mu)))
    return out, record


def reduce_general(n, char):
    """Dispatch of the reduction pipeline; (reduced poly, record)."""
    if n < 2:
        raise Unsupported("degree must be >= 2")
    gp = general_poly(n, char)
    if char > 0 and n % char == 0:
        if (n, char) == (2, 2):
            return rescale(gp)
        if (n, char) == (3, 3):
            return reduce_char3_cubic()
        raise Unsupported("char %d divides degree %d: no reduction is modeled"
                          % (char, n))
    g, rec1 = depress(gp)
    if n == 2:
        return g, rec1
    h, rec2 = rescale(g)
    return h, TransformRecord(rec1.steps + rec2.steps)


# ---------------------------------------------------------------------------
# specialization oracle
# ---------------------------------------------------------------------------

SPLIT_CAP = 12


def _specialize_coeffs(gp, values, ctx):
    out = []
    for c in gp.coeffs:
        if c.is_zero():
            out.append(ctx.zero)
            continue
        try:
            out.append(ctx.coerce(c.evaluate(values)))
        except (PoleAtPoint, ZeroDivisionError):
            raise PoleAtAssignment("coefficient has a pole at the assignment")
    return out


def verify_specialization(f, h, record, assignment, ctx):
    """Specialize f and h at t-values in F_q and check that the recorded
    transformations carry the root multiset of f onto that of h inside a
    splitting extension."""
    values = dict(assignment)
    f_spec = _specialize_coeffs(f, values, ctx)
    h_spec = _specialize_coeffs(h, values, ctx)
    lam_values = []
    for step in record.steps:
        if step.lam is None:
            lam_values.append(None)
            continue
        try:
            lv = ctx.coerce(step.lam.evaluate(values))
        except (PoleAtPoint, ZeroDivisionError):
            raise PoleAtAssignment("step parameter has a pole at the assignment")
        if isinstance(step, ScaleRoots) and lv.is_zero():
            raise PoleAtAssignment("scaling parameter vanishes at the assignment")
        lam_values.append(lv)
    n = f.n
    fpoly = list(reversed([ctx.one] + f_spec))  # low-to-high
    hpoly = list(reversed([ctx.one] + h_spec))
    factors = unipoly.factor_monic(fpoly, ctx)
    k = math.lcm(*[len(p) - 1 for p, _ in factors])
    if k > SPLIT_CAP:
        raise SplittingTooLarge("splitting field degree %d exceeds %d"
                                % (k, SPLIT_CAP))
    mapped = [ctx.one]  # product of (X - image) over all mapped roots
    for p, mult in factors:
        d = len(p) - 1
        ext = unipoly.ExtField(ctx, p)
        root = ext.gen()
        conj = []
        r = root
        for _ in range(d):
            conj.append(r)
            r = r ** ctx.q
        images = []
        for r in conj:
            for step, lv in zip(record.steps, lam_values):
                if isinstance(step, InvertRoot) and r.is_zero():
                    raise PoleAtAssignment("root hits zero before inversion")
                r = step.root_map(r, ext.from_base(lv) if lv is not None else None)
            images.append(r)
        charpoly = [ext.one]
        for im in images:
            charpoly = unipoly.mul(charpoly, [-im, ext.one], ext.zero)
        base_poly = []
        for cf in charpoly:
            assert all(x.is_zero() for x in cf.coeffs[1:]), \
                "mapped characteristic polynomial not over the base field"
            base_poly.append(cf.coeffs[0])
        for _ in range(mult):
            mapped = unipoly.mul(mapped, base_poly, ctx.zero)
    return mapped == hpoly
