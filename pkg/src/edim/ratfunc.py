"""Exact multivariate rational functions over Q or a finite field.

``MultiPoly`` is a sparse polynomial keyed by exponent tuples; ``RatFn`` is a
reduced fraction of two such polynomials with a monic (graded-lex) denominator.
The coefficient domain is either the rationals (``QQ``) or an ``FqContext``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import unipoly
from .errors import (DivisionByZero, DomainMismatch, IndeterminateForm,
                     PoleAtPoint, UnboundVariable, ZeroElement)
from .exactfield import FqContext, FqElement, Rational, fq_context

_CERT_PRIME = (1 << 61) - 1  # Mersenne prime used for rational specializations
_CERT_TRIES = 4


class RationalDomain:
    """The field Q with Fraction elements, mirroring FqContext's interface."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise DomainMismatch("cannot coerce %r into Q" % (v,))

    def from_int(self, n):
        return Fraction(n)

    def __repr__(self):
        return "QQ"


QQ = RationalDomain()


def _same_domain(a, b):
    if a is b:
        return True
    if isinstance(a, FqContext) and isinstance(b, FqContext):
        return a.p == b.p and a.modulus == b.modulus
    return isinstance(a, RationalDomain) and isinstance(b, RationalDomain)


def _grlex_key(expo):
    return (sum(expo), expo)


class MultiPoly:
    """Sparse multivariate polynomial; ``terms`` maps exponent tuple -> coeff."""

    __slots__ = ("domain", "vars", "terms")

    def __init__(self, domain, vars, terms):
        self.domain = domain
        self.vars = tuple(vars)
        self.terms = {e: c for e, c in terms.items() if not _czero(c)}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, domain, vars):
        return cls(domain, vars, {})

    @classmethod
    def const(cls, domain, vars, c):
        c = domain.coerce(c)
        z = (0,) * len(vars)
        return cls(domain, vars, {z: c})

    @classmethod
    def var(cls, domain, vars, name):
        i = vars.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(domain, vars, {e: domain.one})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        z = (0,) * len(self.vars)
        return self.terms.get(z, self.domain.zero)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1) if self.terms else -1

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def occurring(self):
        out = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    out.add(i)
        return out

    def leading(self):
        """(exponent, coeff) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def _check(self, other):
        if not _same_domain(self.domain, other.domain) or self.vars != other.vars:
            raise DomainMismatch("incompatible polynomial rings")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.domain, self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, self.domain.zero) + c
        return MultiPoly(self.domain, self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.domain, self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.domain, self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.domain.coerce(other)
            return MultiPoly(self.domain, self.vars,
                             {e: x * c for e, x in self.terms.items()})
        self._check(other)
        t = {}
        z = self.domain.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, z) + c1 * c2
        return MultiPoly(self.domain, self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        res = MultiPoly.const(self.domain, self.vars, self.domain.one)
        base = self
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    def scale(self, c):
        c = self.domain.coerce(c)
        return MultiPoly(self.domain, self.vars, {e: x * c for e, x in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.vars == other.vars
                and _same_domain(self.domain, other.domain) and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return render_poly(self)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, values):
        """Evaluate at a dict {var name: element}; elements must share a field."""
        missing = {self.vars[i] for i in self.occurring()} - set(values)
        if missing:
            raise UnboundVariable("unbound variables: %s" % sorted(missing))
        some = next(iter(values.values()), None)
        acc = _coerce_into(self.domain.zero, some)
        cache = {}
        for e, c in self.terms.items():
            term = _coerce_into(c, some)
            for i, d in enumerate(e):
                if d:
                    key = (i, d)
                    if key not in cache:
                        cache[key] = values[self.vars[i]] ** d
                    term = term * cache[key]
            acc = acc + term
        return acc


def _czero(c):
    return c == 0 if isinstance(c, (int, Fraction)) else c.is_zero()


def _coerce_into(coeff, sample):
    """Map a domain coefficient into the field of the evaluation point."""
    if sample is None or isinstance(coeff, type(sample)):
        return coeff
    if isinstance(coeff, Fraction):
        field = sample.field if hasattr(sample, "field") else sample.ctx
        try:
            return field.coerce(coeff)
        except ZeroDivisionError:
            raise PoleAtPoint("coefficient denominator vanishes in characteristic %d"
                              % field.p)
    if isinstance(coeff, FqElement) and hasattr(sample, "field"):
        return sample.field.from_base(coeff)
    return coeff


# ---------------------------------------------------------------------------
# gcd machinery
# ---------------------------------------------------------------------------

def poly_divexact(f, g):
    """Exact division f / g, or None when g does not divide f."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return f
    quo = {}
    rem = dict(f.terms)
    ge, gc = g.leading()
    z = f.domain.zero
    while rem:
        e = max(rem, key=_grlex_key)
        c = rem[e]
        qe = tuple(a - b for a, b in zip(e, ge))
        if any(x < 0 for x in qe):
            return None
        qc = c / gc
        quo[qe] = qc
        for e2, c2 in g.terms.items():
            ne = tuple(a + b for a, b in zip(qe, e2))
            nc = rem.get(ne, z) - qc * c2
            if _czero(nc):
                rem.pop(ne, None)
            else:
                rem[ne] = nc
    return MultiPoly(f.domain, f.vars, quo)


def _normalize(f):
    if f.is_zero():
        return f
    _, lc = f.leading()
    return f.scale(f.domain.one / lc)


def poly_gcd(f, g, seed=0):
    """Monic (graded-lex) gcd of two polynomials over a field domain."""
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.domain, f.vars, f.domain.one)
    if _gcd_is_one(f, g, seed):
        return MultiPoly.const(f.domain, f.vars, f.domain.one)
    return _normalize(_gcd_prs(f, g))


def _gcd_is_one(f, g, seed=0):
    """Probabilistically certify gcd(f, g) = 1; False means "unknown".

    For each variable occurring in both arguments, all other variables are
    specialized at random points while preserving both leading coefficients;
    a coprime pair of univariate images proves that the gcd is free of that
    variable.  Sound because a nontrivial divisor survives specialization.
    """
    common = f.occurring() & g.occurring()
    if not common:
        return True
    rng = random.Random((seed, len(f.terms), len(g.terms)).__hash__())
    if isinstance(f.domain, RationalDomain):
        spec = _SpecQ()
    elif f.domain.k == 1:
        spec = _SpecFq(f.domain)
    else:
        return False
    for v in sorted(common):
        if not _certify_var(f, g, v, spec, rng):
            return False
    return True


def _certify_var(f, g, v, spec, rng):
    for _ in range(_CERT_TRIES):
        point = spec.random_point(f.vars, rng)
        fu = spec.univariate(f, v, point)
        gu = spec.univariate(g, v, point)
        if fu is None or gu is None:
            continue
        if len(fu) - 1 != f.degree_in(v) or len(gu) - 1 != g.degree_in(v):
            continue  # a leading coefficient vanished; retry
        if len(spec.gcd(fu, gu)) == 1:
            return True
        return False
    return False


class _SpecQ:
    """Specialization of Q-polynomials into F_P for a large prime P."""

    P = _CERT_PRIME

    def random_point(self, vars, rng):
        return [rng.randrange(1, self.P) for _ in vars]

    def univariate(self, f, v, point):
        out = {}
        for e, c in f.terms.items():
            num = c.numerator % self.P
            den = c.denominator % self.P
            if den == 0:
                return None
            val = num * pow(den, -1, self.P) % self.P
            for i, d in enumerate(e):
                if d and i != v:
                    val = val * pow(point[i], d, self.P) % self.P
            out[e[v]] = (out.get(e[v], 0) + val) % self.P
        top = max(out, default=0)
        lst = [out.get(i, 0) for i in range(top + 1)]
        while lst and lst[-1] == 0:
            lst.pop()
        return lst

    def gcd(self, a, b):
        P = self.P
        while b:
            inv = pow(b[-1], -1, P)
            nb = [x * inv % P for x in b]
            r = list(a)
            while len(r) >= len(nb) and r:
                c = r[-1]
                d = len(r) - len(nb)
                for i, bc in enumerate(nb):
                    r[d + i] = (r[d + i] - c * bc) % P
                while r and r[-1] == 0:
                    r.pop()
            a, b = nb, r
        return a if a else []


class _SpecFq:
    """Specialization of F_p-polynomials into a larger extension F_{p^e}."""

    def __init__(self, base):
        e = 1
        while base.p ** e < (1 << 20) and e < 12:
            e += 1
        self.ext = fq_context(base.p, e)

    def random_point(self, vars, rng):
        return [unipoly._random_element(self.ext, rng) for _ in vars]

    def univariate(self, f, v, point):
        ctx = self.ext
        out = {}
        for e, c in f.terms.items():
            val = ctx.from_int(c.encode())  # base is a prime field
            for i, d in enumerate(e):
                if d and i != v:
                    val = val * point[i] ** d
            out[e[v]] = out.get(e[v], ctx.zero) + val
        top = max(out, default=0)
        lst = [out.get(i, ctx.zero) for i in range(top + 1)]
        return unipoly.trim(lst)

    def gcd(self, a, b):
        return unipoly.gcd_monic(a, b, self.ext.zero)


def _content_pp(f, v):
    """Content and primitive part of f as a polynomial in variable v."""
    coeffs = {}
    for e, c in f.terms.items():
        de = e[v]
        key = tuple(0 if i == v else x for i, x in enumerate(e))
        coeffs.setdefault(de, {})[key] = c
    polys = [MultiPoly(f.domain, f.vars, t) for t in coeffs.values()]
    cont = polys[0]
    for p in polys[1:]:
        cont = poly_gcd(cont, p)
        if cont.is_constant():
            cont = MultiPoly.const(f.domain, f.vars, f.domain.one)
            break
    pp = poly_divexact(f, cont)
    return cont, pp


def _coeff_in(f, v, d):
    t = {tuple(0 if i == v else x for i, x in enumerate(e)): c
         for e, c in f.terms.items() if e[v] == d}
    return MultiPoly(f.domain, f.vars, t)


def _shift_var(f, v, d):
    t = {tuple(x + d if i == v else x for i, x in enumerate(e)): c
         for e, c in f.terms.items()}
    return MultiPoly(f.domain, f.vars, t)


def _prem(a, b, v):
    """Pseudo-remainder of a by b with respect to variable v."""
    db = b.degree_in(v)
    lcb = _coeff_in(b, v, db)
    r = a
    guard = a.degree_in(v) - db + 2
    while not r.is_zero() and r.degree_in(v) >= db and guard > 0:
        dr = r.degree_in(v)
        lcr = _coeff_in(r, v, dr)
        r = r * lcb - _shift_var(lcr * b, v, dr - db)
        guard -= 1
    return r


def _gcd_prs(f, g):
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.domain, f.vars, f.domain.one)
    inter = f.occurring() & g.occurring()
    if not inter:
        return MultiPoly.const(f.domain, f.vars, f.domain.one)
    v = min(inter)
    cf, pf = _content_pp(f, v)
    cg, pg = _content_pp(g, v)
    c = _gcd_prs(cf, cg)
    a, b = (pf, pg) if pf.degree_in(v) >= pg.degree_in(v) else (pg, pf)
    while True:
        if b.is_zero():
            gpart = a
            break
        if b.degree_in(v) == 0:
            gpart = MultiPoly.const(f.domain, f.vars, f.domain.one)
            break
        r = _prem(a, b, v)
        if r.is_zero():
            gpart = b
            break
        a, b = b, _content_pp(r, v)[1]
    if not gpart.is_constant():
        gpart = _content_pp(gpart, v)[1]
    return c * gpart


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFn:
    """Reduced fraction num/den of MultiPolys; den is graded-lex monic."""

    __slots__ = ("num", "den", "_eval_hint")

    def __init__(self, num, den, reduce=True):
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if reduce and not num.is_zero():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
        _, lc = den.leading()
        if lc != den.domain.one:
            inv = den.domain.one / lc
            num = num.scale(inv)
            den = den.scale(inv)
        if num.is_zero():
            den = MultiPoly.const(den.domain, den.vars, den.domain.one)
        self.num = num
        self.den = den
        self._eval_hint = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_poly(cls, p):
        return cls(p, MultiPoly.const(p.domain, p.vars, p.domain.one), reduce=False)

    @classmethod
    def const(cls, domain, vars, c):
        return cls.from_poly(MultiPoly.const(domain, vars, c))

    @classmethod
    def var(cls, domain, vars, name):
        return cls.from_poly(MultiPoly.var(domain, vars, name))

    # -- structure ----------------------------------------------------------

    @property
    def domain(self):
        return self.num.domain

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def occurring(self):
        return self.num.occurring() | self.den.occurring()

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return render(self)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RatFn):
            return other
        return RatFn.const(self.domain, self.vars, other)

    def __add__(self, other):
        o = self._lift(other)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFn(self.den, self.num)

    def __pow__(self, n):
        if n == 0:
            return RatFn.const(self.domain, self.vars, self.domain.one)
        if n < 0:
            return self.inverse() ** (-n)
        res = RatFn.const(self.domain, self.vars, self.domain.one)
        base = self
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    # -- substitution and evaluation ----------------------------------------

    def compose_pair(self, bindings):
        """Unreduced (numerator, denominator) of self under substitution.

        Both parts are cleared by the same product of binding denominators,
        so the pair represents the substituted value without any gcd work.
        """
        occ = {self.vars[i] for i in self.occurring()}
        missing = occ - set(bindings)
        if missing:
            raise UnboundVariable("unbound variables: %s" % sorted(missing))
        if not occ:
            sample = next(iter(bindings.values()))
            dom, vs = sample.domain, sample.vars
            n = MultiPoly.zero(dom, vs)
            for e, c in self.num.terms.items():
                n = n + MultiPoly.const(dom, vs, _coerce_const(c, dom))
            d = MultiPoly.zero(dom, vs)
            for e, c in self.den.terms.items():
                d = d + MultiPoly.const(dom, vs, _coerce_const(c, dom))
            return n, d
        names = sorted(occ, key=self.vars.index)
        sample = bindings[names[0]]
        maxdeg = {n: max(self.num.degree_in(self.vars.index(n)),
                         self.den.degree_in(self.vars.index(n)), 0)
                  for n in names}
        ncomp = _compose_poly(self.num, bindings, maxdeg, sample)
        dcomp = _compose_poly(self.den, bindings, maxdeg, sample)
        return ncomp, dcomp

    def substitute(self, bindings):
        """Substitute RatFns for variables; one reduction at the end."""
        occ = {self.vars[i] for i in self.occurring()}
        if not occ:
            return self
        ncomp, dcomp = self.compose_pair(bindings)
        if dcomp.is_zero():
            raise IndeterminateForm("denominator vanishes under substitution")
        return RatFn(ncomp, dcomp)

    def evaluate(self, values):
        """Exact evaluation at field elements keyed by variable name."""
        if self._eval_hint is not None:
            acc = None
            for fac, expo in self._eval_hint:
                v = fac.evaluate(values)
                v = v ** expo if expo >= 0 else (v ** (-expo)).inverse()
                acc = v if acc is None else acc * v
            return acc
        d = self.den.evaluate(values)
        if _czero(d):
            raise PoleAtPoint("denominator vanishes at the given point")
        n = self.num.evaluate(values)
        return n / d


def _compose_poly(p, bindings, maxdeg, sample):
    """p with vars replaced by bindings, cleared by prod den^maxdeg; a MultiPoly."""
    dom, vs = sample.domain, sample.vars
    names = list(maxdeg)
    numpow = {}
    denpow = {}
    for n in names:
        numpow[n] = _pow_table(bindings[n].num, maxdeg[n])
        denpow[n] = _pow_table(bindings[n].den, maxdeg[n])
    acc = MultiPoly.zero(dom, vs)
    for e, c in p.terms.items():
        term = MultiPoly.const(dom, vs, _coerce_const(c, dom))
        for n in names:
            d = e[p.vars.index(n)]
            term = term * numpow[n][d] * denpow[n][maxdeg[n] - d]
        acc = acc + term
    return acc


def _coerce_const(c, dom):
    if isinstance(c, Fraction) and not isinstance(dom, RationalDomain):
        if c.denominator % dom.p == 0:
            raise PoleAtPoint("coefficient denominator vanishes in characteristic %d" % dom.p)
    return dom.coerce(c)


def _pow_table(p, n):
    out = [MultiPoly.const(p.domain, p.vars, p.domain.one)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_coeff(c):
    if isinstance(c, Fraction):
        return str(c)
    return str(c.encode())


def _render_term(vars, e, c, lead):
    parts = []
    body = []
    for i, d in enumerate(e):
        if d == 1:
            body.append(vars[i])
        elif d > 1:
            body.append("%s^%d" % (vars[i], d))
    cs = _render_coeff(c)
    if not body:
        return cs
    if cs == "1":
        return " * ".join(body)
    if cs == "-1" and lead:
        return "-" + " * ".join(body)
    parts.append(cs)
    parts.extend(body)
    return " * ".join(parts)


def render_poly(p):
    """Graded-lex descending, explicit '*', caret powers."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
    out = []
    for idx, (e, c) in enumerate(items):
        if idx == 0:
            out.append(_render_term(p.vars, e, c, lead=True))
            continue
        neg = (c < 0) if isinstance(c, Fraction) else False
        if neg:
            out.append("- " + _render_term(p.vars, e, -c, lead=True).lstrip("-"))
        else:
            out.append("+ " + _render_term(p.vars, e, c, lead=True))
    return " ".join(out)


def render(r):
    """Render a RatFn; monomial denominators appear as '^-1' factors."""
    if r.den.is_constant():
        return render_poly(r.num)
    num_s = render_poly(r.num)
    if len(r.num.terms) > 1:
        num_s = "(%s)" % num_s
    if len(r.den.terms) == 1:
        e, c = next(iter(r.den.terms.items()))
        den_s = _render_term(r.den.vars, e, c, lead=True)
        if not (sum(e) == 1 and _render_coeff(c) == "1"):
            den_s = "(%s)" % den_s
        return "%s * %s^-1" % (num_s, den_s)
    return "%s * (%s)^-1" % (num_s, render_poly(r.den))
