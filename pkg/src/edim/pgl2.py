"""GL_2 and PGL_2 over finite fields: canonical representatives, projective
orders, the trace invariant tr^2/det, exhaustive subgroup-embedding search,
and the explicit dihedral / elementary-abelian matrix representations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DependentAlphas, EvenChar, RealZetaAbsent, TooLarge,
                     ZeroElement)
from .groups import Cyc, Dih, ElemAb

Q_CAP = 27


class Mat2:
    """2x2 matrix over an FqContext; invertible when used as a group element."""

    __slots__ = ("ctx", "a", "b", "c", "d")

    def __init__(self, ctx, a, b, c, d):
        self.ctx = ctx
        self.a, self.b, self.c, self.d = (ctx.coerce(a), ctx.coerce(b),
                                          ctx.coerce(c), ctx.coerce(d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __mul__(self, o):
        return Mat2(self.ctx,
                    self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        dt = self.det()
        if dt.is_zero():
            raise ZeroElement("singular matrix")
        di = dt.inverse()
        return Mat2(self.ctx, self.d * di, -self.b * di, -self.c * di, self.a * di)

    def is_scalar(self):
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_identity(self):
        return self.is_scalar() and self.a == self.ctx.one

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, o):
        return isinstance(o, Mat2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(tuple(x.encode() for x in self.entries()))

    def __repr__(self):
        return "[[%s,%s],[%s,%s]]" % tuple(x.encode() for x in self.entries())


def mat2_identity(ctx):
    return Mat2(ctx, ctx.one, ctx.zero, ctx.zero, ctx.one)


@dataclass(frozen=True)
class PGL2Element:
    """Scalar class of an invertible Mat2 in canonical form: the first nonzero
    entry in reading order (a, b, c, d) is scaled to 1."""

    rep: Mat2

    @staticmethod
    def of(m):
        if m.det().is_zero():
            raise ZeroElement("singular matrix has no projective class")
        for x in m.entries():
            if not x.is_zero():
                xi = x.inverse()
                return PGL2Element(Mat2(m.ctx, m.a * xi, m.b * xi,
                                        m.c * xi, m.d * xi))
        raise ZeroElement("zero matrix")

    def __mul__(self, o):
        return PGL2Element.of(self.rep * o.rep)

    def inverse(self):
        return PGL2Element.of(self.rep.inverse())

    def is_identity(self):
        return self.rep.is_scalar()

    def __eq__(self, o):
        return isinstance(o, PGL2Element) and self.rep == o.rep

    def __hash__(self):
        return hash(self.rep)

    def encode(self):
        q = self.rep.ctx.q
        v = 0
        for x in self.rep.entries():
            v = v * q + x.encode()
        return v

    def __repr__(self):
        return "PGL2(%r)" % (self.rep,)


def _check_cap(ctx):
    if ctx.q > Q_CAP:
        raise TooLarge("PGL_2 enumeration capped at q = %d" % Q_CAP)


def pgl2_enumerate(ctx):
    """All q^3 - q projective classes, canonical, in deterministic order."""
    _check_cap(ctx)
    els = list(ctx.elements())
    nonzero = [x for x in els if not x.is_zero()]
    out = []
    one = ctx.one
    # a = 1: det = d - bc != 0
    for b in els:
        for c in els:
            bc = b * c
            for d in els:
                if d != bc:
                    out.append(PGL2Element(Mat2(ctx, one, b, c, d)))
    # a = 0, b = 1: det = -c != 0
    for c in nonzero:
        for d in els:
            out.append(PGL2Element(Mat2(ctx, ctx.zero, one, c, d)))
    return out


def pgl2_order(e):
    """Least d >= 1 with rep^d scalar."""
    m = e.rep
    acc = m
    d = 1
    cap = m.ctx.q ** 2 + m.ctx.q + 1
    while not acc.is_scalar():
        acc = acc * m
        d += 1
        if d > cap:
            raise AssertionError("order computation exceeded group bound")
    return d


def trace_invariant(e):
    """tr^2 / det of any representative; equals zeta_n + zeta_n^{-1} + 2 when
    the projective order n is coprime to the characteristic."""
    m = e.rep
    t = m.trace()
    return t * t * m.det().inverse()


_census_cache = {}


def order_census(ctx):
    """Map order -> sorted list of PGL2Elements of that order."""
    key = (ctx.p, ctx.modulus)
    if key not in _census_cache:
        census = {}
        for e in pgl2_enumerate(ctx):
            census.setdefault(pgl2_order(e), []).append(e)
        for lst in census.values():
            lst.sort(key=PGL2Element.encode)
        _census_cache[key] = census
    return _census_cache[key]


@dataclass(frozen=True)
class PGL2Witness:
    group: object
    images: tuple  # one PGL2Element per standard generator


def pgl2_embeds(h, ctx):
    """Exhaustive search for an embedding of h into PGL_2(F_q).

    Returns a PGL2Witness or None (a definite No: the search is exhaustive).
    """
    _check_cap(ctx)
    if isinstance(h, Cyc):
        if h.n > 60:
            raise TooLarge("cyclic search capped at n = 60")
        if h.n == 1:
            return PGL2Witness(h, ())
        cands = order_census(ctx).get(h.n)
        return PGL2Witness(h, (cands[0],)) if cands else None
    if isinstance(h, Dih):
        if h.n > 30:
            raise TooLarge("dihedral search capped at n = 30")
        return _embed_dihedral(h, ctx)
    if isinstance(h, ElemAb):
        if h.p ** h.r > 64:
            raise TooLarge("elementary abelian search capped at order 64")
        return _embed_elemab(h, ctx)
    raise TooLarge("unsupported family for PGL_2 search")


def _embed_dihedral(h, ctx):
    n = h.n
    census = order_census(ctx)
    invol = census.get(2, [])
    if n == 1:
        # D_1 = C_2
        return PGL2Witness(h, (PGL2Element.of(mat2_identity(ctx)), invol[0])) \
            if invol else None
    rotations = census.get(n, [])
    for s in rotations:
        si = s.inverse()
        spowers = set()
        acc = s
        for _ in range(n):
            spowers.add(acc)
            acc = acc * s
        for t in invol:
            if t in spowers:
                continue
            if t * s * t.inverse() == si:
                return PGL2Witness(h, (s, t))
    return None


def _embed_elemab(h, ctx):
    p, r = h.p, h.r
    cands = order_census(ctx).get(p, [])
    if not cands:
        return None

    def extend(gens, subgroup):
        if len(gens) == r:
            return tuple(gens)
        start = cands.index(gens[-1]) + 1 if gens else 0
        for i in range(start, len(cands)):
            x = cands[i]
            if x in subgroup:
                continue
            if any(x * g != g * x for g in gens):
                continue
            bigger = {a * xp for a in subgroup for xp in _cyclic(x, p)}
            got = extend(gens + [x], bigger)
            if got is not None:
                return got
        return None

    ident = PGL2Element.of(mat2_identity(ctx))
    got = extend([], {ident})
    return PGL2Witness(h, got) if got is not None else None


def _cyclic(x, n):
    out = [PGL2Element.of(mat2_identity(x.rep.ctx))]
    acc = x
    for _ in range(n - 1):
        out.append(acc)
        acc = acc * x
    return out


# ---------------------------------------------------------------------------
# explicit representations
# ---------------------------------------------------------------------------

def dp_representation(ctx):
    """D_p inside GL_2(F_q) in characteristic p odd: the unipotent rotation
    [[1,1],[0,1]] and the reflection [[1,0],[0,-1]]."""
    p = ctx.p
    if p == 2:
        raise EvenChar("characteristic must be odd")
    s = Mat2(ctx, 1, 1, 0, 1)
    t = Mat2(ctx, 1, 0, 0, -ctx.one)
    _assert_dihedral(s, t, p)
    return s, t


def dn_representation(ctx, n):
    """D_n inside GL_2(F_q) when c = zeta_n + zeta_n^{-1} lies in F_q: the
    companion matrix of X^2 - cX + 1 and a compatible reflection."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if n % ctx.p == 0:
        raise RealZetaAbsent("n divisible by the characteristic")
    for c in ctx.elements():
        s = Mat2(ctx, ctx.zero, -ctx.one, ctx.one, c)
        if _proj_order(s) == n:
            t = Mat2(ctx, ctx.one, c, ctx.zero, -ctx.one)
            _assert_dihedral_proj(s, t, n)
            return s, t
    raise RealZetaAbsent("zeta_%d + zeta_%d^-1 is not in F_%d" % (n, n, ctx.q))


def elemab_representation(ctx, alphas):
    """(Z/pZ)^r inside GL_2 via [[1, alpha_i],[0,1]]; alphas F_p-independent."""
    alphas = [ctx.coerce(a) for a in alphas]
    p, r = ctx.p, len(alphas)
    # exhaustive independence scan over all F_p-combinations
    for code in range(1, p ** r):
        acc = ctx.zero
        cc = code
        for a in alphas:
            acc = acc + a * (cc % p)
            cc //= p
        if acc.is_zero():
            raise DependentAlphas("alphas are F_p-dependent")
    mats = [Mat2(ctx, 1, a, 0, 1) for a in alphas]
    for m in mats:
        acc = m
        for _ in range(p - 1):
            acc = acc * m
        assert acc.is_identity()
    return mats


def _proj_order(m):
    acc = m
    d = 1
    cap = m.ctx.q ** 2 + m.ctx.q + 1
    while not acc.is_scalar():
        acc = acc * m
        d += 1
        if d > cap:
            raise AssertionError("unexpected non-terminating order")
    return d


def _assert_dihedral(s, t, n):
    acc = s
    for _ in range(n - 1):
        acc = acc * s
    assert acc.is_identity(), "s^n != 1"
    assert (t * t).is_identity(), "t^2 != 1"
    assert t * s * t.inverse() == s.inverse(), "t s t^-1 != s^-1"


def _assert_dihedral_proj(s, t, n):
    assert _proj_order(s) == n
    assert (t * t).is_scalar()
    lhs = PGL2Element.of(t * s * t.inverse())
    assert lhs == PGL2Element.of(s.inverse())
