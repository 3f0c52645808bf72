import random
from fractions import Fraction

import pytest

from edim.errors import PoleAtPoint, UnboundVariable
from edim.exactfield import fq_context
from edim.ratfunc import QQ, MultiPoly, RatFn, poly_divexact, poly_gcd, render


def _vars():
    return ("t4", "t5", "t6")


def _v(name):
    return RatFn.var(QQ, _vars(), name)


def test_render_matches_cli_grammar():
    t4, t5 = _v("t4"), _v("t5")
    assert render(t4 / t5) == "t4 * t5^-1"
    assert render(-t4 + RatFn.const(QQ, _vars(), Fraction(1))) == "-t4 + 1"
    assert render(t4 * t4 + t5) == "t4^2 + t5"


def test_field_axioms_randomized():
    rng = random.Random(7)
    vars = _vars()

    def rand_ratfn():
        num = MultiPoly.zero(QQ, vars)
        for _ in range(rng.randrange(1, 4)):
            mono = MultiPoly.const(QQ, vars, Fraction(rng.randrange(-3, 4)))
            for i in range(rng.randrange(0, 3)):
                mono = mono * MultiPoly.var(QQ, vars, rng.choice(vars))
            num = num + mono
        return RatFn.from_poly(num)

    for _ in range(40):
        a, b, c = rand_ratfn(), rand_ratfn(), rand_ratfn()
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a
        if not b.is_zero():
            assert (a / b) * b == a


def test_gcd_reduction_is_automatic():
    t4, t5 = _v("t4"), _v("t5")
    one = RatFn.const(QQ, _vars(), Fraction(1))
    # (t4^2 - 1)/(t4 - 1) reduces to t4 + 1
    assert (t4 * t4 - one) / (t4 - one) == t4 + one


def test_poly_gcd_randomized_products():
    rng = random.Random(5)
    vars = ("t4", "t5")

    def rand_poly():
        p = MultiPoly.zero(QQ, vars)
        for _ in range(rng.randrange(1, 3)):
            mono = MultiPoly.const(QQ, vars, Fraction(rng.randrange(1, 4)))
            for _ in range(rng.randrange(0, 2)):
                mono = mono * MultiPoly.var(QQ, vars, rng.choice(vars))
            p = p + mono
        return p

    for _ in range(25):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        if h.is_zero() or f.is_zero() or g.is_zero():
            continue
        d = poly_gcd(f * h, g * h)
        # h divides the gcd of f*h and g*h
        poly_divexact(d, poly_gcd(d, h))  # no exception
        q = poly_divexact(f * h, d)
        assert q * d == f * h


def test_evaluate_over_finite_field():
    ctx = fq_context(13, 1)
    t4, t5 = _v("t4"), _v("t5")
    f = (t4 + t5) / (t4 - t5)
    vals = {"t4": ctx.from_int(5), "t5": ctx.from_int(2)}
    assert f.evaluate(vals) == ctx.from_int(7) / ctx.from_int(3)
    with pytest.raises(PoleAtPoint):
        f.evaluate({"t4": ctx.from_int(2), "t5": ctx.from_int(2)})


def test_evaluate_requires_bindings():
    t4 = _v("t4")
    ctx = fq_context(5, 1)
    with pytest.raises(UnboundVariable):
        (t4 + t4).evaluate({"t5": ctx.one})


def test_compose_pair_cross_multiplication():
    t4, t5 = _v("t4"), _v("t5")
    f = t4 / (t4 + t5)
    bindings = {"t4": t5 * t5, "t5": t4}
    n, d = f.compose_pair(bindings)
    composed = f.substitute(bindings)
    assert RatFn(n, d) == composed


def test_substitute_detects_indeterminate():
    from edim.errors import IndeterminateForm
    t4, t5 = _v("t4"), _v("t5")
    f = t4 / (t4 - t5)
    with pytest.raises(IndeterminateForm):
        f.substitute({"t4": t5, "t5": t5})
