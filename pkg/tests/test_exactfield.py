import random

import pytest

from edim.errors import NotPrime
from edim.exactfield import (FqContext, fq_context, has_zeta, is_prime,
                             multiplicative_order)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-2, 50):
        assert is_prime(n) == (n in primes), n


def test_context_rejects_composite_characteristic():
    with pytest.raises(NotPrime):
        fq_context(6, 1)


def test_context_caching():
    assert fq_context(5, 2) is fq_context(5, 2)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)])
def test_field_axioms_randomized(p, k):
    ctx = fq_context(p, k)
    rng = random.Random(p * 100 + k)
    els = list(ctx.elements())
    assert len(els) == p ** k
    assert len({e.encode() for e in els}) == p ** k
    for _ in range(60):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * ctx.one == a and a + ctx.zero == a
        assert a - a == ctx.zero
        if not b.is_zero():
            assert b * b.inverse() == ctx.one
            assert (a / b) * b == a


def test_frobenius_fixes_prime_subfield():
    ctx = fq_context(3, 3)
    for n in range(3):
        x = ctx.from_int(n)
        assert x ** 3 == x


def test_from_int_is_ring_hom():
    ctx = fq_context(7, 2)
    for a in range(-5, 15):
        for b in range(0, 10):
            assert ctx.from_int(a) + ctx.from_int(b) == ctx.from_int(a + b)
            assert ctx.from_int(a) * ctx.from_int(b) == ctx.from_int(a * b)


def test_orders_divide_group_order():
    for p, k in [(2, 4), (3, 2), (13, 1)]:
        ctx = fq_context(p, k)
        q = p ** k
        orders = {multiplicative_order(x) for x in ctx.elements()
                  if not x.is_zero()}
        assert all((q - 1) % d == 0 for d in orders)
        assert q - 1 in orders  # F_q* is cyclic


def test_multiplicative_order_of_zero_rejected():
    from edim.errors import ZeroElement
    ctx = fq_context(5, 1)
    with pytest.raises(ZeroElement):
        multiplicative_order(ctx.zero)


def test_has_zeta_matches_divisibility():
    # zeta_n exists in F_q exactly when n | q - 1, or n is a p-power times
    # such a divisor collapsing to it; the definitive law: n coprime to p
    # and n | q - 1
    for p, k in [(2, 2), (3, 1), (5, 1), (7, 1)]:
        ctx = fq_context(p, k)
        q = p ** k
        for n in range(1, 20):
            want = n % p != 0 and (q - 1) % n == 0
            assert has_zeta(ctx, n) == want, (p, k, n)


def test_coerce_between_contexts():
    f2 = fq_context(2, 1)
    f4 = fq_context(2, 2)
    x = f2.one
    assert f4.coerce(x) == f4.one
    with pytest.raises(Exception):
        fq_context(3, 1).coerce(f4.gen())
