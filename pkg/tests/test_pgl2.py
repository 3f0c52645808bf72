import pytest

from edim.errors import TooLarge
from edim.exactfield import fq_context
from edim.fielddesc import finite_field_from_q
from edim.groups import Cyc, Dih, ElemAb, Sym
from edim.pgl2 import (dn_representation, dp_representation,
                       elemab_representation, order_census, pgl2_embeds,
                       pgl2_enumerate, pgl2_order, trace_invariant)


def test_group_size():
    for q in (2, 3, 4, 5, 7):
        ctx = fq_context(*_pk(q))
        els = pgl2_enumerate(ctx)
        assert len(els) == q ** 3 - q
        assert len({e.encode() for e in els}) == len(els)


def _pk(q):
    fd = finite_field_from_q(q)
    return fd.p, fd.k


def test_group_laws_sampled():
    ctx = fq_context(3, 1)
    els = pgl2_enumerate(ctx)
    for a in els[:8]:
        assert (a * a.inverse()).is_identity()
        for b in els[:8]:
            assert ((a * b).inverse() == b.inverse() * a.inverse())


def test_order_census_known_values():
    # PGL2(F_2) is S_3: 1 identity, 3 involutions, 2 three-cycles
    census = order_census(fq_context(2, 1))
    assert {n: len(v) for n, v in census.items()} == {1: 1, 2: 3, 3: 2}
    # PGL2(F_3) is S_4
    census3 = order_census(fq_context(3, 1))
    assert {n: len(v) for n, v in census3.items()} == \
        {1: 1, 2: 9, 3: 8, 4: 6}


def test_pgl2_order_consistency():
    ctx = fq_context(2, 2)
    for e in pgl2_enumerate(ctx):
        n = pgl2_order(e)
        acc = e
        for _ in range(n - 1):
            acc = acc * e
        assert acc.is_identity()


def test_trace_invariant_is_class_function():
    ctx = fq_context(5, 1)
    els = pgl2_enumerate(ctx)
    for e in els[:10]:
        for h in els[:10]:
            conj = h * e * h.inverse()
            if pgl2_order(e) % ctx.p != 0:
                assert trace_invariant(conj) == trace_invariant(e)


def test_embeds_dihedral_known_cases():
    # D_5 embeds in PGL2(F_4) (A_5 contains D_5); not in PGL2(F_2) = S_3
    assert pgl2_embeds(Dih(5), fq_context(2, 2)) is not None
    assert pgl2_embeds(Dih(5), fq_context(2, 1)) is None
    # D_3 = S_3 embeds everywhere q >= 2
    for q in (2, 3, 4, 5):
        assert pgl2_embeds(Dih(3), fq_context(*_pk(q))) is not None


def test_embeds_cyclic_known_cases():
    # C_n embeds iff n | q-1, n | q+1, or n = p
    assert pgl2_embeds(Cyc(4), fq_context(3, 1)) is not None  # 4 | 3+1
    assert pgl2_embeds(Cyc(5), fq_context(2, 2)) is not None  # 5 | 4+1
    assert pgl2_embeds(Cyc(5), fq_context(3, 1)) is None
    assert pgl2_embeds(Cyc(3), fq_context(3, 1)) is not None  # n = p


def test_embeds_elemab():
    # Klein four embeds for odd q (diag/antidiag) and for q = 4 (unipotents),
    # but PGL2(F_2) = S_3 has no Klein subgroup
    for q in (3, 4, 5):
        assert pgl2_embeds(ElemAb(2, 2), fq_context(*_pk(q))) is not None
    assert pgl2_embeds(ElemAb(2, 2), fq_context(2, 1)) is None
    # E(p,r) in char p needs k >= r
    assert pgl2_embeds(ElemAb(2, 3), fq_context(2, 2)) is None
    assert pgl2_embeds(ElemAb(2, 3), fq_context(2, 3)) is not None


def test_embeds_witness_is_faithful():
    wit = pgl2_embeds(Dih(7), fq_context(2, 3))
    assert wit is not None
    seen = set()
    frontier = [x for x in wit.images]
    closure = set(e.encode() for e in frontier)
    work = list(frontier)
    while work:
        x = work.pop()
        for g in wit.images:
            y = x * g
            if y.encode() not in closure:
                closure.add(y.encode())
                work.append(y)
    assert len(closure) + 1 >= 14  # identity may or may not be hit by words


def test_unsupported_family_raises():
    with pytest.raises(TooLarge):
        pgl2_embeds(Sym(5), fq_context(2, 1))


def test_q_cap():
    with pytest.raises(TooLarge):
        pgl2_embeds(Cyc(3), fq_context(2, 6))  # q = 64 > 27


def test_constructive_representations():
    # odd n with zeta_n + zeta_n^{-1} in the field
    for n, (p, k) in [(3, (5, 1)), (5, (2, 2)), (7, (2, 3)), (9, (17, 1))]:
        mats = dn_representation(fq_context(p, k), n)
        assert mats is not None
    from edim.errors import RealZetaAbsent
    with pytest.raises(RealZetaAbsent):
        dn_representation(fq_context(5, 1), 5)  # char divides n
    with pytest.raises(RealZetaAbsent):
        dn_representation(fq_context(2, 1), 5)  # real zeta_5 not in F_2
    # D_p in its own odd characteristic
    s, t = dp_representation(fq_context(3, 1))
    assert s is not None and t is not None
    from edim.errors import EvenChar
    with pytest.raises(EvenChar):
        dp_representation(fq_context(2, 2))
    ctx2 = fq_context(2, 2)
    els = elemab_representation(ctx2, [ctx2.one, ctx2.gen()])
    assert len(els) == 2
