import json
import random

import pytest

from edim.edengine import (BoundInterval, RuleCatalog, Thm45Result,
                           Thm46Result, TooLarge, a_lower_recurrence,
                           atom_aliases, bound, canon, center_order,
                           check_thm45, check_thm46, dn_criterion,
                           expr_element_orders, l_core_trivial, product_views,
                           replay_trace, s_lower_recurrence, trace_json)
from edim.errors import Inconsistent
from edim.fielddesc import (NO, UNKNOWN, YES, Custom, Cyclotomic, FiniteField,
                            RationalField)
from edim.groups import (Alt, Cyc, Dih, ElemAb, Product, Sym, center,
                         element_orders, expr_order, l_core, porder, realize)

Q = RationalField()
F2 = FiniteField(2, 1)
F4 = FiniteField(2, 2)


# --- interval algebra -------------------------------------------------------

def test_interval_meet_and_validation():
    a = BoundInterval(1, 5)
    b = BoundInterval(3, 9)
    assert a.meet(b) == BoundInterval(3, 5)
    with pytest.raises(Inconsistent):
        BoundInterval(4, 2)
    with pytest.raises(Inconsistent):
        a.meet(BoundInterval(6, 9))


# --- canonicalization and aliases ------------------------------------------

def test_canon_identities():
    assert canon(Sym(2)) == Cyc(2)
    assert canon(Alt(3)) == Cyc(3)
    assert canon(Dih(1)) == Cyc(2)
    assert canon(Dih(2)) == ElemAb(2, 2)
    assert canon(Dih(3)) == Sym(3)
    assert canon(ElemAb(5, 1)) == Cyc(5)
    assert canon(Product(Cyc(1), Sym(4))) == Sym(4)


def test_canon_product_flatten_and_sort():
    e = Product(Product(Cyc(3), Sym(4)), Cyc(2))
    f = Product(Cyc(2), Product(Sym(4), Cyc(3)))
    assert canon(e) == canon(f)


def test_canon_preserves_order():
    rng = random.Random(1)
    atoms = [Sym(4), Alt(5), Dih(6), Cyc(9), ElemAb(2, 2)]
    for _ in range(30):
        pick = rng.sample(atoms, rng.randrange(1, 4))
        e = pick[0]
        for a in pick[1:]:
            e = Product(e, a)
        assert expr_order(canon(e)) == expr_order(e)


def test_atom_aliases_are_isomorphic():
    for a in (Cyc(2), Cyc(3), Sym(3), ElemAb(2, 2), Cyc(5)):
        for b in atom_aliases(a):
            assert expr_order(b) == expr_order(a)
            assert element_orders(realize(b)) == element_orders(realize(a))


def test_product_views_preserve_order():
    for e in (ElemAb(3, 3), Cyc(12), Cyc(30), Product(Sym(3), Cyc(4))):
        for factors in product_views(e):
            assert len(factors) >= 2
            prod = 1
            for f in factors:
                prod *= expr_order(f)
            assert prod == expr_order(e)


# --- structural facts vs enumeration ---------------------------------------

@pytest.mark.parametrize("e", [Sym(3), Sym(4), Sym(5), Alt(4), Alt(5),
                               Dih(4), Dih(5), Dih(6), Cyc(8), Cyc(12),
                               ElemAb(2, 3), ElemAb(3, 2),
                               Product(Sym(3), Cyc(4))])
def test_center_order_matches_enumeration(e):
    assert center_order(e) == center(realize(e)).order


@pytest.mark.parametrize("e", [Sym(3), Sym(4), Alt(4), Alt(5), Dih(5),
                               Dih(4), Dih(9), Cyc(12), ElemAb(3, 2)])
@pytest.mark.parametrize("l", [2, 3, 5])
def test_l_core_trivial_matches_enumeration(e, l):
    assert l_core_trivial(e, l) == (l_core(realize(e), l).order == 1)


@pytest.mark.parametrize("e", [Sym(5), Alt(6), Dih(7), Cyc(12),
                               ElemAb(2, 3), Product(Dih(5), Cyc(3))])
def test_expr_element_orders_matches_enumeration(e):
    got = expr_element_orders(e)
    want = {porder(x) for x in realize(e).elements()}
    assert got == want


# --- theorem predicate checks ----------------------------------------------

def test_check_thm45_cases():
    g = realize(Sym(5))
    sigma = next(x for x in g.elements() if porder(x) == 2)
    # sigma not central in S_5: rejected outright
    from edim.errors import NotCentral
    with pytest.raises(NotCentral):
        check_thm45(g, sigma, Q)

    c2 = realize(Cyc(2))
    s = next(x for x in c2.elements() if porder(x) == 2)
    assert check_thm45(c2, s, FiniteField(3, 1)).applicable
    # over Q(zeta_8), zeta_4 is present, so condition (iv) fails inside C_4
    c4 = realize(Cyc(4))
    s4sq = next(x for x in c4.elements() if porder(x) == 2)
    assert not check_thm45(c4, s4sq, Cyclotomic(8)).applicable
    # ...but for C_2 itself there is no larger central tau: applicable
    assert check_thm45(c2, s, Cyclotomic(8)).applicable

    c3 = realize(Cyc(3))
    s3 = next(x for x in c3.elements() if porder(x) == 3)
    assert check_thm45(c3, s3, F4).applicable
    assert not check_thm45(c3, s3, Q).applicable  # no zeta_3, no character

    # C_4 with sigma = square of a generator: every character kills sigma
    gen = next(x for x in c4.elements() if porder(x) == 4)
    from edim.groups import pmul
    res = check_thm45(c4, pmul(gen, gen), Q)
    assert not res.applicable


def test_check_thm46_cases():
    assert check_thm46(Cyc(1), 2, Q).applicable          # C_2 over Q
    assert check_thm46(Cyc(1), 3, F4).applicable         # zeta_3 in F_4
    assert not check_thm46(Cyc(1), 3, Q).applicable      # zeta_3 not in Q
    # condition (iv): another prime dividing |Z(G')| whose zeta is present
    assert not check_thm46(Cyc(3), 2, Cyclotomic(3)).applicable
    assert check_thm46(Cyc(3), 2, Q).applicable
    # condition (i): char l with nontrivial O_l(G')
    assert not check_thm46(Cyc(4), 3, FiniteField(2, 1)).applicable


def test_dn_criterion_table():
    # char 0: n odd and real zeta_n in K
    assert dn_criterion(3, Q) is YES
    assert dn_criterion(5, Q) is NO
    assert dn_criterion(5, Cyclotomic(5)) is YES
    assert dn_criterion(4, Cyclotomic(8)) is NO   # n even
    # char p | n: only n = p works (odd p)
    assert dn_criterion(5, FiniteField(5, 1)) is YES
    assert dn_criterion(15, FiniteField(5, 1)) is NO
    # char 2: n = 2 needs at least 4 elements
    assert dn_criterion(2, F4) is YES
    assert dn_criterion(2, F2) is NO
    assert dn_criterion(7, FiniteField(2, 3)) is YES
    custom = Custom(characteristic=0)
    assert dn_criterion(9, custom) is UNKNOWN


# --- engine results ---------------------------------------------------------

@pytest.mark.parametrize("g,fd,lo,hi", [
    (Cyc(1), Q, 0, 0),
    (Sym(6), Q, 3, 3),
    (Sym(7), Q, 3, 4),
    (ElemAb(3, 2), F4, 2, 2),
    (ElemAb(2, 2), F2, 2, 2),
    (ElemAb(2, 2), Q, 2, 2),
    (Dih(7), Q, 2, 4),
    (Alt(5), F4, 1, 1),
    (Sym(2), F2, 1, 1),
    (Cyc(6), Q, 2, 2),
    (Alt(8), F2, 2, 3),
    (Dih(5), Cyclotomic(5), 1, 1),
    (Sym(4), F4, 2, 2),
    (Dih(2), F4, 1, 1),
    (Dih(3), FiniteField(3, 1), 1, 1),
    (Cyc(4), Cyclotomic(4), 1, 1),
    (Product(Alt(5), Cyc(3)), Cyclotomic(3), 3, 3),
])
def test_engine_known_values(g, fd, lo, hi):
    iv, _ = bound(g, fd)
    assert (iv.lo, iv.hi) == (lo, hi), iv


def test_engine_deterministic():
    for g, fd in [(Sym(8), Q), (Dih(9), F4), (Product(Sym(3), Cyc(5)), Q)]:
        r1 = bound(g, fd)
        r2 = bound(g, fd)
        assert r1[0] == r2[0]
        assert [n.json() for n in r1[1]] == [n.json() for n in r2[1]]


def test_consistency_under_field_extension():
    # enlarging K can only shrink ed; derived intervals over K and over the
    # extension must both contain their true values, so the extension's
    # lower bound can never exceed the base field's upper bound
    rng = random.Random(12)
    pool = ([Sym(n) for n in range(2, 10)] + [Alt(n) for n in range(3, 10)]
            + [Dih(n) for n in range(1, 12)] + [Cyc(n) for n in range(1, 16)]
            + [ElemAb(2, 2), ElemAb(2, 3), ElemAb(3, 2), ElemAb(5, 2)])
    for _ in range(100):
        g = rng.choice(pool)
        m = rng.choice([3, 4, 5, 7, 8, 9])
        base = rng.choice([Q, Cyclotomic(3), F2, FiniteField(3, 1)])
        try:
            bigger = base.extend_with_zeta(m)
        except Exception:
            continue
        iv1, _ = bound(g, base)
        iv2, _ = bound(g, bigger)
        assert iv2.lo <= iv1.hi, (g, base, m, iv1, iv2)


def test_recurrences_never_beat_closed_forms():
    for n in range(2, 21):
        iv, _ = bound(Sym(n), Q)
        assert s_lower_recurrence(n, Q) <= iv.lo
        iv2, _ = bound(Sym(n), F2)
        assert s_lower_recurrence(n, F2) <= iv2.lo
    for n in range(3, 21):
        iv, _ = bound(Alt(n), Q)
        assert a_lower_recurrence(n, Q) <= iv.lo


def test_trace_replay_and_tamper_detection():
    iv, nodes = bound(Sym(6), Q)
    state = replay_trace(nodes)
    assert iv in state.values()
    # tamper with a conclusion: replay must fail
    assert nodes
    from dataclasses import replace
    key, concl = nodes[-1].conclusion
    bad = replace(nodes[-1],
                  conclusion=(key, BoundInterval(concl.lo, concl.hi + 1)))
    with pytest.raises(Inconsistent):
        replay_trace(nodes[:-1] + [bad])
    # tamper with a citation: replay must fail
    bad2 = replace(nodes[0], citation="Lemma 0.0")
    with pytest.raises(Inconsistent):
        replay_trace([bad2] + nodes[1:])


def test_trace_json_schema():
    iv, nodes = bound(ElemAb(3, 2), F4)
    doc = trace_json(ElemAb(3, 2), F4, iv, nodes)
    s = json.dumps(doc, sort_keys=True)
    doc2 = json.loads(s)
    assert doc2["query"]["group"] == "E(3,2)"
    assert doc2["interval"] == {"lo": 2, "hi": 2}
    for node in doc2["nodes"]:
        assert set(node) >= {"rule", "citation", "premises", "conclusion"}
        assert RuleCatalog.citation(node["rule"]) == node["citation"]


def test_catalog_is_complete_and_frozen():
    ids = [r.id for r in RuleCatalog.RULES]
    assert len(ids) == len(set(ids)) == 18
    for rid in ids:
        cit = RuleCatalog.citation(rid)
        assert cit and any(w in cit for w in ("Lemma", "Thm", "Prop", "§"))
        assert '"' in cit  # every citation carries a verbatim anchor


def test_unknown_fields_block_rules():
    # a custom descriptor with no facts cannot certify D_9 = 1
    fd = Custom(characteristic=0)
    iv, _ = bound(Dih(9), fd)
    assert iv.lo >= 1 and iv.hi >= 2
