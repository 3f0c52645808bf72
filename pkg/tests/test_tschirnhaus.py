import random

import pytest

from edim.errors import PoleAtAssignment, SplittingTooLarge, Unsupported
from edim.exactfield import fq_context
from edim.tschirnhaus import (GeneralPoly, InvertRoot, ScaleRoots, Shift,
                              general_poly, parameter_count, reduce_general,
                              verify_specialization)


def test_general_poly_shape():
    f = general_poly(5, 0)
    assert f.n == 5 and f.char == 0
    assert parameter_count(f) == 5
    assert f.coefficient(3).render() == "t3"


def test_reduce_kills_subleading_coefficient():
    for n, char in [(4, 0), (5, 0), (5, 2), (7, 3)]:
        h, record = reduce_general(n, char)
        assert h.coefficient(1).is_zero(), (n, char)


def test_reduce_normalizes_a_coefficient():
    # after rescaling some later coefficient is constant, cutting the count
    # to n - 2
    for n in (4, 5, 6, 7):
        h, _ = reduce_general(n, 0)
        assert parameter_count(h) == n - 2


def test_quadratic_and_cubic_reduce_to_one_parameter():
    for n, char in [(2, 0), (3, 0), (2, 3), (3, 2)]:
        h, _ = reduce_general(n, char)
        assert parameter_count(h) == 1, (n, char)


def test_wild_cases():
    h2, rec2 = reduce_general(2, 2)
    assert parameter_count(h2) == 1
    h3, rec3 = reduce_general(3, 3)
    assert parameter_count(h3) == 1
    with pytest.raises(Unsupported):
        reduce_general(4, 2)
    with pytest.raises(Unsupported):
        reduce_general(6, 3)
    with pytest.raises(Unsupported):
        reduce_general(1, 0)


def test_record_steps_are_transformations():
    _, record = reduce_general(5, 0)
    for step in record.steps:
        assert isinstance(step, (Shift, ScaleRoots, InvertRoot))
        assert step.kind() in ("Shift", "ScaleRoots", "InvertRoot")


def test_specialization_oracle_accepts():
    rng = random.Random(17)
    for n, char in [(4, 0), (5, 0), (5, 3), (3, 2)]:
        f = general_poly(n, char)
        h, record = reduce_general(n, char)
        ctx = fq_context(101 if char == 0 else char, 1 if char == 0 else 2)
        els = list(ctx.elements())
        done = 0
        while done < 10:
            assignment = {"t%d" % (i + 1): rng.choice(els) for i in range(n)}
            try:
                assert verify_specialization(f, h, record, assignment, ctx)
            except (PoleAtAssignment, SplittingTooLarge):
                continue
            done += 1


def test_specialization_oracle_rejects_tampering():
    rng = random.Random(23)
    n = 4
    f = general_poly(n, 0)
    h, record = reduce_general(n, 0)
    # tamper: swap the reduced polynomial for the wrong degree-4 reduction
    wrong = GeneralPoly(n, 0, (h.coeffs[1], h.coeffs[0]) + h.coeffs[2:])
    ctx = fq_context(101, 1)
    els = list(ctx.elements())
    rejected = 0
    for _ in range(20):
        assignment = {"t%d" % (i + 1): rng.choice(els) for i in range(n)}
        try:
            if not verify_specialization(f, wrong, record, assignment, ctx):
                rejected += 1
        except (PoleAtAssignment, SplittingTooLarge):
            continue
    assert rejected > 0


def test_splitting_cap_enforced():
    # a degree-16 factor forces a splitting field beyond the cap
    f = general_poly(16, 0)
    h, record = reduce_general(16, 0)
    ctx = fq_context(2, 1)
    assignment = {"t%d" % (i + 1): ctx.one for i in range(16)}
    with pytest.raises((PoleAtAssignment, SplittingTooLarge)):
        verify_specialization(f, h, record, assignment, ctx)
