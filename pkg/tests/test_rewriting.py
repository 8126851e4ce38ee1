import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_presentation
from logmonoid.errors import OracleTooLargeError
from logmonoid.presentation import MonomialOrder, Presentation
from logmonoid.rewriting import (
    GroebnerBasis,
    buchberger,
    congruent,
    exponents_up_to,
    groebner,
    is_groebner,
    is_reduced,
    normal_form,
    oracle_closure,
    reduce_basis,
)

LEX_YX = MonomialOrder("lex", (1, 0))  # generators (x, y), y above x
BLOWUP = Presentation(("u", "v1", "v2"), (((1, 1, 0), (1, 0, 1)),))
GOLDEN = Presentation(("x", "y", "z"), (((1, 1, 0), (0, 0, 2)), ((1, 0, 1), (0, 2, 0))))


def test_normal_form_two_y():
    basis = GroebnerBasis(LEX_YX, (((0, 2), (2, 0)),))
    assert normal_form(basis, (1, 3)) == (3, 1)
    closure = oracle_closure(Presentation(("x", "y"), (((0, 2), (2, 0)),)), 4)
    cls = closure.class_of((1, 3))
    assert min(cls, key=LEX_YX.key) == (3, 1)


def test_normal_form_free():
    basis = GroebnerBasis(MonomialOrder.lex(2), ())
    assert normal_form(basis, (4, 5)) == (4, 5)


def test_normal_form_blowup_trace():
    order = MonomialOrder("lex", (2, 1, 0))  # v2 > v1 > u
    basis = groebner(BLOWUP, order)
    assert basis.rules == (((1, 0, 1), (1, 1, 0)),)
    trace = []
    assert normal_form(basis, (2, 0, 3), trace) == (2, 3, 0)
    assert len(trace) == 3
    closure = oracle_closure(BLOWUP, 5)
    assert closure.same((2, 0, 3), (2, 3, 0))


def test_buchberger_examples():
    assert groebner(Presentation(("x", "y"), (((0, 2), (2, 0)),)), LEX_YX).rules == (((0, 2), (2, 0)),)
    basis = groebner(GOLDEN)
    assert set(basis.rules) == {
        ((1, 1, 0), (0, 0, 2)),
        ((1, 0, 1), (0, 2, 0)),
        ((0, 3, 0), (0, 0, 3)),
    }
    closure = oracle_closure(GOLDEN, 6)
    for cls in closure.classes():
        assert len({normal_form(basis, p) for p in cls}) == 1
    assert groebner(Presentation.free(["a", "b"])).rules == ()


def test_reduce_basis_examples():
    raw = GroebnerBasis(LEX_YX, (((0, 2), (2, 0)), ((0, 4), (4, 0))))
    assert reduce_basis(raw).rules == (((0, 2), (2, 0)),)
    red = groebner(GOLDEN)
    assert reduce_basis(red) == red
    assert is_reduced(red)


def test_congruent_examples():
    basis = groebner(BLOWUP)
    assert congruent(basis, (1, 1, 0), (1, 0, 1))
    assert not congruent(basis, (0, 1, 0), (0, 0, 1))
    assert congruent(basis, (3, 1, 4), (3, 1, 4))


def test_oracle_examples():
    closure = oracle_closure(Presentation(("a", "b"), (((2, 0), (0, 2)),)), 3)
    assert closure.class_of((2, 0)) == {(2, 0), (0, 2)}
    assert closure.class_of((1, 0)) == {(1, 0)}
    free = oracle_closure(Presentation.free(["a", "b", "c"]), 3)
    assert all(len(c) == 1 for c in free.classes())
    assert oracle_closure(BLOWUP, 3).class_of((1, 1, 0)) == {(1, 1, 0), (1, 0, 1)}


def test_oracle_refuses_big_boxes():
    with pytest.raises(OracleTooLargeError):
        oracle_closure(Presentation.free(list("abcdef")), 40, max_cells=1000)


def test_canonical_under_permuted_relations():
    rng = random.Random(3)
    for _ in range(40):
        pres = random_presentation(rng, max_gens=4, max_rels=4)
        want = groebner(pres)
        for perm in itertools.islice(itertools.permutations(pres.relations), 6):
            flipped = tuple((b, a) for a, b in perm)
            assert reduce_basis(buchberger(Presentation(pres.generators, flipped))) == want


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_completed_bases_are_groebner(seed):
    rng = random.Random(seed)
    pres = random_presentation(rng, max_gens=4, max_rels=3)
    for order in (MonomialOrder.lex(pres.rank), MonomialOrder.grlex(pres.rank)):
        basis = groebner(pres, order)
        assert is_groebner(basis) and is_reduced(basis)
        # every rule is a consequence of the relations, within a roomy box
        top = max([sum(h) for h, _ in basis.rules] + [0])
        for h, b in basis.rules:
            assert order.key(h) > order.key(b)
        # normal forms are fixed points and irreducible
        for a in exponents_up_to(pres.rank, 3):
            nf = normal_form(basis, a)
            assert normal_form(basis, nf) == nf
            assert top == 0 or not any(all(x >= y for x, y in zip(nf, h)) for h, _ in basis.rules)


def test_groebner_is_cached_per_order():
    pres = Presentation(("x", "y"), (((0, 2), (2, 0)),))
    first = groebner(pres, LEX_YX)
    assert groebner(pres, LEX_YX) is first
    assert LEX_YX in pres._cache


def test_oracle_is_sound_for_random_presentations():
    rng = random.Random(5)
    for _ in range(60):
        pres = random_presentation(rng, max_gens=3, max_rels=3)
        basis = groebner(pres)
        closure = oracle_closure(pres, 6)
        for cls in closure.classes():
            assert len({normal_form(basis, p) for p in cls}) == 1
