import itertools
import random

import pytest

from conftest import random_presentation
from logmonoid.errors import NotIntegralError
from logmonoid.lattice import hnf_basis, lattice_reduce, monoid_membership
from logmonoid.presentation import MonomialOrder, Presentation, validate_map
from logmonoid.rewriting import exponents_up_to, groebner, normal_form
from logmonoid.intsat import (
    ideal_quotient,
    inclusion_chain,
    integralize,
    integralize_basis,
    localize,
    saturate,
    saturate_in_lattice,
)
from logmonoid.structure import is_integral

BLOWUP = Presentation(("u", "v1", "v2"), (((1, 1, 0), (1, 0, 1)),))
LOG_POINT = Presentation(("a", "b"), (((2, 0), (0, 2)),))


def test_localize():
    loc = localize(BLOWUP, (1, 0, 0))
    assert loc.generators == ("u", "v1", "v2", "t")
    assert loc.relations[-1] == ((1, 0, 0, 1), (0, 0, 0, 0))
    named = localize(Presentation.free(["t"]), (1,))
    assert named.generators == ("t", "t1")


def test_ideal_quotient_blowup():
    order = MonomialOrder("lex", (2, 1, 0))
    basis = ideal_quotient(BLOWUP, (1, 0, 0), order)
    assert basis.rules == (((0, 0, 1), (0, 1, 0)),)
    # quotient at v1 only cancels nothing new
    assert ideal_quotient(BLOWUP, (0, 1, 0), order).rules == groebner(BLOWUP, order).rules


def test_integralize_examples():
    order = MonomialOrder("lex", (2, 1, 0))
    assert integralize_basis(BLOWUP, order).rules == (((0, 0, 1), (0, 1, 0)),)
    cancel = Presentation(("a", "b", "c"), (((1, 1, 0), (1, 0, 1)),))
    assert integralize(cancel).relations in ((((0, 1, 0), (0, 0, 1)),), (((0, 0, 1), (0, 1, 0)),))
    assert integralize(LOG_POINT).relations == LOG_POINT.relations
    assert integralize(Presentation.free([])).rank == 0


def test_integralize_is_idempotent():
    rng = random.Random(21)
    for _ in range(60):
        pres = random_presentation(rng, max_gens=4, max_rels=3)
        once = integralize(pres)
        assert is_integral(once)
        assert integralize(once).relations == once.relations


def test_integralize_matches_lattice():
    rng = random.Random(22)
    for _ in range(60):
        pres = random_presentation(rng, max_gens=3, max_rels=3)
        basis = integralize_basis(pres)
        lat = hnf_basis([tuple(a - b for a, b in zip(x, y)) for x, y in pres.relations], pres.rank)
        pts = list(exponents_up_to(pres.rank, 4))
        for p, q in itertools.combinations(pts, 2):
            same_nf = normal_form(basis, p) == normal_form(basis, q)
            assert same_nf == (lattice_reduce(p, lat) == lattice_reduce(q, lat))


def test_saturate_numerical():
    res = saturate(Presentation(("a", "b"), (((3, 0), (0, 2)),)))
    assert res.rank == 1 and res.hilbert == ((1,),) and res.torsion == ()
    assert res.inclusion.images == ((2,), (3,))
    assert validate_map(res.inclusion)[0]


def test_saturate_torsion():
    res = saturate(LOG_POINT)
    assert res.torsion == (2,)
    assert res.presentation.generators == ("h1", "z1")
    assert res.presentation.relations == (((0, 2), (0, 0)),)
    assert validate_map(res.inclusion)[0]


def test_saturate_units():
    res = saturate(Presentation(("a", "b"), (((1, 1), (0, 0)),)))
    assert res.unit_rank == 1 and res.hilbert == ()
    assert res.presentation.generators == ("w1", "w1_inv")
    assert validate_map(res.inclusion)[0]


def test_saturate_requires_integral():
    with pytest.raises(NotIntegralError):
        saturate(BLOWUP)


def test_saturate_is_idempotent_on_hilbert_data():
    for pres in (LOG_POINT, Presentation(("a", "b"), (((3, 0), (0, 2)),)), integralize(BLOWUP)):
        res = saturate(pres)
        again = saturate(res.presentation)
        assert (again.rank, again.torsion, again.unit_rank) == (res.rank, res.torsion, res.unit_rank)
        assert len(again.hilbert) == len(res.hilbert)


def test_saturation_contains_the_monoid():
    rng = random.Random(23)
    for _ in range(40):
        pres = integralize(random_presentation(rng, max_gens=3, max_rels=2))
        res = saturate(pres)
        assert validate_map(res.inclusion)[0]
        # every element of the saturated cone is a sum of Hilbert generators
        for v in itertools.product(range(0, 4), repeat=res.cone.rank):
            if res.cone.contains(v) and res.hilbert:
                assert monoid_membership(v, res.hilbert, res.cone) is not None


def test_saturate_in_lattice():
    assert saturate_in_lattice([(1, 0), (1, 2)]) == [(1, 0), (1, 1), (1, 2)]
    assert saturate_in_lattice([(2,), (3,)]) == [(1,)]
    assert saturate_in_lattice([]) == []


def test_inclusion_chain():
    to_int, res = inclusion_chain(BLOWUP)
    assert to_int.target.relations != BLOWUP.relations
    assert res.rank == 2 and len(res.hilbert) == 2
