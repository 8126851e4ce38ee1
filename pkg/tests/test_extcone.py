import itertools

import pytest

from logmonoid.errors import ContainmentError, DimensionError
from logmonoid.extcone import (
    compose,
    extend,
    extend_map,
    extended_fiber_product,
    sample_signature,
    theorem_c_check,
)
from logmonoid.lattice import Cone, cone_fiber_product

ID2 = [[1, 0], [0, 1]]
BLOW = [[1, 0], [1, 1]]


def test_extend_zero_cone():
    ext = extend(Cone.zero(2))
    assert ext.faces() == [()]
    assert ext.strata[()].cone.rank == 2 and ext.strata[()].dim == 0


def test_extend_orthant():
    ext = extend(Cone.orthant(2))
    assert ext.faces() == [(), (0,), (1,), (0, 1)]
    assert [ext.strata[f].dim for f in ext.faces()] == [2, 1, 1, 0]
    # the stratum at a ray is the orthant modulo that ray: a half line
    s = ext.strata[(0,)]
    assert s.cone.rank == 1 and s.cone.rays == ((1,),)


def test_extend_blowup_cone():
    ext = extend(Cone.from_rays(2, [(1, 0), (1, 1)]))
    assert len(ext.strata) == 4
    for f, s in ext.strata.items():
        assert s.cone.rank == 2 - len(f)
        assert s.cone.dim == 2 - len(f)


def test_extend_map_faces():
    src, tgt = extend(Cone.orthant(2)), extend(Cone.orthant(2))
    m = extend_map(BLOW, src, tgt)
    # rays are sorted: (0,1) is fixed, (1,0) goes to the interior
    assert src.base.rays == ((0, 1), (1, 0))
    assert m.face_map[(0,)] == (0,)
    assert m.face_map[(1,)] == (0, 1)
    assert m.base_injective() and not m.injective()
    assert m.collapsed() == {(0, 1): [(1,), (0, 1)]}
    ident = extend_map(ID2, src, tgt)
    assert ident.injective() and ident.collapsed() == {}


def test_extend_map_errors():
    src, tgt = extend(Cone.orthant(2)), extend(Cone.orthant(2))
    with pytest.raises(ContainmentError):
        extend_map([[-1, 0], [0, 1]], src, tgt)
    with pytest.raises(DimensionError):
        extend_map([[1, 0]], src, tgt)


def test_functoriality():
    a = extend(Cone.orthant(2))
    f = extend_map(BLOW, a, a)
    g = extend_map(BLOW, a, a)
    gf = compose(f, g)
    assert gf.linear == [[1, 0], [2, 1]]
    for face in a.faces():
        assert gf.face_map[face] == g.face_map[f.face_map[face]]


def test_zero_pair_stratum_is_the_cone_fiber_product():
    orth = Cone.orthant(2)
    a = extend(orth)
    f = extend_map(BLOW, a, a)
    strata = extended_fiber_product(f, f)
    zero = next(s for s in strata if s.source_faces == ((), ()))
    assert zero.cone == cone_fiber_product(orth, orth, BLOW, BLOW)
    assert [s.cone.dim for s in strata] == [2, 1, 2, 1, 1, 0]


def test_fiber_product_needs_common_target():
    a, b = extend(Cone.orthant(2)), extend(Cone.from_rays(2, [(1, 0), (1, 1)]))
    f = extend_map(ID2, a, a)
    g = extend_map(ID2, b, a)
    h = extend_map(ID2, b, b)
    assert extended_fiber_product(f, g)
    with pytest.raises(DimensionError):
        extended_fiber_product(f, h)


def test_strata_signatures_are_disjoint():
    cone = Cone.from_rays(3, [(1, 0, 0), (0, 1, 0), (1, 1, 2)])
    ext = extend(cone)
    seen = set()
    for face in ext.faces():
        for p in itertools.product(range(3), repeat=3):
            if cone.contains(p):
                sig = sample_signature(ext, face, p)
                seen.add(sig)
    # each face contributes its own signatures; faces never collide
    by_face = {}
    for face, cls in seen:
        by_face.setdefault(face, set()).add(cls)
    assert set(by_face) == set(ext.faces())
    assert by_face[tuple(range(3))] == {()}


def test_trivial_theorem_c():
    a = extend(Cone.orthant(1))
    f = extend_map([[1]], a, a)
    strata = extended_fiber_product(f, f)
    assert len(strata) == 2
    faces = [("{}", Cone.orthant(1)), ("{x}", Cone.zero(1))]
    rep = theorem_c_check(faces, strata, [((), ()), ((0,), (0,))])
    assert rep.verdict and rep.bijection == (0, 1)
    assert all(f.expected_ok for f in rep.faces)
    assert rep.to_json()["chartLevel"] is True
    bad = theorem_c_check([("{}", Cone.orthant(2))], strata)
    assert not bad.verdict and bad.to_json()["unmatchedStrata"]
