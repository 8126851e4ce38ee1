import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logmonoid.errors import DimensionError, InvalidMapError, ValidationError
from logmonoid.presentation import (
    MonoidMap,
    MonomialOrder,
    Presentation,
    add,
    compare,
    compose,
    pushout,
    validate_map,
)
from logmonoid.rewriting import congruent, groebner

exps = st.lists(st.integers(0, 6), min_size=3, max_size=3).map(tuple)
orders = st.sampled_from(
    [
        MonomialOrder.lex(3),
        MonomialOrder.grlex(3),
        MonomialOrder("lex", (2, 0, 1)),
        MonomialOrder("weighted", (1, 2, 0), (3, 1, 2)),
        MonomialOrder.lex(3).eliminating([1]),
        MonomialOrder.grlex(3).eliminating([2, 0]),
    ]
)


def test_compare_examples():
    lex = MonomialOrder.lex(2)
    assert compare(lex, (1, 0), (0, 5)) == 1
    assert compare(lex, (2, 3), (2, 3)) == 0
    assert compare(MonomialOrder.grlex(2), (1, 0), (0, 2)) == -1


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionError):
        compare(MonomialOrder.lex(2), (1, 0), (1, 0, 0))


@settings(max_examples=300)
@given(orders, exps, exps, exps)
def test_order_is_monoidal_and_total(order, a, b, c):
    assert compare(order, a, b) == compare(order, add(a, c), add(b, c))
    assert compare(order, a, b) == -compare(order, b, a)
    assert (compare(order, a, b) == 0) == (a == b)


@settings(max_examples=100)
@given(orders, exps)
def test_descending_chains_terminate(order, a):
    # a strictly descending walk through single-coordinate moves must stop
    steps = 0
    while steps < 10_000:
        smaller = [
            tuple(x - (i == j) + (i == k) for i, x in enumerate(a))
            for j in range(3)
            for k in range(3)
            if a[j] > 0
        ]
        smaller = [s for s in smaller if compare(order, s, a) < 0]
        if not smaller:
            break
        a = min(smaller, key=order.key)
        steps += 1
    assert steps < 10_000


def test_order_parse():
    gens = ("x", "y")
    assert MonomialOrder.parse("lex:y,x", gens).permutation == (1, 0)
    assert MonomialOrder.parse("grlex", gens).kind == "grlex"
    w = MonomialOrder.parse("weighted:y=2", gens)
    assert w.weights == (1, 2) and w.permutation == (1, 0)
    with pytest.raises(ValidationError):
        MonomialOrder.parse("lex:z", gens)
    with pytest.raises(ValidationError):
        MonomialOrder.parse("cubic:x", gens)
    with pytest.raises(ValidationError):
        MonomialOrder("weighted", (0, 1), (0, 1))


def test_order_description_round_trip():
    gens = ("a", "b", "c")
    for order in (MonomialOrder.lex(3).eliminating([2]), MonomialOrder("weighted", (1, 0, 2), (2, 1, 1))):
        assert MonomialOrder.from_description(order.describe(gens), gens) == order


def test_exponent_syntax():
    pres = Presentation.free(["u", "v1"])
    assert pres.exponent("2u+3v1") == (2, 3)
    assert pres.exponent("0") == (0, 0)
    assert pres.format((0, 0)) == "0"
    assert pres.format((1, 2)) == "u+2v1"
    with pytest.raises(ValidationError):
        pres.exponent("2w")


def test_presentation_validation():
    with pytest.raises(ValidationError):
        Presentation(("a", "a"))
    with pytest.raises(ValidationError):
        Presentation(("a",), (((1, 0), (0,)),))
    with pytest.raises(ValidationError):
        Presentation(("a",), (((-1,), (0,)),))


def test_json_round_trip_with_big_integers():
    big = 2**60
    pres = Presentation(("a", "b"), (((big, 0), (0, 1)),))
    data = pres.to_json()
    assert data["relations"][0][0][0] == str(big)
    assert Presentation.from_json(data) == pres


def test_validate_map_examples():
    log_point = Presentation(("a", "b"), (((2, 0), (0, 2)),))
    ok, _ = validate_map(MonoidMap.identity(log_point))
    assert ok
    c = Presentation.free(["c"])
    assert validate_map(MonoidMap(log_point, c, ((1,), (1,))))[0]
    cd = Presentation.free(["c", "d"])
    ok, witness = validate_map(MonoidMap(log_point, cd, ((1, 0), (0, 1))))
    assert not ok and witness == ((2, 0), (0, 2))


def test_compose_respects_relations():
    log_point = Presentation(("a", "b"), (((2, 0), (0, 2)),))
    c = Presentation.free(["c"])
    f = MonoidMap(log_point, c, ((1,), (1,)))
    g = MonoidMap(c, Presentation.free(["p", "q"]), ((1, 2),))
    assert validate_map(f)[0] and validate_map(g)[0]
    assert validate_map(compose(f, g))[0]


def test_pushout_over_trivial_monoid_is_coproduct():
    P = Presentation.free([])
    N = Presentation.free(["n"])
    out = pushout(MonoidMap(P, N, ()), MonoidMap(P, N, ()))
    assert out.generators == ("n1", "n2") and out.relations == ()


def test_pushout_blowup_chart():
    P = Presentation.free(["x", "y"])
    Q = Presentation.free(["u", "v"])
    f = MonoidMap(P, Q, ((1, 0), (1, 1)))
    out = pushout(f, f)
    assert out.generators == ("u1", "v1", "u2", "v2")
    assert out.relations == (((1, 0, 0, 0), (0, 0, 1, 0)), ((1, 1, 0, 0), (0, 0, 1, 1)))
    basis = groebner(out)
    assert congruent(basis, (1, 1, 0, 0), (1, 0, 0, 1))
    assert not congruent(basis, (0, 1, 0, 0), (0, 0, 0, 1))


def test_pushout_doubling_is_N():
    P = Presentation.free(["x"])
    f = MonoidMap(P, Presentation.free(["q"]), ((2,),))
    g = MonoidMap(P, Presentation.free(["r"]), ((1,),))
    out = pushout(f, g)
    assert out.generators == ("q", "r")
    assert out.relations == (((2, 0), (0, 1)),)
    # with r on top the rule r -> 2q removes r: normal forms are multiples of q
    basis = groebner(out, MonomialOrder.parse("lex:r,q", out.generators))
    assert basis.rules == (((0, 1), (2, 0)),)


def test_pushout_symmetric_under_swap():
    P = Presentation.free(["x", "y"])
    f = MonoidMap(P, Presentation.free(["a", "b"]), ((1, 0), (1, 1)))
    g = MonoidMap(P, Presentation.free(["c"]), ((1,), (2,)))
    fg, gf = pushout(f, g), pushout(g, f)
    swap = lambda e: e[2:] + e[:2]  # noqa: E731
    lhs = groebner(fg)
    order = MonomialOrder("lex", (1, 2, 0))  # a, b, c in gf coordinates
    rhs = groebner(gf, order)
    for a in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 0, 2), (2, 1, 1)]:
        for b in [(1, 0, 0), (0, 0, 1), (1, 1, 0), (0, 0, 2), (3, 0, 0)]:
            assert congruent(lhs, a, b) == congruent(rhs, swap(a), swap(b))


def test_pushout_rejects_invalid_map():
    log_point = Presentation(("a", "b"), (((2, 0), (0, 2)),))
    bad = MonoidMap(log_point, Presentation.free(["c", "d"]), ((1, 0), (0, 1)))
    with pytest.raises(InvalidMapError) as info:
        pushout(bad, MonoidMap.identity(log_point))
    assert info.value.witness == ((2, 0), (0, 2))


def test_map_image_count_checked():
    with pytest.raises(DimensionError):
        MonoidMap(Presentation.free(["a"]), Presentation.free(["b"]), ())
