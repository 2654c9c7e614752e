import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moufang_lattice.chein import build_catalog_group, cyclic_group, direct_product
from moufang_lattice.loopcore import (
    CayleyTable,
    CayleyTableError,
    IsoType,
    OtherType,
    SubloopSet,
    all_subloops,
    are_isomorphic,
    census,
    classify,
    closure,
    emit_cayley,
    is_associative,
    is_commutative,
    is_diassociative,
    is_elementary_abelian,
    is_moufang,
    is_subloop,
    order_profile,
    parse_cayley,
)

def test_five_element_loop(five_loop):
    assert not is_moufang(five_loop)
    assert not is_associative(five_loop)
    assert not is_commutative(five_loop)
    assert classify(five_loop) == OtherType(5, ((1, 1), (2, 4)))


def test_groups_are_moufang():
    for name in ("S3", "A4", "C2xC4"):
        g = build_catalog_group(name)
        assert is_moufang(g) and is_associative(g)


def test_paige_loop_identities(C):
    t = C.table
    assert is_moufang(t)
    assert not is_associative(t)
    assert not is_commutative(t)


def test_diassociative_on_a_chein_loop():
    from moufang_lattice.chein import catalog_group, chein_double

    m = chein_double(catalog_group("S3"))
    assert is_diassociative(m)
    assert not is_associative(m)


@pytest.mark.parametrize(
    "rows, message",
    [
        ([[0, 1], [1, 2]], "out of range"),
        ([[0, 1], [0, 1]], "column not a permutation"),
        ([[0, 1, 2], [1, 1, 0], [2, 0, 1]], "row not a permutation"),
        ([[1, 0], [0, 1]], "identity"),
        ([[0, 1, 2]], "square"),
    ],
)
def test_table_validation(rows, message):
    with pytest.raises(CayleyTableError, match=message):
        CayleyTable(np.array(rows), 0)


def test_table_error_locates_the_row():
    with pytest.raises(CayleyTableError) as info:
        CayleyTable(np.array([[0, 1, 2], [1, 1, 0], [2, 0, 1]]), 0)
    assert info.value.row == 1


@pytest.mark.parametrize(
    "text",
    ["", "2\n0 1\n1 0\n", "2 0\n0 1\n", "2 0\n0 1\n1 x\n", "2 0\n0 1 1\n1 0\n", "0 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(CayleyTableError):
        parse_cayley(text)


def test_cayley_round_trip():
    for name in ("C4", "S3", "A4"):
        g = build_catalog_group(name)
        assert parse_cayley(emit_cayley(g)) == g
    assert parse_cayley("# comment\n2 0\n\n0 1\n1 0\n") == cyclic_group(2)


def test_inverses_and_orders(C):
    t = C.table
    for x in range(t.n):
        assert t.mul(x, t.inverse(x)) == t.identity
        assert t.mul(t.inverse(x), x) == t.identity
    assert order_profile(t) == {1: 1, 2: 63, 3: 56}


def test_closure(C):
    t = C.table
    assert closure(t) == SubloopSet(1 << t.identity)
    x0, y0 = C.named("x0"), C.named("y0")
    assert closure(t, [x0]).size == 2
    assert closure(t, [y0]).size == 3
    assert closure(t, [x0, y0]).size == 6
    with pytest.raises(IndexError):
        closure(t, [120])


@given(st.lists(st.integers(0, 119), max_size=3))
def test_closure_is_a_subloop(seeds):
    from moufang_lattice.paige import build_paige2

    t = build_paige2().table
    sub = closure(t, seeds)
    assert is_subloop(t, sub)
    assert all(s in sub for s in seeds)
    assert closure(t, sub.elements) == sub


def test_subloop_set_operations():
    a, b = SubloopSet.of([0, 2]), SubloopSet.of([0, 1, 2, 3])
    assert a <= b and a < b and not b <= a
    assert (a & b) == a
    assert list(b) == [0, 1, 2, 3] and 3 in b and 4 not in b
    assert a.size == len(a) == 2


def test_all_subloops_of_small_groups():
    c6 = cyclic_group(6)
    assert [s.size for s in all_subloops(c6)] == [1, 2, 3, 6]
    assert len(all_subloops(build_catalog_group("S3"))) == 6
    assert len(all_subloops(build_catalog_group("A4"))) == 10
    assert len(all_subloops(direct_product(cyclic_group(2), cyclic_group(4)))) == 8


def test_census_of_a4():
    counts = census(build_catalog_group("A4"))
    assert counts == {IsoType.TRIVIAL: 1, IsoType.C2: 3, IsoType.C3: 4, IsoType.E4: 1, IsoType.A4: 1}


def test_classify_confirm_agrees():
    for name in ("C4", "E4", "S3", "E8", "A4", "C2xC4"):
        g = build_catalog_group(name)
        assert classify(g) == classify(g, confirm=True) == IsoType(name)


def test_elementary_abelian():
    assert is_elementary_abelian(build_catalog_group("E8"))
    assert not is_elementary_abelian(build_catalog_group("C4"))
    assert not is_elementary_abelian(build_catalog_group("S3"))


@given(st.permutations(range(12)))
def test_isomorphism_under_relabelling(perm):
    a4 = build_catalog_group("A4")
    b = a4.relabel(list(perm))
    f = are_isomorphic(a4, b)
    assert f is not None
    assert all(f[a4.mul(x, y)] == b.mul(f[x], f[y]) for x in range(12) for y in range(12))


def test_non_isomorphic_pairs():
    assert are_isomorphic(build_catalog_group("C4"), build_catalog_group("E4")) is None
    assert are_isomorphic(cyclic_group(6), build_catalog_group("S3")) is None
