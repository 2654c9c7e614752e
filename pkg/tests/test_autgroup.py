import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moufang_lattice import autgroup
from moufang_lattice.autgroup import LoopPerm, MissingImageError, NotAnAutomorphism
from moufang_lattice.hasse import count_copies_above
from moufang_lattice.loopcore import IsoType, SubloopSet, closure


def test_lie_auto(C):
    assert autgroup.lie_auto(np.eye(3, dtype=int), C).is_identity()
    assert autgroup.lie_auto(np.zeros((3, 3), dtype=int), C) is None
    cycle = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert autgroup.lie_auto(cycle, C).is_automorphism(C.table)
    # a shear is invertible but does not respect the cross product
    assert autgroup.lie_auto(np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), C) is None
    with pytest.raises(ValueError):
        autgroup.lie_auto(np.eye(2, dtype=int), C)


def test_lie_automorphisms_are_the_permutations(C):
    lifts = []
    for bits in itertools.product((0, 1), repeat=9):
        f = autgroup.lie_auto(np.array(bits).reshape(3, 3), C)
        if f is not None:
            lifts.append(f)
    perms = {autgroup.perm_auto(p, C) for p in itertools.permutations((1, 2, 3))}
    assert set(lifts) == perms


def test_perm_auto(C):
    x0 = C.named("x0")
    for p in itertools.permutations((1, 2, 3)):
        f = autgroup.perm_auto(p, C)
        assert f(x0) == x0
    swap = autgroup.perm_auto((2, 1, 3), C)
    assert swap(C.index_of("inv(100,100)")) == C.index_of("inv(010,010)")
    assert autgroup.perm_auto((1, 2, 3), C).is_identity()
    with pytest.raises(ValueError):
        autgroup.perm_auto((1, 1, 2), C)


def test_delta(C):
    d = autgroup.delta_auto(C)
    assert d(C.named("x0")) == C.named("x0")
    assert d(C.named("y0")) == C.index_of("tri(110,011,0)")
    assert (d * d).is_identity()
    assert d.is_automorphism(C.table)


def test_conjugation(C):
    assert autgroup.conj_auto(C.identity, C).is_identity()
    assert autgroup.conj_auto(C.named("x0"), C) is None
    c = autgroup.conj_auto(C.index_of("tri(001,101,1)"), C)
    assert c(C.index_of("inv(100,100)")) == C.named("x0")


def test_conjugation_automorphism_iff_order_three(C):
    for x in range(C.n):
        is_auto = autgroup.conj_auto(x, C) is not None
        assert is_auto == (C.order(x) in (1, 3))


def test_phi(C):
    phi = autgroup.phi_auto(C)
    n = C.named
    assert phi(n("x0")) == n("x0")
    assert phi(n("u4")) == n("u1")
    assert phi(n("u3")) == n("u2")
    assert phi.inverse()(n("u5")) == autgroup.delta_auto(C)(n("u0"))
    for name in ("x2", "x4"):
        assert C.element(phi(n(name)))[::3] == (0, 0)
    for name in ("x3", "x5"):
        assert C.element(phi.inverse()(n(name)))[::3] == (0, 0)


def test_loop_perm_algebra(C, aut):
    f, g = aut.element(100), aut.element(2000)
    assert (f * g).is_automorphism(C.table)
    assert (f * f.inverse()).is_identity()
    assert (f * g)(5) == f(g(5))
    assert f == LoopPerm(f.image.copy())
    assert hash(f) == hash(LoopPerm(f.image.copy()))


def test_generate_group_small(C):
    assert autgroup.generate_group([], C).order == 1
    gens = [autgroup.perm_auto(p, C) for p in itertools.permutations((1, 2, 3))]
    assert autgroup.generate_group(gens, C).order == 6
    assert autgroup.generate_group(gens + [autgroup.delta_auto(C)], C).order == 12
    with pytest.raises(NotAnAutomorphism):
        autgroup.generate_group([autgroup.conjugation_map(C.named("x0"), C)], C)


def test_generated_group_equals_search(aut):
    assert aut.order == 12096
    assert aut.same_elements(autgroup.full_aut_search())


def test_generating_triple(C):
    triple = autgroup.generating_triple(C)
    assert triple[:2] == (C.named("x0"), C.named("z0"))
    assert closure(C.table, triple).size == 120
    # x0, z0, u1 only generate M(A4)
    assert closure(C.table, (C.named("x0"), C.named("z0"), C.named("u1"))).size == 24


@given(i=st.integers(0, 12095))
def test_group_elements_are_automorphisms_with_words(C, aut, i):
    g = aut
    f = g.element(i)
    assert f.is_automorphism(C.table)
    rebuilt = LoopPerm.identity()
    for k in f.word:
        rebuilt = rebuilt * g.gens[k]
    assert rebuilt == f
    assert g.index_of(f) == i


def test_orbits_need_closed_input(aut, lat):
    partial = [s for s in lat.subs if s.size != 4]
    partial.append(lat.representative("E4+"))
    with pytest.raises(MissingImageError):
        autgroup.orbits_on_subloops(aut, partial)


def test_orbit_representatives_are_least(lat):
    for o in lat.orbits:
        assert o.representative == min(o.members, key=lambda s: s.elements)


def test_mapping_auto(C, aut, lat):
    y = closure(C.table, [C.index_of("inv(100,100)")])
    a = lat.representative("C2")
    f = autgroup.mapping_auto(aut, y, a)
    assert f.apply(y) == a
    rebuilt = LoopPerm.identity()
    for k in f.word:
        rebuilt = rebuilt * aut.gens[k]
    assert rebuilt == f
    assert autgroup.mapping_auto(aut, a, a).is_identity()
    assert autgroup.mapping_auto(aut, lat.representative("E4-"), lat.representative("E4+")) is None
    assert autgroup.mapping_auto(aut, lat.representative("C2"), lat.representative("C3")) is None


@given(i=st.integers(0, 12095), j=st.integers(0, 1044))
def test_action_preserves_iso_constants(lat, i, j):
    f = lat.group.element(i)
    a = lat.subs[j]
    fa = f.apply(a)
    for kind in (IsoType.S3, IsoType.E8, IsoType.MA4):
        assert count_copies_above(a, kind, lat) == count_copies_above(fa, kind, lat)


def test_export_json(aut):
    doc = json.loads(autgroup.export_json(aut))
    assert doc["order"] == 12096
    assert len(doc["generators"]) == len(aut.gens)
    assert doc["generators"][6]["name"] == "delta"
    small = autgroup.generate_group(aut.gens[:6])
    full = json.loads(autgroup.export_json(small, include_elements=True))
    assert len(full["elements"]) == 6 and full["elements"][0]["word"] == []
