import json
from pathlib import Path

import numpy as np
import pytest

from moufang_lattice import lattice
from moufang_lattice.chein import catalog_group
from moufang_lattice.loopcore import IsoType, classify

GOLDEN = Path(__file__).parent / "data" / "lattice.json"


def test_census(lat):
    counts = {}
    for t in lat.types:
        counts[t] = counts.get(t, 0) + 1
    assert counts == {
        IsoType.TRIVIAL: 1, IsoType.C2: 63, IsoType.C3: 28, IsoType.E4: 315, IsoType.S3: 336,
        IsoType.E8: 63, IsoType.A4: 63, IsoType.MS3: 112, IsoType.MA4: 63, IsoType.AMBIENT: 1,
    }
    assert len(lat) == 1045


def test_sorted_and_bounded(lat):
    keys = [(s.size, s.elements) for s in lat.subs]
    assert keys == sorted(keys)
    assert lat.subs[lat.bottom].size == 1 and lat.subs[lat.top].size == 120


def test_enumeration_with_threads(monkeypatch, C, lat):
    monkeypatch.setenv("MLAT_THREADS", "2")
    assert lattice.enumerate_subloops(C) == lat.subs


def test_lattice_of_a_small_group():
    small = lattice.build_lattice(catalog_group("A4"))
    assert len(small) == 10
    assert small.orbits is None
    with pytest.raises(ValueError):
        small.orbit_label(small.subs[0])
    assert lattice.check_strong_lagrange(small)
    assert lattice.check_weak_cauchy(small)


def test_covers_are_a_transitive_reduction(lat):
    cov = lat.covers
    assert not cov.diagonal().any()
    i, j = np.nonzero(cov)
    assert (lat.sizes[j] % lat.sizes[i] == 0).all()
    # every strict containment is a chain of covers: reachability matches
    reach = cov.astype(np.float32)
    closure = reach.copy()
    for _ in range(6):
        closure = ((closure + closure @ reach) > 0).astype(np.float32)
    strict = lat.contains & ~np.eye(len(lat), dtype=bool)
    assert np.array_equal(closure > 0, strict)


def test_neighbors(lat):
    down, up = lattice.neighbors(lat, lat.subs[lat.bottom])
    assert down == []
    assert sorted(s.size for s in up) == [2] * 63 + [3] * 28
    _, e8_up = lattice.neighbors(lat, lat.representative("E8"))
    assert {lat.type_of(s) for s in e8_up} == {IsoType.MA4}
    below, _ = lattice.neighbors(lat, lat.representative("MA4"))
    types = [lat.type_of(s) for s in below]
    assert types.count(IsoType.A4) == 1 and types.count(IsoType.E8) == 3


def test_global_properties(lat):
    assert lattice.check_strong_lagrange(lat)
    assert not lattice.check_weak_cauchy(lat)
    assert lattice.weak_cauchy_failures(lat) == [5]
    assert all(lattice.has_weak_cauchy(lat, i) for i in range(len(lat) - 1))
    proper = [o for o in lattice.subloop_orders(lat) if o < 120]
    assert set(proper) == lattice.PROPER_ORDERS
    assert lattice.e8_commuting_extensions(lat) == 0


def test_e4_orbit_labels(lat):
    plus = set(lat.orbit_members("E4+").tolist())
    e4 = lat.of_type(IsoType.E4)
    in_a4 = lat.in_some_a4()
    assert {int(i) for i, flag in zip(e4, in_a4) if flag} == plus
    minus = lat.orbit_members("E4-")
    assert lat.contains[np.ix_(minus, lat.of_type(IsoType.E8))].any(axis=0).all()


def test_named_representatives(lat):
    for label in lattice.NAMED_SUBLOOPS:
        assert lat.orbit_label(lat.representative(label)) == label


def test_figure_data(lat):
    g = lattice.figure2_data(lat)
    assert len(g.nodes) == 11
    assert (g.node("E4+").size, g.node("E4-").size) == (63, 252)
    e = g.edge("S3", "MS3")
    assert (e.l_glb, e.l_orb, e.maximal) == (3, 1, True)
    assert g.edge("E8", "C") is None
    assert g.edge("E8", "MA4").maximal
    assert g.edge("E4+", "MS3") is None
    thick_to_top = {e.source for e in g.edges if e.target == "C"}
    assert thick_to_top == {"MS3", "MA4"}


def test_json_round_trip_and_golden(lat):
    text = lattice.export_json(lattice.figure2_data(lat))
    assert lattice.export_json(lattice.parse_json(text)) == text
    assert text == GOLDEN.read_text()
    doc = json.loads(text)
    assert set(doc) == {"elements", "nodes", "edges"}
    assert set(doc["nodes"][0]) == {"id", "order", "type", "orbit", "size", "representative"}
    assert set(doc["edges"][0]) == {"from", "to", "l_glb", "l_orb", "maximal"}


def test_dot(lat):
    dot = lattice.export_dot(lattice.figure2_data(lat))
    assert dot.count("[label=\"") == 11 + dot.count(" -- ")
    assert '"E8" -- "C"' not in dot
    bold = [ln for ln in dot.splitlines() if "bold" in ln]
    assert all('-- "C"' not in ln or ('"MS3"' in ln or '"MA4"' in ln) for ln in bold)


def test_representatives_confirmed_by_isomorphism(lat):
    for orbit in lat.orbits:
        rep = orbit.representative
        if lat.type_of(rep) in (IsoType.TRIVIAL, IsoType.AMBIENT):
            continue
        assert classify(lat.loop, rep, confirm=True) == lat.type_of(rep)
