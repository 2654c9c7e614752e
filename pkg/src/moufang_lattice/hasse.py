"""Hasse constants of a subloop lattice and the double-counting identities between them.

Notation: for subloops A <= C and a type B,

* ``l[B:C]``: copies of B in C (:func:`count_copies`);
* ``l[A:B]`` for abstract types: copies of A in one copy of B, counted on the
  catalog table of B (:func:`abstract_count`);
* ``l_iso[A:B:C]``: copies of B in C containing A (:func:`count_copies_above`);
* ``l_orb[A:B:C]``: those lying in the orbit of a given copy of B (:func:`count_orbit_above`).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Union

import numpy as np

from .chein import reference_table, subgroup_lattice_demo_c2xc4
from .loopcore import IsoType, SubloopSet, all_subloops, classify
from .report import Report

if TYPE_CHECKING:
    from .lattice import SubloopLattice

TypeLike = Union[IsoType, str]


def _type(kind: TypeLike) -> IsoType:
    if isinstance(kind, IsoType):
        return kind
    base = kind[:-1] if kind in ("E4+", "E4-") else kind
    try:
        return IsoType(base)
    except ValueError:
        raise KeyError(f"unknown subloop type {kind!r}") from None


def _is_orbit_label(kind: TypeLike) -> bool:
    return isinstance(kind, str) and kind in ("E4+", "E4-")


# --- the three constants ---------------------------------------------------------------


def count_copies(kind: TypeLike, lat: "SubloopLattice") -> int:
    """l[B:C]; an orbit label (E4+, E4-) counts that orbit only."""
    if _is_orbit_label(kind):
        return len(lat.orbit_members(kind))
    return len(lat.of_type(_type(kind)))


def count_copies_above(sub: SubloopSet, kind: TypeLike, lat: "SubloopLattice") -> int:
    """l_iso[A:B:C] with A = ``sub``; A itself counts when it has type B."""
    i = lat.index_of(sub)
    if _is_orbit_label(kind):
        cand = lat.orbit_members(kind)
    else:
        cand = lat.of_type(_type(kind))
    return int(lat.contains[i, cand].sum())


def count_orbit_above(sub: SubloopSet, sup_rep: SubloopSet, lat: "SubloopLattice") -> int:
    """l_orb[A:B:C]: copies in the orbit of ``sup_rep`` containing ``sub``."""
    i = lat.index_of(sub)
    oid = lat.orbit_id[lat.index_of(sup_rep)]
    return int(lat.contains[i, lat.orbit_members(oid)].sum())


@lru_cache(maxsize=None)
def _catalog_census(kind: IsoType) -> dict[IsoType, int]:
    table = reference_table(kind)
    counts: dict[IsoType, int] = {}
    for s in all_subloops(table):
        t = classify(table, s)
        counts[t] = counts.get(t, 0) + 1
    return counts


def abstract_count(sub: TypeLike, sup: TypeLike, lat: "SubloopLattice | None" = None) -> int:
    """l[A:B]: copies of A inside the catalog table of B.

    For B = C the lattice ``lat`` is used when given (it is the same loop).
    """
    a, b = _type(sub), _type(sup)
    if b == IsoType.AMBIENT and lat is not None and lat.loop.n == reference_table(b).n:
        return len(lat.of_type(a))
    return _catalog_census(b).get(a, 0)


def l_iso(sub_label: str, sup: TypeLike, lat: "SubloopLattice") -> int:
    """l_iso at the representative of the orbit labelled ``sub_label``."""
    return count_copies_above(lat.representative(sub_label), sup, lat)


def l_orb(sub_label: str, sup_label: str, lat: "SubloopLattice") -> int:
    return count_orbit_above(lat.representative(sub_label), lat.representative(sup_label), lat)


# --- constant table ----------------------------------------------------------------------


@dataclass(frozen=True)
class HasseRecord:
    sub: str  # orbit label of A
    sup: str  # orbit label of B
    l_glb: int  # l[A:B] for the underlying types
    l_iso: int  # l_iso[A:B:C] for the type of B
    l_orb: int  # l_orb[A:B:C] for the orbit of B


def hasse_table(lat: "SubloopLattice") -> list[HasseRecord]:
    """Every pair of orbit labels (A, B) with |A| dividing |B|, in display order."""
    labels = lat.display_labels()
    rows = []
    for a in labels:
        ra = lat.representative(a)
        for b in labels:
            rb = lat.representative(b)
            if rb.size % ra.size:
                continue
            ta, tb = lat.type_of(ra), lat.type_of(rb)
            rows.append(
                HasseRecord(
                    a,
                    b,
                    abstract_count(ta, tb, lat),
                    count_copies_above(ra, tb, lat),
                    count_orbit_above(ra, rb, lat),
                )
            )
    return rows


def table_csv(rows: list[HasseRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("sub", "sup", "l_glb", "l_iso", "l_orb"))
    for r in rows:
        w.writerow((r.sub, r.sup, r.l_glb, r.l_iso, r.l_orb))
    return buf.getvalue()


# --- published values --------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    kind: str  # count | glb | iso | orb
    sub: str
    sup: str
    expected: int

    @property
    def id(self) -> str:
        if self.kind == "count":
            return f"l[{self.sub}:C]"
        if self.kind == "glb":
            return f"l[{self.sub}:{self.sup}]"
        return f"l_{self.kind}[{self.sub}:{self.sup}:C]"


def _c(spec: str, expected: int) -> Constant:
    kind, rest = spec.split(" ")
    sub, _, sup = rest.partition(":")
    return Constant(kind, sub, sup, expected)


LITERATURE_CONSTANTS: tuple[Constant, ...] = tuple(
    _c(s, v)
    for s, v in (
        ("count C2", 63), ("count C3", 28), ("count E4", 315), ("count S3", 336),
        ("count E8", 63), ("count A4", 63), ("count MS3", 112), ("count MA4", 63),
        ("count E4+", 63), ("count E4-", 252),
        ("iso C2:S3", 16), ("iso C3:S3", 12), ("iso C3:A4", 9), ("iso C2:A4", 3),
        ("iso S3:MS3", 1), ("iso S3:MA4", 3), ("iso C3:MA4", 9), ("iso C2:MS3", 16),
        ("iso C2:MA4", 15), ("iso C3:MS3", 4), ("iso E4-:MS3", 4), ("iso E4+:MS3", 0),
        ("iso E4+:A4", 1), ("iso E4-:A4", 0), ("iso E4+:E8", 3), ("iso E4-:E8", 1),
        ("iso E8:MA4", 3), ("iso E4+:MA4", 7), ("iso E4-:MA4", 3), ("iso A4:MA4", 1),
        ("glb C2:S3", 3), ("glb C3:S3", 1), ("glb C2:A4", 3), ("glb C3:A4", 4),
        ("glb S3:MA4", 16), ("glb C3:MA4", 4), ("glb C3:MS3", 1), ("glb S3:MS3", 3),
        ("glb E4:MS3", 9), ("glb E4:MA4", 19), ("glb C2:MS3", 9), ("glb C2:MA4", 15),
        ("glb A4:MA4", 1),
        ("orb C2:E4+", 3), ("orb C2:E4-", 12), ("orb S3:MS3", 1),
    )
)


def evaluate(const: Constant, lat: "SubloopLattice") -> int:
    if const.kind == "count":
        return count_copies(const.sub, lat)
    if const.kind == "glb":
        return abstract_count(const.sub, const.sup, lat)
    if const.kind == "iso":
        return l_iso(const.sub, const.sup, lat)
    if const.kind == "orb":
        return l_orb(const.sub, const.sup, lat)
    raise ValueError(f"unknown constant kind {const.kind!r}")


def verify_constants(lat: "SubloopLattice") -> Report:
    rep = Report("Hasse constants")
    for c in LITERATURE_CONSTANTS:
        rep.check(c.id, c.expected, evaluate(c, lat), "literature", "published constant")
    paige = lat.paige
    if paige is not None:
        t = paige.table
        y0 = paige.named("y0")
        invs = [x for x in range(t.n) if t.order(x) == 2]
        # involutions x with <y0, x> of type S3; the rest generate A4 with y0
        s3 = sum(1 for x in invs if lat.type_of(paige.span(str(y0), str(x))) == IsoType.S3)
        rep.check("involutions x with <y0,x> = S3", 36, s3, "literature", "C3 inside S3 copies")
        rep.check("(63 - 36) / l[C2:A4]", l_iso("C3", "A4", lat),
                  (len(invs) - s3) // abstract_count("C2", "A4"), "derived", "l_iso[C3:A4:C] by scaling")
        x = paige.index_of("inv(100,100)")
        o3 = sum(1 for y in invs if t.order(t.mul(x, y)) == 3)
        rep.check("involutions y with o(xy) = 3", 32, o3, "literature", "x = inv(100,100)")
        rep.check("c+ and c-", (7, 3), (l_iso("E4+", "MA4", lat), l_iso("E4-", "MA4", lat)),
                  "literature", "E4 copies per M(A4) by orbit")
        rep.check("19*63 = 63*c+ + 252*c-", 19 * 63,
                  63 * l_iso("E4+", "MA4", lat) + 252 * l_iso("E4-", "MA4", lat), "literature")
        rep.check("7*l[E8:C] = 63*3 + 252*1", 7 * count_copies("E8", lat),
                  count_copies("E4+", lat) * l_iso("E4+", "E8", lat)
                  + count_copies("E4-", lat) * l_iso("E4-", "E8", lat), "literature")
    return rep


# --- lemma and identities ------------------------------------------------------------------


def verify_counting_lemma(lat: "SubloopLattice") -> Report:
    """Orbit-mates share l_iso towards every type and l_orb towards every orbit.

    Also reproduces the C2 x C4 example, where isomorphic subgroups in
    different orbits have different l_iso.
    """
    rep = Report("counting lemma")
    types = sorted({t for t in lat.types}, key=lambda t: (lat.sizes[lat.of_type(t)[0]], str(t)))
    for o in lat.orbits:
        members = lat.orbit_members(o.id)
        label = lat.orbit_labels[o.id]
        iso_ok = all(len(set(lat.contains[np.ix_(members, lat.of_type(t))].sum(axis=1).tolist())) == 1
                     for t in types)
        orb_ok = all(len(set(lat.contains[np.ix_(members, lat.orbit_members(b.id))].sum(axis=1).tolist())) == 1
                     for b in lat.orbits)
        rep.check(f"orbit {label}: l_iso and l_orb constant", True, iso_ok and orb_ok, "literature",
                  "invariance under automorphisms")
    demo = subgroup_lattice_demo_c2xc4()
    rep.check("C2xC4: l_iso[A:C4:C], l_iso[A':C4:C]", (2, 0), (demo.l_iso_a, demo.l_iso_a_prime),
              "literature", "isomorphic A, A' in different orbits")
    return rep


def verify_identities(lat: "SubloopLattice") -> Report:
    """The five double-counting identities for every ordered pair of types with |A| <= |B|.

    Left sides use catalog counts l[A:B] and global counts; right sides use
    orbit sizes and constants at orbit representatives only.
    """
    rep = Report("counting identities")
    orbit_of_type: dict[IsoType, list[int]] = {}
    for o in lat.orbits:
        orbit_of_type.setdefault(lat.type_of(o.representative), []).append(o.id)
    types = sorted(orbit_of_type, key=lambda t: (lat.orbits.orbits[orbit_of_type[t][0]].representative.size, str(t)))

    def rep_of(oid: int) -> SubloopSet:
        return lat.representative(lat.orbit_labels[oid])

    def size(oid: int) -> int:
        return lat.orbits.orbits[oid].size

    for a in types:
        for b in types:
            a_orbits, b_orbits = orbit_of_type[a], orbit_of_type[b]
            if rep_of(a_orbits[0]).size > rep_of(b_orbits[0]).size:
                continue
            pair = f"{a}:{b}"
            glb = abstract_count(a, b, lat)
            count_a, count_b = count_copies(a, lat), count_copies(b, lat)
            iso = {i: count_copies_above(rep_of(i), b, lat) for i in a_orbits}
            orb = {(i, j): count_orbit_above(rep_of(i), rep_of(j), lat) for i in a_orbits for j in b_orbits}
            rep.check(f"(1) {pair}", tuple(iso[i] for i in a_orbits),
                      tuple(sum(orb[i, j] for j in b_orbits) for i in a_orbits), "literature")
            rep.check(f"(2) {pair}", tuple(glb * size(j) for j in b_orbits),
                      tuple(sum(size(i) * orb[i, j] for i in a_orbits) for j in b_orbits), "literature")
            rep.check(f"(3) {pair}", glb * count_b, sum(size(i) * iso[i] for i in a_orbits), "literature")
            if len(a_orbits) == 1:
                (i,) = a_orbits
                rep.check(f"(4) {pair}", tuple(glb * size(j) for j in b_orbits),
                          tuple(count_a * orb[i, j] for j in b_orbits), "literature")
                rep.check(f"(5) {pair}", glb * count_b, count_a * iso[i], "literature")
    return rep
