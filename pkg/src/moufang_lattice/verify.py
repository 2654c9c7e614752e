"""Every check of the package, grouped into named sections."""

from __future__ import annotations

from importlib import resources
from typing import Callable

import numpy as np

from . import autgroup, chein, hasse, kernels, lattice, zorn
from .loopcore import IsoType, closure, is_associative
from .paige import NAMED_SUBLOOPS, build_paige2, parse_table1_csv, table1
from .report import Report

CENSUS = {
    IsoType.TRIVIAL: 1, IsoType.C2: 63, IsoType.C3: 28, IsoType.E4: 315, IsoType.S3: 336,
    IsoType.E8: 63, IsoType.A4: 63, IsoType.MS3: 112, IsoType.MA4: 63, IsoType.AMBIENT: 1,
}
ORBIT_SIZES = {
    "1": 1, "C2": 63, "C3": 28, "E4+": 63, "E4-": 252, "S3": 336,
    "E8": 63, "A4": 63, "MS3": 112, "MA4": 63, "C": 1,
}


def golden_table1() -> str:
    return resources.files("moufang_lattice").joinpath("data/table1.csv").read_text()


def section_loop() -> Report:
    rep = Report("loop construction")
    c = build_paige2()
    t = c.table
    rep.check("|C|", 120, c.n, "literature")
    profile = {int(k): int(v) for k, v in zip(*np.unique(t.orders, return_counts=True))}
    rep.check("element orders", {1: 1, 2: 63, 3: 56}, profile, "literature")
    oracle = [len(list(zorn.iter_powers(x))) for x in c.elements]
    rep.check("diagonal order criterion = power oracle", oracle,
              [zorn.element_order(x) for x in c.elements], "derived")
    rep.check("orders from the table = power oracle", oracle, t.orders.tolist(), "derived")
    rep.check("Moufang identity on all triples", None, kernels.moufang_violation(t.table), "literature")
    rep.check("nonassociative", False, is_associative(t), "literature")
    rep.check("x0 x1 = y0", c.named("y0"), c.mul(c.named("x0"), c.named("x1")), "literature")
    rep.check("inverse of y0", c.index_of("tri(011,110,0)"), t.inverse(c.named("y0")), "literature")
    rep.check("involutions have a = b = 1 + alpha.beta", True,
              all(x.a == x.b == (1 + zorn.dot(x.alpha, x.beta)) % 2
                  for x in c.elements if zorn.element_order(x) == 2), "derived")
    rep.check("order-3 elements have alpha.beta = 1", True,
              all(zorn.dot(x.alpha, x.beta) == 1 for x in c.elements if zorn.element_order(x) == 3), "derived")
    return rep


def section_table1() -> Report:
    rep = Report("table1: orders of products with involutions")
    golden = {(g.alpha, g.beta): g for g in parse_table1_csv(golden_table1())}
    for cell in table1():
        if cell.alpha == "000" and cell.beta == "000":
            continue
        rep.check(f"cell inv({cell.alpha},{cell.beta})", golden[(cell.alpha, cell.beta)].values, cell.values,
                  "literature", "printed table")
    return rep


def section_census() -> Report:
    rep = Report("subloop census")
    lat = lattice.paige_lattice()
    counts: dict = {}
    for ty in lat.types:
        counts[ty] = counts.get(ty, 0) + 1
    for ty, n in CENSUS.items():
        rep.check(f"copies of {ty}", n, counts.get(ty, 0), "literature" if ty not in (IsoType.TRIVIAL, IsoType.AMBIENT) else "trivial")
    rep.check("no other types", set(CENSUS), set(counts), "literature")
    rep.check("total subloops", 1045, len(lat), "derived", "sum of the type counts")
    return rep


def section_orbits() -> Report:
    rep = Report("automorphism orbits")
    lat = lattice.paige_lattice()
    c = lat.paige
    sizes = {lab: len(lat.orbit_members(lab)) for lab in lat.orbit_labels}
    rep.check("orbit sizes", ORBIT_SIZES, sizes, "literature")
    for lab in NAMED_SUBLOOPS:
        rep.check(f"{lab} representative in its orbit", lab, lat.orbit_label(lat.representative(lab)), "literature")
    e4 = lat.of_type(IsoType.E4)
    plus = set(lat.orbit_members("E4+").tolist())
    rep.check("E4 in some A4 iff in E4+", True,
              all(bool(a4) == (int(i) in plus) for i, a4 in zip(e4, lat.in_some_a4())), "literature")
    minus = lat.orbit_members("E4-")
    rep.check("every E8 contains an E4- copy", True,
              bool(lat.contains[np.ix_(minus, lat.of_type(IsoType.E8))].any(axis=0).all()), "literature")
    recount = {}
    for lab, n in sizes.items():
        ty = lat.type_of(lat.representative(lab)) if lab in NAMED_SUBLOOPS else lat.type_of(
            lat.orbits.orbits[lat.orbit_index(lab)].representative)
        recount[ty] = recount.get(ty, 0) + n
    rep.check("orbit sizes sum to the census", CENSUS, recount, "derived")
    g = lat.group
    y = closure(c.table, [c.index_of("inv(100,100)")])
    a = lat.representative("C2")
    f = autgroup.mapping_auto(g, y, a)
    rep.check("witness maps <inv(100,100)> to <x0>", True, f is not None and f.apply(y) == a, "literature")
    w = autgroup.conj_auto(c.index_of("tri(001,101,1)"))
    rep.check("conjugation by tri(001,101,1) maps inv(100,100) to x0", c.named("x0"),
              w(c.index_of("inv(100,100)")), "literature")
    rep.check("no automorphism maps E4- to E4+", None,
              autgroup.mapping_auto(g, lat.representative("E4-"), lat.representative("E4+")), "literature")
    return rep


def section_aut() -> Report:
    rep = Report("automorphism group")
    c = build_paige2()
    n = c.named
    gen = autgroup.standard_group()
    full = autgroup.full_aut_search()
    rep.check("|Aut(C)| from generators", 12096, gen.order, "derived", "equal to the backtracking search")
    rep.check("backtracking search = generated group", True, gen.same_elements(full), "derived")
    orders = [c.order(x) for x in range(c.n)]
    autos = {k: sum(autgroup.conj_auto(x) is not None for x in range(c.n) if orders[x] == k) for k in (2, 3)}
    rep.check("conjugations that are automorphisms (involutions, order 3)", {2: 0, 3: 56}, autos, "literature")
    small = autgroup.generate_group(
        [autgroup.perm_auto(p) for p in ((1, 2, 3), (2, 1, 3), (1, 3, 2), (2, 3, 1), (3, 1, 2), (3, 2, 1))]
        + [autgroup.delta_auto()])
    rep.check("permutations and delta", 12, small.order, "derived")
    d = autgroup.delta_auto()
    rep.check("delta(y0)", c.index_of("tri(110,011,0)"), d(n("y0")), "derived")
    rep.check("delta fixes x0", n("x0"), d(n("x0")), "trivial")
    rep.check("delta is an involution", True, (d * d).is_identity(), "trivial")
    rep.check("perm (12) on inv(100,100)", c.index_of("inv(010,010)"),
              autgroup.perm_auto((2, 1, 3))(c.index_of("inv(100,100)")), "derived")
    phi = autgroup.phi_auto()
    rep.check("phi(x0), phi(u4), phi(u3)", (n("x0"), n("u1"), n("u2")), (phi(n("x0")), phi(n("u4")), phi(n("u3"))),
              "literature")
    for name in ("x2", "x4"):
        x = phi(n(name))
        rep.check(f"phi({name}) has zero diagonal", (0, 0), (c.element(x).a, c.element(x).b), "literature")
    for name in ("x3", "x5"):
        x = phi.inverse()(n(name))
        rep.check(f"phi^-1({name}) has zero diagonal", (0, 0), (c.element(x).a, c.element(x).b), "literature")
    return rep


def section_hasse() -> Report:
    lat = lattice.paige_lattice()
    rep = Report("Hasse constants and identities")
    for part in (hasse.verify_constants(lat), hasse.verify_counting_lemma(lat), hasse.verify_identities(lat)):
        rep.extend(part)
    return rep


def section_lattice() -> Report:
    rep = Report("lattice properties")
    lat = lattice.paige_lattice()
    rep.check("strong Lagrange", True, lattice.check_strong_lagrange(lat), "literature")
    rep.check("weak Cauchy", False, lattice.check_weak_cauchy(lat), "literature")
    rep.check("primes without a subloop", [5], lattice.weak_cauchy_failures(lat), "literature")
    rep.check("every proper subloop has weak Cauchy", True,
              all(lattice.has_weak_cauchy(lat, i) for i in range(len(lat) - 1)), "literature")
    orders = lattice.subloop_orders(lat)
    rep.check("proper subloop orders", sorted(lattice.PROPER_ORDERS), [o for o in orders if o < 120], "literature")
    rep.check("no subloop of order 5, 16 or 48", [], [o for o in orders if o in (5, 16, 48)], "literature")
    rep.check("E8 with a commuting outside involution", 0, lattice.e8_commuting_extensions(lat), "literature")
    down, up = lattice.neighbors(lat, lat.subs[lat.bottom])
    rep.check("atoms", {IsoType.C2: 63, IsoType.C3: 28},
              {t: sum(1 for s in up if lat.type_of(s) == t) for t in (IsoType.C2, IsoType.C3)}, "trivial")
    e8 = lat.representative("E8")
    _, e8_up = lattice.neighbors(lat, e8)
    rep.check("overloops covering E8", {IsoType.MA4}, {lat.type_of(s) for s in e8_up}, "literature")
    ma4 = lat.representative("MA4")
    below, _ = lattice.neighbors(lat, ma4)
    cover_types = {}
    for s in below:
        cover_types[lat.type_of(s)] = cover_types.get(lat.type_of(s), 0) + 1
    rep.check("A4 and E8 maximal in M(A4)", (1, 3), (cover_types.get(IsoType.A4), cover_types.get(IsoType.E8)),
              "literature")
    graph = lattice.figure2_data(lat)
    rep.check("orbit lattice nodes", 11, len(graph.nodes), "derived")
    e = graph.edge("E8", "C")
    rep.check("E8 -- C thick", False, bool(e and e.maximal), "literature")
    rep.check("node sizes E4+, E4-", (63, 252), (graph.node("E4+").size, graph.node("E4-").size), "literature")
    s3 = graph.edge("S3", "MS3")
    rep.check("edge S3 -- MS3", (3, 1), (s3.l_glb, s3.l_orb) if s3 else None, "literature")
    gens = lat.group.gens
    closed = all(autgroup.LoopPerm(g.image).apply(s).mask in lat.index for g in gens for s in lat.subs)
    rep.check("enumeration closed under automorphisms", True, closed, "derived")
    return rep


def section_chein() -> Report:
    rep = Report("Chein loops")
    for name in ("S3", "A4"):
        rep.extend(chein.verify_m2n_lemma(chein.catalog_group(name), name))
    c = build_paige2()
    n = c.named
    rep.extend(chein.relation_report(c.table, {"x": n("x0"), "y": n("x1"), "u": n("u0")},
                                     chein.MS3_RELATORS, IsoType.MS3, "(x0,x1,u0)"))
    rep.extend(chein.relation_report(c.table, {"x": n("x0"), "y": n("z0"), "u": n("u1")},
                                     chein.MA4_RELATORS, IsoType.MA4, "(x0,z0,u1)"))
    return rep


def section_example() -> Report:
    rep = Report("C2 x C4 example")
    demo = chein.subgroup_lattice_demo_c2xc4()
    rep.check("subgroups of C2 x C4", 8, len(demo.subgroups), "trivial")
    rep.check("A and A' isomorphic", True, demo.isomorphic, "literature")
    rep.check("l_iso[A:C4:C], l_iso[A':C4:C]", (2, 0), (demo.l_iso_a, demo.l_iso_a_prime), "literature")
    return rep


SECTIONS: dict[str, Callable[[], Report]] = {
    "loop": section_loop,
    "table1": section_table1,
    "census": section_census,
    "orbits": section_orbits,
    "aut": section_aut,
    "hasse": section_hasse,
    "lattice": section_lattice,
    "chein": section_chein,
    "example": section_example,
}


def run(sections: list[str] | None = None) -> list[Report]:
    names = list(SECTIONS) if sections is None else sections
    unknown = [s for s in names if s not in SECTIONS]
    if unknown:
        raise KeyError(f"unknown section(s) {', '.join(unknown)}; known: {', '.join(SECTIONS)}")
    return [SECTIONS[s]() for s in names]
