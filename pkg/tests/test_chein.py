import pytest

from moufang_lattice.chein import (
    CATALOG_NAMES,
    MA4_RELATORS,
    MS3_RELATORS,
    build_catalog_group,
    catalog_group,
    check_relations,
    chein_double,
    evaluate_word,
    relation_report,
    subgroup_lattice_demo_c2xc4,
    verify_m2n_lemma,
)
from moufang_lattice.loopcore import IsoType, classify, is_associative, is_moufang


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_files_match_constructions(name):
    assert catalog_group(name) == build_catalog_group(name)
    assert classify(catalog_group(name), confirm=True) == IsoType(name)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_double_is_moufang(name):
    g = catalog_group(name)
    m = chein_double(g)
    assert m.n == 2 * g.n
    assert is_moufang(m)
    assert is_associative(m) == (name not in ("S3", "A4"))


def test_double_rejects_non_groups(five_loop):
    with pytest.raises(ValueError):
        chein_double(five_loop)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_structure_lemma(name):
    report = verify_m2n_lemma(catalog_group(name), name)
    assert report.ok, report.format()


def _value(report, check_id):
    return next(c.computed for c in report.checks if c.id == check_id)


def test_elementary_abelian_counts_in_doubles():
    assert _value(verify_m2n_lemma(catalog_group("S3"), "S3"), "l[E4:M]") == 9
    assert _value(verify_m2n_lemma(catalog_group("A4"), "A4"), "l[E4:M]") == 19


def test_words(C):
    gens = {"x": C.named("x0"), "y": C.named("y0")}
    e = C.identity
    assert evaluate_word(C.table, gens, "e") == e
    assert evaluate_word(C.table, gens, "y^3") == e
    assert evaluate_word(C.table, gens, "y^-1") == C.table.inverse(C.named("y0"))
    assert evaluate_word(C.table, gens, "(xy)^2") == C.mul(C.mul(gens["x"], gens["y"]), C.mul(gens["x"], gens["y"]))
    with pytest.raises((KeyError, ValueError)):
        evaluate_word(C.table, gens, "q")
    with pytest.raises(ValueError):
        evaluate_word(C.table, gens, "(xy")


def test_presentations_hold(C):
    n = C.named
    ms3 = {"x": n("x0"), "y": n("x1"), "u": n("u0")}
    ma4 = {"x": n("x0"), "y": n("z0"), "u": n("u1")}
    assert check_relations(C.table, ms3, MS3_RELATORS)
    assert check_relations(C.table, ma4, MA4_RELATORS)
    assert relation_report(C.table, ms3, MS3_RELATORS, IsoType.MS3).ok
    assert relation_report(C.table, ma4, MA4_RELATORS, IsoType.MA4).ok
    # swapping the order-3 generator for an involution breaks y^3
    assert not check_relations(C.table, {**ma4, "y": n("x1")}, MA4_RELATORS)


def test_c2xc4_example():
    demo = subgroup_lattice_demo_c2xc4()
    assert len(demo.subgroups) == 8
    assert demo.isomorphic
    assert (demo.l_iso_a, demo.l_iso_a_prime) == (2, 0)
