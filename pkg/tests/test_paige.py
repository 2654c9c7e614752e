import itertools

import pytest

from moufang_lattice import zorn
from moufang_lattice.paige import (
    NAMED_ELEMENTS,
    NAMED_SUBLOOPS,
    involution_pair_type,
    mixed_order_criterion,
    parse_table1_csv,
    table1,
    table1_csv,
    table1_grid,
)
from moufang_lattice.verify import golden_table1


def test_elements_in_code_order(C):
    codes = [x.code for x in C.elements]
    assert codes == sorted(codes)
    assert C.n == 120
    assert C.element(C.identity) == zorn.IDENTITY


def test_table_matches_zorn_product(C):
    for x, y in itertools.product(range(0, 120, 7), range(120)):
        assert C.element(C.mul(x, y)) == C.element(x) * C.element(y)


def test_named_elements(C):
    assert C.mul(C.named("x0"), C.named("x1")) == C.named("y0")
    for name, text in NAMED_ELEMENTS.items():
        assert C.label(C.named(name)) == text
    with pytest.raises(KeyError):
        C.named("w9")


def test_resolve(C):
    assert C.resolve("x0") == C.resolve("inv(111,111)") == C.resolve(str(C.named("x0")))
    with pytest.raises(ValueError):
        C.resolve("500")
    with pytest.raises(ValueError):
        C.resolve("[1|000|000|0]")


def test_named_subloop_orders(C):
    orders = {lab: C.named_subloop(lab).size for lab in NAMED_SUBLOOPS}
    assert orders == {"C2": 2, "C3": 3, "E4+": 4, "E4-": 4, "S3": 6, "E8": 8, "A4": 12, "MS3": 12, "MA4": 24}


def test_table1_matches_golden():
    computed = table1()
    golden = parse_table1_csv(golden_table1())
    assert len(computed) == 64
    assert computed == golden


def test_table1_blank_rules():
    for cell in table1():
        ox0, ox1, oy0, ov, ou1, ou2 = cell.values
        if (cell.alpha, cell.beta) in (("000", "000"), ("111", "111")):
            assert cell.blank
            continue
        assert ox0 in (2, 3) and ov in (1, 2, 3)
        assert (ox1 is None) == (ox0 != 2) == (ou1 is None) == (ou2 is None)
        assert (oy0 is None) == (ox1 != 2)


def test_table1_csv_round_trip():
    cells = table1()
    assert parse_table1_csv(table1_csv(cells)) == cells
    with pytest.raises(ValueError):
        parse_table1_csv("a,b\n")


def test_table1_grid_layout():
    grid = table1_grid(table1()).splitlines()
    assert grid[0].split("|")[1].strip() == "000"
    assert len(grid) == 2 + 8 * 3


def test_involution_pair_type_matches_table(C):
    t = C.table
    invs = C.involutions()
    for x, y in itertools.combinations(invs[::3], 2):
        expected = "E4" if t.order(t.mul(x, y)) == 2 else "S3"
        assert involution_pair_type(x, y, C) == expected


def test_involution_pair_type_errors(C):
    with pytest.raises(ValueError):
        involution_pair_type(C.named("x0"), C.named("x0"))
    with pytest.raises(ValueError):
        involution_pair_type(C.named("x0"), C.named("y0"))


def test_mixed_order_criterion_exhaustive(C):
    t = C.table
    threes = [z for z in range(120) if t.order(z) == 3]
    for z in threes:
        for x in C.involutions():
            assert mixed_order_criterion(z, x, C) == (t.order(t.mul(z, x)) == 2)


def test_mixed_order_criterion_errors(C):
    with pytest.raises(ValueError):
        mixed_order_criterion(C.named("x0"), C.named("x1"))
    with pytest.raises(ValueError):
        mixed_order_criterion(C.named("y0"), C.named("z0"))
