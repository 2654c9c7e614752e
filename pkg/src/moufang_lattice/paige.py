"""The Paige loop M*(2): norm-1 Zorn vector matrices over F2."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import zorn
from .loopcore import CayleyTable, SubloopSet, closure
from .zorn import VMatrix, dot, inv, tri

# element catalog used throughout; values are in inv/tri shorthand
NAMED_ELEMENTS: dict[str, str] = {
    "x0": "inv(111,111)",
    "x1": "inv(110,100)",
    "x2": "inv(010,000)",
    "x3": "inv(011,100)",
    "x4": "inv(111,000)",
    "x5": "inv(111,101)",
    "y0": "tri(011,110,1)",
    "z0": "tri(110,100,0)",
    "u0": "inv(000,110)",
    "u1": "inv(001,001)",
    "u2": "inv(100,010)",
    "u3": "inv(001,111)",
    "u4": "inv(110,110)",
    "u5": "inv(011,101)",
    "v0": "tri(010,110,0)",
    "v1": "tri(001,101,0)",
}

# orbit representatives as generator names, keyed by orbit label
NAMED_SUBLOOPS: dict[str, tuple[str, ...]] = {
    "C2": ("x0",),
    "C3": ("y0",),
    "E4+": ("x0", "u1"),
    "E4-": ("x0", "u2"),
    "S3": ("x0", "y0"),
    "E8": ("x0", "u1", "u2"),
    "A4": ("x0", "z0"),
    "MS3": ("x0", "y0", "u0"),
    "MA4": ("x0", "z0", "u1"),
}


@dataclass(frozen=True, eq=False)
class PaigeLoop:
    table: CayleyTable
    elements: tuple[VMatrix, ...]
    index: dict[VMatrix, int]

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def identity(self) -> int:
        return self.table.identity

    def element(self, i: int) -> VMatrix:
        return self.elements[i]

    def index_of(self, x: VMatrix | str) -> int:
        if isinstance(x, str):
            x = zorn.parse_element(x)
        try:
            return self.index[x]
        except KeyError:
            raise ValueError(f"{zorn.format_element(x)} is not a norm-1 element") from None

    def named(self, name: str) -> int:
        """Index of a named element (``x0``, ``y0``, ``u2``, ...)."""
        try:
            return self.index_of(NAMED_ELEMENTS[name])
        except KeyError:
            raise KeyError(f"unknown element name {name!r}; known: {', '.join(NAMED_ELEMENTS)}") from None

    def resolve(self, token: str) -> int:
        """An element given by name, index, or element notation."""
        token = token.strip()
        if token in NAMED_ELEMENTS:
            return self.named(token)
        if token.isdigit():
            i = int(token)
            if not 0 <= i < self.n:
                raise ValueError(f"element index {i} out of range")
            return i
        return self.index_of(token)

    def mul(self, x: int, y: int) -> int:
        return self.table.mul(x, y)

    def span(self, *tokens: str) -> SubloopSet:
        """Subloop generated by elements given as in :meth:`resolve`."""
        return closure(self.table, [self.resolve(t) for t in tokens])

    def named_subloop(self, label: str) -> SubloopSet:
        try:
            gens = NAMED_SUBLOOPS[label]
        except KeyError:
            raise KeyError(f"no named subloop {label!r}; known: {', '.join(NAMED_SUBLOOPS)}") from None
        return self.span(*gens)

    def order(self, x: int) -> int:
        return self.table.order(x)

    def involutions(self) -> list[int]:
        return [i for i in range(self.n) if self.order(i) == 2]

    def conjugate(self, x: int, y: int) -> int:
        """x^-1 y x, bracketed as (x^-1 y) x."""
        return self.mul(self.mul(self.table.inverse(x), y), x)

    def label(self, i: int) -> str:
        return self.table.label(i)


@lru_cache(maxsize=None)
def build_paige2() -> PaigeLoop:
    """All 120 unit-determinant vector matrices, numbered in 8-bit code order."""
    elements = tuple(zorn.unit_elements())
    index = {x: i for i, x in enumerate(elements)}
    t = np.array([[index[zorn.vm_mul(x, y)] for y in elements] for x in elements], dtype=np.int32)
    labels = tuple(zorn.format_element(x, short=True) if x != zorn.IDENTITY else "e" for x in elements)
    return PaigeLoop(CayleyTable(t, index[zorn.IDENTITY], labels), elements, index)


def named(name: str) -> int:
    return build_paige2().named(name)


# --- table1 --------------------------------------------------------------------------

TABLE1_COLUMNS = ("x0x", "x1x", "y0x", "vx", "u1x", "u2x")


@dataclass(frozen=True)
class Table1Cell:
    """Orders for the involution inv(alpha, beta); None marks a blank entry.

    ``values`` = (o(x0 x), o(x1 x), o(y0 x), o(v x), o(u1 x), o(u2 x)) with
    v = z0^-1 x0 z0.  The first three form the top line of a printed cell,
    the last three the bottom line.
    """

    alpha: str
    beta: str
    values: tuple[Optional[int], ...]

    @property
    def blank(self) -> bool:
        return all(v is None for v in self.values)


def table1(loop: PaigeLoop | None = None) -> list[Table1Cell]:
    """All 64 (alpha, beta) cells in row-major binary order.

    Blank rules: nothing for e and x0; o(x1 x), o(u1 x), o(u2 x) only when
    o(x0 x) = 2; o(y0 x) only when o(x1 x) = 2; o(v x) always.
    """
    c = loop or build_paige2()
    x0, x1, y0, z0, u1, u2 = (c.named(k) for k in ("x0", "x1", "y0", "z0", "u1", "u2"))
    v = c.conjugate(z0, x0)
    cells = []
    for alpha in zorn.ALL_VECTORS:
        for beta in zorn.ALL_VECTORS:
            a, b = str(alpha), str(beta)
            if alpha == zorn.ZERO3 and beta == zorn.ZERO3:
                cells.append(Table1Cell(a, b, (None,) * 6))
                continue
            x = c.index_of(inv(alpha, beta))
            if x == x0:
                cells.append(Table1Cell(a, b, (None,) * 6))
                continue
            o = lambda g: c.order(c.mul(g, x))  # noqa: E731
            ox0 = o(x0)
            ox1 = o(x1) if ox0 == 2 else None
            oy0 = o(y0) if ox1 == 2 else None
            ou1 = o(u1) if ox0 == 2 else None
            ou2 = o(u2) if ox0 == 2 else None
            cells.append(Table1Cell(a, b, (ox0, ox1, oy0, o(v), ou1, ou2)))
    return cells


def table1_csv(cells: list[Table1Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("alpha", "beta", *TABLE1_COLUMNS))
    for cell in cells:
        w.writerow((cell.alpha, cell.beta, *("" if v is None else v for v in cell.values)))
    return buf.getvalue()


def parse_table1_csv(text: str) -> list[Table1Cell]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != ("alpha", "beta", *TABLE1_COLUMNS):
        raise ValueError("unexpected table1 CSV header")
    return [
        Table1Cell(r[0], r[1], tuple(int(v) if v else None for v in r[2:]))
        for r in rows[1:]
    ]


def table1_grid(cells: list[Table1Cell]) -> str:
    """Rows indexed by alpha, columns by beta; each cell spans two text lines."""
    fmt = lambda vals: " ".join("." if v is None else str(v) for v in vals)  # noqa: E731
    by_pos = {(c.alpha, c.beta): c for c in cells}
    vecs = [str(v) for v in zorn.ALL_VECTORS]
    width = 5
    head = "a\\b  | " + " | ".join(v.center(width) for v in vecs)
    lines = [head, "-" * len(head)]
    for a in vecs:
        top = [fmt(by_pos[(a, b)].values[:3]) for b in vecs]
        bottom = [fmt(by_pos[(a, b)].values[3:]) for b in vecs]
        lines.append(f"{a}  | " + " | ".join(s.ljust(width) for s in top))
        lines.append("     | " + " | ".join(s.ljust(width) for s in bottom))
        lines.append("-" * len(head))
    return "\n".join(lines) + "\n"


# --- criteria on involutions -------------------------------------------------------


def _involution(c: PaigeLoop, x: int) -> VMatrix:
    if c.order(x) != 2:
        raise ValueError(f"{c.label(x)} is not an involution")
    return c.element(x)


def involution_pair_type(x: int, y: int, loop: PaigeLoop | None = None) -> str:
    """'E4' or 'S3' for two distinct involutions, by the dot-product test alpha.delta = beta.gamma."""
    c = loop or build_paige2()
    if x == y:
        raise ValueError("involutions must be distinct")
    p, q = _involution(c, x), _involution(c, y)
    return "E4" if dot(p.alpha, q.beta) == dot(p.beta, q.alpha) else "S3"


def mixed_order_criterion(z: int, x: int, loop: PaigeLoop | None = None) -> bool:
    """For z of order 3 and an involution x: whether o(zx) = 2, decided by
    alpha.phi + beta.epsilon = n, with z = tri(epsilon, phi, t) and x with diagonal n."""
    c = loop or build_paige2()
    if c.order(z) != 3:
        raise ValueError(f"{c.label(z)} does not have order 3")
    p, q = _involution(c, x), c.element(z)
    return (dot(p.alpha, q.beta) + dot(p.beta, q.alpha)) % 2 == p.a


__all__ = [
    "NAMED_ELEMENTS",
    "NAMED_SUBLOOPS",
    "PaigeLoop",
    "Table1Cell",
    "build_paige2",
    "involution_pair_type",
    "mixed_order_criterion",
    "named",
    "table1",
    "table1_csv",
    "table1_grid",
    "parse_table1_csv",
    "tri",
]
