"""Finite loops given by Cayley tables: closure, identities, classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class CayleyTableError(ValueError):
    """Malformed Cayley table input; ``row``/``col`` locate the problem (0-based)."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if col is not None:
            where.append(f"column {col}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.row = row
        self.col = col


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """A finite loop on ``0..n-1``; ``table[x, y]`` is the index of ``xy``."""

    table: np.ndarray
    identity: int
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        t = np.array(self.table, dtype=np.int32, copy=True)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise CayleyTableError(f"table must be a non-empty square array, got shape {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            r, c = np.argwhere((t < 0) | (t >= n))[0]
            raise CayleyTableError(f"entry out of range 0..{n - 1}", int(r), int(c))
        full = np.arange(n)
        for r in range(n):
            if not np.array_equal(np.sort(t[r]), full):
                raise CayleyTableError("row not a permutation", row=r)
        for c in range(n):
            if not np.array_equal(np.sort(t[:, c]), full):
                raise CayleyTableError("column not a permutation", col=c)
        e = int(self.identity)
        if not 0 <= e < n:
            raise CayleyTableError(f"identity index {e} out of range")
        if not np.array_equal(t[e], full):
            raise CayleyTableError("identity row is not the identity map", row=e)
        if not np.array_equal(t[:, e], full):
            raise CayleyTableError("identity column is not the identity map", col=e)
        if self.labels is not None and len(self.labels) != n:
            raise CayleyTableError(f"{len(self.labels)} labels for {n} elements")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", e)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self.identity == other.identity and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.identity, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"CayleyTable(n={self.n}, identity={self.identity})"

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    @cached_property
    def inverses(self) -> np.ndarray:
        """Right inverses: ``x * inverses[x] == identity``."""
        inv = np.argmax(self.table == self.identity, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    def inverse(self, x: int) -> int:
        return int(self.inverses[x])

    @cached_property
    def orders(self) -> np.ndarray:
        """Order of each element via right powers x, x*x, (x*x)*x, ...; 0 if the identity never appears."""
        out = np.zeros(self.n, dtype=np.int32)
        for x in range(self.n):
            p = x
            for k in range(1, self.n + 1):
                if p == self.identity:
                    out[x] = k
                    break
                p = int(self.table[p, x])
        out.setflags(write=False)
        return out

    def order(self, x: int) -> int:
        return int(self.orders[x])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def subtable(self, sub: "SubloopSet | Iterable[int]") -> "CayleyTable":
        """The induced loop on a subloop, reindexed by increasing element index."""
        members = sub.elements if isinstance(sub, SubloopSet) else tuple(sorted(sub))
        pos = {x: i for i, x in enumerate(members)}
        idx = np.array(members)
        rows = self.table[np.ix_(idx, idx)]
        try:
            t = np.vectorize(pos.__getitem__, otypes=[np.int32])(rows)
        except KeyError:
            raise ValueError("subset is not closed under multiplication") from None
        labels = tuple(self.label(x) for x in members) if self.labels is not None else None
        return CayleyTable(t, pos[self.identity], labels)

    def relabel(self, perm: Sequence[int]) -> "CayleyTable":
        """The isomorphic table in which element x is renamed ``perm[x]``."""
        p = np.asarray(perm, dtype=np.int32)
        t = np.empty_like(self.table)
        t[np.ix_(p, p)] = p[self.table]
        labels = None
        if self.labels is not None:
            new = [""] * self.n
            for x, px in enumerate(p):
                new[px] = self.labels[x]
            labels = tuple(new)
        return CayleyTable(t, int(p[self.identity]), labels)


@dataclass(frozen=True)
class SubloopSet:
    """A subset of an ambient loop's elements stored as a bitset."""

    mask: int

    @cached_property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.size

    @cached_property
    def elements(self) -> tuple[int, ...]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, (int, np.integer)) and x >= 0 and bool((self.mask >> int(x)) & 1)

    def __le__(self, other: "SubloopSet") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "SubloopSet") -> bool:
        return self.mask != other.mask and self <= other

    def __and__(self, other: "SubloopSet") -> "SubloopSet":
        return SubloopSet(self.mask & other.mask)

    @property
    def sort_key(self) -> tuple[int, ...]:
        """Canonical order: lexicographic on the sorted element tuple."""
        return self.elements

    @classmethod
    def of(cls, elements: Iterable[int]) -> "SubloopSet":
        m = 0
        for x in elements:
            m |= 1 << int(x)
        return cls(m)

    def __repr__(self) -> str:
        return f"SubloopSet({list(self.elements)})"


def closure(loop: CayleyTable, seeds: Iterable[int] = (), base: SubloopSet | None = None) -> SubloopSet:
    """The subloop generated by ``seeds`` (and an already closed ``base``)."""
    seeds = [int(s) for s in seeds]
    for s in seeds:
        if not 0 <= s < loop.n:
            raise IndexError(f"element {s} out of range for a loop of order {loop.n}")
    start = base.mask if base is not None else 0
    mask = kernels.closure(loop.table, [loop.identity, *seeds], start)
    sub = SubloopSet(mask)
    # finite product-closed subsets of a loop are inverse-closed; assert anyway
    inv = loop.inverses
    assert all((mask >> int(inv[x])) & 1 for x in sub.elements), "closure not inverse-closed"
    return sub


def is_subloop(loop: CayleyTable, sub: SubloopSet) -> bool:
    if loop.identity not in sub:
        return False
    idx = np.array(sub.elements)
    prods = loop.table[np.ix_(idx, idx)]
    return bool(np.isin(prods, idx).all())


def is_moufang(loop: CayleyTable) -> bool:
    """True iff ((xy)x)z = x(y(xz)) for all triples."""
    return kernels.moufang_violation(loop.table) is None


def is_associative(loop: CayleyTable) -> bool:
    return kernels.associative_violation(loop.table) is None


def is_commutative(loop: CayleyTable) -> bool:
    return bool(np.array_equal(loop.table, loop.table.T))


def is_diassociative(loop: CayleyTable) -> bool:
    """True iff every subloop generated by two elements is associative."""
    checked: set[int] = set()
    for x in range(loop.n):
        for y in range(x + 1, loop.n):
            sub = closure(loop, (x, y))
            if sub.mask in checked:
                continue
            checked.add(sub.mask)
            if not is_associative(loop.subtable(sub)):
                return False
    return True


def order_profile(loop: CayleyTable, sub: SubloopSet | None = None) -> dict[int, int]:
    """Map element order -> number of elements of that order (in ``sub`` if given)."""
    orders = loop.orders if sub is None else loop.orders[list(sub.elements)]
    vals, counts = np.unique(orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def all_subloops(loop: CayleyTable, workers: int = 1) -> list[SubloopSet]:
    """Every subloop, by saturation from the trivial subloop.

    Each round extends every newly found subloop H by each element outside
    it.  Every subloop K other than {e} covers a maximal subloop H, and then
    K = <H, g> for any g in K \\ H, so the fixpoint is the whole lattice.
    Result is sorted by (size, element tuple).
    """
    table = loop.table
    bottom = 1 << loop.identity
    known = {bottom}
    frontier = [bottom]
    pool = None
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        pool = ThreadPoolExecutor(max_workers=workers)
    try:
        while frontier:
            if pool is not None:
                batches = pool.map(lambda h: kernels.extensions(table, h), frontier)
            else:
                batches = (kernels.extensions(table, h) for h in frontier)
            fresh = set()
            for batch in batches:
                fresh.update(k for k in batch if k not in known)
            known |= fresh
            frontier = sorted(fresh)
    finally:
        if pool is not None:
            pool.shutdown()
    subs = [SubloopSet(m) for m in known]
    subs.sort(key=lambda s: (s.size, s.elements))
    return subs


# --- isomorphism types -------------------------------------------------------


class IsoType(str, enum.Enum):
    """Isomorphism types that occur in this package's catalog."""

    TRIVIAL = "1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    E4 = "E4"
    C6 = "C6"
    S3 = "S3"
    E8 = "E8"
    C2xC4 = "C2xC4"
    A4 = "A4"
    MS3 = "MS3"
    MA4 = "MA4"
    AMBIENT = "C"

    def __str__(self) -> str:
        return self.value

    __repr__ = __str__


@dataclass(frozen=True)
class OtherType:
    """A loop outside the catalog, described by its order and order profile."""

    order: int
    profile: tuple[tuple[int, int], ...]

    @property
    def value(self) -> str:
        return f"Other({self.order})"

    def __str__(self) -> str:
        return self.value


Fingerprint = tuple[int, tuple[tuple[int, int], ...], bool, bool]


def fingerprint(loop: CayleyTable, sub: SubloopSet | None = None) -> Fingerprint:
    """(order, order profile, associative?, commutative?)."""
    t = loop if sub is None else loop.subtable(sub)
    return (t.n, tuple(sorted(order_profile(t).items())), is_associative(t), is_commutative(t))


def classify(loop: CayleyTable, sub: SubloopSet | None = None, confirm: bool = False) -> IsoType | OtherType:
    """Isomorphism type of ``sub`` (or of ``loop`` itself).

    The fingerprint decides among catalog types.  With ``confirm``, or when
    several catalog types share a fingerprint, an explicit isomorphism to the
    catalog table is searched for.
    """
    from .chein import reference_tables

    t = loop if sub is None else loop.subtable(sub)
    fp = fingerprint(t)
    refs = reference_tables()
    candidates = [name for name, ref in refs.items() if ref.fingerprint == fp]
    if len(candidates) == 1 and not confirm:
        return candidates[0]
    for name in candidates:
        if are_isomorphic(t, refs[name].table) is not None:
            return name
    return OtherType(fp[0], fp[1])


def _generating_sequence(loop: CayleyTable) -> list[int]:
    """Greedy generating set; prefers elements of large order, then small index."""
    gens: list[int] = []
    current = SubloopSet(1 << loop.identity)
    candidates = sorted(range(loop.n), key=lambda x: (-loop.order(x), x))
    while current.size < loop.n:
        best = None
        for x in candidates:
            if x in current:
                continue
            ext = closure(loop, (x,), current)
            if best is None or ext.size > best[1].size:
                best = (x, ext)
            if ext.size == loop.n:
                break
        gens.append(best[0])
        current = best[1]
    return gens


def straight_line_program(loop: CayleyTable, gens: Sequence[int]):
    """Steps rebuilding ``<gens>`` from the generators by multiplication.

    Returns ``(levels, domains)``: ``levels[i]`` is an (m, 3) int32 array of
    ``(k, l, r)`` with ``k = l * r`` reaching ``<gens[:i+1]>`` from
    ``<gens[:i]>`` once ``gens[i]`` is mapped; ``domains[i]`` lists the
    elements of ``<gens[:i+1]>``.
    """
    t = loop.table
    members = [loop.identity]
    inside = {loop.identity}
    levels, domains = [], []
    for g in gens:
        steps = []
        start = len(members)
        if g not in inside:
            inside.add(g)
            members.append(g)
        i = start
        while i < len(members):
            x = members[i]
            for j in range(i + 1):
                y = members[j]
                for a, b in ((x, y), (y, x)):
                    p = int(t[a, b])
                    if p not in inside:
                        inside.add(p)
                        members.append(p)
                        steps.append((p, a, b))
            i += 1
        levels.append(np.array(steps, dtype=np.int32).reshape(-1, 3))
        domains.append(np.array(members, dtype=np.int32))
    return levels, domains


def are_isomorphic(a: CayleyTable, b: CayleyTable) -> np.ndarray | None:
    """A bijection ``f`` with ``f[a.mul(x, y)] == b.mul(f[x], f[y])``, or None.

    Backtracks over generator images, restricted to elements of equal order,
    checking the partial map on each intermediate subloop.
    """
    if a.n != b.n or order_profile(a) != order_profile(b):
        return None
    if is_commutative(a) != is_commutative(b) or is_associative(a) != is_associative(b):
        return None
    gens = _generating_sequence(a)
    levels, domains = straight_line_program(a, gens)
    by_order: dict[int, list[int]] = {}
    for y in range(b.n):
        by_order.setdefault(b.order(y), []).append(y)

    image = np.full(a.n, -1, dtype=np.int32)
    image[a.identity] = b.identity

    def search(level: int, img: np.ndarray) -> np.ndarray | None:
        if level == len(gens):
            return img
        g = gens[level]
        used = set(int(v) for v in img[domains[level - 1]]) if level else {b.identity}
        for cand in by_order.get(a.order(g), []):
            if cand in used:
                continue
            trial = img.copy()
            trial[g] = cand
            if kernels.extend_hom(a.table, b.table, levels[level], domains[level], trial):
                found = search(level + 1, trial)
                if found is not None:
                    return found
        return None

    return search(0, image)


# --- text format -------------------------------------------------------------


def emit_cayley(loop: CayleyTable) -> str:
    """``n id`` header, then one line of n space-separated indices per row."""
    lines = [f"{loop.n} {loop.identity}"]
    lines.extend(" ".join(str(v) for v in row) for row in loop.table.tolist())
    return "\n".join(lines) + "\n"


def parse_cayley(text: str) -> CayleyTable:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise CayleyTableError("empty input")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise CayleyTableError("malformed header, expected 'n id'")
    n, e = int(header[0]), int(header[1])
    if n == 0:
        raise CayleyTableError("malformed header, n must be positive")
    if len(lines) - 1 != n:
        raise CayleyTableError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for r, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != n:
            raise CayleyTableError(f"expected {n} entries, found {len(parts)}", row=r)
        try:
            rows.append([int(v) for v in parts])
        except ValueError:
            raise CayleyTableError("non-integer entry", row=r) from None
    return CayleyTable(np.array(rows, dtype=np.int32), e)


def is_elementary_abelian(loop: CayleyTable, sub: SubloopSet | None = None) -> bool:
    """True iff the (sub)loop is an elementary abelian 2-group (trivial included)."""
    t = loop if sub is None else loop.subtable(sub)
    if t.n & (t.n - 1):
        return False
    if any(t.order(x) > 2 for x in range(t.n)):
        return False
    return is_commutative(t) and is_associative(t)


def census(loop: CayleyTable, subs: Iterable[SubloopSet] | None = None) -> dict:
    """Number of subloops of each isomorphism type."""
    from collections import Counter

    if subs is None:
        subs = all_subloops(loop)
    return dict(Counter(classify(loop, s) for s in subs))
