"""Small-group catalog, the doubling M(G,2), and relator checks."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .loopcore import (
    CayleyTable,
    Fingerprint,
    IsoType,
    SubloopSet,
    all_subloops,
    are_isomorphic,
    classify,
    closure,
    fingerprint,
    is_associative,
    is_elementary_abelian,
    is_moufang,
    parse_cayley,
)
from .report import Report

CATALOG_NAMES = ("C2", "C3", "C4", "E4", "C2xC4", "S3", "E8", "A4")

MS3_RELATORS = ("x^2", "y^2", "(xy)^3", "u^2", "(xu)^2", "(yu)^2", "((xy)u)^2")
MA4_RELATORS = ("x^2", "y^3", "(xy)^3", "u^2", "(xu)^2", "(yu)^2", "((xy)u)^2")


# --- constructions -------------------------------------------------------------


def cyclic_group(n: int) -> CayleyTable:
    idx = np.arange(n)
    return CayleyTable((idx[:, None] + idx[None, :]) % n, 0)


def direct_product(g: CayleyTable, h: CayleyTable) -> CayleyTable:
    """Pairs (a, b) indexed ``a * |h| + b``, multiplied componentwise."""
    m = h.n
    t = (g.table[:, None, :, None] * m + h.table[None, :, None, :]).reshape(g.n * m, g.n * m)
    return CayleyTable(t, g.identity * m + h.identity)


def permutation_group(generators: Sequence[Sequence[int]]) -> CayleyTable:
    """Group generated by permutations; x*y applies y first, elements sorted."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    order = sorted(elems)
    pos = {p: i for i, p in enumerate(order)}
    t = [[pos[tuple(p[q[i]] for i in range(degree))] for q in order] for p in order]
    return CayleyTable(np.array(t), pos[ident])


def build_catalog_group(name: str) -> CayleyTable:
    """Construct a catalog group from scratch (used to produce and audit the fixtures)."""
    if name in ("C2", "C3", "C4"):
        return cyclic_group(int(name[1]))
    if name == "E4":
        return direct_product(cyclic_group(2), cyclic_group(2))
    if name == "E8":
        return direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2))
    if name == "C2xC4":
        return direct_product(cyclic_group(2), cyclic_group(4))
    if name == "S3":
        return permutation_group([(1, 0, 2), (1, 2, 0)])
    if name == "A4":
        return permutation_group([(1, 2, 0, 3), (1, 0, 3, 2)])
    raise KeyError(f"unknown catalog group {name!r}")


@lru_cache(maxsize=None)
def catalog_group(name: str) -> CayleyTable:
    """Catalog group loaded from its shipped Cayley-table fixture."""
    if name not in CATALOG_NAMES:
        raise KeyError(f"unknown catalog group {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    text = resources.files("moufang_lattice").joinpath("data", f"{name}.txt").read_text()
    return parse_cayley(text)


def chein_double(g: CayleyTable) -> CayleyTable:
    """M(G,2) on G x C2: (g,i)(h,j) = ((g^s h^t)^s, i+j), s = (-1)^j, t = (-1)^(i+j).

    (g, 0) has index g and (g, 1) has index |G| + g.
    """
    if not is_associative(g):
        raise ValueError("chein_double needs a group, input is not associative")
    n = g.n
    inv = g.inverses
    t = g.table
    out = np.empty((2 * n, 2 * n), dtype=np.int32)
    for i, j in product((0, 1), repeat=2):
        left = np.arange(n) if j == 0 else inv
        right = np.arange(n) if (i + j) % 2 == 0 else inv
        prod = t[np.ix_(left, right)]
        if j:
            prod = inv[prod]
        k = (i + j) % 2
        out[i * n:(i + 1) * n, j * n:(j + 1) * n] = prod + k * n
    return CayleyTable(out, g.identity)


# --- reference tables for classification ---------------------------------------


@dataclass(frozen=True)
class Reference:
    table: CayleyTable
    fingerprint: Fingerprint


@lru_cache(maxsize=None)
def reference_tables() -> dict[IsoType, Reference]:
    """One table per catalog isomorphism type, with its fingerprint."""
    from .paige import build_paige2

    tables = {IsoType.TRIVIAL: cyclic_group(1), IsoType.C6: cyclic_group(6)}
    for name in CATALOG_NAMES:
        tables[IsoType(name)] = catalog_group(name)
    tables[IsoType.MS3] = chein_double(catalog_group("S3"))
    tables[IsoType.MA4] = chein_double(catalog_group("A4"))
    tables[IsoType.AMBIENT] = build_paige2().table
    return {k: Reference(t, fingerprint(t)) for k, t in tables.items()}


def reference_table(kind: IsoType) -> CayleyTable:
    return reference_tables()[kind].table


# --- counting helpers ------------------------------------------------------------


def count_cyclic(loop: CayleyTable, m: int) -> int:
    """Number of cyclic subloops of order m (one per distinct <x>, ord x = m)."""
    return len({closure(loop, (x,)).mask for x in range(loop.n) if loop.order(x) == m})


def count_elementary_abelian(loop: CayleyTable, k: int, subs: Sequence[SubloopSet] | None = None) -> int:
    """Number of subloops isomorphic to E_{2^k}."""
    if subs is None:
        subs = all_subloops(loop)
    return sum(1 for s in subs if s.size == 2**k and is_elementary_abelian(loop, s))


def count_isomorphic(loop: CayleyTable, pattern: CayleyTable, subs: Sequence[SubloopSet] | None = None) -> int:
    """Number of subloops isomorphic to ``pattern`` (explicit isomorphism search)."""
    if subs is None:
        subs = all_subloops(loop)
    return sum(
        1 for s in subs if s.size == pattern.n and are_isomorphic(loop.subtable(s), pattern) is not None
    )


# --- structural lemma for M(G,2) -------------------------------------------------


def verify_m2n_lemma(g: CayleyTable, name: str = "G") -> Report:
    """Check the structure of M = M(G,2) = G u Gu exhaustively."""
    n = g.n
    m = chein_double(g)
    rep = Report(f"M({name},2) structure")
    subs_g = all_subloops(g)
    subs_m = all_subloops(m)
    in_g = (1 << n) - 1
    coset = ((1 << (2 * n)) - 1) ^ in_g

    rep.check("moufang", True, is_moufang(m), "literature", "M(G,2) is a Moufang loop")
    rep.check(
        "nonassociative iff G nonabelian",
        not bool(np.array_equal(g.table, g.table.T)),
        not is_associative(m),
        "literature",
        "M(G,2) is nonassociative if and only if G is nonabelian",
    )
    rep.check("Gu all involutions", True, all(m.order(x) == 2 for x in range(n, 2 * n)), "literature",
              "every element of Gu has order 2")
    t = m.table
    gg, gu = np.arange(n), np.arange(n, 2 * n)
    rep.check("G.G = G", True, bool((t[np.ix_(gg, gg)] < n).all()), "literature", "G.G = G")
    rep.check("Gu.Gu = G", True, bool((t[np.ix_(gu, gu)] < n).all()), "literature", "Gu.Gu = G")
    rep.check("G.Gu = Gu", True, bool((t[np.ix_(gg, gu)] >= n).all()), "literature", "G.Gu = Gu")
    rep.check("Gu.G = Gu", True, bool((t[np.ix_(gu, gg)] >= n).all()), "literature", "Gu.G = Gu")
    balanced = all(
        (s.mask & in_g).bit_count() == (s.mask & coset).bit_count()
        for s in subs_m
        if s.mask & coset
    )
    rep.check("|H^G| = |H^Gu| for H not in G", True, balanced, "literature",
              "subloops not inside G meet both cosets equally")

    # (i) cyclic subloops
    orders = sorted((set(int(o) for o in m.orders) | set(int(o) for o in g.orders)) - {0, 1})
    for k in orders:
        expected = count_cyclic(g, k) + (n if k == 2 else 0)
        rep.check(f"l[C{k}:M]", expected, count_cyclic(m, k), "literature",
                  "cyclic counts: same as in G, plus |G| for order 2")

    # (ii) <H, gu> is elementary abelian of twice the order
    ok = True
    for h in subs_g:
        if not is_elementary_abelian(g, h):
            continue
        for x in range(n, 2 * n):
            ext = closure(m, (x,), h)
            if ext.size != 2 * h.size or not is_elementary_abelian(m, ext):
                ok = False
    rep.check("<H,gu> elementary abelian", True, ok, "literature",
              "H elementary abelian in G gives <H, gu> elementary abelian of order 2|H|")

    # (iii) elementary abelian counts
    k = 1
    while 2 ** (k - 1) <= n:
        if n % 2 ** (k - 1):
            expected = 0
        else:
            expected = count_elementary_abelian(g, k, subs_g) + count_elementary_abelian(g, k - 1, subs_g) * n // 2 ** (k - 1)
        rep.check(f"l[E{2**k}:M]", expected, count_elementary_abelian(m, k, subs_m), "literature",
                  "elementary abelian counts in M(G,2)")
        k += 1

    # (iv) <g, hu> = S3 for g of order 3
    s3_ok = all(
        classify(m, closure(m, (x, y))) == IsoType.S3
        for x in range(n)
        if m.order(x) == 3
        for y in range(n, 2 * n)
    )
    rep.check("<g,hu> = S3 for ord g = 3", True, s3_ok, "literature", "an order-3 g and any hu generate S3")

    # (v) uniqueness of G inside M
    s3 = catalog_group("S3")
    if count_cyclic(g, 3) and count_isomorphic(g, s3, subs_g) == 0:
        rep.check("l[G:M]", 1, count_isomorphic(m, g, subs_m), "literature",
                  "with C3 but no S3 in G, G is the only copy of itself in M")
    return rep


# --- relator words -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z]\d*)|(\()|(\))|\^(-?\d+))")


def _tokenize(word: str) -> list[tuple[str, str]]:
    tokens, pos = [], 0
    word = word.rstrip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m:
            raise ValueError(f"cannot parse relator {word!r} at position {pos}")
        if m.group(1):
            tokens.append(("sym", m.group(1)))
        elif m.group(2):
            tokens.append(("(", "("))
        elif m.group(3):
            tokens.append((")", ")"))
        else:
            tokens.append(("pow", m.group(4)))
        pos = m.end()
    return tokens


def evaluate_word(loop: CayleyTable, gens: Mapping[str, int], word: str) -> int:
    """Evaluate a word over generator symbols; juxtaposition brackets to the left.

    ``x^k`` is ``((x x) x)...`` and ``x^-k`` the inverse of ``x^k``; ``e`` is
    the identity unless bound in ``gens``.
    """
    tokens = _tokenize(word)
    pos = 0

    def power(x: int, k: int) -> int:
        p = loop.identity
        for _ in range(abs(k)):
            p = loop.mul(p, x)
        return loop.inverse(p) if k < 0 else p

    def parse_seq() -> int:
        nonlocal pos
        acc = None
        while pos < len(tokens) and tokens[pos][0] != ")":
            kind, val = tokens[pos]
            if kind == "sym":
                if val in gens:
                    x = int(gens[val])
                elif val == "e":
                    x = loop.identity
                else:
                    raise ValueError(f"unknown symbol {val!r} in {word!r}")
                pos += 1
            elif kind == "(":
                pos += 1
                x = parse_seq()
                if pos >= len(tokens) or tokens[pos][0] != ")":
                    raise ValueError(f"unbalanced parentheses in {word!r}")
                pos += 1
            else:
                raise ValueError(f"misplaced exponent in {word!r}")
            while pos < len(tokens) and tokens[pos][0] == "pow":
                x = power(x, int(tokens[pos][1]))
                pos += 1
            acc = x if acc is None else loop.mul(acc, x)
        if acc is None:
            raise ValueError(f"empty word in {word!r}")
        return acc

    result = parse_seq()
    if pos != len(tokens):
        raise ValueError(f"unbalanced parentheses in {word!r}")
    return result


def check_relations(loop: CayleyTable, gens: Mapping[str, int], relators: Sequence[str]) -> bool:
    """True iff every relator word evaluates to the identity."""
    return all(evaluate_word(loop, gens, r) == loop.identity for r in relators)


def relation_report(
    loop: CayleyTable,
    gens: Mapping[str, int],
    relators: Sequence[str],
    expected: IsoType | None = None,
    label: str = "",
) -> Report:
    """Per-relator results, plus the type of the generated subloop when ``expected`` is given."""
    rep = Report(f"relators {label}".strip())
    for r in relators:
        rep.check(f"{label} {r} = e".strip(), loop.identity, evaluate_word(loop, gens, r), "literature",
                  "presenting relation")
    if expected is not None:
        sub = closure(loop, gens.values())
        rep.check(f"{label} <gens> type".strip(), expected, classify(loop, sub, confirm=True), "literature",
                  "generated subloop has the presented type")
    return rep


# --- the C2 x C4 example ------------------------------------------------------------


@dataclass(frozen=True)
class C2xC4Demo:
    subgroups: list[SubloopSet]
    a: SubloopSet  # 1 x D, D = {0, 2} in C4
    a_prime: SubloopSet  # C2 x 1
    l_iso_a: int
    l_iso_a_prime: int
    isomorphic: bool


def subgroup_lattice_demo_c2xc4() -> C2xC4Demo:
    """Two isomorphic subgroups lying under different numbers of C4 copies."""
    c = catalog_group("C2xC4")
    subs = all_subloops(c)
    # element (i, j) of C2 x C4 has index 4 i + j
    a = SubloopSet.of((0, 2))
    a_prime = SubloopSet.of((0, 4))
    c4 = [s for s in subs if classify(c, s) == IsoType.C4]
    return C2xC4Demo(
        subgroups=subs,
        a=a,
        a_prime=a_prime,
        l_iso_a=sum(1 for s in c4 if a <= s),
        l_iso_a_prime=sum(1 for s in c4 if a_prime <= s),
        isomorphic=classify(c, a) == classify(c, a_prime),
    )
