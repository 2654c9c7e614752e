"""Automorphisms of the Paige loop as permutations of element indices.

Composition convention: ``(f * g)[x] = f[g[x]]``, i.e. apply g first.  A
word ``(i1, ..., ik)`` over a generator list denotes
``gens[i1] * ... * gens[ik]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels, zorn
from .loopcore import CayleyTable, SubloopSet, closure, straight_line_program
from .paige import PaigeLoop, build_paige2
from .zorn import FVec3, VMatrix

_DTYPE = np.int32


class NotAnAutomorphism(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LoopPerm:
    image: np.ndarray
    word: Optional[tuple[int, ...]] = None
    name: str = ""

    def __post_init__(self) -> None:
        img = np.ascontiguousarray(self.image, dtype=_DTYPE)
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int = 120) -> "LoopPerm":
        return cls(np.arange(n), (), "id")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __mul__(self, other: "LoopPerm") -> "LoopPerm":
        word = self.word + other.word if self.word is not None and other.word is not None else None
        return LoopPerm(self.image[other.image], word)

    def inverse(self) -> "LoopPerm":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.n, dtype=_DTYPE)
        return LoopPerm(inv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LoopPerm) and np.array_equal(self.image, other.image)

    def __hash__(self) -> int:
        return hash(self.image.tobytes())

    def is_identity(self) -> bool:
        return bool((self.image == np.arange(self.n)).all())

    def is_permutation(self) -> bool:
        return bool(np.array_equal(np.sort(self.image), np.arange(self.n)))

    def is_automorphism(self, loop: CayleyTable) -> bool:
        t, p = loop.table, self.image
        return self.is_permutation() and bool((p[t] == t[np.ix_(p, p)]).all())

    def apply(self, sub: SubloopSet) -> SubloopSet:
        return SubloopSet(kernels.image_mask(self.image, sub.mask))


# --- the three families of automorphisms ------------------------------------------------


def _loop(loop: PaigeLoop | None) -> PaigeLoop:
    return loop or build_paige2()


def _from_map(c: PaigeLoop, fn, name: str) -> LoopPerm:
    return LoopPerm(np.array([c.index_of(fn(x)) for x in c.elements]), name=name)


def _apply_matrix(f: np.ndarray, v: FVec3) -> FVec3:
    return FVec3(*(int(x) for x in (f @ np.array(v)) % 2))


def lie_auto(f, loop: PaigeLoop | None = None) -> Optional[LoopPerm]:
    """Lift of an automorphism f of (F2^3, +, x) acting on both vectors; None if f is not one."""
    f = np.asarray(f, dtype=np.int64) % 2
    if f.shape != (3, 3):
        raise ValueError("f must be a 3x3 matrix")
    images = {v: _apply_matrix(f, v) for v in zorn.ALL_VECTORS}
    if len(set(images.values())) != 8:
        return None
    for a, b in itertools.product(zorn.ALL_VECTORS, repeat=2):
        if images[zorn.cross(a, b)] != zorn.cross(images[a], images[b]):
            return None
    c = _loop(loop)
    rows = "".join("".join(map(str, r)) for r in f.tolist())
    perm = _from_map(c, lambda x: VMatrix(x.a, images[x.alpha], images[x.beta], x.b), f"lie({rows})")
    if not perm.is_automorphism(c.table):
        raise NotAnAutomorphism(f"lift of {rows} is not multiplicative")
    return perm


def perm_auto(pi: Sequence[int], loop: PaigeLoop | None = None) -> LoopPerm:
    """Coordinate permutation: coordinate i of each vector moves to position pi[i] (1-based)."""
    if sorted(pi) != [1, 2, 3]:
        raise ValueError(f"{pi!r} is not a permutation of 1, 2, 3")
    f = np.zeros((3, 3), dtype=np.int64)
    for i, p in enumerate(pi):
        f[p - 1, i] = 1
    perm = lie_auto(f, loop)
    assert perm is not None
    return LoopPerm(perm.image, name="perm(" + "".join(map(str, pi)) + ")")


def delta_auto(loop: PaigeLoop | None = None) -> LoopPerm:
    """Swap of the diagonal entries together with swap of the two vectors."""
    c = _loop(loop)
    perm = _from_map(c, lambda x: VMatrix(x.b, x.beta, x.alpha, x.a), "delta")
    if not perm.is_automorphism(c.table):
        raise NotAnAutomorphism("delta is not multiplicative")
    return perm


def conjugation_map(x: int, loop: PaigeLoop | None = None) -> LoopPerm:
    """y -> (x^-1 y) x, as a permutation (an automorphism only for some x)."""
    c = _loop(loop)
    t = c.table.table
    xi = c.table.inverse(x)
    return LoopPerm(t[t[xi], x], name=f"conj({c.label(x)})")


def conj_auto(x: int, loop: PaigeLoop | None = None) -> Optional[LoopPerm]:
    """Conjugation by x if it is an automorphism of C, else None."""
    c = _loop(loop)
    perm = conjugation_map(x, c)
    if c.order(x) == 3:
        # both bracketings agree inside the group <x, y>
        t = c.table.table
        other = t[c.table.inverse(x), t[:, x]]
        assert np.array_equal(perm.image, other)
    return perm if perm.is_automorphism(c.table) else None


def phi_auto(loop: PaigeLoop | None = None) -> LoopPerm:
    """c_{v1^-1} * c_{v0}: conjugate by v0 first, then by v1^-1."""
    c = _loop(loop)
    v0, v1 = c.named("v0"), c.named("v1")
    first = conj_auto(v0, c)
    second = conj_auto(c.table.inverse(v1), c)
    if first is None or second is None:
        raise NotAnAutomorphism("conjugation by v0 or v1^-1 is not an automorphism")
    return LoopPerm((second * first).image, name="phi")


def standard_generators(loop: PaigeLoop | None = None) -> list[LoopPerm]:
    """All coordinate permutations, delta, and conjugation by every order-3 element."""
    c = _loop(loop)
    gens = [perm_auto(p, c) for p in itertools.permutations((1, 2, 3))]
    gens.append(delta_auto(c))
    for x in range(c.n):
        if c.order(x) == 3:
            g = conj_auto(x, c)
            if g is None:
                raise NotAnAutomorphism(f"conjugation by {c.label(x)} is not an automorphism")
            gens.append(g)
    return gens


# --- groups ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _generating_triple_cached(loop: PaigeLoop) -> tuple[int, int, int]:
    x0, z0 = loop.named("x0"), loop.named("z0")
    base = closure(loop.table, (x0, z0))
    for w in range(loop.n):
        if closure(loop.table, (w,), base).size == loop.n:
            return x0, z0, w
    raise RuntimeError("x0 and z0 do not extend to a generating triple")


def generating_triple(loop: PaigeLoop | None = None) -> tuple[int, int, int]:
    """(x0, z0, w) with w the smallest index such that the three generate C.

    An automorphism is determined by the images of these three elements.
    """
    return _generating_triple_cached(_loop(loop))


@dataclass(eq=False)
class AutGroup:
    """A group of automorphisms, stored as rows of a permutation array.

    Row 0 is the identity.  For groups built by :func:`generate_group`,
    ``parent[i], via[i]`` say that element i equals ``element(parent[i]) * gens[via[i]]``.
    """

    gens: list[LoopPerm]
    images: np.ndarray
    triple: tuple[int, int, int]
    parent: Optional[np.ndarray] = None
    via: Optional[np.ndarray] = None
    _index: dict[tuple[int, int, int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            keys = self.images[:, list(self.triple)].tolist()
            self._index = {tuple(k): i for i, k in enumerate(keys)}

    @property
    def order(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return self.order

    def key(self, perm: LoopPerm) -> tuple[int, int, int]:
        return tuple(int(perm.image[t]) for t in self.triple)

    def index_of(self, perm: LoopPerm) -> Optional[int]:
        i = self._index.get(self.key(perm))
        if i is None or not np.array_equal(self.images[i], perm.image):
            return None
        return i

    def __contains__(self, perm: LoopPerm) -> bool:
        return self.index_of(perm) is not None

    def word(self, i: int) -> Optional[tuple[int, ...]]:
        if self.parent is None:
            return None
        w = []
        while i != 0:
            w.append(int(self.via[i]))
            i = int(self.parent[i])
        return tuple(reversed(w))

    def element(self, i: int) -> LoopPerm:
        return LoopPerm(self.images[i], self.word(i))

    def __iter__(self):
        return (self.element(i) for i in range(self.order))

    def key_set(self) -> frozenset:
        return frozenset(self._index)

    def same_elements(self, other: "AutGroup") -> bool:
        """Equality of element sets (keys agree and the permutations agree)."""
        if self.order != other.order or self.triple != other.triple:
            return False
        order = [other._index.get(k) for k in map(tuple, self.images[:, list(self.triple)].tolist())]
        if any(i is None for i in order):
            return False
        return bool(np.array_equal(self.images, other.images[order]))


def generate_group(gens: Sequence[LoopPerm], loop: PaigeLoop | None = None) -> AutGroup:
    """Closure of ``gens`` under composition, by breadth-first search.

    Deterministic: new elements are numbered in order of (BFS parent, generator).
    """
    c = _loop(loop)
    for g in gens:
        if not g.is_automorphism(c.table):
            raise NotAnAutomorphism(f"generator {g.name or '?'} is not an automorphism")
    triple = generating_triple(c)
    n = c.n
    base = n * n
    gen_images = np.array([g.image for g in gens], dtype=_DTYPE).reshape(len(gens), n)
    # key of f * g is f[g[triple]]: only the triple images of g are needed
    gen_triples = gen_images[:, list(triple)]

    def encode(k: np.ndarray) -> np.ndarray:
        k = k.astype(np.int64)
        return (k[..., 0] * n + k[..., 1]) * n + k[..., 2]

    rows = [np.arange(n, dtype=_DTYPE)]
    parent, via = [0], [0]
    known = {int(encode(np.array(triple)))}
    frontier = np.array([0])
    images = np.array(rows)
    while len(frontier) and len(gens):
        f = images[frontier]  # (m, n)
        cand = f[:, gen_triples]  # (m, ngens, 3)
        codes = encode(cand).ravel()
        _, first = np.unique(codes, return_index=True)
        first.sort()
        fresh = [i for i in first.tolist() if int(codes[i]) not in known]
        if not fresh:
            break
        new_rows = []
        start = len(images)
        for i in fresh:
            r, s = divmod(i, len(gens))
            known.add(int(codes[i]))
            new_rows.append(f[r][gen_images[s]])
            parent.append(int(frontier[r]))
            via.append(s)
        images = np.concatenate((images, np.array(new_rows, dtype=_DTYPE)))
        frontier = np.arange(start, len(images))
    return AutGroup(list(gens), images, triple, np.array(parent), np.array(via))


def full_aut_search(loop: PaigeLoop | None = None) -> AutGroup:
    """Every automorphism, by backtracking over images of the generating triple.

    Candidate images must have the order of the preimage; each partial map is
    extended along a straight-line program and checked to be an injective
    homomorphism on the subloop generated so far.
    """
    c = _loop(loop)
    t = c.table
    triple = generating_triple(c)
    levels, domains = straight_line_program(t, triple)
    by_order: dict[int, list[int]] = {}
    for y in range(c.n):
        by_order.setdefault(c.order(y), []).append(y)
    found: list[np.ndarray] = []

    def search(level: int, img: np.ndarray) -> None:
        if level == len(triple):
            found.append(img)
            return
        g = triple[level]
        used = set(img[domains[level - 1]].tolist()) if level else {t.identity}
        for cand in by_order[c.order(g)]:
            if cand in used:
                continue
            trial = img.copy()
            trial[g] = cand
            if kernels.extend_hom(t.table, t.table, levels[level], domains[level], trial):
                search(level + 1, trial)

    start = np.full(c.n, -1, dtype=_DTYPE)
    start[t.identity] = t.identity
    search(0, start)
    images = np.array(found, dtype=_DTYPE)
    ident = np.flatnonzero((images == np.arange(c.n)).all(axis=1))
    rest = np.setdiff1d(np.arange(len(images)), ident)
    images = images[np.concatenate((ident, rest))]
    return AutGroup([], images, triple)


# --- orbits on subloops -----------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    id: int
    representative: SubloopSet
    members: tuple[SubloopSet, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[Orbit, ...]
    orbit_of: dict[int, int]  # subloop mask -> orbit id

    def __len__(self) -> int:
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def of(self, sub: SubloopSet) -> Orbit:
        return self.orbits[self.orbit_of[sub.mask]]


class MissingImageError(RuntimeError):
    pass


def _action_gens(group: AutGroup) -> list[np.ndarray]:
    if group.gens:
        return [g.image for g in group.gens]
    return list(group.images)


def orbits_on_subloops(group: AutGroup, subloops: Iterable[SubloopSet]) -> OrbitPartition:
    """Orbits under the group, each with its lexicographically least member as representative.

    Orbits are numbered by (size of the subloops, representative).
    """
    subs = list(subloops)
    index = {s.mask: s for s in subs}
    gens = _action_gens(group)
    seen: set[int] = set()
    raw = []
    for s in sorted(subs, key=lambda s: (s.size, s.elements)):
        if s.mask in seen:
            continue
        orbit, queue = [s], [s.mask]
        seen.add(s.mask)
        while queue:
            m = queue.pop()
            for g in gens:
                im = kernels.image_mask(g, m)
                if im not in index:
                    raise MissingImageError(f"image of {SubloopSet(m)} is not in the subloop list")
                if im not in seen:
                    seen.add(im)
                    orbit.append(index[im])
                    queue.append(im)
        orbit.sort(key=lambda x: x.elements)
        raw.append(orbit)
    raw.sort(key=lambda o: (o[0].size, o[0].elements))
    orbits = tuple(Orbit(i, o[0], tuple(o)) for i, o in enumerate(raw))
    orbit_of = {m.mask: o.id for o in orbits for m in o.members}
    return OrbitPartition(orbits, orbit_of)


def mapping_auto(group: AutGroup, source: SubloopSet, target: SubloopSet) -> Optional[LoopPerm]:
    """An element f of the group with f(source) = target, or None.

    Breadth-first over images of ``source`` under the generators; the word of
    the result lists generator indices as in the module convention.
    """
    gens = _action_gens(group)
    n = len(group.images[0])
    if source.mask == target.mask:
        return LoopPerm.identity(n)
    if source.size != target.size:
        return None
    back: dict[int, tuple[int, int]] = {source.mask: (-1, -1)}
    queue = [source.mask]
    head = 0
    while head < len(queue):
        m = queue[head]
        head += 1
        for i, g in enumerate(gens):
            im = kernels.image_mask(g, m)
            if im in back:
                continue
            back[im] = (m, i)
            if im == target.mask:
                word = []
                while im != source.mask:
                    im, i = back[im]
                    word.append(i)
                # word is in application order; composition applies the last letter first
                perm = LoopPerm.identity(n)
                for i in word:
                    perm = perm * LoopPerm(gens[i], (i,))
                return perm
            queue.append(im)
    return None


# --- export -----------------------------------------------------------------------------


def export_json(group: AutGroup, include_elements: bool = False) -> str:
    doc = {
        "order": group.order,
        "triple": list(group.triple),
        "generators": [
            {"id": i, "name": g.name, "image": g.image.tolist()} for i, g in enumerate(group.gens)
        ],
    }
    if include_elements:
        doc["elements"] = [
            {"image": group.images[i].tolist(), "word": list(w) if (w := group.word(i)) is not None else None}
            for i in range(group.order)
        ]
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


@lru_cache(maxsize=None)
def standard_group() -> AutGroup:
    """Aut(C) generated by :func:`standard_generators`."""
    return generate_group(standard_generators())
