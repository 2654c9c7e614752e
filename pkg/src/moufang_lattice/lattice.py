"""The subloop lattice of a finite loop, with automorphism orbits and the orbit lattice graph."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .autgroup import AutGroup, OrbitPartition, orbits_on_subloops, standard_group
from .loopcore import CayleyTable, IsoType, OtherType, SubloopSet, all_subloops, classify, closure
from .paige import NAMED_SUBLOOPS, PaigeLoop, build_paige2

PROPER_ORDERS = frozenset({1, 2, 3, 4, 6, 8, 12, 24})

# orbit labels in display order
LABEL_ORDER = ("1", "C2", "C3", "E4+", "E4-", "S3", "E8", "A4", "MS3", "MA4", "C")


def enumerate_subloops(loop: PaigeLoop | CayleyTable | None = None, workers: int | None = None) -> list[SubloopSet]:
    """All subloops, sorted by (order, element tuple).

    ``workers`` defaults to ``MLAT_THREADS`` (0 or unset: one per CPU).
    """
    table = _table(loop)
    if workers is None:
        workers = kernels.thread_count()
    return all_subloops(table, workers=workers)


def _table(loop) -> CayleyTable:
    if loop is None:
        return build_paige2().table
    return loop.table if isinstance(loop, PaigeLoop) else loop


@dataclass(eq=False)
class SubloopLattice:
    """Every subloop of ``loop`` with types, containment, covers and orbits.

    Indices into ``subs`` are used throughout; ``contains[i, j]`` is true iff
    subs[i] is a subloop of subs[j].
    """

    loop: CayleyTable
    subs: list[SubloopSet]
    types: list
    group: Optional[AutGroup] = None
    orbits: Optional[OrbitPartition] = None
    paige: Optional[PaigeLoop] = None
    index: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.index = {s.mask: i for i, s in enumerate(self.subs)}
        self.sizes = np.array([s.size for s in self.subs])
        flags = np.zeros((len(self.subs), self.loop.n), dtype=np.float32)
        for i, s in enumerate(self.subs):
            flags[i, list(s.elements)] = 1
        self.flags = flags.astype(bool)
        meet = flags @ flags.T  # exact: counts are at most n
        self.contains = meet.astype(np.int64) == self.sizes[:, None]
        if self.orbits is not None:
            self.orbit_id = np.array([self.orbits.orbit_of[s.mask] for s in self.subs])
            self.orbit_labels = self._label_orbits()

    # --- lookups ---

    def __len__(self) -> int:
        return len(self.subs)

    def index_of(self, sub: SubloopSet) -> int:
        try:
            return self.index[sub.mask]
        except KeyError:
            raise KeyError(f"{sub} is not a subloop in the lattice") from None

    def type_of(self, sub: SubloopSet):
        return self.types[self.index_of(sub)]

    def of_type(self, kind) -> np.ndarray:
        kind = _as_type(kind)
        return np.array([i for i, t in enumerate(self.types) if t == kind], dtype=np.intp)

    @property
    def top(self) -> int:
        return len(self.subs) - 1

    @property
    def bottom(self) -> int:
        return 0

    # --- orbits ---

    def _require_orbits(self) -> OrbitPartition:
        if self.orbits is None:
            raise ValueError("lattice was built without an automorphism group")
        return self.orbits

    def _label_orbits(self) -> list[str]:
        """Type names; the E4 orbits are told apart by containment in a copy of A4."""
        a4 = self.of_type(IsoType.A4)
        labels = []
        for o in self.orbits:
            t = self.types[self.index_of(o.representative)]
            if t == IsoType.E4:
                rep = self.index_of(o.representative)
                labels.append("E4+" if self.contains[rep, a4].any() else "E4-")
            else:
                labels.append(str(t))
        return labels

    def in_some_a4(self) -> np.ndarray:
        """For each E4 copy (in ``of_type(E4)`` order), whether some A4 contains it."""
        return self.contains[np.ix_(self.of_type(IsoType.E4), self.of_type(IsoType.A4))].any(axis=1)

    def orbit_label(self, sub: SubloopSet) -> str:
        self._require_orbits()
        return self.orbit_labels[self.orbit_id[self.index_of(sub)]]

    def orbit_index(self, label: str) -> int:
        self._require_orbits()
        try:
            return self.orbit_labels.index(label)
        except ValueError:
            raise KeyError(f"no orbit labelled {label!r}; known: {', '.join(self.orbit_labels)}") from None

    def orbit_members(self, label_or_id) -> np.ndarray:
        oid = label_or_id if isinstance(label_or_id, (int, np.integer)) else self.orbit_index(label_or_id)
        return np.flatnonzero(self.orbit_id == oid)

    def representative(self, label: str) -> SubloopSet:
        """Named representative when available, else the canonical (least) member."""
        if self.paige is not None and label in NAMED_SUBLOOPS:
            return self.paige.named_subloop(label)
        return self.orbits.orbits[self.orbit_index(label)].representative

    def display_labels(self) -> list[str]:
        known = [lab for lab in LABEL_ORDER if lab in self.orbit_labels]
        extra = [lab for lab in self.orbit_labels if lab not in LABEL_ORDER]
        return known + extra

    # --- covers ---

    @cached_property
    def covers(self) -> np.ndarray:
        """``covers[i, j]``: subs[i] is maximal in subs[j]."""
        strict = self.contains & ~np.eye(len(self.subs), dtype=bool)
        s = strict.astype(np.float32)
        between = (s @ s) > 0
        return strict & ~between


def _as_type(kind):
    if isinstance(kind, (IsoType, OtherType)):
        return kind
    try:
        return IsoType(kind)
    except ValueError:
        raise KeyError(f"unknown subloop type {kind!r}") from None


def build_lattice(
    loop: PaigeLoop | CayleyTable | None = None,
    group: AutGroup | None = None,
    subs: Sequence[SubloopSet] | None = None,
) -> SubloopLattice:
    """Enumerate, classify, and (given a group) split into orbits."""
    paige = loop if isinstance(loop, PaigeLoop) else (build_paige2() if loop is None else None)
    table = _table(loop)
    subs = list(subs) if subs is not None else enumerate_subloops(table)
    types = [classify(table, s) for s in subs]
    orbits = orbits_on_subloops(group, subs) if group is not None else None
    return SubloopLattice(table, subs, types, group, orbits, paige)


@lru_cache(maxsize=None)
def paige_lattice() -> SubloopLattice:
    """The lattice of M*(2) under its full automorphism group (cached)."""
    return build_lattice(build_paige2(), standard_group())


# --- neighbourhoods and global properties ------------------------------------------------


def neighbors(lat: SubloopLattice, sub: SubloopSet) -> tuple[list[SubloopSet], list[SubloopSet]]:
    """(maximal subloops of sub, minimal subloops properly containing sub)."""
    i = lat.index_of(sub)
    down = [lat.subs[j] for j in np.flatnonzero(lat.covers[:, i])]
    up = [lat.subs[j] for j in np.flatnonzero(lat.covers[i, :])]
    return down, up


def check_strong_lagrange(lat: SubloopLattice) -> bool:
    """Whether |H| divides |K| for every pair of subloops H <= K."""
    i, j = np.nonzero(lat.contains)
    return bool((lat.sizes[j] % lat.sizes[i] == 0).all())


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def has_weak_cauchy(lat: SubloopLattice, i: int | None = None) -> bool:
    """Whether subs[i] (default: the whole loop) has a subloop of every prime order dividing its order."""
    i = lat.top if i is None else i
    below = lat.sizes[lat.contains[:, i]]
    return all(p in below for p in _primes(int(lat.sizes[i])))


def check_weak_cauchy(lat: SubloopLattice) -> bool:
    return has_weak_cauchy(lat)


def weak_cauchy_failures(lat: SubloopLattice) -> list[int]:
    """Primes dividing |C| with no subloop of that order."""
    return [p for p in _primes(lat.loop.n) if p not in set(lat.sizes.tolist())]


def subloop_orders(lat: SubloopLattice) -> list[int]:
    return sorted(set(lat.sizes.tolist()))


def e8_commuting_extensions(lat: SubloopLattice) -> int:
    """Pairs (E, y): E a copy of E8, y an involution outside E commuting with all of E.

    Any such pair would generate an elementary abelian subgroup of order 16.
    """
    t = lat.loop.table
    orders = lat.loop.orders
    count = 0
    for i in lat.of_type(IsoType.E8):
        elems = np.array(lat.subs[i].elements)
        for y in np.flatnonzero(orders == 2):
            if lat.flags[i, y]:
                continue
            if (t[elems, y] == t[y, elems]).all():
                count += 1
    return count


# --- orbit lattice graph-----------------------------------------------------------------------


@dataclass(frozen=True)
class FigureNode:
    id: str
    order: int
    type: str
    orbit: int
    size: int
    representative: tuple[int, ...]


@dataclass(frozen=True)
class FigureEdge:
    source: str
    target: str
    l_glb: int
    l_orb: int
    maximal: bool


@dataclass(frozen=True)
class LatticeGraph:
    elements: int
    nodes: tuple[FigureNode, ...]
    edges: tuple[FigureEdge, ...]

    def node(self, id: str) -> FigureNode:
        for n in self.nodes:
            if n.id == id:
                return n
        raise KeyError(id)

    def edge(self, a: str, b: str) -> Optional[FigureEdge]:
        for e in self.edges:
            if (e.source, e.target) == (a, b):
                return e
        return None


def figure2_data(lat: SubloopLattice | None = None) -> LatticeGraph:
    """One node per orbit, edges between orbit representatives.

    Between nontrivial proper representatives A, B there is an edge iff
    l_orb[A:B:C] > 0 (this is l_iso[A:B:C] except that the two E4 orbits are
    separate nodes).  Edges at {e} or at C exist iff a copy of A is maximal
    in B.  An edge is marked maximal (drawn thick) iff some copy of A is
    maximal in B.
    """
    from . import hasse

    lat = lat or paige_lattice()
    lat._require_orbits()
    labels = lat.display_labels()
    nodes = []
    for lab in labels:
        oid = lat.orbit_index(lab)
        rep = lat.representative(lab)
        nodes.append(
            FigureNode(lab, rep.size, str(lat.type_of(rep)), oid, len(lat.orbit_members(oid)), rep.elements)
        )
    nodes.sort(key=lambda n: (n.order, n.orbit))
    edges = []
    for a in nodes:
        a_members = lat.orbit_members(a.orbit)
        for b in nodes:
            if b.order <= a.order or b.order % a.order:
                continue
            b_rep = lat.index_of(lat.representative(b.id))
            maximal = bool(lat.covers[a_members, b_rep].any())
            l_orb = hasse.count_orbit_above(lat.representative(a.id), lat.representative(b.id), lat)
            if a.id == "1" or b.id == "C":
                present = maximal
            else:
                present = l_orb > 0
            if present:
                l_glb = hasse.abstract_count(a.type, b.type, lat)
                edges.append(FigureEdge(a.id, b.id, l_glb, l_orb, maximal))
    return LatticeGraph(lat.loop.n, tuple(nodes), tuple(edges))


def export_json(graph: LatticeGraph) -> str:
    doc = {
        "elements": graph.elements,
        "nodes": [
            {
                "id": n.id,
                "order": n.order,
                "type": n.type,
                "orbit": n.orbit,
                "size": n.size,
                "representative": list(n.representative),
            }
            for n in graph.nodes
        ],
        "edges": [
            {"from": e.source, "to": e.target, "l_glb": e.l_glb, "l_orb": e.l_orb, "maximal": e.maximal}
            for e in graph.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_json(text: str) -> LatticeGraph:
    doc = json.loads(text)
    nodes = tuple(
        FigureNode(n["id"], n["order"], n["type"], n["orbit"], n["size"], tuple(n["representative"]))
        for n in doc["nodes"]
    )
    edges = tuple(FigureEdge(e["from"], e["to"], e["l_glb"], e["l_orb"], e["maximal"]) for e in doc["edges"])
    return LatticeGraph(doc["elements"], nodes, edges)


def export_dot(graph: LatticeGraph) -> str:
    """Graphviz source; thick edges are bold, nodes are labelled ``name (|O|)``."""
    lines = ["graph subloops {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for n in graph.nodes:
        lines.append(f'  "{n.id}" [label="{n.id} ({n.size})"];')
    for e in graph.edges:
        style = ", style=bold, penwidth=3" if e.maximal else ""
        lines.append(f'  "{e.source}" -- "{e.target}" [label="{e.l_glb}:{e.l_orb}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
