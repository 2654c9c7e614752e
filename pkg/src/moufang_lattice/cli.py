"""``mlat`` command-line interface."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__, chein, hasse, kernels, lattice, verify
from .loopcore import IsoType, emit_cayley
from .paige import table1, table1_csv, table1_grid
from .report import Report


@dataclass
class VerifyReport:
    reports: list[Report] = field(default_factory=list)

    @property
    def checks(self):
        return [c for r in self.reports for c in r.checks]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def format(self) -> str:
        parts = [r.format() for r in self.reports]
        checks = self.checks
        passed = sum(c.ok for c in checks)
        parts.append(f"{'PASS' if self.ok else 'FAIL'}: {passed}/{len(checks)} checks passed")
        return "\n\n".join(parts)


def cmd_verify(args) -> int:
    sections = [args.section] if args.section else None
    report = VerifyReport(verify.run(sections))
    print(report.format())
    return 0 if report.ok else 1


def cmd_lattice(args) -> int:
    graph = lattice.figure2_data()
    text = lattice.export_json(graph) if args.out == "json" else lattice.export_dot(graph)
    if args.path in (None, "-"):
        sys.stdout.write(text)
        return 0
    try:
        with open(args.path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"mlat: cannot write {args.path}: {exc.strerror}", file=sys.stderr)
        return 1
    return 0


def _resolve_sub(lat, token: str):
    """(label, subloop) pairs for an orbit label, a type, or a comma-separated element list."""
    if token in lat.orbit_labels:
        return [(token, lat.representative(token))]
    try:
        kind = IsoType(token)
    except ValueError:
        try:
            sub = lat.paige.span(*token.split(","))
        except ValueError:
            raise KeyError(f"{token!r} is not a type, an orbit label, or a list of elements") from None
        return [(f"<{token}>", sub)]
    labels = [lab for lab in lat.display_labels() if lat.type_of(lat.representative(lab)) == kind]
    if not labels:
        raise KeyError(f"no subloop of type {token} in C")
    return [(lab, lat.representative(lab)) for lab in labels]


def cmd_constants(args) -> int:
    lat = lattice.paige_lattice()
    try:
        subs = _resolve_sub(lat, args.sub)
        sups = _resolve_sub(lat, args.sup)
    except (KeyError, ValueError) as exc:
        print(f"mlat: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    print(f"{'A':<10} {'B':<10} {'l[A:B]':>7} {'l_iso[A:B:C]':>13} {'l_orb[A:B:C]':>13}")
    for a_label, a in subs:
        for b_label, b in sups:
            ta, tb = lat.type_of(a), lat.type_of(b)
            glb = hasse.abstract_count(ta, tb, lat)
            iso = hasse.count_copies_above(a, tb, lat)
            orb = hasse.count_orbit_above(a, b, lat)
            print(f"{a_label:<10} {b_label:<10} {glb:>7} {iso:>13} {orb:>13}")
    return 0


def cmd_orbits(args) -> int:
    lat = lattice.paige_lattice()
    print(f"Aut(C) of order {lat.group.order} on {len(lat) - 1} proper subloops")
    print(f"{'orbit':<6} {'type':<5} {'order':>5} {'copies':>6}  representative")
    for lab in lat.display_labels():
        if lab == "C":
            continue
        rep = lat.representative(lab)
        gens = lattice.NAMED_SUBLOOPS.get(lab)
        shown = "<" + ", ".join(gens) + ">" if gens else "{e}"
        print(f"{lab:<6} {str(lat.type_of(rep)):<5} {rep.size:>5} {len(lat.orbit_members(lab)):>6}  {shown}")
    return 0


def cmd_table1(args) -> int:
    cells = table1()
    sys.stdout.write(table1_csv(cells) if args.csv else table1_grid(cells))
    return 0


def cmd_chein(args) -> int:
    g = chein.catalog_group(args.group)
    doubled = chein.chein_double(g)
    print(f"# M({args.group},2), order {doubled.n}")
    sys.stdout.write(emit_cayley(doubled))
    report = chein.verify_m2n_lemma(g, args.group)
    print(report.format())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mlat", description="Subloop lattice of the Paige loop M*(2).")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--section", choices=list(verify.SECTIONS), help="run one section only")
    v.set_defaults(func=cmd_verify)

    lt = sub.add_parser("lattice", help="export the orbit lattice")
    lt.add_argument("--out", choices=("json", "dot"), default="json")
    lt.add_argument("--path", help="output file (default: stdout)")
    lt.set_defaults(func=cmd_lattice)

    c = sub.add_parser("constants", help="Hasse constants for a pair of subloops")
    c.add_argument("--sub", required=True, help="type, orbit label (E4+, E4-), or elements like x0,u1")
    c.add_argument("--sup", required=True, help="type or orbit label")
    c.set_defaults(func=cmd_constants)

    o = sub.add_parser("orbits", help="orbits of Aut(C) on subloops")
    o.set_defaults(func=cmd_orbits)

    t = sub.add_parser("table1", help="orders of products with involutions")
    t.add_argument("--csv", action="store_true")
    t.set_defaults(func=cmd_table1)

    ch = sub.add_parser("chein", help="the loop M(G,2) and its structure report")
    ch.add_argument("--group", required=True, choices=chein.CATALOG_NAMES)
    ch.set_defaults(func=cmd_chein)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
