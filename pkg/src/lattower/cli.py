"""Command line interface.

Subcommands: enumerate, aut, tower, oracle-diff, hasse, lemmas.  Output is
deterministic; identical invocations print identical bytes.  Exit codes:
0 success, 1 unexpected error, 2 parse errors, 3 bound violations,
4 verification mismatches.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DegreeTooLarge,
    DegreeTooSmall,
    LatTowerError,
    NegativeExponent,
    OracleMismatch,
    SpecParseError,
    TooLarge,
)
from .autgroup import brute_force_automorphisms, verify_product_formula
from .group_spec import parse_spec
from .lattice_core import AbstractLattice, Lattice, enumerate_lattice
from .perm_oracle import (
    DEFAULT_MAX_ORDER,
    LEMMA_GROUP_DEGREES,
    ConcreteGroup,
    differential_validate,
    normal_subgroup_poset,
)
from .tower import StartNode, format_run, run_tower

EXIT_PARSE = 2
EXIT_BOUNDS = 3
EXIT_MISMATCH = 4

_PARSE_ERRORS = (SpecParseError, DegreeTooSmall, DegreeTooLarge, NegativeExponent)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattower",
        description="normal-subgroup lattices of products of symmetric groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="group literal, e.g. S4^2*S3^2")
        p.add_argument("--format", choices=("text", "json", "dot"), default=None)
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
        p.add_argument("--max-T", dest="max_slots", type=int, default=8)
        p.add_argument("--max-lattice", type=int, default=2000)

    add_common(sub.add_parser("enumerate", help="census or full dump of N(G)"))
    add_common(sub.add_parser("aut", help="check LatAut(G) against the slot formula"))
    add_common(sub.add_parser("tower", help="iterate G -> LatAut(G) to the trivial group"))
    add_common(sub.add_parser("oracle-diff", help="differential validation against permutations"))
    add_common(sub.add_parser("hasse", help="covering relations as DOT"))
    add_common(sub.add_parser("lemmas", help="small-group lattices and their symmetries"), spec=False)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _json_dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def cmd_enumerate(args) -> int:
    spec = parse_spec(args.spec)
    lat = enumerate_lattice(spec, max_slots=args.max_slots)
    c = lat.census
    if (args.format or "text") == "json":
        _emit(_json_dump(lat.to_json_dict()), args.out)
    else:
        _emit(
            f"total {c.total}: sub-products {c.sub_products}, "
            f"sign-parity {c.sign_parity}, mixed {c.mixed}",
            args.out,
        )
    return 0


def cmd_aut(args) -> int:
    spec = parse_spec(args.spec)
    report = verify_product_formula(spec, max_slots=args.max_slots, max_size=args.max_lattice)
    if (args.format or "text") == "json":
        _emit(_json_dump(report.to_json_dict()), args.out)
    else:
        verdict = "match" if report.match else "MISMATCH"
        lines = [
            f"spec {report.spec}: LatAut order {report.predicted_order} "
            f"= {report.a4}!*{report.b}! "
            f"(brute force {report.brute_force_order}, constructive {report.constructive_order}) "
            f"{verdict}"
        ]
        if report.generators:
            lines.append("generators: " + ", ".join(report.generators))
        _emit("\n".join(lines), args.out)
    return 0 if report.match else EXIT_MISMATCH


def cmd_tower(args) -> int:
    spec = parse_spec(args.spec)
    run = run_tower(StartNode(spec))
    if (args.format or "text") == "json":
        from .tower import format_node

        data = {
            "nodes": [format_node(n) for n in run.nodes],
            "steps": run.steps,
            "sharp": run.sharp,
        }
        _emit(_json_dump(data), args.out)
    else:
        _emit(format_run(run), args.out)
    return 0


def cmd_oracle_diff(args) -> int:
    spec = parse_spec(args.spec)
    try:
        report = differential_validate(spec, max_order=args.max_order, max_slots=args.max_slots)
    except OracleMismatch as exc:
        _emit(_json_dump({"ok": False, "error": str(exc)}), args.out)
        return EXIT_MISMATCH
    if (args.format or "text") == "json":
        _emit(_json_dump(report.to_json_dict()), args.out)
    else:
        _emit("ok", args.out)
    return 0


def _dot_of_lattice(lat: Lattice) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i, e in enumerate(lat.elements):
        lines.append(f'  n{i} [label="{e.family}:{e.order}"];')
    for i, j in lat.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)


def _dot_of_abstract(a: AbstractLattice, orders: list[int]) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i, order in enumerate(orders):
        lines.append(f'  n{i} [label="{order}"];')
    for i, j in a.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)


def cmd_hasse(args) -> int:
    name = args.spec.strip()
    if name in LEMMA_GROUP_DEGREES:
        from .perm_oracle import all_normal_subgroups

        group = ConcreteGroup(LEMMA_GROUP_DEGREES[name], max_order=args.max_order)
        normals = all_normal_subgroups(group)
        poset = normal_subgroup_poset(group, normals)
        _emit(_dot_of_abstract(poset, [len(n) for n in normals]), args.out)
        return 0
    spec = parse_spec(args.spec)
    lat = enumerate_lattice(spec, max_slots=args.max_slots)
    _emit(_dot_of_lattice(lat), args.out)
    return 0


def cmd_lemmas(args) -> int:
    rows = []
    for name, degrees in LEMMA_GROUP_DEGREES.items():
        group = ConcreteGroup(degrees, max_order=args.max_order)
        poset = normal_subgroup_poset(group)
        autos = brute_force_automorphisms(poset, max_size=args.max_lattice)
        rows.append({"group": name, "elements": poset.n, "automorphisms": len(autos)})
    if (args.format or "text") == "json":
        _emit(_json_dump(rows), args.out)
    else:
        _emit(
            "\n".join(
                f"{r['group']}: {r['elements']} elements, {r['automorphisms']} automorphisms"
                for r in rows
            ),
            args.out,
        )
    return 0


_HANDLERS = {
    "enumerate": cmd_enumerate,
    "aut": cmd_aut,
    "tower": cmd_tower,
    "oracle-diff": cmd_oracle_diff,
    "hasse": cmd_hasse,
    "lemmas": cmd_lemmas,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except OracleMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except LatTowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
