"""Command line interface: ``legcard dga|augs|rulings|cardinality|verify|conjecture``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from legcard.arith import FieldError, FqElem, field_of_order
from legcard.aug import enumerate_augmentations, euler_data, normalized_count
from legcard.augcat import (
    candidate_cardinality_2m,
    class_data,
    conjecture_harness,
    homotopy_cardinality,
    ruling_side,
    theorem_rhs,
)
from legcard.dga import DgaError, build_dga, load_dga, save_dga
from legcard.front import EXAMPLES, FrontError, load_example, parse_front
from legcard.ruling import DEPARTURE, RETURN, SWITCH, classify_crossings, enumerate_rulings, ruling_polynomial
from legcard.verify import verify

# exit codes
EXIT_OK = 0
EXIT_FAILED = 1  # a verification or harness check failed
EXIT_USAGE = 2  # argparse
EXIT_UNKNOWN_EXAMPLE = 3
EXIT_BAD_PARAMETER = 4
EXIT_FILE = 5
EXIT_BAD_INPUT = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="legcard", description="Legendrian DGA, augmentation and ruling counts")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p, allow_all=False):
        g = p.add_mutually_exclusive_group(required=not allow_all)
        g.add_argument("--example", help=f"built-in front: {', '.join(EXAMPLES)}")
        g.add_argument("--front", type=Path, help="front file (JSON)")
        g.add_argument("--dga", type=Path, help="DGA interchange file (JSON)")
        if allow_all:
            g.add_argument("--all", action="store_true", help="every built-in front")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("dga", help="print the DGA")
    inputs(p)

    p = sub.add_parser("augs", help="count augmentations")
    inputs(p)
    p.add_argument("--q", type=_int_list, default=[2])
    p.add_argument("--m", type=_int_list, default=[0])
    p.add_argument("--list", action="store_true", help="print every augmentation")

    p = sub.add_parser("rulings", help="ruling polynomial")
    inputs(p)
    p.add_argument("--m", type=_int_list, default=[0])
    p.add_argument("--list", action="store_true", help="print every ruling")

    p = sub.add_parser("cardinality", help="isomorphism classes and cardinalities")
    inputs(p)
    p.add_argument("--q", type=_int_list, default=[2])
    p.add_argument("--m", type=_int_list, default=[0])

    p = sub.add_parser("verify", help="check the counting identities")
    inputs(p, allow_all=True)
    p.add_argument("--q", type=_int_list, default=[2, 3, 4, 5])
    p.add_argument("--m", type=_int_list, default=[0, 1, 2, 3])

    p = sub.add_parser("conjecture", help="run the per-augmentation dimension identity harness")
    inputs(p, allow_all=True)
    p.add_argument("--q", type=_int_list, default=[2, 3])
    p.add_argument("--m", type=_int_list, default=[1, 2])

    sub.choices["verify"].add_argument("--seed", type=int, default=0, help="seed for sampling augmentation pairs")
    return parser


# -- input resolution ---------------------------------------------------------------


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_FILE)


def resolve_inputs(args) -> list[tuple[str, object, object]]:
    """[(label, front or None, dga)]."""
    try:
        if getattr(args, "all", False):
            fronts = [(n, load_example(n)) for n in EXAMPLES]
        elif args.example is not None:
            if args.example not in EXAMPLES:
                raise CliError(f"unknown example {args.example!r}; choose from {', '.join(EXAMPLES)}", EXIT_UNKNOWN_EXAMPLE)
            fronts = [(args.example, load_example(args.example))]
        elif args.front is not None:
            front = parse_front(_read(args.front))
            fronts = [(front.name or args.front.stem, front)]
        else:
            dga = load_dga(_read(args.dga))
            return [(args.dga.stem, None, dga)]
    except (FrontError, DgaError) as exc:
        raise CliError(str(exc), EXIT_BAD_INPUT)
    except CliError:
        raise
    return [(label, f, build_dga(f)) for label, f in fronts]


def check_parameters(args):
    for q in getattr(args, "q", []):
        try:
            field_of_order(q)
        except FieldError as exc:
            raise CliError(f"invalid q={q}: {exc}", EXIT_BAD_PARAMETER)
    for m in getattr(args, "m", []):
        if m < 0:
            raise CliError(f"invalid m={m}: must be >= 0", EXIT_BAD_PARAMETER)


def _elem(q: int, code: int) -> str:
    return repr(FqElem(field_of_order(q), code))


# -- subcommands ------------------------------------------------------------------------


def cmd_dga(args, out):
    for label, _, dga in resolve_inputs(args):
        if args.json:
            out.write(save_dga(dga))
            continue
        out.write(f"input: {label}\n")
        out.write(f"components = {dga.n_components}\n")
        for g in dga.generators:
            d = dga.differential.get(g.name)
            out.write(f"{g.name} |{g.degree}| r={g.r} c={g.c}: d = {d if d else 0}\n")
    return EXIT_OK


def cmd_augs(args, out):
    payload = []
    for label, _, dga in resolve_inputs(args):
        for q in args.q:
            for m in args.m:
                augs = enumerate_augmentations(dga, q, m)
                ed = euler_data(dga, m)
                norm = normalized_count(dga, q, m, len(augs))
                item = {"input": label, "q": q, "m": m, "count": len(augs), "chi_star": ed.chi_star, "normalized": str(norm)}
                if args.list:
                    item["augmentations"] = [{k: _elem(q, v) for k, v in a.values} for a in augs]
                payload.append(item)
                if not args.json:
                    out.write(f"input: {label}  q = {q}  m = {m}\n")
                    out.write(f"count = {len(augs)}\nchi_* = {ed.chi_star}\nnormalized = {norm}\n")
                    if args.list:
                        for i, a in enumerate(item["augmentations"], 1):
                            out.write(f"  {i}: " + " ".join(f"{k}={v}" for k, v in a.items()) + "\n")
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_rulings(args, out):
    payload = []
    for label, front, _ in resolve_inputs(args):
        if front is None:
            raise CliError("rulings need a front, not a DGA file", EXIT_BAD_INPUT)
        for m in args.m:
            poly = ruling_polynomial(front, m)
            item = {"input": label, "m": m, "polynomial": str(poly)}
            rulings = []
            if args.list:
                for r in enumerate_rulings(front, m):
                    cls = classify_crossings(front, r, m)
                    rulings.append(
                        {
                            "switches": sorted(r.switches),
                            "chi": r.chi,
                            "departures": cls.total(DEPARTURE),
                            "returns": cls.total(RETURN),
                            "switch_count": cls.total(SWITCH),
                        }
                    )
                item["rulings"] = rulings
            payload.append(item)
            if not args.json:
                out.write(f"input: {label}  m = {m}\nR(z) = {poly}\n")
                for r in rulings:
                    out.write(
                        f"  switches {r['switches']} chi = {r['chi']} "
                        f"(D,R,S) = ({r['departures']},{r['returns']},{r['switch_count']})\n"
                    )
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_cardinality(args, out):
    payload = []
    for label, front, dga in resolve_inputs(args):
        for q in args.q:
            for m in args.m:
                rep = class_data(dga, q, m)
                item = {
                    "input": label,
                    "q": q,
                    "m": m,
                    "augmentations": rep.n_augmentations,
                    "classes": [
                        {
                            "representative": {k: _elem(q, v) for k, v in c.representative.values},
                            "size": c.size,
                            "aut": c.aut,
                            "H": {str(k): v for k, v in sorted(c.cohomology.h.items())},
                        }
                        for c in rep.classes
                    ],
                }
                if m == 0:
                    homotopy_cardinality(dga, q, 0, rep)
                    item["homotopy_cardinality"] = str(rep.homotopy_cardinality)
                    item["groupoid_cardinality"] = str(rep.groupoid_cardinality)
                    chi = euler_data(dga, 0).chi_star
                    item["count_side"] = str(theorem_rhs(dga, q, rep.n_augmentations, chi))
                else:
                    cand = candidate_cardinality_2m(dga, q, m, rep)
                    item["chain_form"] = str(cand.prop_form)
                    item["cohomology_form"] = str(cand.cor_form)
                    if cand.even_form is not None:
                        item["even_form"] = str(cand.even_form)
                if front is not None:
                    item["ruling_side"] = str(ruling_side(dga.tb(), q, ruling_polynomial(front, m)))
                payload.append(item)
                if not args.json:
                    out.write(f"input: {label}  q = {q}  m = {m}\n")
                    out.write(f"augmentations = {rep.n_augmentations}\nclasses = {len(rep.classes)}\n")
                    auts = sorted(c.aut for c in rep.classes)
                    out.write(f"|Aut| = {auts}\n")
                    for key in ("homotopy_cardinality", "groupoid_cardinality", "count_side", "chain_form",
                                "cohomology_form", "even_form", "ruling_side"):
                        if key in item:
                            out.write(f"{key.replace('_', ' ')} = {item[key]}\n")
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    report = verify(resolve_inputs(args), args.q, args.m, args.seed)
    if args.json:
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        for case in report.cases:
            out.write(f"[{case.label} q={case.q} m={case.m}]\n")
            for check in case.checks:
                out.write(f"  {check.line()}\n")
        passed, total = report.counts
        out.write(f"{passed}/{total} checks passed\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_conjecture(args, out):
    payload = []
    failed = 0
    for label, _, dga in resolve_inputs(args):
        for q in args.q:
            for m in args.m:
                cases = conjecture_harness(dga, q, m)
                bad = [c for c in cases if not c.ok]
                failed += len(bad)
                z = sum(c.z_graded for c in cases)
                item = {
                    "input": label,
                    "q": q,
                    "m": m,
                    "augmentations": len(cases),
                    "z_graded": z,
                    "failures": [
                        {"augmentation": {k: _elem(q, v) for k, v in c.augmentation.values}, "lhs": c.lhs, "rhs": c.rhs}
                        for c in bad
                    ],
                }
                payload.append(item)
                if not args.json:
                    out.write(
                        f"{label} q={q} m={m}: {len(cases) - len(bad)}/{len(cases)} hold "
                        f"({z} Z-graded, {len(cases) - z} strictly periodic)\n"
                    )
                    for c in bad:
                        out.write(f"  FAIL lhs={c.lhs} rhs={c.rhs}\n")
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if not failed else EXIT_FAILED


COMMANDS = {
    "dga": cmd_dga,
    "augs": cmd_augs,
    "rulings": cmd_rulings,
    "cardinality": cmd_cardinality,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        check_parameters(args)
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        err.write(f"legcard: error: {exc}\n")
        return exc.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
