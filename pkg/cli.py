#!/usr/bin/env python3
"""
Command-line front end.

    python cli.py classify --model Qp:2 --subgroup 1,5
    python cli.py wgroup --model Qp:2
    python cli.py witt --model QS:2,3,5,7,13 --prime 13 --against Qp:13
    python cli.py lift --model RXY --valuation Y-adic/X-adic
    python cli.py lgp 1 1 -7 -31 --height-bound 20
    python cli.py census
    python cli.py selftest

Every subcommand prints an aligned table, or the full structured report with
--json. Exit codes: 0 success, 1 failed selftest, 2 parse errors, 3 other
domain errors.
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel

import algebra_config
import selftest
from cgroups import (
    isomorphism_type,
    presentation_text,
    semidirect_chain,
    two_generator_census,
    wgroup_from_model,
)
from descriptors import build_model
from errors import AlgebraError, DescriptorError, HypothesisError
from field_models import FieldModel
from local_global import form_from_text, hasse_minkowski, ordering_for_prime, rational_point_oracle, reciprocity_audit
from orderings import SubgroupT, classify, is_rigid, sigma_T, t_plus_t
from valuations import find_compatible_valuation, get_valuation, lift_ordering, residue_ordering, valuations_of
from witt import ring_iso, witt_ring

logger = logging.getLogger(__name__)


class Report(BaseModel):
    command: str
    inputs: Dict[str, Any] = {}
    results: Dict[str, Any] = {}
    table: List[List[str]] = []
    diagnostics: List[str] = []


def render_table(report: Report) -> str:
    lines = [f"[{report.command}]"]
    if report.table:
        widths = [max(len(row[i]) for row in report.table if i < len(row)) for i in range(max(map(len, report.table)))]
        for row in report.table:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    for note in report.diagnostics:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _braces(labels: Sequence[str]) -> str:
    return "{" + ", ".join(labels) + "}"


def _subgroup(model: FieldModel, text: Optional[str]) -> SubgroupT:
    """Comma-separated class labels spanning T; empty means the squares."""
    if not text:
        return SubgroupT.squares(model)
    labels = [part.strip() for part in text.split(",") if part.strip()]
    return SubgroupT.from_labels(model, labels)


# Subcommands


def cmd_classify(args: argparse.Namespace) -> Report:
    model = build_model(args.model)
    t = _subgroup(model, args.subgroup)
    verdict = classify(t)
    doubles = t_plus_t(t).labels()
    sums = sigma_T(t).labels()
    report = Report(
        command="classify",
        inputs={"model": model.descriptor, "subgroup": t.labels()},
        results={
            "type": verdict.tag.value,
            "name": verdict.name,
            "level": verdict.level,
            "rigid": verdict.rigid,
            "index": verdict.index,
            "T+T": doubles,
            "sums": sums,
        },
    )
    report.table = [
        ["type", verdict.name],
        ["level", verdict.level_text],
        ["index", str(verdict.index)],
        ["rigid", str(is_rigid(t))],
        ["T", _braces(t.labels())],
        ["T+T", _braces(doubles)],
    ]
    return report


def cmd_wgroup(args: argparse.Namespace) -> Report:
    model = build_model(args.model)
    w = wgroup_from_model(model)
    words = w.group.relation_words(w.basis_labels)
    report = Report(
        command="wgroup",
        inputs={"model": model.descriptor},
        results={
            "generators": list(w.basis_labels),
            "relations": words,
            "order": w.group.order,
            "type": isomorphism_type(w.group),
            "symbol_rank": w.symbol_rank,
        },
    )
    try:
        chain = semidirect_chain(w.group)
        report.results["chain"] = [[order, factor] for order, factor in chain]
    except HypothesisError as e:
        report.diagnostics.append(str(e))
        chain = []
    report.table = [
        ["generators", f"{len(w.basis_labels)} ({','.join(w.basis_labels)})"],
        ["relations", "; ".join(words) or "(none)"],
        ["order", str(w.group.order)],
        ["type", isomorphism_type(w.group)],
    ]
    if chain:
        report.table.append(["chain", " < ".join(f"{order}:{factor}" for order, factor in chain)])
    logger.debug("%s", presentation_text(w))
    return report


def cmd_witt(args: argparse.Namespace) -> Report:
    model = build_model(args.model)
    if args.prime is not None:
        t, _ = ordering_for_prime(args.prime, getattr(model, "primes", ()))
    else:
        t = _subgroup(model, args.subgroup)
    w = witt_ring(model, t)
    report = Report(
        command="witt",
        inputs={"model": model.descriptor, "subgroup": t.labels()},
        results={"rank": w.rank, "cosets": w.labels, "invariants": list(w.invariants)},
    )
    report.table = [
        ["cosets", ", ".join(w.labels)],
        ["additive group", " x ".join(f"Z/{d}" if d else "Z" for d in w.invariants if d != 1) or "0"],
    ]
    if args.against:
        other = build_model(args.against)
        iso = ring_iso(w, witt_ring(other, SubgroupT.squares(other)))
        report.results["isomorphic_to"] = {other.descriptor: iso}
        report.table.append([f"~ W({other.descriptor})", str(iso)])
    return report


def cmd_lift(args: argparse.Namespace) -> Report:
    model = build_model(args.model)
    report = Report(command="lift", inputs={"model": model.descriptor})
    if args.valuation:
        v = get_valuation(model, args.valuation)
    else:
        if args.subgroup is None:
            names = ", ".join(x.name for x in valuations_of(model)) or "(none)"
            raise DescriptorError(f"give --valuation or --subgroup; valuations of {model.descriptor}: {names}")
        v = find_compatible_valuation(model, _subgroup(model, args.subgroup))
        if v is None:
            raise HypothesisError(f"no built-in valuation of {model.descriptor} is compatible with T")
    report.inputs["valuation"] = v.name

    if args.subgroup is not None:
        t = _subgroup(model, args.subgroup)
        t0 = residue_ordering(v, t)
        report.results["residue"] = {"model": t0.model.descriptor, "subgroup": t0.labels()}
        report.table.append([f"residue in {t0.model.descriptor}", _braces(t0.labels())])
    else:
        if v.residue_model is None:
            raise HypothesisError(f"the {v.name} valuation has residue characteristic 2")
        t0 = _subgroup(v.residue_model, args.residue)
        lifted = lift_ordering(v, t0)
        verdict = classify(lifted)
        report.inputs["residue"] = t0.labels()
        report.results["lift"] = {"subgroup": lifted.labels(), "type": verdict.name, "level": verdict.level}
        report.table += [
            [f"T0 in {t0.model.descriptor}", _braces(t0.labels())],
            ["lift", _braces(lifted.labels())],
            ["type", verdict.name],
        ]
    return report


def cmd_lgp(args: argparse.Namespace) -> Report:
    q = form_from_text(args.entries)
    verdict = hasse_minkowski(q)
    report = Report(command="lgp", inputs={"form": list(q.entries)}, results=verdict.model_dump())
    report.results["summary"] = verdict.summary
    report.table = [["place", "isotropic", "disc square", "hasse"]]
    for pv in verdict.places:
        report.table.append([pv.place, str(pv.isotropic), str(pv.discriminant_square), f"{pv.hasse_invariant:+d}"])
    report.table.append(["global", verdict.summary])
    if q.dim == 3:
        report.results["reciprocity"] = reciprocity_audit(q)
    if args.height_bound is not None:
        witness = rational_point_oracle(q, args.height_bound)
        report.results["witness"] = list(witness) if witness else None
        report.table.append(["witness", str(witness) if witness else f"none up to height {args.height_bound}"])
        if verdict.isotropic and witness is None:
            report.diagnostics.append("isotropic but no point within the height bound")
    return report


def cmd_census(args: argparse.Namespace) -> Report:
    rows = [row.to_entry() for row in two_generator_census()]
    report = Report(command="census", results={"groups": [r.model_dump() for r in rows]})
    report.table = [["relations", "order", "type", "split", "C2 factor", "flagged"]]
    for r in rows:
        report.table.append(
            ["; ".join(r.relations) or "(free)", str(r.order), r.type_name, str(r.split), str(r.has_c2_factor), "*" if r.flagged else ""]
        )
    return report


def cmd_selftest(args: argparse.Namespace) -> Report:
    results = selftest.run_checks(args.check or None)
    report = Report(command="selftest", results={"checks": [r.model_dump() for r in results]})
    report.table = [[r.name, "ok" if r.passed else "FAIL", r.detail] for r in results]
    report.results["passed"] = all(r.passed for r in results)
    return report


# Driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="Square-class orderings, W-groups and Witt rings.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="errors only")
    parser.add_argument("--json", action="store_true", help="print the structured report")
    sub = parser.add_subparsers(dest="command", required=True)

    def model_arg(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--model", required=required, help="descriptor (Qp:2, Tower(R;X), ...) or built-in name (Q2)")

    p = sub.add_parser("classify", help="classify a subgroup T")
    model_arg(p)
    p.add_argument("--subgroup", default="", help="comma-separated class labels spanning T")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("wgroup", help="W-group presentation by symbol duality")
    model_arg(p)
    p.set_defaults(func=cmd_wgroup)

    p = sub.add_parser("witt", help="Witt ring W_T")
    model_arg(p)
    p.add_argument("--subgroup", default="", help="comma-separated class labels spanning T")
    p.add_argument("--prime", type=int, help="use T_p on a QS model")
    p.add_argument("--against", help="compare with W of another model")
    p.set_defaults(func=cmd_witt)

    p = sub.add_parser("lift", help="residue orderings and lifts along a valuation")
    model_arg(p)
    p.add_argument("--valuation", help="valuation selector, e.g. 3-adic or Y-adic/X-adic")
    p.add_argument("--subgroup", help="T on the model; prints its residue ordering")
    p.add_argument("--residue", default="", help="T0 on the residue model to lift (default: squares)")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("lgp", help="Hasse-Minkowski for a diagonal form")
    p.add_argument("entries", nargs="+", help="nonzero integer coefficients")
    p.add_argument("--height-bound", type=int, help="also search rational points up to this height")
    p.set_defaults(func=cmd_lgp)

    p = sub.add_parser("census", help="quotients of the free two-generator group")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("selftest", help="run the end-to-end checks")
    p.add_argument("--check", action="append", choices=list(selftest.CHECKS), help="run only this check (repeatable)")
    p.set_defaults(func=cmd_selftest)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = algebra_config.LOG_LEVEL
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "ERROR"
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one subcommand and print its report.

    Args:
        argv: arguments without the program name (sys.argv[1:] when None)

    Returns:
        process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    _configure_logging(args)

    try:
        report = args.func(args)
    except DescriptorError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AlgebraError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3

    print(report.model_dump_json(indent=2) if args.json else render_table(report))
    if report.command == "selftest" and not report.results.get("passed"):
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
