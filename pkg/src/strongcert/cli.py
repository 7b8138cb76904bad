"""Command-line entry point.

Every subcommand prints one JSON report on stdout and exits with 0 when the
checked property holds, 1 when it does not and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from . import engine, oracle, plane
from .configmodel import (
    Configuration,
    ConfigurationError,
    InfeasibleConfigurationError,
    audit_against_exceptions,
    config_from_json,
)
from .polycore import CoefficientOverflowError

log = logging.getLogger("strongcert")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def read_document(path: str) -> dict[str, Any]:
    """Load a JSON file; names of bundled fixtures work without the file on disk."""
    p = Path(path)
    if p.is_file():
        try:
            doc = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from exc
    else:
        stem = p.name[:-5] if p.name.endswith(".json") else p.name
        try:
            doc = engine.fixture_document(stem)
        except engine.UnknownFixtureError:
            raise InputError(f"{path}: no such file or bundled fixture") from None
        log.info("%s: using bundled fixture %s", path, stem)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    return doc


def read_config(path: str) -> Configuration:
    c = config_from_json(read_document(path))
    if not c.name:
        c = Configuration(
            graph=c.graph, conflicts=c.conflicts, name=Path(path).stem,
            claimed_witness=c.claimed_witness, claimed_exceptions=c.claimed_exceptions,
            availability_override=c.availability_override, override_reason=c.override_reason,
        )
    return c


def emit(report: Any) -> None:
    json.dump(report, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def _parse_exponents(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}") from None


def cmd_reduce(args) -> int:
    c = read_config(args.config)
    if args.target is not None:
        stats = engine.ReductionStats()
        coeff = engine.check_monomial(c, args.target, order=args.order, stats=stats)
        report: dict[str, Any] = {
            "schema": 1,
            "config": c.name,
            "target": list(args.target),
            "coefficient": coeff,
            "availability_source": c.availability_source,
        }
        if args.stats:
            report["stats"] = {"peak_monomials": stats.peak_monomials,
                               "batches": len(stats.batches),
                               "seconds": round(stats.seconds, 3)}
        emit(report)
        return EXIT_OK if coeff != 0 else EXIT_FAIL
    result = engine.run_configuration(c, order=args.order)
    emit(result.to_json(with_stats=args.stats))
    if result.witness is None:
        log.warning("%s: no surviving monomial", c.name)
        return EXIT_FAIL
    return EXIT_OK


def _fixture_row(name: str, with_stats: bool) -> tuple[dict[str, Any], bool]:
    report = engine.run_fixture(name)
    ok = bool(report.claimed_match)
    if not ok:
        chk = report.claimed_witness_check or {}
        log.warning("%s: claimed coefficient %s, computed %s",
                    name, chk.get("claimed"), chk.get("computed"))
    return report.to_json(with_stats=with_stats), ok


def cmd_fixture(args) -> int:
    if args.all:
        rows, all_ok = [], True
        for name in engine.fixture_names():
            log.info("running %s", name)
            row, ok = _fixture_row(name, args.stats)
            rows.append(row)
            all_ok = all_ok and ok
        emit(rows)
        return EXIT_OK if all_ok else EXIT_FAIL
    if args.name is None:
        raise InputError("give a fixture name or --all")
    if args.name not in engine.fixture_names():
        raise InputError(f"unknown fixture {args.name!r}; known: {', '.join(engine.fixture_names())}")
    row, ok = _fixture_row(args.name, args.stats)
    emit(row)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_chi_s(args) -> int:
    doc = read_document(args.graph)
    try:
        g = oracle.ColoredGraph.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{args.graph}: malformed graph ({exc})") from exc
    k = oracle.strong_chromatic_index(g, args.max)
    report = {
        "schema": 1,
        "graph": doc.get("name", Path(args.graph).stem),
        "num_vertices": g.num_vertices,
        "num_edges": len(g.edges),
        "ore_degree": oracle.ore_degree(g) if g.edges else None,
        "max_colors": args.max,
        "chi_s": k,
        "exceeds_max": k is None,
    }
    emit(report)
    return EXIT_OK if k is not None else EXIT_FAIL


def cmd_discharge(args) -> int:
    pg = plane.PlaneGraph.from_json(read_document(args.plane))
    ledger = plane.discharge(pg)
    emit(ledger.to_json())
    if ledger.initial_total != -12 or ledger.final_total != -12:
        log.warning("total charge %s, expected -12", ledger.final_total)
        return EXIT_FAIL
    return EXIT_OK


def cmd_probe(args) -> int:
    c = read_config(args.config)
    report = oracle.cn_soundness_probe(c, args.trials, args.seed, strict=False)
    out = {"schema": 1, "config": c.name, **report.to_json()}
    emit(out)
    if report.successes != report.trials:
        log.error("list assignment not colorable: %s", report.counterexample)
        return EXIT_FAIL
    return EXIT_OK


def cmd_audit(args) -> int:
    c = read_config(args.config)
    if c.claimed_exceptions is None:
        raise InputError(f"{args.config}: no claimed_exceptions to audit")
    audit = audit_against_exceptions(c)
    emit({"schema": 1, "config": c.name, **audit.to_json()})
    if not audit.consistent:
        if audit.duplicates:
            log.warning("duplicated printed factors: %s", sorted(audit.duplicates))
        if audit.claimed_but_conflicting:
            log.warning("claimed exceptions that do conflict: %s", audit.claimed_but_conflicting)
        if audit.missing_from_claims:
            log.warning("derived exceptions missing from claims: %s", audit.missing_from_claims)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strongcert",
        description="Nullstellensatz certificates and checks for strong edge coloring.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more diagnostics on stderr (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a configuration's coloring polynomial")
    p.add_argument("config", help="configuration JSON (or bundled fixture name)")
    p.add_argument("--order", choices=("greedy", "input"), default="greedy")
    p.add_argument("--stats", action="store_true", help="include timing and size statistics")
    p.add_argument("--target", type=_parse_exponents, default=None,
                   help="comma-separated exponents; report only this coefficient")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("fixture", help="check a bundled certified configuration")
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true", help="run every bundled configuration")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("chi-s", help="exact strong chromatic index")
    p.add_argument("graph")
    p.add_argument("--max", type=int, default=13, help="largest number of colors to try")
    p.set_defaults(func=cmd_chi_s)

    p = sub.add_parser("discharge", help="apply the discharging rules to a plane graph")
    p.add_argument("plane")
    p.set_defaults(func=cmd_discharge)

    p = sub.add_parser("probe", help="random list-coloring trials on a configuration")
    p.add_argument("config")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("audit", help="compare printed exceptions with the geometry")
    p.add_argument("config")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (InputError, ConfigurationError, plane.EmbeddingError,
            IndexError, ValueError, OSError) as exc:
        if isinstance(exc, InfeasibleConfigurationError):
            log.error("%s", exc)
            return EXIT_FAIL
        log.error("%s", exc)
        return EXIT_ERROR
    except CoefficientOverflowError as exc:
        log.error("coefficient overflow: %s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
