"""Nullstellensatz reducibility checks for coloring configurations.

A configuration is certified when the product of ``(x_i - x_j)`` over its
conflicting edge pairs has a nonzero monomial whose exponent on every edge
is below that edge's availability.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Sequence

from .configmodel import (
    Configuration,
    ConfigurationError,
    InfeasibleConfigurationError,
    Verdict,
    audit_against_exceptions,
    caps_from_availability,
    config_from_json,
    conflict_terms,
    prescreen,
)
from .polycore import CappedPolynomial
from .schedule import ReductionStats, reduce_product

BUNDLED_CONFIGS = (
    "five_face_case1",
    "five_face_case2",
    "h_config_case1",
    "h_config_case2",
    "h_config_case3",
    "h_config_case4",
)


class UnknownFixtureError(KeyError):
    pass


@dataclass(frozen=True)
class Witness:
    exponents: tuple[int, ...]
    coefficient: int

    def to_json(self) -> dict[str, Any]:
        return {"exponents": list(self.exponents), "coefficient": self.coefficient}


@dataclass
class ReducibilityReport:
    config_id: str
    term_count: int
    cap_sum: int
    prescreen: str
    witness: Witness | None = None
    all_witness_count: int = 0
    claimed_witness_check: dict[str, Any] | None = None
    availability_source: str = "printed"
    certificate_source: str = "derived"
    audit: dict[str, Any] | None = None
    alternatives: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] | None = None

    @property
    def claimed_match(self) -> bool | None:
        if self.claimed_witness_check is None:
            return None
        return self.claimed_witness_check["match"]

    def to_json(self, *, with_stats: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema": 1,
            "config": self.config_id,
            "term_count": self.term_count,
            "cap_sum": self.cap_sum,
            "prescreen": self.prescreen,
            "availability_source": self.availability_source,
            "certificate_source": self.certificate_source,
            "witness": self.witness.to_json() if self.witness else None,
            "all_witness_count": self.all_witness_count,
            "claimed_witness_check": self.claimed_witness_check,
        }
        if self.audit is not None:
            out["audit"] = self.audit
        if self.alternatives:
            out["alternatives"] = self.alternatives
        if with_stats and self.stats is not None:
            out["stats"] = self.stats
        return out


def reduce_configuration(
    c: Configuration, *, order: str = "greedy", stats: ReductionStats | None = None
) -> CappedPolynomial:
    """The coloring polynomial of ``c`` reduced under its availability caps."""
    return reduce_product(conflict_terms(c), caps_from_availability(c), order=order, stats=stats)


def find_witness(
    c: Configuration,
    *,
    order: str = "greedy",
    force: bool = False,
    stats: ReductionStats | None = None,
) -> Witness | None:
    """Lexicographically smallest surviving monomial, or ``None`` if nothing survives."""
    if not force and prescreen(c) is Verdict.INFEASIBLE:
        raise InfeasibleConfigurationError(
            f"{c.name or 'configuration'}: cap sum is below the number of conflict terms"
        )
    p = reduce_configuration(c, order=order, stats=stats)
    if not len(p):
        return None
    exps, coeff = p.surviving_monomials()[0]
    return Witness(exps, coeff)


def check_monomial(
    c: Configuration,
    exps: Sequence[int],
    *,
    tighten: bool = True,
    terms: Sequence[tuple[int, int]] | None = None,
    order: str = "greedy",
    stats: ReductionStats | None = None,
) -> int:
    """Coefficient of ``exps`` in the reduced coloring polynomial (0 when pruned).

    With ``tighten`` the caps shrink to ``exps`` and monomials that can no
    longer reach ``exps`` are dropped as the product grows.  ``terms``
    replaces the configuration's own conflict list.
    """
    exps = tuple(int(e) for e in exps)
    if len(exps) != c.num_edges:
        raise ConfigurationError(f"expected {c.num_edges} exponents, got {len(exps)}")
    caps = caps_from_availability(c)
    terms = list(conflict_terms(c) if terms is None else terms)
    if any(e < 0 for e in exps) or any(e > cap for e, cap in zip(exps, caps)):
        return 0
    if sum(exps) != len(terms):
        return 0
    if not tighten:
        return reduce_product(terms, caps, order=order, stats=stats).coefficient(exps)
    tight = tuple(min(cap, e) for cap, e in zip(caps, exps))
    p = reduce_product(terms, tight, order=order, stats=stats, lower=exps)
    return p.coefficient(exps)


def fixture_names() -> tuple[str, ...]:
    return BUNDLED_CONFIGS


def fixture_document(name: str) -> dict[str, Any]:
    """Raw JSON of a bundled fixture (configurations, graphs or embeddings)."""
    path = resources.files("strongcert") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise UnknownFixtureError(name)
    return json.loads(path.read_text())


def load_fixture(name: str) -> Configuration:
    if name not in BUNDLED_CONFIGS:
        raise UnknownFixtureError(name)
    return config_from_json(fixture_document(name))


def run_configuration(
    c: Configuration, *, search: bool = True, with_audit: bool = True, order: str = "greedy"
) -> ReducibilityReport:
    """Full report: prescreen, witness search, claimed-witness check, audit."""
    t0 = time.perf_counter()
    terms = conflict_terms(c)
    verdict = prescreen(c)
    cap_sum = sum(max(a - 1, 0) for a in c.availability)
    report = ReducibilityReport(
        config_id=c.name,
        term_count=len(terms),
        cap_sum=cap_sum,
        prescreen=verdict.value,
        availability_source=c.availability_source,
        certificate_source=c.conflicts.mode,
    )
    stats = ReductionStats()
    if verdict is not Verdict.INFEASIBLE and search:
        p = reduce_configuration(c, order=order, stats=stats)
        report.all_witness_count = len(p)
        if len(p):
            exps, coeff = p.surviving_monomials()[0]
            report.witness = Witness(exps, coeff)
        if c.claimed_witness is not None:
            claimed_exps, claimed_coeff = c.claimed_witness
            computed = p.coefficient(claimed_exps)
    elif c.claimed_witness is not None and verdict is not Verdict.INFEASIBLE:
        claimed_exps, claimed_coeff = c.claimed_witness
        computed = check_monomial(c, claimed_exps, order=order, stats=stats)
    else:
        computed = 0
    if c.claimed_witness is not None:
        claimed_exps, claimed_coeff = c.claimed_witness
        report.claimed_witness_check = {
            "exponents": list(claimed_exps),
            "claimed": claimed_coeff,
            "computed": computed,
            "match": computed == claimed_coeff,
        }

    if with_audit and c.claimed_exceptions is not None and c.graph.edges:
        audit = audit_against_exceptions(c)
        report.audit = audit.to_json()
        if c.claimed_witness is not None:
            # The printed exception list defines a second polynomial; when it
            # differs from the derived one, report its verdict as well.
            printed_exc = set(c.claimed_exceptions)
            printed_terms = [
                (i, j)
                for i in range(c.num_edges)
                for j in range(i + 1, c.num_edges)
                if (i, j) not in printed_exc
            ]
            if printed_terms != terms:
                claimed_exps, claimed_coeff = c.claimed_witness
                alt = 0
                if verdict is not Verdict.INFEASIBLE:
                    alt = check_monomial(c, claimed_exps, terms=printed_terms)
                report.alternatives.append({
                    "source": "claimed_exceptions",
                    "term_count": len(printed_terms),
                    "claimed": claimed_coeff,
                    "computed": alt,
                    "match": alt == claimed_coeff,
                })

    report.stats = {
        "peak_monomials": stats.peak_monomials,
        "batches": len(stats.batches),
        "seconds": round(time.perf_counter() - t0, 3),
    }
    return report


def run_fixture(
    name: str, *, availability: Sequence[int] | None = None, search: bool = True
) -> ReducibilityReport:
    c = load_fixture(name)
    if availability is not None:
        c = c.with_availability(availability)
    return run_configuration(c, search=search)
