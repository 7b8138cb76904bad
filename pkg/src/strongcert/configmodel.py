"""Coloring configurations: edge variables, the "sees" relation, caps.

A configuration is a small graph whose edges are the uncolored edges of a
reducible configuration, each with a lower bound on how many colors remain
available to it.  Edge ``i`` is polynomial variable ``x_i``.
"""
from __future__ import annotations

import enum
import itertools
import json
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

Pair = tuple[int, int]


class ConfigurationError(ValueError):
    """Malformed configuration data."""


class InfeasibleConfigurationError(ConfigurationError):
    """Some edge has no available color at all."""


class ReconciliationWarning(UserWarning):
    """A transcribed exception list disagrees with the configuration geometry."""


class Verdict(str, enum.Enum):
    INFEASIBLE = "INFEASIBLE"
    UNKNOWN = "UNKNOWN"


def _norm_pair(p: Sequence[int]) -> Pair:
    i, j = int(p[0]), int(p[1])
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class ConfigGraph:
    num_vertices: int
    edges: tuple[Pair, ...]
    availability: tuple[int, ...]
    vertices: tuple[str, ...] | None = None
    # Already-colored edges of the drawing.  They never become variables and
    # derived conflicts ignore them; the audit uses them as a second geometry.
    context_edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        ctx = tuple((int(u), int(v)) for u, v in self.context_edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "context_edges", ctx)
        object.__setattr__(self, "availability", tuple(int(a) for a in self.availability))
        if self.vertices is not None:
            object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
            if len(self.vertices) != self.num_vertices:
                raise ConfigurationError("vertex label count differs from num_vertices")
        seen = set()
        for u, v in edges + ctx:
            if u == v:
                raise ConfigurationError(f"loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ConfigurationError(f"edge ({u}, {v}) has an unknown endpoint")
            key = frozenset((u, v))
            if key in seen:
                raise ConfigurationError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        if len(self.availability) != len(edges):
            raise ConfigurationError(
                f"{len(self.availability)} availabilities for {len(edges)} edges"
            )
        if any(a < 0 for a in self.availability):
            raise ConfigurationError("availability must be non-negative")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def label(self, vertex: int) -> str:
        return self.vertices[vertex] if self.vertices else str(vertex)


@dataclass(frozen=True)
class ConflictSpec:
    mode: str = "derived"
    pairs: tuple[Pair, ...] = ()

    MODES = ("derived", "explicit_conflicts", "explicit_exceptions")

    def __post_init__(self):
        if self.mode not in self.MODES:
            raise ConfigurationError(f"unknown conflict mode {self.mode!r}")
        pairs = tuple(_norm_pair(p) for p in self.pairs)
        for i, j in pairs:
            if i == j:
                raise ConfigurationError(f"conflict pair ({i}, {j}) repeats an edge")
        if len(set(pairs)) != len(pairs):
            raise ConfigurationError("conflict pairs must be listed once each")
        object.__setattr__(self, "pairs", pairs)


@dataclass(frozen=True)
class Configuration:
    graph: ConfigGraph
    conflicts: ConflictSpec = field(default_factory=ConflictSpec)
    name: str = ""
    # (exponents, coefficient) as printed alongside the configuration
    claimed_witness: tuple[tuple[int, ...], int] | None = None
    # exception pairs as transcribed, duplicates preserved
    claimed_exceptions: tuple[Pair, ...] | None = None
    availability_override: tuple[int, ...] | None = None
    override_reason: str = ""

    def __post_init__(self):
        n = self.graph.num_edges
        for i, j in self.conflicts.pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ConfigurationError(f"pair ({i}, {j}) references a missing edge")
        if self.availability_override is not None:
            ov = tuple(int(a) for a in self.availability_override)
            if len(ov) != n:
                raise ConfigurationError("availability override has the wrong length")
            object.__setattr__(self, "availability_override", ov)
        if self.claimed_witness is not None:
            exps, coeff = self.claimed_witness
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ConfigurationError("claimed witness has the wrong length")
            object.__setattr__(self, "claimed_witness", (exps, int(coeff)))
        if self.claimed_exceptions is not None:
            object.__setattr__(
                self, "claimed_exceptions", tuple(_norm_pair(p) for p in self.claimed_exceptions)
            )

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges

    @property
    def availability(self) -> tuple[int, ...]:
        """Availability used for caps: the override when present, else the printed one."""
        if self.availability_override is not None:
            return self.availability_override
        return self.graph.availability

    @property
    def availability_source(self) -> str:
        return "override" if self.availability_override is not None else "printed"

    def with_availability(self, availability: Sequence[int]) -> "Configuration":
        return Configuration(
            self.graph, self.conflicts, self.name, self.claimed_witness,
            self.claimed_exceptions, tuple(availability), "caller override",
        )


def _adjacency(edges: Iterable[Pair]) -> set[frozenset]:
    return {frozenset(e) for e in edges}


def _sees(e: Pair, f: Pair, adj: set[frozenset]) -> bool:
    if set(e) & set(f):
        return True
    return any(frozenset((x, y)) in adj for x in e for y in f)


def sees(g: ConfigGraph, e: int, f: int) -> bool:
    """Whether edges ``e`` and ``f`` lie together on a path or cycle of length at most 3."""
    n = g.num_edges
    if not (0 <= e < n and 0 <= f < n):
        raise IndexError(f"edge id out of range: {e}, {f}")
    if e == f:
        raise ValueError("an edge is not compared with itself")
    return _sees(g.edges[e], g.edges[f], _adjacency(g.edges))


def derived_conflicts(g: ConfigGraph, *, with_context: bool = False) -> list[Pair]:
    edges = g.edges
    adj = _adjacency(edges + (g.context_edges if with_context else ()))
    return [
        (i, j)
        for i, j in itertools.combinations(range(len(edges)), 2)
        if _sees(edges[i], edges[j], adj)
    ]


def derived_exceptions(g: ConfigGraph, *, with_context: bool = False) -> list[Pair]:
    conflicts = set(derived_conflicts(g, with_context=with_context))
    return [p for p in itertools.combinations(range(g.num_edges), 2) if p not in conflicts]


def conflict_terms(c: Configuration) -> list[Pair]:
    """Binomial factors ``(i, j)``, ``i < j``, of the coloring polynomial, sorted."""
    mode = c.conflicts.mode
    if mode == "derived":
        return derived_conflicts(c.graph)
    if mode == "explicit_conflicts":
        return sorted(c.conflicts.pairs)
    exceptions = set(c.conflicts.pairs)
    if c.graph.edges:
        clash = sorted(p for p in exceptions if sees(c.graph, *p))
        if clash:
            warnings.warn(
                f"{c.name or 'configuration'}: exception pairs {clash} see each other geometrically",
                ReconciliationWarning,
                stacklevel=2,
            )
    return [p for p in itertools.combinations(range(c.num_edges), 2) if p not in exceptions]


@dataclass
class AuditReport:
    claimed_but_conflicting: list[Pair]
    missing_from_claims: list[Pair]
    duplicates: dict[Pair, int]
    claimed_count: int
    claimed_distinct: int
    derived_exception_count: int
    derived_term_count: int
    claimed_term_count: int
    witness_degree: int | None = None
    context: dict[str, Any] | None = None

    @property
    def consistent(self) -> bool:
        return not (self.claimed_but_conflicting or self.missing_from_claims or self.duplicates)

    def to_json(self) -> dict[str, Any]:
        out = {
            "consistent": self.consistent,
            "claimed_but_conflicting": [list(p) for p in self.claimed_but_conflicting],
            "missing_from_claims": [list(p) for p in self.missing_from_claims],
            "duplicates": [[list(p), n] for p, n in sorted(self.duplicates.items())],
            "claimed_count": self.claimed_count,
            "claimed_distinct": self.claimed_distinct,
            "derived_exception_count": self.derived_exception_count,
            "derived_term_count": self.derived_term_count,
            "claimed_term_count": self.claimed_term_count,
            "witness_degree": self.witness_degree,
        }
        if self.witness_degree is not None:
            out["derived_degree_gap"] = self.derived_term_count - self.witness_degree
            out["claimed_degree_gap"] = self.claimed_term_count - self.witness_degree
        if self.context is not None:
            out["context"] = self.context
        return out


def audit_against_exceptions(
    c: Configuration, claimed_exceptions: Sequence[Sequence[int]] | None = None
) -> AuditReport:
    """Compare a transcribed exception list with the geometric one.

    Defaults to the configuration's own ``claimed_exceptions``.  Duplicated
    claims are counted, never silently merged.
    """
    if claimed_exceptions is None:
        claimed_exceptions = c.claimed_exceptions or ()
    if not c.graph.edges:
        raise ConfigurationError("audit needs edge geometry")
    claimed = [_norm_pair(p) for p in claimed_exceptions]
    counts = Counter(claimed)
    distinct = set(counts)
    derived_exc = set(derived_exceptions(c.graph))
    total_pairs = c.num_edges * (c.num_edges - 1) // 2
    report = AuditReport(
        claimed_but_conflicting=sorted(distinct - derived_exc),
        missing_from_claims=sorted(derived_exc - distinct),
        duplicates={p: n for p, n in counts.items() if n > 1},
        claimed_count=len(claimed),
        claimed_distinct=len(distinct),
        derived_exception_count=len(derived_exc),
        derived_term_count=total_pairs - len(derived_exc),
        claimed_term_count=total_pairs - len(distinct),
        witness_degree=sum(c.claimed_witness[0]) if c.claimed_witness else None,
    )
    if c.graph.context_edges:
        ctx_exc = set(derived_exceptions(c.graph, with_context=True))
        report.context = {
            "context_edges": [list(e) for e in c.graph.context_edges],
            "exception_count": len(ctx_exc),
            "term_count": total_pairs - len(ctx_exc),
            "conflicts_only_through_context": [list(p) for p in sorted(derived_exc - ctx_exc)],
            "matches_claims": ctx_exc == distinct,
        }
    return report


def caps_from_availability(c: Configuration) -> tuple[int, ...]:
    """Largest usable exponent per edge variable: availability minus one."""
    bad = [i for i, a in enumerate(c.availability) if a < 1]
    if bad:
        raise InfeasibleConfigurationError(f"edges {bad} have no available color")
    return tuple(a - 1 for a in c.availability)


def prescreen(c: Configuration) -> Verdict:
    """INFEASIBLE when the caps cannot hold a monomial of the product's degree."""
    cap_sum = sum(max(a - 1, 0) for a in c.availability)
    if any(a < 1 for a in c.availability) or cap_sum < len(conflict_terms(c)):
        return Verdict.INFEASIBLE
    return Verdict.UNKNOWN


# -- JSON -------------------------------------------------------------------


def config_from_json(doc: dict[str, Any]) -> Configuration:
    try:
        edges = doc["edges"]
        availability = doc["availability"]
        num_vertices = doc["num_vertices"]
    except KeyError as exc:
        raise ConfigurationError(f"missing field {exc.args[0]!r}") from None
    try:
        graph = ConfigGraph(
            num_vertices=int(num_vertices),
            edges=tuple(tuple(e) for e in edges),
            availability=tuple(availability),
            vertices=tuple(doc["vertices"]) if doc.get("vertices") else None,
            context_edges=tuple(tuple(e) for e in doc.get("context_edges", ())),
        )
        conf = doc.get("conflicts", {"mode": "derived"})
        conflicts = ConflictSpec(conf.get("mode", "derived"), tuple(conf.get("pairs", ())))
        witness = doc.get("claimed_witness")
        override = doc.get("availability_override")
        return Configuration(
            graph=graph,
            conflicts=conflicts,
            name=doc.get("name", ""),
            claimed_witness=(tuple(witness["exponents"]), witness["coefficient"]) if witness else None,
            claimed_exceptions=tuple(tuple(p) for p in doc["claimed_exceptions"])
            if doc.get("claimed_exceptions") is not None else None,
            availability_override=tuple(override["values"]) if override else None,
            override_reason=override.get("reason", "") if override else "",
        )
    except (TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(str(exc)) from exc


def config_to_json(c: Configuration) -> dict[str, Any]:
    g = c.graph
    doc: dict[str, Any] = {
        "schema": 1,
        "name": c.name,
        "num_vertices": g.num_vertices,
        "edges": [list(e) for e in g.edges],
        "availability": list(g.availability),
        "conflicts": {"mode": c.conflicts.mode},
    }
    if g.vertices:
        doc["vertices"] = list(g.vertices)
    if c.conflicts.mode != "derived":
        doc["conflicts"]["pairs"] = [list(p) for p in c.conflicts.pairs]
    if g.context_edges:
        doc["context_edges"] = [list(e) for e in g.context_edges]
    if c.claimed_witness:
        doc["claimed_witness"] = {
            "exponents": list(c.claimed_witness[0]), "coefficient": c.claimed_witness[1]
        }
    if c.claimed_exceptions is not None:
        doc["claimed_exceptions"] = [list(p) for p in c.claimed_exceptions]
    if c.availability_override is not None:
        doc["availability_override"] = {
            "values": list(c.availability_override), "reason": c.override_reason
        }
    return doc


def load_config(path: str | Path) -> Configuration:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{path}: expected a JSON object")
    return config_from_json(doc)
