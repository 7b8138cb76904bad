"""Brute-force ground truth for the algebraic certificates.

Explicit list coloring, systems of distinct representatives, exact strong
chromatic index and Ore-degree.  Everything here is exhaustive search and
independent of the polynomial machinery.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Collection, Iterable, Sequence

from .configmodel import Configuration, conflict_terms

PALETTE = 13


class SoundnessError(AssertionError):
    """A certified configuration failed a list-coloring trial."""

    def __init__(self, report: "ProbeReport"):
        super().__init__(f"list assignment not colorable: {report.counterexample}")
        self.report = report


@dataclass(frozen=True)
class ColoredGraph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...] | None = None

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if u == v or not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"bad edge ({u}, {v})")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        if self.colors is not None and len(self.colors) != len(edges):
            raise ValueError("one color per edge expected")

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "ColoredGraph":
        return cls(int(doc["num_vertices"]), tuple(tuple(e) for e in doc["edges"]))

    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset, ...]
    universe: frozenset = field(default=frozenset(range(PALETTE)))

    def __post_init__(self):
        lists = tuple(frozenset(s) for s in self.lists)
        object.__setattr__(self, "lists", lists)
        for s in lists:
            if not s:
                raise ValueError("every list needs at least one color")
            if not s <= self.universe:
                raise ValueError("list color outside the universe")


def list_colorable(
    conflicts: Iterable[Sequence[int]], lists: Sequence[Collection[int]] | ListAssignment
) -> tuple[int, ...] | None:
    """A coloring choosing from each list with conflicting pairs distinct, or ``None``.

    Backtracking on the variable with the fewest remaining options, with
    forward checking.
    """
    if isinstance(lists, ListAssignment):
        lists = lists.lists
    n = len(lists)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for i, j in conflicts:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"conflict ({i}, {j}) out of range")
        if i != j:
            nbrs[i].add(j)
            nbrs[j].add(i)
    domains = [set(s) for s in lists]
    assignment: list[int | None] = [None] * n

    def solve(unassigned: set[int]) -> bool:
        if not unassigned:
            return True
        var = min(unassigned, key=lambda v: (len(domains[v]), -len(nbrs[v]), v))
        if not domains[var]:
            return False
        unassigned.discard(var)
        for color in sorted(domains[var]):
            pruned = []
            ok = True
            for w in nbrs[var]:
                if assignment[w] is None and color in domains[w]:
                    domains[w].discard(color)
                    pruned.append(w)
                    if not domains[w]:
                        ok = False
            assignment[var] = color
            if ok and solve(unassigned):
                return True
            assignment[var] = None
            for w in pruned:
                domains[w].add(color)
        unassigned.add(var)
        return False

    if solve(set(range(n))):
        return tuple(assignment)  # type: ignore[arg-type]
    return None


def sdr(sets: Sequence[Collection[int]]) -> tuple[int, ...] | None:
    """Distinct representatives, one per set, by augmenting paths; ``None`` if Hall fails."""
    owner: dict[int, int] = {}
    order = [sorted(s) for s in sets]

    def augment(i: int, visited: set[int]) -> bool:
        for x in order[i]:
            if x in visited:
                continue
            visited.add(x)
            if x not in owner or augment(owner[x], visited):
                owner[x] = i
                return True
        return False

    for i in range(len(order)):
        if not augment(i, set()):
            return None
    rep = [0] * len(order)
    for x, i in owner.items():
        rep[i] = x
    return tuple(rep)


def hall_condition(sets: Sequence[Collection[int]]) -> bool:
    """Every subfamily of k sets has a union of size at least k (checked over all 2^n subfamilies)."""
    sets = [frozenset(s) for s in sets]
    for k in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, k):
            if len(frozenset().union(*combo)) < k:
                return False
    return True


def strong_conflicts(g: ColoredGraph) -> list[tuple[int, int]]:
    """Pairs of edges at distance at most 2 in the line graph."""
    adj = [set() for _ in range(g.num_vertices)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    out = []
    for i, j in itertools.combinations(range(len(g.edges)), 2):
        (a, b), (c, d) = g.edges[i], g.edges[j]
        if {a, b} & {c, d} or any(y in adj[x] for x in (a, b) for y in (c, d)):
            out.append((i, j))
    return out


def _k_colorable(n: int, nbrs: list[set[int]], k: int) -> list[int] | None:
    """Proper k-coloring search; a vertex may only open the next unused color."""
    if n == 0:
        return []
    colors = [-1] * n
    # Highest degree first keeps early branching small.
    order = sorted(range(n), key=lambda v: (-len(nbrs[v]), v))

    def pick() -> int | None:
        best, best_key = None, None
        for v in order:
            if colors[v] >= 0:
                continue
            used = {colors[w] for w in nbrs[v] if colors[w] >= 0}
            key = (-len(used), -len(nbrs[v]))
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def solve(assigned: int, used_colors: int) -> bool:
        if assigned == n:
            return True
        v = pick()
        blocked = {colors[w] for w in nbrs[v] if colors[w] >= 0}
        for c in range(min(used_colors + 1, k)):
            if c in blocked:
                continue
            colors[v] = c
            if solve(assigned + 1, max(used_colors, c + 1)):
                return True
        colors[v] = -1
        return False

    return colors if solve(0, 0) else None


def strong_chromatic_index(g: ColoredGraph, max_colors: int) -> int | None:
    """Least number of colors in a strong edge coloring, or ``None`` if above ``max_colors``."""
    if max_colors < 1:
        raise ValueError("max_colors must be at least 1")
    m = len(g.edges)
    if m == 0:
        return 0
    nbrs: list[set[int]] = [set() for _ in range(m)]
    for i, j in strong_conflicts(g):
        nbrs[i].add(j)
        nbrs[j].add(i)
    for k in range(1, max_colors + 1):
        if _k_colorable(m, nbrs, k) is not None:
            return k
    return None


def strong_edge_coloring(g: ColoredGraph, k: int) -> list[int] | None:
    """Some strong edge coloring with at most ``k`` colors, if one exists."""
    m = len(g.edges)
    nbrs: list[set[int]] = [set() for _ in range(m)]
    for i, j in strong_conflicts(g):
        nbrs[i].add(j)
        nbrs[j].add(i)
    return _k_colorable(m, nbrs, k)


def ore_degree(g: ColoredGraph) -> int:
    if not g.edges:
        raise ValueError("Ore-degree needs at least one edge")
    deg = g.degrees()
    return max(deg[u] + deg[v] for u, v in g.edges)


@dataclass
class ProbeReport:
    trials: int
    successes: int
    seed: int
    counterexample: list[list[int]] | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "seed": self.seed,
            "counterexample": self.counterexample,
        }


def cn_soundness_probe(
    c: Configuration,
    trials: int,
    seed: int,
    *,
    universe: int = PALETTE,
    strict: bool = True,
) -> ProbeReport:
    """Draw random lists of the configuration's sizes and color each one explicitly.

    Only meaningful for configurations with a verified witness, where every
    draw must be colorable.  ``strict`` raises on the first failure.
    """
    sizes = c.availability
    if any(a < 1 or a > universe for a in sizes):
        raise ValueError(f"list sizes {sizes} do not fit a {universe}-color universe")
    terms = conflict_terms(c)
    rng = random.Random(seed)
    report = ProbeReport(trials=trials, successes=0, seed=seed)
    palette = list(range(universe))
    for _ in range(trials):
        lists = [sorted(rng.sample(palette, a)) for a in sizes]
        if list_colorable(terms, lists) is not None:
            report.successes += 1
        elif report.counterexample is None:
            report.counterexample = lists
            if strict:
                raise SoundnessError(report)
    return report
