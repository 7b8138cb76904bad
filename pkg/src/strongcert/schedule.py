"""Greedy term ordering and the batched reduction driver."""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .polycore import CappedPolynomial, multiply_binomial, poly_one

log = logging.getLogger(__name__)

Term = tuple[int, int]


@dataclass(frozen=True)
class OrderedTermList:
    terms: tuple[Term, ...]
    # appearance_counts[n][i]: occurrences of variable i among the first n terms
    appearance_counts: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BatchPlan:
    batches: tuple[tuple[Term, ...], ...]

    @property
    def terms(self) -> tuple[Term, ...]:
        return tuple(t for b in self.batches for t in b)


@dataclass
class BatchStat:
    first: int
    last: int
    before_prune: int
    after_prune: int
    seconds: float


@dataclass
class ReductionStats:
    peak_monomials: int = 1
    batches: list[BatchStat] = field(default_factory=list)
    seconds: float = 0.0


def _prefix_counts(terms: Sequence[Term], num_vars: int) -> tuple[tuple[int, ...], ...]:
    counts = [0] * num_vars
    out = [tuple(counts)]
    for a, b in terms:
        counts[a] += 1
        counts[b] += 1
        out.append(tuple(counts))
    return tuple(out)


def input_order(terms: Sequence[Sequence[int]], num_vars: int) -> OrderedTermList:
    terms = tuple((int(a), int(b)) for a, b in terms)
    return OrderedTermList(terms, _prefix_counts(terms, num_vars))


def greedy_order(terms: Sequence[Sequence[int]], avail: Sequence[float]) -> OrderedTermList:
    """Order terms so the next one always has the least residual availability.

    The residual of a term ``(a, b)`` is ``min(avail[a] - seen[a], avail[b] - seen[b])``
    where ``seen`` counts occurrences among terms already chosen.  Ties go to
    the earliest term in the input.
    """
    terms = [(int(a), int(b)) for a, b in terms]
    n = len(avail)
    for a, b in terms:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"term ({a}, {b}) out of range for {n} variables")
    seen = [0] * n
    remaining = list(range(len(terms)))
    chosen: list[Term] = []
    while remaining:
        best_pos = 0
        best = math.inf
        for pos, k in enumerate(remaining):
            a, b = terms[k]
            r = min(avail[a] - seen[a], avail[b] - seen[b])
            if r < best:
                best, best_pos = r, pos
        a, b = terms[remaining.pop(best_pos)]
        chosen.append((a, b))
        seen[a] += 1
        seen[b] += 1
    return OrderedTermList(tuple(chosen), _prefix_counts(chosen, n))


def batch_partition(ordered: OrderedTermList, avail: Sequence[float]) -> BatchPlan:
    """Cut the ordered list each time some variable's running count first hits its availability."""
    counts = [0] * len(avail)
    batches: list[tuple[Term, ...]] = []
    current: list[Term] = []
    for a, b in ordered.terms:
        counts[a] += 1
        counts[b] += 1
        current.append((a, b))
        if counts[a] == avail[a] or counts[b] == avail[b]:
            batches.append(tuple(current))
            current = []
    if current:
        batches.append(tuple(current))
    return BatchPlan(tuple(batches))


def reduce_product(
    terms: Sequence[Sequence[int]],
    caps: Sequence[int],
    *,
    order: str = "greedy",
    prune: str = "factor",
    stats: ReductionStats | None = None,
    lower: Sequence[int] | None = None,
) -> CappedPolynomial:
    """Product of the binomials ``terms`` keeping only monomials within ``caps``.

    ``order`` is ``"greedy"`` or ``"input"``.  ``prune="factor"`` discards
    cap-violating monomials after every factor, ``prune="batch"`` only at
    batch boundaries; both give the same polynomial.  ``lower``, when given,
    is a target exponent vector: monomials that can no longer reach it with
    the factors still to come are dropped too (used for single-coefficient
    queries, the result then only guarantees coefficients at ``lower``).
    """
    caps = tuple(int(c) for c in caps)
    num_vars = len(caps)
    avail = [c + 1 for c in caps]
    if order == "greedy":
        ordered = greedy_order(terms, avail)
    elif order == "input":
        ordered = input_order(terms, num_vars)
    else:
        raise ValueError(f"unknown order {order!r}")
    if prune not in ("factor", "batch"):
        raise ValueError(f"unknown prune mode {prune!r}")
    plan = batch_partition(ordered, avail)
    stats = stats if stats is not None else ReductionStats()

    remaining = list(ordered.appearance_counts[-1])
    t_start = time.perf_counter()
    p = poly_one(num_vars, caps)
    index = 0
    for batch in plan.batches:
        t0 = time.perf_counter()
        if prune == "batch":
            # Room for every exponent this batch can add; cut back at the end.
            grow = [0] * num_vars
            for a, b in batch:
                grow[a] += 1
                grow[b] += 1
            p = p.with_caps([min(c + g, 63) for c, g in zip(caps, grow)])
        for a, b in batch:
            p = multiply_binomial(p, (a, b))
            remaining[a] -= 1
            remaining[b] -= 1
            if lower is not None:
                p = p.drop_below(a, lower[a] - remaining[a])
                p = p.drop_below(b, lower[b] - remaining[b])
            stats.peak_monomials = max(stats.peak_monomials, len(p))
        before = len(p)
        if prune == "batch":
            p = p.with_caps(caps)
        stat = BatchStat(index, index + len(batch) - 1, before, len(p), time.perf_counter() - t0)
        stats.batches.append(stat)
        log.debug(
            "batch terms %d..%d: %d monomials before prune, %d after (%.3fs)",
            stat.first, stat.last, stat.before_prune, stat.after_prune, stat.seconds,
        )
        index += len(batch)
    stats.seconds = time.perf_counter() - t_start
    return p

