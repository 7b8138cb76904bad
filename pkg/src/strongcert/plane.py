"""Plane graphs given by rotation systems: faces, charges, separating cycles.

Vertices start with charge ``2d(v) - 6`` and faces with ``d(f) - 6``; on a
connected plane graph the total is -12.  The discharging rules move charge
from 4-vertices to 2-vertices, 4-faces and 5-faces.  All charges are exact
``Fraction`` values.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence


class EmbeddingError(ValueError):
    """The rotation system is not a connected simple plane embedding."""


@dataclass(frozen=True)
class PlaneGraph:
    num_vertices: int
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rot = tuple(tuple(int(w) for w in nb) for nb in self.rotation)
        object.__setattr__(self, "rotation", rot)
        if len(rot) != self.num_vertices:
            raise EmbeddingError("one rotation list per vertex expected")
        for v, nb in enumerate(rot):
            if len(set(nb)) != len(nb):
                raise EmbeddingError(f"vertex {v} lists a neighbor twice")
            for w in nb:
                if w == v:
                    raise EmbeddingError(f"loop at vertex {v}")
                if not 0 <= w < self.num_vertices:
                    raise EmbeddingError(f"vertex {v} has unknown neighbor {w}")
                if v not in rot[w]:
                    raise EmbeddingError(f"edge {v}-{w} missing from rotation of {w}")
        if self.num_vertices and not _connected(rot):
            raise EmbeddingError("graph is not connected")

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "PlaneGraph":
        try:
            return cls(int(doc["num_vertices"]), tuple(tuple(r) for r in doc["rotation"]))
        except (KeyError, TypeError) as exc:
            raise EmbeddingError(f"malformed plane graph: {exc}") from exc

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.rotation) // 2

    def edges(self) -> list[tuple[int, int]]:
        return sorted((v, w) for v, nb in enumerate(self.rotation) for w in nb if v < w)

    def next_around(self, v: int, w: int) -> int:
        """Successor of neighbor ``w`` in the rotation at ``v``."""
        nb = self.rotation[v]
        return nb[(nb.index(w) + 1) % len(nb)]


def _connected(rot: Sequence[Sequence[int]]) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in rot[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(rot)


def trace_faces(pg: PlaneGraph) -> list[tuple[int, ...]]:
    """Closed walks of the rotation system, without any planarity check.

    The dart ``(u, v)`` is followed by ``(v, w)`` with ``w`` the successor of
    ``u`` around ``v``.  Each walk is listed by its vertices, starting from
    its smallest dart.
    """
    darts = sorted((v, w) for v, nb in enumerate(pg.rotation) for w in nb)
    used: set[tuple[int, int]] = set()
    walks = []
    for start in darts:
        if start in used:
            continue
        walk = []
        u, v = start
        while (u, v) not in used:
            used.add((u, v))
            walk.append(u)
            u, v = v, pg.next_around(v, u)
        walks.append(tuple(walk))
    return walks


def euler_genus(pg: PlaneGraph) -> int:
    chi = pg.num_vertices - pg.num_edges + len(trace_faces(pg))
    return (2 - chi) // 2


def faces(pg: PlaneGraph) -> list[tuple[int, ...]]:
    """Face boundary walks; raises unless V - E + F = 2."""
    walks = trace_faces(pg)
    if pg.num_vertices == 1:
        return [()]
    chi = pg.num_vertices - pg.num_edges + len(walks)
    if chi != 2:
        raise EmbeddingError(
            f"V - E + F = {chi}: rotation system is not planar (genus {(2 - chi) // 2})"
        )
    return walks


def euler_charge_audit(pg: PlaneGraph) -> Fraction:
    """Total initial charge, which is -12 on every connected plane graph."""
    fs = faces(pg)
    total = sum(2 * pg.degree(v) - 6 for v in range(pg.num_vertices))
    total += sum(len(f) - 6 for f in fs)
    return Fraction(total)


RULE_AMOUNTS = {"R1": Fraction(1), "R2": Fraction(1), "R3": Fraction(1, 2)}


@dataclass
class ChargeLedger:
    faces: list[tuple[int, ...]]
    vertex_charges: list[Fraction]
    face_charges: list[Fraction]
    transfers: list[tuple[str, str, Fraction, str]] = field(default_factory=list)

    def final_vertex_charges(self) -> list[Fraction]:
        out = list(self.vertex_charges)
        for src, dst, amount, _ in self.transfers:
            kind, idx = src[0], int(src[1:])
            if kind == "v":
                out[idx] -= amount
            kind, idx = dst[0], int(dst[1:])
            if kind == "v":
                out[idx] += amount
        return out

    def final_face_charges(self) -> list[Fraction]:
        out = list(self.face_charges)
        for src, dst, amount, _ in self.transfers:
            kind, idx = src[0], int(src[1:])
            if kind == "f":
                out[idx] -= amount
            kind, idx = dst[0], int(dst[1:])
            if kind == "f":
                out[idx] += amount
        return out

    @property
    def initial_total(self) -> Fraction:
        return sum(self.vertex_charges, Fraction(0)) + sum(self.face_charges, Fraction(0))

    @property
    def final_total(self) -> Fraction:
        return sum(self.final_vertex_charges(), Fraction(0)) + sum(
            self.final_face_charges(), Fraction(0)
        )

    def negatives(self) -> list[tuple[str, Fraction]]:
        out = [(f"v{i}", c) for i, c in enumerate(self.final_vertex_charges()) if c < 0]
        out += [(f"f{i}", c) for i, c in enumerate(self.final_face_charges()) if c < 0]
        return out

    def to_json(self) -> dict[str, Any]:
        def q(x: Fraction) -> dict[str, int]:
            return {"num": x.numerator, "den": x.denominator}

        return {
            "schema": 1,
            "faces": [list(f) for f in self.faces],
            "initial": {
                "vertices": [q(c) for c in self.vertex_charges],
                "faces": [q(c) for c in self.face_charges],
            },
            "transfers": [
                {"source": s, "target": t, "amount": q(a), "rule": r}
                for s, t, a, r in self.transfers
            ],
            "final": {
                "vertices": [q(c) for c in self.final_vertex_charges()],
                "faces": [q(c) for c in self.final_face_charges()],
            },
            "initial_total": q(self.initial_total),
            "final_total": q(self.final_total),
            "negative": [{"element": e, "charge": q(c)} for e, c in self.negatives()],
        }


def discharge(pg: PlaneGraph) -> ChargeLedger:
    """Apply the three rules literally to every vertex and face.

    R1: a 2-vertex takes 1 from each adjacent 4-vertex.  R2: a 4-face takes 1
    from each 4-vertex on it.  R3: a 5-face takes 1/2 from each 4-vertex on
    it.  A vertex repeated on a face walk gives once.
    """
    fs = faces(pg)
    ledger = ChargeLedger(
        faces=fs,
        vertex_charges=[Fraction(2 * pg.degree(v) - 6) for v in range(pg.num_vertices)],
        face_charges=[Fraction(len(f) - 6) for f in fs],
    )
    for v in range(pg.num_vertices):
        if pg.degree(v) == 2:
            for w in pg.rotation[v]:
                if pg.degree(w) == 4:
                    ledger.transfers.append((f"v{w}", f"v{v}", RULE_AMOUNTS["R1"], "R1"))
    for i, f in enumerate(fs):
        rule = {4: "R2", 5: "R3"}.get(len(f))
        if rule is None:
            continue
        for v in sorted(set(f)):
            if pg.degree(v) == 4:
                ledger.transfers.append((f"v{v}", f"f{i}", RULE_AMOUNTS[rule], rule))
    return ledger


# -- separating cycles ------------------------------------------------------


def _cycles(pg: PlaneGraph, k: int) -> list[tuple[int, ...]]:
    """Simple k-cycles, each once: smallest vertex first, then the smaller neighbor."""
    out = []
    rot = pg.rotation

    def extend(path: list[int], on_path: set[int]):
        v = path[-1]
        if len(path) == k:
            if path[0] in rot[v] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in rot[v]:
            if w > path[0] and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.discard(w)
                path.pop()

    for s in range(pg.num_vertices):
        extend([s], {s})
    return sorted(out)


def _arc(pg: PlaneGraph, v: int, start: int, stop: int) -> list[int]:
    """Neighbors of ``v`` strictly after ``start`` and strictly before ``stop`` in rotation order."""
    nb = pg.rotation[v]
    i = nb.index(start)
    out = []
    while True:
        i = (i + 1) % len(nb)
        if nb[i] == stop:
            return out
        out.append(nb[i])


def cycle_sides(pg: PlaneGraph, cycle: Sequence[int]) -> tuple[set[int], set[int]]:
    """Vertices strictly on either side of an embedded cycle.

    At each cycle vertex the neighbors between the next and the previous
    cycle vertex (in rotation order) leave on one side, the rest on the
    other.  Every component of the graph minus the cycle sits on one side.
    """
    cyc = list(cycle)
    on_cycle = set(cyc)
    k = len(cyc)
    side_of: dict[int, int] = {}
    for idx, v in enumerate(cyc):
        nxt, prv = cyc[(idx + 1) % k], cyc[idx - 1]
        for w in _arc(pg, v, nxt, prv):
            if w not in on_cycle:
                side_of.setdefault(w, 0)
        for w in _arc(pg, v, prv, nxt):
            if w not in on_cycle:
                side_of.setdefault(w, 1)
    sides: tuple[set[int], set[int]] = (set(), set())
    seen: set[int] = set()
    for root, s in sorted(side_of.items()):
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in pg.rotation[x]:
                if y not in on_cycle and y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        sides[s].update(comp)
    if sides[0] & sides[1]:
        raise EmbeddingError(f"cycle {tuple(cycle)} has a component on both sides")
    return sides


def interior_exterior(
    pg: PlaneGraph, cycle: Sequence[int], outer_face: int | None = None
) -> tuple[set[int], set[int]]:
    """Strict interior and exterior vertex sets of ``cycle``.

    The exterior is the side holding the outer face, by default the face of
    largest degree (first such face in trace order).
    """
    fs = faces(pg)
    if outer_face is None:
        outer_face = max(range(len(fs)), key=lambda i: (len(fs[i]), -i))
    left, right = cycle_sides(pg, cycle)
    walk = fs[outer_face]
    on_cycle = set(cycle)
    off = [v for v in walk if v not in on_cycle]
    if off:
        outer_side = 0 if off[0] in left else 1
    else:
        outer_side = _corner_side(pg, list(cycle), walk)
    return (right, left) if outer_side == 0 else (left, right)


def _corner_side(pg: PlaneGraph, cyc: list[int], walk: Sequence[int]) -> int:
    # The walk passes through v between consecutive rotation neighbors (u, succ(u)).
    k = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    n = len(walk)
    for t in range(n):
        u, v = walk[t - 1], walk[t]
        i = pos[v]
        nxt, prv = cyc[(i + 1) % k], cyc[i - 1]
        inside = [nxt] + _arc(pg, v, nxt, prv)
        return 0 if u in inside else 1
    raise EmbeddingError("empty face walk")


def separating_cycles(pg: PlaneGraph, k: int) -> list[tuple[int, ...]]:
    """All k-cycles with at least one vertex strictly on each side."""
    if not 3 <= k <= 6:
        raise ValueError("cycle length must be between 3 and 6")
    faces(pg)
    out = []
    for cyc in _cycles(pg, k):
        a, b = cycle_sides(pg, cyc)
        if a and b:
            out.append(cyc)
    return out
