import random
from collections import Counter
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongcert.engine import fixture_document
from strongcert.plane import (
    EmbeddingError,
    PlaneGraph,
    discharge,
    euler_charge_audit,
    euler_genus,
    faces,
    interior_exterior,
    separating_cycles,
    trace_faces,
)


def embed(edges):
    G = nx.Graph(edges)
    planar, emb = nx.check_planarity(G)
    assert planar
    n = max(G) + 1
    return PlaneGraph(n, tuple(tuple(emb.neighbors_cw_order(v)) for v in range(n)))


def bundled(name):
    return PlaneGraph.from_json(fixture_document(name))


@pytest.mark.parametrize("name,sizes", [
    ("k4", [3, 3, 3, 3]),
    ("cube", [4] * 6),
    ("dodecahedron", [5] * 12),
    ("triangle", [3, 3]),
])
def test_face_sizes(name, sizes):
    assert sorted(len(f) for f in faces(bundled(name))) == sizes


@pytest.mark.parametrize("name", ["k4", "cube", "dodecahedron", "triangle"])
def test_euler_charge(name):
    total = euler_charge_audit(bundled(name))
    assert total == -12 and isinstance(total, Fraction)


def test_figure1_rotation_is_not_planar():
    pg = bundled("figure1")
    assert euler_genus(pg) > 0
    with pytest.raises(EmbeddingError):
        faces(pg)


def test_rotation_validation():
    with pytest.raises(EmbeddingError):
        PlaneGraph(2, ((1,), ()))
    with pytest.raises(EmbeddingError):
        PlaneGraph(2, ((0,), ()))
    with pytest.raises(EmbeddingError):
        PlaneGraph(4, ((1,), (0,), (3,), (2,)))
    with pytest.raises(EmbeddingError):
        PlaneGraph(2, ((1, 1), (0, 0)))
    with pytest.raises(EmbeddingError):
        PlaneGraph.from_json({"rotation": []})


def test_nonplanar_rotation_rejected():
    # K4 with one rotation reversed gives a torus embedding.
    rot = list(bundled("k4").rotation)
    rot[0] = tuple(reversed(rot[0]))
    pg = PlaneGraph(4, tuple(rot))
    assert len(trace_faces(pg)) != 4
    with pytest.raises(EmbeddingError):
        euler_charge_audit(pg)


def test_cube_discharge_is_vacuous():
    ledger = discharge(bundled("cube"))
    assert ledger.transfers == []
    assert ledger.final_face_charges() == [Fraction(-2)] * 6
    assert ledger.final_total == -12


def test_four_vertex_feeds_its_four_face():
    # Hub 0 has degree 4; the face 0-4-5-1 is its only 4-face.
    pg = embed([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    ledger = discharge(pg)
    quad = [i for i, f in enumerate(ledger.faces) if len(f) == 4]
    assert len(quad) == 1
    r2 = [t for t in ledger.transfers if t[3] == "R2"]
    assert r2 == [("v0", f"f{quad[0]}", Fraction(1), "R2")]
    assert ledger.final_face_charges()[quad[0]] == ledger.face_charges[quad[0]] + 1
    assert ledger.final_total == ledger.initial_total == -12


def test_rules_r1_and_r3():
    # 2-vertex 4 between the two 4-vertices 0 and 1.
    pg = embed([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)])
    ledger = discharge(pg)
    r1 = [t for t in ledger.transfers if t[3] == "R1"]
    assert sorted(t[0] for t in r1) == ["v0", "v1"]
    assert all(t[1] == "v4" and t[2] == 1 for t in r1)
    assert ledger.final_vertex_charges()[4] == -2 + 2
    doc = ledger.to_json()
    assert doc["final_total"] == {"num": -12, "den": 1}
    assert all(t["amount"]["den"] in (1, 2) for t in doc["transfers"])


def test_half_charges_exact():
    pg = embed([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)])
    ledger = discharge(pg)
    halves = [t for t in ledger.transfers if t[3] == "R3"]
    assert all(t[2] == Fraction(1, 2) for t in halves)
    assert ledger.final_total == -12


def test_negative_elements_reported():
    ledger = discharge(bundled("k4"))
    assert len(ledger.negatives()) == 4
    assert all(e.startswith("f") for e, _ in ledger.negatives())


def test_separating_triangle():
    pg = embed([(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)])
    assert separating_cycles(pg, 3) == [(0, 1, 2)]
    inside, outside = interior_exterior(pg, (0, 1, 2))
    assert {frozenset(inside), frozenset(outside)} == {frozenset({3}), frozenset({4})}


def test_interior_exterior_follows_outer_face():
    pg = embed([(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)])
    fs = faces(pg)
    for i, f in enumerate(fs):
        inside, outside = interior_exterior(pg, (0, 1, 2), outer_face=i)
        if 3 in f:
            assert outside == {3}
        if 4 in f:
            assert outside == {4}


def test_cube_and_cycle_have_no_separating_cycles():
    cube = bundled("cube")
    assert separating_cycles(cube, 4) == []
    c5 = embed([(i, (i + 1) % 5) for i in range(5)])
    for k in range(3, 7):
        assert separating_cycles(c5, k) == []
    with pytest.raises(ValueError):
        separating_cycles(c5, 7)


def test_separating_four_cycle():
    # The octahedron: each of its three equators separates the opposite pair.
    pg = embed([(0, 1), (1, 2), (2, 3), (3, 0)] + [(4, i) for i in range(4)] + [(5, i) for i in range(4)])
    assert separating_cycles(pg, 4) == [(0, 1, 2, 3), (0, 4, 2, 5), (1, 4, 3, 5)]
    assert separating_cycles(pg, 3) == []


def random_plane_graph(seed, n):
    rng = random.Random(seed)
    G = nx.Graph()
    order = list(range(n))
    rng.shuffle(order)
    G.add_node(order[0])
    for v in order[1:]:
        G.add_edge(v, rng.choice(list(G.nodes)))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if not G.has_edge(u, v)]
    rng.shuffle(candidates)
    for u, v in candidates[: 3 * n]:
        G.add_edge(u, v)
        if not nx.check_planarity(G)[0]:
            G.remove_edge(u, v)
    _, emb = nx.check_planarity(G)
    return PlaneGraph(n, tuple(tuple(emb.neighbors_cw_order(v)) for v in range(n)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 12))
def test_conservation_and_handshake(seed, n):
    pg = random_plane_graph(seed, n)
    fs = faces(pg)
    assert sum(len(f) for f in fs) == 2 * pg.num_edges
    darts = Counter(d for f in fs for d in zip(f, f[1:] + f[:1]))
    assert all(n == 1 for n in darts.values()) and len(darts) == 2 * pg.num_edges
    assert euler_charge_audit(pg) == -12
    ledger = discharge(pg)
    assert ledger.final_total == ledger.initial_total == -12
    amounts = {"R1": 1, "R2": 1, "R3": Fraction(1, 2)}
    assert all(a == amounts[r] for _, _, a, r in ledger.transfers)
    for k in range(3, 7):
        for cyc in separating_cycles(pg, k):
            inside, outside = interior_exterior(pg, cyc)
            assert inside and outside
            assert not inside & outside
            assert not (inside | outside) & set(cyc)
