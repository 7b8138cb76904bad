"""The tight example: Ore-degree 7 and strong chromatic index 13.

Run with ``python3 demos/tight_example.py``.
"""
import time

from strongcert.engine import fixture_document
from strongcert.oracle import ColoredGraph, ore_degree, strong_chromatic_index, strong_conflicts, strong_edge_coloring
from strongcert.plane import EmbeddingError, PlaneGraph, euler_genus

g = ColoredGraph.from_json(fixture_document("figure1"))
print(g.num_vertices, "vertices,", len(g.edges), "edges, degrees", g.degrees())

# %% Ore-degree is the largest degree sum across an edge
print("theta =", ore_degree(g))

# %% Every pair of edges sees every other one, so each edge needs its own color
print(len(strong_conflicts(g)), "conflicting pairs out of", 13 * 12 // 2)

# %% Exact search confirms 13 and refutes 12
t0 = time.perf_counter()
print("chi_s =", strong_chromatic_index(g, 13))
print("12-coloring:", strong_edge_coloring(g, 12), f"({time.perf_counter() - t0:.3f}s)")

# %% The drawing is not a plane embedding: its rotation system has genus 2
pg = PlaneGraph.from_json(fixture_document("figure1"))
print("genus of the drawn rotation:", euler_genus(pg))
try:
    from strongcert.plane import faces
    faces(pg)
except EmbeddingError as exc:
    print("faces():", exc)
