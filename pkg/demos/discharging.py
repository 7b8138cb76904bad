"""Charges on small plane graphs and the three discharging rules.

Run with ``python3 demos/discharging.py``.
"""
from strongcert.engine import fixture_document
from strongcert.plane import PlaneGraph, discharge, euler_charge_audit, faces, separating_cycles

# %% Initial charges sum to -12 on any connected plane graph
for name in ("k4", "cube", "dodecahedron"):
    pg = PlaneGraph.from_json(fixture_document(name))
    print(f"{name:13s} faces {sorted(len(f) for f in faces(pg))}  total {euler_charge_audit(pg)}")

# %% A degree-4 hub next to a quadrilateral face and a 2-vertex
#    hub 0 sees 1..4; 5 sits on the path 4-5-1 between two 3-vertices
rotation = [
    (1, 2, 3, 4), (0, 5, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (4, 1),
]
pg = PlaneGraph(6, tuple(rotation))
ledger = discharge(pg)
for src, dst, amount, rule in ledger.transfers:
    print(rule, src, "->", dst, amount)
print("final vertex charges:", [str(x) for x in ledger.final_vertex_charges()])
print("final face charges:", [str(x) for x in ledger.final_face_charges()])
print("total before", ledger.initial_total, "after", ledger.final_total)

# %% Separating cycles: the octahedron's equators split its two poles
octa = PlaneGraph(6, (
    (1, 4, 3, 5), (0, 5, 2, 4), (1, 5, 3, 4), (0, 4, 2, 5), (0, 1, 2, 3), (0, 3, 2, 1),
))
print("separating 4-cycles:", separating_cycles(octa, 4))
