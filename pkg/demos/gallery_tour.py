"""Certificates, witness trees and index brackets for the gallery operators.

Run: python3 demos/gallery_tour.py   (takes a couple of minutes for the last preset)
"""

from fractions import Fraction

from ssindex.gallery import PRESETS, run_preset
from ssindex.operators import BasicSequence, Diagonal, Operator
from ssindex.spaces import parse_norm
from ssindex.trees import dumps
from ssindex.witness import WitnessTreeSpec, build_witness_tree, witness_search

l1 = parse_norm("l1")
diag = Operator(l1, l1, Diagonal("1/i"))
seq = BasicSequence.unit_vectors(10)

# a compact diagonal flattens single basis vectors
print(witness_search(diag, 1, Fraction(1, 2), seq, mode="first").to_json())

# the tree of index tuples on which diag is bounded below by 1/m
for m in (2, 3, 4):
    tree = build_witness_tree(WitnessTreeSpec(diag, m, seq, 5, 10))
    print(f"m={m}: {len(tree.truncation)} nodes, rank {tree.rank}, {tree.verdict}")
print(dumps(build_witness_tree(WitnessTreeSpec(diag, 2, seq, 5, 10)).truncation))

for name in PRESETS:
    rep = run_preset(name)
    print(name, "bracket:", rep["bracket"])
    for row in rep["grid"]:
        shown = row.get("ratio", row.get("best_ratio"))
        print(f"   xi={row['xi']:3} eps={row['epsilon']:4} {row['status']:11} {shown}")
