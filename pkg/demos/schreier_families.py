"""Schreier families and the ranks of their truncated trees.

Run: python3 demos/schreier_families.py
"""

from ssindex import enumerate_family, member, min_blocks, parse_ordinal
from ssindex.trees import expected_schreier_order, rank, restricted_schreier_tree

# S_1 is the family of sets no longer than their least element
print([F for F in enumerate_family(1, 5) if F])

# S_2 glues at most min F consecutive S_1 pieces
F = (2, 3, 10, 11, 12)
print(F, "in S_2:", member(2, F), "pieces of S_1:", min_blocks(1, F))

# at w the family diagonalises over S_n, n <= min F
w = parse_ordinal("w")
print("{2,3} in S_w:", member(w, (2, 3)), " {1,2} in S_w:", member(w, (1, 2)))

# The full tree S_xi has rank w^xi; finite truncations only show a shadow of that
for xi in (1, 2, 3):
    ranks = [rank(restricted_schreier_tree(xi, N)) for N in range(1, 11)]
    print(f"xi={xi}  rank of S_xi within {{1..N}}, N=1..10: {ranks}   (full tree: {expected_schreier_order(xi)})")
