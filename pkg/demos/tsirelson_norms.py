"""Exact norms on Schreier and Tsirelson-type spaces.

Run: python3 demos/tsirelson_norms.py
"""

from ssindex import norm, parse_norm, parse_vector
from ssindex.spaces import dual_witness, witness_to_json

flat = parse_vector("[" + ",".join(f"{i}:1" for i in range(1, 13)) + "]")

for desc in ("l1", "linf", "l2", "schreier(1)", "schreier(2)", "tsirelson(1,1/2)", "tsirelson(w,1/2)"):
    d = parse_norm(desc)
    print(f"{desc:18} {norm(d, flat)}")

# the structure behind a Tsirelson value: admissible blocks, each normed recursively
d = parse_norm("tsirelson(1,1/2)")
x = parse_vector("[1:1, 3:1, 4:1, 5:1, 8:2, 9:1]")
print(norm(d, x), witness_to_json(d, dual_witness(d, x)))
