"""Which invariant tuples (c, d, e, n) occur, with Eisenstein witnesses.

Run with ``python demos/tuple_atlas.py [max_c]``.
"""

import sys

from algden import atlas, construct_witness

max_c = int(sys.argv[1]) if len(sys.argv) > 1 else 8
reasons: dict[str, int] = {}
for cert in atlas([2], max_c):
    if cert.realizable:
        print(f"{cert.query.as_tuple()}: realized by {construct_witness(cert.query)}")
    else:
        reasons[cert.reason] = reasons.get(cert.reason, 0) + 1
print("ruled out:", ", ".join(f"{n} by {r}" for r, n in sorted(reasons.items())))
