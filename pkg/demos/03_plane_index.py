"""
The index of b along quarter turns
==================================

The plane model lives on the universal cover of the punctured plane, with
coordinates (theta, r) and covering map (theta, r) -> exp(-r + i theta).
"""

import numpy as np

from klein_actions import B_MAP, Conjugate, PeriodicConjugator, index_details, verify_relation

rep = verify_relation(samples=10_000, seed=0)
print(f"relation error {rep['relation_sup_error']:.1e}, min displacement {rep['min_displacement']:.3f}")

for k in (-3, -2, -1, 1, 2, 3):
    d = index_details(B_MAP, k)
    print(f"k={k:+d}: index {d['index']:+.1f} (raw {d['raw']:+.12f})")

# conjugating by a homeomorphism that commutes with a leaves the index alone
h = PeriodicConjugator(u=0.15, s=0.4, phase_s=1.0, t=0.3)
print("conjugated, k=1:", index_details(Conjugate(h, B_MAP), 1)["index"])

# the curve only matters through its endpoints
d = index_details(B_MAP, 2, waypoints=[(3.0, 2.0), (-1.0, -1.5)])
print("detour, k=2:", d["index"], "after", d["segments"], "segments")
