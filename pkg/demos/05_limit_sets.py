"""
Forward limit sets on a grid
============================

Iterate a free disk and keep the grid cells the late iterates visit.  Under b
the cloud gathers along the invariant lines theta = 0 and theta = pi.
"""

import sys

import numpy as np

from klein_actions import A_MAP, B_MAP, Disk, limit_set_estimate
from klein_actions.plane import write_points_csv

d = Disk.at(np.pi / 2, 0.0, 0.2)
est = limit_set_estimate(d, B_MAP, n_max=20, grid=0.01)
theta = est.points[:, 0]
dist = np.abs(((theta + np.pi / 2) % np.pi) - np.pi / 2)
print(f"{len(est.points)} cells, median distance to theta in {{0, pi}}: {np.median(dist):.4f}")

# a is a translation in theta, so nothing accumulates
print("cells under a:", len(limit_set_estimate(d, A_MAP, 20).points))

if len(sys.argv) > 1:
    write_points_csv(sys.argv[1], est.points)
    print("wrote", sys.argv[1])
