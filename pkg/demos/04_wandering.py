"""
Wandering and non-wandering disks
=================================

A disk that b moves off itself also misses all of its images under
a^(2p) b^q.  Odd powers of a behave differently near theta = pi/2.
"""

import numpy as np

from klein_actions import Disk, nonwandering_witness, wandering_check

for d in [Disk.at(np.pi / 4, 0.0, 0.1), Disk.at(0.0, 0.0, 0.2), Disk.at(0.0, 0.0, 0.5)]:
    rep = wandering_check(d, 5, 5)
    print(f"disk at theta={d.center.theta:.3f} radius {d.radius}: {rep['status']}")

d = Disk.at(np.pi / 2, 0.0, 0.3)
rep = nonwandering_witness(d, 50)
print(f"b^({rep['sign'] * rep['n']}) a (D) meets D at {np.round(rep['witness'], 4)}")
print("away from the axis:", nonwandering_witness(Disk.at(np.pi / 4, 0.0, 0.05), 20)["found"])
