"""
Line and circle actions
=======================

a(x) = x + 1 and the time-one map of sin(pi x) satisfy a b a^-1 = b^-1 on the
line.  Glue two copies of the extended line into a circle to get an action of
G1 in which b rotates by a half turn.
"""

import numpy as np

from klein_actions import (
    figure3_circle,
    figure3_generators,
    g1_action_checks,
    lemma32_check,
)

a, b = figure3_generators()
x = np.linspace(-3, 3, 7)
print("b on integers:", b(x))
print("b(1/2) =", float(b(0.5)))

rep = lemma32_check(*figure3_circle())
print("fixed points on the compactified line:", rep["status"], "| strict:", rep["strict_inclusion"])

g1 = g1_action_checks()
print("rotation numbers: b", g1["rotation_b"], "a", g1["rotation_a"])
print("relations:", {k: f"{v:.1e}" for k, v in g1["relations"].items()})
