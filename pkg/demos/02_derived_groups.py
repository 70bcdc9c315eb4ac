"""
Two groups containing BS(1,-1)
==============================

G2 elements are stored as w * beta^n with w in the free group on alpha, gamma.
G1 is realised exactly by affine isometries of R^3.
"""

from klein_actions import G2Element, G2Order, g1_ball, g1_element_order, g1_eval, g2_rewrite
from klein_actions.derived import g2_omega

x = G2Element.make("g", 1)
y = G2Element.make("a", 1)
print("x * y =", x * y, "| rewriting:", g2_rewrite("g b a b"))

# the letter-flipping shortcut only agrees with rewriting when gamma is flipped
word = "b a g b^-1"
print("rewrite:", g2_rewrite(word).w, "| flip alpha:", g2_omega(word),
      "| flip gamma:", g2_omega(word, flip="gamma"))

order = G2Order()
elems = [G2Element.make(w, n) for w in ("e", "a", "g", "a^-1 g") for n in (-1, 0, 1)]
elems.sort(key=lambda e: sum(order.compare(e, f) > 0 for f in elems))
print("sorted:", ", ".join(str(e) for e in elems))

# G1: alpha^2 and beta^2 are translations, and nothing small has finite order
print("alpha^2 =", g1_eval("a^2").to_json())
ball = g1_ball(8)
finite = [f for f in ball if not f.is_identity() and g1_element_order(f) != float("inf")]
print(f"{len(ball)} elements within distance 8, {len(finite)} nontrivial of finite order")
