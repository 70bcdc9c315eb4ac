"""
Normal forms in BS(1,-1)
========================

Every element of <a, b | a b a^-1 = b^-1> can be written as a^p b^q.
"""

from klein_actions import BsElement, bs_reduce

# rewriting pushes b to the right, flipping its sign past each a
for word in ["bab", "aba^-1b", "b^3 a^2 b", "a b a b"]:
    print(f"{word:>12} -> {bs_reduce(word)}")

# the closed-form product agrees with rewriting the concatenation
x, y = bs_reduce("a^3 b^2"), bs_reduce("b a^-1")
print("product:", x * y, "| rewritten:", bs_reduce("a^3 b^2 b a^-1"))

# squares of elements with odd a-exponent lose their b part
for p, q in [(1, 5), (3, -2), (-7, 7)]:
    print(f"(a^{p} b^{q})^2 =", BsElement(p, q) ** 2)
