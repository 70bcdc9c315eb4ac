"""One-dimensional actions: the line action of BS(1,-1), its circle
compactification, a circle action of G1, and rotation numbers.

The line generator ``b`` is the time-one map of the flow of ``sin(pi x)``;
since ``sin(pi (x - 1)) = -sin(pi x)`` it satisfies ``a b a^-1 = b^-1`` for
``a(x) = x + 1``, and it is odd, so it commutes with ``x -> -x``.

Circle maps are represented by their degree-one lifts ``F`` with
``F(u + 1) = F(u) + 1``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable

import numpy as np

FIXED_THRESHOLD = 1e-7
BRACKET_WIDTH = 1e-10


# -- line maps --------------------------------------------------------------

@dataclass(frozen=True)
class LineMap:
    fn: Callable
    inv: Callable
    tag: str = "composite"

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def inverse(self) -> "LineMap":
        return LineMap(self.inv, self.fn, self.tag)

    def __matmul__(self, other: "LineMap") -> "LineMap":
        return LineMap(lambda x: self.fn(other.fn(x)), lambda x: other.inv(self.inv(x)))


def translation(c: float = 1.0) -> LineMap:
    return LineMap(lambda x: x + c, lambda x: x - c, "translation")


def _sine_flow(x, t: float):
    x = np.asarray(x, dtype=float)
    out = np.array(x, copy=True)
    ok = np.isfinite(x)
    m = np.floor((x[ok] + 1.0) / 2.0)
    y = x[ok] - 2.0 * m
    # tan(pi y / 2) is multiplied by exp(pi t) along the flow of sin(pi x)
    out[ok] = 2.0 * m + (2.0 / np.pi) * np.arctan(np.exp(np.pi * t) * np.tan(0.5 * np.pi * y))
    return out


def sine_flow(t: float = 1.0) -> LineMap:
    """Time-t map of the flow of ``sin(pi x)``; fixes the integers."""
    return LineMap(lambda x: _sine_flow(x, t), lambda x: _sine_flow(x, -t), f"sine-flow-time-{t:g}")


def figure3_generators() -> tuple[LineMap, LineMap]:
    return translation(1.0), sine_flow(1.0)


# -- circle maps ------------------------------------------------------------

def _numeric_inverse(lift: Callable) -> Callable:
    def inv(y):
        y = np.asarray(y, dtype=float)
        lo, hi = y - 2.0, y + 2.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            below = lift(mid) < y
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)
    return inv


@dataclass(frozen=True)
class CircleMap:
    """A degree-one circle homeomorphism given by a lift ``R -> R``."""

    lift: Callable
    inverse_lift: Callable | None = None
    name: str = ""

    def __call__(self, u):
        return self.lift(np.asarray(u, dtype=float))

    def inverse(self) -> "CircleMap":
        inv = self.inverse_lift or _numeric_inverse(self.lift)
        return CircleMap(inv, self.lift, f"{self.name}^-1")

    def __matmul__(self, other: "CircleMap") -> "CircleMap":
        inv_s, inv_o = self.inverse().lift, other.inverse().lift
        return CircleMap(lambda u: self.lift(other.lift(u)), lambda u: inv_o(inv_s(u)),
                         f"{self.name}{other.name}")

    def power(self, n: int) -> "CircleMap":
        out = identity_circle()
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = base @ out
        return out

    def displacement(self, u):
        u = np.asarray(u, dtype=float)
        return self(u) - u


def identity_circle() -> CircleMap:
    return CircleMap(lambda u: np.asarray(u, dtype=float), lambda u: np.asarray(u, dtype=float), "")


def rigid_rotation(rho: float) -> CircleMap:
    return CircleMap(lambda u: u + rho, lambda u: u - rho, f"R{rho:g}")


def circle_distance(u, v):
    d = (np.asarray(u) - np.asarray(v)) % 1.0
    return np.minimum(d, 1.0 - d)


def _periodic_lift(on_unit: Callable, ref: float) -> Callable:
    """Lift from a map of [0, 1) into [0, 1), with displacement kept within 1/2 of ``ref``."""
    def lift(u):
        u = np.asarray(u, dtype=float)
        k = np.floor(u)
        frac = u - k
        v = on_unit(frac) % 1.0
        return k + v + np.round(frac + ref - v)
    return lift


# one-point compactification of the line: u = 1/2 + arctan(x)/pi, infinity at u = 0

def _one_point_decode(u):
    return np.tan(np.pi * (u - 0.5))


def _one_point_encode(x):
    return (0.5 + np.arctan(x) / np.pi) % 1.0


def compactify(f: LineMap, name: str = "") -> CircleMap:
    """Extend a line homeomorphism to the circle by fixing the point at infinity."""
    def make(fn):
        def on_unit(u):
            out = _one_point_encode(fn(_one_point_decode(u)))
            return np.where(u == 0.0, 0.0, out)
        return _periodic_lift(on_unit, 0.0)

    return CircleMap(make(f.fn), make(f.inv), name)


# two copies of [-inf, +inf]: copy 0 on [0, 1/2] oriented positively, copy 1 on
# [1/2, 1] oriented negatively; the ends -inf and +inf sit at u = 0 and u = 1/2

def _two_copy_decode(u):
    copy = (u >= 0.5).astype(int)
    x = np.where(copy == 0, np.tan(2 * np.pi * (u - 0.25)), np.tan(2 * np.pi * (0.75 - u)))
    return copy, x


def _two_copy_encode(copy, x):
    at = np.arctan(x) / (2 * np.pi)
    return np.where(copy == 0, 0.25 + at, 0.75 - at) % 1.0


def two_copy_map(point_map: Callable, ref: float, name: str = "") -> Callable:
    def on_unit(u):
        copy, x = _two_copy_decode(u)
        c2, x2 = point_map(copy, x)
        return _two_copy_encode(c2, x2)
    return _periodic_lift(on_unit, ref)


def g1_circle_generators(b_prime: LineMap | None = None) -> tuple[CircleMap, CircleMap]:
    """Circle action of G1 in which ``b`` has rotation number 1/2.

    ``a`` translates each copy by 1; ``b`` is ``R`` on the first copy and
    ``b' R`` on the second, where ``R`` sends x in one copy to -x in the other.
    """
    bp = b_prime or sine_flow(1.0)

    def a_fwd(c, x):
        return c, x + 1.0

    def a_inv(c, x):
        return c, x - 1.0

    def b_fwd(c, x):
        return 1 - c, np.where(c == 0, -x, -bp(x))

    def b_inv(c, x):
        return 1 - c, np.where(c == 0, -bp.inverse()(x), -x)

    a = CircleMap(two_copy_map(a_fwd, 0.0), two_copy_map(a_inv, 0.0), "a")
    b = CircleMap(two_copy_map(b_fwd, 0.5), two_copy_map(b_inv, -0.5), "b")
    return a, b


def g1_involution() -> CircleMap:
    """The order-two map R between the two copies."""
    def r(c, x):
        return 1 - c, -x
    lift = two_copy_map(r, 0.5)
    return CircleMap(lift, lambda u: lift(u) - 1.0, "R")


# -- rotation numbers and fixed points ---------------------------------------

def rotation_number(f: CircleMap, iterations: int = 10_000, x0: float = 0.0) -> float:
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    x = np.array([x0], dtype=float)
    for _ in range(iterations):
        x = f(x)
    return float((x[0] - x0) / iterations)


def relation_error(lhs: CircleMap, rhs: CircleMap, grid: int = 1024) -> float:
    u = np.arange(grid) / grid
    return float(np.max(circle_distance(lhs(u), rhs(u))))


def fixed_points(f: CircleMap, grid: int = 1024, threshold: float = FIXED_THRESHOLD,
                 width: float = BRACKET_WIDTH) -> dict:
    """Fixed points found on a grid: near-zero displacement runs and bracketed sign changes.

    Returns ``{"components": [(lo, hi), ...], "points": array, "whole_circle": bool}``
    where components are runs of grid points with ``|f(u) - u| < threshold``.
    """
    u = np.arange(grid) / grid
    d = (f(u) - u + 0.5) % 1.0 - 0.5
    zero = np.abs(d) < threshold
    if zero.all():
        return {"components": [(0.0, 1.0)], "points": u, "whole_circle": True}

    comps = []
    if zero.any():
        # rotate so that index 0 is not fixed, then collect runs
        start = int(np.argmin(zero))
        idx = (np.arange(grid) + start) % grid
        run = []
        for i in idx:
            if zero[i]:
                run.append(u[i])
            elif run:
                comps.append((run[0], run[-1]))
                run = []
        if run:
            comps.append((run[0], run[-1]))

    roots = []
    nxt = np.roll(np.arange(grid), -1)
    cross = (~zero) & (~zero[nxt]) & (np.sign(d) != np.sign(d[nxt])) & (np.abs(d) < 0.25) & (np.abs(d[nxt]) < 0.25)
    for i in np.nonzero(cross)[0]:
        lo, hi = u[i], u[i] + 1.0 / grid
        s_lo = np.sign(d[i])
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            dm = float(f(np.array([mid]))[0] - mid)
            dm = (dm + 0.5) % 1.0 - 0.5
            if dm == 0.0:
                lo = hi = mid
                break
            if np.sign(dm) == s_lo:
                lo = mid
            else:
                hi = mid
        r = (0.5 * (lo + hi)) % 1.0
        roots.append(r)
        comps.append((r, r))
    comps.sort()
    points = np.sort(np.concatenate([u[zero], np.array(roots)])) if roots or zero.any() else np.array([])
    return {"components": comps, "points": points, "whole_circle": False}


def _inside_arc(x: float, lo: float, hi: float, eps: float) -> bool:
    """Whether x lies strictly inside the positively oriented arc from lo to hi."""
    length = (hi - lo) % 1.0 or 1.0
    pos = (x - lo) % 1.0
    return eps < pos < length - eps


def _distance_to_component(x: float, lo: float, hi: float) -> float:
    if lo != hi and _inside_arc(x, lo, hi, 0.0):
        return 0.0
    return float(min(circle_distance(x, lo), circle_distance(x, hi)))


def lemma32_check(a: CircleMap, b: CircleMap, grid: int = 1024, relation_tol: float = 1e-7,
                  tol: float = 1e-6) -> dict:
    """Check that Fix(a) lies in Fix(b) and every arc of the circle minus Fix(a)
    contains a fixed point of b, for circle maps with ``a b a^-1 = b^-1``."""
    rel = relation_error(a @ b @ a.inverse(), b.inverse(), grid)
    report = {"grid": grid, "relation_error": rel}
    if not rel < relation_tol:
        report.update(status="precondition_failed", reason="a b a^-1 differs from b^-1")
        report["pass"] = False
        return report
    fa, fb = fixed_points(a, grid), fixed_points(b, grid)
    report["fix_a"] = [[float(lo), float(hi)] for lo, hi in fa["components"]]
    report["n_fix_b"] = int(len(fb["points"]))
    if not fa["components"] or not len(fb["points"]):
        report.update(status="precondition_failed", reason="a and b must both have fixed points")
        report["pass"] = False
        return report
    if fa["whole_circle"]:
        report.update(status="pass", vacuous=True)
        report["pass"] = True
        return report

    problems = []
    bpts = fb["points"]
    for lo, hi in fa["components"]:
        for x in {lo, hi}:
            near = float(np.min(circle_distance(bpts, x)))
            disp = float(circle_distance(b(np.array([x]))[0], x))
            if not (near < tol or disp < FIXED_THRESHOLD):
                problems.append({"a_fixed": float(x), "distance_to_fix_b": near})
    comps = fa["components"]
    arcs = []
    for i, (_, hi) in enumerate(comps):
        lo_next = comps[(i + 1) % len(comps)][0]
        has = any(_inside_arc(float(p), hi, lo_next, BRACKET_WIDTH) for p in bpts)
        arcs.append({"from": float(hi), "to": float(lo_next), "contains_b_fixed": has})
        if not has:
            problems.append({"arc": [float(hi), float(lo_next)], "reason": "no fixed point of b"})
    # Fix(a) is strictly smaller when some fixed point of b is away from every component
    strict = any(all(_distance_to_component(float(p), lo, hi) > tol for lo, hi in comps) for p in bpts)
    report.update(arcs=arcs, problems=problems, strict_inclusion=strict,
                  status="pass" if not problems else "fail")
    report["pass"] = not problems
    return report


def figure3_circle() -> tuple[CircleMap, CircleMap]:
    a, b = figure3_generators()
    return compactify(a, "a"), compactify(b, "b")


def g1_action_checks(grid: int = 1024, tol: float = 1e-7, iterations: int = 10_000) -> dict:
    a, b = g1_circle_generators()
    rels = {
        "a b^2 a^-1 = b^-2": relation_error(a @ b.power(2) @ a.inverse(), b.power(-2), grid),
        "b a^2 b^-1 = a^-2": relation_error(b @ a.power(2) @ b.inverse(), a.power(-2), grid),
    }
    sq = {"a^2": a.power(2), "b^2": b.power(2), "(ab)^2": (a @ b).power(2)}
    names = list(sq)
    comm = {}
    for i in range(3):
        for j in range(i + 1, 3):
            x, y = sq[names[i]], sq[names[j]]
            comm[f"[{names[i]},{names[j]}]"] = relation_error(x @ y, y @ x, grid)
    u = np.arange(grid) / grid
    equivariance = max(float(np.max(np.abs(m(u + 1) - m(u) - 1))) for m in (a, b))
    rho_b = rotation_number(b, iterations)
    rho_a = rotation_number(a, iterations)
    ok = (all(v < tol for v in rels.values()) and all(v < tol for v in comm.values())
          and abs(rho_b - 0.5) <= 2e-4 and equivariance < 1e-9)
    return {"pass": ok, "relations": rels, "commutators": comm, "rotation_b": rho_b,
            "rotation_a": rho_a, "lift_equivariance": equivariance, "tol": tol, "grid": grid}


def write_displacement_csv(path_or_file, f, xs, header=("x", "f(x)-x")) -> None:
    xs = np.asarray(xs, dtype=float)
    d = f(xs) - xs
    own = isinstance(path_or_file, str) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh)
        w.writerow(header)
        for x, y in zip(xs, d):
            w.writerow([repr(float(x)), repr(float(y))])
    finally:
        if own:
            fh.close()
