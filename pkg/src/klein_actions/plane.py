"""The model free action of BS(1,-1) on the plane and its numerical invariants.

Points live in the universal cover of the punctured plane with coordinates
``(theta, r)`` and covering map ``(theta, r) -> exp(-r + i theta)``.  The
generator ``a`` is the quarter turn ``(theta, r) -> (theta + pi/2, r)`` and
``b`` is the lift of ``B = diag(2, 1/2)`` that fixes the angle 0.

All maps act on arrays of shape ``(N, 2)`` (or a single ``(2,)`` point).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import ndimage

from .klein import BsElement

HALF_PI = 0.5 * np.pi


def wrap_angle(x):
    """Wrap to the interval ``[-pi, pi)``."""
    return (np.asarray(x) + np.pi) % (2 * np.pi) - np.pi


def _as_points(x) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != 2:
        raise ValueError(f"points must have a trailing dimension of 2, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


@dataclass(frozen=True)
class PlanePoint:
    theta: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.r)):
            raise ValueError(f"non-finite plane point ({self.theta}, {self.r})")

    def as_array(self) -> np.ndarray:
        return np.array([self.theta, self.r])

    def project(self) -> complex:
        return complex(np.exp(-self.r + 1j * self.theta))


def project(pts) -> np.ndarray:
    """Covering map to the punctured plane, as complex numbers."""
    pts = np.asarray(pts, dtype=float)
    return np.exp(-pts[..., 1] + 1j * pts[..., 0])


# -- maps -------------------------------------------------------------------

class PlaneMap:
    """A homeomorphism of the (theta, r) plane with a known inverse."""

    def __call__(self, pts) -> np.ndarray:
        raise NotImplementedError

    def inverse(self) -> "PlaneMap":
        raise NotImplementedError

    def power(self, n: int) -> "PlaneMap":
        if n == 0:
            return Composite(())
        base = self if n > 0 else self.inverse()
        return Composite((base,) * abs(n))

    def __matmul__(self, other: "PlaneMap") -> "PlaneMap":
        return Composite((self, other))


@dataclass(frozen=True)
class Composite(PlaneMap):
    """``maps[0] o maps[1] o ...``; the last map is applied first."""

    maps: tuple = ()

    def __call__(self, pts):
        out = _as_points(pts)
        for m in reversed(self.maps):
            out = m(out)
        return out

    def inverse(self):
        return Composite(tuple(m.inverse() for m in reversed(self.maps)))


def b_power(pts: np.ndarray, q: int) -> np.ndarray:
    """Closed form of ``b**q``: the lift of ``diag(2**q, 2**-q)`` fixing angle 0."""
    th, r = pts[..., 0], pts[..., 1]
    if q == 0:
        return np.stack([th, r], axis=-1)
    s = 2.0**q
    c, sn = np.cos(th), np.sin(th)
    # the image angle stays within pi/2 of theta, so principal wrapping picks the lift
    new_th = th + wrap_angle(np.arctan2(sn / s, c * s) - th)
    new_r = r - 0.5 * np.log((s * c) ** 2 + (sn / s) ** 2)
    return np.stack([new_th, new_r], axis=-1)


@dataclass(frozen=True)
class ModelMap(PlaneMap):
    """The model action of ``a**p b**q``: ``b**q`` first, then ``a**p``."""

    element: BsElement = BsElement()

    def __call__(self, pts):
        pts = _as_points(pts)
        out = b_power(pts, self.element.q)
        out[..., 0] += self.element.p * HALF_PI
        return out

    def inverse(self):
        return ModelMap(self.element.inverse())

    def power(self, n: int):
        return ModelMap(self.element**n)


A_MAP = ModelMap(BsElement(1, 0))
B_MAP = ModelMap(BsElement(0, 1))


def model_apply(g: BsElement, x):
    """Apply the model action of ``g`` to a PlanePoint or an array of points."""
    if isinstance(x, PlanePoint):
        th, r = ModelMap(g)(x.as_array())
        return PlanePoint(float(th), float(r))
    return ModelMap(g)(x)


def matrix_action(g: BsElement, z):
    """Action of ``A**p B**q`` on complex points, for checking the lift."""
    z = np.asarray(z, dtype=complex)
    s = 2.0**g.q
    z = s * z.real + 1j * z.imag / s
    return z * (1j**(g.p % 4))


# -- conjugators commuting with a ------------------------------------------

def _invert_monotone(f: Callable, y: np.ndarray, lo: np.ndarray, hi: np.ndarray, iters: int = 80):
    lo, hi = lo.copy(), hi.copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = f(mid) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class PeriodicConjugator(PlaneMap):
    """A homeomorphism commuting with the quarter turn ``a``.

    ``H = T o S o U`` with ``U: theta += u sin(4 theta + phase_u)``,
    ``S: r += s sin(4 theta + phase_s)`` and ``T: theta += t sin(r)``.
    Requires ``4 |u| < 1`` so that U is monotone in theta.
    """

    u: float = 0.0
    phase_u: float = 0.0
    s: float = 0.0
    phase_s: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if 4 * abs(self.u) >= 1:
            raise ValueError("need 4|u| < 1 for the theta undulation to be a homeomorphism")

    def _u(self, th):
        return th + self.u * np.sin(4 * th + self.phase_u)

    def __call__(self, pts):
        pts = _as_points(pts)
        th, r = pts[..., 0], pts[..., 1]
        th = self._u(th)
        r = r + self.s * np.sin(4 * th + self.phase_s)
        th = th + self.t * np.sin(r)
        return np.stack([th, r], axis=-1)

    def inverse(self):
        return _InverseConjugator(self)

    def _apply_inverse(self, pts):
        pts = _as_points(pts)
        th, r = pts[..., 0], pts[..., 1]
        th = th - self.t * np.sin(r)
        r = r - self.s * np.sin(4 * th + self.phase_s)
        d = abs(self.u) + 1e-12
        th = _invert_monotone(self._u, th, th - d, th + d)
        return np.stack([th, r], axis=-1)


@dataclass(frozen=True)
class _InverseConjugator(PlaneMap):
    forward: PeriodicConjugator

    def __call__(self, pts):
        return self.forward._apply_inverse(pts)

    def inverse(self):
        return self.forward


@dataclass(frozen=True)
class Conjugate(PlaneMap):
    """``h o base o h^-1``."""

    h: PlaneMap
    base: PlaneMap

    def __call__(self, pts):
        return self.h(self.base(self.h.inverse()(pts)))

    def inverse(self):
        return Conjugate(self.h, self.base.inverse())

    def power(self, n: int):
        return Conjugate(self.h, self.base.power(n))


def random_conjugator(rng: np.random.Generator) -> PeriodicConjugator:
    return PeriodicConjugator(
        u=rng.uniform(-0.2, 0.2),
        phase_u=rng.uniform(0, 2 * np.pi),
        s=rng.uniform(-0.5, 0.5),
        phase_s=rng.uniform(0, 2 * np.pi),
        t=rng.uniform(-0.5, 0.5),
    )


# -- relation and freeness --------------------------------------------------

def verify_relation(samples: int = 10_000, tol: float = 1e-9, seed: int = 0,
                    max_word: int = 6, min_displacement: float = 1e-3) -> dict:
    """Check ``a b a^-1 = b^-1`` and freeness of ``a^p b^q`` on seeded sample points."""
    rng = np.random.default_rng(seed)
    pts = np.column_stack([rng.uniform(-2 * np.pi, 2 * np.pi, samples),
                           rng.uniform(-3.0, 3.0, samples)])
    lhs = A_MAP(B_MAP(A_MAP.inverse()(pts)))
    rhs = B_MAP.inverse()(pts)
    sup_error = float(np.max(np.linalg.norm(lhs - rhs, axis=1)))

    displacements = {}
    failures = []
    for p in range(-max_word, max_word + 1):
        for q in range(-max_word, max_word + 1):
            if not 0 < abs(p) + abs(q) <= max_word:
                continue
            d = float(np.min(np.linalg.norm(ModelMap(BsElement(p, q))(pts) - pts, axis=1)))
            displacements[f"{p},{q}"] = d
            if not d > min_displacement:
                failures.append({"p": p, "q": q, "min_displacement": d})
    ok = sup_error < tol and not failures
    return {
        "pass": ok,
        "samples": samples,
        "seed": seed,
        "relation_sup_error": sup_error,
        "relation_tol": tol,
        "min_displacement": min(displacements.values()) if displacements else None,
        "min_displacement_threshold": min_displacement,
        "displacements": displacements,
        "failures": failures,
    }


# -- index ------------------------------------------------------------------

class IndexComputationError(ValueError):
    """The index computation could not certify a half-integer."""


def _displacement_angles(f: PlaneMap, pts: np.ndarray) -> np.ndarray:
    v = f(pts) - pts
    norm = np.hypot(v[:, 0], v[:, 1])
    if np.any(norm == 0):
        raise IndexComputationError("map has a fixed point on the curve")
    return np.arctan2(v[:, 1], v[:, 0])


def _refined_turning(f: PlaneMap, p0: np.ndarray, p1: np.ndarray, initial: int,
                     max_turn: float, max_depth: int) -> tuple[float, int]:
    """Total turning of ``f(x) - x`` along the segment p0 -> p1, bisecting where needed."""
    t = np.linspace(0.0, 1.0, initial + 1)
    ang = _displacement_angles(f, p0 + t[:, None] * (p1 - p0))
    for _ in range(max_depth + 1):
        inc = wrap_angle(np.diff(ang))
        bad = np.abs(inc) >= max_turn
        if not bad.any():
            return float(inc.sum()), len(t) - 1
        idx = np.nonzero(bad)[0]
        mids = 0.5 * (t[idx] + t[idx + 1])
        mid_ang = _displacement_angles(f, p0 + mids[:, None] * (p1 - p0))
        t = np.insert(t, idx + 1, mids)
        ang = np.insert(ang, idx + 1, mid_ang)
    raise IndexComputationError(f"angular refinement did not converge within depth {max_depth}")


def index_details(map_b: PlaneMap, k: int, seed_point=(0.3, 0.1), tol: float = 1e-6,
                  waypoints: Sequence | None = None, initial: int = 64,
                  max_turn: float = HALF_PI / 2, max_depth: int = 40) -> dict:
    """Index of ``map_b`` relative to ``tau = a**k``.

    For even k the curve joins x to ``tau(x)`` (map_b commutes with tau); for
    odd k it joins x to ``tau(map_b(x))`` (map_b anti-commutes with tau).  The
    curve is the polyline through ``waypoints``.  Raises
    :class:`IndexComputationError` if the turning number is not within ``tol``
    of a half-integer.
    """
    if k == 0:
        raise ValueError("tau must be a nontrivial power of a")
    x0 = _as_points(seed_point.as_array() if isinstance(seed_point, PlanePoint) else seed_point)
    tau = ModelMap(BsElement(k, 0))
    end = tau(x0) if k % 2 == 0 else tau(map_b(x0))
    nodes = [x0] + [_as_points(w) for w in (waypoints or [])] + [end]
    total, segments = 0.0, 0
    for p0, p1 in zip(nodes[:-1], nodes[1:]):
        turn, n = _refined_turning(map_b, p0, p1, initial, max_turn, max_depth)
        total += turn
        segments += n
    raw = total / (2 * np.pi)
    value = round(2 * raw) / 2
    residual = abs(raw - value)
    if residual > tol:
        raise IndexComputationError(
            f"turning number {raw:.9f} is {residual:.3g} away from a half-integer (tol {tol})")
    return {"index": value, "raw": raw, "residual": residual, "segments": segments,
            "endpoint": end.tolist()}


def index(map_b: PlaneMap, k: int, seed_point=(0.3, 0.1), tol: float = 1e-6,
          waypoints: Sequence | None = None) -> float:
    return index_details(map_b, k, seed_point, tol, waypoints)["index"]


# -- disks and intersections -----------------------------------------------

@dataclass(frozen=True)
class Disk:
    center: PlanePoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    @classmethod
    def at(cls, theta: float, r: float, radius: float) -> "Disk":
        return cls(PlanePoint(theta, r), radius)

    @property
    def c(self) -> np.ndarray:
        return self.center.as_array()

    def boundary(self, n: int | None = None) -> np.ndarray:
        # arc spacing at most radius / 32
        n = n or int(math.ceil(2 * np.pi * 32)) + 1
        t = np.linspace(0, 2 * np.pi, n, endpoint=False)
        return self.c + self.radius * np.column_stack([np.cos(t), np.sin(t)])

    def polar_grid(self, rings: int = 16, spokes: int = 64) -> np.ndarray:
        rad = self.radius * np.sqrt(np.linspace(0, 1, rings + 1)[1:])
        ang = np.linspace(0, 2 * np.pi, spokes, endpoint=False)
        rr, aa = np.meshgrid(rad, ang)
        pts = self.c + np.column_stack([(rr * np.cos(aa)).ravel(), (rr * np.sin(aa)).ravel()])
        return np.vstack([self.c, pts])

    def contains(self, pts, margin: float = 0.0) -> np.ndarray:
        return np.linalg.norm(np.atleast_2d(pts) - self.c, axis=1) <= self.radius - margin

    def meets_axis_line(self) -> bool:
        """Whether the disk meets one of the b-invariant lines ``theta = k pi/2``."""
        th = self.center.theta
        return abs(th - HALF_PI * round(th / HALF_PI)) <= self.radius


def _clip_to_disk(d: Disk, pts: np.ndarray) -> np.ndarray:
    v = pts - d.c
    n = np.linalg.norm(v, axis=1)
    scale = np.where(n > d.radius, d.radius / np.maximum(n, 1e-300), 1.0)
    return d.c + v * scale[:, None]


def _search_witness(d: Disk, g: PlaneMap, levels: int = 8, keep: int = 8):
    """Coarse-to-fine search for y in D minimising |g(y) - center|."""
    pts = np.vstack([d.polar_grid(), d.boundary()])
    best_y, best_f = None, np.inf
    h = d.radius / 4
    offsets = np.stack(np.meshgrid(np.linspace(-1, 1, 9), np.linspace(-1, 1, 9)), -1).reshape(-1, 2)
    for _ in range(levels):
        f = np.linalg.norm(g(pts) - d.c, axis=1)
        order = np.argsort(f)[:keep]
        if f[order[0]] < best_f:
            best_f, best_y = float(f[order[0]]), pts[order[0]]
        pts = _clip_to_disk(d, (pts[order][:, None, :] + h * offsets[None]).reshape(-1, 2))
        h /= 4
    return best_y, best_f


def disk_image_relation(d: Disk, g: PlaneMap, margin: float = 1e-6) -> dict:
    """Classify ``D`` vs ``g(D)`` as ``disjoint``, ``intersect`` or ``inconclusive``.

    ``intersect`` comes with a witness y in D with g(y) in D.  ``disjoint``
    requires the sampled image of the boundary to stay outside D by more than
    the margin plus half the largest gap between consecutive image samples,
    and ``g^-1(center)`` to lie outside D.
    """
    y, fy = _search_witness(d, g)
    if fy < d.radius - margin:
        return {"status": "intersect", "witness": y.tolist(), "image": g(y).tolist()}
    pre_c = g.inverse()(d.c)
    if np.linalg.norm(pre_c - d.c) < d.radius - margin:
        return {"status": "intersect", "witness": pre_c.tolist(), "image": d.c.tolist()}

    img = g(d.boundary())
    gaps = np.linalg.norm(np.diff(np.vstack([img, img[:1]]), axis=0), axis=1)
    clearance = float(np.min(np.linalg.norm(img - d.c, axis=1)) - d.radius)
    slack = 0.5 * float(gaps.max())
    inverse_clearance = float(np.linalg.norm(pre_c - d.c) - d.radius)
    if clearance - slack > margin and inverse_clearance > margin:
        return {"status": "disjoint", "clearance": clearance - slack}
    return {"status": "inconclusive", "clearance": clearance - slack,
            "inverse_clearance": inverse_clearance}


def wandering_check(d: Disk, p_range: int = 5, q_range: int = 5, margin: float = 1e-6) -> dict:
    """Check that a b-free disk is disjoint from all its images under ``a^(2p) b^q``."""
    free = disk_image_relation(d, B_MAP, margin)
    report = {
        "disk": {"theta": d.center.theta, "r": d.center.r, "radius": d.radius},
        "p_range": p_range, "q_range": q_range, "margin": margin,
        "b_free": free,
    }
    if free["status"] != "disjoint":
        report.update(status="precondition_failed", **{"pass": False})
        return report
    violations, inconclusive = [], []
    checked = 0
    for p in range(-p_range, p_range + 1):
        for q in range(-q_range, q_range + 1):
            if p == 0 and q == 0:
                continue
            rel = disk_image_relation(d, ModelMap(BsElement(2 * p, q)), margin)
            checked += 1
            if rel["status"] == "intersect":
                violations.append({"p": p, "q": q, **rel})
            elif rel["status"] == "inconclusive":
                inconclusive.append({"p": p, "q": q, **rel})
    ok = not violations and not inconclusive
    report.update(status="pass" if ok else ("fail" if violations else "inconclusive"),
                  checked=checked, violations=violations, inconclusive=inconclusive)
    report["pass"] = ok
    return report


def nonwandering_witness(d: Disk, n_max: int = 50, margin: float = 1e-6) -> dict:
    """Search n <= n_max and both signs for ``b^(+-n) a (D)`` meeting D."""
    for n in range(1, n_max + 1):
        for sign in (1, -1):
            g = ModelMap(BsElement(0, sign * n) * BsElement(1, 0))
            y, fy = _search_witness(d, g)
            if fy < d.radius - margin:
                return {"found": True, "n": n, "sign": sign, "witness": y.tolist(),
                        "image": g(y).tolist(), "meets_axis_line": d.meets_axis_line()}
    return {"found": False, "n_max": n_max, "meets_axis_line": d.meets_axis_line()}


# -- limit sets -------------------------------------------------------------

@dataclass(frozen=True)
class CurveSample:
    points: np.ndarray
    tolerance: float = 1e-3

    def __post_init__(self):
        pts = _as_points(self.points)
        if pts.ndim != 2 or len(pts) < 2:
            raise ValueError("a curve needs at least two points")
        if np.any(np.linalg.norm(np.diff(pts, axis=0), axis=1) == 0):
            raise ValueError("consecutive curve points must be distinct")
        object.__setattr__(self, "points", pts)

    def at(self, t: np.ndarray) -> np.ndarray:
        """Piecewise-linear parametrisation on [0, 1]."""
        m = len(self.points) - 1
        s = np.clip(np.asarray(t) * m, 0, m)
        i = np.minimum(s.astype(int), m - 1)
        frac = (s - i)[:, None]
        return self.points[i] * (1 - frac) + self.points[i + 1] * frac


@dataclass
class Raster:
    """Grid-quantised subset of a rectangular window of the (theta, r) plane."""

    window: tuple[float, float, float, float]
    grid: float
    cells: np.ndarray = field(init=False)

    def __post_init__(self):
        t0, t1, r0, r1 = self.window
        self.shape = (int(math.ceil((t1 - t0) / self.grid)), int(math.ceil((r1 - r0) / self.grid)))
        self.cells = np.zeros(self.shape, dtype=bool)

    def indices(self, pts: np.ndarray):
        t0, _, r0, _ = self.window
        i = np.floor((pts[:, 0] - t0) / self.grid).astype(np.int64)
        j = np.floor((pts[:, 1] - r0) / self.grid).astype(np.int64)
        ok = (i >= 0) & (i < self.shape[0]) & (j >= 0) & (j < self.shape[1])
        return i[ok], j[ok]

    def mark(self, pts: np.ndarray) -> None:
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        i, j = self.indices(pts)
        self.cells[i, j] = True

    def centers(self) -> np.ndarray:
        t0, _, r0, _ = self.window
        i = (np.arange(self.shape[0]) + 0.5) * self.grid + t0
        j = (np.arange(self.shape[1]) + 0.5) * self.grid + r0
        ii, jj = np.meshgrid(i, j, indexing="ij")
        return np.column_stack([ii.ravel(), jj.ravel()])

    def occupied(self) -> np.ndarray:
        return self.centers()[self.cells.ravel()]

    def cell_of(self, pts: np.ndarray) -> set:
        i, j = self.indices(np.atleast_2d(pts))
        return set(zip(i.tolist(), j.tolist()))


def _outside_distance(pts: np.ndarray, window) -> np.ndarray:
    t0, t1, r0, r1 = window
    dt = np.maximum(np.maximum(t0 - pts[:, 0], pts[:, 0] - t1), 0)
    dr = np.maximum(np.maximum(r0 - pts[:, 1], pts[:, 1] - r1), 0)
    return np.hypot(dt, dr)


def trace_image(param: Callable, f: PlaneMap, grid: float, window, closed: bool,
                max_points: int = 4_000_000, max_depth: int = 60) -> np.ndarray:
    """Adaptively sample ``f(param(t))`` so that consecutive samples inside the
    window are closer than ``grid / 2``.

    Segments whose endpoints both lie farther from the window than the segment
    length are not refined; this is a heuristic truncation.
    """
    t = np.linspace(0.0, 1.0, 513)
    img = f(param(t))
    for _ in range(max_depth):
        gap = np.linalg.norm(np.diff(img, axis=0), axis=1)
        gap = np.where(np.isfinite(gap), gap, np.inf)
        far = np.minimum(_outside_distance(img[:-1], window), _outside_distance(img[1:], window))
        need = (gap > 0.5 * grid) & (far <= gap) & (np.diff(t) > 2.0**-max_depth)
        if not need.any() or len(t) > max_points:
            break
        idx = np.nonzero(need)[0]
        mids = 0.5 * (t[idx] + t[idx + 1])
        t = np.insert(t, idx + 1, mids)
        img = np.insert(img, idx + 1, f(param(mids)), axis=0)
    return img


def _rasterize_image(k, f: PlaneMap, raster: Raster) -> np.ndarray:
    """Cells met by ``f(k)``: traced boundary plus cell centres pulled back into k."""
    r = Raster(raster.window, raster.grid)
    if isinstance(k, Disk):
        param = lambda t: k.c + k.radius * np.column_stack([np.cos(2 * np.pi * t), np.sin(2 * np.pi * t)])
        r.mark(trace_image(param, f, raster.grid, raster.window, closed=True))
        centers = raster.centers()
        inside = k.contains(f.inverse()(centers))
        r.cells |= inside.reshape(r.shape)
    else:
        r.mark(trace_image(k.at, f, raster.grid, raster.window, closed=False))
    return r.cells


def _is_free(k, f: PlaneMap, margin: float) -> bool:
    if isinstance(k, Disk):
        return disk_image_relation(k, f, margin)["status"] == "disjoint"
    from scipy.spatial import cKDTree

    t = np.linspace(0, 1, max(2, 50 * len(k.points)))
    pts = k.at(t)
    img = trace_image(k.at, f, k.tolerance, (-np.inf, np.inf, -np.inf, np.inf), closed=False,
                      max_points=200_000, max_depth=20)
    spacing = max(float(np.max(np.linalg.norm(np.diff(pts, axis=0), axis=1))), k.tolerance)
    d, _ = cKDTree(pts).query(img)
    return bool(np.min(d) > margin + spacing)


@dataclass
class LimitSetEstimate:
    points: np.ndarray
    window: tuple
    grid: float
    n_stable: int
    n_max: int
    raster: Raster

    def to_json(self) -> dict:
        return {"n_points": int(len(self.points)), "window": list(self.window), "grid": self.grid,
                "n_stable": self.n_stable, "n_max": self.n_max, "points": self.points.tolist()}


def default_window(k) -> tuple:
    c = k.c if isinstance(k, Disk) else k.points.mean(axis=0)
    return (c[0] - np.pi, c[0] + np.pi, c[1] - 5.0, c[1] + 5.0)


def limit_set_estimate(k, f: PlaneMap, n_max: int, grid: float = 0.01, window=None,
                       margin: float = 1e-6) -> LimitSetEstimate:
    """Grid estimate of the forward limit set of a free compact set ``k``.

    Returns the cells of the window met by ``f^n(k)`` for ``n_max // 2 <= n <= n_max``,
    minus the cells (dilated by one) met by ``f^n(k)`` for ``n <= (n_max // 2) // 2``.
    Points escaping the window are dropped.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if not _is_free(k, f, margin):
        raise ValueError("the compact set is not free for the map")
    window = tuple(window) if window is not None else default_window(k)
    raster = Raster(window, grid)
    n_stable = max(1, n_max // 2)
    late = np.zeros(raster.shape, dtype=bool)
    for n in range(n_stable, n_max + 1):
        late |= _rasterize_image(k, f.power(n), raster)
    early = np.zeros(raster.shape, dtype=bool)
    for n in range(0, n_stable // 2 + 1):
        early |= _rasterize_image(k, f.power(n), raster)
    early = ndimage.binary_dilation(early, structure=np.ones((3, 3), dtype=bool))
    raster.cells = late & ~early
    return LimitSetEstimate(raster.occupied(), window, grid, n_stable, n_max, raster)


# -- io ---------------------------------------------------------------------

def write_points_csv(path_or_file, pts, header=("theta", "r")) -> None:
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh)
        w.writerow(header)
        for row in pts:
            w.writerow([repr(float(v)) for v in row])
    finally:
        if own:
            fh.close()


def read_points_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
