"""Verification suites, one per acceptance criterion.

Each suite returns a JSON-ready report with at least ``id``, ``name``, ``pass``,
``elapsed`` and ``time_limit``.  A suite passes only if its checks hold and it
finished within its time limit.  All randomness comes from ``seed``.
"""
from __future__ import annotations

import itertools
import math
import time
from typing import Callable

import numpy as np

from .circle import figure3_circle, g1_action_checks, lemma32_check
from .derived import (
    G2Order,
    all_g2_elements,
    g1_ball,
    g1_element_order,
    g1_relations,
    g2_multiply,
    g2_rewrite,
)
from .klein import A, B, RELATOR, BsElement, bs_multiply, bs_reduce
from .plane import (
    B_MAP,
    A_MAP,
    Conjugate,
    Disk,
    IndexComputationError,
    disk_image_relation,
    index_details,
    limit_set_estimate,
    nonwandering_witness,
    random_conjugator,
    verify_relation,
    wandering_check,
)
from .words import sigma


def _letters_to_syllables(letters):
    return [(g, s) for g, s in letters]


def suite_bs_normal_form(seed: int = 0, max_length: int = 8) -> dict:
    letters = [(A, 1), (A, -1), (B, 1), (B, -1)]
    words = [()]
    for n in range(1, max_length + 1):
        words.extend(itertools.product(letters, repeat=n))
    value = {w: bs_reduce(w) for w in words}
    inserts = (RELATOR, tuple((g, -s) for g, s in reversed(RELATOR)))
    relator_failures, hom_failures = [], []
    for w, x in value.items():
        for i in range(len(w) + 1):
            if bs_multiply(value[w[:i]], value[w[i:]]) != x:
                hom_failures.append({"word": w, "split": i})
            for r in inserts:
                if bs_reduce(w[:i] + r + w[i:]) != x:
                    relator_failures.append({"word": w, "position": i})
    return {
        "words": len(words),
        "relator_failures": [_word_str(f["word"]) for f in relator_failures[:10]],
        "homomorphism_failures": [_word_str(f["word"]) for f in hom_failures[:10]],
        "pass": not relator_failures and not hom_failures,
    }


def _word_str(letters) -> str:
    return " ".join(("ab"[g] if s > 0 else "ab"[g] + "^-1") for g, s in letters) or "e"


def suite_bs_square(seed: int = 0, bound: int = 7) -> dict:
    failures = []
    checked = 0
    for p in range(-bound, bound + 1, 1):
        if p % 2 == 0:
            continue
        for q in range(-bound, bound + 1):
            x = BsElement(p, q)
            checked += 1
            if x * x != BsElement(2 * p, 0):
                failures.append([p, q])
    return {"checked": checked, "failures": failures, "pass": not failures}


def suite_g2_product(seed: int = 0, max_word: int = 4, max_n: int = 3) -> dict:
    """Closed-form product against the rewriting oracle.

    Also counts the pairs on which the alternative sign convention, with sigma
    taken on the first factor, would disagree with the oracle.
    """
    elements = all_g2_elements(max_word, max_n)
    raw = [x.raw_syllables() for x in elements]
    parity = [sigma(x.w) % 2 for x in elements]
    failures, alt_mismatch, pairs = [], 0, 0
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            pairs += 1
            oracle = g2_rewrite(raw[i] + raw[j])
            if g2_multiply(x, y) != oracle:
                if len(failures) < 10:
                    failures.append({"x": x.to_json(), "y": y.to_json()})
            if x.n and parity[i] != parity[j]:
                # sigma(w) and sigma(w') differ in parity, so the eta parts differ
                alt_mismatch += 1
    return {"elements": len(elements), "pairs": pairs, "failures": failures,
            "first_factor_convention_mismatches": alt_mismatch,
            "convention": "sign (-1)^sigma(w') taken on the second factor",
            "pass": not failures}


def suite_g1_torsion_free(seed: int = 0, radius: int = 8) -> dict:
    rels = g1_relations()
    ball = g1_ball(radius)
    torsion = [f.to_json() for f in ball if not f.is_identity() and g1_element_order(f) != math.inf]
    return {"relations": rels, "ball_size": len(ball), "radius": radius,
            "torsion_elements": torsion[:10],
            "pass": all(rels.values()) and not torsion}


def suite_model_relation(seed: int = 0) -> dict:
    rep = verify_relation(samples=10_000, tol=1e-9, seed=seed, max_word=6, min_displacement=1e-3)
    rep.pop("displacements")
    return rep


def suite_index_values(seed: int = 0, tol: float = 1e-6) -> dict:
    cases, ok = [], True
    for k in (-3, -2, -1, 1, 2, 3):
        try:
            d = index_details(B_MAP, k, tol=tol)
        except IndexComputationError as exc:
            cases.append({"k": k, "error": str(exc)})
            ok = False
            continue
        good = d["index"] == -k / 2 and d["residual"] < tol
        ok &= good
        cases.append({"k": k, "index": d["index"], "expected": -k / 2, "residual": d["residual"]})
    return {"cases": cases, "tol": tol, "pass": bool(ok)}


def suite_index_conjugacy(seed: int = 0, count: int = 5, ks=(1, 2), tol: float = 1e-6) -> dict:
    rng = np.random.default_rng(seed)
    cases, ok = [], True
    for c in range(count):
        h = random_conjugator(rng)
        for k in ks:
            base = index_details(B_MAP, k, tol=tol)["index"]
            try:
                d = index_details(Conjugate(h, B_MAP), k, tol=tol)
            except IndexComputationError as exc:
                cases.append({"conjugator": c, "k": k, "error": str(exc)})
                ok = False
                continue
            good = d["index"] == base
            ok &= good
            cases.append({"conjugator": c, "k": k, "index": d["index"], "base": base,
                          "residual": d["residual"]})
    return {"cases": cases, "pass": bool(ok)}


def seeded_free_disks(seed: int, count: int, margin: float = 1e-6,
                      theta=(0.0, 2 * np.pi), r=(-2.0, 2.0), radius=(0.02, 0.15)) -> list[Disk]:
    """Draw disks until ``count`` of them are certified disjoint from their b-image."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(100 * count):
        d = Disk.at(rng.uniform(*theta), rng.uniform(*r), rng.uniform(*radius))
        if disk_image_relation(d, B_MAP, margin)["status"] == "disjoint":
            out.append(d)
            if len(out) == count:
                return out
    raise RuntimeError(f"could not draw {count} free disks")


def suite_wandering(seed: int = 0, count: int = 20, margin: float = 1e-6) -> dict:
    cases, ok = [], True
    for d in seeded_free_disks(seed, count, margin):
        rep = wandering_check(d, 5, 5, margin)
        ok &= rep["pass"]
        cases.append({"disk": rep["disk"], "status": rep["status"],
                      "violations": rep.get("violations", [])[:3]})
    return {"cases": cases, "margin": margin, "pass": bool(ok)}


def suite_nonwandering(seed: int = 0, n_max: int = 50) -> dict:
    rng = np.random.default_rng(seed)
    radius = rng.uniform(0.1, 0.3)
    d = Disk.at(np.pi / 2 + rng.uniform(-0.5, 0.5) * radius, rng.uniform(-1, 1), radius)
    rep = nonwandering_witness(d, n_max)
    rep["disk"] = {"theta": d.center.theta, "r": d.center.r, "radius": d.radius}
    rep["pass"] = bool(rep["found"] and rep["meets_axis_line"])
    return rep


def suite_rotation(seed: int = 0) -> dict:
    g1 = g1_action_checks(grid=1024, tol=1e-7, iterations=10_000)
    lemma = lemma32_check(*figure3_circle())
    lemma.pop("arcs", None)
    return {"g1_action": g1, "lemma32_figure3": lemma, "pass": bool(g1["pass"] and lemma["pass"])}


def suite_g2_order(seed: int = 0, max_word: int = 2, max_n: int = 2) -> dict:
    order = G2Order()
    els = all_g2_elements(max_word, max_n)
    m = len(els)
    cmp = np.array([[order.compare(x, y) for y in els] for x in els], dtype=int)
    sign = np.array([order.sign(x) for x in els])
    identity = np.array([x.is_identity() for x in els])

    total = bool(np.all((cmp == 0) == np.eye(m, dtype=bool)))
    antisym = bool(np.all(cmp == -cmp.T))
    less = (cmp < 0).astype(np.int64)
    transitive = bool(np.all(((less @ less) > 0) <= (cmp < 0)))
    # positive cone, its inverse and the identity partition the group
    inv_sign = np.array([order.sign(x.inverse()) for x in els])
    partition = bool(np.all((sign == 0) == identity) and np.all(sign == -inv_sign))

    left_bad = 0
    for g in els:
        gx = [g * x for x in els]
        for i in range(m):
            for j in range(m):
                if order.compare(gx[i], gx[j]) != cmp[i, j]:
                    left_bad += 1
    pos = [x for x, s in zip(els, sign) if s > 0]
    cone_bad = sum(1 for x in pos for y in pos if order.sign(x * y) <= 0)
    checks = {"total": total, "antisymmetric": antisym, "transitive": transitive,
              "cone_partition": partition, "left_invariant": left_bad == 0,
              "cone_closed": cone_bad == 0}
    return {"elements": m, "checks": checks, "left_invariance_failures": left_bad,
            "cone_failures": cone_bad, "pass": all(checks.values())}


def seeded_disk_near_axis(seed: int, margin: float = 1e-6) -> Disk:
    """A b-free disk close to the line theta = pi/2, drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        d = Disk.at(np.pi / 2 + rng.uniform(-0.1, 0.1), rng.uniform(-0.5, 0.5), rng.uniform(0.1, 0.25))
        if disk_image_relation(d, B_MAP, margin)["status"] == "disjoint":
            return d
    raise RuntimeError("could not draw a free disk near theta = pi/2")


def suite_limit_set(seed: int = 0, n_max: int = 20, grid: float = 0.01, first: int = 3) -> dict:
    d = seeded_disk_near_axis(seed)
    est = limit_set_estimate(d, B_MAP, n_max, grid)
    pts = est.points
    # independent check: no cloud point pulls back into D under b^0 .. b^first
    hits = {n: int(d.contains(B_MAP.power(-n)(pts)).sum()) if len(pts) else 0
            for n in range(first + 1)}
    contains_center = bool(len(pts) and np.any(np.all(np.abs(pts - d.c) <= grid / 2, axis=1)))
    est_a = limit_set_estimate(d, A_MAP, n_max, grid)
    dist = np.abs(((pts[:, 0] + np.pi / 2) % np.pi) - np.pi / 2) if len(pts) else np.array([])
    ok = len(pts) > 0 and not any(hits.values()) and not contains_center and len(est_a.points) == 0
    return {
        "disk": {"theta": d.center.theta, "r": d.center.r, "radius": d.radius},
        "grid": grid, "n_max": n_max, "cloud_points": int(len(pts)),
        "pullback_hits": {str(n): v for n, v in hits.items()},
        "contains_center": contains_center,
        "median_distance_to_theta_0_or_pi": float(np.median(dist)) if len(dist) else None,
        "cloud_points_for_a": int(len(est_a.points)),
        "pass": bool(ok),
    }


SUITES: dict[int, tuple[str, Callable[..., dict], float]] = {
    1: ("bs_normal_form", suite_bs_normal_form, 60.0),
    2: ("bs_square", suite_bs_square, 1.0),
    3: ("g2_product", suite_g2_product, 120.0),
    4: ("g1_torsion_free", suite_g1_torsion_free, 60.0),
    5: ("model_relation", suite_model_relation, 30.0),
    6: ("index_values", suite_index_values, 10.0),
    7: ("index_conjugacy", suite_index_conjugacy, 30.0),
    8: ("wandering", suite_wandering, 60.0),
    9: ("nonwandering", suite_nonwandering, 30.0),
    10: ("rotation", suite_rotation, 30.0),
    11: ("g2_order", suite_g2_order, 60.0),
    12: ("limit_set", suite_limit_set, 60.0),
}


def run_suite(case: int, seed: int = 0) -> dict:
    name, fn, limit = SUITES[case]
    t0 = time.perf_counter()
    rep = fn(seed=seed)
    elapsed = time.perf_counter() - t0
    checks_pass = bool(rep.pop("pass"))
    within = elapsed < limit
    return {"id": case, "name": name, "pass": checks_pass and within, "checks_pass": checks_pass,
            "elapsed": elapsed, "time_limit": limit, "within_time_limit": within, "report": rep}


def verify_all(seed: int = 0, cases=None) -> dict:
    ids = sorted(cases) if cases else sorted(SUITES)
    results = [run_suite(i, seed) for i in ids]
    return {"schema": 1, "seed": seed, "pass": all(r["pass"] for r in results), "suites": results}
