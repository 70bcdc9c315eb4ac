"""Command-line front end.

Every command prints one JSON document (with ``"schema": 1``) or, where noted,
CSV.  Exit status: 0 on success, 1 when a verification fails (the JSON report
is still printed), 2 on usage errors or malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import circle, plane
from .derived import AffineIso3, G2Element, G2Order, g1_element_order, g1_eval, g2_rewrite
from .klein import BsElement, bs_reduce
from .verify import SUITES, run_suite, verify_all

SCHEMA = 1


class UsageError(ValueError):
    pass


def _load_json(text: str, what: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from None


def _bs_arg(text: str) -> BsElement:
    if text.lstrip().startswith("{"):
        return BsElement.from_json(_load_json(text, "BS(1,-1) element"))
    return bs_reduce(text)


def _g2_arg(text: str) -> G2Element:
    if text.lstrip().startswith("{"):
        return G2Element.from_json(_load_json(text, "G2 element"))
    return g2_rewrite(text)


def _g1_arg(text: str) -> AffineIso3:
    if text.lstrip().startswith("{"):
        return AffineIso3.from_json(_load_json(text, "G1 element"))
    return g1_eval(text)


def _disk(args) -> plane.Disk:
    if args.radius <= 0:
        raise UsageError("--radius must be positive")
    return plane.Disk.at(args.theta, args.r, args.radius)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, payload: dict, status: int = 0) -> int:
    doc = {"schema": SCHEMA, **_jsonable(payload)}
    _write(args, json.dumps(doc) + "\n")
    return status


def _emit_csv(args, header, rows) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    _write(args, buf.getvalue())
    return 0


def _report(args, rep: dict) -> int:
    return _emit(args, rep, 0 if rep.get("pass") else 1)


# -- handlers ---------------------------------------------------------------

def cmd_bs_reduce(args):
    return _emit(args, bs_reduce(args.word).to_json())


def cmd_bs_mul(args):
    return _emit(args, (_bs_arg(args.x) * _bs_arg(args.y)).to_json())


def cmd_bs_inv(args):
    return _emit(args, _bs_arg(args.x).inverse().to_json())


def cmd_g2_reduce(args):
    return _emit(args, g2_rewrite(args.word).to_json())


def cmd_g2_mul(args):
    return _emit(args, (_g2_arg(args.x) * _g2_arg(args.y)).to_json())


def cmd_g2_compare(args):
    c = G2Order().compare(_g2_arg(args.x), _g2_arg(args.y))
    return _emit(args, {"result": {-1: "less", 0: "equal", 1: "greater"}[c]})


def cmd_g1_eval(args):
    return _emit(args, _g1_arg(args.word).to_json())


def cmd_g1_order(args):
    order = g1_element_order(_g1_arg(args.word))
    return _emit(args, {"order": "infinite" if order == math.inf else order})


def cmd_g1_verify(args):
    return _suite(args, 4)


def _input_points(args) -> np.ndarray:
    if args.input:
        return plane.read_points_csv(args.input)
    if args.theta is None or args.r is None:
        raise UsageError("give --theta and --r, or --in with a CSV of points")
    return np.array([[args.theta, args.r]])


def cmd_plane_apply(args):
    g = _bs_arg(args.element)
    pts = plane.model_apply(g, _input_points(args))
    if args.format == "csv":
        return _emit_csv(args, ("theta", "r"), pts)
    return _emit(args, {"element": g.to_json(), "points": pts})


def cmd_plane_index(args):
    if args.k == 0:
        raise UsageError("--k must be nonzero")
    f = plane.B_MAP
    if args.conjugator_seed is not None:
        f = plane.Conjugate(plane.random_conjugator(np.random.default_rng(args.conjugator_seed)), f)
    tol = args.tol if args.tol is not None else 1e-6
    try:
        d = plane.index_details(f, args.k, tol=tol)
    except plane.IndexComputationError as exc:
        return _emit(args, {"pass": False, "k": args.k, "error": str(exc)}, 1)
    if not args.verbose:
        return _emit(args, {"index": d["index"]})
    return _emit(args, {"k": args.k, **d})


def cmd_plane_wandering(args):
    margin = args.tol if args.tol is not None else 1e-6
    return _report(args, plane.wandering_check(_disk(args), args.p_range, args.q_range, margin))


def cmd_plane_nonwandering(args):
    rep = plane.nonwandering_witness(_disk(args), args.n_max)
    rep["pass"] = rep["found"]
    return _report(args, rep)


def cmd_plane_limitset(args):
    f = {"a": plane.A_MAP, "b": plane.B_MAP}[args.map]
    try:
        est = plane.limit_set_estimate(_disk(args), f, args.n_max, args.grid)
    except ValueError as exc:
        return _emit(args, {"pass": False, "error": str(exc)}, 1)
    if args.format == "csv":
        return _emit_csv(args, ("theta", "r"), est.points)
    return _emit(args, est.to_json())


def cmd_plane_verify(args):
    tol = args.tol if args.tol is not None else 1e-9
    rep = plane.verify_relation(samples=args.samples, tol=tol, seed=args.seed)
    rep.pop("displacements")
    return _report(args, rep)


def _circle_map(name: str, rho: float) -> circle.CircleMap:
    if name == "rotation":
        return circle.rigid_rotation(rho)
    a3, b3 = circle.figure3_circle()
    a1, b1 = circle.g1_circle_generators()
    table = {"figure3-a": a3, "figure3-b": b3, "g1-a": a1, "g1-b": b1, "g1-ab": a1 @ b1}
    return table[name]


def _circle_csv(args, f: circle.CircleMap) -> int:
    u = np.arange(args.grid) / args.grid
    return _emit_csv(args, ("x", "f(x)-x"), np.column_stack([u, f.displacement(u)]))


def cmd_circle_figure3(args):
    a, b = circle.figure3_circle()
    if args.format == "csv":
        return _circle_csv(args, {"a": a, "b": b}[args.map])
    la, lb = circle.figure3_generators()
    x = np.linspace(-10, 10, 4001)
    line_err = float(np.max(np.abs(la(lb(la.inverse()(x))) - lb.inverse()(x))))
    lemma = circle.lemma32_check(a, b, args.grid)
    rep = {"line_relation_error": line_err, "b(1/2)": float(lb(0.5)),
           "circle_relation_error": lemma["relation_error"],
           "rotation_a": circle.rotation_number(a, args.iterations),
           "rotation_b": circle.rotation_number(b, args.iterations),
           "lemma32": lemma}
    rep["pass"] = bool(lemma["pass"])
    return _report(args, rep)


def cmd_circle_g1_action(args):
    a, b = circle.g1_circle_generators()
    if args.format == "csv":
        return _circle_csv(args, {"a": a, "b": b}[args.map])
    tol = args.tol if args.tol is not None else 1e-7
    return _report(args, circle.g1_action_checks(args.grid, tol, args.iterations))


def cmd_circle_rotnum(args):
    f = _circle_map(args.map, args.rho)
    return _emit(args, {"map": args.map, "iterations": args.iterations,
                        "rotation_number": circle.rotation_number(f, args.iterations)})


def cmd_circle_lemma32(args):
    if args.pair == "figure3":
        a, b = circle.figure3_circle()
    elif args.pair == "g1":
        a, b = circle.g1_circle_generators()
    else:
        a, b = circle.rigid_rotation(args.rho), circle.identity_circle()
    return _report(args, circle.lemma32_check(a, b, args.grid))


def _suite(args, case: int) -> int:
    r = run_suite(case, args.seed)
    return _report(args, r)


def cmd_verify_all(args):
    cases = args.case or None
    if cases and any(c not in SUITES for c in cases):
        raise UsageError(f"--case must be among {sorted(SUITES)}")
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        ids = sorted(cases or SUITES)
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(run_suite, ids, [args.seed] * len(ids)))
        rep = {"seed": args.seed, "pass": all(r["pass"] for r in results), "suites": results}
    else:
        rep = verify_all(args.seed, cases)
    rep.pop("schema", None)
    if args.summary:
        for r in rep["suites"]:
            print(f"[{'PASS' if r['pass'] else 'FAIL'}] {r['id']:2d} {r['name']} "
                  f"({r['elapsed']:.2f}s / {r['time_limit']:.0f}s)", file=sys.stderr)
    return _report(args, rep)


# -- parser -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized samples (default 0)")
    p.add_argument("--tol", type=float, default=None, help="tolerance override for the check")
    p.add_argument("--out", default=None, help="write output to this path instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    return p


def _disk_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta", type=float, required=True, help="disk centre angle")
    p.add_argument("--r", type=float, required=True, help="disk centre log-radius coordinate")
    p.add_argument("--radius", type=float, required=True, help="disk radius in (theta, r)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="klein-actions",
        description="Actions of BS(1,-1), G1 and G2 on the line, circle and plane.",
    )
    top = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help, epilog=None):
        p = sub.add_parser(name, parents=[common], help=help, description=help, epilog=epilog,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(fn=fn)
        return p

    elem = 'word such as "bab" or "a^2 b^-1", or JSON {"p": int, "q": int}'

    bs = top.add_parser("bs", help="BS(1,-1) normal forms").add_subparsers(dest="cmd", required=True)
    leaf(bs, "reduce", cmd_bs_reduce, "normal form a^p b^q of a word").add_argument("word")
    p = leaf(bs, "mul", cmd_bs_mul, "product of two elements")
    p.add_argument("x", help=elem)
    p.add_argument("y", help=elem)
    leaf(bs, "inv", cmd_bs_inv, "inverse of an element").add_argument("x", help=elem)

    g2e = 'word over a, b, g (alpha, beta, gamma) or JSON {"w": "a g^-1", "n": int}'
    g2 = top.add_parser("g2", help="G2 normal forms and order").add_subparsers(dest="cmd", required=True)
    leaf(g2, "reduce", cmd_g2_reduce, "normal form w b^n of a word").add_argument("word", help=g2e)
    p = leaf(g2, "mul", cmd_g2_mul, "product of two elements")
    p.add_argument("x", help=g2e)
    p.add_argument("y", help=g2e)
    p = leaf(g2, "compare", cmd_g2_compare, "compare two elements in the left order")
    p.add_argument("x", help=g2e)
    p.add_argument("y", help=g2e)

    g1e = 'word over a, b or JSON {"linear": "[+,-,-]", "t": ["1/2", "0", "0"]}'
    g1 = top.add_parser("g1", help="G1 as affine isometries").add_subparsers(dest="cmd", required=True)
    leaf(g1, "eval", cmd_g1_eval, "affine isometry of a word").add_argument("word", help=g1e)
    leaf(g1, "order", cmd_g1_order, "order of an element").add_argument("word", help=g1e)
    leaf(g1, "verify", cmd_g1_verify, "relations and torsion-freeness on the radius-8 ball")

    pl = top.add_parser("plane", help="the model action on the plane").add_subparsers(dest="cmd", required=True)
    p = leaf(pl, "apply", cmd_plane_apply, "apply a^p b^q to points",
             epilog="CSV input and output columns: theta,r (header row required on input).")
    p.add_argument("element", help=elem)
    p.add_argument("--theta", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--in", dest="input", help="CSV file of points with columns theta,r")
    p = leaf(pl, "index", cmd_plane_index, "index I(b, a^k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--conjugator-seed", type=int, default=None,
                   help="conjugate b by a seeded homeomorphism commuting with a")
    p.add_argument("--verbose", action="store_true", help="include raw turning number and residual")
    p = leaf(pl, "wandering", cmd_plane_wandering,
             "check D against a^(2p) b^q (D); --tol sets the margin")
    _disk_args(p)
    p.add_argument("--p-range", type=int, default=5)
    p.add_argument("--q-range", type=int, default=5)
    p = leaf(pl, "nonwandering", cmd_plane_nonwandering, "search b^(+-n) a (D) meeting D")
    _disk_args(p)
    p.add_argument("--n-max", type=int, default=50)
    p = leaf(pl, "limitset", cmd_plane_limitset, "grid estimate of the forward limit set of a disk",
             epilog="CSV columns: theta,r (centres of occupied grid cells).")
    _disk_args(p)
    p.add_argument("--map", choices=("a", "b"), default="b")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--grid", type=float, default=0.01)
    p = leaf(pl, "verify", cmd_plane_verify, "relation and freeness on seeded samples")
    p.add_argument("--samples", type=int, default=10_000)

    disp = "CSV columns: x,f(x)-x on a uniform grid of the circle [0, 1)."
    ci = top.add_parser("circle", help="line and circle actions").add_subparsers(dest="cmd", required=True)
    p = leaf(ci, "figure3", cmd_circle_figure3, "the compactified line action", epilog=disp)
    p.add_argument("--map", choices=("a", "b"), default="b", help="map exported with --format csv")
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--iterations", type=int, default=10_000)
    p = leaf(ci, "g1-action", cmd_circle_g1_action, "the circle action of G1", epilog=disp)
    p.add_argument("--map", choices=("a", "b"), default="b", help="map exported with --format csv")
    p.add_argument("--grid", type=int, default=1024)
    p.add_argument("--iterations", type=int, default=10_000)
    p = leaf(ci, "rotnum", cmd_circle_rotnum, "rotation number of a circle map")
    p.add_argument("--map", choices=("figure3-a", "figure3-b", "g1-a", "g1-b", "g1-ab", "rotation"),
                   required=True)
    p.add_argument("--rho", type=float, default=0.0, help="angle for --map rotation")
    p.add_argument("--iterations", type=int, default=10_000)
    p = leaf(ci, "lemma32", cmd_circle_lemma32,
             "fixed-point inclusion check for a pair with a b a^-1 = b^-1")
    p.add_argument("--pair", choices=("figure3", "g1", "rotation"), default="figure3",
                   help="rotation pairs a rigid rotation by --rho with the identity")
    p.add_argument("--rho", type=float, default=0.25)
    p.add_argument("--grid", type=int, default=1024)

    ve = top.add_parser("verify", help="acceptance suites").add_subparsers(dest="cmd", required=True)
    p = leaf(ve, "all", cmd_verify_all, "run the acceptance suites, sorted by id")
    p.add_argument("--case", type=int, action="append", help="run only this suite (repeatable)")
    p.add_argument("--jobs", type=int, default=1, help="run suites in this many processes")
    p.add_argument("--summary", action="store_true", help="also print one line per suite to stderr")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OverflowError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}), file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
