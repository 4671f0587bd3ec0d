"""Command-line entry point ``tforge``.

Every subcommand prints one JSON report on stdout::

    {"schema": 1, "command": ..., "inputs": {...}, "results": ..., "timings": {...}}

Exit codes: 0 success, 1 domain error (or a failed reproduction item),
2 usage error.  Integers that may exceed 64 bits are emitted as strings.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from contextlib import contextmanager

from . import beauville, belyi, curves, dessins, fpgroup, perm, reproduce, twocrit
from .exact import UPoly, as_rational

SCHEMA_VERSION = 1
log = logging.getLogger("tforge")


class DomainError(Exception):
    """Raised by a command when its result is a verdict of failure."""


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an integer or p/q, got {text!r}")


class _Timer:
    def __init__(self):
        self.ms: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.ms[name] = round((time.perf_counter() - t) * 1000, 3)


def _group(text: str, degree: int | None = None) -> perm.PermGroup:
    return perm.named_group(text)


def _triple(text: str, n: int) -> perm.SphericalTriple:
    return reproduce.parse_triple(text, n)


# --- command handlers: (args, timer) -> results ------------------------------

def cmd_curves_iso(args, timer):
    with timer.phase("equivalences"):
        rep = curves.equivalences_report(args.genus, args.a, args.b)
    out = {
        "equivalences": [str(m) for m in rep["affine"]],
        "equivalences_with_infinity": [str(m) for m in rep["with_infinity"]],
    }
    # the branch-set criterion is an iff only from genus 6 on
    out["isomorphic"] = bool(rep["affine"]) if args.genus >= 6 else None
    return out


def cmd_belyi(args, timer):
    if (args.minpoly is None) == (args.a is None):
        raise ValueError("give exactly one of --minpoly and --a")
    if args.a is not None:
        spec = curves.CurveSpec(args.genus, a=args.a)
    else:
        spec = curves.CurveSpec(args.genus, minpoly=UPoly.parse(args.minpoly))
    with timer.phase("construct"):
        chain = belyi.belyi_for_curve(spec)
    with timer.phase("verify"):
        locus = belyi.verify_belyi(chain)
    out = chain.to_json()
    out["verified_critical_values"] = locus.points()
    return out


def _class_reports(orbits, triples=None):
    return [{"representative": o.representative.to_json(), "size": o.size,
             "members": len(o.members)} for o in orbits]


def cmd_perm_spherical(args, timer):
    G = _group(args.group)
    with timer.phase("enumerate"):
        reps = perm.enumerate_spherical(G, args.signature)
    return {"group_order": G.order(), "signature": list(args.signature),
            "classes": [t.to_json() for t in reps], "count": len(reps)}


def cmd_perm_hurwitz(args, timer):
    G = _group(args.group)
    with timer.phase("enumerate"):
        reps = perm.enumerate_spherical(G, args.signature)
    extra = perm.named_group(args.outer).generators if args.outer else ()
    with timer.phase("orbits"):
        if args.mode == "braid":
            orbits = perm.hurwitz_classes(perm.all_conjugates(reps, G), "braid")
        else:
            orbits = perm.hurwitz_classes(reps, "braid+conj", G, extra)
    return {"group_order": G.order(), "signature": list(args.signature), "mode": args.mode,
            "conjugacy_classes_of_triples": len(reps), "class_count": len(orbits),
            "classes": _class_reports(orbits)}


def cmd_perm_conj(args, timer):
    G = _group(args.group)
    n = G.degree
    t1 = perm.parse_perm_list(args.t1, n)
    t2 = perm.parse_perm_list(args.t2, n)
    if len(t1) != len(t2):
        raise ValueError("tuples have different lengths")
    with timer.phase("search"):
        c = perm.simultaneous_conjugator(t1, t2, G)
    return {"conjugate": c is not None, "conjugator": None if c is None else str(c)}


def _dessin_class_json(c: dessins.DessinClass) -> dict:
    rep = c.representative
    return {
        "representative": rep.to_json(),
        "class_size": str(c.class_size),
        "group_order": str(c.monodromy_group_order),
        "is_real": c.is_real,
        "closure_genus": str(dessins.triangle_genus(c.monodromy_group_order, rep.orders())),
    }


def cmd_dessins_classify(args, timer):
    with timer.phase("classify"):
        cls = dessins.classify_polynomial_monodromies(args.n, args.mu, args.nu)
    return {"class_count": len(cls), "classes": [_dessin_class_json(c) for c in cls]}


def cmd_dessins_closure(args, timer):
    ps = perm.parse_perm_list(args.triple, args.n)
    t = (dessins.MonodromyTriple.from_pair(*ps) if len(ps) == 2
         else dessins.MonodromyTriple(*ps))
    d = dessins.normal_closure_data(t)
    return {"group_order": str(d.monodromy_group_order), "stabilizer_index": d.stabilizer_index,
            "component_count": str(d.component_count), "genus": str(d.genus_of_closure)}


def cmd_genus(args, timer):
    return {"genus": str(dessins.triangle_genus(args.order, args.signature))}


def _structure(args) -> beauville.UnmixedStructure:
    G = _group(args.group)
    s = beauville.UnmixedStructure(G, _triple(args.t1, G.degree), _triple(args.t2, G.degree))
    s.check()
    return s


def cmd_beauville_check(args, timer):
    s = _structure(args)
    with timer.phase("freeness"):
        free = beauville.is_unmixed_beauville(s)
    out = {"is_beauville": free}
    if free:
        out["invariants"] = beauville.surface_invariants(s).to_json()
    return out


def cmd_beauville_search(args, timer):
    G = _group(args.group)
    with timer.phase("search"):
        found = beauville.search_beauville(G, args.bound)
    return {"group_order": G.order(), "count": len(found),
            "structures": [[s.triple1.to_json(), s.triple2.to_json()] for s in found]}


def cmd_pi1(args, timer):
    s = _structure(args)
    with timer.phase("coset_table"):
        pres, first, second = fpgroup.triangle_pair_image(s.group, s.triple1, s.triple2)
        table = fpgroup.diagonal_coset_table(pres, s.group, first, second)
    with timer.phase("reidemeister_schreier"):
        data = fpgroup.reidemeister_schreier(table, pres)
    sub = data.presentation
    out = {"cosets": table.coset_count, "generators": sub.generator_count,
           "relators": len(sub.relators)}
    if args.matrix_out:
        with open(args.matrix_out, "w") as fh:
            fh.write(sub.sparse_triplets())
        out["matrix_file"] = args.matrix_out
    if args.emit == "presentation":
        out["presentation"] = sub.to_json()
    else:
        with timer.phase("smith"):
            out["abelianization"] = fpgroup.abelianization(sub).to_json()
    return out


def cmd_twocrit_solve(args, timer):
    with timer.phase("build"):
        system = twocrit.build_system(args.n, args.mu, args.nu)
    with timer.phase("solve"):
        sols = twocrit.solve_numeric(system, args.attempts, args.tol, seed=args.seed)
    reps = twocrit.quotient_by_unity(sols)
    return {
        "raw_count": len(sols),
        "quotient_count": len(reps),
        "real_quotient_count": sum(s.is_real for s in reps),
        "solutions": [s.to_json() for s in reps],
    }


def cmd_reproduce(args, timer):
    with timer.phase("pipeline"):
        items = reproduce.reproduce_paper(args.skip_snf, args.triple1, args.triple2, args.triple555)
    for it in items:
        timer.ms[it.name] = round(it.ms, 3)
    failed = [it.name for it in items if it.status == "fail"]
    results = {"items": [it.to_json() for it in items], "failed": failed}
    if failed:
        raise DomainError(results)
    return results


# --- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tforge", description="Dessins, Beauville surfaces and Belyi maps.")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker cap (all current commands run single-threaded)")
    p.add_argument("--no-timings", action="store_true",
                   help="omit wall-clock timings so reports are byte-reproducible")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("curves", help="hyperelliptic curves C_a").add_subparsers(
        dest="sub", required=True, parser_class=_Parser)
    ci = c.add_parser("iso", help="compare branch sets of C_a and C_b")
    ci.add_argument("--genus", type=int, required=True)
    ci.add_argument("--a", type=_rational, required=True)
    ci.add_argument("--b", type=_rational, required=True)
    ci.set_defaults(func=cmd_curves_iso)

    b = sub.add_parser("belyi", help="Belyi map for C_a")
    b.add_argument("--genus", type=int, required=True)
    b.add_argument("--minpoly", help='coefficients "c0,c1,..." of the minimal polynomial of a')
    b.add_argument("--a", type=_rational, help="rational parameter a")
    b.set_defaults(func=cmd_belyi)

    pm = sub.add_parser("perm", help="permutation groups").add_subparsers(
        dest="sub", required=True, parser_class=_Parser)
    ps = pm.add_parser("spherical", help="spherical triples up to conjugation")
    ps.add_argument("--group", required=True)
    ps.add_argument("--signature", type=_ints, required=True)
    ps.set_defaults(func=cmd_perm_spherical)
    ph = pm.add_parser("hurwitz", help="Hurwitz classes of spherical triples")
    ph.add_argument("--group", required=True)
    ph.add_argument("--signature", type=_ints, required=True)
    ph.add_argument("--mode", choices=["braid", "braid+conj"], default="braid+conj")
    ph.add_argument("--outer", help="extra conjugating group, e.g. S7")
    ph.set_defaults(func=cmd_perm_hurwitz)
    pc = pm.add_parser("conj", help="simultaneous conjugator of two tuples")
    pc.add_argument("--group", default="S7")
    pc.add_argument("--t1", required=True)
    pc.add_argument("--t2", required=True)
    pc.set_defaults(func=cmd_perm_conj)

    d = sub.add_parser("dessins", help="polynomial dessins").add_subparsers(
        dest="sub", required=True, parser_class=_Parser)
    dc = d.add_parser("classify", help="monodromy classes of a passport")
    dc.add_argument("--n", type=int, required=True)
    dc.add_argument("--mu", type=_ints, required=True)
    dc.add_argument("--nu", type=_ints, required=True)
    dc.set_defaults(func=cmd_dessins_classify)
    dl = d.add_parser("closure", help="normal closure of a monodromy triple")
    dl.add_argument("--n", type=int, required=True)
    dl.add_argument("--triple", required=True)
    dl.set_defaults(func=cmd_dessins_closure)

    g = sub.add_parser("genus", help="genus of a triangle curve")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--signature", type=_ints, required=True)
    g.set_defaults(func=cmd_genus)

    bv = sub.add_parser("beauville", help="unmixed Beauville structures").add_subparsers(
        dest="sub", required=True, parser_class=_Parser)
    bc = bv.add_parser("check")
    bc.add_argument("--group", required=True)
    bc.add_argument("--t1", required=True)
    bc.add_argument("--t2", required=True)
    bc.set_defaults(func=cmd_beauville_check)
    bs = bv.add_parser("search")
    bs.add_argument("--group", required=True)
    bs.add_argument("--bound", type=int, help="largest element order in a signature")
    bs.set_defaults(func=cmd_beauville_search)

    pi = sub.add_parser("pi1", help="fundamental group of a Beauville surface")
    pi.add_argument("--group", required=True)
    pi.add_argument("--t1", required=True)
    pi.add_argument("--t2", required=True)
    pi.add_argument("--emit", choices=["presentation", "abelianization"], default="abelianization")
    pi.add_argument("--matrix-out", help="write the relation matrix as sparse triplets")
    pi.set_defaults(func=cmd_pi1)

    t = sub.add_parser("twocrit", help="two-critical-value polynomials").add_subparsers(
        dest="sub", required=True, parser_class=_Parser)
    ts = t.add_parser("solve")
    ts.add_argument("--n", type=int, required=True)
    ts.add_argument("--mu", type=_ints, required=True)
    ts.add_argument("--nu", type=_ints, required=True)
    ts.add_argument("--tol", type=float, default=twocrit.DEFAULT_TOL)
    ts.add_argument("--attempts", type=int, default=twocrit.DEFAULT_ATTEMPTS)
    ts.add_argument("--seed", type=int, default=0)
    ts.set_defaults(func=cmd_twocrit_solve)

    r = sub.add_parser("reproduce-paper", help="rerun the A7 pipeline end to end")
    r.add_argument("--skip-snf", action="store_true", help="skip the abelianization item")
    r.add_argument("--triple1", default=reproduce.TRIPLE_1)
    r.add_argument("--triple2", default=reproduce.TRIPLE_2)
    r.add_argument("--triple555", default=reproduce.TRIPLE_555)
    r.set_defaults(func=cmd_reproduce)
    return p


def _inputs(args) -> dict:
    skip = {"func", "command", "sub", "verbose", "no_timings"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, tuple):
            v = list(v)
        elif v is not None and not isinstance(v, (int, float, str, bool, list)):
            v = str(v)
        out[k] = v
    return out


def run_command(argv) -> tuple[dict | None, int]:
    """Parse ``argv`` and run it; returns (report, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return None, int(exc.code or 0)
    if args.threads < 1:
        print("tforge: error: --threads must be positive", file=sys.stderr)
        return None, 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    name = args.command + (f" {args.sub}" if getattr(args, "sub", None) else "")
    timer = _Timer()
    report = {"schema": SCHEMA_VERSION, "command": name, "inputs": _inputs(args)}
    code = 0
    try:
        results = args.func(args, timer)
    except DomainError as exc:
        results = exc.args[0]
        code = 1
        print(f"tforge: failed: {', '.join(results.get('failed', []))}", file=sys.stderr)
    except (ValueError, ArithmeticError) as exc:
        print(f"tforge: error: {exc}", file=sys.stderr)
        results = {"error": str(exc)}
        code = 1
    report["results"] = results
    if not args.no_timings:
        report["timings"] = timer.ms
    return report, code


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def main(argv=None) -> int:
    report, code = run_command(sys.argv[1:] if argv is None else argv)
    if report is not None:
        print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
