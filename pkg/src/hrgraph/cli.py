"""Command-line front end. Check commands exit 0 iff every reported instance passes."""

import argparse
import sys

from . import degree as dg
from .boundary import BoundaryAlgebra
from .crosscheck import (
    check_factorization,
    check_ideal_annihilation,
    check_kernel_lemma,
    oracle_suite,
)
from .dynamics import Dynamics, exel_suite
from .errors import KGraphError
from .io import load_graph, parse_path, parse_set
from .product import ProductSystem
from .report import Report
from .verify import FEWitness, Verifier

EXIT_FAIL = 1
EXIT_USAGE = 2


class Context:
    def __init__(self, args):
        self.args = args
        self.graph = load_graph(args.graph)
        k = self.graph.k
        self.bound = dg.parse(args.bound, k) if getattr(args, "bound", None) else None
        self.algebra = BoundaryAlgebra(self.graph, bound=self.bound)
        self.ps = ProductSystem(self.algebra)

    def degree(self, text, default=None):
        if text is None:
            return default
        return dg.parse(text, self.graph.k)

    def cap(self):
        return self.degree(self.args.cap, (1,) * self.graph.k)

    def paths(self, text):
        return [parse_path(self.graph, t) for t in text.split(",") if t.strip()]

    def s_extra(self):
        text = getattr(self.args, "s_range", None)
        if text is None:
            return None
        if "," not in text:
            return (int(text),) * self.graph.k
        return dg.parse(text, self.graph.k)


def _emit(rep, args):
    out = rep.render(args.format)
    if out:
        print(out)
    if args.format == "text":
        print(f"# {len(rep)} checks, {len(rep.failures)} failed")
    return 0 if rep.ok else EXIT_FAIL


# -- commands --------------------------------------------------------------
def cmd_validate(ctx):
    g = ctx.graph
    skel = g.skeleton
    print(f"OK k={g.k} vertices={len(skel.vertices)} edges={len(skel.edges)} squares={len(skel.squares)}")
    return 0


def cmd_mce(ctx):
    g = ctx.graph
    lam, mu = parse_path(g, ctx.args.lam), parse_path(g, ctx.args.mu)
    pairs = g.lambda_min(lam, mu) if lam.range == mu.range else ()
    for a, b in pairs:
        print(f"({a},{b})")
    if not pairs:
        print("none")
    return 0


def cmd_ext(ctx):
    g = ctx.graph
    lam = parse_path(g, ctx.args.lam)
    out = g.ext(lam, ctx.paths(ctx.args.set))
    print(" ".join(map(str, out)) if out else "none")
    return 0


def cmd_exhaustive(ctx):
    g = ctx.graph
    E = ctx.paths(ctx.args.set)
    res = g.is_exhaustive(ctx.args.vertex, E, ctx.bound)
    if res:
        print(f"exhaustive (checked to degree {dg.fmt(res.bound)})")
        return 0
    print(f"not exhaustive: {res.witness} has no common extension (checked to degree {dg.fmt(res.bound)})")
    return EXIT_FAIL


def cmd_set_algebra(ctx):
    a, B = ctx.args, ctx.algebra
    X = parse_set(ctx.graph, a.x)
    Y = parse_set(ctx.graph, a.y) if a.y else None
    binary = {
        "intersect": B.intersect,
        "union": B.union,
        "difference": B.difference,
        "symmetric-difference": B.symmetric_difference,
        "complement": lambda X, Y: B.complement_within(X, Y),
    }
    tests = {"subset": B.subset, "equal": B.set_equal}
    if a.op in binary or a.op in tests:
        if Y is None:
            raise ValueError(f"set-algebra {a.op} needs two sets")
        if a.op in tests:
            print(str(tests[a.op](X, Y)).lower())
            return 0
        print(binary[a.op](X, Y))
        return 0
    if a.op == "normalize":
        print(B.cylinder(X.parts))
    elif a.op == "empty":
        print(str(B.is_empty(B.cylinder(X.parts))).lower())
    elif a.op in ("refine", "shift", "preimage"):
        n = ctx.degree(a.n)
        if n is None:
            raise ValueError(f"set-algebra {a.op} needs --n")
        parts = []
        for P in X:
            if a.op == "refine":
                parts.extend(B.refine_to_slice(P, n).parts)
            elif a.op == "shift":
                parts.append(B.sigma_image(P, n))
            else:
                parts.extend(B.sigma_preimage(P, n).parts)
        print(B.cylinder(parts))
    elif a.op == "avoids":
        if a.color is None:
            raise ValueError("set-algebra avoids needs --color")
        print(str(all(B.avoids_slice(P, a.color) for P in X)).lower())
    return 0


def _verifier(ctx):
    return Verifier(ctx.ps, ctx.cap(), vectors=ctx.args.vectors, max_F=ctx.args.max_F)


def cmd_ck_check(ctx):
    V = _verifier(ctx)
    return _emit(V.ck_suite(ck4_tilde=not ctx.args.no_tuple, extra=ctx.s_extra()), ctx.args)


def cmd_nica_check(ctx):
    return _emit(_verifier(ctx).check_nica(), ctx.args)


def cmd_ck4_check(ctx):
    a = ctx.args
    V = _verifier(ctx)
    fe = FEWitness.certify(ctx.graph, a.vertex, ctx.paths(a.set), ctx.bound)
    rep = V.check_CK4(fe)
    rep.extend(V.check_CK4_tilde(fe, q=ctx.degree(a.q), extra=ctx.s_extra()))
    return _emit(rep, a)


def cmd_cp_check(ctx):
    V = _verifier(ctx)
    rep = Report()
    for v in ctx.graph.vertices:
        for fe in V.fe_sets(v):
            rep.extend(V.check_CK4_tilde(fe, q=ctx.degree(ctx.args.q), extra=ctx.s_extra()))
            rep.extend(V.report_extension_lemma(fe))
    rep.extend(V.check_tuple_lemma(V.cap))
    return _emit(rep, ctx.args)


def cmd_compact_align_check(ctx):
    V = _verifier(ctx)
    return _emit(V.check_compact_align(V.cap, family=ctx.args.family), ctx.args)


def cmd_exel_check(ctx):
    a = ctx.args
    cap = ctx.cap()
    ns = [ctx.degree(a.n)] if a.n else dg.below(cap)
    return _emit(exel_suite(ctx.ps, cap, ns, a.weights), a)


def cmd_oracle_check(ctx):
    a = ctx.args
    M = ctx.degree(a.degree, (2,) * ctx.graph.k)
    cap = ctx.degree(a.cap, tuple(max(c - 1, 0) for c in M))
    return _emit(oracle_suite(ctx.ps, M, cap), a)


def cmd_report(ctx):
    """Everything that applies to the graph at the given cap."""
    a = ctx.args
    cap = ctx.cap()
    g, ps = ctx.graph, ctx.ps
    rep = Report()
    rep.extend(check_factorization(g, cap))
    rep.extend(check_kernel_lemma(ctx.algebra, cap))
    rep.extend(check_ideal_annihilation(ps, cap))
    V = _verifier(ctx)
    rep.extend(V.ck_suite(extra=ctx.s_extra()))
    rep.extend(V.check_nica())
    rep.extend(exel_suite(ps, cap, dg.below(cap)))
    if Dynamics(ps).detect_regularity():
        rep.extend(exel_suite(ps, cap, dg.below(cap), "regular"))
    if not g.has_sources():
        M = tuple(2 * c if c else 1 for c in cap)
        rep.extend(oracle_suite(ps, M, cap))
    return _emit(rep, a)


COMMANDS = {
    "validate": cmd_validate,
    "mce": cmd_mce,
    "ext": cmd_ext,
    "exhaustive": cmd_exhaustive,
    "set-algebra": cmd_set_algebra,
    "ck-check": cmd_ck_check,
    "nica-check": cmd_nica_check,
    "ck4-check": cmd_ck4_check,
    "cp-check": cmd_cp_check,
    "compact-align-check": cmd_compact_align_check,
    "exel-check": cmd_exel_check,
    "oracle-check": cmd_oracle_check,
    "report": cmd_report,
}


def build_parser():
    p = argparse.ArgumentParser(prog="hrgraph", description="Symbolic checks on finite k-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help, checks=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("graph", help="graph definition file")
        sp.add_argument("--bound", help="degree bound for exhaustiveness tests, e.g. 2,2")
        sp.add_argument("--format", choices=("text", "jsonl"), default="text")
        if checks:
            sp.add_argument("--cap", help="degree cap, e.g. 1,1 (default all ones)")
            sp.add_argument("--vectors", choices=("spanning", "paths"), default="spanning",
                            help="test vectors in slice 0")
            sp.add_argument("--max-F", dest="max_F", type=int, default=2,
                            help="largest |F| in higher-slice and tuple generators")
        return sp

    add("validate", "parse and validate a graph")
    sp = add("mce", "minimal common extensions of two paths")
    sp.add_argument("lam")
    sp.add_argument("mu")
    sp = add("ext", "Ext(lam; E)")
    sp.add_argument("lam")
    sp.add_argument("--set", required=True, help="comma-separated paths")
    sp = add("exhaustive", "is E exhaustive at a vertex")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--set", required=True)
    sp = add("set-algebra", "Boolean operations on cylinder sets")
    sp.add_argument("op", choices=("intersect", "union", "difference", "symmetric-difference", "complement",
                                   "subset", "equal", "normalize", "empty", "refine", "shift", "preimage",
                                   "avoids"))
    sp.add_argument("x", help="set literal, e.g. '[a - f]' or '{[a] | [b]}'")
    sp.add_argument("y", nargs="?")
    sp.add_argument("--n", help="degree for refine/shift/preimage")
    sp.add_argument("--color", type=int, help="color for avoids")
    sp = add("ck-check", "CK1-CK4 on all auto-enumerated exhaustive sets", checks=True)
    sp.add_argument("--s-range", help="offset above r for the tuple-level CK4 (int or degree)")
    sp.add_argument("--no-tuple", action="store_true", help="skip the tuple-level CK4")
    add("nica-check", "Nica covariance for path projections", checks=True)
    sp = add("ck4-check", "CK4 for one exhaustive set", checks=True)
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--s-range")
    sp.add_argument("--q", help="tuple bound q (default 0)")
    sp = add("cp-check", "tuple-module covariance computations", checks=True)
    sp.add_argument("--s-range")
    sp.add_argument("--q")
    sp = add("compact-align-check", "compact alignment vs sequential elevation", checks=True)
    sp.add_argument("--family", choices=("paths", "spanning", "diagonal"), default="paths")
    sp = add("exel-check", "transfer-operator identities", checks=True)
    sp.add_argument("--n", help="shift degree (default: every n <= cap)")
    sp.add_argument("--weights", choices=("uniform", "normalized", "regular"), default="uniform")
    sp = add("oracle-check", "engine vs brute-force prefix oracle")
    sp.add_argument("--degree", help="oracle prefix degree M (default 2 in every color)")
    sp.add_argument("--cap", help="instance cap (default M minus 1)")
    sp = add("report", "every applicable check", checks=True)
    sp.add_argument("--s-range")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ctx = Context(args)
        return COMMANDS[args.command](ctx)
    except KeyError as exc:
        print(f"error: unknown name {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KGraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
