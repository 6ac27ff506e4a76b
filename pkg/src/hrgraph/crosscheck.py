"""Engine-versus-oracle and structural cross-checks, one report line per instance."""

from itertools import combinations

from . import degree as dg
from .oracle import PrefixUniverse, lambda_min_bruteforce
from .report import Report


def basic_sets(algebra, cap, F_cap=None, max_F=2):
    """Every (lam, F) with d(lam) <= cap, F drawn from non-vertex paths at s(lam) of
    degree <= F_cap (default cap), |F| <= max_F. Empty sets are included."""
    g = algebra.graph
    F_cap = cap if F_cap is None else F_cap
    out = []
    for lam in g.all_paths(cap):
        cands = [nu for nu in g.paths_up_to(lam.source, F_cap) if not nu.is_vertex]
        for r in range(max_F + 1):
            for F in combinations(cands, r):
                out.append(algebra.basic(lam, F))
    return out


def check_factorization(g, cap, label=""):
    """compose/segment round trips and agreement of left- and right-first normalization."""
    rep = Report()
    for lam in g.all_paths(cap):
        d = lam.degree
        bad = None
        for m in dg.below(d):
            for n in dg.between(m, d):
                a = g.segment(lam, dg.zero(g.k), m)
                b = g.segment(lam, m, n)
                c = g.segment(lam, n, d)
                if b.degree != dg.sub(n, m) or g.compose(g.compose(a, b), c) != lam:
                    bad = f"m=({dg.fmt(m)});n=({dg.fmt(n)})"
                    break
            if bad:
                break
        if bad is None and not lam.is_vertex:
            for colors in g.color_sequences(d):
                w = g.reorder(lam.word, colors)
                if g.path(w) != lam or g.normalize(w, rightmost=True) != lam.word:
                    bad = f"order {''.join(map(str, colors))}"
                    break
        rep.add("factorization", f"{label}lam={lam}", bad is None, bad)
    return rep


def check_lambda_min(g, cap, label=""):
    rep = Report()
    paths = g.all_paths(cap)
    for lam in paths:
        for mu in paths:
            if lam.range != mu.range:
                continue
            got = tuple(sorted(g.lambda_min(lam, mu)))
            want = lambda_min_bruteforce(g, lam, mu)
            rep.add("lambda-min", f"{label}lam={lam};mu={mu}", got == want,
                    f"engine {len(got)} pairs, enumeration {len(want)}")
    return rep


def check_intersections(algebra, M, cap, max_F=2, label="", oracle_graph=None, stop_on_fail=False):
    """intersect_basic against prefix membership, plus pairwise disjointness of the output.

    oracle_graph lets the membership side use a different graph on the same edges,
    which is how a corrupted square table is caught."""
    U = PrefixUniverse(oracle_graph or algebra.graph, M)
    rep = Report()
    basics = basic_sets(algebra, cap, max_F=max_F)
    member = {A: frozenset(p for p in U.prefixes if U.member(p, A)) for A in basics}
    for A in basics:
        for C in basics:
            X = algebra.intersect_basic(A, C)
            want = member[A] & member[C]
            bad = None
            for p in U.prefixes:
                if U.member_of(p, X) != (p in want):
                    bad = f"prefix {p}"
                    break
            if bad is None:
                ok, pair = algebra.disjoint(X.parts)
                if not ok:
                    bad = f"overlap {pair[0]} {pair[1]}"
            rep.add("intersection", f"{label}A={A};B={C}", bad is None, bad)
            if bad and stop_on_fail:
                return rep
    return rep


def check_refinement(algebra, M, cap, max_F=2, label=""):
    """refine_to_slice: disjoint parts, same union (by the oracle), every part in the slice."""
    U = PrefixUniverse(algebra.graph, M)
    rep = Report()
    for A in basic_sets(algebra, cap, max_F=max_F):
        for n in dg.below(cap):
            if not algebra.slice_contains(A, n):
                continue
            X = algebra.refine_to_slice(A, n)
            bad = None
            for P in X:
                if not P.in_slice(n):
                    bad = f"{P} below slice"
                    break
            if bad is None:
                ok, pair = algebra.disjoint(X.parts)
                if not ok:
                    bad = f"overlap {pair[0]} {pair[1]}"
            if bad is None:
                ok, p = U.set_equal(X, [A])
                if not ok:
                    bad = f"prefix {p}"
            rep.add("refinement", f"{label}A={A};n=({dg.fmt(n)})", bad is None, bad)
    return rep


def check_kernel_lemma(algebra, cap, max_F=2, label=""):
    """For nonempty A: A misses the slice of degree >= e_i iff d(lam)_i = 0 and K(i) holds."""
    rep = Report()
    for A in basic_sets(algebra, cap, max_F=max_F):
        if algebra.is_empty(A):
            continue
        for i in range(1, algebra.k + 1):
            direct = algebra.avoids_slice(A, i, method="direct")
            crit = algebra.kernel_criterion(A, i)
            rep.add("kernel-lemma", f"{label}A={A};i={i}", direct == crit,
                    f"direct={direct} criterion={crit}")
    return rep


def check_ideal_annihilation(ps, cap, max_F=2, label=""):
    """Every spanning generator of I_n acts as zero on X_m for 0 < m <= n."""
    rep = Report()
    z = dg.zero(ps.k)
    for n in dg.below(cap):
        if n == z:
            continue
        gens = ps.spanning_I(n, cap, max_F)
        for A in gens:
            a = ps.chi(A, z)
            bad = None
            for m in dg.below(n):
                if m == z:
                    continue
                for C in ps.spanning_X(m, dg.join(cap, m), max_F):
                    if not ps.is_zero(ps.left_action(a, ps.chi(C, m))):
                        bad = f"m=({dg.fmt(m)});f={C}"
                        break
                if bad:
                    break
            rep.add("ideal-annihilates", f"{label}n=({dg.fmt(n)});a={A}", bad is None, bad)
        if not gens:
            rep.add("ideal-annihilates", f"{label}n=({dg.fmt(n)});empty", True)
    return rep


def check_module_ops(ps, M, cap, max_F=1, label=""):
    """inner_product, multiply and pushforward against pointwise oracle sums."""
    U = PrefixUniverse(ps.graph, M)
    rep = Report()
    z = dg.zero(ps.k)
    for m in dg.below(cap):
        fam = ps.spanning_X(m, cap, max_F)
        for A in fam:
            f = ps.chi(A, m)
            for C in fam:
                h = ps.chi(C, m)
                ip = ps.inner_product(f, h)
                bad = None
                for p in U.prefixes:
                    if U.evaluate(ip, p) != U.inner_product_at(f, h, m, p):
                        bad = f"prefix {p}"
                        break
                rep.add("inner-product", f"{label}m=({dg.fmt(m)});f={A};g={C}", bad is None, bad)
            for C in ps.spanning_X(z, cap, max_F):
                h = ps.chi(C, z)
                prod = ps.multiply(f, h)
                bad = None
                for p in U.prefixes:
                    if U.evaluate(prod, p) != U.multiply_at(f, m, h, p):
                        bad = f"prefix {p}"
                        break
                rep.add("right-action", f"{label}m=({dg.fmt(m)});f={A};a={C}", bad is None, bad)
    return rep


def oracle_suite(ps, M, cap, label=""):
    algebra = ps.algebra
    rep = Report()
    rep.extend(check_lambda_min(ps.graph, M, label))
    rep.extend(check_intersections(algebra, M, cap, label=label))
    rep.extend(check_refinement(algebra, M, cap, label=label))
    rep.extend(check_module_ops(ps, M, cap, label=label))
    return rep
