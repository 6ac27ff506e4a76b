"""Cuntz-Krieger, Nica and Cuntz-Pimsner checks in the boundary-path representation.

Operators are applied to test vectors in slice 0 (or to single-component
tuples for the tuple-module checks) and compared extensionally.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Tuple

from . import degree as dg
from .boundary import BasicSet
from .errors import NotExhaustive, RangeMismatch
from .kgraph import Path
from .product import CompactOp, TupleElement
from .report import Report


@dataclass(frozen=True)
class BoundaryIsometry:
    lam: Path
    star: bool = False

    def adjoint(self):
        return BoundaryIsometry(self.lam, not self.star)

    def __str__(self):
        return f"S[{self.lam}]" + ("*" if self.star else "")


@dataclass(frozen=True)
class FEWitness:
    """A finite exhaustive set at v, with one partner in E for every path at v up to `bound`."""

    vertex: str
    E: Tuple[Path, ...]
    bound: Tuple[int, ...]
    pairing: Tuple[Tuple[Path, Path], ...]

    @classmethod
    def certify(cls, graph, v, E, bound=None):
        E = tuple(sorted(set(E)))
        for mu in E:
            if mu.range != v:
                raise RangeMismatch(f"{mu} does not have range {v}")
        res = graph.is_exhaustive(v, E, bound)
        if not res:
            raise NotExhaustive(f"{{{','.join(map(str, E))}}} is not exhaustive at {v}: {res.witness} has no common extension")
        pairing = []
        for mu in graph.paths_up_to(v, res.bound):
            for lam in E:
                if graph.lambda_min(lam, mu):
                    pairing.append((mu, lam))
                    break
        return cls(v, E, res.bound, tuple(pairing))

    def __str__(self):
        return f"{self.vertex}:{{{','.join(map(str, self.E))}}}"


class Verifier:
    """vectors="spanning" tests on all of spanning_X(0, cap); "paths" on the path indicators,
    which span the same space. max_F limits |F| for the tuple generators and the
    higher-slice vectors, whose full families grow exponentially with the cap."""

    def __init__(self, ps, cap, vectors="spanning", max_F=2):
        self.ps = ps
        self.algebra = ps.algebra
        self.graph = ps.graph
        self.k = ps.k
        self.cap = tuple(cap)
        self.max_F = max_F
        z = dg.zero(self.k)
        if vectors == "paths":
            sets = ps.path_family(z, self.cap)
        else:
            sets = ps.spanning_X(z, self.cap)
        self.vectors = [(A, ps.chi(A, z)) for A in sets]
        self._memo = {}
        self._iota = {}

    # -- the isometries --------------------------------------------------
    def apply(self, op, f):
        key = (op, f.terms)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        ps = self.ps
        lam = op.lam
        proj = ps.chi(BasicSet(lam), lam.degree)
        if op.star:
            out = ps.pushforward(ps.pointwise(proj, f), lam.degree)
        else:
            out = ps.multiply(proj, f).at(dg.zero(self.k))
        self._memo[key] = out
        return out

    def word(self, ops, f):
        """Apply a product of isometries (leftmost acts last)."""
        for op in reversed(ops):
            f = self.apply(op, f)
        return f

    def combo(self, terms, f):
        """Apply sum of c * word over (c, word) terms."""
        out = self.ps.zero(dg.zero(self.k))
        for c, ops in terms:
            out = out + Fraction(c) * self.word(ops, f)
        return out

    def _compare(self, rep, name, instance, lhs, rhs):
        """lhs, rhs: callables on test vectors. Records one line."""
        ps = self.ps
        for A, f in self.vectors:
            a, b = lhs(f), rhs(f)
            if not ps.equal(a, b):
                rep.add(name, instance, False, f"on {A}: {ps.witness(a, b)}")
                return False
        rep.add(name, instance, True)
        return True

    def paths(self):
        return list(self.graph.all_paths(self.cap))

    # -- CK1, CK2, CK3 ---------------------------------------------------
    def check_CK1(self):
        rep = Report()
        g = self.graph
        S = {v: BoundaryIsometry(g.vertex(v)) for v in g.vertices}
        for v in g.vertices:
            s = S[v]
            self._compare(rep, "CK1-projection", f"v={v}",
                          lambda f: self.word([s, s], f), lambda f: self.apply(s, f))
            self._compare(rep, "CK1-selfadjoint", f"v={v}",
                          lambda f: self.apply(s.adjoint(), f), lambda f: self.apply(s, f))
        for u in g.vertices:
            for v in g.vertices:
                if u < v:
                    zero = self.ps.zero(dg.zero(self.k))
                    self._compare(rep, "CK1-orthogonal", f"u={u};v={v}",
                                  lambda f: self.word([S[u], S[v]], f), lambda f: zero)
        return rep

    def check_CK2(self):
        rep = Report()
        g = self.graph
        zero = self.ps.zero(dg.zero(self.k))
        paths = self.paths()
        for lam in paths:
            s = BoundaryIsometry(lam)
            self._compare(rep, "partial-isometry", f"lam={lam}",
                          lambda f: self.word([s, s.adjoint(), s], f), lambda f: self.apply(s, f))
            for mu in paths:
                t = BoundaryIsometry(mu)
                inst = f"lam={lam};mu={mu}"
                if lam.source == mu.range:
                    lm = BoundaryIsometry(g.compose(lam, mu))
                    self._compare(rep, "CK2", inst,
                                  lambda f: self.word([s, t], f), lambda f: self.apply(lm, f))
                else:
                    self._compare(rep, "CK2-noncomposable", inst,
                                  lambda f: self.word([s, t], f), lambda f: zero)
        return rep

    def check_CK3(self):
        rep = Report()
        g = self.graph
        paths = self.paths()
        for lam in paths:
            for mu in paths:
                pairs = g.lambda_min(lam, mu) if lam.range == mu.range else ()
                rhs = [(1, [BoundaryIsometry(a), BoundaryIsometry(b, True)]) for a, b in pairs]
                lhs = [(1, [BoundaryIsometry(lam, True), BoundaryIsometry(mu)])]
                self._compare(rep, "CK3", f"lam={lam};mu={mu}",
                              lambda f: self.combo(lhs, f), lambda f: self.combo(rhs, f))
        return rep

    # -- finite exhaustive sets ----------------------------------------------
    def fe_sets(self, v, cap=None, bound=None):
        """Every finite exhaustive E at v with all degrees <= cap."""
        g = self.graph
        cap = self.cap if cap is None else tuple(cap)
        cands = g.paths_up_to(v, cap)
        out = []
        for r in range(1, len(cands) + 1):
            for E in combinations(cands, r):
                if g.is_exhaustive(v, E, bound):
                    out.append(FEWitness.certify(g, v, E, bound))
        return out

    def join_closure(self, E):
        """Coefficient of S_lam S_lam* in the expansion of prod_{mu in E}(S_v - S_mu S_mu*),
        keyed by lam; lam runs over minimal common extensions of subsets of E."""
        g = self.graph
        coef = {}
        ext = {(): None}
        for G in (c for r in range(1, len(E) + 1) for c in combinations(E, r)):
            prev = ext[G[:-1]]
            last = G[-1]
            if prev is None:
                cur = (last,)
            else:
                cur = tuple(sorted({g.compose(lam, a) for lam in prev for a, _ in g.lambda_min(lam, last)}))
            ext[G] = cur
            sign = -1 if len(G) % 2 else 1
            for lam in cur:
                coef[lam] = coef.get(lam, 0) + sign
        return {lam: c for lam, c in coef.items() if c}

    def check_CK4(self, fe, routes=("product", "expanded")):
        if not isinstance(fe, FEWitness):
            raise TypeError("check_CK4 needs a certified FEWitness")
        rep = Report()
        g = self.graph
        v = fe.vertex
        sv = BoundaryIsometry(g.vertex(v))
        zero = self.ps.zero(dg.zero(self.k))
        inst = f"E={fe}"
        if "product" in routes:
            def chain(f):
                for mu in reversed(fe.E):
                    s = BoundaryIsometry(mu)
                    f = self.apply(sv, f) - self.word([s, s.adjoint()], f)
                return f
            self._compare(rep, "CK4", inst, chain, lambda f: zero)
        if "expanded" in routes:
            terms = [(1, [sv])]
            for lam, c in sorted(self.join_closure(fe.E).items()):
                s = BoundaryIsometry(lam)
                terms.append((c, [s, s.adjoint()]))
            self._compare(rep, "CK4-expanded", inst, lambda f: self.combo(terms, f), lambda f: zero)
        return rep

    # -- the tuple module ---------------------------------------------------
    def theta(self, lam):
        A = BasicSet(lam)
        return CompactOp.theta(A, A, lam.degree)

    def iota_tuple(self, lam, x):
        """The elevation of the projection onto D_lam applied to a tuple, memoized per component."""
        comps = []
        for r, f in x.components:
            key = (lam, r, f.terms)
            hit = self._iota.get(key)
            if hit is None:
                hit = self.ps.iota(self.theta(lam), r, f)
                self._iota[key] = hit
            comps.append((r, hit))
        return TupleElement.build(x.bound, comps)

    def _sub(self, x, y):
        return TupleElement.build(x.bound, list(x.components) + [(r, -f) for r, f in y.components])

    def tuple_generators(self, s, max_F=None):
        """Single-component tuples at every t <= s built from spanning_XI(t, s) with cap s."""
        ps = self.ps
        max_F = self.max_F if max_F is None else max_F
        for t in dg.below(s):
            for A in ps.spanning_XI(t, s, s, max_F):
                yield A, TupleElement.build(s, [(t, ps.chi(A, t))])

    def s_range(self, fe, q=None, extra=None):
        q = dg.zero(self.k) if q is None else tuple(q)
        r = dg.join(q, dg.join_all((mu.degree for mu in fe.E), self.k))
        extra = (1,) * self.k if extra is None else tuple(extra)
        return dg.between(r, dg.add(r, extra))

    def check_CK4_tilde(self, fe, q=None, extra=None, max_F=None):
        """The product of (iota_0(Theta_vv) - iota_{d(mu)}(Theta_mumu)) kills every generator."""
        rep = Report()
        g = self.graph
        v = g.vertex(fe.vertex)
        for s in self.s_range(fe, q, extra):
            bad = None
            count = 0
            for A, x in self.tuple_generators(s, max_F):
                y = x
                for mu in reversed(fe.E):
                    y = self._sub(self.iota_tuple(v, y), self.iota_tuple(mu, y))
                count += 1
                if not self.ps.tuple_is_zero(y):
                    t = x.components[0][0]
                    bad = f"t=({dg.fmt(t)}) gen={A}"
                    break
            rep.add("CK4-tuple", f"E={fe};s=({dg.fmt(s)});gens={count}", bad is None, bad)
        return rep

    def check_tuple_lemma(self, s, max_F=None):
        """Theta_mu elevated to slice s fixes a generator tuple if its path extends mu, else kills it."""
        rep = Report()
        g = self.graph
        s = tuple(s)
        mus = [mu for mu in g.all_paths(s)]
        bad = None
        count = 0
        for A, x in self.tuple_generators(s, max_F):
            for mu in mus:
                y = self.iota_tuple(mu, x)
                if g.extends(A.lam, mu):
                    ok = self.ps.tuple_is_zero(self._sub(y, x))
                else:
                    ok = self.ps.tuple_is_zero(y)
                count += 1
                if not ok:
                    bad = f"gen={A} mu={mu}"
                    break
            if bad:
                break
        rep.add("tuple-dichotomy", f"s=({dg.fmt(s)});pairs={count}", bad is None, bad)
        return rep

    def check_extension_lemma(self, fe, m, n, max_F=None):
        ps, g = self.ps, self.graph
        m, n = tuple(m), tuple(n)
        top = dg.join_all((mu.degree for mu in fe.E), self.k)
        if not dg.leq(top, n):
            raise ValueError(f"n=({dg.fmt(n)}) must dominate ({dg.fmt(top)})")
        max_F = self.max_F if max_F is None else max_F
        bad = None
        for A in ps.spanning_XI(m, n, n, max_F):
            if A.lam.range != fe.vertex:
                continue
            if not any(g.extends(A.lam, eta) for eta in fe.E):
                bad = f"gen={A}"
                break
        return bad

    def report_extension_lemma(self, fe, max_F=None):
        rep = Report()
        top = dg.join_all((mu.degree for mu in fe.E), self.k)
        for n in dg.between(top, dg.add(top, (1,) * self.k)):
            for m in dg.below(n):
                bad = self.check_extension_lemma(fe, m, n, max_F)
                rep.add("extension", f"E={fe};m=({dg.fmt(m)});n=({dg.fmt(n)})", bad is None, bad)
        return rep

    # -- Nica covariance --------------------------------------------------
    def check_nica(self, max_F=None):
        """Elevated projections multiply as their alignment predicts, on the tuple-free level
        (compact_align vs sequential elevation) and on the isometries."""
        rep = Report()
        ps, g = self.ps, self.graph
        max_F = self.max_F if max_F is None else max_F
        paths = self.paths()
        for lam in paths:
            for mu in paths:
                inst = f"lam={lam};mu={mu}"
                S, T = self.theta(lam), self.theta(mu)
                top = dg.join(lam.degree, mu.degree)
                R = ps.compact_align(S, T)
                bad = None
                for A in ps.spanning_X(top, dg.join(self.cap, top), max_F):
                    f = ps.chi(A, top)
                    a = ps.iota(S, top, ps.iota(T, top, f))
                    b = ps.apply_compact(R, f)
                    if not ps.equal(a, b):
                        bad = f"on {A}"
                        break
                rep.add("nica-align", inst, bad is None, bad)
                pairs = g.lambda_min(lam, mu) if lam.range == mu.range else ()
                s, t = BoundaryIsometry(lam), BoundaryIsometry(mu)
                lhs = [(1, [s, s.adjoint(), t, t.adjoint()])]
                rhs = [(1, [BoundaryIsometry(g.compose(lam, a)), BoundaryIsometry(g.compose(mu, b), True)])
                       for a, b in pairs]
                self._compare(rep, "nica-isometry", inst,
                              lambda f: self.combo(lhs, f), lambda f: self.combo(rhs, f))
        return rep

    def check_compact_align(self, cap, max_F=None, family="paths", stop_on_fail=False):
        """compact_align vs sequential elevation for generator pairs of degree <= cap.

        family: "paths" (Theta over path indicators), "spanning" (all rank-one pairs of
        spanning_X generators) or "diagonal" (Theta[A, A] over spanning_X, which keeps the
        F sets in play at a fraction of the cost)."""
        rep = Report()
        ps = self.ps
        cap = tuple(cap)
        max_F = self.max_F if max_F is None else max_F
        ops = {}
        for m in dg.below(cap):
            if family == "paths":
                gens = ps.path_family(m, cap)
            else:
                gens = ps.spanning_X(m, cap, max_F)
            if family == "diagonal":
                ops[m] = [CompactOp.theta(a, a, m) for a in gens]
            else:
                ops[m] = [CompactOp.theta(a, b, m) for a in gens for b in gens]
        for m in ops:
            for n in ops:
                top = dg.join(m, n)
                vecs = [ps.chi(A, top) for A in ps.path_family(top, dg.join(cap, top))]
                # anti-diagonal order, so an early exit reaches mixed pairs quickly
                pairs = sorted(product(range(len(ops[m])), range(len(ops[n]))), key=lambda ij: (sum(ij), ij))
                for i, j in pairs:
                    S, T = ops[m][i], ops[n][j]
                    R = ps.compact_align(S, T)
                    bad = None
                    for f in vecs:
                        a = ps.iota(S, top, ps.iota(T, top, f))
                        b = ps.apply_compact(R, f)
                        if not ps.equal(a, b):
                            bad = f"on {f.terms[0][0]}"
                            break
                    rep.add("compact-align", f"S={S};T={T}", bad is None, bad)
                    if bad and stop_on_fail:
                        return rep
        return rep
        return rep

    # -- batteries -------------------------------------------------------
    def ck_suite(self, ck4_tilde=True, extra=None):
        rep = Report()
        rep.extend(self.check_CK1())
        rep.extend(self.check_CK2())
        rep.extend(self.check_CK3())
        for v in self.graph.vertices:
            for fe in self.fe_sets(v):
                rep.extend(self.check_CK4(fe))
                if ck4_tilde:
                    rep.extend(self.check_CK4_tilde(fe, extra=extra))
        return rep
