"""The boundary-path product system with rational coefficients.

Elements of the degree-n module are finite rational combinations of
indicators of basic sets (lam, F) with d(lam) >= n. Compact operators are
finite sums of rank-one operators between such indicators.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Tuple

from . import degree as dg
from .boundary import BasicSet
from .errors import DegreeOrder, NotInSlice, SliceMismatch


def _merge(pairs):
    acc = {}
    for key, c in pairs:
        acc[key] = acc.get(key, 0) + c
    return tuple(sorted((k, Fraction(c)) for k, c in acc.items() if c != 0))


@dataclass(frozen=True)
class CylinderFunction:
    slice: Tuple[int, ...]
    terms: Tuple[Tuple[BasicSet, Fraction], ...] = ()

    @classmethod
    def build(cls, n, pairs):
        n = tuple(n)
        pairs = [(A, c) for A, c in pairs if not A.degenerate]
        for A, _ in pairs:
            if not A.in_slice(n):
                raise NotInSlice(f"{A} has degree below ({dg.fmt(n)})")
        return cls(n, _merge(pairs))

    def _same(self, other):
        if self.slice != other.slice:
            raise SliceMismatch(f"({dg.fmt(self.slice)}) vs ({dg.fmt(other.slice)})")

    def __add__(self, other):
        self._same(other)
        return CylinderFunction(self.slice, _merge(self.terms + other.terms))

    def __neg__(self):
        return CylinderFunction(self.slice, tuple((A, -c) for A, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return CylinderFunction(self.slice, _merge((A, c * v) for A, v in self.terms))

    def at(self, n):
        """The same function regarded in slice n (its terms must have degree >= n)."""
        return CylinderFunction.build(n, self.terms)

    def __str__(self):
        if not self.terms:
            return f"0@({dg.fmt(self.slice)})"
        body = " + ".join(f"{c}*{A}" for A, c in self.terms)
        return f"{body} @({dg.fmt(self.slice)})"


@dataclass(frozen=True)
class CompactOp:
    slice: Tuple[int, ...]
    terms: Tuple[Tuple[Fraction, BasicSet, BasicSet], ...] = ()

    @classmethod
    def theta(cls, ket, bra, n, c=1):
        for A in (ket, bra):
            if not A.in_slice(n):
                raise NotInSlice(f"{A} has degree below ({dg.fmt(n)})")
        return cls(tuple(n), ((Fraction(c), ket, bra),))

    def __add__(self, other):
        if self.slice != other.slice:
            raise SliceMismatch(f"({dg.fmt(self.slice)}) vs ({dg.fmt(other.slice)})")
        return CompactOp(self.slice, self.terms + other.terms)

    def __str__(self):
        if not self.terms:
            return f"0@({dg.fmt(self.slice)})"
        return " + ".join(f"{c}*Θ[{a},{b}]" for c, a, b in self.terms) + f" @({dg.fmt(self.slice)})"


@dataclass(frozen=True)
class TupleElement:
    bound: Tuple[int, ...]
    components: Tuple[Tuple[Tuple[int, ...], CylinderFunction], ...] = ()

    @classmethod
    def build(cls, q, comps):
        q = tuple(q)
        out = {}
        for r, f in comps:
            r = tuple(r)
            if not dg.leq(r, q) or f.slice != r:
                raise SliceMismatch(f"component at ({dg.fmt(r)}) in a tuple bounded by ({dg.fmt(q)})")
            out[r] = out[r] + f if r in out else f
        return cls(q, tuple(sorted(out.items())))

    def component(self, r):
        for s, f in self.components:
            if s == tuple(r):
                return f
        return CylinderFunction(tuple(r))


class ProductSystem:
    def __init__(self, algebra):
        self.algebra = algebra
        self.graph = algebra.graph
        self.k = algebra.k
        self._atoms = {}

    # -- constructors ----------------------------------------------------
    def chi(self, A, n=None, c=1):
        if n is None:
            n = A.lam.degree
        return CylinderFunction.build(n, [(A, Fraction(c))])

    def zero(self, n):
        return CylinderFunction(tuple(n))

    def one(self):
        """The constant function 1 on the whole boundary."""
        return CylinderFunction.build(
            dg.zero(self.k), [(BasicSet(self.graph.vertex(v)), 1) for v in self.graph.vertices]
        )

    # -- extensional equality ------------------------------------------
    def disjointify(self, f):
        """Disjoint nonempty parts with the value f takes on each (zero values dropped)."""
        hit = self._atoms.get(f.terms)
        if hit is not None:
            return hit
        B = self.algebra
        atoms = []
        for A, c in f.terms:
            if B.is_empty(A):
                continue
            new, rest = [], [A]
            for P, v in atoms:
                inside = B.intersect_basic(P, A).parts
                if not inside:
                    new.append((P, v))
                    continue
                new.extend((Q, v + c) for Q in inside)
                new.extend((Q, v) for Q in B.difference(P, A).parts)
                rest = [r for x in rest for r in B.basic_difference(x, P) if not B.is_empty(r)]
            new.extend((r, c) for r in B.cylinder(rest).parts)
            atoms = new
        hit = tuple(sorted((P, v) for P, v in atoms if v != 0))
        self._atoms[f.terms] = hit
        return hit

    def is_zero(self, f):
        return not self.disjointify(f)

    def equal(self, f, g):
        return self.is_zero(CylinderFunction(f.slice, _merge(f.terms + (-g).terms)))

    def witness(self, f, g):
        """A basic set on which f and g differ, with the difference there."""
        parts = self.disjointify(CylinderFunction(f.slice, _merge(f.terms + (-g).terms)))
        return parts[0] if parts else None

    # -- module operations ----------------------------------------------
    def _pullback_meet(self, P, Q, m):
        """P meets sigma_m^{-1}(Q); only the preimage branch through lam(0,m) can meet P."""
        g = self.graph
        head = g.segment(P.lam, dg.zero(self.k), m)
        if head.source != Q.lam.range:
            return []
        return self.algebra.intersect_parts(P, BasicSet(g.compose(head, Q.lam), Q.F))

    def multiply(self, f, h):
        """(fh)(x) = f(x) h(sigma_m x), landing in slice m + n."""
        m = f.slice
        out = []
        for P, c in f.terms:
            for Q, d in h.terms:
                out.extend((R, c * d) for R in self._pullback_meet(P, Q, m))
        return CylinderFunction.build(dg.add(m, h.slice), out)

    def right_action(self, f, a):
        if any(a.slice):
            raise SliceMismatch("right action takes a slice-0 function")
        return self.multiply(f, a)

    def pointwise(self, f, h):
        B = self.algebra
        out = [(R, c * d) for P, c in f.terms for Q, d in h.terms for R in B.intersect_parts(P, Q)]
        return CylinderFunction.build(dg.join(f.slice, h.slice), out)

    def left_action(self, a, f):
        if any(a.slice):
            raise SliceMismatch("left action takes a slice-0 function")
        return self.pointwise(a, f).at(f.slice)

    def pushforward(self, f, n, weight=None):
        """x -> sum of weight * f(y) over sigma_n(y) = x; sigma_n is injective on each part."""
        B = self.algebra
        out = []
        for P, c in f.terms:
            w = 1 if weight is None else weight(n, P)
            out.append((B.sigma_image(P, n), c * w))
        return CylinderFunction.build(dg.zero(self.k), out)

    def inner_product(self, f, h):
        f._same(h)
        return self.pushforward(self.pointwise(f, h), f.slice)

    # -- spanning families ----------------------------------------------
    def spanning_X(self, n, cap, max_F=None):
        g, B = self.graph, self.algebra
        n, cap = tuple(n), tuple(cap)
        out = []
        for lam in g.all_paths(cap):
            if not dg.leq(n, lam.degree):
                continue
            room = dg.sub(cap, lam.degree)
            cands = [nu for nu in g.paths_up_to(lam.source, room) if not nu.is_vertex]
            top = len(cands) if max_F is None else min(max_F, len(cands))
            for r in range(top + 1):
                for F in combinations(cands, r):
                    A = BasicSet(lam, F)
                    if not B.is_empty(A):
                        out.append(A)
        return out

    def path_family(self, n, cap):
        """Indicators of D_lam, n <= d(lam) <= cap; same span as spanning_X(n, cap)."""
        return [BasicSet(lam) for lam in self.graph.all_paths(cap) if dg.leq(n, lam.degree)]

    def spanning_I(self, n, cap, max_F=None):
        B = self.algebra
        colors = [i + 1 for i, c in enumerate(n) if c > 0]
        return [
            A for A in self.spanning_X(dg.zero(self.k), cap, max_F)
            if all(B.kernel_criterion(A, i) for i in colors)
        ]

    def spanning_XI(self, m, n, cap, max_F=None):
        if not dg.leq(m, n):
            raise DegreeOrder(f"({dg.fmt(m)}) is not below ({dg.fmt(n)})")
        g, B = self.graph, self.algebra
        gap = dg.sub(n, m)
        colors = [i + 1 for i, c in enumerate(gap) if c > 0]
        out = []
        for A in self.spanning_X(m, cap, max_F):
            tail = BasicSet(g.segment(A.lam, m, A.lam.degree), A.F)
            if all(B.kernel_criterion(tail, i) for i in colors):
                out.append(A)
        return out

    # -- compact operators ----------------------------------------------
    def apply_compact(self, T, f):
        if T.slice != f.slice:
            raise SliceMismatch(f"operator on ({dg.fmt(T.slice)}) applied in ({dg.fmt(f.slice)})")
        n = T.slice
        out = self.zero(n)
        for c, ket, bra in T.terms:
            coeff = self.inner_product(self.chi(bra, n), f)
            if coeff.terms:
                out = out + c * self.right_action(self.chi(ket, n), coeff)
        return out

    def iota(self, S, q, f):
        """The extension of S from slice p to slice q: (S x) y for x in slice p."""
        q = tuple(q)
        if f.slice != q:
            raise SliceMismatch(f"iota into ({dg.fmt(q)}) applied to a slice-({dg.fmt(f.slice)}) function")
        p = S.slice
        if not dg.leq(p, q):
            return self.zero(q)
        g = self.graph
        z = dg.zero(self.k)
        out = self.zero(q)
        for A, c in f.terms:
            lam = A.lam
            head = self.chi(BasicSet(g.segment(lam, z, p)), p)
            tail = self.chi(BasicSet(g.segment(lam, p, lam.degree), A.F), dg.sub(q, p))
            out = out + c * self.multiply(self.apply_compact(S, head), tail)
        return out

    def iota_tilde(self, S, q, x):
        if x.bound != tuple(q):
            raise SliceMismatch(f"tuple bounded by ({dg.fmt(x.bound)}), expected ({dg.fmt(q)})")
        return TupleElement.build(q, [(r, self.iota(S, r, f)) for r, f in x.components])

    def tuple_is_zero(self, x):
        return all(self.is_zero(f) for _, f in x.components)

    # -- compact alignment ----------------------------------------------
    def _h_set(self, m, lam1, F1, lam2, F2, mu1, G1, alpha, beta):
        g = self.graph
        t1 = g.segment(lam1, m, lam1.degree)
        t2 = g.segment(lam2, m, lam2.degree)
        t2a = g.compose(t2, alpha)
        if t1.range != t2a.range:
            return []
        out = []
        for gamma, delta in g.lambda_min(t1, t2a):
            kappa = g.compose(lam1, gamma)
            H = set()
            for nu in F1:
                H.update(g.f_set(kappa, g.compose(lam1, nu)))
            tad = g.compose(t2a, delta)
            for zeta in F2:
                H.update(g.f_set(tad, g.compose(t2, zeta)))
            mbd = g.compose(g.compose(mu1, beta), delta)
            for eta in G1:
                H.update(g.f_set(mbd, g.compose(mu1, eta)))
            out.append(BasicSet(kappa, tuple(sorted(H))))
        return out

    def _j_set(self, n, lam2, F2, alpha, mu1, G1, mu2, G2, beta):
        g = self.graph
        s1 = g.segment(mu1, n, mu1.degree)
        s2 = g.segment(mu2, n, mu2.degree)
        s1b = g.compose(s1, beta)
        if s2.range != s1b.range:
            return []
        out = []
        for rho, tau in g.lambda_min(s2, s1b):
            omega = g.compose(mu2, rho)
            J = set()
            for xi in G2:
                J.update(g.f_set(omega, g.compose(mu2, xi)))
            sbt = g.compose(s1b, tau)
            for eta in G1:
                J.update(g.f_set(sbt, g.compose(s1, eta)))
            lat = g.compose(g.compose(lam2, alpha), tau)
            for zeta in F2:
                J.update(g.f_set(lat, g.compose(lam2, zeta)))
            out.append(BasicSet(omega, tuple(sorted(J))))
        return out

    def compact_align(self, S, T):
        """A compact operator on slice m v n equal to iota(S) iota(T) there."""
        g = self.graph
        m, n = S.slice, T.slice
        top = dg.join(m, n)
        terms = []
        for c, K1, B1 in S.terms:
            lam1, F1, lam2, F2 = K1.lam, K1.F, B1.lam, B1.F
            for d, K2, B2 in T.terms:
                mu1, G1, mu2, G2 = K2.lam, K2.F, B2.lam, B2.F
                if lam2.range != mu1.range:
                    continue
                for alpha, beta in g.lambda_min(lam2, mu1):
                    hs = self._h_set(m, lam1, F1, lam2, F2, mu1, G1, alpha, beta)
                    if not hs:
                        continue
                    js = self._j_set(n, lam2, F2, alpha, mu1, G1, mu2, G2, beta)
                    for kh in hs:
                        for oj in js:
                            if not (kh.degenerate or oj.degenerate):
                                terms.append((c * d, kh, oj))
        return CompactOp(top, tuple(terms))
