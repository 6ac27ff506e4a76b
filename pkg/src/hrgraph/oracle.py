"""Brute-force cross-checks on graphs without sources.

When no vertex is a source every boundary path is infinite, and membership of
a boundary path in a cylinder set is decided by any prefix whose degree
dominates the degrees involved. The oracle enumerates all such prefixes.
"""

from fractions import Fraction

from . import degree as dg
from .errors import InsufficientDegree, SourcePresent


def lambda_min_bruteforce(g, lam, mu):
    """Pairs (a, b) with lam a = mu b at degree d(lam) v d(mu), by full enumeration."""
    top = dg.join(lam.degree, mu.degree)
    out = []
    for a in g.paths_from(lam.source, dg.sub(top, lam.degree)):
        la = g.compose(lam, a)
        for b in g.paths_from(mu.source, dg.sub(top, mu.degree)):
            if g.compose(mu, b) == la:
                out.append((a, b))
    return tuple(sorted(out))


class PrefixUniverse:
    def __init__(self, graph, M):
        if graph.has_sources():
            raise SourcePresent("prefix semantics needs a graph without sources")
        self.graph = graph
        self.M = tuple(M)
        self.prefixes = tuple(p for v in graph.vertices for p in graph.paths_from(v, self.M))
        self._heads = {}

    def _prefix(self, p, n):
        heads = self._heads.get(p)
        if heads is None:
            z = dg.zero(self.graph.k)
            heads = {m: self.graph.segment(p, z, m) for m in dg.below(p.degree)}
            self._heads[p] = heads
        try:
            return heads[n]
        except KeyError:
            raise InsufficientDegree(
                f"prefix {p} of degree ({dg.fmt(p.degree)}) cannot decide degree ({dg.fmt(n)})"
            ) from None

    def member(self, p, A):
        g = self.graph
        lam = A.lam
        if p.range != lam.range:
            for nu in A.F:
                self._prefix(p, dg.add(lam.degree, nu.degree))
            return False
        if self._prefix(p, lam.degree) != lam:
            for nu in A.F:
                self._prefix(p, dg.add(lam.degree, nu.degree))
            return False
        for nu in A.F:
            lnu = g.compose(lam, nu)
            if self._prefix(p, lnu.degree) == lnu:
                return False
        return True

    def member_of(self, p, X):
        return any(self.member(p, A) for A in X)

    def set_equal(self, X, Y):
        """Compare two CylinderSets (or part lists); returns (ok, witness prefix)."""
        for p in self.prefixes:
            if self.member_of(p, X) != self.member_of(p, Y):
                return False, p
        return True, None

    def evaluate(self, f, p):
        return sum((c for A, c in f.terms if self.member(p, A)), Fraction(0))

    def function_equal(self, f, h):
        for p in self.prefixes:
            a, b = self.evaluate(f, p), self.evaluate(h, p)
            if a != b:
                return False, (p, a, b)
        return True, None

    def values(self, f):
        return {p: self.evaluate(f, p) for p in self.prefixes}

    # pointwise reference versions of the module operations, evaluated at a prefix
    def preimages(self, p, n):
        g = self.graph
        return [g.compose(t, p) for t in g.paths_to(p.range, n)]

    def inner_product_at(self, f, h, n, p):
        return sum((self.evaluate(f, y) * self.evaluate(h, y) for y in self.preimages(p, n)), Fraction(0))

    def transfer_at(self, f, n, p, weight=lambda y: 1):
        return sum((weight(y) * self.evaluate(f, y) for y in self.preimages(p, n)), Fraction(0))

    def shift(self, p, n):
        return self.graph.segment(p, n, p.degree)

    def multiply_at(self, f, m, h, p):
        return self.evaluate(f, p) * self.evaluate(h, self.shift(p, m))
