"""Cylinder subsets of the boundary-path space.

A BasicSet (lam, F) stands for D_lam minus the union of D_{lam nu}, nu in F,
where D_lam is the set of boundary paths beginning with lam. Finite disjoint
unions of these form a Boolean algebra, kept here in a sorted disjoint normal
form.
"""

from dataclasses import dataclass
from typing import Tuple

from . import degree as dg
from .errors import DegreeTooSmall, InvalidColor, NotContained, NotInSlice, RangeMismatch
from .kgraph import Path


@dataclass(frozen=True, order=True)
class BasicSet:
    lam: Path
    F: Tuple[Path, ...] = ()

    @property
    def degenerate(self):
        """A vertex in F removes everything: D_lam minus D_lam."""
        return any(nu.is_vertex for nu in self.F)

    def in_slice(self, n):
        return dg.leq(n, self.lam.degree)

    def __str__(self):
        if not self.F:
            return f"[{self.lam}]"
        return f"[{self.lam} - {','.join(str(nu) for nu in self.F)}]"


@dataclass(frozen=True)
class CylinderSet:
    parts: Tuple[BasicSet, ...] = ()

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "{" + " | ".join(str(p) for p in self.parts) + "}"


class BoundaryAlgebra:
    """Boolean operations, shifts and slice tests for cylinder sets of one graph.

    `bound` raises the degree bound used by the exhaustiveness test behind
    emptiness; `reduce` drops members of F that extend another member.
    """

    def __init__(self, graph, bound=None, reduce=True):
        self.graph = graph
        self.k = graph.k
        self.bound = tuple(bound) if bound is not None else None
        self.reduce = reduce
        self._empty = {}
        self._meet = {}

    # -- construction ----------------------------------------------------
    def basic(self, lam, F=()):
        F = tuple(sorted(set(F)))
        for nu in F:
            if nu.range != lam.source:
                raise RangeMismatch(f"{nu} does not start at s({lam}) = {lam.source}")
        return BasicSet(lam, F)

    def reduced(self, A):
        g = self.graph
        keep = [
            nu for nu in A.F
            if not any(other != nu and g.extends(nu, other) for other in A.F)
        ]
        return BasicSet(A.lam, tuple(keep))

    def cylinder(self, parts):
        """Normal form: drop empty parts, reduce F, sort."""
        out = set()
        for p in parts:
            if p.degenerate or self.is_empty(p):
                continue
            out.add(self.reduced(p) if self.reduce else p)
        return CylinderSet(tuple(sorted(out)))

    def as_set(self, X):
        if isinstance(X, BasicSet):
            return self.cylinder([X])
        return X

    # -- emptiness -------------------------------------------------------
    def emptiness(self, A):
        """Exhaustiveness of F at s(lam), tagged with the degree bound used."""
        if A.degenerate:
            return self.graph.is_exhaustive(A.lam.source, A.F, self.bound)
        hit = self._empty.get(A)
        if hit is None:
            hit = self.graph.is_exhaustive(A.lam.source, A.F, self.bound)
            self._empty[A] = hit
        return hit

    def is_empty(self, A):
        if isinstance(A, CylinderSet):
            return all(self.is_empty(p) for p in A.parts)
        return A.degenerate or self.emptiness(A).exhaustive

    # -- intersections --------------------------------------------------
    def _f_alpha(self, lam, alpha, F, mu, G):
        g = self.graph
        la = g.compose(lam, alpha)
        out = set()
        for nu in F:
            out.update(g.f_set(la, g.compose(lam, nu)))
        for xi in G:
            out.update(g.f_set(la, g.compose(mu, xi)))
        return tuple(sorted(out))

    def intersect_parts(self, A, B):
        """Raw parts (lam alpha, F_alpha), one per minimal common extension."""
        if A.lam.range != B.lam.range:
            return []
        key = (A, B)
        hit = self._meet.get(key)
        if hit is None:
            g = self.graph
            hit = [
                BasicSet(g.compose(A.lam, a), self._f_alpha(A.lam, a, A.F, B.lam, B.F))
                for a, _ in g.lambda_min(A.lam, B.lam)
            ]
            self._meet[key] = hit
        return hit

    def intersect_basic(self, A, B):
        return self.cylinder(self.intersect_parts(A, B))

    # -- refinement and shifts ------------------------------------------
    def refine_parts(self, A, n):
        g = self.graph
        lam = A.lam
        step = dg.sub(dg.join(lam.degree, n), lam.degree)
        return [BasicSet(g.compose(lam, mu), g.ext(mu, A.F)) for mu in g.paths_from(lam.source, step)]

    def refine_to_slice(self, A, n):
        if not self.slice_contains(A, n):
            raise NotInSlice(f"{A} is not contained in the degree-({dg.fmt(n)}) slice")
        return self.cylinder(self.refine_parts(A, n))

    def sigma_image(self, A, n):
        lam = A.lam
        if not dg.leq(n, lam.degree):
            raise DegreeTooSmall(f"cannot shift {A} by ({dg.fmt(n)})")
        return BasicSet(self.graph.segment(lam, n, lam.degree), A.F)

    def sigma_preimage(self, A, n):
        g = self.graph
        return self.cylinder(BasicSet(g.compose(t, A.lam), A.F) for t in g.paths_to(A.lam.range, n))

    # -- slices and condition K -----------------------------------------
    def slice_contains(self, A, n):
        """A lies inside the boundary paths of degree >= n."""
        lam = A.lam
        if A.degenerate or dg.leq(n, lam.degree):
            return True
        step = dg.sub(dg.join(lam.degree, n), lam.degree)
        cover = self.graph.paths_from(lam.source, step)
        return self.is_empty(BasicSet(lam, tuple(sorted(set(A.F) | set(cover)))))

    def condition_K(self, A, i):
        if not 1 <= i <= self.k:
            raise InvalidColor(f"color {i} in a rank-{self.k} graph")
        g = self.graph
        for mu in g.edges_into(A.lam.source, i):
            if not any(self.path_subset(mu, nu) for nu in A.F):
                return False
        return True

    def path_subset(self, mu, nu):
        """D_mu inside D_nu, decided by emptiness of the difference."""
        if mu.range != nu.range:
            return False
        return self.is_empty(BasicSet(mu, self.graph.f_set(mu, nu)))

    def kernel_criterion(self, A, i):
        return A.lam.degree[i - 1] == 0 and self.condition_K(A, i)

    def avoids_slice(self, A, i, method="criterion"):
        """A misses every boundary path of degree >= e_i.

        "criterion" uses d(lam)_i = 0 plus condition K(i) (valid for nonempty
        A; empty sets trivially avoid everything). "direct" refines A to the
        slice and tests every refined part for emptiness.
        """
        if method == "criterion":
            return self.is_empty(A) or self.kernel_criterion(A, i)
        if A.lam.degree[i - 1] > 0:
            return self.is_empty(A)
        return all(self.is_empty(p) for p in self.refine_parts(A, dg.basis(self.k, i)))

    # -- Boolean algebra -------------------------------------------------
    def basic_difference(self, P, B):
        """Disjoint parts of P minus B."""
        if B.degenerate or P.lam.range != B.lam.range:
            return [P]
        g = self.graph
        mu = B.lam
        out = [BasicSet(P.lam, tuple(sorted(set(P.F) | set(g.f_set(P.lam, mu)))))]
        # disjointify D_{mu xi}, xi in G, then meet each piece with P
        done = []
        for xi in B.F:
            mx = g.compose(mu, xi)
            cut = set()
            for prev in done:
                cut.update(g.f_set(mx, prev))
            done.append(mx)
            out.extend(self.intersect_parts(P, BasicSet(mx, tuple(sorted(cut)))))
        return out

    def intersect(self, X, Y):
        X, Y = self.as_set(X), self.as_set(Y)
        return self.cylinder(r for p in X for q in Y for r in self.intersect_parts(p, q))

    def difference(self, X, Y):
        X, Y = self.as_set(X), self.as_set(Y)
        cur = list(X.parts)
        for q in Y:
            nxt = []
            for p in cur:
                nxt.extend(r for r in self.basic_difference(p, q) if not self.is_empty(r))
            cur = nxt
        return self.cylinder(cur)

    def union(self, X, Y):
        # add parts one at a time so the result is disjoint even when inputs overlap
        acc = []
        for p in list(self.as_set(X).parts) + list(self.as_set(Y).parts):
            acc.extend(self.difference(p, self.cylinder(acc)).parts)
        return self.cylinder(acc)

    def symmetric_difference(self, X, Y):
        return self.cylinder(list(self.difference(X, Y).parts) + list(self.difference(Y, X).parts))

    def complement_within(self, A, ambient):
        if not self.is_empty(self.difference(A, ambient)):
            raise NotContained(f"{A} is not inside {ambient}")
        return self.difference(ambient, A)

    def subset(self, X, Y):
        return self.is_empty(self.difference(X, Y))

    def set_equal(self, X, Y):
        return self.is_empty(self.symmetric_difference(X, Y))

    def disjoint(self, parts):
        """Pairwise disjointness, checked by intersecting every pair."""
        parts = list(parts)
        for i, p in enumerate(parts):
            for q in parts[i + 1:]:
                if not self.is_empty(self.intersect_basic(p, q)):
                    return False, (p, q)
        return True, None
