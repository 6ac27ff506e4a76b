"""Shift endomorphisms and transfer operators on the boundary-path space."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import degree as dg
from .boundary import BasicSet
from .errors import RegularityRequired
from .product import CylinderFunction
from .report import Report


@dataclass(frozen=True)
class WeightFunction:
    """kind is "uniform", "normalized" (divide by the preimage count) or "regular"."""

    kind: str = "uniform"
    M: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("uniform", "normalized", "regular"):
            raise ValueError(f"unknown weight kind {self.kind!r}")


class Dynamics:
    def __init__(self, ps):
        self.ps = ps
        self.algebra = ps.algebra
        self.graph = ps.graph
        self.k = ps.k
        self._regular = False

    def detect_regularity(self):
        """(M_1..M_k) if every vertex receives M_i >= 1 edges of color i at its source end
        and the graph has no sources; otherwise None."""
        if self._regular is False:
            self._regular = self._regularity()
        return self._regular

    def _regularity(self):
        g = self.graph
        if g.has_sources():
            return None
        out = []
        for i in range(1, self.k + 1):
            counts = {len(g.paths_to(v, dg.basis(self.k, i))) for v in g.vertices}
            if len(counts) != 1 or 0 in counts:
                return None
            out.append(counts.pop())
        return tuple(out)

    def regular_weight(self):
        M = self.detect_regularity()
        if M is None:
            raise RegularityRequired("graph is not regular")
        return WeightFunction("regular", M)

    def _require_regular(self, w):
        if w.M is None or w.M != self.detect_regularity():
            raise RegularityRequired(f"regular weights {w.M} do not match the graph")

    def weight(self, w, n, part):
        """Weight of a preimage point y of sigma_n lying in `part`."""
        if w.kind == "uniform":
            return Fraction(1)
        if w.kind == "normalized":
            g = self.graph
            head = g.segment(part.lam, dg.zero(self.k), n)
            return Fraction(1, len(g.paths_to(head.source, n)))
        self._require_regular(w)
        M = w.M
        out = Fraction(1)
        for Mi, ni in zip(M, n):
            out /= Fraction(Mi) ** ni
        return out

    # -- operators -------------------------------------------------------
    def alpha(self, n, f):
        """f composed with sigma_n, in slice n."""
        n = tuple(n)
        out = []
        for A, c in f.terms:
            out.extend((P, c) for P in self.algebra.sigma_preimage(A, n))
        return CylinderFunction.build(n, out)

    def transfer(self, n, f, w=WeightFunction()):
        n = tuple(n)
        if w.kind == "regular":
            self._require_regular(w)
        return self.ps.pushforward(f.at(n), n, weight=lambda m, P: self.weight(w, m, P))

    def image(self, n):
        """sigma_n of the boundary paths of degree >= n, as a cylinder set."""
        B, g = self.algebra, self.graph
        parts = []
        for v in g.vertices:
            for t in g.paths_from(v, n):
                parts = list(B.union(B.cylinder(parts), B.sigma_image(BasicSet(t), n)).parts)
        return B.cylinder(parts)

    def indicator(self, X):
        return CylinderFunction.build(dg.zero(self.k), [(P, 1) for P in X])

    # -- checks ----------------------------------------------------------
    def check_transfer_identity(self, n, cap, w=WeightFunction(), label=""):
        """L_n(alpha_n(f) g) = f L_n(g) for spanning f (slice 0) and g (slice n)."""
        ps = self.ps
        n = tuple(n)
        rep = Report()
        fs = ps.spanning_X(dg.zero(self.k), cap)
        gs = ps.spanning_X(n, dg.join(cap, n))
        if not gs:
            rep.add("transfer-identity", f"{label}n=({dg.fmt(n)});w={w.kind};empty-slice", True)
            return rep
        for A in fs:
            f = ps.chi(A, dg.zero(self.k))
            af = self.alpha(n, f)
            bad = None
            for C in gs:
                g = ps.chi(C, n)
                lhs = self.transfer(n, ps.pointwise(af, g).at(n), w)
                rhs = ps.pointwise(f, self.transfer(n, g, w))
                if not ps.equal(lhs, rhs):
                    bad = f"g={C};diff_on={ps.witness(lhs, rhs)}"
                    break
            rep.add("transfer-identity", f"{label}n=({dg.fmt(n)});w={w.kind};f={A}", bad is None, bad)
        return rep

    def check_inner_product_transfer(self, n, cap, label=""):
        ps = self.ps
        n = tuple(n)
        rep = Report()
        gs = ps.spanning_X(n, dg.join(cap, n))
        for A in gs:
            f = ps.chi(A, n)
            bad = None
            for C in gs:
                g = ps.chi(C, n)
                lhs = ps.inner_product(f, g)
                rhs = self.transfer(n, ps.pointwise(f, g).at(n))
                if not ps.equal(lhs, rhs):
                    bad = f"g={C}"
                    break
            rep.add("inner-product-is-transfer", f"{label}n=({dg.fmt(n)});f={A}", bad is None, bad)
        if not gs:
            rep.add("inner-product-is-transfer", f"{label}n=({dg.fmt(n)});empty-slice", True)
        return rep

    def check_regular_weights(self, cap, label=""):
        """Sum of omega over preimages is 1, and omega is a cocycle, for all n <= cap."""
        ps, B = self.ps, self.algebra
        rep = Report()
        w = self.regular_weight()
        one = ps.one()
        for n in dg.below(cap):
            total = self.transfer(n, self.alpha(n, one), w)
            ok = ps.equal(total, one)
            rep.add("omega-normalized", f"{label}n=({dg.fmt(n)})", ok, "" if ok else ps.witness(total, one))
        for m in dg.below(cap):
            for n in dg.below(cap):
                mn = dg.add(m, n)
                bad = None
                for P in ps.spanning_X(mn, dg.add(cap, cap), max_F=0):
                    lhs = self.weight(w, mn, P)
                    rhs = self.weight(w, m, P) * self.weight(w, n, B.sigma_image(P, m))
                    if lhs != rhs:
                        bad = f"{P}:{lhs}!={rhs}"
                        break
                rep.add("omega-cocycle", f"{label}m=({dg.fmt(m)});n=({dg.fmt(n)})", bad is None, bad)
        return rep

    def check_transfer_alpha(self, n, cap, label=""):
        """Normalized transfer undoes alpha_n on the image of sigma_n."""
        ps = self.ps
        rep = Report()
        img = self.indicator(self.image(n))
        w = WeightFunction("normalized")
        for A in ps.spanning_X(dg.zero(self.k), cap):
            f = ps.chi(A, dg.zero(self.k))
            lhs = self.transfer(n, self.alpha(n, f), w)
            rhs = ps.pointwise(f, img)
            ok = ps.equal(lhs, rhs)
            rep.add("transfer-undoes-alpha", f"{label}n=({dg.fmt(n)});f={A}", ok, None if ok else ps.witness(lhs, rhs))
        return rep


def exel_suite(ps, cap, ns, kind="uniform"):
    """Transfer identity, inner product as transfer and transfer after alpha for each n;
    with kind="regular" also the weight normalization and cocycle checks."""
    D = Dynamics(ps)
    rep = Report()
    w = D.regular_weight() if kind == "regular" else WeightFunction(kind)
    for n in ns:
        rep.extend(D.check_transfer_identity(n, cap, w))
        rep.extend(D.check_inner_product_transfer(n, cap))
        rep.extend(D.check_transfer_alpha(n, cap))
    if kind == "regular":
        rep.extend(D.check_regular_weights(cap))
    return rep
