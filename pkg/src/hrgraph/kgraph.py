"""Finite k-graphs presented by a colored skeleton plus commuting squares.

A path is stored in its color-ordered normal form: all color-1 edges first,
then color 2, and so on. Two paths are equal iff their normal forms are.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import degree as dg
from .errors import (
    CubeConditionFailure,
    DegreeOutOfRange,
    DuplicateSquare,
    InvalidColor,
    MalformedSkeleton,
    MissingSquare,
    NonBijectiveSquares,
    NotComposable,
    RangeMismatch,
    RankMismatch,
)


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass
class Skeleton:
    k: int
    vertices: List[str]
    edges: Dict[str, Edge]
    squares: List[Tuple[str, str, str, str]]
    # optional source positions, keyed by ("vertex"|"edge", id) or ("square", index)
    lines: Dict[tuple, int] = field(default_factory=dict)

    def line_of(self, *keys):
        for key in keys:
            if key in self.lines:
                return self.lines[key]
        return None


@dataclass(frozen=True, order=True)
class Path:
    degree: Tuple[int, ...]
    word: Tuple[str, ...]
    range: str
    source: str
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.degree, self.word, self.range)))

    def __hash__(self):
        return self._hash

    @property
    def is_vertex(self):
        return not self.word

    def __str__(self):
        return ".".join(self.word) if self.word else self.range

    def __repr__(self):
        return f"Path({self})"


@dataclass(frozen=True)
class Exhaustiveness:
    exhaustive: bool
    witness: Optional[Path]
    bound: Tuple[int, ...]

    def __bool__(self):
        return self.exhaustive


def _check_well_formed(skel):
    if skel.k < 1:
        raise MalformedSkeleton(f"rank must be positive, got {skel.k}")
    verts = set(skel.vertices)
    for e in skel.edges.values():
        line = skel.line_of(("edge", e.id))
        if not 1 <= e.color <= skel.k:
            raise InvalidColor(f"edge {e.id} has color {e.color}, rank is {skel.k}", line)
        for v in (e.range, e.source):
            if v not in verts:
                raise MalformedSkeleton(f"edge {e.id} uses undeclared vertex {v}", line)
    for idx, sq in enumerate(skel.squares):
        line = skel.line_of(("square", idx))
        for x in sq:
            if x not in skel.edges:
                raise MalformedSkeleton(f"square mentions unknown edge {x}", line)
        a, b, c, d = (skel.edges[x] for x in sq)
        if not (a.color < b.color and c.color == b.color and d.color == a.color):
            raise MalformedSkeleton(f"square {' '.join(sq)} has the wrong color pattern", line)
        if not (a.source == b.range and c.source == d.range):
            raise MalformedSkeleton(f"square {' '.join(sq)} has a non-composable side", line)
        if not (a.range == c.range and b.source == d.source):
            raise MalformedSkeleton(f"square {' '.join(sq)} sides have different endpoints", line)


def _check_squares(skel):
    by_first, by_second = {}, {}
    for idx, (a, b, c, d) in enumerate(skel.squares):
        if (a, b) in by_first:
            raise DuplicateSquare(f"({a},{b})", skel.line_of(("square", idx)))
        by_first[(a, b)] = idx
        if (c, d) in by_second:
            other = skel.squares[by_second[(c, d)]]
            raise NonBijectiveSquares(
                f"{c}.{d} is the target of both {other[0]}.{other[1]} and {a}.{b}",
                skel.line_of(("square", idx)),
            )
        by_second[(c, d)] = idx
    # composable pairs (x, y): s(x) = r(y)
    out_of = {}
    for e in skel.edges.values():
        out_of.setdefault(e.range, []).append(e)
    for x in sorted(skel.edges):
        ex = skel.edges[x]
        for ey in sorted(out_of.get(ex.source, ()), key=lambda e: e.id):
            if ex.color < ey.color and (x, ey.id) not in by_first:
                raise MissingSquare(f"({x},{ey.id})", skel.line_of(("edge", x), ("edge", ey.id)))
            if ex.color > ey.color and (x, ey.id) not in by_second:
                raise NonBijectiveSquares(
                    f"{x}.{ey.id} is not the target of any square",
                    skel.line_of(("edge", x), ("edge", ey.id)),
                )


class KGraph:
    """A validated finite k-graph. Build with validate_kgraph."""

    def __init__(self, skel, check=True):
        self.skeleton = skel
        self.k = skel.k
        self.vertices = tuple(sorted(skel.vertices))
        self.edges = skel.edges
        if check:
            _check_well_formed(skel)
            _check_squares(skel)
        self._flip = {}
        for a, b, c, d in skel.squares:
            self._flip[(a, b)] = (c, d)
            self._flip.setdefault((c, d), (a, b))
        self._by_range_color = {}
        for e in sorted(skel.edges.values(), key=lambda e: e.id):
            self._by_range_color.setdefault((e.range, e.color), []).append(e)
        self._paths_from = {}
        self._paths_to = {}
        self._lmin = {}
        self._segment = {}
        self._compose = {}
        if check and self.k >= 3:
            self._check_cube()

    # -- words -----------------------------------------------------------
    def color(self, x):
        return self.edges[x].color

    def _swap(self, x, y):
        try:
            return self._flip[(x, y)]
        except KeyError:
            raise MissingSquare(f"no square rewrites {x}.{y}") from None

    def _sort(self, word, rank, rightmost=False):
        """Bubble letters into increasing rank, rewriting each swap by its square."""
        w = [(x, r) for x, r in zip(word, rank)]
        while True:
            idx = [i for i in range(len(w) - 1) if w[i][1] > w[i + 1][1]]
            if not idx:
                return tuple(x for x, _ in w)
            i = idx[-1] if rightmost else idx[0]
            (x, rx), (y, ry) = w[i], w[i + 1]
            x2, y2 = self._swap(x, y)
            w[i], w[i + 1] = (x2, ry), (y2, rx)

    def normalize(self, word, rightmost=False):
        return self._sort(word, [self.color(x) for x in word], rightmost)

    def reorder(self, word, colors):
        """Rewrite `word` into the representative whose color sequence is `colors`."""
        seen, slots = {}, {}
        for pos, c in enumerate(colors):
            slots.setdefault(c, []).append(pos)
        rank = []
        for x in word:
            c = self.color(x)
            n = seen.get(c, 0)
            seen[c] = n + 1
            rank.append(slots[c][n])
        return self._sort(word, rank)

    def _block(self, n):
        return [i + 1 for i, c in enumerate(n) for _ in range(c)]

    def _degree_of(self, word):
        d = [0] * self.k
        for x in word:
            d[self.color(x) - 1] += 1
        return tuple(d)

    # -- paths -----------------------------------------------------------
    def vertex(self, v):
        if v not in self.skeleton.vertices:
            raise KeyError(f"unknown vertex {v}")
        return Path(dg.zero(self.k), (), v, v)

    def path(self, word):
        """Path from any representative word (edge ids, range first)."""
        word = tuple(word)
        for x in word:
            if x not in self.edges:
                raise KeyError(f"unknown edge {x}")
        for x, y in zip(word, word[1:]):
            if self.edges[x].source != self.edges[y].range:
                raise NotComposable(f"{x} then {y}")
        nf = self.normalize(word)
        return Path(self._degree_of(nf), nf, self.edges[nf[0]].range, self.edges[nf[-1]].source)

    def parse_path(self, text):
        text = text.strip()
        if text in self.skeleton.vertices:
            return self.vertex(text)
        return self.path(text.split("."))

    def compose(self, lam, mu):
        if lam.source != mu.range:
            raise NotComposable(f"s({lam}) = {lam.source} but r({mu}) = {mu.range}")
        if mu.is_vertex:
            return lam
        if lam.is_vertex:
            return mu
        key = (lam, mu)
        hit = self._compose.get(key)
        if hit is None:
            nf = self.normalize(lam.word + mu.word)
            hit = Path(dg.add(lam.degree, mu.degree), nf, lam.range, mu.source)
            self._compose[key] = hit
        return hit

    def segment(self, lam, m, n):
        """lam(m, n): the middle factor of lam = lam(0,m) lam(m,n) lam(n,d)."""
        key = (lam, m, n)
        hit = self._segment.get(key)
        if hit is not None:
            return hit
        d = lam.degree
        if not (dg.leq(m, n) and dg.leq(n, d)):
            raise DegreeOutOfRange(f"segment ({dg.fmt(m)})..({dg.fmt(n)}) of {lam} with degree ({dg.fmt(d)})")
        if m == n == d:
            return self.vertex(lam.source)
        if not any(m) and n == d:
            return lam
        colors = self._block(m) + self._block(dg.sub(n, m)) + self._block(dg.sub(d, n))
        w = self.reorder(lam.word, colors)
        i, j = sum(m), sum(n)
        mid = w[i:j]
        if mid:
            hit = Path(dg.sub(n, m), mid, self.edges[mid[0]].range, self.edges[mid[-1]].source)
        else:
            v = lam.range if i == 0 else self.edges[w[i - 1]].source
            hit = self.vertex(v)
        self._segment[key] = hit
        return hit

    def extends(self, lam, mu):
        """True iff lam = mu nu for some nu."""
        return (
            lam.range == mu.range
            and dg.leq(mu.degree, lam.degree)
            and self.segment(lam, dg.zero(self.k), mu.degree) == mu
        )

    def paths_from(self, v, n):
        key = (v, tuple(n))
        hit = self._paths_from.get(key)
        if hit is not None:
            return hit
        if len(n) != self.k:
            raise RankMismatch(f"degree ({dg.fmt(n)}) in a rank-{self.k} graph")
        frontier = [((), v)]
        for c in self._block(n):
            frontier = [
                (w + (e.id,), e.source)
                for w, end in frontier
                for e in self._by_range_color.get((end, c), ())
            ]
        out = tuple(sorted(
            Path(tuple(n), w, v, end) if w else self.vertex(v) for w, end in frontier
        ))
        self._paths_from[key] = out
        return out

    def paths_to(self, v, n):
        """All paths of degree n with source v."""
        key = (v, tuple(n))
        hit = self._paths_to.get(key)
        if hit is None:
            hit = tuple(sorted(p for u in self.vertices for p in self.paths_from(u, n) if p.source == v))
            self._paths_to[key] = hit
        return hit

    def paths_up_to(self, v, cap):
        out = []
        for n in dg.below(cap):
            out.extend(self.paths_from(v, n))
        return sorted(out)

    def all_paths(self, cap):
        return sorted(p for v in self.vertices for p in self.paths_up_to(v, cap))

    def edges_into(self, v, i):
        """Color-i edges with range v, i.e. the paths vΛ^{e_i}."""
        return self.paths_from(v, dg.basis(self.k, i))

    def has_sources(self):
        return any(
            not self._by_range_color.get((v, i)) for v in self.vertices for i in range(1, self.k + 1)
        )

    # -- common extensions ----------------------------------------------
    def lambda_min(self, lam, mu):
        """Minimal common extensions: pairs (a, b) with lam a = mu b of degree d(lam) v d(mu)."""
        if lam.range != mu.range:
            raise RangeMismatch(f"r({lam}) = {lam.range}, r({mu}) = {mu.range}")
        key = (lam, mu)
        hit = self._lmin.get(key)
        if hit is not None:
            return hit
        top = dg.join(lam.degree, mu.degree)
        out = []
        for a in self.paths_from(lam.source, dg.sub(top, lam.degree)):
            rho = self.compose(lam, a)
            if self.segment(rho, dg.zero(self.k), mu.degree) == mu:
                out.append((a, self.segment(rho, mu.degree, top)))
        hit = tuple(sorted(out))
        self._lmin[key] = hit
        return hit

    def ext(self, lam, E):
        """Ext(lam; E): first components of the common extensions of lam with members of E."""
        out = set()
        for nu in E:
            if nu.range != lam.range:
                raise RangeMismatch(f"{nu} does not start at r({lam}) = {lam.range}")
            out.update(a for a, _ in self.lambda_min(lam, nu))
        return tuple(sorted(out))

    def f_set(self, lam, mu):
        return self.ext(lam, (mu,))

    def is_exhaustive(self, v, E, bound=None):
        E = tuple(E)
        for lam in E:
            if lam.range != v:
                raise RangeMismatch(f"{lam} does not start at {v}")
        b = dg.join_all([lam.degree for lam in E], self.k)
        if bound is not None:
            b = dg.join(b, tuple(bound))
        if any(lam.is_vertex for lam in E):
            return Exhaustiveness(True, None, b)
        for n in sorted(dg.below(b), key=lambda n: (sum(n), n)):
            for mu in self.paths_from(v, n):
                if not any(self.lambda_min(lam, mu) for lam in E):
                    return Exhaustiveness(False, mu, b)
        return Exhaustiveness(True, None, b)

    # -- validation helpers ---------------------------------------------
    def _check_cube(self):
        k = self.k
        out_of = self._by_range_color
        for x in sorted(self.edges):
            ex = self.edges[x]
            for cy in range(1, k + 1):
                for ey in out_of.get((ex.source, cy), ()):
                    for cz in range(1, k + 1):
                        if len({ex.color, cy, cz}) < 3:
                            continue
                        for ez in out_of.get((ey.source, cz), ()):
                            w = (x, ey.id, ez.id)
                            left = self.normalize(w)
                            right = self.normalize(w, rightmost=True)
                            if left != right:
                                raise CubeConditionFailure(
                                    f"{'.'.join(w)} rewrites to both {'.'.join(left)} and {'.'.join(right)}"
                                )

    def color_sequences(self, n):
        """Every color sequence with color counts n (distinct permutations)."""
        base = self._block(n)
        seen = set()
        for perm in _multiset_perms(base):
            if perm not in seen:
                seen.add(perm)
                yield perm


def _multiset_perms(items):
    items = sorted(items)
    if not items:
        yield ()
        return
    for i, x in enumerate(items):
        if i and items[i - 1] == x:
            continue
        for rest in _multiset_perms(items[:i] + items[i + 1:]):
            yield (x,) + rest


def validate_kgraph(skel):
    return KGraph(skel, check=True)
