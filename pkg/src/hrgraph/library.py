"""Small named k-graphs used by the tests, the CLI and the acceptance suite."""

from . import degree as dg
from .kgraph import Edge, Skeleton, validate_kgraph


def _vname(p):
    return "v" + "_".join(str(c) for c in p)


def _ename(i, p):
    return f"c{i}_" + "_".join(str(c) for c in p)


def grid_skeleton(m):
    """The grid k-graph on {p : p <= m}: one edge p -> p+e_i of color i, range p."""
    k = len(m)
    pts = dg.below(m)
    edges = {}
    for p in pts:
        for i in range(1, k + 1):
            q = dg.add(p, dg.basis(k, i))
            if dg.leq(q, m):
                name = _ename(i, p)
                edges[name] = Edge(name, i, _vname(p), _vname(q))
    squares = []
    for p in pts:
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                ei, ej = dg.basis(k, i), dg.basis(k, j)
                if dg.leq(dg.add(dg.add(p, ei), ej), m):
                    squares.append((
                        _ename(i, p), _ename(j, dg.add(p, ei)),
                        _ename(j, p), _ename(i, dg.add(p, ej)),
                    ))
    return Skeleton(k, [_vname(p) for p in pts], edges, squares)


def grid(m):
    return validate_kgraph(grid_skeleton(tuple(m)))


def grid_path(g, p, q):
    """The unique path of the grid graph from p up to q."""
    word, cur = [], tuple(p)
    for i in range(1, len(p) + 1):
        while cur[i - 1] < q[i - 1]:
            word.append(_ename(i, cur))
            cur = dg.add(cur, dg.basis(len(p), i))
    return g.path(word) if word else g.vertex(_vname(p))


def one_vertex_skeleton(colored, squares=None, v="v"):
    """One vertex, edges given per color; `squares` maps ij-pairs to ji-pairs.

    With one edge per color the squares are forced and may be omitted.
    """
    k = len(colored)
    edges = {x: Edge(x, i + 1, v, v) for i, names in enumerate(colored) for x in names}
    if squares is None:
        squares = {}
        for i in range(k):
            for j in range(i + 1, k):
                for a in colored[i]:
                    for b in colored[j]:
                        squares[(a, b)] = (b, a)
    return Skeleton(k, [v], edges, [(a, b, c, d) for (a, b), (c, d) in squares.items()])


def square_graph():
    """One vertex, e of color 1, f of color 2, ef = fe."""
    return validate_kgraph(one_vertex_skeleton([["e"], ["f"]]))


G3_SQUARES = {
    ("a", "f"): ("f", "b"),
    ("a", "g"): ("g", "a"),
    ("b", "f"): ("f", "a"),
    ("b", "g"): ("g", "b"),
}


def twisted_graph_skeleton():
    return one_vertex_skeleton([["a", "b"], ["f", "g"]], dict(G3_SQUARES))


def twisted_graph():
    """One vertex, color-1 edges a, b and color-2 edges f, g with a twisted square bijection."""
    return validate_kgraph(twisted_graph_skeleton())


def edge_graph():
    """Two vertices u <- v joined by one edge e (range u, source v)."""
    skel = Skeleton(1, ["u", "v"], {"e": Edge("e", 1, "u", "v")}, [])
    return validate_kgraph(skel)


def cube_graph():
    """A 3-graph on one vertex with one edge per color: x, y, z."""
    return validate_kgraph(one_vertex_skeleton([["x"], ["y"], ["z"]]))


def bouquet(*names):
    """A 1-graph on one vertex with one loop per name."""
    return validate_kgraph(one_vertex_skeleton([list(names)]))


def reference_graphs():
    """The five acceptance graphs with their default degree caps."""
    return {
        "G1": (grid((2, 2)), (2, 2)),
        "G2": (square_graph(), (2, 2)),
        "G3": (twisted_graph(), (2, 2)),
        "G4": (edge_graph(), (2,)),
        "G5": (cube_graph(), (1, 1, 1)),
    }
