"""Text format for k-graphs, plus path and cylinder-set literals.

    kgraph 1
    k 2
    vertex v
    edge e color=1 range=v source=v
    square e f = f e      # e.f = f.e

Blank lines and '#' comments are ignored.
"""

import re

from .boundary import BasicSet, CylinderSet
from .errors import KGraphError, ParseError
from .kgraph import Edge, Skeleton, validate_kgraph

_EDGE_KEYS = ("color", "range", "source")


def parse_skeleton(text):
    k = None
    header = False
    vertices, edges, squares, lines = [], {}, [], {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw = tok[0]
        if not header:
            if tok != ["kgraph", "1"]:
                raise ParseError("expected header 'kgraph 1'", no)
            header = True
        elif kw == "k":
            if k is not None:
                raise ParseError("rank declared twice", no)
            if len(tok) != 2 or not tok[1].isdigit():
                raise ParseError(f"bad rank declaration {line!r}", no)
            k = int(tok[1])
        elif kw == "vertex":
            if len(tok) != 2:
                raise ParseError(f"bad vertex declaration {line!r}", no)
            if ("vertex", tok[1]) in lines:
                raise ParseError(f"vertex {tok[1]} declared twice", no)
            vertices.append(tok[1])
            lines[("vertex", tok[1])] = no
        elif kw == "edge":
            if len(tok) != 5:
                raise ParseError(f"bad edge declaration {line!r}", no)
            name = tok[1]
            if name in edges:
                raise ParseError(f"edge {name} declared twice", no)
            attrs = {}
            for t in tok[2:]:
                key, sep, val = t.partition("=")
                if not sep or key not in _EDGE_KEYS or key in attrs:
                    raise ParseError(f"bad edge attribute {t!r}", no)
                attrs[key] = val
            if not attrs["color"].isdigit():
                raise ParseError(f"bad color {attrs['color']!r}", no)
            edges[name] = Edge(name, int(attrs["color"]), attrs["range"], attrs["source"])
            lines[("edge", name)] = no
        elif kw == "square":
            if len(tok) != 6 or tok[3] != "=":
                raise ParseError(f"bad square declaration {line!r}", no)
            lines[("square", len(squares))] = no
            squares.append((tok[1], tok[2], tok[4], tok[5]))
        else:
            raise ParseError(f"unknown declaration {kw!r}", no)
    if not header:
        raise ParseError("empty graph file", 1)
    if k is None:
        raise ParseError("missing rank declaration 'k <int>'", None)
    return Skeleton(k, vertices, edges, squares, lines)


def parse_graph(text):
    return validate_kgraph(parse_skeleton(text))


def load_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def dump_graph(graph):
    skel = graph.skeleton
    out = ["kgraph 1", f"k {skel.k}"]
    out += [f"vertex {v}" for v in skel.vertices]
    for name in sorted(skel.edges):
        e = skel.edges[name]
        out.append(f"edge {e.id} color={e.color} range={e.range} source={e.source}")
    out += [f"square {a} {b} = {c} {d}" for a, b, c, d in sorted(skel.squares)]
    return "\n".join(out) + "\n"


def parse_path(graph, text):
    try:
        return graph.parse_path(text)
    except KGraphError:
        raise
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad path literal {text!r}: {exc}") from None


_BASIC = re.compile(r"^\[\s*([^\s\-\]]+)\s*(?:-\s*([^\]]*))?\]$")


def parse_basic(graph, text):
    """`[lam]` or `[lam - nu1,nu2]`; a bare path literal is accepted as `[lam]`."""
    text = text.strip()
    if not text.startswith("["):
        return BasicSet(parse_path(graph, text))
    m = _BASIC.match(text)
    if not m:
        raise ParseError(f"bad set literal {text!r}")
    lam = parse_path(graph, m.group(1))
    F = ()
    if m.group(2) and m.group(2).strip():
        F = tuple(parse_path(graph, t) for t in m.group(2).split(","))
    return BasicSet(lam, tuple(sorted(set(F))))


def parse_set(graph, text):
    """`{part | part}` or a single basic literal."""
    text = text.strip()
    if text.startswith("{"):
        if not text.endswith("}"):
            raise ParseError(f"bad set literal {text!r}")
        body = text[1:-1].strip()
        if not body:
            return CylinderSet(())
        return CylinderSet(tuple(parse_basic(graph, t) for t in body.split("|")))
    return CylinderSet((parse_basic(graph, text),))
