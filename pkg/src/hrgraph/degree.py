"""Degree vectors in N^k, kept as plain tuples of ints."""

from itertools import product

from .errors import RankMismatch


def zero(k):
    return (0,) * k


def basis(k, i):
    """The standard basis vector e_i (colors are 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(k))


def _same_rank(m, n):
    if len(m) != len(n):
        raise RankMismatch(f"degree {fmt(m)} and {fmt(n)} have different rank")


def leq(m, n):
    if len(m) != len(n):
        _same_rank(m, n)
    return all(map(int.__le__, m, n))


def join(m, n):
    _same_rank(m, n)
    return tuple(max(a, b) for a, b in zip(m, n))


def meet(m, n):
    _same_rank(m, n)
    return tuple(min(a, b) for a, b in zip(m, n))


def add(m, n):
    if len(m) != len(n):
        _same_rank(m, n)
    return tuple(map(int.__add__, m, n))


def sub(m, n):
    _same_rank(m, n)
    out = tuple(a - b for a, b in zip(m, n))
    if any(c < 0 for c in out):
        raise ValueError(f"{fmt(n)} is not below {fmt(m)}")
    return out


def join_all(degrees, k):
    out = zero(k)
    for d in degrees:
        out = join(out, d)
    return out


def below(cap):
    """All degrees n with 0 <= n <= cap, in lexicographic order."""
    return [tuple(n) for n in product(*(range(c + 1) for c in cap))]


def between(lo, hi):
    return [tuple(n) for n in product(*(range(a, b + 1) for a, b in zip(lo, hi)))]


def fmt(n):
    return ",".join(str(c) for c in n)


def parse(text, k=None):
    try:
        n = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise ValueError(f"bad degree literal {text!r}") from None
    if any(c < 0 for c in n):
        raise ValueError(f"negative degree literal {text!r}")
    if k is not None and len(n) != k:
        raise RankMismatch(f"degree {text!r} has rank {len(n)}, graph has rank {k}")
    return n
