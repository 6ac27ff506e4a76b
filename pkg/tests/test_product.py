import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hrgraph.boundary import BasicSet, BoundaryAlgebra
from hrgraph.errors import DegreeOrder, NotInSlice, SliceMismatch
from hrgraph.library import grid_path, twisted_graph
from hrgraph.oracle import PrefixUniverse
from hrgraph.product import CompactOp, ProductSystem, TupleElement

from conftest import product


def B(g, word, F=()):
    lam = g.vertex(word) if isinstance(word, str) and word in g.vertices else g.path(list(word))
    return BasicSet(lam, tuple(g.path(list(w)) for w in F))


def test_right_action_examples(square):
    ps = product(square)
    e = B(square, "e")
    f = ps.chi(e, (1, 0))
    assert ps.equal(ps.right_action(f, ps.chi(BasicSet(square.vertex("v")), (0, 0))), f)
    a = ps.chi(BasicSet(square.vertex("v"), (square.path(["f"]),)), (0, 0))
    assert ps.is_zero(ps.right_action(f, a))


def test_left_action_examples(square, edge):
    ps = product(square)
    f = ps.chi(B(square, "e"), (1, 0))
    a = ps.chi(BasicSet(square.vertex("v"), (square.path(["e"]),)), (0, 0))
    assert ps.is_zero(ps.left_action(a, f))
    ps2 = product(edge)
    g = ps2.chi(B(edge, "e"), (1,))
    assert ps2.is_zero(ps2.left_action(ps2.chi(BasicSet(edge.vertex("v")), (0,)), g))
    with pytest.raises(SliceMismatch):
        ps2.left_action(g, g)


def test_inner_product_two_preimages(two_loops):
    ps = product(two_loops)
    f = ps.chi(B(two_loops, "a"), (1,)) + ps.chi(B(two_loops, "b"), (1,))
    want = ps.chi(BasicSet(two_loops.vertex("v")), (0,), 2)
    assert ps.equal(ps.inner_product(f, f), want)


def test_multiply_factorization(square):
    ps = product(square)
    h = ps.chi(B(square, "ef"), (1, 1))
    got = ps.multiply(ps.chi(B(square, "e"), (1, 0)), ps.chi(B(square, "f"), (0, 1)))
    assert ps.equal(got, h)


def test_chi_rejects_low_degree(square):
    ps = product(square)
    with pytest.raises(NotInSlice):
        ps.chi(B(square, "e"), (1, 1))


def test_spanning_families(grid11, two_loops, square, edge):
    ps = product(grid11)
    assert {A for A in ps.spanning_X((1, 1), (1, 1))} == {BasicSet(grid_path(grid11, (0, 0), (1, 1)))}
    verts = ps.spanning_X((0, 0), (0, 0))
    assert sorted(A.lam.range for A in verts) == sorted(grid11.vertices)
    ps2 = product(two_loops)
    assert ps2.spanning_X((1,), (1,)) == [B(two_loops, "a"), B(two_loops, "b")]
    assert product(square).spanning_I((1, 0), (1, 1)) == []
    ps4 = product(edge)
    assert ps4.spanning_I((1,), (1,)) == [BasicSet(edge.vertex("v"))]
    assert ps4.spanning_I((0,), (1,)) == ps4.spanning_X((0,), (1,))
    assert ps4.spanning_XI((0,), (1,), (1,)) == [BasicSet(edge.vertex("v"))]
    assert ps4.spanning_XI((1,), (1,), (1,)) == [B(edge, "e")]
    with pytest.raises(DegreeOrder):
        ps4.spanning_XI((1,), (0,), (1,))


def test_apply_compact_examples(two_loops, twisted):
    ps = product(two_loops)
    a, b = B(two_loops, "a"), B(two_loops, "b")
    T = CompactOp.theta(a, b, (1,))
    assert ps.equal(ps.apply_compact(T, ps.chi(b, (1,))), ps.chi(a, (1,)))
    P = CompactOp.theta(a, a, (1,))
    assert ps.equal(ps.apply_compact(P, ps.chi(a, (1,))), ps.chi(a, (1,)))
    assert ps.is_zero(ps.apply_compact(P, ps.chi(b, (1,))))


def test_iota_examples(square, twisted):
    ps = product(square)
    S = CompactOp.theta(B(square, "e"), B(square, "e"), (1, 0))
    f = ps.chi(B(square, "ef"), (1, 1))
    assert ps.equal(ps.iota(S, (1, 1), f), f)
    # p not below q
    T = CompactOp.theta(B(square, "f"), B(square, "f"), (0, 1))
    g = ps.chi(B(square, "e"), (1, 0))
    assert ps.is_zero(ps.iota(T, (1, 0), g))

    ps3 = product(twisted)
    a = B(twisted, "a")
    Sa = CompactOp.theta(a, a, (1, 0))
    for A in ps3.spanning_X((1, 1), (1, 1), max_F=1):
        h = ps3.chi(A, (1, 1))
        out = ps3.iota(Sa, (1, 1), h)
        if twisted.extends(A.lam, a.lam):
            assert ps3.equal(out, h)
        else:
            assert ps3.is_zero(out)


def test_compact_align_examples(square, twisted):
    ps = product(square)
    e, f, ef = B(square, "e"), B(square, "f"), B(square, "ef")
    R = ps.compact_align(CompactOp.theta(e, e, (1, 0)), CompactOp.theta(f, f, (0, 1)))
    assert R.slice == (1, 1)
    assert [(c, k, b) for c, k, b in R.terms] == [(1, ef, ef)]
    Re = ps.compact_align(CompactOp.theta(e, e, (1, 0)), CompactOp.theta(e, e, (1, 0)))
    assert [(k, b) for _, k, b in Re.terms] == [(e, e)]

    ps3 = product(twisted)
    a, f3 = B(twisted, "a"), B(twisted, "f")
    R3 = ps3.compact_align(CompactOp.theta(a, a, (1, 0)), CompactOp.theta(f3, f3, (0, 1)))
    want = {twisted.compose(a.lam, x) for x, _ in twisted.lambda_min(a.lam, f3.lam)}
    assert {k.lam for _, k, _ in R3.terms} == want


def test_tuple_element_build(square):
    ps = product(square)
    f = ps.chi(B(square, "e"), (1, 0))
    x = TupleElement.build((1, 1), [((1, 0), f)])
    assert x.component((1, 0)) == f
    assert not x.component((0, 0)).terms
    with pytest.raises(SliceMismatch):
        TupleElement.build((0, 1), [((1, 0), f)])


def test_iota_tilde_componentwise(square):
    ps = product(square)
    S = CompactOp.theta(B(square, "e"), B(square, "e"), (1, 0))
    f0 = ps.chi(BasicSet(square.vertex("v")), (0, 0))
    f1 = ps.chi(B(square, "e"), (1, 0))
    x = TupleElement.build((1, 0), [((0, 0), f0), ((1, 0), f1)])
    y = ps.iota_tilde(S, (1, 0), x)
    assert ps.is_zero(y.component((0, 0)))
    assert ps.equal(y.component((1, 0)), f1)


# -- module axioms against the prefix oracle --------------------------------

G3 = twisted_graph()
PS = ProductSystem(BoundaryAlgebra(G3))
U = PrefixUniverse(G3, (2, 2))
SLICES = [(0, 0), (1, 0), (0, 1)]
VEC = {n: PS.spanning_X(n, (1, 1), max_F=1) for n in SLICES}


@st.composite
def functions(draw, n):
    parts = draw(st.lists(st.sampled_from(VEC[n]), min_size=1, max_size=2))
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(parts), max_size=len(parts)))
    out = PS.zero(n)
    for A, c in zip(parts, coeffs):
        out = out + PS.chi(A, n, c)
    return out


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_bimodule_axioms(data):
    n = data.draw(st.sampled_from(SLICES))
    f, h = data.draw(functions(n)), data.draw(functions(n))
    a, b = data.draw(functions((0, 0))), data.draw(functions((0, 0)))
    ra = PS.right_action
    assert PS.equal(ra(ra(f, a), b), ra(f, PS.multiply(a, b)))
    assert PS.equal(PS.left_action(a, ra(f, b)), ra(PS.left_action(a, f), b))
    ip = PS.inner_product
    assert PS.equal(ip(f, ra(h, a)), PS.multiply(ip(f, h), a))
    assert PS.equal(ip(PS.left_action(a, f), h), ip(f, PS.left_action(a, h)))
    assert U.function_equal(ip(f, h), ip(h, f))[0]
    assert all(v >= 0 for v in U.values(ip(f, f)).values())


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiply_associative(data):
    m, n, p = (data.draw(st.sampled_from(SLICES)) for _ in range(3))
    f, g, h = data.draw(functions(m)), data.draw(functions(n)), data.draw(functions(p))
    mul = PS.multiply
    lhs, rhs = mul(mul(f, g), h), mul(f, mul(g, h))
    assert lhs.slice == rhs.slice
    assert PS.equal(lhs, rhs)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiply_matches_oracle(data):
    m = data.draw(st.sampled_from(SLICES))
    f, h = data.draw(functions(m)), data.draw(functions((0, 0)))
    prod = PS.multiply(f, h)
    for p in U.prefixes:
        assert U.evaluate(prod, p) == U.multiply_at(f, m, h, p)
