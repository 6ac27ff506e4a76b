import pytest

from hrgraph.boundary import BasicSet
from hrgraph.errors import NotExhaustive, RangeMismatch
from hrgraph.verify import BoundaryIsometry, FEWitness, Verifier

from conftest import product


def verifier(g, cap, **kw):
    return Verifier(product(g), cap, **kw)


def test_ck_relations_on_grid(grid11):
    V = verifier(grid11, (1, 1))
    for rep in (V.check_CK1(), V.check_CK2(), V.check_CK3()):
        assert rep.ok, rep.render()
    # four vertices: four projection lines
    proj = [r for r in V.check_CK1().results if r.name == "CK1-projection"]
    assert len(proj) == 4


def test_isometry_words(square):
    V = verifier(square, (1, 1))
    e, f = square.path(["e"]), square.path(["f"])
    ef = square.path(["e", "f"])
    Se, Sf, Sef = BoundaryIsometry(e), BoundaryIsometry(f), BoundaryIsometry(ef)
    for _, x in V.vectors:
        assert V.ps.equal(V.word([Se, Sf], x), V.apply(Sef, x))
        assert V.ps.equal(V.word([Sf, Se], x), V.apply(Sef, x))
        assert V.ps.equal(V.word([Se.adjoint(), Se], x), V.apply(BoundaryIsometry(square.vertex("v")), x))
    assert str(Se.adjoint()) == "S[e]*"


def test_ck4_examples(edge, square):
    V = verifier(edge, (1,))
    fe = FEWitness.certify(edge, "u", [edge.path(["e"])])
    assert V.check_CK4(fe).ok
    V2 = verifier(square, (1, 1))
    fe2 = FEWitness.certify(square, "v", [square.path(["e"])])
    rep = V2.check_CK4(fe2)
    assert rep.ok and len(rep) == 2


def test_join_closure_two_edges(square):
    V = verifier(square, (1, 1))
    e, f = square.path(["e"]), square.path(["f"])
    coef = V.join_closure((e, f))
    assert coef == {e: -1, f: -1, square.path(["e", "f"]): 1}


def test_fewitness_refuses(two_loops, edge):
    with pytest.raises(NotExhaustive) as exc:
        FEWitness.certify(two_loops, "v", [two_loops.path(["a"])])
    assert "b" in str(exc.value)
    with pytest.raises(RangeMismatch):
        FEWitness.certify(edge, "v", [edge.path(["e"])])
    V = verifier(two_loops, (1,))
    with pytest.raises(TypeError):
        V.check_CK4(("v", [two_loops.path(["a"])]))


def test_fe_sets_enumeration(two_loops, edge):
    V = verifier(two_loops, (1,))
    sets = {tuple(fe.E) for fe in V.fe_sets("v")}
    a, b, v = (two_loops.path(["a"]), two_loops.path(["b"]), two_loops.vertex("v"))
    assert (a, b) in sets and (a,) not in sets and (v,) in sets
    assert all(str(fe).startswith("v:{") for fe in V.fe_sets("v"))
    # the only vertex path at v in the edge graph is v itself
    assert [fe.E for fe in verifier(edge, (1,)).fe_sets("v")] == [(edge.vertex("v"),)]


def test_tuple_ck4_and_lemmas(square, edge):
    V = verifier(square, (1, 1))
    fe = FEWitness.certify(square, "v", [square.path(["e"])])
    assert V.s_range(fe) == [(1, 0), (1, 1), (2, 0), (2, 1)]
    rep = V.check_CK4_tilde(fe)
    assert rep.ok, rep.render()
    assert V.check_tuple_lemma((1, 1)).ok
    assert V.report_extension_lemma(fe).ok

    V4 = verifier(edge, (1,))
    fe4 = FEWitness.certify(edge, "u", [edge.path(["e"])])
    # generators at v are vacuous for E at u
    assert V4.check_extension_lemma(fe4, (0,), (1,)) is None


def test_nica_and_compact_align(square):
    V = verifier(square, (1, 1))
    assert V.check_nica().ok
    rep = V.check_compact_align((1, 1))
    assert rep.ok and len(rep) > 0


def test_path_vectors_agree(twisted):
    Vs = verifier(twisted, (1, 1))
    Vp = verifier(twisted, (1, 1), vectors="paths")
    assert len(Vp.vectors) < len(Vs.vectors)
    assert all(isinstance(A, BasicSet) and not A.F for A, _ in Vp.vectors)
    assert Vs.check_CK2().ok and Vp.check_CK2().ok


def test_suite_lines_are_stable(square):
    a = verifier(square, (1, 1)).ck_suite().render()
    b = verifier(square, (1, 1)).ck_suite().render()
    assert a == b and "FAIL" not in a
