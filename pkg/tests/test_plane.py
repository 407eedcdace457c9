"""Sparse two-variable polynomials and the three letter types: general
endomorphisms, affine maps, and triangular (elementary) maps."""

import pytest
from hypothesis import given, strategies as st

from planeaut.errors import NotAnAutomorphism, SchemaError
from planeaut.fields import FieldDescriptor, mpq
from planeaut.plane import (AffineMap, BiPoly, ElementaryMap, PlaneEndo,
                            extract_affine, extract_elementary)

QQ = FieldDescriptor.rationals()


@st.composite
def bipolys(draw, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        i = draw(st.integers(0, max_exp))
        j = draw(st.integers(0, max_exp))
        terms[(i, j)] = mpq(draw(st.integers(-9, 9)))
    return BiPoly(QQ, terms)


@given(bipolys(), bipolys(), bipolys())
def test_bipoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == BiPoly.zero(QQ)


@given(bipolys(), bipolys())
def test_degree_of_product_adds(a, b):
    if not (a.is_zero() or b.is_zero()):
        da = max(i + j for i, j in a.terms)
        db = max(i + j for i, j in b.terms)
        assert max(i + j for i, j in (a * b).terms) == da + db


@given(bipolys())
def test_bipoly_json_round_trip(p):
    assert BiPoly.from_json(QQ, p.to_json()) == p


def test_bipoly_json_accepts_flat_triples():
    pair = BiPoly.from_json(QQ, [[[1, 2], "3"], [[0, 0], "-1/2"]])
    flat = BiPoly.from_json(QQ, [[1, 2, "3"], [0, 0, "-1/2"]])
    assert pair == flat
    with pytest.raises(SchemaError):
        BiPoly.from_json(QQ, [[[1], "3"]])
    with pytest.raises(SchemaError):
        BiPoly.from_json(QQ, [[[1, -2], "3"]])


def test_bipoly_eval_and_derivatives():
    # p = z1^2 z2 + 3 z2
    p = BiPoly(QQ, {(2, 1): mpq(1), (0, 1): mpq(3)})
    assert p.eval(mpq(2), mpq(5)) == mpq(35)
    assert p.d_z1() == BiPoly(QQ, {(1, 1): mpq(2)})
    assert p.d_z2() == BiPoly(QQ, {(2, 0): mpq(1), (0, 0): mpq(3)})


def test_endo_compose_matches_substitution():
    f = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 2): mpq(1)}),
                  BiPoly(QQ, {(0, 1): mpq(1)}))
    g = PlaneEndo(QQ, BiPoly(QQ, {(0, 1): mpq(1)}),
                  BiPoly(QQ, {(1, 0): mpq(1)}))
    h = f.compose(g)
    for x, y in ((mpq(0), mpq(1)), (mpq(2), mpq(-3)), (mpq(1, 2), mpq(5))):
        gx, gy = g.eval(x, y)
        assert h.eval(x, y) == f.eval(gx, gy)


def test_shear_jacobian_is_constant_one():
    f = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 2): mpq(1)}),
                  BiPoly(QQ, {(0, 1): mpq(1)}))
    assert f.jacobian_det() == BiPoly.const(QQ, 1)


invertible = st.tuples(st.integers(-5, 5), st.integers(-5, 5),
                       st.integers(-5, 5), st.integers(-5, 5),
                       st.integers(-5, 5), st.integers(-5, 5)).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0)


def _affine(t):
    a, b, c, d, e, f = t
    return AffineMap(QQ, ((mpq(a), mpq(b)), (mpq(c), mpq(d))),
                     (mpq(e), mpq(f)))


@given(invertible)
def test_affine_inverse(t):
    m = _affine(t)
    assert m.compose(m.inverse()).is_identity()
    assert m.inverse().compose(m).is_identity()


@given(invertible, invertible)
def test_affine_det_multiplicative(s, t):
    a, b = _affine(s), _affine(t)
    assert a.compose(b).det() == a.det() * b.det()


@given(invertible, invertible)
def test_affine_compose_matches_endo_compose(s, t):
    a, b = _affine(s), _affine(t)
    assert a.compose(b).to_endo() == a.to_endo().compose(b.to_endo())


def test_affine_rejects_singular_matrix():
    with pytest.raises(NotAnAutomorphism):
        AffineMap(QQ, ((mpq(1), mpq(2)), (mpq(2), mpq(4))),
                  (mpq(0), mpq(0)))


def test_affine_constructors():
    assert AffineMap.identity(QQ).is_identity()
    sw = AffineMap.swap(QQ)
    assert sw.apply(mpq(1), mpq(2)) == (mpq(2), mpq(1))
    d = AffineMap.diagonal(QQ, mpq(2), mpq(3))
    assert d.apply(mpq(1), mpq(1)) == (mpq(2), mpq(3))
    tr = AffineMap.translation(QQ, mpq(1), mpq(-1))
    assert tr.apply(mpq(0), mpq(0)) == (mpq(1), mpq(-1))


def test_elementary_inverse_and_degree():
    e = ElementaryMap(QQ, mpq(2), (mpq(1), mpq(0), mpq(3)), mpq(1), mpq(-1))
    assert e.syl_degree() == 2
    assert e.compose(e.inverse()).is_identity()
    assert e.inverse().compose(e).is_identity()
    endo = e.to_endo()
    x, y = endo.eval(mpq(1), mpq(2))
    # z1 -> 2 z1 + p(z2), z2 -> z2 - 1 with p = 1 + 3 z2^2
    assert (x, y) == (mpq(2) + mpq(1) + mpq(12), mpq(1))


def test_elementary_in_S_detects_affine_letters():
    linear = ElementaryMap(QQ, mpq(1), (mpq(0), mpq(2)), mpq(1), mpq(0))
    assert linear.in_S()
    quad = ElementaryMap(QQ, mpq(1), (mpq(0), mpq(0), mpq(1)), mpq(1), mpq(0))
    assert not quad.in_S()
    assert linear.to_affine().in_S()


def test_extract_round_trips():
    aff = _affine((1, 2, 3, 5, 0, -1))
    assert extract_affine(aff.to_endo()) == aff
    e = ElementaryMap(QQ, mpq(1), (mpq(0), mpq(0), mpq(4)), mpq(3), mpq(0))
    assert extract_elementary(e.to_endo()).to_endo() == e.to_endo()


def test_endo_json_round_trip():
    f = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 3): mpq(-2)}),
                  BiPoly(QQ, {(0, 1): mpq(1), (0, 0): mpq(1, 2)}))
    assert PlaneEndo.from_json(f.to_json()) == f
    with pytest.raises(SchemaError):
        PlaneEndo.from_json({"components": [[[[1, 0], "1"]]]}, QQ)
