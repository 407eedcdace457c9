"""Linearization of finite diagonalizable subgroups over a fixed field."""

import pytest

from planeaut.errors import NotFiniteOrder, UnsupportedGroup
from planeaut.fields import FieldDescriptor, mpq
from planeaut.groups import automorphism_order, linearize_over_field
from planeaut.plane import AffineMap, BiPoly, ElementaryMap, PlaneEndo

QQ = FieldDescriptor.rationals()
C3 = FieldDescriptor.cyclotomic(3)


def _conjugated_involution():
    # sigma = diag(1,-1) conjugated by the shear (z1 + z2^2, z2)
    sigma = AffineMap.diagonal(QQ, mpq(1), mpq(-1)).to_endo()
    phi = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 2): mpq(1)}),
                    BiPoly(QQ, {(0, 1): mpq(1)}))
    phi_inv = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 2): mpq(-1)}),
                        BiPoly(QQ, {(0, 1): mpq(1)}))
    return phi.compose(sigma).compose(phi_inv)


def test_orders_of_linear_maps():
    assert automorphism_order(AffineMap.diagonal(QQ, mpq(-1),
                                                 mpq(1)).to_endo()) == 2
    assert automorphism_order(AffineMap.swap(QQ).to_endo()) == 2
    rot = AffineMap(QQ, ((mpq(0), mpq(-1)), (mpq(1), mpq(0))),
                    (mpq(0), mpq(0)))
    assert automorphism_order(rot.to_endo()) == 4
    R = C3.ring()
    z = R.zeta
    d3 = AffineMap.diagonal(C3, z, R.mul(z, z))
    assert automorphism_order(d3.to_endo()) == 3


def test_order_of_conjugated_involution():
    assert automorphism_order(_conjugated_involution()) == 2


def test_infinite_order_is_refused():
    shear = ElementaryMap.shear(QQ, (mpq(0), mpq(0), mpq(1))).to_endo()
    with pytest.raises(NotFiniteOrder):
        automorphism_order(shear, cap=64)


def test_linearize_conjugated_involution():
    g = _conjugated_involution()
    lin = linearize_over_field([g])
    conj = lin.conjugator
    assert conj.fwd.compose(conj.inv).is_identity()
    assert lin.diagonal
    rho = lin.rho[0].to_endo()
    assert conj.fwd.compose(g).compose(conj.inv) == rho


def test_linearize_keeps_linear_input_fixed():
    d = AffineMap.diagonal(QQ, mpq(-1), mpq(1)).to_endo()
    lin = linearize_over_field([d])
    assert lin.conjugator.fwd.is_identity()
    assert lin.rho[0].to_endo() == d


def test_linearize_klein_four_jointly():
    a = AffineMap.diagonal(QQ, mpq(-1), mpq(1)).to_endo()
    b = AffineMap.diagonal(QQ, mpq(1), mpq(-1)).to_endo()
    lin = linearize_over_field([a, b])
    assert len(lin.rho) == 2
    assert lin.diagonal
    for g, rho in zip((a, b), lin.rho):
        assert lin.conjugator.fwd.compose(g).compose(
            lin.conjugator.inv) == rho.to_endo()


def test_linearize_rejects_unipotent_part():
    # order-2 linear part with a nontrivial Jordan block never linearizes
    # to diagonal form; the group machinery must refuse, not loop
    bad = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(-1), (0, 1): mpq(1)}),
                    BiPoly(QQ, {(0, 1): mpq(-1)}))
    with pytest.raises((UnsupportedGroup, NotFiniteOrder)):
        linearize_over_field([bad])