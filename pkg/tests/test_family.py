"""End-to-end family linearization over the parameter line: pole
discovery, per-center removal, the torus route, and the report audit."""

import pytest

from planeaut.decompose import invert
from planeaut.errors import FamilyValidationError, SchemaError
from planeaut.family import (FamilyLinearization, TorusFamily,
                             linearize_family, linearize_family_generic,
                             pole_set, verify_family)
from planeaut.fields import FieldDescriptor, mpq
from planeaut.plane import AffineMap, BiPoly, PlaneAut, PlaneEndo

QQ = FieldDescriptor.rationals()
FX = FieldDescriptor.rational_functions(QQ)
R = FX.ring()


def _b_poly():
    # b(x) = x(x - 1): simple zeros at the two engineered centers
    return R.make((mpq(0), mpq(-1), mpq(1)), (mpq(1),))


def _z2_generator(b):
    # g = (z1 + b z2, -z2), an order-two family with poles wherever b
    # vanishes once the eigen route divides by it
    return PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 1): b}),
                     BiPoly(FX, {(0, 1): R.neg(R.one)}))


def test_pole_set_of_integral_map_is_empty():
    ident = invert(PlaneEndo.identity(FX))
    assert pole_set(ident) == ((), ())


def test_pole_set_finds_rational_centers():
    f = PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 2): R.inv(_b_poly())}),
                  BiPoly(FX, {(0, 1): R.one}))
    centers, leftover = pole_set(invert(f))
    assert sorted(centers) == [mpq(0), mpq(1)]
    assert leftover == ()


def test_pole_set_reports_irrational_factors():
    den = R.make((mpq(1), mpq(0), mpq(1)), (mpq(1),))  # x^2 + 1
    f = PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 2): R.inv(den)}),
                  BiPoly(FX, {(0, 1): R.one}))
    centers, leftover = pole_set(invert(f))
    assert centers == ()
    assert len(leftover) == 1 and "x**2 + 1" in leftover[0]


def test_generic_linearization_has_poles():
    g = _z2_generator(_b_poly())
    psi, rho = linearize_family_generic([g])
    assert psi.fwd.compose(g).compose(psi.inv) \
        == rho[0].to_endo().map_coeffs(R.from_base, FX)
    centers, _ = pole_set(psi)
    assert sorted(centers) == [mpq(0), mpq(1)]


def test_cyclic_family_pipeline():
    g = _z2_generator(_b_poly())
    report = linearize_family([g])
    assert report.verified
    assert sorted(report.centers) == [mpq(0), mpq(1)]
    assert verify_family([g], report)


def test_tampered_report_fails_verification():
    g = _z2_generator(_b_poly())
    report = linearize_family([g])
    wrong = AffineMap.diagonal(QQ, mpq(-1), mpq(-1))
    tampered = FamilyLinearization((wrong,), report.conjugator,
                                   report.sites, verified=True)
    assert not verify_family([g], tampered)
    # a conjugator that keeps its pole must also fail
    psi, rho = linearize_family_generic([g])
    poleful = FamilyLinearization(rho, psi, ())
    assert not verify_family([g], poleful)


def test_constant_family_needs_no_correction():
    g = AffineMap.diagonal(FX, R.neg(R.one), R.one).to_endo()
    report = linearize_family([g])
    assert report.verified
    assert report.centers == ()


def test_torus_family_members_are_polynomial():
    # conjugator with a pole at 0: C = (z1 + z2^2/x, z2)
    C_fwd = PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 2): R.inv(R.gen)}),
                      BiPoly(FX, {(0, 1): R.one}))
    fam = TorusFamily((2, 1), invert(C_fwd))
    member = fam.member(mpq(3))
    # weights (2,1) make s^2 z2^2 match s^2 z1, so the pole cancels
    assert pole_set(invert(member))[0] == ()
    report = linearize_family(fam)
    assert report.verified
    assert report.weights == (2, 1)
    assert verify_family(fam, report)


def test_family_rejects_constant_coefficients():
    g = AffineMap.diagonal(QQ, mpq(-1), mpq(1)).to_endo()
    with pytest.raises(SchemaError):
        linearize_family([g])


def test_family_rejects_empty_generator_list():
    with pytest.raises(FamilyValidationError):
        linearize_family([])
