"""Pole removal over one discrete valuation: weights, normalization,
the single descent round, and the full removal loop."""

import pytest

from planeaut.decompose import invert
from planeaut.dvr import (coordinate_mate, endo_valuation, is_integral,
                          kr_step, lift_affine, normalize_valuation,
                          perturbation_bound, remove_pole, w_invariant)
from planeaut.errors import (NotACoordinate, NotDegenerate, NotIntegralInput,
                             NotInvariantLine, NotNormalized)
from planeaut.fields import DVRContext, FieldDescriptor, mpq
from planeaut.plane import AffineMap, BiPoly, ElementaryMap, PlaneEndo

QQ = FieldDescriptor.rationals()
C3 = FieldDescriptor.cyclotomic(3)
FX = FieldDescriptor.rational_functions(QQ)
F3X = FieldDescriptor.rational_functions(C3)


def _ctx0():
    return DVRContext(FX, mpq(0))


def _pole_psi():
    # psi = (z1 + z2^2/x, z2), the smallest linearizer with a pole at 0
    R = FX.ring()
    fwd = PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 2): R.inv(R.gen)}),
                    BiPoly(FX, {(0, 1): R.one}))
    return invert(fwd)


def test_endo_valuation_and_integrality():
    ctx = _ctx0()
    psi = _pole_psi()
    assert endo_valuation(psi.fwd, ctx) == -1
    assert not is_integral(psi.fwd, ctx)
    assert is_integral(PlaneEndo.identity(FX), ctx)


def test_w_invariant_counts_inverse_poles():
    ctx = _ctx0()
    R = FX.ring()
    g = invert(PlaneEndo(FX, BiPoly(FX, {(1, 0): R.gen}),
                         BiPoly(FX, {(0, 1): R.one})))
    rep = w_invariant(g, ctx)
    assert (rep.v, rep.w1, rep.w2) == (0, 1, 0)
    ident = invert(PlaneEndo.identity(FX))
    rep0 = w_invariant(ident, ctx)
    assert rep0.w1 == rep0.w2 == 0


def test_w_invariant_requires_integral_forward_map():
    with pytest.raises(NotIntegralInput):
        w_invariant(_pole_psi(), _ctx0())


def test_normalize_valuation_reaches_zero():
    ctx = _ctx0()
    psi = _pole_psi()
    alpha, norm = normalize_valuation(psi, ctx)
    assert endo_valuation(norm.fwd, ctx) == 0
    assert norm.fwd.compose(norm.inv).is_identity()
    # the right factor is the conjugate of a scalar; it commutes with
    # every linear map psi conjugates
    rho = lift_affine(AffineMap.diagonal(QQ, mpq(1), mpq(-1)), FX).to_endo()
    nu = psi.inv.compose(rho).compose(psi.fwd)
    assert alpha.fwd.compose(nu) == nu.compose(alpha.fwd)


def test_kr_step_guards():
    ctx = _ctx0()
    with pytest.raises(NotNormalized):
        kr_step(_pole_psi(), ctx)
    with pytest.raises(NotDegenerate):
        kr_step(invert(PlaneEndo.identity(FX)), ctx)


def test_remove_pole_worked_example():
    ctx = _ctx0()
    psi = _pole_psi()
    rho = AffineMap.diagonal(QQ, mpq(1), mpq(-1))
    removal = remove_pole(psi, ctx, rhos=(rho,))
    assert removal.initial_weight == 4
    assert [s.w_before for s in removal.steps] == [4, 1]
    out = removal.result
    assert is_integral(out.fwd, ctx) and is_integral(out.inv, ctx)
    # the cleaned map still conjugates the family member to rho
    rho_l = lift_affine(rho, FX).to_endo()
    nu = psi.inv.compose(rho_l).compose(psi.fwd)
    assert out.fwd.compose(nu).compose(out.inv) == rho_l
    # and psi . alpha equals the cleaned map
    assert psi.fwd.compose(removal.alpha.fwd) == out.fwd


def test_remove_pole_is_idempotent_on_integral_input():
    ctx = _ctx0()
    psi = _pole_psi()
    rho = AffineMap.diagonal(QQ, mpq(1), mpq(-1))
    out = remove_pole(psi, ctx, rhos=(rho,)).result
    again = remove_pole(out, ctx, rhos=(rho,))
    assert again.steps == ()
    assert again.result.fwd == out.fwd


def test_remove_pole_refuses_non_invariant_curve():
    # cubic pole term against a rotation of order three: the exceptional
    # curve is not stable, and the honest answer is a refusal
    R3 = F3X.ring()
    zr = C3.ring()
    ctx3 = DVRContext(F3X, zr.from_int(0))
    psi0 = invert(PlaneEndo(
        F3X, BiPoly(F3X, {(1, 0): R3.one, (0, 3): R3.inv(R3.gen)}),
        BiPoly(F3X, {(0, 1): R3.one})))
    rho3 = AffineMap.diagonal(C3, zr.zeta, zr.mul(zr.zeta, zr.zeta))
    with pytest.raises(NotInvariantLine):
        remove_pole(psi0, ctx3, rhos=(rho3,))


def test_coordinate_mate():
    R = FX.ring()
    f = BiPoly(FX, {(1, 0): R.one, (0, 2): R.one})
    mate, aut = coordinate_mate(f)
    assert aut.fwd.jacobian_det() == BiPoly.const(FX, aut.fwd.jacobian_det()
                                                  .constant_value())
    assert aut.fwd.p1 == f and aut.fwd.p2 == mate
    with pytest.raises(NotACoordinate):
        coordinate_mate(BiPoly(FX, {(1, 1): R.one}))


def test_perturbation_bound_zero_for_integral_letters():
    ctx = _ctx0()
    R = FX.ring()
    shear = ElementaryMap.shear(FX, (R.zero, R.zero, R.gen)).to_endo()
    sw = AffineMap.swap(FX).to_endo()
    assert perturbation_bound([shear, sw, shear], ctx) == 0


def test_perturbation_bound_grows_with_poles():
    ctx = _ctx0()
    R = FX.ring()
    x = R.gen
    w = AffineMap.diagonal(FX, R.inv(x), x).to_endo()
    w_inv = AffineMap.diagonal(FX, x, R.inv(x)).to_endo()
    shear = ElementaryMap.shear(FX, (R.zero, R.zero, R.one)).to_endo()
    # the poles cancel across the word, but each letter carries one
    r = perturbation_bound([shear.compose(w), w_inv], ctx)
    assert r > 0


def test_lift_affine_round_trip():
    aff = AffineMap(QQ, ((mpq(1), mpq(2)), (mpq(0), mpq(3))),
                    (mpq(-1), mpq(0)))
    lifted = lift_affine(aff, FX)
    assert lifted.field == FX
    x0, y0 = aff.apply(mpq(1), mpq(1))
    R = FX.ring()
    xl, yl = lifted.apply(R.from_base(mpq(1)), R.from_base(mpq(1)))
    assert R.constant_value(xl) == x0 and R.constant_value(yl) == y0
