import sys
sys.path.insert(0, "src")

from planeaut.fields import FieldDescriptor, DVRContext, mpq
from planeaut.plane import AffineMap, BiPoly, PlaneAut, PlaneEndo
from planeaut.decompose import invert
from planeaut.dvr import (EndoValuationReport, endo_valuation, kr_step,
                          lift_affine, normalize_valuation, perturbation_bound,
                          remove_pole, w_invariant, image_curve_mod_t)
from planeaut.errors import (NotDegenerate, NotIntegralInput, NotNormalized,
                             ResidualNonRationalPoles)
from planeaut.family import (linearize_family, linearize_family_generic,
                             pole_set, remove_all_poles, verify_family)

QQ = FieldDescriptor.rationals()
FX = FieldDescriptor.rational_functions(QQ)
R = FX.ring()
x = R.gen
xinv = R.inv(x)


def P(field, d):
    return BiPoly(field, d)


def E(field, p1, p2):
    return PlaneEndo(field, P(field, p1), P(field, p2))


one = R.one

# --- w_invariant basics ---
diag_x = E(FX, {(1, 0): x}, {(0, 1): one})
rep = w_invariant(diag_x, DVRContext(FX, mpq(0)))
assert (rep.v, rep.w1, rep.w2, rep.w) == (0, 1, 0, 1), rep
assert not rep.integral

psi_pole = E(FX, {(1, 0): one, (0, 2): xinv}, {(0, 1): one})
try:
    w_invariant(psi_pole, DVRContext(FX, mpq(0)))
    raise SystemExit("expected NotIntegralInput")
except NotIntegralInput:
    pass

ctx0 = DVRContext(FX, mpq(0))
alpha, norm = normalize_valuation(psi_pole, ctx0)
assert endo_valuation(norm.fwd, ctx0) == 0
# normalized = (x z1 + z2^2, x z2), w = 3 + 1
rep = w_invariant(norm, ctx0)
assert (rep.w1, rep.w2) == (3, 1), rep
# alpha identity on already-normalized input
a2, n2 = normalize_valuation(norm, ctx0)
assert a2.fwd.is_identity()

# kr_step guards
try:
    kr_step(psi_pole, ctx0)
    raise SystemExit("expected NotNormalized")
except NotNormalized:
    pass
ident = E(FX, {(1, 0): one}, {(0, 1): one})
try:
    kr_step(ident, ctx0)
    raise SystemExit("expected NotDegenerate")
except NotDegenerate:
    pass
try:
    image_curve_mod_t(psi_pole, ctx0)
    raise SystemExit("expected NotNormalized")
except NotNormalized:
    pass

# --- worked removal, Z2 target diag(1,-1) ---
rho = AffineMap.diagonal(QQ, mpq(1), mpq(-1))
removal = remove_pole(psi_pole, ctx0, rhos=(rho,))
print("trace w:", [s.w_before for s in removal.steps],
      "initial", removal.initial_weight)
ws = [s.w_before for s in removal.steps]
assert ws == sorted(ws, reverse=True) and len(set(ws)) == len(ws)
assert len(removal.steps) <= removal.initial_weight
final = removal.result
assert endo_valuation(final.fwd, ctx0) >= 0
assert endo_valuation(final.inv, ctx0) >= 0
assert w_invariant(final, ctx0).integral
# psi tilde still linearizes: final . nu . final^{-1} == rho
rho_l = lift_affine(rho, FX).to_endo()
psi_aut = invert(psi_pole)
nu = psi_aut.inv.compose(rho_l).compose(psi_aut.fwd)
assert final.fwd.compose(nu).compose(final.inv) == rho_l
# alpha = psi^{-1} . final commutes with nu
al = removal.alpha
assert al.fwd.compose(al.inv).is_identity()
assert al.fwd.compose(nu) == nu.compose(al.fwd)
print("worked removal ok; rounds:", len(removal.steps))

# --- already integral: empty trace, alpha identity ---
removal2 = remove_pole(ident, ctx0)
assert removal2.steps == () and removal2.alpha.fwd.is_identity()

# --- pole_set ---
den01 = R.make((mpq(1),), (mpq(0), mpq(1)))  # 1/x
den1 = R.make((mpq(1),), (mpq(-1), mpq(1)))  # 1/(x-1)
f = E(FX, {(1, 0): one, (0, 2): R.mul(den01, den1)}, {(0, 1): one})
centers, leftover = pole_set(f)
assert centers == [mpq(0), mpq(1)] and leftover == (), (centers, leftover)
quad = R.make((mpq(1),), (mpq(1), mpq(0), mpq(1)))  # 1/(x^2+1)
g = E(FX, {(1, 0): one, (0, 2): quad}, {(0, 1): one})
centers, leftover = pole_set(g)
assert centers == [] and leftover, (centers, leftover)
print("pole_set ok:", leftover)
try:
    remove_all_poles(g)
    raise SystemExit("expected ResidualNonRationalPoles")
except ResidualNonRationalPoles as ex:
    print("residual:", ex)

# --- Z2 affine family with engineered poles at 0, 1 ---
b = R.mul(x, R.sub(x, one))  # x(x-1)
gz2 = PlaneEndo(FX, P(FX, {(1, 0): one, (0, 1): b}),
                P(FX, {(0, 1): R.neg(one)}))
rep8 = linearize_family([gz2])
assert rep8.verified
assert verify_family([gz2], rep8)
print("Z2 family centers:", [str(c) for c in rep8.centers],
      "rounds:", [len(s.removal.steps) for s in rep8.sites])
print("rho:", rep8.rho[0].m)

# --- Z3 affine family over Q(zeta3)(x) ---
C3 = FieldDescriptor.cyclotomic(3)
F3 = FieldDescriptor.rational_functions(C3)
R3 = F3.ring()
z = R3.from_base(C3.ring().zeta)
z2 = R3.mul(z, z)
x3 = R3.gen
b3 = R3.mul(x3, R3.sub(x3, R3.one))
g3 = PlaneEndo(F3, P(F3, {(1, 0): z, (0, 1): b3}), P(F3, {(0, 1): z2}))
# order 3 check
g3c = g3.compose(g3).compose(g3)
assert g3c.is_identity()
rep3 = linearize_family([g3])
assert rep3.verified
print("Z3 family centers:", [str(c) for c in rep3.centers],
      "rounds:", [len(s.removal.steps) for s in rep3.sites])

# --- torus weight (2,1): pole-carrying conjugator ---
psi_t = E(FX, {(1, 0): one, (0, 2): R.mul(den01, den1)}, {(0, 1): one})
aut_t, sites_t = remove_all_poles(psi_t, weights=(2, 1))
from planeaut.family import _denominator_free
assert _denominator_free(aut_t.fwd) and _denominator_free(aut_t.inv)
print("torus centers:", [str(s.center) for s in sites_t],
      "rounds:", [len(s.removal.steps) for s in sites_t])

# --- perturbation bound still fine ---
L1 = E(FX, {(1, 0): x}, {(0, 1): one})
L2 = E(FX, {(1, 0): xinv, (0, 2): one}, {(0, 1): one})
r = perturbation_bound([L1, L2], ctx0)
assert perturbation_bound([ident], ctx0) == 0
print("perturbation bound:", r)
print("ALL SMOKE OK")
