"""Walk one pole removal by hand: start from the smallest linearizer
with a parameter pole and print every descent round.

Usage: python3 scripts/kr_demo.py
"""

from planeaut.decompose import invert
from planeaut.dvr import endo_valuation, is_integral, remove_pole
from planeaut.fields import DVRContext, FieldDescriptor, mpq
from planeaut.plane import AffineMap, BiPoly, PlaneEndo


def main():
    QQ = FieldDescriptor.rationals()
    FX = FieldDescriptor.rational_functions(QQ)
    R = FX.ring()
    ctx = DVRContext(FX, mpq(0))

    psi = invert(PlaneEndo(
        FX, BiPoly(FX, {(1, 0): R.one, (0, 2): R.inv(R.gen)}),
        BiPoly(FX, {(0, 1): R.one})))
    rho = AffineMap.diagonal(QQ, mpq(1), mpq(-1))

    print("psi      =", psi.fwd)
    print("rho      = diag(1, -1)")
    print("val(psi) =", endo_valuation(psi.fwd, ctx), "at x = 0")
    print()

    removal = remove_pole(psi, ctx, rhos=(rho,))
    for i, step in enumerate(removal.steps, 1):
        print("round %d: w = %d" % (i, step.w_before))
        print("  invariant curve ", step.curve)
        print("  coordinate mate ", step.mate)
        print("  scalings        ", step.scalings)
    print()
    out = removal.result
    print("cleaned  =", out.fwd)
    print("integral both ways:",
          is_integral(out.fwd, ctx) and is_integral(out.inv, ctx))
    print("psi . alpha == cleaned:",
          psi.fwd.compose(removal.alpha.fwd) == out.fwd)


if __name__ == "__main__":
    main()
