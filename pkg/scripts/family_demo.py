"""Linearize two parameter families end to end and print the reports:
an order-two family whose eigen directions degenerate at x = 0 and 1,
and a torus family whose stored conjugator carries the same two poles.

Usage: python3 scripts/family_demo.py
"""

import json

from planeaut.decompose import invert
from planeaut.family import TorusFamily, linearize_family, verify_family
from planeaut.fields import FieldDescriptor, mpq
from planeaut.jsonio import dump_family_report
from planeaut.plane import BiPoly, PlaneEndo


def main():
    QQ = FieldDescriptor.rationals()
    FX = FieldDescriptor.rational_functions(QQ)
    R = FX.ring()

    b = R.make((mpq(0), mpq(-1), mpq(1)), (mpq(1),))  # x(x - 1)
    g = PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 1): b}),
                  BiPoly(FX, {(0, 1): R.neg(R.one)}))
    print("== order-two family  g = (z1 + x(x-1) z2, -z2) ==")
    report = linearize_family([g])
    print(json.dumps(dump_family_report(report), indent=2, sort_keys=True))
    print("re-audit:", verify_family([g], report))
    print()

    conj = invert(PlaneEndo(
        FX, BiPoly(FX, {(1, 0): R.one,
                        (0, 2): R.inv(R.mul(R.gen, R.sub(R.gen, R.one)))}),
        BiPoly(FX, {(0, 1): R.one})))
    fam = TorusFamily((2, 1), conj)
    print("== torus family, weights (2,1), conjugator pole at x(x-1) ==")
    report = linearize_family(fam)
    print(json.dumps(dump_family_report(report), indent=2, sort_keys=True))
    print("re-audit:", verify_family(fam, report))


if __name__ == "__main__":
    main()
