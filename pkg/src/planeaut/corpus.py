"""Seeded random inputs for the oracle suites.

Everything here is driven by a caller-supplied random.Random so suites
are reproducible; scalars stay within single digits to keep exact
arithmetic fast.
"""

from .decompose import TameDecomposition, invert
from .equivariant import FiberNormalForm
from .fields import FieldDescriptor, mpq
from .plane import AffineMap, BiPoly, ElementaryMap, PlaneAut, PlaneEndo

QQ = FieldDescriptor.rationals()
FX = FieldDescriptor.rational_functions(QQ)


def rand_scalar(ring, rng, bound=9):
    return ring.from_int(rng.randint(-bound, bound))


def rand_unit(ring, rng, bound=9):
    while True:
        v = rand_scalar(ring, rng, bound)
        if not ring.is_zero(v):
            return v


def random_affine(field, rng, interior=False, bound=9):
    """Random invertible affine map; `interior` forces a nonzero lower
    left entry, keeping the letter outside the elementary subgroup so
    adjacent word syllables cannot merge."""
    ring = field.ring()
    while True:
        c = rand_unit(ring, rng, bound) if interior else rand_scalar(
            ring, rng, bound)
        m = ((rand_scalar(ring, rng, bound), rand_scalar(ring, rng, bound)),
             (c, rand_scalar(ring, rng, bound)))
        det = ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0]))
        if not ring.is_zero(det):
            break
    t = (rand_scalar(ring, rng, bound), rand_scalar(ring, rng, bound))
    return AffineMap(field, m, t)


def random_elementary(field, rng, degree, bound=9):
    ring = field.ring()
    p = [rand_scalar(ring, rng, bound) for _ in range(degree)]
    p.append(rand_unit(ring, rng, bound))
    return ElementaryMap(field, rand_unit(ring, rng, bound), tuple(p),
                         rand_unit(ring, rng, bound),
                         rand_scalar(ring, rng, bound))


def random_tame_word(field, rng, max_syllables=3, degrees=(2, 3, 4)):
    """Normal-form word with known polydegree; interior affines stay
    outside the triangular subgroup so no letters merge."""
    m = rng.randint(1, max_syllables)
    affines = [random_affine(field, rng)]
    elementaries = []
    for j in range(m):
        elementaries.append(random_elementary(field, rng,
                                              rng.choice(degrees)))
        affines.append(random_affine(field, rng, interior=(j < m - 1)))
    return TameDecomposition(field, tuple(affines), tuple(elementaries))


def random_fiber_form(field, rng, max_syllables=2, max_degree=4, bound=9):
    ring = field.ring()
    m = rng.randint(1, max_syllables)
    qs = []
    for _ in range(m):
        d = rng.randint(2, max_degree)
        q = [rand_scalar(ring, rng, bound) for _ in range(d)]
        q[-1] = rand_unit(ring, rng, bound)
        qs.append(tuple(q))
    return FiberNormalForm(field, rand_unit(ring, rng, bound),
                           rand_scalar(ring, rng, bound),
                           rand_unit(ring, rng, bound),
                           rand_scalar(ring, rng, bound),
                           tuple(qs)).validate()


# -- pole-carrying linearizers over Q(x) ----------------------------------

def _aut_from_letters(letters):
    """PlaneAut from (fwd, inv) endo pairs, innermost letter last."""
    fwd = letters[0][0]
    inv = letters[0][1]
    for f, b in letters[1:]:
        fwd = fwd.compose(f)
        inv = inv.compose(b)
    inv_total = letters[-1][1]
    for f, b in reversed(letters[:-1]):
        inv_total = inv_total.compose(b)
    return PlaneAut(fwd, inv_total)


def _letter(aff_or_elem):
    return (aff_or_elem.to_endo(), aff_or_elem.inverse().to_endo())


def _shear_letter(field, coeff, exponent, lower=False):
    ring = field.ring()
    if lower:
        fwd = PlaneEndo(field, BiPoly(field, {(1, 0): ring.one}),
                        BiPoly(field, {(exponent, 0): coeff,
                                       (0, 1): ring.one}))
        inv = PlaneEndo(field, BiPoly(field, {(1, 0): ring.one}),
                        BiPoly(field, {(exponent, 0): ring.neg(coeff),
                                       (0, 1): ring.one}))
    else:
        fwd = PlaneEndo(field, BiPoly(field, {(0, exponent): coeff,
                                              (1, 0): ring.one}),
                        BiPoly(field, {(0, 1): ring.one}))
        inv = PlaneEndo(field, BiPoly(field, {(0, exponent):
                                              ring.neg(coeff),
                                              (1, 0): ring.one}),
                        BiPoly(field, {(0, 1): ring.one}))
    return fwd, inv


def _diag_letter(field, a, d):
    ring = field.ring()
    fwd = AffineMap.diagonal(field, a, d)
    inv = AffineMap.diagonal(field, ring.inv(a), ring.inv(d))
    return fwd.to_endo(), inv.to_endo()


def _pole_coeff(ring, rng, max_order):
    c = mpq(rng.choice((-3, -2, -1, 1, 2, 3)))
    a = rng.randint(1, max_order)
    x = ring.gen
    return ring.mul(ring.from_base(c), ring.inv(ring.pow(x, a)))


def _min_valuation(aut, ctx):
    from .dvr import endo_valuation
    return min(endo_valuation(aut.fwd, ctx), endo_valuation(aut.inv, ctx))


def pole_linearizer_cases(rng, count=50, max_order=3):
    """(psi, rho, nu) triples: psi = (centralizer word with poles at 0)
    composed with an integral conjugator, so psi linearizes nu with a
    pole while an integral linearizer exists."""
    from .fields import DVRContext
    ring = FX.ring()
    ctx = DVRContext(FX, mpq(0))
    kinds = (
        # rho diag entries over Q, commuting shear slot (exponent, lower)
        ((mpq(1), mpq(-1)), (2, False)),
        ((mpq(-1), mpq(1)), (2, True)),
        ((mpq(-1), mpq(-1)), (1, False)),
    )
    cases = []
    attempts = 0
    while len(cases) < count:
        attempts += 1
        diag_rho, (exp, lower) = kinds[rng.randrange(len(kinds))]
        rho = AffineMap.diagonal(QQ, diag_rho[0], diag_rho[1])
        bad = []
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.5:
                bad.append(_shear_letter(FX, _pole_coeff(ring, rng,
                                                         max_order),
                                         exp, lower))
            else:
                a = ring.mul(ring.from_base(mpq(rng.choice((1, 2)))),
                             ring.inv(ring.pow(ring.gen,
                                               rng.randint(0, 1))))
                d = ring.from_base(mpq(rng.choice((1, -1, 2))))
                bad.append(_diag_letter(FX, a, d))
        phi_letters = []
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.6:
                c = ring.add(ring.from_base(mpq(rng.randint(-2, 2))),
                             ring.mul(ring.from_base(mpq(1)), ring.gen))
                phi_letters.append(_shear_letter(FX, c, rng.choice((2, 3)),
                                                 lower=rng.random() < 0.3))
            else:
                aff = random_affine(QQ, rng, bound=3)
                from .dvr import lift_affine
                lifted = lift_affine(aff, FX)
                phi_letters.append(_letter(lifted))
        phi = _aut_from_letters(phi_letters)
        psi = _aut_from_letters(bad + phi_letters)
        alpha_bad = PlaneAut(phi.inv.compose(psi.fwd),
                             psi.inv.compose(phi.fwd))
        if _min_valuation(alpha_bad, ctx) < -max_order:
            continue
        if _min_valuation(psi, ctx) >= 0:
            continue
        from .dvr import lift_affine
        rho_l = lift_affine(rho, FX).to_endo()
        nu = phi.inv.compose(rho_l).compose(phi.fwd)
        if psi.fwd.compose(nu).compose(psi.inv) != rho_l:
            continue
        cases.append({"psi": psi, "rho": rho, "nu": nu,
                      "alpha_bad": alpha_bad})
        if attempts > 60 * count:
            raise RuntimeError("pole linearizer sampler stalled")
    return cases


# -- composition tuples with integral product -----------------------------

def perturbation_cases(rng, count=20):
    """Letter tuples whose composition is integral at 0; some letters
    carry poles, some tuples are entirely integral."""
    ring = FX.ring()
    x = ring.gen
    cases = []
    while len(cases) < count:
        if len(cases) % 4 == 0:
            # all-integral word
            letters = []
            for _ in range(rng.randint(1, 3)):
                c = ring.from_base(mpq(rng.randint(-3, 3)))
                f, _ = _shear_letter(FX, c, rng.choice((1, 2)),
                                     lower=rng.random() < 0.5)
                letters.append(f)
            cases.append(tuple(letters))
            continue
        # sandwich: T = L . W, word = (L, W^{-1}) or (L, M, (M.W)^{-1})
        a = rng.randint(1, 2)
        w_f, w_b = _diag_letter(FX, ring.inv(ring.pow(x, a)),
                                ring.pow(x, rng.randint(0, 1)))
        if rng.random() < 0.5:
            s_f, s_b = _shear_letter(FX, ring.mul(
                ring.from_base(mpq(rng.choice((1, -1, 2)))),
                ring.inv(ring.pow(x, rng.randint(1, 2)))), 2)
            w_f, w_b = w_f.compose(s_f), s_b.compose(w_b)
        t_f, _ = _shear_letter(FX, ring.from_base(mpq(rng.randint(-2, 2))),
                               2)
        cases.append((t_f.compose(w_f), w_b))
    return cases


# -- deterministic linearizable families with poles at 0 and 1 ------------

def family_cases():
    """Ten single-generator families over the rationals (or the cube
    roots of unity) plus torus conjugator cases, each engineered so the
    generic linearizer picks up poles at 0 and 1."""
    from .family import TorusFamily
    ring = FX.ring()
    x = ring.gen
    one = ring.one

    def rf(c):
        return ring.from_base(mpq(c))

    def shear_wrap(field, aff):
        # conjugate by the lower shear (z1, z2 + z1^2); the reduction
        # has to peel it off before diagonalizing the affine core
        r = field.ring()
        s = PlaneEndo(field, BiPoly(field, {(1, 0): r.one}),
                      BiPoly(field, {(0, 1): r.one, (2, 0): r.one}))
        si = PlaneEndo(field, BiPoly(field, {(1, 0): r.one}),
                       BiPoly(field, {(0, 1): r.one,
                                      (2, 0): r.neg(r.one)}))
        return s.compose(aff).compose(si)

    b01 = ring.mul(x, ring.sub(x, one))
    # order-2 families: two affine, two wrapped in a quadratic shear
    b_affine = [b01, ring.mul(ring.pow(x, 2), ring.sub(x, one))]
    cases = []
    for b in b_affine:
        g = PlaneEndo(FX, BiPoly(FX, {(1, 0): one, (0, 1): b}),
                      BiPoly(FX, {(0, 1): ring.neg(one)}))
        cases.append({"kind": "cyclic", "order": 2, "gens": [g]})
    for b in (b01, ring.mul(rf(2), b01)):
        aff = PlaneEndo(FX, BiPoly(FX, {(1, 0): one, (0, 1): b}),
                        BiPoly(FX, {(0, 1): ring.neg(one)}))
        cases.append({"kind": "cyclic", "order": 2,
                      "gens": [shear_wrap(FX, aff)]})

    C3 = FieldDescriptor.cyclotomic(3)
    F3 = FieldDescriptor.rational_functions(C3)
    r3 = F3.ring()
    z = r3.from_base(C3.ring().zeta)
    zz = r3.mul(z, z)
    x3 = r3.gen
    b3 = r3.mul(x3, r3.sub(x3, r3.one))
    g3_affine = [
        PlaneEndo(F3, BiPoly(F3, {(1, 0): z, (0, 1): b3}),
                  BiPoly(F3, {(0, 1): zz})),
        PlaneEndo(F3, BiPoly(F3, {(1, 0): z, (0, 1): r3.mul(
            r3.from_int(3), b3)}), BiPoly(F3, {(0, 1): zz})),
    ]
    for g3 in g3_affine:
        cases.append({"kind": "cyclic", "order": 3, "gens": [g3]})
    cases.append({"kind": "cyclic", "order": 3,
                  "gens": [shear_wrap(F3, g3_affine[0])]})

    inv01 = ring.inv(b01)
    # torus cases: psi = (centralizer element A) . phi, stored as psi^{-1}
    torus_As = [
        PlaneEndo(FX, BiPoly(FX, {(1, 0): one, (0, 2): inv01}),
                  BiPoly(FX, {(0, 1): one})),
        PlaneEndo(FX, BiPoly(FX, {(1, 0): ring.inv(x),
                                  (0, 2): ring.inv(ring.pow(
                                      ring.sub(x, one), 2))}),
                  BiPoly(FX, {(0, 1): x})),
        PlaneEndo(FX, BiPoly(FX, {(1, 0): one, (0, 2): ring.inv(x)}),
                  BiPoly(FX, {(0, 1): ring.sub(x, one)})),
    ]
    torus_phis = [
        PlaneEndo(FX, BiPoly(FX, {(1, 0): one, (0, 3): x}),
                  BiPoly(FX, {(0, 1): one})),
        PlaneEndo(FX, BiPoly(FX, {(1, 0): one, (0, 3): x,
                                  (0, 0): one},),
                  BiPoly(FX, {(0, 1): one})),
        PlaneEndo(FX, BiPoly(FX, {(1, 0): one,
                                  (0, 3): ring.add(x, one)}),
                  BiPoly(FX, {(0, 1): one})),
    ]
    for A, phi in zip(torus_As, torus_phis):
        aut = invert(A.compose(phi))
        conj = PlaneAut(aut.inv, aut.fwd)
        cases.append({"kind": "torus", "weights": (2, 1),
                      "family": TorusFamily((2, 1), conj)})
    return cases
