"""Oracle suites: one per acceptance property, each printing a single
pass/fail line.

Every check is exact; randomized corpora are seeded (PLANEAUT_SEED in
the CLI, an explicit seed here) so reruns are byte-identical.
"""

import math
import random
import time

from .corpus import (FX, QQ, family_cases, perturbation_cases,
                     pole_linearizer_cases, rand_unit, random_affine,
                     random_fiber_form, random_tame_word)
from .decompose import TameDecomposition, decompose, invert, polydegree
from .dvr import (coordinate_mate, endo_valuation, is_integral, lift_affine,
                  perturbation_bound, remove_pole)
from .equivariant import (CyclicDiagonalAction, FiberNormalForm,
                          classify_fiber_centralizer, conjugate_by_diagonal,
                          extract_fiber, solve_commutant_bruteforce)
from .errors import NotACoordinate, NotAnAutomorphism
from .family import linearize_family, pole_set, verify_family
from .fields import DVRContext, FieldDescriptor, mpq
from .groups import automorphism_order
from .plane import AffineMap, BiPoly, PlaneEndo


def _commutes(a, b):
    return a.compose(b) == b.compose(a)


def _peel_identity(word, g):
    """Exact check that word composed onto g is the identity, applying
    one low-degree letter at a time so intermediate degrees stay small."""
    g = word.affines[0].to_endo().compose(g)
    for e, a in zip(word.elementaries, word.affines[1:]):
        g = e.to_endo().compose(g)
        g = a.to_endo().compose(g)
    return g.is_identity()


def _criterion_roundtrip(rng):
    """200 tame words recompose and invert exactly."""
    worst = 0
    for _ in range(200):
        word = random_tame_word(QQ, rng)
        f = word.compose_endo()
        worst = max(worst, f.degree())
        dec = decompose(f)
        assert dec.compose_endo() == f, "recompose mismatch"
        aut = invert(f)
        assert _peel_identity(decompose(aut.inv), aut.fwd), "left inverse"
        assert _peel_identity(dec, aut.inv), "right inverse"
    return "200 words round-tripped, max degree %d" % worst


def _criterion_polydegree(rng):
    """Same corpus: affine sandwiches fix it, inversion reverses it."""
    for _ in range(200):
        word = random_tame_word(QQ, rng)
        f = word.compose_endo()
        pd = tuple(word.polydegree())
        assert tuple(decompose(f).polydegree()) == pd, "base polydegree"
        a1 = random_affine(QQ, rng)
        a2 = random_affine(QQ, rng)
        sandwich = TameDecomposition(
            QQ, (word.affines[0].compose(a2),) + word.affines[1:-1]
            + (a1.compose(word.affines[-1]),), word.elementaries)
        assert tuple(polydegree(sandwich.compose_endo())) == pd, \
            "affine sandwich changed the polydegree"
        assert tuple(decompose(invert(f).inv).polydegree()) \
            == tuple(reversed(pd)), "inversion did not reverse it"
    return "200 words, sandwich-invariant and inversion-reversed"


def _criterion_diagonal_conjugation(rng):
    """Closed-form diagonal conjugation of fiber forms vs direct one."""
    field = FieldDescriptor.cyclotomic(6)
    ring = field.ring()
    for _ in range(100):
        fnf = random_fiber_form(field, rng)
        lam0 = rand_unit(ring, rng, 3)
        lam1 = rand_unit(ring, rng, 3)
        g = AffineMap.diagonal(field, lam0, lam1)
        direct = extract_fiber(
            g.inverse().to_endo().compose(fnf.endo()).compose(g.to_endo()))
        assert conjugate_by_diagonal(lam0, lam1, fnf) == direct, \
            "formula disagrees with direct conjugation"
    return "100 fiber forms over the sixth cyclotomic field"


def _degree_tuples(total):
    out = []

    def rec(prefix, remaining):
        if prefix:
            out.append(tuple(prefix))
        for d in range(2, remaining + 1):
            rec(prefix + [d], remaining - d)

    rec([], total)
    return sorted(out)


def _activation(field, degrees, slot):
    """Fiber form with unit top slots and one extra active slot."""
    ring = field.ring()
    qs = []
    for j, d in enumerate(degrees):
        q = [ring.zero] * d
        q[d - 1] = ring.one
        if slot is not None and slot[0] == j:
            q[slot[1]] = ring.one
        qs.append(tuple(q))
    alpha0 = ring.one if slot == "alpha0" else ring.zero
    beta0 = ring.one if slot == "beta0" else ring.zero
    return FiberNormalForm(field, ring.one, alpha0, ring.one, beta0,
                           tuple(qs)).validate()


def _criterion_classifier(rng):
    """Slot classifier vs brute-force commutant, all small (d, k, e)."""
    checked = 0
    for degrees in _degree_tuples(6):
        m = len(degrees)
        bound = math.prod(degrees)
        for k in range(1, 7):
            for e in range(k):
                field = QQ if k <= 2 else FieldDescriptor.cyclotomic(k)
                action = CyclicDiagonalAction(k, e)
                shape = classify_fiber_centralizer(degrees, action)
                gen = action.generator(field).to_endo()
                brute = solve_commutant_bruteforce(
                    field, bound, generators=[action.generator(field)])
                slots = [(j, r) for j, d in enumerate(degrees)
                         for r in range(d)]
                slots += ["alpha0", "beta0", None]
                for slot in slots:
                    fnf = _activation(field, degrees, slot)
                    f = fnf.endo()
                    want = shape.contains(fnf)
                    assert want == _commutes(f, gen), \
                        "classifier vs direct at %s %s" % (degrees, slot)
                    assert want == brute.contains(f), \
                        "classifier vs brute force at %s %s" % (degrees, slot)
                    checked += 1
                if m % 2 == 0 and not shape.empty:
                    assert e % k == 1 % k, \
                        "even-length fiber commutant outside the center"
                if not shape.empty:
                    assert (degrees[0] - e) % k == 0, \
                        "nonempty fiber with mismatched scaling weight"
                if not shape.empty:
                    sample = shape.sample(field, rng)
                    assert _commutes(sample.endo(), gen), "sample drifted"
                    checked += 1
    # divisible case: top scaling trivial, shift slot opens up and the
    # active exponents sit just below the multiples of k
    for d1, k in ((4, 2), (4, 4), (6, 3), (6, 6), (6, 2)):
        shape = classify_fiber_centralizer((d1,), CyclicDiagonalAction(k, 0))
        assert not shape.empty
        assert shape.alpha0_free, "shift parameter missing for k | d1"
        assert shape.allowed[0] == tuple(
            r for r in range(d1) if (r + 1) % k == 0), "q-slot pattern"
    return "%d membership agreements across 12 polydegrees, k <= 6" % checked


def _only_linear_invertibles(field, sol):
    """The commutant's invertible members are the diagonal linear maps:
    degree-one support is exactly {z1} x {z2}, and activating any higher
    slot breaks invertibility."""
    ring = field.ring()
    sup = (frozenset(sol.support[0]), frozenset(sol.support[1]))
    lin = (frozenset(mn for mn in sup[0] if sum(mn) == 1),
           frozenset(mn for mn in sup[1] if sum(mn) == 1))
    assert lin == (frozenset({(1, 0)}), frozenset({(0, 1)})), \
        "linear commutant part is not the diagonal"
    for comp, extras in enumerate((sup[0] - lin[0], sup[1] - lin[1])):
        for mono in sorted(extras):
            t1 = {(1, 0): ring.one}
            t2 = {(0, 1): ring.one}
            (t1, t2)[comp][mono] = ring.one
            f = PlaneEndo(field, BiPoly(field, t1), BiPoly(field, t2))
            try:
                invert(f)
                raise AssertionError("nonlinear commutant member inverted")
            except NotAnAutomorphism:
                pass


def _criterion_torus_commutant(rng):
    """Weighted commutants are the predicted three-parameter family."""
    for v in (2, 3, 4):
        sol = solve_commutant_bruteforce(QQ, v + 1, weights=(v, 1))
        assert (set(sol.support[0]), set(sol.support[1])) \
            == ({(1, 0), (0, v)}, {(0, 1)}), "weights (%d,1)" % v
        assert sol.dimension == 3
    klein = [AffineMap.diagonal(QQ, mpq(-1), mpq(1)),
             AffineMap.diagonal(QQ, mpq(1), mpq(-1))]
    _only_linear_invertibles(QQ, solve_commutant_bruteforce(
        QQ, 4, generators=klein))
    C3 = FieldDescriptor.cyclotomic(3)
    zeta = C3.ring().zeta
    mu33 = [AffineMap.diagonal(C3, zeta, C3.ring().one),
            AffineMap.diagonal(C3, C3.ring().one, zeta)]
    _only_linear_invertibles(C3, solve_commutant_bruteforce(
        C3, 4, generators=mu33))
    return "weights (2,1),(3,1),(4,1) and two non-cyclic diagonal groups"


def _criterion_pole_descent(rng):
    """50 pole-carrying linearizers descend to integral conjugators."""
    cases = pole_linearizer_cases(rng, count=50)
    ctx = DVRContext(FX, mpq(0))
    rounds = 0
    for case in cases:
        psi, rho, nu = case["psi"], case["rho"], case["nu"]
        bad = case["alpha_bad"]
        order = min(endo_valuation(bad.fwd, ctx),
                    endo_valuation(bad.inv, ctx))
        assert -3 <= order <= -1, "pole order outside the corpus contract"
        rho_l = lift_affine(rho, FX).to_endo()
        assert psi.fwd.compose(nu).compose(psi.inv) == rho_l, "corpus broken"
        removal = remove_pole(psi, ctx, rhos=(rho,))
        ws = [step.w_before for step in removal.steps]
        assert all(a > b for a, b in zip(ws, ws[1:])), \
            "trace weights not strictly decreasing"
        alpha = removal.alpha
        assert alpha.fwd.compose(nu) == nu.compose(alpha.fwd), \
            "correction is not equivariant"
        result = removal.result
        assert is_integral(result.fwd, ctx) and is_integral(result.inv, ctx)
        assert result.fwd.compose(nu).compose(result.inv) == rho_l, \
            "linearization identity lost"
        rounds += len(ws)
    return "50 removals, %d descent rounds in total" % rounds


def _criterion_perturbation(rng):
    """Perturbations above the published margin keep words integral."""
    ctx = DVRContext(FX, mpq(0))
    ring = FX.ring()
    t = ring.sub(ring.gen, ring.from_base(ctx.center))
    zeros = 0
    for letters in perturbation_cases(rng, count=20):
        r = perturbation_bound(list(letters), ctx)
        v0 = max(0, -min(endo_valuation(f, ctx) for f in letters))
        if v0 == 0:
            assert r == 0, "integral word must have zero margin"
            zeros += 1
        support = set()
        for f in letters:
            support.update(f.p1.terms)
            support.update(f.p2.terms)
        support = sorted(support)
        for _ in range(50):
            perturbed = []
            for f in letters:
                terms1 = dict(f.p1.terms)
                terms2 = dict(f.p2.terms)
                for terms in (terms1, terms2):
                    for mono in support:
                        if rng.random() < 0.4:
                            continue
                        c = ring.mul(ring.from_int(rng.randint(-3, 3)),
                                     ring.pow(t, r + rng.randint(0, 1)))
                        terms[mono] = ring.add(terms.get(mono, ring.zero), c)
                perturbed.append(PlaneEndo(f.field, BiPoly(f.field, terms1),
                                           BiPoly(f.field, terms2)))
            comp = perturbed[0]
            for f in perturbed[1:]:
                comp = comp.compose(f)
            assert is_integral(comp, ctx), "perturbed word left the ring"
    assert zeros >= 4, "corpus must include all-integral words"
    return "20 words, 50 perturbations each, margins validated"


def _criterion_family_pipeline(rng):
    """Ten parameter families linearize to polynomial conjugators."""
    poles = 0
    for case in family_cases():
        if case["kind"] == "cyclic":
            gens = case["gens"]
            assert automorphism_order(gens[0]) == case["order"]
            report = linearize_family(gens)
            subject = gens
        else:
            report = linearize_family(case["family"])
            subject = case["family"]
        field = report.conjugator.fwd.field
        bring = field.base.ring()
        centers = report.centers
        assert len(centers) == 2, "engineered poles did not engage"
        assert {str(bring.to_json(c)) for c in centers} \
            == {str(bring.to_json(bring.from_int(0))),
                str(bring.to_json(bring.from_int(1)))}, "pole centers"
        assert verify_family(subject, report), "family audit failed"
        assert report.verified
        poles += len(centers)
    return "10 families cleared, %d pole centers removed" % poles


def _criterion_negative(rng):
    """Non-automorphisms, non-coordinates and non-rational poles refuse."""
    ring = QQ.ring()
    sq = PlaneEndo(QQ, BiPoly(QQ, {(2, 0): ring.one}),
                   BiPoly(QQ, {(0, 1): ring.one}))
    try:
        decompose(sq)
        raise AssertionError("square component slipped through")
    except NotAnAutomorphism:
        pass
    prod = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): ring.one}),
                     BiPoly(QQ, {(1, 1): ring.one}))
    try:
        decompose(prod)
        raise AssertionError("non-injective map slipped through")
    except NotAnAutomorphism:
        pass
    try:
        coordinate_mate(BiPoly(QQ, {(1, 1): ring.one}))
        raise AssertionError("z1*z2 accepted as a coordinate")
    except NotACoordinate:
        pass
    fring = FX.ring()
    den = fring.inv(fring.add(fring.mul(fring.gen, fring.gen), fring.one))
    psi = PlaneEndo(FX, BiPoly(FX, {(1, 0): fring.one, (0, 2): den}),
                    BiPoly(FX, {(0, 1): fring.one}))
    centers, leftover = pole_set(psi)
    assert centers == () and len(leftover) == 1, "irrational pole missed"
    assert "x**2 + 1" in leftover[0]
    return "both bad maps, the bad mate and the irrational pole refused"


CRITERIA = (
    ("decomposition-round-trip", _criterion_roundtrip, "decompose"),
    ("polydegree-invariants", _criterion_polydegree, "decompose"),
    ("diagonal-conjugation-formula", _criterion_diagonal_conjugation,
     "fiber"),
    ("cyclic-fiber-classifier", _criterion_classifier, "classifier"),
    ("torus-commutant-structure", _criterion_torus_commutant, "classifier"),
    ("pole-removal-descent", _criterion_pole_descent, "kr"),
    ("perturbation-margin", _criterion_perturbation, "kr"),
    ("family-pipeline", _criterion_family_pipeline, "family"),
    ("negative-controls", _criterion_negative, "negative"),
)

SUITES = ("all",) + tuple(sorted({suite for _, _, suite in CRITERIA}))


def run_criteria(suite="all", seed=0, out=print):
    """Run the selected suite, one line per criterion; True iff all pass."""
    all_ok = True
    for name, fn, group in CRITERIA:
        if suite not in ("all", group, name):
            continue
        start = time.time()
        try:
            detail = fn(random.Random(seed))
            out("PASS %-30s %s [%.1fs]" % (name, detail,
                                           time.time() - start))
        except Exception as exc:
            all_ok = False
            out("FAIL %-30s %s: %s [%.1fs]" % (name, type(exc).__name__,
                                               exc, time.time() - start))
    return all_ok
