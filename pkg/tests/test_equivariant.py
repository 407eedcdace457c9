"""Equivariant automorphisms of diagonal actions: the anchored-family
coordinates, the diagonal-conjugation formula, the classifier against a
brute-force commutant solver, and the non-cyclic structure results."""

import pytest

from planeaut.corpus import random_fiber_form
from planeaut.decompose import invert
from planeaut.equivariant import (CyclicDiagonalAction, FiberNormalForm,
                                  TorusDiagonalAction,
                                  centralizer_structure_noncyclic,
                                  classify_ad_centralizer,
                                  classify_fiber_centralizer,
                                  conjugate_by_diagonal, extract_fiber,
                                  fiber_commutes_with_diagonal,
                                  is_torus_equivariant,
                                  solve_commutant_bruteforce)
from planeaut.errors import (GroupIsCyclic, NotAnAutomorphism, NotInFiber)
from planeaut.fields import FieldDescriptor, mpq
from planeaut.plane import AffineMap, BiPoly, PlaneEndo

QQ = FieldDescriptor.rationals()
C3 = FieldDescriptor.cyclotomic(3)


def test_fiber_form_round_trip(rng):
    for _ in range(20):
        fnf = random_fiber_form(QQ, rng)
        back = extract_fiber(fnf.endo())
        assert back.endo() == fnf.endo()


def test_fiber_form_validation():
    with pytest.raises(NotInFiber):
        FiberNormalForm(QQ, mpq(0), mpq(0), mpq(1), mpq(0),
                        ((mpq(1), mpq(1)),)).validate()
    with pytest.raises(NotInFiber):
        FiberNormalForm(QQ, mpq(1), mpq(0), mpq(1), mpq(0),
                        ((mpq(1), mpq(0)),)).validate()


def test_extract_fiber_rejects_plain_affine():
    with pytest.raises(NotInFiber):
        extract_fiber(AffineMap.swap(QQ).to_endo())


def test_conjugation_formula_matches_direct_computation(rng):
    R = QQ.ring()
    for _ in range(20):
        fnf = random_fiber_form(QQ, rng)
        lam0 = R.from_int(rng.choice((1, -1, 2, 3)))
        lam1 = R.from_int(rng.choice((1, -1, 2)))
        g = AffineMap.diagonal(QQ, lam0, lam1)
        direct = g.inverse().to_endo().compose(
            fnf.endo()).compose(g.to_endo())
        predicted = conjugate_by_diagonal(lam0, lam1, fnf)
        assert predicted.endo() == direct
        # commutation predicate agrees with brute comparison
        agrees = fiber_commutes_with_diagonal(fnf, lam0, lam1)
        assert agrees == (g.to_endo().compose(fnf.endo())
                          == fnf.endo().compose(g.to_endo()))


def test_cyclic_action_generator_has_right_order():
    C8 = FieldDescriptor.cyclotomic(8)
    g = CyclicDiagonalAction(8, 3).generator(C8)
    acc = g
    for _ in range(7):
        assert not acc.is_identity()
        acc = acc.compose(g)
    assert acc.is_identity()


def test_fiber_classifier_small_cases():
    # one cubic syllable, k = 2, e = 1: exponents 0 and 2 survive and
    # neither scalar shift is free
    s = classify_fiber_centralizer((3,), CyclicDiagonalAction(2, 1))
    assert not s.empty
    assert s.allowed == ((0, 2),)
    assert not s.alpha0_free and not s.beta0_free
    # quadratic top coefficient is killed by the same congruence
    assert classify_fiber_centralizer((2,), CyclicDiagonalAction(2, 1)).empty
    # two syllables force the even-letter congruence, empty again
    assert classify_fiber_centralizer((2, 2),
                                      CyclicDiagonalAction(2, 1)).empty
    # the trivial action constrains nothing
    t = classify_fiber_centralizer((4,), CyclicDiagonalAction(1, 0))
    assert t.allowed == ((0, 1, 2, 3),)
    assert t.alpha0_free and t.beta0_free


def test_fiber_classifier_rejects_degree_one():
    with pytest.raises(Exception):
        classify_fiber_centralizer((1,), CyclicDiagonalAction(2, 1))


def test_ad_classifier_case_tag():
    rep = classify_ad_centralizer((4,), CyclicDiagonalAction(3, 1))
    assert rep.case == "bundle"
    assert rep.component_count == 1
    assert not rep.fiber_std.empty


def test_classifier_agrees_with_brute_force():
    # activate each coefficient slot in turn and compare the classifier's
    # verdict with the brute-force commutant of the actual generator
    action = CyclicDiagonalAction(2, 1)
    shape = classify_fiber_centralizer((3,), action)
    gen = action.generator(QQ)
    sol = solve_commutant_bruteforce(QQ, 3, generators=[gen])
    for r in range(2):
        fnf = FiberNormalForm(
            QQ, mpq(1), mpq(0), mpq(1), mpq(0),
            (tuple(mpq(1 if i in (r, 2) else 0) for i in range(3)),)
        ).validate()
        assert sol.contains(fnf.endo()) == (r in shape.allowed[0])


def test_torus_commutant_weights_21():
    sol = solve_commutant_bruteforce(QQ, 3, weights=(2, 1))
    assert sol.dimension == 3
    assert set(sol.support[0]) == {(1, 0), (0, 2)}
    assert set(sol.support[1]) == {(0, 1)}


def test_scalar_minus_one_commutant_is_odd_maps():
    g = AffineMap.diagonal(QQ, mpq(-1), mpq(-1))
    sol = solve_commutant_bruteforce(QQ, 3, generators=[g])
    assert sol.dimension == 12
    for comp in sol.support:
        assert all((i + j) % 2 == 1 for i, j in comp)


def test_commutant_is_a_linear_space():
    g = AffineMap.diagonal(QQ, mpq(-1), mpq(-1))
    sol = solve_commutant_bruteforce(QQ, 3, generators=[g])
    a = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 3): mpq(2)}),
                  BiPoly(QQ, {(0, 1): mpq(1)}))
    b = PlaneEndo(QQ, BiPoly(QQ, {(2, 1): mpq(-1)}),
                  BiPoly(QQ, {(1, 2): mpq(5)}))
    assert sol.contains(a) and sol.contains(b)
    both = PlaneEndo(QQ, a.p1 + b.p1, a.p2 + b.p2)
    assert sol.contains(both)
    # linear members compose without leaving the degree window
    sw = AffineMap.swap(QQ).to_endo()
    d = AffineMap.diagonal(QQ, mpq(2), mpq(3)).to_endo()
    assert sol.contains(sw) and sol.contains(d)
    assert sol.contains(sw.compose(d))


def test_is_torus_equivariant():
    f = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (0, 2): mpq(1)}),
                  BiPoly(QQ, {(0, 1): mpq(1)}))
    assert is_torus_equivariant(f, 2, 1)
    assert not is_torus_equivariant(f, 1, 1)
    assert is_torus_equivariant(PlaneEndo.identity(QQ), 5, 3)


def test_noncyclic_structure():
    klein = centralizer_structure_noncyclic(
        QQ, [(mpq(-1), mpq(1)), (mpq(1), mpq(-1))])
    assert klein.kind == "diagonal"
    torus = centralizer_structure_noncyclic(QQ, TorusDiagonalAction(2, 1))
    assert torus.kind == "monomial-triangular"
    assert torus.v == 2
    with pytest.raises(GroupIsCyclic):
        centralizer_structure_noncyclic(QQ, [(mpq(-1), mpq(-1))])


def test_nonlinear_commutant_members_fail_inversion():
    # z1 -> z1 + z1^3 commutes with -id as an endomorphism but is not an
    # automorphism; the membership is honest, invertibility is separate
    g = AffineMap.diagonal(QQ, mpq(-1), mpq(-1))
    sol = solve_commutant_bruteforce(QQ, 3, generators=[g])
    f = PlaneEndo(QQ, BiPoly(QQ, {(1, 0): mpq(1), (3, 0): mpq(1)}),
                  BiPoly(QQ, {(0, 1): mpq(1)}))
    assert sol.contains(f)
    with pytest.raises(NotAnAutomorphism):
        invert(f)
