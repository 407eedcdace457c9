"""End-to-end linearization of parameter families of plane automorphisms.

Generators over a rational function field get linearized with a single
conjugator, the conjugator's poles (in the parameter) are removed center
by center, and the result is audited three ways: the conjugation
identities hold symbolically, no coefficient keeps a denominator, and
random specializations of the parameter reproduce the linear action.

Pole centers must be rational over the residue field; the removal
machinery localizes at one residue-field point at a time, so a
denominator factor with no rational root is reported rather than
silently skipped.
"""

from dataclasses import dataclass

import sympy

from .decompose import invert
from .dvr import PoleRemoval, _endo_pair, lift_affine, remove_pole
from .equivariant import is_torus_equivariant
from .errors import (FamilyValidationError, ResidualNonRationalPoles,
                     SchemaError, UnsupportedGroup)
from .fields import DVRContext, K_CYCLOTOMIC, K_RATFUNC, K_RATIONALS, mpq
from .groups import linearize_over_field
from .plane import AffineMap, PlaneAut, PlaneEndo

_X = sympy.Symbol("x")


def _as_endo(g):
    return g.fwd if isinstance(g, PlaneAut) else g


def _rational_root_split(coeffs):
    """(roots, leftover factor strings) of a unipoly over the rationals."""
    sy = [sympy.Rational(c.numerator, c.denominator) for c in coeffs]
    poly = sympy.Poly(list(reversed(sy)), _X, domain="QQ")
    roots = []
    leftover = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            b = fac.all_coeffs()[1]
            roots.append(mpq(int(b.p), int(b.q)) * -1)
        elif fac.degree() > 1:
            leftover.append(str(fac.as_expr()))
    return roots, leftover


def _cyclotomic_root_split(ring, coeffs):
    """Same split over a cyclotomic residue field, roots as payloads."""
    theta = sympy.exp(2 * sympy.pi * sympy.I * sympy.Rational(1, ring.k))
    dom = sympy.QQ.algebraic_field(theta)

    def to_dom(t):
        expr = sum(sympy.Rational(c.numerator, c.denominator) * theta ** i
                   for i, c in enumerate(t))
        return dom.from_sympy(sympy.expand(expr))

    poly = sympy.Poly([to_dom(c) for c in reversed(coeffs)], _X, domain=dom)
    roots = []
    leftover = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            b = dom.from_sympy(sympy.expand(fac.all_coeffs()[1]))
            vec = [mpq(int(c.numerator), int(c.denominator))
                   for c in reversed(b.rep)]
            roots.append(ring._pad(tuple(-c for c in vec)))
        elif fac.degree() > 1:
            leftover.append(str(fac.as_expr()))
    return roots, leftover


def _root_split(base, coeffs):
    bring = base.ring()
    if base.kind == K_RATIONALS:
        return _rational_root_split(coeffs)
    if base.kind == K_CYCLOTOMIC:
        return _cyclotomic_root_split(bring, coeffs)
    raise SchemaError("unsupported residue field %s" % base)


def pole_set(psi, include_inverse=True):
    """Rational roots of every coefficient denominator of the map (and by
    default of its inverse), sorted; plus leftover non-rational factors."""
    endo = _as_endo(psi)
    field = endo.field
    if field.kind != K_RATFUNC:
        raise SchemaError("pole hunting needs a rational-functions field")
    base = field.base
    comps = [endo.p1, endo.p2]
    if include_inverse:
        inv = psi.inv if isinstance(psi, PlaneAut) else invert(endo).inv
        comps += [inv.p1, inv.p2]
    dens = set()
    for comp in comps:
        for c in comp.terms.values():
            if len(c[1]) > 1:
                dens.add(c[1])
    found = {}
    leftover = []
    for den in sorted(dens):
        roots, rest = _root_split(base, den)
        for r in roots:
            found[r] = True
        leftover.extend(rest)
    bring = base.ring()
    centers = tuple(sorted(found, key=bring.sort_key))
    return centers, tuple(sorted(set(leftover)))


@dataclass(frozen=True)
class PoleSite:
    """One processed center with the removal trace that cleared it."""

    center: object
    removal: PoleRemoval


def _denominator_free(endo):
    return all(len(c[1]) == 1
               for comp in (endo.p1, endo.p2)
               for c in comp.terms.values())


def remove_all_poles(psi, rhos=(), weights=None):
    """Clear every rational pole center of psi in deterministic order.

    rhos are linear maps over the residue field that psi conjugates the
    family to (their diagonality drives each step); weights, if given,
    describe a torus action instead.  Returns (aut, sites): the pole-free
    conjugator and the per-center traces.  The left correction applied to
    psi commutes with the action by construction, and that is re-checked
    before returning.
    """
    fwd0, inv0 = _endo_pair(psi)
    aut = PlaneAut(fwd0, inv0)
    field = fwd0.field
    centers, leftover = pole_set(aut)
    sites = []
    for center in centers:
        ctx = DVRContext(field, center)
        removal = remove_pole(aut, ctx, rhos, weights)
        aut = removal.result
        sites.append(PoleSite(center, removal))
    if not (_denominator_free(aut.fwd) and _denominator_free(aut.inv)):
        raise ResidualNonRationalPoles(
            "denominator factors without rational roots remain: %s"
            % ", ".join(leftover or ("(unknown)",)))
    correction = aut.fwd.compose(inv0)
    for rho in rhos:
        lifted = lift_affine(rho, field).to_endo()
        if correction.compose(lifted) != lifted.compose(correction):
            raise FamilyValidationError(
                "pole removal drifted outside the action's centralizer")
    if weights is not None:
        if not is_torus_equivariant(correction, weights[0], weights[1]):
            raise FamilyValidationError(
                "pole removal broke the torus weights")
    return aut, tuple(sites)


@dataclass(frozen=True)
class FamilyLinearization:
    """Linear forms over the residue field plus an everywhere-regular
    conjugator realizing them across the whole parameter line."""

    rho: tuple          # AffineMap over the residue field, one per generator
    conjugator: PlaneAut
    sites: tuple        # PoleSite entries, in processing order
    verified: bool = False
    weights: tuple = None   # set instead of rho for a torus family

    @property
    def centers(self):
        return tuple(site.center for site in self.sites)


@dataclass(frozen=True)
class TorusFamily:
    """One-parameter diagonal action twisted by a stored conjugator.

    The member at torus parameter s is conjugator . diag(s^w1, s^w2) .
    conjugator^{-1}; the conjugator may carry parameter poles even when
    every member is polynomial."""

    weights: tuple
    conjugator: PlaneAut

    def member(self, s):
        field = self.conjugator.fwd.field
        ring = field.ring()
        sf = ring.from_base(s)
        rho = AffineMap.diagonal(field, ring.pow(sf, self.weights[0]),
                                 ring.pow(sf, self.weights[1])).to_endo()
        return self.conjugator.fwd.compose(rho).compose(self.conjugator.inv)


def _descend_rho(rho, base):
    ring = rho.field.ring()
    try:
        m = tuple(tuple(ring.constant_value(c) for c in row) for row in rho.m)
        t = tuple(ring.constant_value(c) for c in rho.t)
    except ValueError:
        raise UnsupportedGroup(
            "the linearized action varies with the parameter")
    return AffineMap(base, m, t, check=False)


def linearize_family_generic(gens):
    """Conjugator over the function field itself, poles allowed, taking
    every generator to a constant diagonal map over the residue field.

    Returns (psi, rho) with psi . g . psi^{-1} == rho_g for each
    generator g; non-diagonalizable linear parts are out of scope and
    raise UnsupportedGroup.
    """
    gens = [_as_endo(g) for g in gens]
    if not gens:
        raise FamilyValidationError("no generators given")
    field = gens[0].field
    if field.kind != K_RATFUNC:
        raise SchemaError("family linearization needs a function field")
    lin = linearize_over_field(gens)
    if not lin.diagonal:
        raise UnsupportedGroup(
            "the action does not diagonalize over the coefficient field")
    rho = tuple(_descend_rho(r, field.base) for r in lin.rho)
    return lin.conjugator, rho


def linearize_family(gens):
    """Single conjugator taking every generator to a constant linear map,
    regular (with regular inverse) at every parameter value.

    Accepts a list of finite-order generators over a rational-functions
    field (the group they generate must linearize to diagonal form), or a
    TorusFamily."""
    if isinstance(gens, TorusFamily):
        return _linearize_torus_family(gens)
    gens = [_as_endo(g) for g in gens]
    psi, rho = linearize_family_generic(gens)
    conj, sites = remove_all_poles(psi, rhos=rho)
    report = FamilyLinearization(rho, conj, sites)
    _audit_family(gens, report)
    return FamilyLinearization(rho, conj, sites, verified=True)


def _linearize_torus_family(family):
    """The stored conjugator is the generic linearizer already; only its
    parameter poles need clearing, inside the torus centralizer."""
    conj = family.conjugator
    if conj.fwd.field.kind != K_RATFUNC:
        raise SchemaError("family linearization needs a function field")
    psi = PlaneAut(conj.inv, conj.fwd)
    aut, sites = remove_all_poles(psi, weights=family.weights)
    report = FamilyLinearization((), aut, sites, weights=family.weights)
    _audit_torus(family, report)
    return FamilyLinearization((), aut, sites, verified=True,
                               weights=family.weights)


def _defined_at(endo, value):
    ring = endo.field.ring()
    for comp in (endo.p1, endo.p2):
        for c in comp.terms.values():
            if ring.valuation_at(c, value) < 0:
                return False
    return True


def specialize_endo(endo, value):
    """Evaluate the parameter, landing in the residue field plane."""
    ring = endo.field.ring()
    return endo.map_coeffs(lambda c: ring.eval_at(c, value),
                           endo.field.base)


def verify_family(gens, report, sample_count=10):
    """True when the linearization audit passes, False otherwise.

    Checks the symbolic conjugation identity per generator, that neither
    conjugator direction keeps a parameter denominator, and that
    specializing the parameter at several points reproduces rho.
    """
    try:
        if isinstance(gens, TorusFamily):
            _audit_torus(gens, report, sample_count)
        else:
            _audit_family(gens, report, sample_count)
    except FamilyValidationError:
        return False
    return True


_TORUS_SAMPLES = (2, -1, 3, -2, 5, 4, -3, 7, -4, 6)


def _audit_torus(family, report, sample_count=10):
    conj = report.conjugator
    field = conj.fwd.field
    bring = field.base.ring()
    w1, w2 = family.weights
    for endo in (conj.fwd, conj.inv):
        if not _denominator_free(endo):
            raise FamilyValidationError("conjugator keeps a parameter pole")
    correction = conj.fwd.compose(family.conjugator.fwd)
    if not is_torus_equivariant(correction, w1, w2):
        raise FamilyValidationError(
            "conjugation identity fails symbolically")
    picked = 0
    candidate = 0
    while picked < sample_count and candidate < 20 + sample_count:
        value = bring.from_int((candidate + 1) // 2 * (-1) ** candidate)
        s = bring.from_int(_TORUS_SAMPLES[candidate % len(_TORUS_SAMPLES)])
        candidate += 1
        member = family.member(s)
        if not _defined_at(member, value):
            continue
        picked += 1
        fwd = specialize_endo(conj.fwd, value)
        inv = specialize_endo(conj.inv, value)
        if not fwd.compose(inv).is_identity():
            raise FamilyValidationError(
                "specialized conjugator is not invertible")
        rho = AffineMap.diagonal(field.base, bring.pow(s, w1),
                                 bring.pow(s, w2))
        gv = specialize_endo(member, value)
        if fwd.compose(gv).compose(inv) != rho.to_endo():
            raise FamilyValidationError(
                "specialization disagrees with the linear form")
    if picked == 0:
        raise FamilyValidationError("no parameter value avoids all poles")
    return True


def _audit_family(gens, report, sample_count=10):
    gens = [_as_endo(g) for g in gens]
    conj = report.conjugator
    field = conj.fwd.field
    bring = field.base.ring()
    if len(gens) != len(report.rho):
        raise FamilyValidationError("generator and rho counts differ")
    for g, rho in zip(gens, report.rho):
        lifted = lift_affine(rho, field).to_endo()
        if conj.fwd.compose(g).compose(conj.inv) != lifted:
            raise FamilyValidationError(
                "conjugation identity fails symbolically")
    for endo in (conj.fwd, conj.inv):
        if not _denominator_free(endo):
            raise FamilyValidationError("conjugator keeps a parameter pole")
    picked = 0
    candidate = 0
    while picked < sample_count and candidate < 20 + sample_count:
        value = bring.from_int((candidate + 1) // 2 * (-1) ** candidate)
        candidate += 1
        if not all(_defined_at(g, value) for g in gens):
            continue
        picked += 1
        fwd = specialize_endo(conj.fwd, value)
        inv = specialize_endo(conj.inv, value)
        if not fwd.compose(inv).is_identity():
            raise FamilyValidationError(
                "specialized conjugator is not invertible")
        for g, rho in zip(gens, report.rho):
            gv = specialize_endo(g, value)
            if fwd.compose(gv).compose(inv) != rho.to_endo():
                raise FamilyValidationError(
                    "specialization disagrees with the linear form")
    if picked == 0:
        raise FamilyValidationError("no parameter value avoids all poles")
    return True
