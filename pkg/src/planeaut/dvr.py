"""Pole removal for conjugating maps over a rational function field.

Fixing a center turns the coefficient field into a local ring; a map
whose coefficients are regular there reduces to a plane endomorphism
over the residue field.  When that reduction degenerates, its image
lands on a curve cut out by one coordinate of a residue-field
automorphism, and rescaling that coordinate by a uniformizer power
strictly lowers the combined pole order of the inverse components.
Iterating reaches a map that is invertible over the local ring, i.e.
pole-free at the center.

Every step multiplies on the left by tau^{-1} . gamma . tau with gamma
diagonal and tau diagonalizing the given linear maps, so conjugation
relations against those maps survive unchanged.  Equivalently it
multiplies on the right by a map commuting with whatever the input
conjugates those linear maps from; that right factor is what the trace
records.
"""

from dataclasses import dataclass

from .decompose import _form_ratio, invert
from .equivariant import is_torus_equivariant, torus_weight_of
from .errors import (CompositionNotIntegral, NotACoordinate, NotDegenerate,
                     NotIntegralInput, NotInvariantLine, NotLinearizing,
                     NotNormalized, ZeroEndomorphism)
from .fields import INF
from .groebner import MPolyRing, PolyContext, eliminate, madd, mtotal_deg, mvar
from .groups import affine_order
from .linalg import solve
from .plane import AffineMap, BiPoly, PlaneAut, PlaneEndo, extract_affine


def _poly_valuation(p, ctx):
    ring = p.field.ring()
    return min((ring.valuation_at(c, ctx.center) for c in p.terms.values()),
               default=INF)


def endo_valuation(endo, ctx):
    """Least coefficient valuation at the center, over both components."""
    v = min(_poly_valuation(endo.p1, ctx), _poly_valuation(endo.p2, ctx))
    if v is INF:
        raise ZeroEndomorphism("valuation of the zero map")
    return v


def is_integral(endo, ctx):
    return endo_valuation(endo, ctx) >= 0


def residue_endo(endo, ctx):
    """Reduction at the center, as a map over the residue field."""
    ring = endo.field.ring()
    return endo.map_coeffs(lambda c: ring.residue_at(c, ctx.center),
                           ctx.base)


def lift_poly(p, field):
    ring = field.ring()
    return p.map_coeffs(ring.from_base, field)


def lift_endo(endo, field):
    ring = field.ring()
    return endo.map_coeffs(ring.from_base, field)


def lift_affine(aff, field):
    ring = field.ring()
    m = tuple(tuple(ring.from_base(c) for c in row) for row in aff.m)
    t = tuple(ring.from_base(c) for c in aff.t)
    return AffineMap(field, m, t, check=False)


def _endo_pair(psi):
    """Forward and inverse endomorphisms of psi, inverting if needed."""
    if isinstance(psi, PlaneAut):
        return psi.fwd, psi.inv
    aut = invert(psi)
    return aut.fwd, aut.inv


@dataclass(frozen=True)
class EndoValuationReport:
    """Valuations of an invertible map at a center: v of the map itself
    and the pole orders w1, w2 of the two inverse components."""

    v: int
    w1: int
    w2: int

    @property
    def w(self):
        return self.w1 + self.w2

    @property
    def integral(self):
        return self.v >= 0 and self.w1 == 0 and self.w2 == 0


def w_invariant(psi, ctx):
    """Pole orders of the inverse components, clamped at zero.

    Defined for maps that are themselves regular at the center; the
    combined order w1 + w2 vanishes exactly when the map is invertible
    over the local ring, and it is the descent counter of removal.
    """
    fwd, inv = _endo_pair(psi)
    v = endo_valuation(fwd, ctx)
    if v < 0:
        raise NotIntegralInput("the map itself has a coefficient pole")
    v1 = _poly_valuation(inv.p1, ctx)
    v2 = _poly_valuation(inv.p2, ctx)
    w1 = 0 if v1 is INF or v1 >= 0 else -v1
    w2 = 0 if v2 is INF or v2 >= 0 else -v2
    return EndoValuationReport(v, w1, w2)


def normalize_valuation(psi, ctx):
    """Scale both components by a uniformizer power so the least
    coefficient valuation becomes zero.  Returns (alpha, normalized)
    with normalized = psi composed with alpha on the right; the scalar
    factor commutes with any linear map, so alpha commutes with
    whatever psi conjugates linear maps from."""
    fwd, inv = _endo_pair(psi)
    field = fwd.field
    ring = field.ring()
    v = endo_valuation(fwd, ctx)
    if v == 0:
        ident = AffineMap.identity(field).to_endo()
        return PlaneAut(ident, ident), PlaneAut(fwd, inv)
    t = ctx.uniformizer().payload
    s = ring.pow(t, -v) if v < 0 else ring.inv(ring.pow(t, v))
    beta = AffineMap.diagonal(field, s, s).to_endo()
    beta_inv = AffineMap.diagonal(field, ring.inv(s), ring.inv(s)).to_endo()
    alpha = PlaneAut(inv.compose(beta).compose(fwd),
                     inv.compose(beta_inv).compose(fwd))
    return alpha, PlaneAut(beta.compose(fwd), inv.compose(beta_inv))


def image_ideal_generators(psi, ctx):
    """Reduced lex basis of the ideal of the reduction's image closure,
    with source variables eliminated, as polynomials over the residue
    field.  Empty means the reduction is dominant."""
    bar = residue_endo(psi, ctx)
    ring = ctx.base.ring()
    if bar.p1.is_zero() and bar.p2.is_zero():
        raise NotDegenerate("the reduction is the zero map")
    gens = []
    for slot, comp in ((2, bar.p1), (3, bar.p2)):
        g = mvar(ring, 4, slot)
        for (i, j), c in comp.terms.items():
            g = madd(ring, g, {(i, j, 0, 0): ring.neg(c)})
        gens.append(g)
    out = []
    for g in eliminate(ring, gens, 2):
        out.append(BiPoly(ctx.base, {(e[2], e[3]): c for e, c in g.items()}))
    return out


def image_curve_mod_t(psi, ctx):
    """Generator of the image curve of the reduction at the center."""
    if endo_valuation(psi, ctx) != 0:
        raise NotNormalized("reduce only maps of least valuation zero")
    gens = image_ideal_generators(psi, ctx)
    if not gens:
        raise NotDegenerate("the reduction is dominant, no image curve")
    return gens[0]


def _semiinvariant_ratio(f, rho):
    """lam with f . rho == lam * f, else NotInvariantLine."""
    ring = f.field.ring()
    e = rho.to_endo()
    comp = f.substitute(e.p1, e.p2)
    lam = _form_ratio(ring, comp.terms, f.terms)
    if lam is None:
        raise NotInvariantLine("the curve is not stable under the action")
    return lam


def _reynolds(h, rho, lam_h, order):
    """Average h against the character lam_h along the rho powers."""
    field = h.field
    ring = field.ring()
    e = rho.to_endo()
    acc = h
    cur = h
    fac = ring.one
    lam_inv = ring.inv(lam_h)
    for _ in range(order - 1):
        cur = cur.substitute(e.p1, e.p2)
        fac = ring.mul(fac, lam_inv)
        acc = acc.plus_scaled(fac, cur)
    return acc.scale(ring.inv(ring.from_int(order)))


def _solve_mate(f):
    """h of degree < deg f with d1(f) d2(h) - d2(f) d1(h) == 1, or None."""
    field = f.field
    ring = field.ring()
    d = f.degree
    f1 = f.d_z1()
    f2 = f.d_z2()
    unknowns = [(i, j) for i in range(d) for j in range(d)
                if 1 <= i + j <= d - 1]
    columns = []
    support = set()
    for (i, j) in unknowns:
        contrib = BiPoly.zero(field)
        if j:
            contrib = contrib + f1.shift_exponents(i, j - 1).scale(
                ring.from_int(j))
        if i:
            contrib = contrib - f2.shift_exponents(i - 1, j).scale(
                ring.from_int(i))
        columns.append(contrib)
        support.update(contrib.terms)
    support.add((0, 0))
    mons = sorted(support)
    rows = [[col.coeff(i, j) for col in columns] for (i, j) in mons]
    rhs = [ring.one if (i, j) == (0, 0) else ring.zero for (i, j) in mons]
    x = solve(ring, rows, rhs)
    if x is None:
        return None
    terms = {m: c for m, c in zip(unknowns, x) if not ring.is_zero(c)}
    return BiPoly(field, terms)


def coordinate_mate(f, rhos=(), weights=None):
    """Mate h and automorphism tau = (f, h) with unit Jacobian, chosen so
    tau conjugates each given linear map to a diagonal one.

    rhos are linear finite-order maps over f's field; weights, if given,
    are torus weights both components must respect.  Raises
    NotInvariantLine when f is not semiinvariant, NotACoordinate when no
    polynomial mate exists.
    """
    field = f.field
    ring = field.ring()
    if f.degree < 1:
        raise NotACoordinate("a constant cuts out no curve")
    lams = [_semiinvariant_ratio(f, rho) for rho in rhos]
    if weights is not None:
        w_f = torus_weight_of(f, weights[0], weights[1])
        if w_f is None:
            raise NotInvariantLine("the curve is not weight homogeneous")
    if f.degree == 1:
        a = f.coeff(1, 0)
        b = f.coeff(0, 1)
        if not ring.is_zero(a):
            h = BiPoly(field, {(0, 1): ring.inv(a)})
        else:
            h = BiPoly(field, {(1, 0): ring.neg(ring.inv(b))})
    else:
        h = _solve_mate(f)
        if h is None:
            raise NotACoordinate("no polynomial completes the curve")
    for rho, lam in zip(rhos, lams):
        lam_h = ring.div(rho.det(), lam)
        h = _reynolds(h, rho, lam_h, affine_order(rho))
    if weights is not None:
        w_h = weights[0] + weights[1] - w_f
        kept = {(i, j): c for (i, j), c in h.terms.items()
                if i * weights[0] + j * weights[1] == w_h}
        h = BiPoly(field, kept)
    jac = f.d_z1() * h.d_z2() - f.d_z2() * h.d_z1()
    if jac != BiPoly.const(field, ring.one):
        raise NotACoordinate("character averaging destroyed the mate")
    try:
        tau = invert(PlaneEndo(field, f, h))
    except Exception as ex:
        raise NotACoordinate("the pair (curve, mate) does not invert: %s"
                             % ex) from ex
    for rho in rhos:
        conj = tau.fwd.compose(rho.to_endo()).compose(tau.inv)
        aff = extract_affine(conj)
        if aff is None or not ring.is_zero(aff.m[0][1]) \
                or not ring.is_zero(aff.m[1][0]):
            raise NotInvariantLine("conjugated action failed to diagonalize")
    return h, tau


@dataclass(frozen=True)
class KRStep:
    """One removal round: the pole order it started from, which curve
    was found, how it was completed, the uniformizer exponents pulled
    out of each coordinate, and the commuting right factor applied."""

    w_before: int
    curve: object      # BiPoly over the residue field
    mate: object       # BiPoly over the residue field
    tau: object        # PlaneAut over the residue field
    scalings: tuple    # (r1, r2)
    alpha: object      # PlaneAut over the function field
    result: object     # PlaneAut over the function field


def kr_step(psi, ctx, rhos=(), weights=None):
    """Single removal round on an integral psi with degenerate reduction.

    rhos are the linear maps (over the residue field) that psi is
    expected to keep conjugated; the step works through a coordinate
    change diagonalizing them, so those relations are preserved.  The
    returned step carries both the new map and the right factor alpha
    with result = psi . alpha.
    """
    fwd, inv = _endo_pair(psi)
    field = fwd.field
    ring = field.ring()
    if endo_valuation(fwd, ctx) != 0:
        raise NotNormalized("the map needs valuation normalization first")
    report = w_invariant(PlaneAut(fwd, inv), ctx)
    gens = image_ideal_generators(fwd, ctx)
    if not gens:
        raise NotDegenerate("the reduction is dominant, nothing to remove")
    err = None
    pair = None
    for f in gens:
        try:
            pair = (f,) + coordinate_mate(f, rhos, weights)
            break
        except (NotInvariantLine, NotACoordinate) as ex:
            err = ex
    if pair is None:
        raise err
    f, h, tau_base = pair
    tau = PlaneAut(lift_endo(tau_base.fwd, field),
                   lift_endo(tau_base.inv, field))
    taupsi = tau.fwd.compose(fwd)
    r1 = _poly_valuation(taupsi.p1, ctx)
    r2 = _poly_valuation(taupsi.p2, ctx)
    assert r1 is not INF and r2 is not INF
    if r1 < 1:
        raise NotDegenerate("the invariant curve absorbs no uniformizer")
    t = ctx.uniformizer().payload
    gamma = AffineMap.diagonal(field,
                               ring.inv(ring.pow(t, r1)),
                               ring.inv(ring.pow(t, r2)) if r2 else ring.one)
    gamma_inv = AffineMap.diagonal(field,
                                   ring.pow(t, r1),
                                   ring.pow(t, r2) if r2 else ring.one)
    mult = tau.inv.compose(gamma.to_endo()).compose(tau.fwd)
    _check_multiplier(mult, field, rhos, weights)
    result = PlaneAut(mult.compose(fwd),
                      inv.compose(tau.inv).compose(gamma_inv.to_endo())
                         .compose(tau.fwd))
    alpha = PlaneAut(inv.compose(result.fwd), result.inv.compose(fwd))
    return KRStep(report.w, f, h, tau_base, (r1, r2), alpha, result)


def _check_multiplier(mult, field, rhos, weights):
    """The left factor of a step must commute with every conjugation
    target, otherwise the step would break the linearizing identity."""
    for rho in rhos:
        lifted = lift_affine(rho, field).to_endo()
        if mult.compose(lifted) != lifted.compose(mult):
            raise NotLinearizing("step factor fails to commute with the "
                                 "linear part")
    if weights is not None and not is_torus_equivariant(
            mult, weights[0], weights[1]):
        raise NotLinearizing("step factor breaks the torus weights")


@dataclass(frozen=True)
class PoleRemoval:
    """Final map regular both ways at the center, the commuting right
    factor that got it there, and the per-round trace."""

    result: object     # PlaneAut
    alpha: object      # PlaneAut, result = input . alpha
    steps: tuple
    initial_weight: int


def remove_pole(psi, ctx, rhos=(), weights=None):
    """Compose psi with commuting right factors until it and its
    inverse are both regular at the center.

    The combined inverse pole order drops by at least one per round,
    which caps the loop; failure to progress means the input did not
    conjugate the action as promised and raises NotLinearizing.
    """
    fwd0, inv0 = _endo_pair(psi)
    _, cur = normalize_valuation(PlaneAut(fwd0, inv0), ctx)
    w = w_invariant(cur, ctx).w
    w0 = w
    steps = []
    while w > 0:
        if len(steps) >= w0:
            raise NotLinearizing("pole removal exceeded its weight budget")
        step = kr_step(cur, ctx, rhos, weights)
        cur = step.result
        if endo_valuation(cur.fwd, ctx) != 0:
            _, cur = normalize_valuation(cur, ctx)
        w_next = w_invariant(cur, ctx).w
        if w_next >= w:
            raise NotLinearizing("pole removal made no progress")
        steps.append(step)
        w = w_next
    if endo_valuation(cur.fwd, ctx) < 0 or endo_valuation(cur.inv, ctx) < 0:
        raise NotLinearizing("removal ended on a non-integral map")
    alpha = PlaneAut(inv0.compose(cur.fwd), cur.inv.compose(fwd0))
    return PoleRemoval(cur, alpha, tuple(steps), w0)


def perturbation_bound(letters, ctx):
    """Valuation margin r: adding any terms of valuation >= r to the
    letter coefficients keeps the composed word integral at the center.

    The margin is s*d*v0 with s the generic coefficient slot count, d
    the largest symbol degree any composed coefficient reaches, and v0
    the worst coefficient pole among the letters.
    """
    if not letters:
        return 0
    field = letters[0].field
    ring = field.ring()
    comp = letters[0]
    for entry in letters[1:]:
        comp = comp.compose(entry)
    if endo_valuation(comp, ctx) < 0:
        raise CompositionNotIntegral("the unperturbed word is not integral")
    v0 = 0
    for entry in letters:
        v = endo_valuation(entry, ctx)
        if v < -v0:
            v0 = -v
    if v0 == 0:
        return 0
    support = set()
    for entry in letters:
        support.update(entry.p1.terms)
        support.update(entry.p2.terms)
    slots = sorted(support)
    m = len(letters)
    s = 2 * m * len(slots)
    from .fields import RAT
    mp = MPolyRing(RAT, s)
    ctx_poly = PolyContext(mp)
    generic = []
    k = 0
    for _ in range(m):
        comps = []
        for _ in range(2):
            terms = {}
            for mono in slots:
                terms[mono] = mp.var(k)
                k += 1
            comps.append(BiPoly(ctx_poly, terms))
        generic.append(PlaneEndo(ctx_poly, comps[0], comps[1]))
    gcomp = generic[0]
    for entry in generic[1:]:
        gcomp = gcomp.compose(entry)
    d = 0
    for cf in list(gcomp.p1.terms.values()) + list(gcomp.p2.terms.values()):
        d = max(d, mtotal_deg(cf))
    return s * d * v0
