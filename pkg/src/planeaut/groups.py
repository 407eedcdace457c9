"""Finite-order automorphisms: reduction into a factor and linearization.

An automorphism of finite order is conjugate either to an affine map or to
a triangular one; cyclic_reduce finds the conjugator by cyclically
shortening the alternating word (a word that stays alternating with
length >= 2 under rotation has infinite order).  linearize_over_field then
pushes the reduced form down to a linear map: a fixed-point translation
for the affine case, a translation plus a shear in z1 for the triangular
case, with the shear coefficients p_r / (beta^r - alpha) available exactly
when no resonant coefficient survives.  Several commuting generators are
handled sequentially with one shared conjugator.
"""

from dataclasses import dataclass

from .decompose import decompose
from .errors import GroupReductionFailed, NotFiniteOrder
from .plane import (AffineMap, ElementaryMap, PlaneAut, PlaneEndo,
                    extract_affine)
from . import unipoly as up


def _as_endo(g):
    return g.fwd if isinstance(g, PlaneAut) else g


@dataclass(frozen=True)
class ReducedForm:
    """Outcome of cyclic reduction: reduced = conjugator^{-1} . g . conjugator."""

    kind: str                 # 'affine' or 'elementary'
    affine: object
    elementary: object
    conjugator: PlaneAut

    def reduced_endo(self):
        if self.kind == "affine":
            return self.affine.to_endo()
        return self.elementary.to_endo()


def cyclic_reduce(g):
    """Conjugate g into the affine or triangular factor, or raise
    NotFiniteOrder when the word is already cyclically reduced of
    alternating length >= 2."""
    g = _as_endo(g)
    field = g.field
    conj_fwd = PlaneEndo.identity(field)
    conj_inv = PlaneEndo.identity(field)
    cap = None
    steps = 0
    while True:
        dec = decompose(g)
        m = dec.syllables
        if cap is None:
            cap = 2 * m + 2
        if steps > cap:
            raise NotFiniteOrder("cyclic reduction failed to terminate")
        steps += 1
        if m == 0:
            return ReducedForm("affine", dec.affines[0], None,
                               PlaneAut(conj_fwd, conj_inv))
        a1 = dec.affines[0]
        atop = dec.affines[m]
        if not a1.in_S():
            c_fwd = a1.to_endo()
            c_inv = a1.inverse().to_endo()
        elif atop.in_S():
            if m == 1:
                e = ElementaryMap.from_affine(atop).compose(
                    dec.elementaries[0]).compose(
                    ElementaryMap.from_affine(a1))
                return ReducedForm("elementary", None, e,
                                   PlaneAut(conj_fwd, conj_inv))
            c = dec.elementaries[0].compose(ElementaryMap.from_affine(a1))
            c_fwd = c.to_endo()
            c_inv = c.inverse().to_endo()
        else:
            raise NotFiniteOrder(
                "cyclically reduced word of alternating length >= 2")
        g = c_fwd.compose(g).compose(c_inv)
        conj_fwd = conj_fwd.compose(c_inv)
        conj_inv = c_fwd.compose(conj_inv)


def _order_cap(field):
    m = field.ring().torsion_exponent()
    return 8 * m * m + 2


def affine_order(a, cap=None):
    """Order of an affine map, or NotFiniteOrder past the cap."""
    if cap is None:
        cap = _order_cap(a.field)
    acc = a
    n = 1
    while not acc.is_identity():
        acc = acc.compose(a)
        n += 1
        if n > cap:
            raise NotFiniteOrder("affine map order exceeds the field cap")
    return n


def scalar_order(ring, a, cap):
    acc = a
    n = 1
    while not ring.eq(acc, ring.one):
        acc = ring.mul(acc, a)
        n += 1
        if n > cap:
            raise NotFiniteOrder("unit is not a root of unity")
    return n


def eigen_diagonalize(field, m):
    """(P, (w1, w2)) with P^{-1} m P = diag(w1, w2) over this field, or
    None when the characteristic roots live in an extension.  Raises
    NotFiniteOrder for a non-semisimple double root."""
    ring = field.ring()
    a, b = m[0]
    c, d = m[1]
    tr = ring.add(a, d)
    det = ring.sub(ring.mul(a, d), ring.mul(b, c))
    roots = []
    for w in ring.roots_of_unity(ring.torsion_exponent()):
        chi = ring.add(ring.sub(ring.mul(w, w), ring.mul(tr, w)), det)
        if ring.is_zero(chi) and not any(ring.eq(w, r) for r in roots):
            roots.append(w)
    if not roots:
        return None
    if len(roots) == 1:
        w = roots[0]
        scalar = (ring.eq(a, w) and ring.eq(d, w)
                  and ring.is_zero(b) and ring.is_zero(c))
        if not scalar:
            # double characteristic root with a nontrivial nilpotent part
            raise NotFiniteOrder("unipotent part forces infinite order")
        return AffineMap.identity(field), (w, w)

    def eigvec(w):
        # rows of m - wI are proportional; a kernel vector comes from one
        r1 = (ring.sub(a, w), b)
        if not (ring.is_zero(r1[0]) and ring.is_zero(r1[1])):
            return (ring.neg(r1[1]), r1[0])
        return (ring.neg(ring.sub(d, w)), c) if not ring.is_zero(c) \
            else (ring.one, ring.zero)

    v1 = eigvec(roots[0])
    v2 = eigvec(roots[1])
    p = AffineMap(field, ((v1[0], v2[0]), (v1[1], v2[1])),
                  (ring.zero, ring.zero))
    return p, (roots[0], roots[1])


def _linearize_single(g):
    """(fwd, inv) endo pair phi with phi . g . phi^{-1} linear."""
    field = g.field
    ring = field.ring()
    red = cyclic_reduce(g)
    phi_fwd = red.conjugator.inv
    phi_inv = red.conjugator.fwd
    if red.kind == "affine":
        a = red.affine
        n = affine_order(a, _order_cap(field))
        # average the orbit of the origin to get a fixed point
        pt = (ring.zero, ring.zero)
        sx, sy = ring.zero, ring.zero
        for _ in range(n):
            sx = ring.add(sx, pt[0])
            sy = ring.add(sy, pt[1])
            pt = a.apply(pt[0], pt[1])
        ninv = ring.inv(ring.from_int(n))
        bx, by = ring.mul(ninv, sx), ring.mul(ninv, sy)
        t_in = AffineMap.translation(field, bx, by)
        t_out = AffineMap.translation(field, ring.neg(bx), ring.neg(by))
        lin = t_out.compose(a).compose(t_in)
        assert ring.is_zero(lin.t[0]) and ring.is_zero(lin.t[1])
        phi_fwd = t_out.to_endo().compose(phi_fwd)
        phi_inv = phi_inv.compose(t_in.to_endo())
        diag = eigen_diagonalize(field, lin.m)
        if diag is not None:
            p, _ = diag
            phi_fwd = p.inverse().to_endo().compose(phi_fwd)
            phi_inv = phi_inv.compose(p.to_endo())
        return phi_fwd, phi_inv
    e = red.elementary
    alpha, beta, beta0 = e.a, e.b, e.c
    cap = _order_cap(field)
    scalar_order(ring, alpha, cap)
    scalar_order(ring, beta, cap)
    if ring.eq(beta, ring.one):
        if not ring.is_zero(beta0):
            raise NotFiniteOrder("unit lower translation never closes up")
        c = ring.zero
        p_shift = e.p
    else:
        c = ring.div(beta0, ring.sub(ring.one, beta))
        p_shift = up.pshift_var(ring, e.p, c)
    h = []
    power = ring.one  # beta^r
    for r in range(len(p_shift)):
        pr = p_shift[r]
        denom = ring.sub(power, alpha)
        if ring.is_zero(denom):
            if not ring.is_zero(pr):
                raise NotFiniteOrder(
                    "resonant triangular coefficient survives at exponent %d" % r)
            h.append(ring.zero)
        else:
            h.append(ring.div(pr, denom))
        power = ring.mul(power, beta)
    h = up.ptrim(ring, h)
    t_in = AffineMap.translation(field, ring.zero, c)
    t_out = AffineMap.translation(field, ring.zero, ring.neg(c))
    sh_in = ElementaryMap.shear(field, h)
    sh_out = sh_in.inverse()
    phi_fwd = sh_out.to_endo().compose(t_out.to_endo()).compose(phi_fwd)
    phi_inv = phi_inv.compose(t_in.to_endo()).compose(sh_in.to_endo())
    return phi_fwd, phi_inv


@dataclass(frozen=True)
class Linearization:
    """Shared conjugator phi with phi . g_i . phi^{-1} = rho_i linear."""

    rho: tuple                # AffineMap per generator, zero translation
    conjugator: PlaneAut      # phi as (fwd, inv)

    @property
    def diagonal(self):
        ring = self.rho[0].field.ring() if self.rho else None
        return all(ring.is_zero(r.m[0][1]) and ring.is_zero(r.m[1][0])
                   for r in self.rho)


def linearize_over_field(gens):
    """One conjugator linearizing every generator, built sequentially.

    Later steps can in principle disturb earlier generators; if that
    happens the run stops with GroupReductionFailed rather than guessing.
    """
    gens = [_as_endo(g) for g in gens]
    if not gens:
        raise GroupReductionFailed("no generators given")
    field = gens[0].field
    ring = field.ring()
    phi_fwd = PlaneEndo.identity(field)
    phi_inv = PlaneEndo.identity(field)
    work = list(gens)
    for i in range(len(work)):
        if work[i].degree() <= 1 and extract_affine(work[i]) is not None:
            aff = extract_affine(work[i])
            if ring.is_zero(aff.t[0]) and ring.is_zero(aff.t[1]) \
                    and ring.is_zero(aff.m[0][1]) and ring.is_zero(aff.m[1][0]):
                continue  # already diagonal
        f, b = _linearize_single(work[i])
        work = [f.compose(w).compose(b) for w in work]
        phi_fwd = f.compose(phi_fwd)
        phi_inv = phi_inv.compose(b)
        for j in range(i + 1):
            aff = extract_affine(work[j]) if work[j].degree() <= 1 else None
            if aff is None or not (ring.is_zero(aff.t[0])
                                   and ring.is_zero(aff.t[1])):
                raise GroupReductionFailed(
                    "linearizing generator %d disturbed generator %d" % (i, j))
    rho = []
    for w in work:
        aff = extract_affine(w)
        if aff is None:
            raise GroupReductionFailed("reduced generator is not linear")
        rho.append(aff)
    return Linearization(tuple(rho), PlaneAut(phi_fwd, phi_inv))


def verify_linearization(gens, lin):
    """Exact audit: conjugator inverts, rho entries are linear, and each
    phi . g . phi^{-1} equals its rho."""
    phi = lin.conjugator
    if not phi.fwd.compose(phi.inv).is_identity():
        return False
    if not phi.inv.compose(phi.fwd).is_identity():
        return False
    for g, r in zip(gens, lin.rho):
        ring = r.field.ring()
        if not (ring.is_zero(r.t[0]) and ring.is_zero(r.t[1])):
            return False
        lhs = phi.fwd.compose(_as_endo(g)).compose(phi.inv)
        if lhs != r.to_endo():
            return False
    return True


def automorphism_order(g, cap=None):
    """Order of a finite-order automorphism via its linearization."""
    lin = linearize_over_field([g])
    return affine_order(lin.rho[0], cap)
