"""Reduction of plane polynomial maps to alternating words.

Every polynomial automorphism of the plane factors as

    f = a_{m+1} . e_m . ... . e_2 . a_2 . e_1 . a_1

with affine letters a_j, triangular letters e_j of degree >= 2, and every
interior affine (a_2 .. a_m) outside the lower-triangular subgroup S.  The
syllable count m and the degree sequence (deg e_1, .., deg e_m) are
invariants of f; the letters themselves are free up to sliding an element
of S across each interface.

decompose() peels letters greedily off the top degree.  A map on which the
peeling stalls is not an automorphism, and that is the membership test: no
Jacobian criterion is consulted anywhere.
"""

from dataclasses import dataclass

from .errors import DegreeTooLow, NotAnAutomorphism
from .plane import (AffineMap, BiPoly, ElementaryMap, PlaneAut, PlaneEndo,
                    bipow, extract_affine)
from . import unipoly as up


def _form_ratio(ring, f1, f2):
    """Scalar lam with f1 == lam * f2 as term dicts, or None."""
    if set(f1) != set(f2):
        return None
    key = next(iter(f2))
    lam = ring.div(f1[key], f2[key])
    for k, v in f2.items():
        if not ring.eq(f1[k], ring.mul(lam, v)):
            return None
    return lam


def _peel(endo):
    """Greedy left-letter peeling; returns outermost-first tagged letters."""
    field = endo.field
    ring = field.ring()
    p1, p2 = endo.p1, endo.p2
    letters = []
    pow_cache = None
    form_cache = None
    while True:
        d1, d2 = p1.degree, p2.degree
        if d1 <= 0 or d2 <= 0:
            raise NotAnAutomorphism("component degenerates to a constant")
        if d1 <= 1 and d2 <= 1:
            aff = extract_affine(PlaneEndo(field, p1, p2))
            if aff is None:
                raise NotAnAutomorphism("affine part has singular linear part")
            letters.append(("A", aff))
            return letters
        if d1 < d2:
            letters.append(("A", AffineMap.swap(field)))
            p1, p2 = p2, p1
            pow_cache = form_cache = None
            continue
        if d1 == d2:
            lam = _form_ratio(ring, p1.leading_terms(), p2.leading_terms())
            if lam is None:
                raise NotAnAutomorphism("equal-degree leading forms not proportional")
            letters.append(("A", AffineMap(
                field, ((ring.one, lam), (ring.zero, ring.one)),
                (ring.zero, ring.zero), check=False)))
            p1 = p1.plus_scaled(ring.neg(lam), p2)
            continue
        # d1 > d2 >= 1: kill the top of p1 with a power of p2
        if d1 % d2 != 0:
            raise NotAnAutomorphism("top degrees have non-integral ratio")
        k = d1 // d2
        if pow_cache is None:
            pow_cache = {1: p2}
            form_cache = {1: BiPoly(field, p2.leading_terms())}
        f2k = bipow(form_cache[1], k, form_cache)
        lam = _form_ratio(ring, p1.leading_terms(), f2k.terms)
        if lam is None:
            raise NotAnAutomorphism("leading form is not a power of the lower one")
        letters.append(("E", ElementaryMap.shear(
            field, (ring.zero,) * k + (lam,))))
        p1 = p1.plus_scaled(ring.neg(lam), bipow(p2, k, pow_cache))


def _push_merge(letters, field):
    """Collapse a tagged letter string to strict A/E alternation."""
    stack = []
    for item in letters:
        stack.append(item)
        while len(stack) >= 2:
            xt, x = stack[-2]
            yt, y = stack[-1]
            if xt == "A" and yt == "A":
                merged = ("A", x.compose(y))
            elif xt == "E" and yt == "E":
                e = x.compose(y)
                merged = ("A", e.to_affine()) if e.in_S() else ("E", e)
            elif xt == "A" and yt == "E" and x.in_S():
                merged = ("E", ElementaryMap.from_affine(x).compose(y))
            elif xt == "E" and yt == "A" and y.in_S():
                merged = ("E", x.compose(ElementaryMap.from_affine(y)))
            else:
                break
            stack.pop()
            stack.pop()
            stack.append(merged)
    if len(stack) == 1 and stack[0][0] == "E" and stack[0][1].in_S():
        stack[0] = ("A", stack[0][1].to_affine())
    return stack


@dataclass(frozen=True)
class TameDecomposition:
    """Alternating word for an automorphism, innermost letter first.

    affines[0] is applied first; elementaries[j] sits between affines[j]
    and affines[j+1].  len(affines) == len(elementaries) + 1 always.
    """

    field: object
    affines: tuple
    elementaries: tuple

    @property
    def syllables(self):
        return len(self.elementaries)

    def polydegree(self):
        return tuple(e.syl_degree() for e in self.elementaries)

    def compose_endo(self):
        acc = self.affines[0].to_endo()
        for j, e in enumerate(self.elementaries):
            acc = e.to_endo().compose(acc)
            acc = self.affines[j + 1].to_endo().compose(acc)
        return acc

    def inverse_endo(self):
        acc = self.affines[-1].inverse().to_endo()
        for j in range(len(self.elementaries) - 1, -1, -1):
            acc = self.elementaries[j].inverse().to_endo().compose(acc)
            acc = self.affines[j].inverse().to_endo().compose(acc)
        return acc

    def interface_shift(self, j, s, side="right"):
        """Slide s in S across an interface of elementaries[j].

        side='right': (e_j, a_j)     -> (e_j . s, s^-1 . a_j)
        side='left':  (a_{j+1}, e_j) -> (a_{j+1} . s, s^-1 . e_j)
        The composed map is unchanged; letter shapes are not.
        """
        if not s.in_S():
            raise NotAnAutomorphism("interface shifts must come from S")
        affines = list(self.affines)
        elems = list(self.elementaries)
        se = ElementaryMap.from_affine(s)
        si = ElementaryMap.from_affine(s.inverse())
        if side == "right":
            elems[j] = elems[j].compose(se)
            affines[j] = s.inverse().compose(affines[j])
        else:
            affines[j + 1] = affines[j + 1].compose(s)
            elems[j] = si.compose(elems[j])
        return TameDecomposition(self.field, tuple(affines), tuple(elems))

    def __str__(self):
        parts = ["a%d=%s" % (j + 1, a.to_endo()) for j, a in enumerate(self.affines)]
        parts += ["e%d=%s" % (j + 1, e.to_endo())
                  for j, e in enumerate(self.elementaries)]
        return "; ".join(parts)


def decompose(f):
    """Alternating word of f, or NotAnAutomorphism."""
    if isinstance(f, PlaneAut):
        f = f.fwd
    field = f.field
    word = _push_merge(_peel(f), field)
    if not word:
        return TameDecomposition(field, (AffineMap.identity(field),), ())
    affines = []
    elems = []
    idx = len(word) - 1
    if word[idx][0] == "A":
        affines.append(word[idx][1])
        idx -= 1
    else:
        affines.append(AffineMap.identity(field))
    while idx >= 0:
        tag, item = word[idx]
        assert tag == "E", "alternation broken by merge pass"
        elems.append(item)
        idx -= 1
        if idx >= 0 and word[idx][0] == "A":
            affines.append(word[idx][1])
            idx -= 1
        else:
            affines.append(AffineMap.identity(field))
    for a in affines[1:-1]:
        assert not a.in_S(), "interior affine letter landed in S"
    return TameDecomposition(field, tuple(affines), tuple(elems))


def polydegree(f):
    return decompose(f).polydegree()


def invert(f, check=False):
    """PlaneAut carrying f and its exact inverse."""
    if isinstance(f, PlaneAut):
        return f
    dec = decompose(f)
    return PlaneAut(f, dec.inverse_endo(), check=check)


def is_automorphism(f):
    try:
        decompose(f)
        return True
    except NotAnAutomorphism:
        return False


@dataclass(frozen=True)
class AnchorLine:
    """A line through the origin, as the slope chart value of z2/z1.

    value None means the vertical line z1 = 0 (the infinite chart point).
    """

    field: object
    value: object

    @property
    def is_infinite(self):
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, AnchorLine):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.field.ring().eq(self.value, other.value)

    __hash__ = None

    def __str__(self):
        if self.is_infinite:
            return "infinity"
        return self.field.ring().to_str(self.value)

    def to_json(self):
        return "infinity" if self.is_infinite else self.field.ring().to_json(self.value)


def anchor_line(f):
    """Slope of the line contracted-to by the top form of the dominant
    component.  Requires deg f >= 2."""
    if isinstance(f, PlaneAut):
        f = f.fwd
    field = f.field
    ring = field.ring()
    if f.degree() < 2:
        raise DegreeTooLow("anchor line needs a map of degree >= 2")
    comp = f.p1 if f.p1.degree >= f.p2.degree else f.p2
    d = comp.degree
    form = comp.leading_terms()
    top = form.get((d, 0))
    if top is None or ring.is_zero(top):
        if set(form) != {(0, d)}:
            raise NotAnAutomorphism("leading form is not a power of a line")
        return AnchorLine(field, ring.zero)
    if len(form) == 1:
        return AnchorLine(field, None)
    rho = ring.div(form[(d - 1, 1)] if (d - 1, 1) in form else ring.zero,
                   ring.mul(ring.from_int(d), top))
    if ring.is_zero(rho):
        raise NotAnAutomorphism("leading form is not a power of a line")
    ell = BiPoly(field, {(1, 0): ring.one, (0, 1): rho})
    check = bipow(ell, d).scale(top)
    if check.terms != form:
        raise NotAnAutomorphism("leading form is not a power of a line")
    return AnchorLine(field, ring.neg(ring.inv(rho)))


def split_canonical(e):
    """Factor e = e' . s with e' = (z1 + q(z2), z2), q(0) = q'(0) = 0,
    and s affine in S.  Needs deg e >= 2."""
    field = e.field
    ring = field.ring()
    if e.in_S():
        raise DegreeTooLow("only degree >= 2 letters have a canonical split")
    binv = ring.inv(e.b)
    r = up.pshift_scale(ring, e.p, binv, ring.neg(ring.mul(binv, e.c)))
    r0 = r[0] if len(r) > 0 else ring.zero
    r1 = r[1] if len(r) > 1 else ring.zero
    q = (ring.zero, ring.zero) + r[2:]
    e_prime = ElementaryMap.shear(field, q)
    s = AffineMap(field,
                  ((e.a, ring.mul(r1, e.b)), (ring.zero, e.b)),
                  (ring.add(r0, ring.mul(r1, e.c)), e.c), check=False)
    assert e_prime.compose(ElementaryMap.from_affine(s)) == e
    return e_prime, s
