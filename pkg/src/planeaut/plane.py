"""Bivariate polynomials over a coefficient field and plane maps built
from them.

BiPoly stores a dict mapping exponent pairs (i, j) to nonzero raw scalar
payloads; i counts z1, j counts z2.  Instances are treated as immutable:
every operation returns a fresh object.  PlaneEndo is a pair of BiPoly
components; AffineMap and ElementaryMap are structured shapes with closed
composition formulas, used as the letters of amalgam words.
"""

from .errors import DescriptorMismatch, NotAnAutomorphism, SchemaError
from .fields import FieldElement
from . import unipoly as up


def _check_same_field(a, b):
    if a.field != b.field:
        raise DescriptorMismatch("operands over %s and %s" % (a.field, b.field))


class BiPoly:

    __slots__ = ("field", "terms", "degree")

    def __init__(self, field, terms):
        ring = field.ring()
        clean = {}
        for key, val in terms.items():
            if not ring.is_zero(val):
                clean[key] = val
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)
        deg = max((i + j for (i, j) in clean), default=-1)
        object.__setattr__(self, "degree", deg)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(field):
        return BiPoly(field, {})

    @staticmethod
    def const(field, c):
        if isinstance(c, int):
            c = field.ring().from_int(c)
        elif isinstance(c, FieldElement):
            if c.descriptor != field:
                raise DescriptorMismatch("constant from the wrong field")
            c = c.payload
        return BiPoly(field, {(0, 0): c})

    @staticmethod
    def z1(field):
        return BiPoly(field, {(1, 0): field.ring().one})

    @staticmethod
    def z2(field):
        return BiPoly(field, {(0, 1): field.ring().one})

    @staticmethod
    def monomial(field, i, j, c=None):
        ring = field.ring()
        if c is None:
            c = ring.one
        elif isinstance(c, int):
            c = ring.from_int(c)
        return BiPoly(field, {(i, j): c})

    @staticmethod
    def from_unipoly(field, cs, var_index):
        """Reinterpret a unipoly tuple as a BiPoly in z1 (0) or z2 (1)."""
        if var_index == 0:
            return BiPoly(field, {(i, 0): c for i, c in enumerate(cs)})
        return BiPoly(field, {(0, j): c for j, c in enumerate(cs)})

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, i, j):
        return self.terms.get((i, j), self.field.ring().zero)

    def leading_terms(self):
        """Terms of top total degree, as a dict; empty for the zero poly."""
        d = self.degree
        return {k: v for k, v in self.terms.items() if k[0] + k[1] == d}

    def as_unipoly(self, var_index):
        """Coefficient tuple if the poly only involves one variable, else None."""
        other = 1 - var_index
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[var_index]
            if (i, j)[other] != 0:
                return None
            out[e] = c
        if not out:
            return ()
        ring = self.field.ring()
        n = max(out) + 1
        return tuple(out.get(e, ring.zero) for e in range(n))

    def constant_value(self):
        if self.degree > 0:
            return None
        return self.coeff(0, 0)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        _check_same_field(self, other)
        ring = self.field.ring()
        terms = dict(self.terms)
        for key, val in other.terms.items():
            cur = terms.get(key)
            terms[key] = val if cur is None else ring.add(cur, val)
        return BiPoly(self.field, terms)

    def __neg__(self):
        ring = self.field.ring()
        return BiPoly(self.field, {k: ring.neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _check_same_field(self, other)
        ring = self.field.ring()
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                v = ring.mul(c1, c2)
                cur = out.get(key)
                out[key] = v if cur is None else ring.add(cur, v)
        return BiPoly(self.field, out)

    def scale(self, c):
        ring = self.field.ring()
        if isinstance(c, int):
            c = ring.from_int(c)
        if ring.is_zero(c):
            return BiPoly.zero(self.field)
        return BiPoly(self.field, {k: ring.mul(c, v) for k, v in self.terms.items()})

    def plus_scaled(self, c, other):
        """self + c * other in one pass; c is a raw payload."""
        _check_same_field(self, other)
        ring = self.field.ring()
        if ring.is_zero(c):
            return self
        terms = dict(self.terms)
        for key, val in other.terms.items():
            add = ring.mul(c, val)
            cur = terms.get(key)
            terms[key] = add if cur is None else ring.add(cur, add)
        return BiPoly(self.field, terms)

    def shift_exponents(self, di, dj):
        return BiPoly(self.field, {(i + di, j + dj): c
                                   for (i, j), c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    __hash__ = None

    # -- evaluation and substitution --------------------------------------

    def _rows(self):
        rows = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, {})[j] = c
        return rows

    def eval(self, x, y):
        """Scalar evaluation; x, y are raw payloads."""
        ring = self.field.ring()
        total = ring.zero
        for i, row in sorted(self._rows().items()):
            js = sorted(row)
            acc = ring.zero
            prev = None
            for j in reversed(js):
                if prev is not None:
                    acc = ring.mul(acc, ring.pow(y, prev - j))
                acc = ring.add(acc, row[j])
                prev = j
            if prev:
                acc = ring.mul(acc, ring.pow(y, prev))
            total = ring.add(total, ring.mul(acc, ring.pow(x, i)))
        return total

    def substitute(self, a, b, cache_a=None, cache_b=None):
        """Plug BiPolys a, b in for z1, z2.  Caches map exponent -> power."""
        field = self.field
        out = BiPoly.zero(field)
        for i, row in self._rows().items():
            inner = BiPoly.zero(field)
            for j, c in row.items():
                inner = inner.plus_scaled(c, bipow(b, j, cache_b))
            out = out + bipow(a, i, cache_a) * inner
        return out

    def d_z1(self):
        ring = self.field.ring()
        out = {}
        for (i, j), c in self.terms.items():
            if i > 0:
                out[(i - 1, j)] = ring.mul(ring.from_int(i), c)
        return BiPoly(self.field, out)

    def d_z2(self):
        ring = self.field.ring()
        out = {}
        for (i, j), c in self.terms.items():
            if j > 0:
                out[(i, j - 1)] = ring.mul(ring.from_int(j), c)
        return BiPoly(self.field, out)

    def map_coeffs(self, fn, new_field):
        return BiPoly(new_field, {k: fn(v) for k, v in self.terms.items()})

    # -- io ----------------------------------------------------------------

    def sorted_items(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __str__(self):
        ring = self.field.ring()
        parts = []
        for (i, j), c in self.sorted_items():
            mono = []
            if i:
                mono.append("z1" if i == 1 else "z1^%d" % i)
            if j:
                mono.append("z2" if j == 1 else "z2^%d" % j)
            cstr = ring.to_str(c)
            if not mono:
                parts.append(cstr)
            elif cstr == "1":
                parts.append("*".join(mono))
            elif cstr == "-1":
                parts.append("-" + "*".join(mono))
            else:
                wrap = "(%s)" % cstr if (" " in cstr or "/" in cstr and "(" in cstr) else cstr
                parts.append(wrap + "*" + "*".join(mono))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return "BiPoly(%s)" % self

    def to_json(self):
        ring = self.field.ring()
        return [[[i, j], ring.to_json(c)]
                for (i, j), c in self.sorted_items()]

    @staticmethod
    def from_json(field, obj):
        """Terms as [[i, j], coeff] pairs; flat [i, j, coeff] also taken."""
        if not isinstance(obj, list):
            raise SchemaError("polynomial must be a list of [[i,j], coeff]")
        ring = field.ring()
        terms = {}
        for entry in obj:
            if (isinstance(entry, list) and len(entry) == 2
                    and isinstance(entry[0], list) and len(entry[0]) == 2):
                (i, j), raw = entry
            elif isinstance(entry, list) and len(entry) == 3:
                i, j, raw = entry
            else:
                raise SchemaError("bad polynomial term %r" % (entry,))
            if not (isinstance(i, int) and isinstance(j, int)
                    and i >= 0 and j >= 0):
                raise SchemaError("bad exponent pair (%r, %r)" % (i, j))
            c = ring.from_json(raw)
            if (i, j) in terms:
                c = ring.add(terms[(i, j)], c)
            terms[(i, j)] = c
        return BiPoly(field, terms)


def bipow(p, n, cache=None):
    if n == 0:
        return BiPoly.const(p.field, 1)
    if n == 1:
        return p
    if cache is not None and n in cache:
        return cache[n]
    half = bipow(p, n >> 1, cache)
    out = half * half
    if n & 1:
        out = out * p
    if cache is not None:
        cache[n] = out
    return out


class PlaneEndo:
    """Polynomial self-map of the plane, as an ordered component pair."""

    __slots__ = ("field", "p1", "p2")

    def __init__(self, field, p1, p2):
        if p1.field != field or p2.field != field:
            raise DescriptorMismatch("components over the wrong field")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    def __setattr__(self, name, value):
        raise AttributeError("PlaneEndo is immutable")

    @staticmethod
    def identity(field):
        return PlaneEndo(field, BiPoly.z1(field), BiPoly.z2(field))

    @property
    def components(self):
        return (self.p1, self.p2)

    def degree(self):
        return max(self.p1.degree, self.p2.degree)

    def compose(self, other):
        """self after other."""
        _check_same_field(self, other)
        ca = {1: other.p1}
        cb = {1: other.p2}
        return PlaneEndo(self.field,
                         self.p1.substitute(other.p1, other.p2, ca, cb),
                         self.p2.substitute(other.p1, other.p2, ca, cb))

    def eval(self, x, y):
        return (self.p1.eval(x, y), self.p2.eval(x, y))

    def jacobian_det(self):
        return (self.p1.d_z1() * self.p2.d_z2()
                - self.p1.d_z2() * self.p2.d_z1())

    def is_identity(self):
        return (self.p1 == BiPoly.z1(self.field)
                and self.p2 == BiPoly.z2(self.field))

    def map_coeffs(self, fn, new_field):
        return PlaneEndo(new_field,
                         self.p1.map_coeffs(fn, new_field),
                         self.p2.map_coeffs(fn, new_field))

    def __eq__(self, other):
        if not isinstance(other, PlaneEndo):
            return NotImplemented
        return (self.field == other.field
                and self.p1 == other.p1 and self.p2 == other.p2)

    __hash__ = None

    def __str__(self):
        return "(%s, %s)" % (self.p1, self.p2)

    def __repr__(self):
        return "PlaneEndo%s" % (self,)

    def to_json(self):
        return {"field": self.field.to_json(),
                "components": [self.p1.to_json(), self.p2.to_json()]}

    @staticmethod
    def from_json(obj, field=None):
        if not isinstance(obj, dict) or "components" not in obj:
            raise SchemaError("map must be {'field':.., 'components':[..,..]}")
        if field is None:
            if "field" not in obj:
                raise SchemaError("map needs a 'field' descriptor")
            from .fields import FieldDescriptor
            field = FieldDescriptor.from_json(obj["field"])
        comps = obj["components"]
        if not (isinstance(comps, list) and len(comps) == 2):
            raise SchemaError("'components' must list exactly two polynomials")
        return PlaneEndo(field,
                         BiPoly.from_json(field, comps[0]),
                         BiPoly.from_json(field, comps[1]))


class PlaneAut:
    """An endomorphism packaged with a verified polynomial inverse."""

    __slots__ = ("fwd", "inv")

    def __init__(self, fwd, inv, check=False):
        object.__setattr__(self, "fwd", fwd)
        object.__setattr__(self, "inv", inv)
        if check:
            if not fwd.compose(inv).is_identity() or not inv.compose(fwd).is_identity():
                raise NotAnAutomorphism("stored inverse does not invert the map")

    def __setattr__(self, name, value):
        raise AttributeError("PlaneAut is immutable")

    @property
    def field(self):
        return self.fwd.field

    def inverse(self):
        return PlaneAut(self.inv, self.fwd)

    def compose(self, other):
        return PlaneAut(self.fwd.compose(other.fwd), other.inv.compose(self.inv))

    def conjugate(self, by):
        """by^{-1} . self . by"""
        return by.inverse().compose(self).compose(by)

    def __eq__(self, other):
        if not isinstance(other, PlaneAut):
            return NotImplemented
        return self.fwd == other.fwd

    __hash__ = None

    def __str__(self):
        return str(self.fwd)

    def __repr__(self):
        return "PlaneAut%s" % (self.fwd,)


class AffineMap:
    """z -> M z + t with M invertible; the 'a' letters of words."""

    __slots__ = ("field", "m", "t")

    def __init__(self, field, m, t, check=True):
        ring = field.ring()
        m = tuple(tuple(ring.from_int(v) if isinstance(v, int) else v for v in row)
                  for row in m)
        t = tuple(ring.from_int(v) if isinstance(v, int) else v for v in t)
        if check:
            det = ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0]))
            if ring.is_zero(det):
                raise NotAnAutomorphism("affine map with singular linear part")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "t", t)

    def __setattr__(self, name, value):
        raise AttributeError("AffineMap is immutable")

    @staticmethod
    def identity(field):
        ring = field.ring()
        return AffineMap(field, ((ring.one, ring.zero), (ring.zero, ring.one)),
                         (ring.zero, ring.zero), check=False)

    @staticmethod
    def swap(field):
        ring = field.ring()
        return AffineMap(field, ((ring.zero, ring.one), (ring.one, ring.zero)),
                         (ring.zero, ring.zero), check=False)

    @staticmethod
    def diagonal(field, a, d):
        ring = field.ring()
        if isinstance(a, int):
            a = ring.from_int(a)
        if isinstance(d, int):
            d = ring.from_int(d)
        return AffineMap(field, ((a, ring.zero), (ring.zero, d)),
                         (ring.zero, ring.zero))

    @staticmethod
    def translation(field, e, f):
        ring = field.ring()
        if isinstance(e, int):
            e = ring.from_int(e)
        if isinstance(f, int):
            f = ring.from_int(f)
        return AffineMap(field, ((ring.one, ring.zero), (ring.zero, ring.one)),
                         (e, f), check=False)

    def det(self):
        ring = self.field.ring()
        return ring.sub(ring.mul(self.m[0][0], self.m[1][1]),
                        ring.mul(self.m[0][1], self.m[1][0]))

    def in_S(self):
        """Lower triangular up to translation: no z1 in the second slot."""
        return self.field.ring().is_zero(self.m[1][0])

    def is_identity(self):
        ring = self.field.ring()
        return (ring.eq(self.m[0][0], ring.one) and ring.is_zero(self.m[0][1])
                and ring.is_zero(self.m[1][0]) and ring.eq(self.m[1][1], ring.one)
                and ring.is_zero(self.t[0]) and ring.is_zero(self.t[1]))

    def compose(self, other):
        """self after other: M (M' z + t') + t."""
        ring = self.field.ring()
        m2, t2 = other.m, other.t
        new_m = tuple(
            tuple(ring.add(ring.mul(row[0], m2[0][col]), ring.mul(row[1], m2[1][col]))
                  for col in (0, 1))
            for row in self.m)
        new_t = tuple(
            ring.add(ring.add(ring.mul(row[0], t2[0]), ring.mul(row[1], t2[1])),
                     self.t[idx])
            for idx, row in enumerate(self.m))
        return AffineMap(self.field, new_m, new_t, check=False)

    def inverse(self):
        ring = self.field.ring()
        det = self.det()
        dinv = ring.inv(det)
        a, b = self.m[0]
        c, d = self.m[1]
        mi = ((ring.mul(d, dinv), ring.neg(ring.mul(b, dinv))),
              (ring.neg(ring.mul(c, dinv)), ring.mul(a, dinv)))
        ti = (ring.neg(ring.add(ring.mul(mi[0][0], self.t[0]),
                                ring.mul(mi[0][1], self.t[1]))),
              ring.neg(ring.add(ring.mul(mi[1][0], self.t[0]),
                                ring.mul(mi[1][1], self.t[1]))))
        return AffineMap(self.field, mi, ti, check=False)

    def to_endo(self):
        field = self.field
        p1 = BiPoly(field, {(1, 0): self.m[0][0], (0, 1): self.m[0][1],
                            (0, 0): self.t[0]})
        p2 = BiPoly(field, {(1, 0): self.m[1][0], (0, 1): self.m[1][1],
                            (0, 0): self.t[1]})
        return PlaneEndo(field, p1, p2)

    def apply(self, x, y):
        ring = self.field.ring()
        return (ring.add(ring.add(ring.mul(self.m[0][0], x), ring.mul(self.m[0][1], y)),
                         self.t[0]),
                ring.add(ring.add(ring.mul(self.m[1][0], x), ring.mul(self.m[1][1], y)),
                         self.t[1]))

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        ring = self.field.ring()
        return (self.field == other.field
                and all(ring.eq(self.m[i][j], other.m[i][j])
                        for i in (0, 1) for j in (0, 1))
                and all(ring.eq(self.t[i], other.t[i]) for i in (0, 1)))

    __hash__ = None

    def __repr__(self):
        return "AffineMap%s" % (self.to_endo(),)


class ElementaryMap:
    """(a z1 + p(z2), b z2 + c) with a, b units; the 'e' letters of words.

    p is a unipoly tuple over the scalar ring.  The map lies in S exactly
    when deg p <= 1.
    """

    __slots__ = ("field", "a", "p", "b", "c")

    def __init__(self, field, a, p, b, c, check=True):
        ring = field.ring()
        if isinstance(a, int):
            a = ring.from_int(a)
        if isinstance(b, int):
            b = ring.from_int(b)
        if isinstance(c, int):
            c = ring.from_int(c)
        p = up.ptrim(ring, tuple(ring.from_int(v) if isinstance(v, int) else v
                                 for v in p))
        if check and (ring.is_zero(a) or ring.is_zero(b)):
            raise NotAnAutomorphism("elementary map needs unit diagonal entries")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("ElementaryMap is immutable")

    @staticmethod
    def identity(field):
        ring = field.ring()
        return ElementaryMap(field, ring.one, (), ring.one, ring.zero, check=False)

    @staticmethod
    def shear(field, p):
        """(z1 + p(z2), z2)."""
        ring = field.ring()
        return ElementaryMap(field, ring.one, p, ring.one, ring.zero, check=False)

    def syl_degree(self):
        """Degree as a plane map: max(1, deg p)."""
        return max(1, len(self.p) - 1)

    def in_S(self):
        return len(self.p) <= 2

    def is_identity(self):
        ring = self.field.ring()
        return (not self.p and ring.eq(self.a, ring.one)
                and ring.eq(self.b, ring.one) and ring.is_zero(self.c))

    def compose(self, other):
        """self after other, staying in elementary shape."""
        ring = self.field.ring()
        a1, p1, b1, c1 = self.a, self.p, self.b, self.c
        a2, p2, b2, c2 = other.a, other.p, other.b, other.c
        # first slot: a1*(a2 z1 + p2(z2)) + p1(b2 z2 + c2)
        new_p = up.padd(ring, up.pscale(ring, a1, p2),
                        up.pshift_scale(ring, p1, b2, c2))
        return ElementaryMap(self.field, ring.mul(a1, a2), new_p,
                             ring.mul(b1, b2), ring.add(ring.mul(b1, c2), c1),
                             check=False)

    def inverse(self):
        ring = self.field.ring()
        ai = ring.inv(self.a)
        bi = ring.inv(self.b)
        # z2 = bi*(w2 - c);  z1 = ai*(w1 - p(z2))
        inner = up.pshift_scale(ring, self.p, bi, ring.neg(ring.mul(bi, self.c)))
        return ElementaryMap(self.field, ai,
                             up.pscale(ring, ring.neg(ai), inner),
                             bi, ring.neg(ring.mul(bi, self.c)), check=False)

    def to_endo(self):
        field = self.field
        terms = {(0, j): c for j, c in enumerate(self.p)
                 if not field.ring().is_zero(c)}
        terms[(1, 0)] = self.a
        p1 = BiPoly(field, terms)
        p2 = BiPoly(field, {(0, 1): self.b, (0, 0): self.c})
        return PlaneEndo(field, p1, p2)

    def to_affine(self):
        if not self.in_S():
            raise NotAnAutomorphism("elementary map of degree > 1 is not affine")
        ring = self.field.ring()
        p0 = self.p[0] if len(self.p) > 0 else ring.zero
        p1 = self.p[1] if len(self.p) > 1 else ring.zero
        return AffineMap(self.field, ((self.a, p1), (ring.zero, self.b)),
                         (p0, self.c), check=False)

    @staticmethod
    def from_affine(aff):
        if not aff.in_S():
            raise NotAnAutomorphism("affine map outside S has z1 in its second slot")
        ring = aff.field.ring()
        return ElementaryMap(aff.field, aff.m[0][0], (aff.t[0], aff.m[0][1]),
                             aff.m[1][1], aff.t[1], check=False)

    def __eq__(self, other):
        if not isinstance(other, ElementaryMap):
            return NotImplemented
        ring = self.field.ring()
        return (self.field == other.field and ring.eq(self.a, other.a)
                and ring.eq(self.b, other.b) and ring.eq(self.c, other.c)
                and len(self.p) == len(other.p)
                and all(ring.eq(x, y) for x, y in zip(self.p, other.p)))

    __hash__ = None

    def __repr__(self):
        return "ElementaryMap%s" % (self.to_endo(),)


def extract_affine(endo):
    """AffineMap view of an endo of degree <= 1, or None (also None if
    the linear part is singular)."""
    ring = endo.field.ring()
    if endo.degree() > 1:
        return None
    m = ((endo.p1.coeff(1, 0), endo.p1.coeff(0, 1)),
         (endo.p2.coeff(1, 0), endo.p2.coeff(0, 1)))
    t = (endo.p1.coeff(0, 0), endo.p2.coeff(0, 0))
    det = ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0]))
    if ring.is_zero(det):
        return None
    return AffineMap(endo.field, m, t, check=False)


def extract_elementary(endo):
    """ElementaryMap view of an endo in triangular shape, or None."""
    ring = endo.field.ring()
    b = endo.p2.coeff(0, 1)
    c = endo.p2.coeff(0, 0)
    if ring.is_zero(b):
        return None
    for (i, j) in endo.p2.terms:
        if (i, j) not in ((0, 0), (0, 1)):
            return None
    a = endo.p1.coeff(1, 0)
    if ring.is_zero(a):
        return None
    p = {}
    for (i, j), coeff in endo.p1.terms.items():
        if (i, j) == (1, 0):
            continue
        if i != 0:
            return None
        p[j] = coeff
    n = max(p, default=-1) + 1
    p_t = tuple(p.get(j, ring.zero) for j in range(n))
    return ElementaryMap(endo.field, a, p_t, b, c, check=False)
