"""Exact scalar arithmetic for the coefficient fields.

Three field kinds are supported, one transcendental layer deep at most:

* ``rationals``                  payload: mpq (or Fraction fallback)
* ``cyclotomic`` of order k      payload: tuple of mpq, length phi(k),
                                 coordinates in the power basis 1, z, ..,
                                 z^(phi(k)-1) where z is a primitive k-th
                                 root of unity
* ``rational-functions`` over a  payload: (num, den) of unipoly tuples over
  base field, one variable       the base ring, den monic, gcd(num, den)=1

Rings operate on raw payloads; FieldElement is a thin wrapper used at API
boundaries.  All payloads are immutable and hashable so they can key dicts
inside polynomial terms.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import unipoly as up
from .errors import DescriptorMismatch, DivisionByZero, NotIntegral, SchemaError

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    from fractions import Fraction as mpq

INF = up.INF

K_RATIONALS = "rationals"
K_CYCLOTOMIC = "cyclotomic"
K_RATFUNC = "rational-functions"


class RationalRing:
    """Arithmetic on mpq payloads."""

    kind = K_RATIONALS

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("rational division by zero")
        return a / b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def pow(self, a, n):
        if n < 0:
            return self.inv(a) ** (-n)
        return a ** n

    def from_int(self, n):
        return mpq(n)

    def roots_of_unity(self, n):
        out = [self.one]
        if n % 2 == 0:
            out.append(-self.one)
        return out

    def torsion_exponent(self):
        return 2

    def sort_key(self, a):
        return (a, a.denominator)

    def rand(self, rng, bound=9):
        return mpq(rng.randint(-bound, bound), rng.randint(1, bound))

    def to_str(self, a):
        return str(a)

    def to_json(self, a):
        return str(a)

    def from_json(self, obj):
        if not isinstance(obj, str):
            raise SchemaError("rational scalar must be a string like '3/4'")
        try:
            return mpq(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError("bad rational literal %r" % (obj,)) from exc


RAT = RationalRing()


@lru_cache(maxsize=None)
def cyclotomic_coeffs(k):
    """Coefficients of the k-th cyclotomic polynomial, ascending, as mpq."""
    num = [RAT.from_int(-1)] + [RAT.zero] * (k - 1) + [RAT.one]
    num = up.ptrim(RAT, num)
    for d in range(1, k):
        if k % d == 0:
            q, r = up.pdivmod(RAT, num, cyclotomic_coeffs(d))
            assert not r
            num = q
    return num


class CyclotomicRing:
    """Arithmetic in Q(zeta_k) on power-basis coordinate tuples."""

    kind = K_CYCLOTOMIC

    def __init__(self, k):
        if k < 1:
            raise SchemaError("cyclotomic order must be positive")
        self.k = k
        self.minpoly = cyclotomic_coeffs(k)
        self.dim = len(self.minpoly) - 1
        self.zero = self._pad(())
        self.one = self._pad((RAT.one,))
        if self.dim == 1:
            self.zeta = self._pad((-self.minpoly[0],))
        else:
            self.zeta = self._pad((RAT.zero, RAT.one))
        # x^i mod minpoly for i = dim .. 2*dim-2, as fixed-width rows
        rows = []
        cur = tuple(-c for c in self.minpoly[:-1])
        rows.append(cur)
        for _ in range(self.dim - 2):
            shifted = (RAT.zero,) + cur[:-1]
            top = cur[-1]
            cur = tuple(RAT.add(shifted[j], top * rows[0][j]) for j in range(self.dim))
            rows.append(cur)
        self._red = rows

    def _pad(self, cs):
        return tuple(cs) + (RAT.zero,) * (self.dim - len(cs))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        n = self.dim
        conv = [RAT.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                conv[i + j] = conv[i + j] + x * y
        out = list(conv[:n])
        for i in range(n, 2 * n - 1):
            c = conv[i]
            if c == 0:
                continue
            row = self._red[i - n]
            for j in range(n):
                out[j] = out[j] + c * row[j]
        return tuple(out)

    def inv(self, a):
        cs = up.ptrim(RAT, a)
        if not cs:
            raise DivisionByZero("inverse of zero")
        g, u, _ = up.pext_gcd(RAT, cs, self.minpoly)
        assert len(g) == 1  # minimal polynomial is irreducible
        _, rem = up.pdivmod(RAT, up.pscale(RAT, RAT.inv(g[0]), u), self.minpoly)
        return self._pad(rem)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def eq(self, a, b):
        return a == b

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        out = self.one
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def from_int(self, n):
        return self._pad((RAT.from_int(n),))

    def from_base(self, q):
        return self._pad((q,))

    def rational_part(self, a):
        """The mpq value of a constant element, or None."""
        if any(x != 0 for x in a[1:]):
            return None
        return a[0]

    def roots_of_unity(self, n):
        # torsion of Q(zeta_k)* is cyclic of order k (k even) or 2k (k odd)
        if self.k % 2 == 0:
            gen, order = self.zeta, self.k
        else:
            gen, order = self.neg(self.zeta), 2 * self.k
        out, w = [], self.one
        for _ in range(order):
            if self.is_zero(self.sub(self.pow(w, n), self.one)):
                out.append(w)
            w = self.mul(w, gen)
        return out

    def torsion_exponent(self):
        return self.k if self.k % 2 == 0 else 2 * self.k

    def sort_key(self, a):
        return tuple(a)

    def rand(self, rng, bound=9):
        return tuple(mpq(rng.randint(-bound, bound), rng.randint(1, 3))
                     for _ in range(self.dim))

    def to_str(self, a):
        parts = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else str(c) + "*")
                parts.append("%sz%s" % (head, "" if i == 1 else "^%d" % i))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self, a):
        return {"k": self.k, "coeffs": [str(c) for c in a]}

    def from_json(self, obj):
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise SchemaError("cyclotomic scalar must be {'k':..,'coeffs':[..]}")
        if obj.get("k", self.k) != self.k:
            raise SchemaError("cyclotomic order mismatch: %r" % (obj.get("k"),))
        cs = obj["coeffs"]
        if len(cs) > self.dim:
            trimmed = [RAT.from_json(c) for c in cs]
            if any(c != 0 for c in trimmed[self.dim:]):
                raise SchemaError("coefficient vector longer than phi(k)")
            return self._pad(tuple(trimmed[: self.dim]))
        return self._pad(tuple(RAT.from_json(c) for c in cs))


class RatFuncRing:
    """Field of fractions of base[var] on reduced (num, den) pairs."""

    kind = K_RATFUNC

    def __init__(self, base, var):
        self.base = base
        self.var = var
        bone = base.one
        self.zero = ((), (bone,))
        self.one = ((bone,), (bone,))
        self.gen = ((base.zero, bone), (bone,))

    def make(self, num, den):
        B = self.base
        num = up.ptrim(B, num)
        den = up.ptrim(B, den)
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not num:
            return ((), (B.one,))
        g = up.pgcd(B, num, den)
        if len(g) > 1:
            num = up.pdivmod(B, num, g)[0]
            den = up.pdivmod(B, den, g)[0]
        lc = den[-1]
        if not B.eq(lc, B.one):
            c = B.inv(lc)
            num = up.pscale(B, c, num)
            den = up.pscale(B, c, den)
        return (num, den)

    def from_poly(self, num):
        return self.make(num, (self.base.one,))

    def add(self, a, b):
        B = self.base
        n = up.padd(B, up.pmul(B, a[0], b[1]), up.pmul(B, b[0], a[1]))
        return self.make(n, up.pmul(B, a[1], b[1]))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (up.pneg(self.base, a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        return self.make(up.pmul(B, a[0], b[0]), up.pmul(B, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise DivisionByZero("inverse of zero")
        return self.make(a[1], a[0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return not a[0]

    def eq(self, a, b):
        return a == b

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        B = self.base
        return (up.ppow(B, a[0], n), up.ppow(B, a[1], n)) if a[0] else \
            (self.one if n == 0 else self.zero)

    def from_int(self, n):
        return ((self.base.from_int(n),), (self.base.one,)) if n else self.zero

    def from_base(self, c):
        return ((c,), (self.base.one,)) if not self.base.is_zero(c) else self.zero

    def is_constant(self, a):
        return len(a[0]) <= 1 and len(a[1]) == 1

    def constant_value(self, a):
        if not self.is_constant(a):
            raise ValueError("rational function is not constant")
        if not a[0]:
            return self.base.zero
        return self.base.div(a[0][0], a[1][0])

    def eval_at(self, a, c):
        B = self.base
        d = up.peval(B, a[1], c)
        if B.is_zero(d):
            raise DivisionByZero("pole at evaluation point")
        return B.div(up.peval(B, a[0], c), d)

    def valuation_at(self, a, center):
        if not a[0]:
            return INF
        return up.ord_at(self.base, a[0], center) - up.ord_at(self.base, a[1], center)

    def residue_at(self, a, center):
        v = self.valuation_at(a, center)
        if v is INF or v > 0:
            return self.base.zero
        if v < 0:
            raise NotIntegral("element has a pole at the chosen center")
        B = self.base
        num, den = a
        m = up.ord_at(B, den, center)
        for _ in range(m):
            num = self._exact_div_linear(num, center)
            den = self._exact_div_linear(den, center)
        return B.div(up.peval(B, num, center), up.peval(B, den, center))

    def _exact_div_linear(self, cs, center):
        B = self.base
        out = [B.zero] * (len(cs) - 1)
        carry = B.zero
        for i in range(len(cs) - 1, 0, -1):
            carry = B.add(cs[i], B.mul(carry, center))
            out[i - 1] = carry
        return up.ptrim(B, out)

    def roots_of_unity(self, n):
        return [self.from_base(w) for w in self.base.roots_of_unity(n)]

    def torsion_exponent(self):
        return self.base.torsion_exponent()

    def rand(self, rng, bound=9, deg=2):
        B = self.base
        num = tuple(B.rand(rng, bound) for _ in range(rng.randint(1, deg + 1)))
        den = tuple(B.rand(rng, bound) for _ in range(rng.randint(0, deg))) + (B.one,)
        return self.make(num, den)

    def _poly_str(self, cs):
        if not cs:
            return "0"
        parts = []
        for i, c in enumerate(cs):
            if self.base.is_zero(c):
                continue
            cstr = self.base.to_str(c)
            if i == 0:
                parts.append(cstr)
                continue
            mono = self.var if i == 1 else "%s^%d" % (self.var, i)
            if cstr == "1":
                parts.append(mono)
            elif cstr == "-1":
                parts.append("-" + mono)
            elif "+" in cstr or ("-" in cstr[1:]) or " " in cstr:
                parts.append("(%s)*%s" % (cstr, mono))
            else:
                parts.append("%s*%s" % (cstr, mono))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_str(self, a):
        num = self._poly_str(a[0])
        if a[1] == (self.base.one,):
            return num
        return "(%s)/(%s)" % (num, self._poly_str(a[1]))

    def to_json(self, a):
        return {"num": [self.base.to_json(c) for c in a[0]],
                "den": [self.base.to_json(c) for c in a[1]]}

    def from_json(self, obj):
        if not isinstance(obj, dict) or "num" not in obj or "den" not in obj:
            raise SchemaError("rational function scalar must be {'num':[..],'den':[..]}")
        num = tuple(self.base.from_json(c) for c in obj["num"])
        den = tuple(self.base.from_json(c) for c in obj["den"])
        if not up.ptrim(self.base, den):
            raise SchemaError("zero denominator in rational function literal")
        return self.make(num, den)


@dataclass(frozen=True)
class FieldDescriptor:
    """Hashable description of a coefficient field."""

    kind: str
    k: int = 0
    base: "FieldDescriptor" = None
    var: str = "x"

    @staticmethod
    def rationals():
        return FieldDescriptor(K_RATIONALS)

    @staticmethod
    def cyclotomic(k):
        if k < 1:
            raise SchemaError("cyclotomic order must be >= 1")
        return FieldDescriptor(K_CYCLOTOMIC, k=k)

    @staticmethod
    def rational_functions(base, var="x"):
        if base.kind == K_RATFUNC:
            raise SchemaError("only one transcendental layer is supported")
        return FieldDescriptor(K_RATFUNC, base=base, var=var)

    def ring(self):
        return _ring_for(self)

    @property
    def is_ratfunc(self):
        return self.kind == K_RATFUNC

    def to_json(self):
        if self.kind == K_RATIONALS:
            return {"kind": K_RATIONALS}
        if self.kind == K_CYCLOTOMIC:
            return {"kind": K_CYCLOTOMIC, "k": self.k}
        return {"kind": K_RATFUNC, "base": self.base.to_json(), "variable": self.var}

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise SchemaError("field descriptor must be an object with 'kind'")
        kind = obj["kind"]
        if kind == K_RATIONALS:
            return FieldDescriptor.rationals()
        if kind == K_CYCLOTOMIC:
            k = obj.get("k")
            if not isinstance(k, int) or k < 1:
                raise SchemaError("cyclotomic descriptor needs integer k >= 1")
            return FieldDescriptor.cyclotomic(k)
        if kind == K_RATFUNC:
            if "base" not in obj:
                raise SchemaError("rational-functions descriptor needs 'base'")
            base = FieldDescriptor.from_json(obj["base"])
            return FieldDescriptor.rational_functions(base, obj.get("variable", "x"))
        raise SchemaError("unknown field kind %r" % (kind,))

    def __str__(self):
        if self.kind == K_RATIONALS:
            return "Q"
        if self.kind == K_CYCLOTOMIC:
            return "Q(zeta_%d)" % self.k
        return "%s(%s)" % (self.base, self.var)


_RING_CACHE = {}


def _ring_for(desc):
    ring = _RING_CACHE.get(desc)
    if ring is None:
        if desc.kind == K_RATIONALS:
            ring = RAT
        elif desc.kind == K_CYCLOTOMIC:
            ring = CyclotomicRing(desc.k)
        elif desc.kind == K_RATFUNC:
            ring = RatFuncRing(_ring_for(desc.base), desc.var)
        else:
            raise SchemaError("unknown field kind %r" % (desc.kind,))
        _RING_CACHE[desc] = ring
    return ring


class FieldElement:
    """Raw payload plus its descriptor; supports operator arithmetic."""

    __slots__ = ("descriptor", "payload")

    def __init__(self, descriptor, payload):
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _peer(self, other):
        if isinstance(other, int):
            return self.descriptor.ring().from_int(other)
        if isinstance(other, FieldElement):
            if other.descriptor != self.descriptor:
                raise DescriptorMismatch(
                    "cannot mix %s and %s" % (self.descriptor, other.descriptor))
            return other.payload
        return NotImplemented

    def _wrap(self, payload):
        return FieldElement(self.descriptor, payload)

    def __add__(self, other):
        p = self._peer(other)
        if p is NotImplemented:
            return NotImplemented
        return self._wrap(self.descriptor.ring().add(self.payload, p))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._peer(other)
        if p is NotImplemented:
            return NotImplemented
        return self._wrap(self.descriptor.ring().sub(self.payload, p))

    def __rsub__(self, other):
        p = self._peer(other)
        if p is NotImplemented:
            return NotImplemented
        return self._wrap(self.descriptor.ring().sub(p, self.payload))

    def __mul__(self, other):
        p = self._peer(other)
        if p is NotImplemented:
            return NotImplemented
        return self._wrap(self.descriptor.ring().mul(self.payload, p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._peer(other)
        if p is NotImplemented:
            return NotImplemented
        return self._wrap(self.descriptor.ring().div(self.payload, p))

    def __rtruediv__(self, other):
        p = self._peer(other)
        if p is NotImplemented:
            return NotImplemented
        return self._wrap(self.descriptor.ring().div(p, self.payload))

    def __neg__(self):
        return self._wrap(self.descriptor.ring().neg(self.payload))

    def __pow__(self, n):
        return self._wrap(self.descriptor.ring().pow(self.payload, n))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._wrap(self.descriptor.ring().from_int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.descriptor == other.descriptor
                and self.descriptor.ring().eq(self.payload, other.payload))

    def __hash__(self):
        return hash((self.descriptor, self.payload))

    def __bool__(self):
        return not self.descriptor.ring().is_zero(self.payload)

    def __str__(self):
        return self.descriptor.ring().to_str(self.payload)

    def __repr__(self):
        return "FieldElement(%s, %s)" % (self.descriptor, self)


def fe(desc, value):
    """Coerce an int, payload-compatible literal, or FieldElement."""
    if isinstance(value, FieldElement):
        if value.descriptor != desc:
            raise DescriptorMismatch("element belongs to %s" % value.descriptor)
        return value
    ring = desc.ring()
    if isinstance(value, int):
        return FieldElement(desc, ring.from_int(value))
    if isinstance(value, str):
        return FieldElement(desc, ring.from_json(value))
    return FieldElement(desc, value)


@dataclass(frozen=True)
class DVRContext:
    """Localization of base[var] at the maximal ideal (var - center).

    `field` must be a rational-functions descriptor; `center` is a raw
    payload of the base field.  Valuation and residue of field elements
    are taken with respect to the uniformizer var - center.
    """

    field: FieldDescriptor
    center: object

    def __post_init__(self):
        if self.field.kind != K_RATFUNC:
            raise SchemaError("DVR context requires a rational-functions field")

    @property
    def base(self):
        return self.field.base

    def uniformizer(self):
        ring = self.field.ring()
        t = ring.sub(ring.gen, ring.from_base(self.center))
        return FieldElement(self.field, t)

    def center_element(self):
        return FieldElement(self.base, self.center)


def valuation(elt, ctx):
    """Order of vanishing of elt at ctx.center; INF for zero."""
    if isinstance(elt, FieldElement):
        if elt.descriptor != ctx.field:
            raise DescriptorMismatch("element not in the context field")
        elt = elt.payload
    return ctx.field.ring().valuation_at(elt, ctx.center)


def residue(elt, ctx):
    """Image in the residue field (= base field) of an integral element."""
    if isinstance(elt, FieldElement):
        if elt.descriptor != ctx.field:
            raise DescriptorMismatch("element not in the context field")
        elt = elt.payload
    return FieldElement(ctx.base, ctx.field.ring().residue_at(elt, ctx.center))
