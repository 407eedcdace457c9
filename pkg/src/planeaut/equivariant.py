"""Triangular-word normal forms and centralizers of diagonal group actions.

The anchored family F consists of the automorphisms

    f = s . e[q_m] . t . e[q_{m-1}] . t . ... . t . e[q_1]

with e[q] = (z1 + z2*q(z2), z2), t the coordinate swap, and
s = (alpha z1 + alpha0, beta z2 + beta0) diagonal-affine.  The data
(s, q_1..q_m) is unique and extract_fiber recovers it from the raw
polynomials by sliding S-letters across the interfaces of the alternating
word.  On top of that sit the centralizer computations: which members of F
with a fixed degree sequence commute with a cyclic or torus group of
diagonal maps, and how the answer glues over the possible anchor pairs.
"""

import math
from dataclasses import dataclass

from . import linalg
from . import unipoly as up
from .decompose import decompose
from .errors import (DegreeMismatch, NotInFiber, SchemaError,
                     UnsupportedGroup)
from .plane import AffineMap, BiPoly, ElementaryMap, PlaneEndo


@dataclass(frozen=True)
class FiberNormalForm:
    """Coordinates (s, q) for a member of the anchored family.

    qs is a tuple of unipoly tuples; q_j = qs[j-1] has degree d_j - 1 >= 1,
    so d_j = len(qs[j-1]).  alpha, beta are units of the field.
    """

    field: object
    alpha: object
    alpha0: object
    beta: object
    beta0: object
    qs: tuple

    def validate(self):
        ring = self.field.ring()
        if ring.is_zero(self.alpha) or ring.is_zero(self.beta):
            raise NotInFiber("diagonal part needs unit scalings")
        for q in self.qs:
            if len(q) < 2:
                raise NotInFiber("each syllable needs deg q >= 1")
            if ring.is_zero(q[-1]):
                raise NotInFiber("syllable with vanishing leading coefficient")
        return self

    @property
    def syllables(self):
        return len(self.qs)

    def degrees(self):
        return tuple(len(q) for q in self.qs)

    def s_affine(self):
        ring = self.field.ring()
        return AffineMap(self.field,
                         ((self.alpha, ring.zero), (ring.zero, self.beta)),
                         (self.alpha0, self.beta0), check=False)

    def in_T(self):
        return self.field.ring().is_zero(self.beta0)

    def in_D(self):
        ring = self.field.ring()
        return ring.is_zero(self.alpha0) and ring.is_zero(self.beta0)

    def in_Z(self):
        return self.in_D() and self.field.ring().eq(self.alpha, self.beta)

    def endo(self):
        field = self.field
        ring = field.ring()
        acc = None
        swap = AffineMap.swap(field).to_endo()
        for j, q in enumerate(self.qs):
            e = ElementaryMap.shear(field, (ring.zero,) + tuple(q)).to_endo()
            if acc is None:
                acc = e
            else:
                acc = e.compose(swap.compose(acc))
        s = self.s_affine().to_endo()
        return s if acc is None else s.compose(acc)

    def __eq__(self, other):
        if not isinstance(other, FiberNormalForm):
            return NotImplemented
        ring = self.field.ring()
        return (self.field == other.field
                and ring.eq(self.alpha, other.alpha)
                and ring.eq(self.alpha0, other.alpha0)
                and ring.eq(self.beta, other.beta)
                and ring.eq(self.beta0, other.beta0)
                and len(self.qs) == len(other.qs)
                and all(len(a) == len(b) and all(ring.eq(x, y) for x, y in zip(a, b))
                        for a, b in zip(self.qs, other.qs)))

    __hash__ = None

    def to_json(self):
        ring = self.field.ring()
        return {"field": self.field.to_json(),
                "s": {"alpha": ring.to_json(self.alpha),
                      "alpha0": ring.to_json(self.alpha0),
                      "beta": ring.to_json(self.beta),
                      "beta0": ring.to_json(self.beta0)},
                "q": [[ring.to_json(c) for c in q] for q in self.qs]}

    @staticmethod
    def from_json(obj, field=None):
        if not isinstance(obj, dict) or "s" not in obj or "q" not in obj:
            raise SchemaError("normal form must be {'field':..,'s':..,'q':[..]}")
        if field is None:
            from .fields import FieldDescriptor
            field = FieldDescriptor.from_json(obj["field"])
        ring = field.ring()
        s = obj["s"]
        qs = tuple(tuple(ring.from_json(c) for c in q) for q in obj["q"])
        return FiberNormalForm(field, ring.from_json(s["alpha"]),
                               ring.from_json(s.get("alpha0", "0")),
                               ring.from_json(s["beta"]),
                               ring.from_json(s.get("beta0", "0")),
                               qs).validate()


def build_fiber(field, alpha, alpha0, beta, beta0, qs):
    ring = field.ring()

    def coerce(v):
        return ring.from_int(v) if isinstance(v, int) else v

    qs = tuple(up.ptrim(ring, tuple(coerce(c) for c in q)) for q in qs)
    return FiberNormalForm(field, coerce(alpha), coerce(alpha0),
                           coerce(beta), coerce(beta0), qs).validate()


def _factor_shear(field, e, b):
    """Split an elementary letter as B . (z1 + z2*q(z2), z2) where B in S
    has prescribed upper-right entry b.  Returns (B, q)."""
    ring = field.ring()
    p = e.p
    p0 = p[0] if len(p) > 0 else ring.zero
    q = []
    for i in range(1, len(p)):
        c = p[i]
        if i == 1:
            c = ring.sub(c, b)
        q.append(ring.div(c, e.a))
    q = up.ptrim(ring, q)
    B = AffineMap(field, ((e.a, b), (ring.zero, e.b)), (p0, e.c), check=False)
    return B, tuple(q)


def extract_fiber(f):
    """Recover (s, q_1..q_m) or raise NotInFiber.

    Membership in the family is equivalent to: the innermost and outermost
    affine letters of the alternating word both lie in S (for m = 0, to the
    map being diagonal-affine)."""
    from .plane import PlaneAut
    if isinstance(f, PlaneAut):
        f = f.fwd
    field = f.field
    ring = field.ring()
    dec = decompose(f)
    m = dec.syllables
    if m == 0:
        a = dec.affines[0]
        if not (ring.is_zero(a.m[0][1]) and ring.is_zero(a.m[1][0])):
            raise NotInFiber("affine map is not diagonal")
        out = FiberNormalForm(field, a.m[0][0], a.t[0], a.m[1][1], a.t[1], ())
        return out.validate()
    if not dec.affines[0].in_S():
        raise NotInFiber("innermost affine letter leaves S")
    if not dec.affines[m].in_S():
        raise NotInFiber("outermost affine letter leaves S")
    cur = dec.elementaries[0].compose(ElementaryMap.from_affine(dec.affines[0]))
    qs = []
    for j in range(1, m):
        a_next = dec.affines[j]
        R = a_next.m[1][0]
        S_ = a_next.m[1][1]
        # choose b so that (a_next . B . swap) lands back in S
        b = ring.neg(ring.div(ring.mul(S_, cur.b), R))
        B, q = _factor_shear(field, cur, b)
        qs.append(q)
        carry = a_next.compose(B).compose(AffineMap.swap(field))
        assert carry.in_S(), "interface carry left S"
        cur = dec.elementaries[j].compose(ElementaryMap.from_affine(carry))
    a_out = dec.affines[m]
    P = a_out.m[0][0]
    Q = a_out.m[0][1]
    b = ring.neg(ring.div(ring.mul(Q, cur.b), P))
    B, q = _factor_shear(field, cur, b)
    qs.append(q)
    s = a_out.compose(B)
    assert ring.is_zero(s.m[0][1]) and ring.is_zero(s.m[1][0])
    out = FiberNormalForm(field, s.m[0][0], s.t[0], s.m[1][1], s.t[1],
                          tuple(qs)).validate()
    assert out.endo() == f, "normal form failed to recompose"
    return out


def conjugate_by_diagonal(lam0, lam1, fnf):
    """Normal form of g^{-1} . f . g for g = (lam0 z1, lam1 z2).

    Closed form: coefficient r of q_j picks up lam_j^{r+1} / lam_{j+1},
    where lam_j alternates lam0 (even j) / lam1 (odd j)."""
    field = fnf.field
    ring = field.ring()

    def lam(j):
        return lam0 if j % 2 == 0 else lam1

    qs = []
    for j1, q in enumerate(fnf.qs):
        j = j1 + 1
        scale = ring.div(lam(j), lam(j + 1))
        new_q = []
        acc = scale
        for r, c in enumerate(q):
            new_q.append(ring.mul(acc, c))
            acc = ring.mul(acc, lam(j))
        qs.append(up.ptrim(ring, new_q))
    m = fnf.syllables
    alpha = ring.div(ring.mul(fnf.alpha, lam(m - 1)), lam0)
    beta = ring.div(ring.mul(fnf.beta, lam(m)), lam1)
    return FiberNormalForm(field, alpha, ring.div(fnf.alpha0, lam0),
                           beta, ring.div(fnf.beta0, lam1),
                           tuple(qs)).validate()


def fiber_commutes_with_diagonal(fnf, lam0, lam1):
    """Exact commutation test against g = (lam0 z1, lam1 z2), using the
    per-coefficient closed form rather than composing polynomials."""
    ring = fnf.field.ring()

    def lam(j):
        return lam0 if j % 2 == 0 else lam1

    m = fnf.syllables
    if m % 2 == 0 and m > 0 and not ring.eq(lam0, lam1):
        return False
    if not ring.is_zero(fnf.alpha0) and not ring.eq(lam0, ring.one):
        return False
    if not ring.is_zero(fnf.beta0) and not ring.eq(lam1, ring.one):
        return False
    for j1, q in enumerate(fnf.qs):
        j = j1 + 1
        target = lam(j + 1)
        power = lam(j)  # lam_j^{r+1} at r = 0
        for c in q:
            if not ring.is_zero(c) and not ring.eq(power, target):
                return False
            power = ring.mul(power, lam(j))
    return True


# -- group action specs -------------------------------------------------

@dataclass(frozen=True)
class CyclicDiagonalAction:
    """Order-k group generated by (zeta^e z1, zeta z2), zeta primitive."""

    k: int
    e: int

    def __post_init__(self):
        if self.k < 1:
            raise UnsupportedGroup("group order must be positive")

    def generator(self, field):
        ring = field.ring()
        zeta = primitive_root_of_unity(field, self.k)
        if zeta is None:
            raise UnsupportedGroup(
                "field %s has no primitive %d-th root of unity" % (field, self.k))
        return AffineMap.diagonal(field, ring.pow(zeta, self.e), zeta)


@dataclass(frozen=True)
class TorusDiagonalAction:
    """One-parameter diagonal family (t^w1 z1, t^w2 z2)."""

    w1: int
    w2: int

    def __post_init__(self):
        if self.w1 == 0 and self.w2 == 0:
            raise UnsupportedGroup("trivial torus weights")

    def element(self, field, t):
        ring = field.ring()
        return AffineMap.diagonal(field, ring.pow(t, self.w1),
                                  ring.pow(t, self.w2))


def primitive_root_of_unity(field, k):
    """A payload of multiplicative order exactly k, or None."""
    ring = field.ring()
    for w in ring.roots_of_unity(k):
        ok = True
        for d in range(1, k):
            if k % d == 0 and ring.eq(ring.pow(w, d), ring.one):
                ok = False
                break
        if ok:
            return w
    return None


# -- centralizer inside the anchored family ------------------------------

@dataclass(frozen=True)
class FiberCentralizerShape:
    """Which normal-form coordinates survive equivariance.

    allowed[j-1] lists the exponents r with q_{j,r} free; a shape is empty
    when some mandatory top slot r = d_j - 1 is forbidden, or a parity
    obstruction kills the whole degree sequence."""

    degrees: tuple
    action: object
    empty: bool
    allowed: tuple
    alpha0_free: bool
    beta0_free: bool

    @property
    def coeff_slots(self):
        return sum(len(a) for a in self.allowed)

    @property
    def s_dim(self):
        return 2 + int(self.alpha0_free) + int(self.beta0_free)

    def contains(self, fnf):
        if fnf.degrees() != self.degrees:
            raise DegreeMismatch("normal form has degrees %s, shape wants %s"
                                 % (fnf.degrees(), self.degrees))
        if self.empty:
            return False
        ring = fnf.field.ring()
        if not self.alpha0_free and not ring.is_zero(fnf.alpha0):
            return False
        if not self.beta0_free and not ring.is_zero(fnf.beta0):
            return False
        for q, ok in zip(fnf.qs, self.allowed):
            for r, c in enumerate(q):
                if not ring.is_zero(c) and r not in ok:
                    return False
        return True

    def sample(self, field, rng, bound=9):
        """Random member over `field` (top slots forced nonzero)."""
        if self.empty:
            raise NotInFiber("shape is empty, nothing to sample")
        ring = field.ring()

        def unit():
            while True:
                v = ring.rand(rng, bound)
                if not ring.is_zero(v):
                    return v

        qs = []
        for dj, ok in zip(self.degrees, self.allowed):
            q = [ring.zero] * dj
            for r in ok:
                q[r] = ring.rand(rng, bound)
            q[dj - 1] = unit()
            qs.append(tuple(q))
        alpha0 = ring.rand(rng, bound) if self.alpha0_free else ring.zero
        beta0 = ring.rand(rng, bound) if self.beta0_free else ring.zero
        return FiberNormalForm(field, unit(), alpha0, unit(), beta0,
                               tuple(qs)).validate()


def classify_fiber_centralizer(degrees, action):
    """Shape of the equivariant members of the anchored family with the
    given degree sequence."""
    m = len(degrees)
    if any(d < 2 for d in degrees):
        raise DegreeMismatch("syllable degrees must be >= 2")
    if isinstance(action, CyclicDiagonalAction):
        k, e = action.k, action.e

        def odd_ok(r):
            return (r + 1 - e) % k == 0

        def even_ok(r):
            return (e * (r + 1) - 1) % k == 0

        parity_ok = (m % 2 != 0) or m == 0 or (e - 1) % k == 0
        alpha0_free = e % k == 0
        beta0_free = k == 1
    elif isinstance(action, TorusDiagonalAction):
        w1, w2 = action.w1, action.w2
        if w1 == 0 or w2 == 0:
            raise UnsupportedGroup("torus weights must both be nonzero here")

        def odd_ok(r):
            return (r + 1) * w2 == w1

        def even_ok(r):
            return (r + 1) * w1 == w2

        parity_ok = (m % 2 != 0) or m == 0 or w1 == w2
        alpha0_free = False
        beta0_free = False
    else:
        raise UnsupportedGroup("unrecognized action %r" % (action,))

    allowed = []
    empty = not parity_ok
    for j1, dj in enumerate(degrees):
        ok = odd_ok if (j1 + 1) % 2 == 1 else even_ok
        slots = tuple(r for r in range(dj) if ok(r))
        allowed.append(slots)
        if (dj - 1) not in slots:
            empty = True
    return FiberCentralizerShape(tuple(degrees), action, empty,
                                 tuple(allowed), alpha0_free, beta0_free)


# -- centralizer across all anchor pairs ---------------------------------

def section_map(field, chart, lam):
    """G-equivariant affine that moves the anchor pair along one chart:
    chart 0 gives (z1, lam*z1 + z2), chart 1 gives (lam*z1 + z2, z2)."""
    ring = field.ring()
    if isinstance(lam, int):
        lam = ring.from_int(lam)
    if chart == 0:
        return AffineMap(field, ((ring.one, ring.zero), (lam, ring.one)),
                         (ring.zero, ring.zero), check=False)
    if chart == 1:
        return AffineMap(field, ((ring.one, lam), (ring.zero, ring.one)),
                         (ring.zero, ring.zero), check=False)
    raise SchemaError("chart must be 0 or 1")


@dataclass(frozen=True)
class AdCentralizerReport:
    """How the equivariant locus sits over the space of anchor pairs.

    case 'bundle':       every anchor pair occurs; section_map sweeps them
                         and the fiber over each is fiber_std.
    case 'two-points':   only the pairs (0,0) and (inf,inf) occur; the first
                         carries fiber_std, the second the swap-conjugates
                         of fiber_swapped_inner.
    case 'single-point': only (0,0), carrying fiber_std.
    """

    degrees: tuple
    action: object
    case: str
    fiber_std: FiberCentralizerShape
    fiber_swapped_inner: object = None

    @property
    def component_count(self):
        if self.case == "bundle":
            return 1
        if self.case == "two-points":
            return int(not self.fiber_std.empty) \
                + int(not self.fiber_swapped_inner.empty)
        return int(not self.fiber_std.empty)


def classify_ad_centralizer(degrees, action):
    """Case split for the equivariant automorphisms with a given degree
    sequence, organized by their anchor pairs."""
    if not degrees:
        raise DegreeMismatch("need at least one syllable")
    d1 = degrees[0]
    if isinstance(action, TorusDiagonalAction):
        return AdCentralizerReport(tuple(degrees), action, "single-point",
                                   classify_fiber_centralizer(degrees, action))
    if not isinstance(action, CyclicDiagonalAction):
        raise UnsupportedGroup("unrecognized action %r" % (action,))
    k, e = action.k, action.e
    std = (e - d1) % k == 0
    swp = (e * d1 - 1) % k == 0
    if not (std or swp):
        raise UnsupportedGroup(
            "generator exponent %d is not aligned with degree %d mod %d"
            % (e, d1, k))
    fiber_std = classify_fiber_centralizer(degrees, action)
    if (d1 - 1) % k == 0:
        return AdCentralizerReport(tuple(degrees), action, "bundle", fiber_std)
    if math.gcd(k, d1) == 1:
        e_inv = pow(e, -1, k)
        inner = classify_fiber_centralizer(
            degrees, CyclicDiagonalAction(k, e_inv))
        return AdCentralizerReport(tuple(degrees), action, "two-points",
                                   fiber_std, inner)
    return AdCentralizerReport(tuple(degrees), action, "single-point",
                               fiber_std)


# -- centralizers of non-cyclic diagonal groups --------------------------

@dataclass(frozen=True)
class NonCyclicCentralizer:
    """Full centralizer of a non-cyclic diagonal group.

    kind 'general-linear':      all invertible linear maps
    kind 'monomial-triangular': (a1 z1 + b z2^v, a2 z2)   [or the swap
                                conjugate when swapped is True]
    kind 'diagonal':            (a1 z1, a2 z2)
    """

    kind: str
    v: int = 0
    swapped: bool = False

    def contains(self, endo):
        ring = endo.field.ring()
        if self.kind == "general-linear":
            from .plane import extract_affine
            aff = extract_affine(endo)
            return aff is not None and ring.is_zero(aff.t[0]) \
                and ring.is_zero(aff.t[1])
        if ring.is_zero(endo.p1.coeff(1, 0)) or ring.is_zero(endo.p2.coeff(0, 1)):
            return False
        ok1, ok2 = {(1, 0)}, {(0, 1)}
        if self.kind == "monomial-triangular":
            if self.swapped:
                ok2.add((self.v, 0))
            else:
                ok1.add((0, self.v))
        return set(endo.p1.terms) <= ok1 and set(endo.p2.terms) <= ok2


def _diagonal_group_elements(field, gens):
    """Closure of diagonal generator pairs; gens are (a, b) payloads."""
    ring = field.ring()
    seen = {}

    def key(pair):
        return (ring.sort_key(pair[0]), ring.sort_key(pair[1]))

    frontier = [(ring.one, ring.one)]
    seen[key(frontier[0])] = frontier[0]
    while frontier:
        cur = frontier.pop()
        for (a, b) in gens:
            nxt = (ring.mul(cur[0], a), ring.mul(cur[1], b))
            k = key(nxt)
            if k not in seen:
                if len(seen) > 4096:
                    raise UnsupportedGroup("diagonal group closure too large")
                seen[k] = nxt
                frontier.append(nxt)
    return list(seen.values())


def is_cyclic_diagonal_group(field, gens):
    """Whether the finite diagonal group generated by the (a, b) pairs is
    cyclic; returns (flag, elements)."""
    ring = field.ring()
    elements = _diagonal_group_elements(field, gens)
    n = len(elements)

    def order(pair):
        acc = pair
        o = 1
        while not (ring.eq(acc[0], ring.one) and ring.eq(acc[1], ring.one)):
            acc = (ring.mul(acc[0], pair[0]), ring.mul(acc[1], pair[1]))
            o += 1
        return o

    return any(order(p) == n for p in elements), elements


def centralizer_structure_noncyclic(field, action):
    """Centralizer of a non-cyclic diagonal group inside the automorphism
    group.  action: TorusDiagonalAction, or a list of diagonal generator
    payload pairs for a finite group.  Raises GroupIsCyclic when the input
    group is in fact cyclic (the anchored-family classification applies
    there instead)."""
    from .errors import GroupIsCyclic
    if isinstance(action, TorusDiagonalAction):
        w1, w2 = action.w1, action.w2
        if w1 == 0 or w2 == 0:
            raise UnsupportedGroup("torus weights must both be nonzero here")
        g = math.gcd(abs(w1), abs(w2))
        w1, w2 = w1 // g, w2 // g
        if w1 < 0 and w2 < 0:
            w1, w2 = -w1, -w2
        if w1 == w2:
            return NonCyclicCentralizer("general-linear")
        if w2 == 1 and w1 >= 2:
            return NonCyclicCentralizer("monomial-triangular", v=w1)
        if w1 == 1 and w2 >= 2:
            return NonCyclicCentralizer("monomial-triangular", v=w2,
                                        swapped=True)
        return NonCyclicCentralizer("diagonal")
    cyclic, _ = is_cyclic_diagonal_group(field, action)
    if cyclic:
        raise GroupIsCyclic("group is cyclic; use the anchored-family route")
    return NonCyclicCentralizer("diagonal")


# -- equivariance tests and the brute-force commutant ---------------------

def torus_weight_of(poly, w1, w2):
    """The common weight of all monomials, or None if mixed/zero."""
    weight = None
    for (i, j) in poly.terms:
        w = w1 * i + w2 * j
        if weight is None:
            weight = w
        elif w != weight:
            return None
    return weight


def is_torus_equivariant(endo, w1, w2):
    """f commutes with every (t^w1 z1, t^w2 z2) iff each component is
    weight-homogeneous of the matching weight."""
    if endo.p1.is_zero() or endo.p2.is_zero():
        return False
    return (torus_weight_of(endo.p1, w1, w2) == w1
            and torus_weight_of(endo.p2, w1, w2) == w2)


def is_equivariant(endo, generators=None, weights=None):
    """Commutation with a list of affine generators and/or a torus."""
    if weights is not None:
        if not is_torus_equivariant(endo, weights[0], weights[1]):
            return False
    for g in (generators or ()):
        ge = g.to_endo() if isinstance(g, AffineMap) else g
        if endo.compose(ge) != ge.compose(endo):
            return False
    return True


@dataclass(frozen=True)
class CommutantSolution:
    """Solution space of the linear commutation equations up to a degree
    bound.  For diagonal/torus inputs the space is a free monomial span;
    otherwise a basis from the kernel of the full linear system."""

    field: object
    bound: int
    support: tuple = None   # (allowed monomials comp 1, comp 2) or None
    basis: tuple = None     # tuple of PlaneEndo when support is None

    @property
    def dimension(self):
        if self.support is not None:
            return len(self.support[0]) + len(self.support[1])
        return len(self.basis)

    def contains(self, endo):
        ring = self.field.ring()
        if endo.degree() > self.bound:
            return False
        if self.support is not None:
            return (set(endo.p1.terms) <= set(self.support[0])
                    and set(endo.p2.terms) <= set(self.support[1]))
        monos = _monomials_up_to(self.bound)
        idx = {mn: i for i, mn in enumerate(monos)}
        n = len(monos)
        rows = []
        for v in self.basis:
            row = [ring.zero] * (2 * n)
            for (ij, c) in v.p1.terms.items():
                row[idx[ij]] = c
            for (ij, c) in v.p2.terms.items():
                row[n + idx[ij]] = c
            rows.append(row)
        target = [ring.zero] * (2 * n)
        for (ij, c) in endo.p1.terms.items():
            target[idx[ij]] = c
        for (ij, c) in endo.p2.terms.items():
            target[n + idx[ij]] = c
        cols = [[rows[r][c] for r in range(len(rows))] for c in range(2 * n)]
        return linalg.solve(ring, cols, target) is not None


def _monomials_up_to(bound):
    return [(i, j) for t in range(bound + 1) for i in range(t + 1)
            for j in [t - i]]


def solve_commutant_bruteforce(field, bound, generators=None, weights=None):
    """All endomorphism pairs of degree <= bound commuting with the given
    diagonal/linear generators and torus, by direct linear algebra."""
    from .errors import BoundTooLarge
    if bound > 10:
        raise BoundTooLarge("commutant solver capped at degree 10")
    ring = field.ring()
    monos = _monomials_up_to(bound)
    gens = list(generators or ())
    diag = all(ring.is_zero(g.m[0][1]) and ring.is_zero(g.m[1][0])
               and ring.is_zero(g.t[0]) and ring.is_zero(g.t[1])
               for g in gens)
    if diag:
        sup1, sup2 = [], []
        for (i, j) in monos:
            ok1 = ok2 = True
            if weights is not None:
                w = weights[0] * i + weights[1] * j
                ok1 = w == weights[0]
                ok2 = w == weights[1]
            for g in gens:
                a, b = g.m[0][0], g.m[1][1]
                w = ring.mul(ring.pow(a, i), ring.pow(b, j))
                ok1 = ok1 and ring.eq(w, a)
                ok2 = ok2 and ring.eq(w, b)
                if not (ok1 or ok2):
                    break
            if ok1:
                sup1.append((i, j))
            if ok2:
                sup2.append((i, j))
        return CommutantSolution(field, bound,
                                 support=(tuple(sup1), tuple(sup2)))
    # general linear generators: assemble f(g(z)) = g(f(z)) coefficientwise
    idx = {mn: i for i, mn in enumerate(monos)}
    n = len(monos)
    nun = 2 * n
    rows = []
    for g in gens:
        if not (ring.is_zero(g.t[0]) and ring.is_zero(g.t[1])):
            raise UnsupportedGroup("commutant solver expects linear generators")
        ge = g.to_endo()
        msub = {}
        for (i, j) in monos:
            msub[(i, j)] = BiPoly.monomial(field, i, j).substitute(ge.p1, ge.p2)
        out_monos = sorted(set(k for mp in msub.values() for k in mp.terms)
                           | set(monos))
        for comp in (0, 1):
            for om in out_monos:
                row = [ring.zero] * nun
                for (i, j) in monos:
                    c = msub[(i, j)].terms.get(om)
                    if c is not None:
                        row[comp * n + idx[(i, j)]] = c
                # rhs: comp-th row of g matrix applied to (f1, f2)
                if om in idx:
                    row[idx[om]] = ring.sub(row[idx[om]], g.m[comp][0])
                    row[n + idx[om]] = ring.sub(row[n + idx[om]], g.m[comp][1])
                rows.append(row)
    if weights is not None:
        for (i, j) in monos:
            w = weights[0] * i + weights[1] * j
            if w != weights[0]:
                row = [ring.zero] * nun
                row[idx[(i, j)]] = ring.one
                rows.append(row)
            if w != weights[1]:
                row = [ring.zero] * nun
                row[n + idx[(i, j)]] = ring.one
                rows.append(row)
    basis = linalg.nullspace(ring, rows, nun)
    endos = []
    for v in basis:
        t1 = {monos[i]: v[i] for i in range(n) if not ring.is_zero(v[i])}
        t2 = {monos[i]: v[n + i] for i in range(n) if not ring.is_zero(v[n + i])}
        endos.append(PlaneEndo(field, BiPoly(field, t1), BiPoly(field, t2)))
    return CommutantSolution(field, bound, basis=tuple(endos))
