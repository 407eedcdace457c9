"""Sparse multivariate polynomials and lex Groebner bases.

Two consumers: eliminating the source variables from the graph ideal of
a plane map reduced at a center (which yields its image curve), and
tracking how composition coefficients depend on generic perturbation
symbols.  A polynomial is a dict from exponent tuples to nonzero scalar
payloads; Python tuple comparison is exactly lex with position 0 most
significant, so the elimination order comes from plain max/sort.
"""


def mconst(ring, nvars, c):
    if ring.is_zero(c):
        return {}
    return {(0,) * nvars: c}


def mvar(ring, nvars, i):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): ring.one}


def madd(ring, f, g):
    out = dict(f)
    for e, c in g.items():
        s = ring.add(out.get(e, ring.zero), c)
        if ring.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def mneg(ring, f):
    return {e: ring.neg(c) for e, c in f.items()}


def msub(ring, f, g):
    return madd(ring, f, mneg(ring, g))


def mscale(ring, f, c):
    if ring.is_zero(c):
        return {}
    return {e: ring.mul(c, v) for e, v in f.items()}


def mmul(ring, f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = ring.add(out.get(e, ring.zero), ring.mul(c1, c2))
            if ring.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    return out


def mtotal_deg(f):
    return max((sum(e) for e in f), default=-1)


def mlead(f):
    e = max(f)
    return e, f[e]


def _shifted(f, s):
    return {tuple(a + b for a, b in zip(e, s)): c for e, c in f.items()}


def _monic(ring, f):
    _, c = mlead(f)
    if ring.eq(c, ring.one):
        return f
    return mscale(ring, f, ring.inv(c))


def normal_form(ring, f, basis):
    """Full remainder of f modulo a list of monic polynomials."""
    leads = [mlead(g)[0] for g in basis]
    work = dict(f)
    out = {}
    while work:
        e = max(work)
        c = work.pop(e)
        for g, le in zip(basis, leads):
            if all(a >= b for a, b in zip(e, le)):
                shift = tuple(a - b for a, b in zip(e, le))
                for me, mc in g.items():
                    if me == le:
                        continue
                    ne = tuple(a + b for a, b in zip(me, shift))
                    s = ring.sub(work.get(ne, ring.zero), ring.mul(c, mc))
                    if ring.is_zero(s):
                        work.pop(ne, None)
                    else:
                        work[ne] = s
                break
        else:
            out[e] = c
    return out


def _spoly(ring, f, g):
    # both monic, so the S-polynomial needs no coefficient scaling
    ef = mlead(f)[0]
    eg = mlead(g)[0]
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    return msub(ring,
                _shifted(f, tuple(l - a for l, a in zip(lcm, ef))),
                _shifted(g, tuple(l - a for l, a in zip(lcm, eg))))


def buchberger(ring, gens):
    """Reduced lex Groebner basis, sorted by increasing leading monomial."""
    basis = [_monic(ring, g) for g in gens if g]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        ei = mlead(basis[i])[0]
        ej = mlead(basis[j])[0]
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading monomials reduce to zero
        s = normal_form(ring, _spoly(ring, basis[i], basis[j]), basis)
        if s:
            basis.append(_monic(ring, s))
            pairs.extend((len(basis) - 1, t) for t in range(len(basis) - 1))
    keep = []
    for i, g in enumerate(basis):
        e = mlead(g)[0]
        dominated = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            eh = mlead(h)[0]
            if all(a >= b for a, b in zip(e, eh)) and (e != eh or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(ring, g, others) if others else g
        if r:
            out.append(_monic(ring, r))
    out.sort(key=lambda p: mlead(p)[0])
    return out


def eliminate(ring, gens, drop):
    """Basis members free of the first `drop` variables."""
    gb = buchberger(ring, gens)
    return [g for g in gb
            if all(e[i] == 0 for e in g for i in range(drop))]


class MPolyRing:
    """Scalar-ring facade over MPoly dicts in a fixed variable count.

    Plugging this under the plane composition code tracks coefficient
    polynomials in generic symbols without a parallel implementation.
    Division is deliberately absent: the consumers only add and multiply.
    """

    def __init__(self, base, nvars):
        self.base = base
        self.nvars = nvars
        self.zero = {}
        self.one = mconst(base, nvars, base.one)

    def var(self, i):
        return mvar(self.base, self.nvars, i)

    def from_int(self, n):
        return mconst(self.base, self.nvars, self.base.from_int(n))

    def add(self, a, b):
        return madd(self.base, a, b)

    def sub(self, a, b):
        return msub(self.base, a, b)

    def neg(self, a):
        return mneg(self.base, a)

    def mul(self, a, b):
        return mmul(self.base, a, b)

    def pow(self, a, n):
        out = self.one
        acc = a
        while n:
            if n & 1:
                out = self.mul(out, acc)
            n >>= 1
            if n:
                acc = self.mul(acc, acc)
        return out

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def to_str(self, a):
        if not a:
            return "0"
        parts = []
        for e in sorted(a, reverse=True):
            mono = "*".join("s%d^%d" % (i, k) for i, k in enumerate(e) if k)
            c = self.base.to_str(a[e])
            parts.append(c if not mono else "%s*%s" % (c, mono))
        return " + ".join(parts)


class PolyContext:
    """Minimal stand-in for a field descriptor over an MPolyRing."""

    def __init__(self, ring):
        self._ring = ring

    def ring(self):
        return self._ring

    def __str__(self):
        return "poly context in %d symbols" % self._ring.nvars
