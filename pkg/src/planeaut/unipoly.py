"""Dense univariate polynomial helpers over an abstract coefficient ring.

Polynomials are tuples of raw ring payloads in ascending degree order with
no trailing zeros; the zero polynomial is the empty tuple.  The `ring`
argument is any object exposing zero/one/add/sub/mul/div/neg/is_zero/eq
on raw payloads (see fields.ScalarRing).  Everything here is exact.
"""

from .errors import DivisionByZero

INF = float("inf")


def ptrim(ring, cs):
    cs = list(cs)
    while cs and ring.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def pdeg(cs):
    # degree of the zero polynomial is -inf by convention
    return len(cs) - 1 if cs else -INF


def pconst(ring, c):
    return () if ring.is_zero(c) else (c,)


def padd(ring, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ring.zero
        y = b[i] if i < len(b) else ring.zero
        out.append(ring.add(x, y))
    return ptrim(ring, out)


def pneg(ring, a):
    return tuple(ring.neg(c) for c in a)


def psub(ring, a, b):
    return padd(ring, a, pneg(ring, b))


def pscale(ring, c, a):
    if ring.is_zero(c):
        return ()
    return ptrim(ring, [ring.mul(c, x) for x in a])


def pmul(ring, a, b):
    if not a or not b:
        return ()
    out = [ring.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ring.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return ptrim(ring, out)


def pdivmod(ring, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [ring.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = ring.inv(b[-1])
    while len(a) >= len(b):
        while a and ring.is_zero(a[-1]):
            a.pop()
        if len(a) < len(b):
            break
        c = ring.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = ring.sub(a[shift + i], ring.mul(c, y))
        a.pop()
    return ptrim(ring, q), ptrim(ring, a)


def pmonic(ring, a):
    if not a:
        return a
    return pscale(ring, ring.inv(a[-1]), a)


def pgcd(ring, a, b):
    while b:
        a, b = b, pdivmod(ring, a, b)[1]
    return pmonic(ring, a)


def pext_gcd(ring, a, b):
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (ring.one,), ()
    t0, t1 = (), (ring.one,)
    while r1:
        q, r = pdivmod(ring, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(ring, s0, pmul(ring, q, s1))
        t0, t1 = t1, psub(ring, t0, pmul(ring, q, t1))
    if not r0:
        return (), s0, t0
    c = ring.inv(r0[-1])
    return pscale(ring, c, r0), pscale(ring, c, s0), pscale(ring, c, t0)


def peval(ring, a, x):
    acc = ring.zero
    for c in reversed(a):
        acc = ring.add(ring.mul(acc, x), c)
    return acc


def pderiv(ring, a):
    out = []
    for i in range(1, len(a)):
        m = a[i]
        for _ in range(i - 1):
            m = ring.add(m, a[i])  # i * a[i] without assuming int coercion
        out.append(m)
    return ptrim(ring, out)


def ppow(ring, a, n):
    out = (ring.one,)
    base = a
    while n > 0:
        if n & 1:
            out = pmul(ring, out, base)
        base = pmul(ring, base, base)
        n >>= 1
    return out


def pshift_var(ring, a, c):
    """Substitute x -> x + c."""
    out = ()
    xc = (c, ring.one)
    for coeff in reversed(a):
        out = padd(ring, pmul(ring, out, xc), pconst(ring, coeff))
    return out


def pshift_scale(ring, a, s, c):
    """Substitute x -> s*x + c."""
    out = ()
    sx = ptrim(ring, (c, s))
    for coeff in reversed(a):
        out = padd(ring, pmul(ring, out, sx), pconst(ring, coeff))
    return out


def pcompose(ring, a, b):
    """Substitute x -> b(x) into a."""
    out = ()
    for coeff in reversed(a):
        out = padd(ring, pmul(ring, out, b), pconst(ring, coeff))
    return out


def ord_at(ring, a, center):
    """Multiplicity of (x - center) in a; INF for the zero polynomial."""
    if not a:
        return INF
    if ring.is_zero(center):
        n = 0
        while n < len(a) and ring.is_zero(a[n]):
            n += 1
        return n
    n = 0
    cur = a
    while True:
        if not ring.is_zero(peval(ring, cur, center)):
            return n
        # synthetic division by (x - center), exact because center is a root
        out = [ring.zero] * (len(cur) - 1)
        carry = ring.zero
        for i in range(len(cur) - 1, 0, -1):
            carry = ring.add(cur[i], ring.mul(carry, center))
            out[i - 1] = carry
        cur = ptrim(ring, out)
        n += 1
        if not cur:
            return INF
