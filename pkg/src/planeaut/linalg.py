"""Dense exact linear algebra over a scalar ring (actually a field).

Rows are lists of raw payloads.  Small systems only; no pivoting tricks
beyond picking the first nonzero entry.
"""


def rref(ring, rows):
    """Reduced row echelon form in place (on copies); returns (rows, pivots)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not ring.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not ring.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ring.sub(a, ring.mul(f, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(ring, rows, ncols):
    """Basis of the solution space of rows * v = 0, as tuples."""
    red, pivots = rref(ring, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ring.zero] * ncols
        v[fc] = ring.one
        for ri, pc in enumerate(pivots):
            v[pc] = ring.neg(red[ri][fc])
        basis.append(tuple(v))
    return basis


def solve(ring, rows, rhs):
    """One solution of rows * v = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(ring, aug)
    n = len(rows[0]) if rows else 0
    for row in red:
        if all(ring.is_zero(x) for x in row[:-1]) and not ring.is_zero(row[-1]):
            return None
    v = [ring.zero] * n
    for ri, pc in enumerate(pivots):
        if pc == n:
            return None
        v[pc] = red[ri][-1]
    return tuple(v)
