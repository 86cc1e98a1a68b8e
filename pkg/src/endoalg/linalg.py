"""Exact dense linear algebra over Fraction or GF entries.

Matrices are lists of rows.  Nothing here assumes a particular field beyond
``+ - * /`` and comparison with 0, so the same code serves the rational and
the prime-field regimes.
"""
from __future__ import annotations

from fractions import Fraction


def zeros(rows, cols, zero):
    return [[zero] * cols for _ in range(rows)]


def identity(n, zero, one):
    m = zeros(n, n, zero)
    for i in range(n):
        m[i][i] = one
    return m


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = row[0] * b[0][j] if inner else 0
            for k in range(1, inner):
                acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def matvec(m, v, zero):
    return [sum((r * x for r, x in zip(row, v)), start=zero) for row in m]


def rref(m):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    The input is not modified.
    """
    rows = [list(r) for r in m]
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[: len(pivots)], pivots


def rank(m) -> int:
    return len(rref(m)[1]) if m else 0


def nullspace(m, n_cols, zero, one):
    """Basis of ``{x : m x = 0}``, one vector per free column.

    ``n_cols`` is needed because ``m`` may have no rows.
    """
    if not m:
        return [[one if i == j else zero for i in range(n_cols)] for j in range(n_cols)]
    red, pivots = rref(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * n_cols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(m, b, zero):
    """One solution of ``m x = b`` or ``None``."""
    n_cols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [zero] * n_cols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x


def inverse(m, zero, one):
    """Inverse of a square matrix; raises ZeroDivisionError if singular."""
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n, zero, one))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def trace(m):
    return sum((m[i][i] for i in range(1, len(m))), start=m[0][0])


def charpoly_faddeev(m):
    """Characteristic polynomial det(tI - m) over the rationals.

    Faddeev-LeVerrier recurrence; coefficients are returned lowest degree
    first with leading coefficient 1.  Needs division by 1..n, so it is only
    valid in characteristic 0.
    """
    n = len(m)
    m = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = zeros(n, n, Fraction(0))
    for k in range(1, n + 1):
        mk = matmul(m, mk)
        c = coeffs[n - k + 1]
        for i in range(n):
            mk[i][i] += c
        coeffs[n - k] = -trace(matmul(m, mk)) / k
    return coeffs


def charpoly_berkowitz(m, zero, one):
    """Characteristic polynomial by Berkowitz' division-free algorithm.

    Works over any commutative ring, in particular GF(p) for small p where
    Faddeev-LeVerrier breaks down.  Lowest degree first, monic.
    """
    n = len(m)
    poly = [one]  # highest degree first while building
    for k in range(n):
        a = m[k][k]
        row = [m[k][j] for j in range(k)]
        col = [m[i][k] for i in range(k)]
        sub = [r[:k] for r in m[:k]]
        q = [one, -a]
        v = col
        for _ in range(k):
            q.append(-sum((r * x for r, x in zip(row, v)), start=zero))
            v = [sum((s * x for s, x in zip(srow, v)), start=zero) for srow in sub]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(k + 1):
                if 0 <= i - j < len(q):
                    acc = acc + q[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly[::-1]


def is_nilpotent_matrix(m) -> bool:
    """True iff m^n = 0 (n = size), computed by repeated products."""
    n = len(m)
    p = m
    for _ in range(n - 1):
        p = matmul(p, m)
    return all(x == 0 for row in p for x in row)
