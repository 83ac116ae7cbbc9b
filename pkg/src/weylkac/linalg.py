"""Small exact linear algebra over the rationals (dimensions <= 9 here)."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def identity(r: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(r)] for i in range(r)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)
    ]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def det(a) -> Fraction:
    """Exact determinant by fraction-free style elimination on a copy."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * d


def inverse(a) -> Matrix:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def solve(a, v):
    """Solve a x = v exactly (a square invertible)."""
    return mat_vec(inverse(a), [Fraction(x) for x in v])


def char_poly(a) -> list[int]:
    """Characteristic polynomial det(xI - a), ascending coefficients.

    Faddeev-LeVerrier with exact rationals; input integral, so the output
    coefficients are integers.
    """
    n = len(a)
    am = [[Fraction(x) for x in row] for row in a]
    coeffs = [Fraction(1)] * (n + 1)  # c[n] = 1 leading
    out = [Fraction(0)] * (n + 1)
    out[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = a M_{k-1} + c_{n-k+1} I
        if k > 1:
            m = mat_mul(am, m)
        else:
            m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            m[i][i] += c
        am_m = mat_mul(am, m)
        tr = sum(am_m[i][i] for i in range(n))
        c = -tr / k
        out[n - k] = c
    ints = []
    for x in out:
        if x.denominator != 1:
            raise ArithmeticError("non-integer characteristic coefficient")
        ints.append(int(x))
    return ints


def rational_kernel(a) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix."""
    if not a:
        return []
    rows = [[Fraction(x) for x in row] for row in a]
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for rr, pc in enumerate(pivots):
            v[pc] = -rows[rr][f]
        basis.append(v)
    return basis
