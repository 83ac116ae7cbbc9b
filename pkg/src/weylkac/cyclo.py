"""Exact arithmetic over cyclotomic fields Q(zeta_n) and small exact linear algebra.

Elements are stored densely as polynomials in zeta_n reduced modulo the n-th
cyclotomic polynomial, with Fraction coefficients.  All conductors appearing
in this package are small (orders of Weyl group elements), so phi(n) <= 8 and
dense representation is the right tradeoff.

Sign determination of real elements never decides "zero" numerically: zero is
a symbolic coefficient test, and the sign of a nonzero element is certified by
interval evaluation at escalating precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

Coeffs = tuple[Fraction, ...]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree, monic."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact polynomial division.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q[i] = c // den[-1]
        for j, dj in enumerate(den):
            num[i + j] -= q[i] * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder in cyclotomic division")
    return q


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[Coeffs, ...]:
    """zeta_n^j as a reduced coefficient vector, for 0 <= j < n."""
    deg = _phi(n)
    phi_n = cyclotomic_polynomial(n)
    # x^deg = -(phi_n minus leading term)
    rows: list[Coeffs] = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x
        carry = cur[deg - 1]
        nxt = [Fraction(0)] + cur[: deg - 1]
        if carry:
            for i in range(deg):
                nxt[i] -= carry * phi_n[i]
        cur = nxt
    return tuple(rows)


class CycloNumber:
    """An element of Q(zeta_n), reduced modulo Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        deg = _phi(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            raise ValueError("coefficient vector longer than phi(n)")
        cs += [Fraction(0)] * (deg - len(cs))
        self.n = n
        self.coeffs: Coeffs = tuple(cs)

    @classmethod
    def from_rational(cls, n: int, q) -> "CycloNumber":
        return cls(n, [Fraction(q)])

    @classmethod
    def zeta_power(cls, n: int, k: int) -> "CycloNumber":
        return cls(n, _power_table(n)[k % n])

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def _match(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.n != self.n:
                if other.is_rational():
                    return CycloNumber.from_rational(self.n, other.rational_value())
                if self.is_rational():
                    raise _PromoteSelf(other)
                raise ValueError("conductor mismatch: %d vs %d" % (self.n, other.n))
            return other
        return CycloNumber.from_rational(self.n, Fraction(other))

    def __add__(self, other):
        try:
            o = self._match(other)
        except _PromoteSelf as p:
            return CycloNumber.from_rational(p.other.n, self.rational_value()) + p.other
        return CycloNumber(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            return other
        return CycloNumber.from_rational(self.n, Fraction(other))

    def __mul__(self, other):
        try:
            o = self._match(other)
        except _PromoteSelf as p:
            return CycloNumber.from_rational(p.other.n, self.rational_value()) * p.other
        deg = len(self.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloNumber(self.n, _reduce(self.n, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        # extended Euclid on (self, Phi_n) over Q[x]
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        lead = _poly_trim(r0)
        if len(lead) != 1:
            raise ArithmeticError("element not invertible mod Phi_n")
        inv_lead = 1 / lead[0]
        return CycloNumber(self.n, _reduce(self.n, [c * inv_lead for c in s0]))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def galois(self, k: int) -> "CycloNumber":
        """Image under zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("galois exponent not coprime to conductor")
        table = _power_table(self.n)
        out = [Fraction(0)] * len(self.coeffs)
        for j, a in enumerate(self.coeffs):
            if a:
                row = table[(j * k) % self.n]
                for i, r in enumerate(row):
                    out[i] += a * r
        return CycloNumber(self.n, out)

    def conjugate(self) -> "CycloNumber":
        """Complex conjugation under zeta_n -> e^(2 pi i / n), i.e. zeta -> zeta^(-1)."""
        if self.n == 1:
            return self
        return self.galois(self.n - 1)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            if other.n != self.n:
                return (
                    self.is_rational()
                    and other.is_rational()
                    and self.rational_value() == other.rational_value()
                )
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if j == 0:
                terms.append(str(a))
            elif j == 1:
                terms.append("%s*z%d" % (a, self.n))
            else:
                terms.append("%s*z%d^%d" % (a, self.n, j))
        return " + ".join(terms) if terms else "0"

    # -- numerics ----------------------------------------------------------

    def interval(self, prec: int):
        """Complex interval enclosure at the embedding zeta_n -> e^(2 pi i / n)."""
        iv = mpmath.iv
        with mpmath.workprec(prec):
            iv.prec = prec
            re = iv.mpf(0)
            im = iv.mpf(0)
            two_pi = 2 * iv.pi
            for j, a in enumerate(self.coeffs):
                if a:
                    c = iv.mpf(a.numerator) / iv.mpf(a.denominator)
                    ang = two_pi * iv.mpf(j) / iv.mpf(self.n)
                    re += c * iv.cos(ang)
                    im += c * iv.sin(ang)
        return re, im

    def approx(self) -> complex:
        re = 0.0
        im = 0.0
        for j, a in enumerate(self.coeffs):
            if a:
                ang = 2.0 * math.pi * j / self.n
                c = float(a)
                re += c * math.cos(ang)
                im += c * math.sin(ang)
        return complex(re, im)


class _PromoteSelf(Exception):
    def __init__(self, other):
        self.other = other


def _reduce(n: int, prod: list[Fraction]) -> list[Fraction]:
    deg = _phi(n)
    table = _power_table(n)
    out = list(prod[:deg]) + [Fraction(0)] * max(0, deg - len(prod))
    for j in range(deg, len(prod)):
        a = prod[j]
        if a:
            row = table[j % n]
            for i, r in enumerate(row):
                out[i] += a * r
    return out[:deg]


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    m = max(len(a), len(b))
    a = a + [Fraction(0)] * (m - len(a))
    b = b + [Fraction(0)] * (m - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for j, bj in enumerate(b):
            r[k + j] -= c * bj
        r = _poly_trim(r[:-1])
    return q, r


def zeta(n: int, k: int = 1) -> CycloNumber:
    """zeta_n^k as an exact cyclotomic number."""
    return CycloNumber.zeta_power(n, k)


def real_sign(x: CycloNumber) -> int:
    """Exact sign of a real cyclotomic number: -1, 0, or +1.

    Raises ValueError if x is not fixed by zeta -> zeta^(-1).
    Zero is decided symbolically; a nonzero sign is certified by a float
    evaluation with a rigorous error budget, escalating to interval
    arithmetic when the fast bound is inconclusive.
    """
    if not x.is_real():
        raise ValueError("real_sign on a non-real cyclotomic number")
    if x.is_zero():
        return 0
    # fast path: float dot with conservative error budget
    val = 0.0
    scale = 0.0
    for j, a in enumerate(x.coeffs):
        if a:
            c = float(a)
            val += c * math.cos(2.0 * math.pi * j / x.n)
            scale += abs(c)
    # each term carries a few ulps from cos and the Fraction->float rounding
    budget = scale * 1e-12 + 1e-300
    if abs(val) > budget:
        return 1 if val > 0 else -1
    prec = 128
    while prec <= 1 << 14:
        re, _ = x.interval(prec)
        if re > 0:
            return 1
        if re < 0:
            return -1
        prec *= 2
    raise ArithmeticError("sign determination did not converge (nonzero input)")


# -- matrices ----------------------------------------------------------------


class CycloMatrix:
    """Rectangular matrix over Q(zeta_n) with exact kernel/rank."""

    def __init__(self, n: int, rows):
        self.n = n
        self.rows = [[self._elt(e) for e in row] for row in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")

    def _elt(self, e) -> CycloNumber:
        if isinstance(e, CycloNumber):
            if e.n != self.n and not e.is_rational():
                raise ValueError("conductor mismatch in matrix entry")
            if e.n != self.n:
                return CycloNumber.from_rational(self.n, e.rational_value())
            return e
        return CycloNumber.from_rational(self.n, Fraction(e))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def _echelon(self):
        """Row echelon form (destructive copy); returns (rows, pivot columns)."""
        rows = [list(r) for r in self.rows]
        m, c = self.shape
        pivots = []
        r = 0
        for col in range(c):
            piv = None
            for i in range(r, m):
                if not rows[i][col].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = rows[r][col].inverse()
            rows[r] = [e * inv for e in rows[r]]
            for i in range(m):
                if i != r and not rows[i][col].is_zero():
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
            if r == m:
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel_basis(self) -> list[list[CycloNumber]]:
        """Exact basis of the right kernel; empty list when injective."""
        m, c = self.shape
        rows, pivots = self._echelon()
        free = [j for j in range(c) if j not in pivots]
        basis = []
        zero = CycloNumber.from_rational(self.n, 0)
        one = CycloNumber.from_rational(self.n, 1)
        for f in free:
            v = [zero] * c
            v[f] = one
            for r, pc in enumerate(pivots):
                v[pc] = -rows[r][f]
            basis.append(v)
        return basis

    def mul_vector(self, v) -> list[CycloNumber]:
        return [
            sum((a * b for a, b in zip(row, v)), CycloNumber.from_rational(self.n, 0))
            for row in self.rows
        ]


def kernel_basis(m: CycloMatrix) -> list[list[CycloNumber]]:
    return m.kernel_basis()
