"""Spectral analysis of twisted Weyl elements on the reflection representation.

Angles are stored as exact rational turns k/d (theta = 2*pi*k/d), never as
floats.  Eigenspaces are computed over Q(zeta_d) at the element's own order d,
since every eigenvalue of an order-d element is a d-th root of unity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .cyclo import CycloMatrix, CycloNumber, cyclotomic_polynomial, real_sign, zeta
from .roots import RootSystem, TwistedWeylElement

__all__ = [
    "AngleSpectrum",
    "Filtration",
    "Regularity",
    "char_poly",
    "cyclotomic_exponents",
    "angle_spectrum",
    "filtration_levis",
    "good_position_conjugate",
    "regularity",
]


def char_poly(g: TwistedWeylElement) -> tuple[int, ...]:
    """Characteristic polynomial of g on the reflection representation,
    ascending coefficients, monic of degree = rank."""
    return tuple(linalg.char_poly([list(r) for r in g.matrix]))


def _divisors(d: int) -> list[int]:
    return [m for m in range(1, d + 1) if d % m == 0]


def cyclotomic_exponents(poly, d: int) -> dict[int, int]:
    """Factor an order-d element's characteristic polynomial into cyclotomics.

    Returns {m: multiplicity} over divisors m of d; raises if the polynomial
    is not a product of such cyclotomics.
    """
    rem = list(poly)
    out: dict[int, int] = {}
    for m in _divisors(d):
        phi = list(cyclotomic_polynomial(m))
        while len(rem) >= len(phi):
            try:
                q = _int_poly_div(rem, phi)
            except ArithmeticError:
                break
            out[m] = out.get(m, 0) + 1
            rem = q
    if len(rem) != 1 or rem[0] != 1:
        raise ArithmeticError("characteristic polynomial is not cyclotomic of order dividing %d" % d)
    return out


def _int_poly_div(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("not divisible")
        q[i] = c // den[-1]
        for j, dj in enumerate(den):
            num[i + j] -= q[i] * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("not divisible")
    return q


@dataclass(frozen=True)
class AngleSpectrum:
    """Sorted angle set Gamma of an order-d element, as rational turns."""

    order: int
    angles: tuple[Fraction, ...]  # turns k/d, increasing, in [0, 1/2]
    multiplicities: tuple[int, ...]  # complex eigenspace dimension of e^(i theta)

    def __post_init__(self):
        assert all(0 <= a <= Fraction(1, 2) for a in self.angles)
        assert list(self.angles) == sorted(self.angles)

    def real_dims(self) -> tuple[int, ...]:
        """dim V(w, theta) per angle (2m strictly inside (0, pi), m at 0, pi)."""
        out = []
        for a, m in zip(self.angles, self.multiplicities):
            out.append(m if a in (0, Fraction(1, 2)) else 2 * m)
        return tuple(out)

    def numerators(self) -> tuple[int, ...]:
        return tuple(int(a * self.order) for a in self.angles)


@dataclass(frozen=True)
class Filtration:
    """Eigenspace filtration F_1 c ... c F_k and its annihilator Levi chain."""

    element: TwistedWeylElement
    spectrum: AngleSpectrum
    bases: tuple[CycloMatrix, ...]  # columns span F_i (eigenvectors for j <= i)
    dims: tuple[int, ...]  # real dims of F_0..F_k
    levis: tuple[frozenset, ...]  # root index sets Delta_0 .. Delta_k
    strict: bool

    @property
    def levi_simples(self) -> tuple[frozenset, ...]:
        rs = self.element.rs
        simples = [rs.simple_root_index(i) for i in range(1, rs.rank + 1)]
        return tuple(
            frozenset(i + 1 for i, idx in enumerate(simples) if idx in levi)
            for levi in self.levis
        )


class _Analysis:
    """Everything the algorithm needs about one element, computed once."""

    def __init__(self, g: TwistedWeylElement):
        rs = g.rs
        self.g = g
        self.d = g.order()
        self.poly = char_poly(g)
        self.exps = cyclotomic_exponents(self.poly, self.d)
        d = self.d
        ks = sorted(
            k
            for k in range(0, d // 2 + 1)
            if self.exps.get(d // _gcd(k, d), 0) > 0
        )
        self.ks = ks
        self.mults = [self.exps[d // _gcd(k, d)] for k in ks]
        m = [list(r) for r in g.matrix]
        r = rs.rank
        self.kernels = []
        for k in ks:
            zk = zeta(d, k)
            rows = [
                [
                    CycloNumber.from_rational(d, m[i][j]) - (zk if i == j else 0)
                    for j in range(r)
                ]
                for i in range(r)
            ]
            ker = CycloMatrix(d, rows).kernel_basis()
            if len(ker) != self.exps[d // _gcd(k, d)]:
                raise ArithmeticError("kernel dimension disagrees with characteristic polynomial")
            self.kernels.append(ker)
        # pairings of positive roots with every kernel vector, per level
        self.root_orth = []  # root_orth[j][alpha_pos_idx] = True if alpha _|_ V(w, theta_j)
        for ker in self.kernels:
            orth = np.ones(rs.npos, dtype=bool)
            for z in ker:
                for a in range(rs.npos):
                    if orth[a]:
                        c = rs.roots[a]
                        s = CycloNumber.from_rational(d, 0)
                        for j, cj in enumerate(c):
                            if cj:
                                s = s + cj * z[j]
                        if not s.is_zero():
                            orth[a] = False
            self.root_orth.append(orth)
        # Levi chain
        self.levis = [frozenset(range(rs.nroots))]
        cum = np.ones(rs.npos, dtype=bool)
        for orth in self.root_orth:
            cum = cum & orth
            idxs = frozenset(np.nonzero(cum)[0].tolist()) | frozenset(
                (i + rs.npos) for i in np.nonzero(cum)[0].tolist()
            )
            self.levis.append(idxs)
        real_dims = []
        half = Fraction(1, 2)
        for k, mult in zip(ks, self.mults):
            turn = Fraction(k, d)
            real_dims.append(mult if turn in (0, half) else 2 * mult)
        self.real_dims = real_dims
        self.cum_dims = [0]
        for x in real_dims:
            self.cum_dims.append(self.cum_dims[-1] + x)
        if self.cum_dims[-1] != rs.rank:
            raise ArithmeticError("eigenspace dimensions do not sum to the rank")
        if self.levis[-1]:
            raise ArithmeticError("final Levi in the chain is not empty")

    def spectrum(self) -> AngleSpectrum:
        return AngleSpectrum(
            self.d,
            tuple(Fraction(k, self.d) for k in self.ks),
            tuple(self.mults),
        )

    def real_spanning(self, j: int):
        """Real vectors spanning V(w, theta_j), as fundamental-coordinate
        CycloNumber vectors fixed by zeta -> zeta^{-1}."""
        d = self.d
        k = self.ks[j]
        out = []
        imag_unit = zeta(d, k) - zeta(d, -k)
        for z in self.kernels[j]:
            zc = [c.conjugate() for c in z]
            u1 = [a + b for a, b in zip(z, zc)]
            if any(not c.is_zero() for c in u1):
                out.append(u1)
            if k % d != 0 and (2 * k) % d != 0:
                u2 = [imag_unit * (a - b) for a, b in zip(z, zc)]
                if any(not c.is_zero() for c in u2):
                    out.append(u2)
        return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a if a else 1


@lru_cache(maxsize=256)
def _analysis(g: TwistedWeylElement) -> _Analysis:
    return _Analysis(g)


def angle_spectrum(g: TwistedWeylElement) -> AngleSpectrum:
    return _analysis(g).spectrum()


def filtration_levis(g: TwistedWeylElement) -> Filtration:
    an = _analysis(g)
    rs = g.rs
    bases = []
    cols: list[list[CycloNumber]] = []
    for j in range(len(an.ks)):
        for z in an.kernels[j]:
            cols.append(z)
            zc = [c.conjugate() for c in z]
            if zc != z:
                cols.append(zc)
        bases.append(CycloMatrix(an.d, [[v[i] for v in cols] for i in range(rs.rank)]))
    strict = all(b > a for a, b in zip(an.cum_dims, an.cum_dims[1:]))
    return Filtration(
        element=g,
        spectrum=an.spectrum(),
        bases=tuple(bases),
        dims=tuple(an.cum_dims),
        levis=tuple(an.levis),
        strict=strict,
    )


@dataclass(frozen=True)
class Regularity:
    is_regular: bool
    regular_angles: tuple[Fraction, ...]
    is_d_regular: bool


def regularity(g: TwistedWeylElement) -> Regularity:
    """Which angles carry a regular eigenvector.

    theta is regular iff no root is orthogonal to all of V(w, theta): a finite
    union of proper subspaces cannot cover the eigenspace.
    """
    an = _analysis(g)
    reg = []
    for j, k in enumerate(an.ks):
        if not an.root_orth[j].any():
            reg.append(Fraction(k, an.d))
    d_reg = Fraction(1, an.d) in reg if an.d > 1 else bool(reg)
    return Regularity(bool(reg), tuple(reg), d_reg)


# -- good position ------------------------------------------------------------


def _levi_simple_indices(rs: RootSystem, levi: frozenset) -> frozenset:
    return frozenset(
        i for i in range(1, rs.rank + 1) if rs.simple_root_index(i) in levi
    )


def _chain_is_standard(rs: RootSystem, levis) -> bool:
    for levi in levis[1:]:
        simples = _levi_simple_indices(rs, levi)
        if frozenset(rs.standard_levi_roots(sorted(simples))) != levi:
            return False
    return True


def good_factorization(g: TwistedWeylElement, levi_simples):
    """x_1, ..., x_k with g = delta^t x_1 ... x_k, x_i minimal in x_i W_{Pi_i}.

    Requires the Levi chain to be standard; raises if the factorization does
    not land in the expected parabolic subgroups.
    """
    rs = g.rs
    u = rs.identity(-g.delta_power) * g
    assert u.delta_power == 0
    xs = []
    cur = u
    prev = frozenset(range(1, rs.rank + 1))
    for simples in levi_simples[1:]:
        x = cur
        changed = True
        while changed:
            changed = False
            for j in sorted(simples):
                if x.descends_right(j):
                    x = x * rs.simple_reflection(j)
                    changed = True
        rest = x.inverse() * cur
        if not set(x.word) <= set(prev):
            raise ArithmeticError("good factorization escapes the Levi chain")
        if not set(rest.word) <= set(simples):
            raise ArithmeticError("good factorization remainder outside parabolic")
        xs.append(x)
        cur = rest
        prev = simples
    if not cur.is_identity():
        raise ArithmeticError("good factorization has a nontrivial tail")
    return xs


def _twist_stable_chain(g: TwistedWeylElement, levi_simples) -> bool:
    """Check delta_i(Pi_i) = Pi_i for delta_i = delta^t x_1 ... x_i."""
    rs = g.rs
    try:
        xs = good_factorization(g, levi_simples)
    except ArithmeticError:
        return False
    acc = rs.identity(g.delta_power)
    for x, simples in zip(xs, levi_simples[1:]):
        acc = acc * x
        img = {int(acc.perm[rs.simple_root_index(i)]) for i in simples}
        want = {rs.simple_root_index(i) for i in simples}
        if img != want:
            return False
    return True


def _selection(an: "_Analysis", angles):
    """Indices into the angle list for an optional subsequence of turns."""
    if angles is None:
        return list(range(len(an.ks)))
    js = []
    from fractions import Fraction as _F

    for t in angles:
        num = _F(t) * an.d
        if num.denominator != 1 or int(num) not in an.ks:
            raise ValueError("angle %s is not in the spectrum" % t)
        js.append(an.ks.index(int(num)))
    if js != sorted(set(js)):
        raise ValueError("angle subsequence must be strictly increasing")
    return js


def _draw_flag(an: _Analysis, rng: random.Random, js=None):
    """Generic real points q_i spanning the partial sums F_i of the selected
    eigenspaces (fundamental coords); a final full-space level is appended
    for proper subsequences so every root acquires a sign."""
    rs = an.g.rs
    if js is None:
        js = list(range(len(an.ks)))
    spans = [an.real_spanning(j) for j in range(len(an.ks))]
    levels = [spans[j] for j in js]
    orths = [an.root_orth[j] for j in js]
    if sorted(js) != list(range(len(an.ks))):
        levels.append([v for s in spans for v in s])
        orths.append(np.zeros(rs.npos, dtype=bool))
    flag = []
    cum_orth = np.ones(rs.npos, dtype=bool)
    pool: list[list[CycloNumber]] = []
    for span_j, orth_j in zip(levels, orths):
        pool = pool + span_j
        cum_orth = cum_orth & orth_j
        for attempt in range(60):
            width = 3 + attempt // 10
            coeffs = [rng.randint(-width, width) for _ in pool]
            if all(c == 0 for c in coeffs):
                continue
            q = [CycloNumber.from_rational(an.d, 0)] * rs.rank
            for c, vec in zip(coeffs, pool):
                if c:
                    q = [a + c * b for a, b in zip(q, vec)]
            ok = True
            for a in range(rs.npos):
                if cum_orth[a]:
                    continue
                croot = rs.roots[a]
                s = CycloNumber.from_rational(an.d, 0)
                for i, ci in enumerate(croot):
                    if ci:
                        s = s + ci * q[i]
                if s.is_zero():
                    ok = False
                    break
            if ok:
                flag.append(q)
                break
        else:
            raise ArithmeticError("could not draw a generic flag point")
    return flag


def _lex_walk(rs: RootSystem, flag):
    """Walk the flag to the dominant chamber by lowest-index descent.

    Returns the word of the conjugator in application order (first applied
    first); the element is rs.element(reversed(word))."""
    a = rs.cartan_matrix
    steps = []
    guard = 0
    while True:
        neg = None
        for i in range(1, rs.rank + 1):
            s = 0
            for q in flag:
                c = q[i - 1]
                if not c.is_zero():
                    s = real_sign(c)
                    break
            if s < 0:
                neg = i
                break
        if neg is None:
            break
        i = neg
        for q in flag:
            ci = q[i - 1]
            if ci.is_zero():
                continue
            row = a[i - 1]
            for j in range(rs.rank):
                if row[j]:
                    q[j] = q[j] - row[j] * ci
        steps.append(i)
        guard += 1
        if guard > rs.npos + 1:
            raise ArithmeticError("dominance walk exceeded the longest element")
    return steps


def _selected_levis(an: _Analysis, js):
    rs = an.g.rs
    levis = [frozenset(range(rs.nroots))]
    cum = np.ones(rs.npos, dtype=bool)
    for j in js:
        cum = cum & an.root_orth[j]
        pos = np.nonzero(cum)[0].tolist()
        levis.append(frozenset(pos) | frozenset(i + rs.npos for i in pos))
    return levis


def good_position_conjugate(g: TwistedWeylElement, seed: int = 0, angles=None):
    """Conjugate g so that all Levis in its chain are standard.

    Returns (x, g2) with g2 = x g x^{-1}.  If g's chain is already standard
    and twist-stable, x is the identity.  The postcondition (standard chain,
    delta_i-stability) certifies the randomized construction independent of
    the draw.
    """
    rs = g.rs
    an = _analysis(g)
    js = _selection(an, angles)
    levis = _selected_levis(an, js)
    simples = [_levi_simple_indices(rs, levi) for levi in levis]
    if _chain_is_standard(rs, levis) and _twist_stable_chain(g, simples):
        return rs.identity(), g
    last_err = None
    for attempt in range(8):
        mix = seed * 1000003 + attempt * 8191 + g.delta_power * 127 + g.length() * 31 + an.d
        rng = random.Random(mix)
        try:
            flag = _draw_flag(an, rng, js)
            steps = _lex_walk(rs, flag)
        except ArithmeticError as e:
            last_err = e
            continue
        x = rs.element(tuple(reversed(steps)))
        g2 = g.conjugate_by(x)
        new_levis = [
            frozenset(int(x.perm[i]) for i in levi) for levi in levis
        ]
        new_simples = [_levi_simple_indices(rs, levi) for levi in new_levis]
        if _chain_is_standard(rs, new_levis) and _twist_stable_chain(g2, new_simples):
            return x, g2
        last_err = ArithmeticError("walked chamber failed the standardness postcondition")
    raise ArithmeticError("good position search failed: %s" % last_err)
