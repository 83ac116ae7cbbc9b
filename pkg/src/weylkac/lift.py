"""The map from twisted Weyl classes to semisimple classes.

Core pieces: the downward coweight recursion along the angle sequence, the
resulting torus point gamma = lambda_0 / d, the regular-element shortcut, the
extension to non-elliptic classes through support Levis, and two independent
order computations (torus side and Tits-cocycle side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .roots import (
    RationalCoweight,
    RootSystem,
    TwistedWeylElement,
    dominant_representative,
    is_elliptic,
    rho_half_sum,
    support_orbit,
)
from .spectral import _analysis, _selection, good_position_conjugate, regularity

__all__ = [
    "TorusElement",
    "TitsElement",
    "lambda_chain",
    "psi_element",
    "regular_shortcut",
    "minimal_length_shift",
    "psi_nonelliptic",
    "torus_order",
    "tits_lift_order",
    "tits_section",
]

ADJOINT = "adjoint"
SIMPLY_CONNECTED = "sc"


@dataclass(frozen=True)
class TorusElement:
    """A point e(gamma) delta^t of finite order, gamma a twist-fixed coweight."""

    rs: RootSystem
    gamma: RationalCoweight
    delta_power: int
    lattice: str = ADJOINT

    def __post_init__(self):
        if self.lattice not in (ADJOINT, SIMPLY_CONNECTED):
            raise ValueError("unknown lattice tag %r" % self.lattice)
        t = self.delta_power % self.rs.delta_order
        object.__setattr__(self, "delta_power", t)
        f = self.gamma.fundamental(self.rs)
        if len(f) != self.rs.rank:
            raise ValueError("coweight dimension mismatch")
        if t:
            twisted = self.rs.identity(t).apply_fcoords(f)
            if tuple(twisted) != tuple(f):
                raise ValueError("gamma is not fixed by the twist")

    def with_lattice(self, lattice: str) -> "TorusElement":
        return TorusElement(self.rs, self.gamma, self.delta_power, lattice)


def _selected_chain(g, js):
    """Levi chain (as simple-root index sets) for a subsequence of angles.

    Raises ValueError when a chain Levi is not standard; callers route
    through good_position_conjugate first.
    """
    an = _analysis(g)
    rs = g.rs
    cum = np.ones(rs.npos, dtype=bool)
    simples_chain = [frozenset(range(1, rs.rank + 1))]
    all_simple_idx = [rs.simple_root_index(i) for i in range(1, rs.rank + 1)]
    for j in js:
        cum = cum & an.root_orth[j]
        pos = frozenset(np.nonzero(cum)[0].tolist())
        simples = frozenset(
            i + 1 for i, idx in enumerate(all_simple_idx) if idx in pos
        )
        closure = frozenset(
            i for i in rs.standard_levi_roots(sorted(simples)) if rs.is_positive(i)
        )
        if closure != pos:
            raise ValueError("non-standard Levi chain; conjugate to good position first")
        simples_chain.append(simples)
    if simples_chain[-1] != frozenset() and js:
        last = simples_chain[-1]
        if last:
            raise ValueError("angle subsequence is not admissible: final Levi nonempty")
    return simples_chain


def lambda_chain(g: TwistedWeylElement, angles=None) -> list[RationalCoweight]:
    """The coweights lambda_k, ..., lambda_0 of the downward recursion.

    g must already be in good position (all chain Levis standard); the full
    angle sequence is used unless an admissible subsequence is supplied.
    """
    an = _analysis(g)
    rs = g.rs
    js = _selection(an, angles)
    chain = _selected_chain(g, js)
    nums = [0] + [an.ks[j] for j in js]
    k = len(js)
    lam = RationalCoweight(tuple(Fraction(0) for _ in range(rs.rank)))
    out = [lam]
    for j in range(k - 1, -1, -1):
        coeff = nums[j + 1] - nums[j]
        assert coeff >= 0
        rho_j = rho_half_sum(rs, levi=sorted(chain[j]))
        dom, _ = dominant_representative(rs, lam, levi=sorted(chain[j]))
        lam = RationalCoweight(
            tuple(coeff * a + b for a, b in zip(rho_j.coords, dom.coords))
        )
        out.append(lam)
    # Lemma dom: the final coweight is fixed by the twist
    if g.delta_power:
        f = out[-1].fundamental(rs)
        if tuple(rs.identity(g.delta_power).apply_fcoords(f)) != tuple(f):
            raise ArithmeticError("lambda_0 is not fixed by the twist")
    return out


def psi_element(
    g: TwistedWeylElement,
    lattice: str = ADJOINT,
    seed: int = 0,
    angles=None,
) -> TorusElement:
    """The torus point e(lambda_0 / d) delta^t attached to g.

    For elliptic g this represents the class of every lift of g; otherwise it
    is the class of some lift.
    """
    an = _analysis(g)
    x, g2 = good_position_conjugate(g, seed=seed, angles=angles)
    lams = lambda_chain(g2, angles=angles)
    gamma = RationalCoweight(tuple(c / an.d for c in lams[-1].coords))
    return TorusElement(g.rs, gamma, g.delta_power, lattice)


def regular_shortcut(g: TwistedWeylElement, turn, lattice: str = ADJOINT) -> TorusElement:
    """gamma = (theta / 2 pi) * rho-check for a regular angle theta of an
    elliptic regular element."""
    turn = Fraction(turn)
    if not is_elliptic(g):
        raise ValueError("regular shortcut requires an elliptic element")
    reg = regularity(g)
    if turn not in reg.regular_angles:
        raise ValueError("%s is not a regular angle of this element" % turn)
    rho = rho_half_sum(g.rs)
    gamma = RationalCoweight(tuple(turn * c for c in rho.coords))
    return TorusElement(g.rs, gamma, g.delta_power, lattice)


def minimal_length_shift(g: TwistedWeylElement) -> TwistedWeylElement:
    """A conjugate of minimal length, by cyclic-shift descent.

    Strict descents are taken greedily in index order; plateaus of equal
    length are searched breadth-first with a bounded frontier.
    """
    rs = g.rs
    cur = g
    cap_depth = 10 * rs.rank
    cap_size = 6000
    while True:
        improved = False
        for i in range(1, rs.rank + 1):
            s = rs.simple_reflection(i)
            g2 = s * cur * s
            if g2.length() < cur.length():
                cur = g2
                improved = True
                break
        if improved:
            continue
        # bounded plateau walk
        seen = {cur}
        frontier = [cur]
        found = None
        for _ in range(cap_depth):
            nxt = []
            for h in frontier:
                for i in range(1, rs.rank + 1):
                    s = rs.simple_reflection(i)
                    h2 = s * h * s
                    if h2.length() < cur.length():
                        found = h2
                        break
                    if h2.length() == cur.length() and h2 not in seen and len(seen) < cap_size:
                        seen.add(h2)
                        nxt.append(h2)
                if found:
                    break
            if found or not nxt:
                break
            frontier = nxt
        if found is None:
            return cur
        cur = found


def psi_nonelliptic(
    g: TwistedWeylElement, lattice: str = ADJOINT, seed: int = 0
) -> TorusElement:
    """Canonical semisimple class for any g, elliptic in its support Levi.

    Shifts g to minimal length, takes the twist-orbit support J, runs the
    full algorithm inside the standard Levi on J, and views the result in the
    ambient group.
    """
    rs = g.rs
    m = minimal_length_shift(g)
    j_set = support_orbit(m)
    if len(j_set) == rs.rank:
        return psi_element(m, lattice=lattice, seed=seed)
    if not j_set:
        zero = RationalCoweight(tuple(Fraction(0) for _ in range(rs.rank)))
        return TorusElement(rs, zero, g.delta_power, lattice)
    frame, idx = rs.levi_frame(j_set, m.delta_power)
    word_f = tuple(idx.index(i) + 1 for i in m.word)
    tpow = 1 if (m.delta_power and any(frame.delta_map[i] != i for i in frame.delta_map)) else 0
    gf = frame.element(word_f, delta_power=tpow)
    tf = psi_element(gf, lattice=lattice, seed=seed)
    # place the frame coweight back on the ambient coroot span of J
    bf = tf.gamma.coroot(frame)
    amb = [Fraction(0)] * rs.rank
    for pos, i in enumerate(idx):
        amb[i - 1] = bf[pos]
    gamma = RationalCoweight(tuple(amb), "coroot").in_basis(rs, "fundamental")
    return TorusElement(rs, gamma, m.delta_power, lattice)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def torus_order(t: TorusElement) -> int:
    """Order of e(gamma) delta^t: least m with the twist dying and
    m * gamma in the chosen cocharacter lattice."""
    rs = t.rs
    if t.lattice == ADJOINT:
        coords = t.gamma.fundamental(rs)
    else:
        coords = t.gamma.coroot(rs)
    m0 = 1
    for c in coords:
        m0 = _lcm(m0, Fraction(c).denominator)
    n = rs.delta_order
    tw = math.gcd(t.delta_power, n)
    return _lcm(m0, n // tw)


# -- Tits lifts ----------------------------------------------------------------


class TitsElement:
    """exp(2 pi i tau) n(x) with tau in (1/2) X-check / X-check, tracked as bits.

    Multiplication follows the Langlands-Shelstad cocycle for the pinned
    lifts: n(x) n(y) = n(xy) exp(pi i gamma-check) with
    gamma-check = sum of coroots over Delta+ cap y^{-1} Delta- cap (xy)^{-1} Delta+.
    """

    __slots__ = ("rs", "bits", "weyl", "lattice")

    def __init__(self, rs, bits, weyl: TwistedWeylElement, lattice: str = SIMPLY_CONNECTED):
        self.rs = rs
        self.bits = tuple(int(b) % 2 for b in bits)
        self.weyl = weyl
        self.lattice = lattice

    @classmethod
    def section(cls, g: TwistedWeylElement, lattice: str = SIMPLY_CONNECTED) -> "TitsElement":
        return cls(g.rs, (0,) * g.rs.rank, g, lattice)

    def _act_bits(self, g: TwistedWeylElement, bits) -> tuple[int, ...]:
        if self.lattice == SIMPLY_CONNECTED:
            m = g.coroot_matrix()
        else:
            m = [list(r) for r in g.matrix]
        return tuple(
            sum(m[i][j] * bits[j] for j in range(self.rs.rank)) % 2
            for i in range(self.rs.rank)
        )

    def _vector_bits(self, vec) -> tuple[int, ...]:
        if self.lattice == SIMPLY_CONNECTED:
            return tuple(int(v) % 2 for v in vec)
        f = self.rs.fcoords_from_coroot_coords([int(v) for v in vec])
        out = []
        for x in f:
            if Fraction(x).denominator != 1:
                raise ArithmeticError("cocycle coweight not in the lattice")
            out.append(int(x) % 2)
        return tuple(out)

    def __mul__(self, other: "TitsElement") -> "TitsElement":
        rs = self.rs
        x, y = self.weyl, other.weyl
        npos = rs.npos
        ypos = y.perm[:npos]
        sent_neg = ypos >= npos
        xy = x * y
        back_pos = x.perm[ypos] < npos
        mask = np.zeros(rs.nroots, dtype=bool)
        mask[:npos] = sent_neg & back_pos
        gamma = _np_coroots(rs)[mask].sum(axis=0) if mask.any() else np.zeros(rs.rank, dtype=np.int64)
        m = xy.coroot_matrix()
        moved = [
            sum(m[i][j] * int(gamma[j]) for j in range(rs.rank)) for i in range(rs.rank)
        ]
        cbits = self._vector_bits(moved)
        xb = self._act_bits(x, other.bits)
        bits = tuple((a + b + c) % 2 for a, b, c in zip(self.bits, xb, cbits))
        return TitsElement(rs, bits, xy, self.lattice)

    def is_identity(self) -> bool:
        return self.weyl.is_identity() and not any(self.bits)

    def __eq__(self, other):
        return (
            isinstance(other, TitsElement)
            and self.lattice == other.lattice
            and self.bits == other.bits
            and self.weyl == other.weyl
        )

    def __hash__(self):
        return hash((self.bits, self.weyl, self.lattice))


def _np_coroots(rs: RootSystem) -> np.ndarray:
    co = getattr(rs, "_np_coroots", None)
    if co is None:
        co = np.array(rs.coroots, dtype=np.int64)
        rs._np_coroots = co
    return co


def tits_section(g: TwistedWeylElement, lattice: str = SIMPLY_CONNECTED) -> TitsElement:
    return TitsElement.section(g, lattice)


def tits_lift_order(g: TwistedWeylElement, lattice: str = SIMPLY_CONNECTED) -> int:
    """Order of the pinned lift n(g), with the 2-torsion torus part exact."""
    e = TitsElement.section(g, lattice)
    acc = e
    m = 1
    while not acc.weyl.is_identity():
        acc = acc * e
        m += 1
        if m > 8 * g.rs.nroots:
            raise ArithmeticError("lift order runaway")
    return m if not any(acc.bits) else 2 * m
