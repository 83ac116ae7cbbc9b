"""Root systems, Weyl groups, and delta-twisted Weyl elements.

Conventions fixed here and used everywhere else:

* Simple roots are numbered 1..r in Bourbaki order.
* The Cartan matrix is A[i][j] = <alpha_j, coroot(alpha_i)> (0-indexed
  internally, 1-indexed at the API).
* Coweights default to fundamental-coweight coordinates, so the pairing with
  simple root i is a coordinate read; the simple-coroot basis is supported
  for I/O.
* A word (i1, ..., iL) denotes the product s_{i1} s_{i2} ... s_{iL}, the
  rightmost factor acting first.
* Twisted types attach the unique nontrivial pinned diagram automorphism of
  the stated order; elements of W delta^t carry delta_power = t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg

__all__ = [
    "RootSystem",
    "TwistedWeylElement",
    "RationalCoweight",
    "build_root_system",
    "apply",
    "dominant_representative",
    "rho_half_sum",
    "support_orbit",
    "is_elliptic",
]


def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    a = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]

    def bond(i, j, aij=-1, aji=-1):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if family == "A":
        if rank < 1:
            raise ValueError("A rank must be >= 1")
        for i in range(1, rank):
            bond(i, i + 1)
    elif family == "B":
        if rank < 2:
            raise ValueError("B rank must be >= 2")
        for i in range(1, rank - 1):
            bond(i, i + 1)
        bond(rank - 1, rank, -1, -2)  # alpha_rank short
    elif family == "C":
        if rank < 2:
            raise ValueError("C rank must be >= 2")
        for i in range(1, rank - 1):
            bond(i, i + 1)
        bond(rank - 1, rank, -2, -1)  # alpha_rank long
    elif family == "D":
        if rank < 3:
            raise ValueError("D rank must be >= 3")
        for i in range(1, rank - 1):
            bond(i, i + 1)
        bond(rank - 2, rank)
    elif family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E rank must be 6, 7 or 8")
        chain = [1, 3, 4, 5, 6, 7, 8][: rank - 1]
        for x, y in zip(chain, chain[1:]):
            bond(x, y)
        bond(2, 4)
    elif family == "F":
        if rank != 4:
            raise ValueError("F rank must be 4")
        bond(1, 2)
        bond(2, 3, -1, -2)  # alpha_3 short
        bond(3, 4)
    elif family == "G":
        if rank != 2:
            raise ValueError("G rank must be 2")
        bond(1, 2, -3, -1)  # alpha_1 short: <alpha_2, coroot(alpha_1)> = -3
    else:
        raise ValueError("unknown family %r" % family)
    return a


_DELTA = {
    ("A", 2): lambda r: {i: r + 1 - i for i in range(1, r + 1)},
    ("D", 2): lambda r: {**{i: i for i in range(1, r - 1)}, r - 1: r, r: r - 1},
    ("E", 2): lambda r: {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4},
    ("D4", 3): lambda r: {1: 3, 3: 4, 4: 1, 2: 2},
}


@lru_cache(maxsize=None)
def build_root_system(type_label: str) -> "RootSystem":
    """Construct the root system for a Cartan type label such as E8, 2E6, 3D4."""
    m = re.fullmatch(r"([23]?)([A-G])(\d+)", type_label.strip())
    if not m:
        raise ValueError("unrecognized Cartan type label %r" % type_label)
    twist = int(m.group(1)) if m.group(1) else 1
    family, rank = m.group(2), int(m.group(3))
    delta = {i: i for i in range(1, rank + 1)}
    if twist == 2:
        if family == "A" and rank >= 2:
            delta = _DELTA[("A", 2)](rank)
        elif family == "D" and rank >= 3:
            delta = _DELTA[("D", 2)](rank)
        elif family == "E" and rank == 6:
            delta = _DELTA[("E", 2)](rank)
        else:
            raise ValueError("twist 2 incompatible with type %s%d" % (family, rank))
    elif twist == 3:
        if family == "D" and rank == 4:
            delta = _DELTA[("D4", 3)](rank)
        else:
            raise ValueError("twist 3 only defined for D4")
    return RootSystem(type_label.strip(), family, rank, twist, delta)


class RootSystem:
    """Roots, coroots and Weyl/twisted-Weyl machinery for one finite type."""

    def __init__(self, label, family, rank, twist, delta_map, cartan=None):
        self.cartan_type = label
        self.family = family
        self.rank = rank
        self.cartan_matrix = cartan if cartan is not None else _cartan_matrix(family, rank)
        self.delta_map = dict(delta_map)
        self.delta_order = twist
        a = self.cartan_matrix
        for i in range(1, rank + 1):
            for j in range(1, rank + 1):
                if a[self.delta_map[i] - 1][self.delta_map[j] - 1] != a[i - 1][j - 1]:
                    raise ValueError("delta does not preserve the Cartan matrix")
        d = self.delta_map
        order = 1
        cur = d
        while any(cur[i] != i for i in cur):
            cur = {i: d[cur[i]] for i in cur}
            order += 1
        if order != twist and not (twist == 1 and order == 1):
            raise ValueError("delta order mismatch")

        self._generate_roots()
        self._build_permutations()
        self._at_inv = linalg.inverse(
            [[Fraction(self.cartan_matrix[j][i]) for j in range(rank)] for i in range(rank)]
        )

    @classmethod
    def from_cartan(cls, label: str, cartan, delta_map=None) -> "RootSystem":
        """Root system from an explicit Cartan matrix (used for Levi frames)."""
        rank = len(cartan)
        if delta_map is None:
            delta_map = {i: i for i in range(1, rank + 1)}
        d = dict(delta_map)
        order = 1
        cur = d
        while any(cur[i] != i for i in cur):
            cur = {i: d[cur[i]] for i in cur}
            order += 1
        return cls(label, "?", rank, order, d, cartan=[list(r) for r in cartan])

    def levi_frame(self, simples, twist_power: int = 0):
        """Sub-root-system on a twist-stable subset of simple roots.

        Returns (frame RootSystem, sorted index list), where frame node i
        corresponds to ambient simple root sorted(simples)[i-1].  The frame's
        pinned automorphism is the one induced by delta^twist_power.
        """
        idx = tuple(sorted(simples))
        key = (idx, twist_power % self.delta_order)
        cache = getattr(self, "_levi_frames", None)
        if cache is None:
            cache = {}
            self._levi_frames = cache
        if key in cache:
            return cache[key], list(idx)
        sub = [[self.cartan_matrix[i - 1][j - 1] for j in idx] for i in idx]
        step = {i: i for i in self.delta_map}
        for _ in range(twist_power % self.delta_order):
            step = {i: self.delta_map[step[i]] for i in step}
        pos = {j: k + 1 for k, j in enumerate(idx)}
        if any(step[j] not in pos for j in idx):
            raise ValueError("simple subset is not stable under the twist")
        dmap = {pos[j]: pos[step[j]] for j in idx}
        frame = RootSystem.from_cartan(
            "%s|levi%s" % (self.cartan_type, "".join(str(j) for j in idx)), sub, dmap
        )
        cache[key] = frame
        return frame, list(idx)

    # -- construction --------------------------------------------------------

    def _generate_roots(self):
        r = self.rank
        a = self.cartan_matrix

        def reflect_root(c, i):
            pair = sum(a[i][j] * c[j] for j in range(r))
            out = list(c)
            out[i] -= pair
            return tuple(out)

        def reflect_coroot(b, i):
            pair = sum(a[j][i] * b[j] for j in range(r))
            out = list(b)
            out[i] -= pair
            return tuple(out)

        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        pairs = {simple[i]: simple[i] for i in range(r)}
        frontier = list(simple)
        while frontier:
            nxt = []
            for c in frontier:
                b = pairs[c]
                for i in range(r):
                    c2 = reflect_root(c, i)
                    if c2 not in pairs:
                        pairs[c2] = reflect_coroot(b, i)
                        nxt.append(c2)
            frontier = nxt

        def height(c):
            return sum(c)

        pos = sorted([c for c in pairs if height(c) > 0], key=lambda c: (height(c), c))
        self.npos = len(pos)
        self.roots: list[tuple[int, ...]] = pos + [tuple(-x for x in c) for c in pos]
        self.nroots = len(self.roots)
        self.coroots = [pairs[c] for c in self.roots]
        self.root_index = {c: i for i, c in enumerate(self.roots)}

    def _build_permutations(self):
        r = self.rank
        a = self.cartan_matrix
        perms = []
        for i in range(r):
            img = np.empty(self.nroots, dtype=np.int32)
            for k, c in enumerate(self.roots):
                pair = sum(a[i][j] * c[j] for j in range(r))
                out = list(c)
                out[i] -= pair
                img[k] = self.root_index[tuple(out)]
            perms.append(img)
        self._simple_perms = perms
        img = np.empty(self.nroots, dtype=np.int32)
        for k, c in enumerate(self.roots):
            out = [0] * r
            for j in range(r):
                out[self.delta_map[j + 1] - 1] = c[j]
            img[k] = self.root_index[tuple(out)]
        self._delta_perm = img
        self._id_perm = np.arange(self.nroots, dtype=np.int32)

    # -- basic data -----------------------------------------------------------

    def simple_root_index(self, i: int) -> int:
        return self.root_index[tuple(int(i - 1 == j) for j in range(self.rank))]

    def is_positive(self, root_idx: int) -> bool:
        return root_idx < self.npos

    def negative_of(self, root_idx: int) -> int:
        return root_idx + self.npos if root_idx < self.npos else root_idx - self.npos

    def pair_root_coweight(self, root_idx: int, fcoords) -> Fraction:
        """<alpha, x> for x in fundamental-coweight coordinates."""
        c = self.roots[root_idx]
        return sum(Fraction(ci) * fi for ci, fi in zip(c, fcoords) if ci)

    def coroot_fcoords(self, root_idx: int) -> tuple[Fraction, ...]:
        """Fundamental-coweight coordinates of the coroot of roots[root_idx]."""
        b = self.coroots[root_idx]
        a = self.cartan_matrix
        return tuple(
            Fraction(sum(a[j][i] * b[j] for j in range(self.rank)))
            for i in range(self.rank)
        )

    def fcoords_from_coroot_coords(self, b) -> tuple[Fraction, ...]:
        a = self.cartan_matrix
        return tuple(
            sum(Fraction(a[j][i]) * Fraction(bj) for j, bj in enumerate(b))
            for i in range(self.rank)
        )

    def coroot_coords_from_fcoords(self, f) -> tuple[Fraction, ...]:
        return tuple(linalg.mat_vec(self._at_inv, [Fraction(x) for x in f]))

    def standard_levi_roots(self, levi) -> list[int]:
        """Indices of all roots supported on the simple subset `levi` (1-based)."""
        allow = set(levi)
        out = []
        for idx, c in enumerate(self.roots):
            if all(ci == 0 or (j + 1) in allow for j, ci in enumerate(c)):
                out.append(idx)
        return out

    def delta_orbit(self, indices, power: int = 1) -> frozenset:
        """Closure of a set of simple indices under delta^power."""
        if power % self.delta_order == 0 and self.delta_order > 1:
            step = {i: i for i in self.delta_map}
        else:
            step = self.delta_map
            for _ in range((power - 1) % self.delta_order):
                step = {i: self.delta_map[step[i]] for i in step}
        out = set(indices)
        changed = True
        while changed:
            changed = False
            for i in list(out):
                j = step[i]
                if j not in out:
                    out.add(j)
                    changed = True
        return frozenset(out)

    # -- elements ---------------------------------------------------------------

    def identity(self, delta_power: int = 0) -> "TwistedWeylElement":
        perm = self._id_perm
        for _ in range(delta_power % self.delta_order):
            perm = self._delta_perm[perm] if perm is not self._id_perm else self._delta_perm
        return TwistedWeylElement(self, perm.copy(), delta_power % self.delta_order, word=())

    def element(self, word=(), delta_power: int = 0) -> "TwistedWeylElement":
        """s_{i1} ... s_{iL} delta^t from a word of 1-based simple indices."""
        word = tuple(int(i) for i in word)
        perm = self._id_perm
        for i in word:
            if not 1 <= i <= self.rank:
                raise ValueError("simple index %d out of range" % i)
            perm = perm[self._simple_perms[i - 1]]
        t = delta_power % self.delta_order
        for _ in range(t):
            perm = perm[self._delta_perm]
        return TwistedWeylElement(self, perm, t, word=word)

    def element_from_string(self, s: str, delta_power: int = 0) -> "TwistedWeylElement":
        """Parse digit-string words for rank <= 9, comma-separated beyond."""
        s = s.strip()
        if not s or s.lower() in ("e", "id", "1_w"):
            return self.identity(delta_power)
        if s.lower() == "w0":
            return self.longest_element(delta_power)
        if "," in s:
            word = tuple(int(x) for x in s.split(","))
        else:
            if not s.isdigit():
                raise ValueError("cannot parse word %r" % s)
            word = tuple(int(ch) for ch in s)
        return self.element(word, delta_power)

    def longest_element(self, delta_power: int = 0) -> "TwistedWeylElement":
        rho = tuple(Fraction(-1) for _ in range(self.rank))
        _, word = dominant_representative(
            self, RationalCoweight(rho, "fundamental"), None
        )
        return self.element(word, delta_power)

    def simple_reflection(self, i: int) -> "TwistedWeylElement":
        return self.element((i,))

    def __repr__(self):
        return "RootSystem(%s)" % self.cartan_type


@dataclass(frozen=True)
class RationalCoweight:
    """Exact coweight vector, tagged by its coordinate basis."""

    coords: tuple
    basis: str = "fundamental"  # "fundamental" | "coroot"

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))
        if self.basis not in ("fundamental", "coroot"):
            raise ValueError("unknown basis tag %r" % self.basis)

    def fundamental(self, rs: RootSystem) -> tuple[Fraction, ...]:
        if self.basis == "fundamental":
            return self.coords
        return rs.fcoords_from_coroot_coords(self.coords)

    def coroot(self, rs: RootSystem) -> tuple[Fraction, ...]:
        if self.basis == "coroot":
            return self.coords
        return rs.coroot_coords_from_fcoords(self.coords)

    def in_basis(self, rs: RootSystem, basis: str) -> "RationalCoweight":
        if basis == self.basis:
            return self
        if basis == "fundamental":
            return RationalCoweight(self.fundamental(rs), "fundamental")
        return RationalCoweight(self.coroot(rs), "coroot")


class TwistedWeylElement:
    """w delta^t, stored as its permutation of the root set."""

    __slots__ = ("rs", "perm", "delta_power", "_word", "_hash")

    def __init__(self, rs: RootSystem, perm, delta_power: int, word=None):
        self.rs = rs
        self.perm = perm
        self.delta_power = delta_power % rs.delta_order
        self._word = tuple(word) if word is not None else None
        self._hash = None

    # -- group structure ------------------------------------------------------

    def __mul__(self, other: "TwistedWeylElement") -> "TwistedWeylElement":
        if other.rs is not self.rs:
            raise ValueError("elements of different root systems")
        return TwistedWeylElement(
            self.rs, self.perm[other.perm], self.delta_power + other.delta_power
        )

    def inverse(self) -> "TwistedWeylElement":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm), dtype=self.perm.dtype)
        return TwistedWeylElement(self.rs, inv, -self.delta_power)

    def conjugate_by(self, x: "TwistedWeylElement") -> "TwistedWeylElement":
        """x g x^{-1} (delta-twisted conjugation when x is plain Weyl)."""
        return x * self * x.inverse()

    def __pow__(self, k: int) -> "TwistedWeylElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.rs.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.delta_power == 0 and bool(
            np.array_equal(self.perm, self.rs._id_perm)
        )

    def __eq__(self, other):
        if not isinstance(other, TwistedWeylElement):
            return NotImplemented
        return (
            self.rs is other.rs
            and self.delta_power == other.delta_power
            and np.array_equal(self.perm, other.perm)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rs.cartan_type, self.delta_power, self.perm.tobytes()))
        return self._hash

    # -- combinatorics ----------------------------------------------------------

    def length(self) -> int:
        return int(np.count_nonzero(self.perm[: self.rs.npos] >= self.rs.npos))

    def order(self) -> int:
        cur = self
        m = 1
        while not cur.is_identity():
            cur = cur * self
            m += 1
            if m > 4 * self.rs.nroots:
                raise ArithmeticError("order runaway")
        return m

    def descends_right(self, i: int) -> bool:
        """True iff l(g s_i) < l(g), i.e. g(alpha_i) < 0."""
        return bool(self.perm[self.rs.simple_root_index(i)] >= self.rs.npos)

    def weyl_part(self) -> "TwistedWeylElement":
        """w with self = w delta^t."""
        if self.delta_power == 0:
            return self
        p = self.perm
        dinv = self.rs.identity(self.delta_power).inverse().perm
        return TwistedWeylElement(self.rs, p[dinv], 0)

    @property
    def word(self) -> tuple[int, ...]:
        """A reduced word for the Weyl part (computed on demand, deterministic)."""
        if self._word is None or len(self._word) != self.length():
            w = self.weyl_part()
            letters = []
            cur = w
            while True:
                i = next(
                    (i for i in range(1, self.rs.rank + 1) if cur.descends_right(i)),
                    None,
                )
                if i is None:
                    break
                letters.append(i)
                cur = cur * self.rs.simple_reflection(i)
            letters.reverse()
            self._word = tuple(letters)
        return self._word

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Integer matrix on fundamental-coweight coordinates (row i = root
        coordinates of g^{-1}(alpha_i))."""
        inv = self.inverse()
        return tuple(
            self.rs.roots[int(inv.perm[self.rs.simple_root_index(i)])]
            for i in range(1, self.rs.rank + 1)
        )

    def coroot_matrix(self) -> list[list[int]]:
        """Integer matrix of the action on simple-coroot coordinates
        (column j = coroot coordinates of g(alpha_j))."""
        cols = [
            self.rs.coroots[int(self.perm[self.rs.simple_root_index(j)])]
            for j in range(1, self.rs.rank + 1)
        ]
        return [[cols[j][i] for j in range(self.rs.rank)] for i in range(self.rs.rank)]

    def apply_fcoords(self, f) -> tuple[Fraction, ...]:
        m = self.matrix
        return tuple(
            sum(Fraction(mij) * fj for mij, fj in zip(row, f) if mij) for row in m
        )

    def act_root(self, root_idx: int) -> int:
        return int(self.perm[root_idx])

    def __repr__(self):
        return "TwistedWeylElement(%s, word=%s, delta^%d)" % (
            self.rs.cartan_type,
            "".join(str(i) for i in self.word) or "e",
            self.delta_power,
        )


# -- module-level operations -----------------------------------------------


def apply(g: TwistedWeylElement, v: RationalCoweight) -> RationalCoweight:
    """Exact action of g on a rational coweight, preserving the basis tag."""
    f = v.fundamental(g.rs)
    if len(f) != g.rs.rank:
        raise ValueError("coweight dimension mismatch")
    out = RationalCoweight(g.apply_fcoords(f), "fundamental")
    return out.in_basis(g.rs, v.basis)


def dominant_representative(rs: RootSystem, v: RationalCoweight, levi=None):
    """The W_levi-dominant representative of v and the conjugating word.

    Applies the lowest-index simple reflection with negative pairing at each
    step.  The returned word satisfies rs.element(word).apply == walk, i.e.
    dominant = element(word)(v).
    """
    indices = sorted(levi) if levi is not None else list(range(1, rs.rank + 1))
    f = list(v.fundamental(rs))
    a = rs.cartan_matrix
    steps = []
    while True:
        i = next((i for i in indices if f[i - 1] < 0), None)
        if i is None:
            break
        fi = f[i - 1]
        for j in range(rs.rank):
            f[j] -= fi * a[i - 1][j]
        steps.append(i)
    word = tuple(reversed(steps))
    out = RationalCoweight(tuple(f), "fundamental").in_basis(rs, v.basis)
    return out, word


def rho_half_sum(rs: RootSystem, levi=None, roots=None) -> RationalCoweight:
    """Half-sum of positive coroots of a standard Levi or a closed subsystem."""
    if roots is not None:
        idxs = [i for i in roots if rs.is_positive(i)]
        root_set = set(roots)
        for i in idxs:
            for j in idxs:
                if i == j:
                    continue
                s = tuple(x + y for x, y in zip(rs.roots[i], rs.roots[j]))
                if s in rs.root_index and rs.root_index[s] not in root_set:
                    raise ValueError("root subset is not closed")
    else:
        levi = list(levi) if levi is not None else list(range(1, rs.rank + 1))
        idxs = [i for i in rs.standard_levi_roots(levi) if rs.is_positive(i)]
    total = [Fraction(0)] * rs.rank
    for i in idxs:
        for j, x in enumerate(rs.coroot_fcoords(i)):
            total[j] += x
    return RationalCoweight(tuple(x / 2 for x in total), "fundamental")


def support_orbit(g: TwistedWeylElement) -> frozenset:
    """Union over powers of the element's twist of the support of its word."""
    base = set(g.word)
    if g.delta_power == 0:
        return frozenset(base)
    return g.rs.delta_orbit(base, g.delta_power)


def is_elliptic(g: TwistedWeylElement) -> bool:
    """True iff g has no nonzero fixed vector in the reflection representation."""
    m = g.matrix
    r = g.rs.rank
    shifted = [[Fraction(m[i][j] - int(i == j)) for j in range(r)] for i in range(r)]
    return linalg.det(shifted) != 0
