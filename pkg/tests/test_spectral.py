import random
from fractions import Fraction

import pytest

from weylkac.roots import build_root_system, is_elliptic
from weylkac.spectral import (
    angle_spectrum,
    char_poly,
    cyclotomic_exponents,
    filtration_levis,
    good_position_conjugate,
    regularity,
)

E8A7_WORD = (2, 3, 4, 3, 6, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 8)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_char_poly_identity():
    rs = build_root_system("D4")
    # (x-1)^4 computed independently by repeated convolution
    expect = [1]
    for _ in range(4):
        expect = _poly_mul(expect, [-1, 1])
    assert list(char_poly(rs.identity())) == expect


def test_char_poly_g2_coxeter():
    # direct 2x2 oracle: s1 s2 acting on fundamental-coweight coordinates
    rs = build_root_system("G2")
    g = rs.element((1, 2))
    m = [list(r) for r in g.matrix]
    # char poly of a 2x2 matrix: x^2 - tr x + det
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    assert list(char_poly(g)) == [det, -tr, 1]
    # Coxeter element of G2 has char poly Phi_6 = x^2 - x + 1
    assert char_poly(g) == (1, -1, 1)


def test_char_poly_e8a7():
    # paper: eigenvalues zeta_12^k for k in {1,2,5,7,10,11} with dims 1,2,1,1,2,1
    rs = build_root_system("E8")
    g = rs.element(E8A7_WORD)
    expect = [1]
    for m, e in ((12, 1), (6, 2)):
        from weylkac.cyclo import cyclotomic_polynomial

        for _ in range(e):
            expect = _poly_mul(expect, list(cyclotomic_polynomial(m)))
    assert list(char_poly(g)) == expect
    assert cyclotomic_exponents(char_poly(g), 12) == {12: 1, 6: 2}


def test_angle_spectrum_minus_one_f4():
    rs = build_root_system("F4")
    w0 = rs.longest_element()  # acts as -1 on F4
    sp = angle_spectrum(w0)
    assert sp.order == 2
    assert sp.angles == (Fraction(1, 2),)
    assert sp.multiplicities == (4,)


def test_angle_spectrum_e8a7():
    rs = build_root_system("E8")
    sp = angle_spectrum(rs.element(E8A7_WORD))
    assert sp.order == 12
    assert sp.numerators() == (1, 2, 5)
    assert sp.multiplicities == (1, 2, 1)
    assert sum(sp.real_dims()) == 8


def test_angle_spectrum_3d4_coxeter():
    rs = build_root_system("3D4")
    g = rs.element((1, 2), delta_power=1)
    sp = angle_spectrum(g)
    assert sp.order == 12
    assert sp.angles[0] == Fraction(1, 12)
    # full spectrum by direct computation: char poly determines it
    exps = cyclotomic_exponents(char_poly(g), 12)
    assert sum(e * _phi_deg(m) for m, e in exps.items()) == 4


def _phi_deg(m):
    from weylkac.cyclo import cyclotomic_polynomial

    return len(cyclotomic_polynomial(m)) - 1


def test_filtration_a1():
    rs = build_root_system("A1")
    fil = filtration_levis(rs.element((1,)))
    assert fil.dims == (0, 1)
    assert fil.levis[-1] == frozenset()
    assert fil.strict


def test_filtration_e8a7_paper_values():
    rs = build_root_system("E8")
    fil = filtration_levis(rs.element(E8A7_WORD))
    assert fil.dims == (0, 2, 6, 8)
    simples = fil.levi_simples
    assert simples[1] == {2, 3, 4, 5}
    assert fil.levis[2] == frozenset() and fil.levis[3] == frozenset()
    # Delta_1 is type D4: 24 roots
    assert len(fil.levis[1]) == 24


def test_good_position_already_standard():
    rs = build_root_system("E8")
    g = rs.element(E8A7_WORD)
    x, g2 = good_position_conjugate(g)
    assert x.is_identity()
    assert g2 == g


def test_good_position_random_conjugates():
    rng = random.Random(40)
    rs = build_root_system("F4")
    base = rs.element((1, 2, 3, 4))  # Coxeter
    for trial in range(5):
        y = rs.element(tuple(rng.randint(1, 4) for _ in range(7)))
        g = base.conjugate_by(y)
        x, g2 = good_position_conjugate(g, seed=trial)
        assert g2 == g.conjugate_by(x)
        fil = filtration_levis(g2)
        for levi, simple in zip(fil.levis[1:], fil.levi_simples[1:]):
            assert frozenset(rs.standard_levi_roots(sorted(simple))) == levi


def test_good_position_twisted():
    rng = random.Random(7)
    rs = build_root_system("2E6")
    base = rs.element((1, 2, 5, 4), delta_power=1)
    for trial in range(3):
        y = rs.element(tuple(rng.randint(1, 6) for _ in range(6)))
        g = base.conjugate_by(y)
        x, g2 = good_position_conjugate(g, seed=trial)
        fil = filtration_levis(g2)
        for levi, simple in zip(fil.levis[1:], fil.levi_simples[1:]):
            assert frozenset(rs.standard_levi_roots(sorted(simple))) == levi


def test_regularity_g2_coxeter():
    rs = build_root_system("G2")
    reg = regularity(rs.element((1, 2)))
    assert reg.is_regular
    assert Fraction(1, 6) in reg.regular_angles
    assert reg.is_d_regular


def test_regularity_minus_one():
    rs = build_root_system("E8")
    w0 = rs.longest_element()
    reg = regularity(w0)
    assert reg.is_regular and reg.is_d_regular
    assert reg.regular_angles == (Fraction(1, 2),)


def test_regularity_e8a7_not_d_regular():
    rs = build_root_system("E8")
    reg = regularity(rs.element(E8A7_WORD))
    # V(w, 2 pi/12) is annihilated by the D4 roots, so 1/12 is not regular
    assert Fraction(1, 12) not in reg.regular_angles
    assert not reg.is_d_regular


def test_char_poly_coprime_powers_g2_f4():
    for label in ("G2", "F4"):
        rs = build_root_system(label)
        rng = random.Random(13)
        for _ in range(6):
            g = rs.element(tuple(rng.randint(1, rs.rank) for _ in range(6)))
            d = g.order()
            for k in range(1, d):
                if _coprime(k, d):
                    assert char_poly(g ** k) == char_poly(g)


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


def test_elliptic_iff_no_zero_angle():
    rs = build_root_system("F4")
    rng = random.Random(21)
    for _ in range(10):
        g = rs.element(tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 9))))
        sp = angle_spectrum(g)
        assert is_elliptic(g) == (Fraction(0) not in sp.angles)
