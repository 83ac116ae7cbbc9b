import random
from fractions import Fraction

import pytest

from weylkac.lift import (
    TitsElement,
    TorusElement,
    lambda_chain,
    minimal_length_shift,
    psi_element,
    psi_nonelliptic,
    regular_shortcut,
    tits_lift_order,
    torus_order,
)
from weylkac.roots import RationalCoweight, build_root_system, is_elliptic, rho_half_sum
from weylkac.spectral import good_position_conjugate

E8A7_WORD = (2, 3, 4, 3, 6, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 8)


def test_lambda_chain_a1():
    rs = build_root_system("A1")
    lams = lambda_chain(rs.element((1,)))
    assert [l.coords for l in lams] == [(0,), (1,)]


def test_lambda_chain_e8a7_paper_values():
    rs = build_root_system("E8")
    g = rs.element(E8A7_WORD)
    lams = lambda_chain(g)
    # lambda_3 = lambda_2 = 0; lambda_1 = rho_1; lambda_0 = rho + w rho_1
    assert lams[0].coords == (0,) * 8
    assert lams[1].coords == (0,) * 8
    assert lams[2].coords == (-3, 1, 1, 1, 1, -3, 0, 0)
    assert lams[3].coords == (1, 1, 1, 1, 1, 1, 2, 2)


def test_lambda_chain_requires_good_position():
    rs = build_root_system("E8")
    g = rs.element(E8A7_WORD)
    y = rs.element((1, 4, 2, 6, 5))
    bad = g.conjugate_by(y)
    with pytest.raises(ValueError):
        lambda_chain(bad)


def test_psi_element_examples():
    a1 = build_root_system("A1")
    t = psi_element(a1.element((1,)))
    assert t.gamma.coords == (Fraction(1, 2),)
    # in coroot coordinates this is alpha-check / 4
    assert t.gamma.coroot(a1) == (Fraction(1, 4),)

    e8 = build_root_system("E8")
    t8 = psi_element(e8.element(E8A7_WORD))
    assert t8.gamma.coords == tuple(
        Fraction(c, 12) for c in (1, 1, 1, 1, 1, 1, 2, 2)
    )


def test_psi_equals_regular_shortcut_for_g2_coxeter():
    rs = build_root_system("G2")
    g = rs.element((1, 2))
    t1 = psi_element(g)
    t2 = regular_shortcut(g, Fraction(1, 6))
    assert t1.gamma.coords == t2.gamma.coords == (Fraction(1, 6), Fraction(1, 6))


def test_regular_shortcut_minus_one_f4():
    rs = build_root_system("F4")
    w0 = rs.longest_element()
    t = regular_shortcut(w0, Fraction(1, 2))
    assert t.gamma.coords == tuple(Fraction(1, 2) for _ in range(4))


def test_regular_shortcut_rejects_non_regular_angle():
    rs = build_root_system("E8")
    g = rs.element(E8A7_WORD)
    with pytest.raises(ValueError):
        regular_shortcut(g, Fraction(1, 12))


def test_torus_order_examples():
    a1 = build_root_system("A1")
    zero = TorusElement(a1, RationalCoweight((0,)), 0)
    assert torus_order(zero) == 1
    # s1 in A1: gamma = alpha-check/4: order 2 adjoint, 4 simply connected
    t = psi_element(a1.element((1,)))
    assert torus_order(t) == 2
    assert torus_order(t.with_lattice("sc")) == 4


def test_tits_order_sl2():
    a1 = build_root_system("A1")
    assert tits_lift_order(a1.identity()) == 1
    assert tits_lift_order(a1.element((1,))) == 4


def test_tits_squares_to_coroot_half():
    # n(s)^2 = exp(pi i alpha-check) for every simple reflection
    for label in ("A2", "B2", "G2", "F4"):
        rs = build_root_system(label)
        for i in range(1, rs.rank + 1):
            e = TitsElement.section(rs.element((i,)))
            sq = e * e
            assert sq.weyl.is_identity()
            expect = tuple(int(j == i - 1) for j in range(rs.rank))
            assert sq.bits == expect


def test_tits_respects_braid_relation_a2():
    rs = build_root_system("A2")
    e1 = TitsElement.section(rs.element((1,)))
    e2 = TitsElement.section(rs.element((2,)))
    assert (e1 * e2 * e1) == (e2 * e1 * e2)


def test_tits_matches_torus_order_small():
    for label, word in (("A2", (1, 2)), ("B2", (1, 2)), ("G2", (1, 2)), ("F4", (1, 2, 3, 4))):
        rs = build_root_system(label)
        g = rs.element(word)
        t = psi_element(g, lattice="sc")
        assert tits_lift_order(g) == torus_order(t)


def test_minimal_length_shift_examples():
    a2 = build_root_system("A2")
    g = a2.element((1, 2, 1))
    m = minimal_length_shift(g)
    assert m.length() == 1

    f4 = build_root_system("F4")
    w0 = f4.longest_element()
    assert minimal_length_shift(w0) == w0  # central, the class is a singleton

    # already-minimal words keep their length
    g2 = build_root_system("G2")
    cox = g2.element((1, 2))
    assert minimal_length_shift(cox).length() == 2


def test_minimal_length_shift_exhaustive_a2():
    rs = build_root_system("A2")
    words = [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)]
    elements = {rs.element(w) for w in words}
    assert len(elements) == 6
    for g in elements:
        m = minimal_length_shift(g)
        # minimal lengths in A2: e:0, reflections:1, rotations:2
        if g.is_identity():
            assert m.length() == 0
        elif g.order() == 2:
            assert m.length() == 1
        else:
            assert m.length() == 2


def test_psi_nonelliptic_identity():
    rs = build_root_system("2E6")
    t = psi_nonelliptic(rs.identity(1))
    assert t.gamma.coords == (0,) * 6
    assert t.delta_power == 1


def test_psi_nonelliptic_e6_s1():
    rs = build_root_system("E6")
    t = psi_nonelliptic(rs.element((1,)))
    assert t.gamma.coroot(rs) == (Fraction(1, 4), 0, 0, 0, 0, 0)


def test_psi_nonelliptic_agrees_with_psi_for_elliptic():
    rs = build_root_system("F4")
    g = rs.element((1, 2, 3, 4))
    t1 = psi_nonelliptic(g)
    t2 = psi_element(minimal_length_shift(g))
    assert t1.gamma.coords == t2.gamma.coords


def test_f4_a3a1_lift_order_8():
    # the order-4 elliptic class with char poly Phi_4 Phi_2^2, whose lift has
    # order 8; the minimal-length representative comes from exhaustively
    # enumerating W(F4)
    rs = build_root_system("F4")
    g = rs.element((2, 3, 4, 2, 3, 1, 2, 3, 4, 3, 2, 3, 2, 1))
    from weylkac.spectral import char_poly

    assert g.order() == 4 and is_elliptic(g)
    assert char_poly(g) == (1, 2, 2, 2, 1)  # (x^2+1)(x+1)^2
    t = psi_element(g, lattice="sc")
    assert torus_order(t) == 8
    assert tits_lift_order(g) == 8


def test_delta_fixedness_of_lambda0_twisted():
    rs = build_root_system("2E6")
    g = rs.element((1, 2, 5, 4), delta_power=1)
    t = psi_element(g)
    f = t.gamma.fundamental(rs)
    assert tuple(rs.identity(1).apply_fcoords(f)) == tuple(f)


def test_admissible_singleton_matches_shortcut_on_coxeter():
    rs = build_root_system("F4")
    g = rs.element((1, 2, 3, 4))
    d = g.order()
    t_sub = psi_element(g, angles=[Fraction(1, d)])
    t_reg = regular_shortcut(g, Fraction(1, d))
    assert t_sub.gamma.coords == t_reg.gamma.coords
