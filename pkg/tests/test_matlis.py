"""Dual windows and the Ext/Tor duality identities."""

import random

import numpy as np

from loccoh.groebner import Ideal
from loccoh.homology import ext, tor
from loccoh.matlis import DualWindow, check_grade_tor, ext_into_dual, tor_with_dual
from loccoh.modules import ModulePresentation
from loccoh.verify import random_duality_suite


def test_dual_window_dims(s4, m_ps3_summands):
    free = ModulePresentation.free(s4)
    dw = DualWindow(free, -4, 4)
    assert dw.dim(1) == 0  # nothing in degree -1 of S
    assert dw.dim(0) == 1
    assert dw.dim(-3) == free.hilbert_function(3)
    m = ModulePresentation.direct_sum(*m_ps3_summands)
    assert DualWindow(m, -4, 4).dim(0) == 2


def test_dual_window_dims_match_module(s2):
    rng = random.Random(8)
    for _ in range(5):
        gens = [s2.monomial((rng.randint(0, 2), rng.randint(0, 2))) for _ in range(rng.randint(0, 2))]
        m = ModulePresentation.cyclic(s2, [g for g in gens if not g.is_unit_constant()])
        dw = DualWindow(m, -5, 5)
        for d in range(-5, 6):
            assert dw.dim(d) == m.hilbert_function(-d)


def test_dual_window_actions_are_transposes(s2):
    x, y = s2.gens
    m = ModulePresentation.cyclic(s2, [x * y**2])
    dw = DualWindow(m, -5, 5)
    for j in range(2):
        for d in range(-4, 4):
            act = dw.action(j, d)
            mult = m.multiplication_matrix(s2.gens[j], -d - 1)
            assert np.array_equal(act, mult.T)
            assert act.shape == (dw.dim(d + 1), dw.dim(d))


def test_double_duality_dims(s2):
    x, y = s2.gens
    m = ModulePresentation.cyclic(s2, [x**2])
    dw = DualWindow(m, -6, 6)
    for d in range(-4, 5):
        # dual of the dual piece has the dimension of the original piece
        assert dw.dim(-d) == m.hilbert_function(d)


def test_tor0_with_dual_of_free_vanishes(s1):
    x = s1.gens[0]
    n = ModulePresentation.cyclic(s1, [x])
    dims, incomplete = tor_with_dual(0, n, ModulePresentation.free(s1), (-4, 4))
    assert all(v == 0 for v in dims.values())


def test_ext0_into_dual_socle(s1):
    x = s1.gens[0]
    n = ModulePresentation.cyclic(s1, [x])
    dims, _ = ext_into_dual(0, n, ModulePresentation.free(s1), (-4, 4))
    assert {d: v for d, v in dims.items() if v} == {0: 1}


def test_duality_identity_part1_random(s2):
    # dim Ext^i(N, D(M))_d = dim Tor_i(N, M)_{-d}, two engines
    for n, m in random_duality_suite(count=6, seed=77):
        for i in range(3):
            t = tor(i, n, m)
            dims, _ = ext_into_dual(i, n, m, (-7, 7))
            for d, v in dims.items():
                assert v == t.hilbert_function(-d), (i, d)


def test_duality_identity_part2_random(s2):
    # dim Tor_i(N, D(M))_d = dim Ext^i(N, M)_{-d}
    for n, m in random_duality_suite(count=6, seed=78):
        for i in range(3):
            e = ext(i, n, m)
            dims, _ = tor_with_dual(i, n, m, (-7, 7))
            for d, v in dims.items():
                assert v == e.hilbert_function(-d), (i, d)


def test_flagship_tor_dual_vanishing_below_grade(flagship):
    i, m, pres = flagship
    ri = ModulePresentation.cyclic(i.ring, i.gens)
    dims, _ = tor_with_dual(0, ri, pres, (-5, 5))
    assert all(v == 0 for v in dims.values())
    dims1, _ = tor_with_dual(1, ri, pres, (-5, 5))
    assert any(v for v in dims1.values())


def test_check_grade_tor_flagship(flagship):
    i, m, pres = flagship
    rep = check_grade_tor(i, pres, (-3, 3))
    assert rep.verdict == "pass"
    assert rep.details["grade"] == 1


def test_check_grade_tor_koszul(s2):
    rep = check_grade_tor(Ideal(s2, [s2.gens[0]]), ModulePresentation.free(s2), (-3, 3))
    assert rep.verdict == "pass"
    assert rep.details["grade"] == 1


def test_check_grade_tor_torsion(s2):
    x = s2.gens[0]
    rep = check_grade_tor(Ideal(s2, [x]), ModulePresentation.cyclic(s2, [x]), (-3, 3))
    assert rep.verdict == "pass"
    assert rep.details["grade"] == 0


def test_boundary_incomplete_flagging(s2):
    x = s2.gens[0]
    n = ModulePresentation.cyclic(s2, [x])
    dims, incomplete = tor_with_dual(1, n, ModulePresentation.free(s2), (-2, 2))
    # the resolution reaches one step out of the window on each side
    assert incomplete
    for d in incomplete:
        assert d not in dims


def test_endo_transpose_symmetry(flagship):
    """Commuting-family dimension equals that of the degreewise transpose dual."""
    from loccoh.cech import Box, cech_cohomology, commuting_family_dimension, monomial_exponents

    i, m, pres = flagship
    window = Box(-3, 3, 4)
    h = cech_cohomology(1, monomial_exponents(i), m, window)
    direct = commuting_family_dimension(h)

    class TransposeDual:
        """Window view of D(H): dims at -a, actions transposed and reversed."""

        def __init__(self, h, window):
            self.h = h
            self.window = window
            self.engine = h.engine

        def dim(self, a):
            return self.h.dim(tuple(-x for x in a))

        def action(self, j, a):
            minus = tuple(-x for x in a)
            step = tuple(x - (1 if k == j else 0) for k, x in enumerate(minus))
            return self.h.action(j, step).T

        def support(self):
            return sorted((a, d) for a in self.window if (d := self.dim(a)))

    dual = TransposeDual(h, window)
    assert commuting_family_dimension(dual, window) == direct == 2
