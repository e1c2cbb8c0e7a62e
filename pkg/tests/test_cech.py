"""Multigraded Cech engine tests: pieces, cohomology, oracles, windowed maps."""

import numpy as np
import pytest

from loccoh.cech import (
    Box,
    CechEngine,
    MonomialModule,
    PreconditionError,
    SimplicialComplex,
    cd_scan,
    cech_cohomology,
    commuting_family_dimension,
    hochster_oracle,
    localized_pieces,
    module_pieces,
    monomial_exponents,
    natural_map_between_ideals,
    windowed_ext_into,
    windowed_hom_into_localcoh,
)
from loccoh.groebner import Ideal, quotient_ring
from loccoh.homology import ext, grade
from loccoh.modules import ModulePresentation
from loccoh.rings import Ring

P = 32003


def test_module_pieces_flagship_ring(r4):
    m = MonomialModule.cyclic(r4, [])
    w = Box(-3, 3, 4)
    pieces = module_pieces(m, w)
    assert pieces.dim((1, 0, 1, 0)) == 0  # xz = 0
    assert pieces.dim((1, 1, 0, 0)) == 1  # xy survives
    free = ModulePresentation.free(r4)
    for d in range(4):
        total = sum(pieces.dim(a) for a in w if sum(a) == d)
        assert total == free.hilbert_function(d)


def test_localized_pieces(s4):
    m = MonomialModule.cyclic(s4, [])
    w = Box(-3, 3, 4)
    loc = localized_pieces(m, s4.gens[0], w)
    assert loc.dim((-1, 0, 0, 0)) == 1
    assert loc.dim((0, -1, 0, 0)) == 0


def test_localization_kills_torsion(r4):
    m1 = MonomialModule.cyclic(r4, [r4.gens[0], r4.gens[1]])  # x acts nilpotently
    loc = localized_pieces(m1, r4.gens[0], Box(-3, 3, 4))
    assert loc.is_zero_on_window()


def test_h1_principal_on_plane(s2):
    m = MonomialModule.cyclic(s2, [])
    h1 = cech_cohomology(1, [s2.gens[0]], m, Box(-4, 4, 2))
    assert h1.dim((-1, 0)) == 1
    assert h1.dim((-1, -1)) == 0
    # oracle: (S_x / S)_a is spanned by x^a y^b with a < 0 <= b
    for a in Box(-3, 3, 2):
        expected = 1 if a[0] < 0 <= a[1] else 0
        assert h1.dim(a) == expected


def test_h0_vanishes_when_grade_positive(flagship):
    i, m, pres = flagship
    assert grade(i, pres).value >= 1
    h0 = cech_cohomology(0, monomial_exponents(i), m, Box(-3, 3, 4))
    assert h0.is_zero_on_window()


def test_flagship_window_profile(flagship):
    i, m, _ = flagship
    gens = monomial_exponents(i)
    w = Box(-3, 3, 4)
    assert cech_cohomology(0, gens, m, w).is_zero_on_window()
    assert cech_cohomology(2, gens, m, w).is_zero_on_window()
    h1 = cech_cohomology(1, gens, m, w)
    assert not h1.is_zero_on_window()
    # two rays: (0,0,c,d) with c<0<=d and (c,0,0,d) with c<0<=d
    for a, dim in h1.support():
        assert dim == 1
        assert a[1] == 0
        assert (a[0] == 0 and a[2] < 0 <= a[3]) or (a[2] == 0 and a[0] < 0 <= a[3])


def test_cd_scans(flagship, r4):
    i, m, _ = flagship
    w = Box(-3, 3, 4)
    assert cd_scan(monomial_exponents(i), m, w) == 1
    r_mod = MonomialModule.cyclic(r4, [])
    assert cd_scan([g.lm for g in r4.gens], r_mod, w) == 2
    m1 = MonomialModule.cyclic(r4, [r4.gens[0], r4.gens[1]])
    assert cd_scan([r4.gens[0].lm], m1, w) == 0


def test_differential_squares_to_zero(flagship):
    i, m, _ = flagship
    engine = CechEngine(m, monomial_exponents(i))
    for a in Box(-2, 2, 4):
        for t in range(engine.r - 1):
            d1 = engine.diff_matrix(t, a)
            d2 = engine.diff_matrix(t + 1, a)
            if d1.size and d2.size:
                assert not ((d2 @ d1) % P).any()


def test_variable_actions_commute(flagship):
    i, m, _ = flagship
    h1 = cech_cohomology(1, monomial_exponents(i), m, Box(-3, 3, 4))
    for a, _ in h1.support():
        for j in range(4):
            for k in range(j + 1, 4):
                aj = tuple(x + (1 if t == j else 0) for t, x in enumerate(a))
                ak = tuple(x + (1 if t == k else 0) for t, x in enumerate(a))
                left = (h1.action(k, aj) @ h1.action(j, a)) % P
                right = (h1.action(j, ak) @ h1.action(k, a)) % P
                assert np.array_equal(left, right)


# -- the combinatorial oracle ---------------------------------------------------

def test_hochster_two_points():
    delta = SimplicialComplex(2, [[0], [1]])
    assert hochster_oracle(delta, 1, (0, 0), P) == 1
    assert hochster_oracle(delta, 1, (-1, 0), P) == 1
    assert hochster_oracle(delta, 1, (-1, -1), P) == 0
    assert hochster_oracle(delta, 0, (0, 0), P) == 0


def test_hochster_full_simplex():
    delta = SimplicialComplex(3, [[0, 1, 2]])
    for i in range(3):
        for a in Box(-2, 0, 3):
            assert hochster_oracle(delta, i, a, P) == 0
    assert hochster_oracle(delta, 3, (-1, -1, -1), P) == 1


def test_hochster_four_cycle():
    delta = SimplicialComplex.from_nonfaces(4, [[0, 2], [1, 3]])
    for a in Box(-2, 0, 4):
        assert hochster_oracle(delta, 1, a, P) == 0
    assert hochster_oracle(delta, 2, (0, 0, 0, 0), P) == 1
    assert hochster_oracle(delta, 2, (-1, -2, 0, 0), P) == 1


SR_INSTANCES = [
    (2, [[0, 1]]),  # two disjoint points
    (3, []),  # full simplex
    (3, [[0, 1, 2]]),  # hollow triangle
    (3, [[0, 2]]),  # path on three vertices
    (4, [[0, 2], [1, 3]]),  # four-cycle
]


def _stanley_reisner_setup(n, nonfaces):
    names = ["x", "y", "z", "w"][:n]
    s = Ring.poly_ring(P, names)
    delta = SimplicialComplex.from_nonfaces(n, nonfaces)
    nf_monos = delta.stanley_reisner_nonface_monomials()
    gens = [s.monomial(mn) for mn in nf_monos]
    r = quotient_ring(s, gens) if gens else s
    return s, r, delta


@pytest.mark.parametrize("n,nonfaces", SR_INSTANCES)
def test_cech_matches_hochster(n, nonfaces):
    s, r, delta = _stanley_reisner_setup(n, nonfaces)
    m = MonomialModule.cyclic(r, [])
    engine = CechEngine(m, [g.lm for g in r.gens])
    for i in range(n + 1):
        for a in Box(-2, 1, n):
            assert engine.dim(i, a) == hochster_oracle(delta, i, a, P), (i, a)


@pytest.mark.parametrize("n,nonfaces", SR_INSTANCES)
def test_cech_matches_dual_ext(n, nonfaces):
    """Graded local duality: H^i_m dims equal dual Ext^(n-i) dims into S(-1)."""
    s, r, delta = _stanley_reisner_setup(n, nonfaces)
    m = MonomialModule.cyclic(r, [])
    engine = CechEngine(m, [g.lm for g in r.gens])
    sr_mod = ModulePresentation.cyclic(s, [s.monomial(mn) for mn in delta.stanley_reisner_nonface_monomials()], "Zn")
    omega = ModulePresentation.free(s, [(1,) * n], "Zn")
    exts = {j: ext(j, sr_mod, omega) for j in range(n + 1)}
    for i in range(n + 1):
        for a in Box(-2, 1, n):
            lhs = engine.dim(i, a)
            rhs = exts[n - i].hilbert_function(tuple(-x for x in a))
            assert lhs == rhs, (i, a, lhs, rhs)


# -- comparison maps -------------------------------------------------------------

def test_natural_map_identity(flagship):
    i, m, _ = flagship
    gens = monomial_exponents(i)
    rows = natural_map_between_ideals(gens, gens, m, 1, Box(-2, 2, 4))
    assert rows
    for _, ds, dt, inj in rows:
        assert ds == dt and inj


def test_natural_map_flagship_variant(flagship):
    i, m, _ = flagship
    sub = [i.gens[0].lm, i.gens[2].lm]  # (x, z) inside (x, y, z)
    rows = natural_map_between_ideals(sub, monomial_exponents(i), m, 1, Box(-3, 3, 4))
    assert rows
    for _, ds, dt, inj in rows:
        assert inj and ds == dt


def test_natural_map_grade_mismatch(s2):
    m = MonomialModule.cyclic(s2, [])
    with pytest.raises(PreconditionError):
        natural_map_between_ideals([s2.gens[0].lm], [g.lm for g in s2.gens], m, 1, Box(-2, 2, 2))


def test_natural_map_requires_subset(s2):
    m = MonomialModule.cyclic(s2, [])
    with pytest.raises(PreconditionError):
        natural_map_between_ideals([s2.gens[1].lm], [s2.gens[0].lm], m, 1, Box(-2, 2, 2))


# -- windowed Hom ---------------------------------------------------------------

def test_windowed_hom_free_source(flagship):
    i, m, _ = flagship
    h1 = cech_cohomology(1, monomial_exponents(i), m, Box(-4, 4, 4))
    free = ModulePresentation.free(i.ring, [(0, 0, 0, 0)], "Zn")
    slices = h1.slice_dims()
    for d in (-2, -1, 0, 1):
        dim, _ = windowed_hom_into_localcoh(free, h1, d)
        assert dim == slices.get(d, 0)


def test_windowed_hom_cross_engine(flagship):
    i, m, pres = flagship
    h1 = cech_cohomology(1, monomial_exponents(i), m, Box(-4, 4, 4))
    ri_z = ModulePresentation.cyclic(i.ring, i.gens, "Z")
    ri_zn = ModulePresentation.cyclic(i.ring, i.gens, "Zn")
    e1 = ext(1, ri_z, pres)
    for d in range(-2, 3):
        dim, complete = windowed_hom_into_localcoh(ri_zn, h1, d)
        assert complete
        assert dim == e1.hilbert_function(d)


def test_windowed_ext_into_agrees_with_hom_at_zero(flagship):
    i, m, _ = flagship
    h1 = cech_cohomology(1, monomial_exponents(i), m, Box(-3, 3, 4))
    ri_zn = ModulePresentation.cyclic(i.ring, i.gens, "Zn")
    for d in (-1, 0, 1):
        hom_dim, _ = windowed_hom_into_localcoh(ri_zn, h1, d)
        ext_dim, _ = windowed_ext_into(ri_zn, h1, 0, d)
        assert hom_dim == ext_dim


def test_socle_of_top_cohomology(r4):
    """Hom(k, H^2_m(R)) is one-dimensional, concentrated in degree 0."""
    m = MonomialModule.cyclic(r4, [])
    h2 = cech_cohomology(2, [g.lm for g in r4.gens], m, Box(-4, 4, 4))
    k_zn = ModulePresentation.cyclic(r4, list(r4.gens), "Zn")
    dims = {}
    for d in range(-3, 3):
        dims[d], complete = windowed_hom_into_localcoh(k_zn, h2, d)
        assert complete
    assert dims == {-3: 0, -2: 0, -1: 0, 0: 1, 1: 0, 2: 0}


def test_commuting_families_on_rays(flagship):
    i, m, _ = flagship
    h1 = cech_cohomology(1, monomial_exponents(i), m, Box(-4, 4, 4))
    assert commuting_family_dimension(h1) == 2


def test_grade_consistency_with_cech(flagship):
    i, m, pres = flagship
    gens = monomial_exponents(i)
    w = Box(-3, 3, 4)
    first_nonzero = None
    for j in range(4):
        if not cech_cohomology(j, gens, m, w).is_zero_on_window():
            first_nonzero = j
            break
    assert first_nonzero == grade(i, pres).value
