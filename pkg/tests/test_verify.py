"""Named verification checks: outcomes, determinism, window monotonicity."""

import pytest

from loccoh.cech import Box, MonomialModule, PreconditionError
from loccoh.groebner import Ideal, quotient_ring
from loccoh.modules import ModulePresentation
from loccoh.report import emit_report
from loccoh.rings import Ring
from loccoh.verify import (
    fixed_grade_suite,
    flagship_instance,
    random_duality_suite,
    verify_duality,
    verify_endo_ring,
    verify_ext_shift,
    verify_flagship,
    verify_grade_vanishing,
    verify_ideal_pair,
)

P = 32003


def test_flagship_pass():
    rep = verify_flagship(P, Box(-4, 4, 4))
    assert rep.verdict == "pass"
    by_label = {r.degree: r for r in rep.rows}
    assert by_label["grade(I,M)"].computed == 1
    assert by_label["cd scan on window"].computed == 1
    assert by_label["dim End(M)_0 = windowed commuting-family dim"].computed == 2


def test_flagship_characteristic_independent():
    rep_a = verify_flagship(101, Box(-3, 3, 4))
    rep_b = verify_flagship(P, Box(-3, 3, 4))
    assert rep_a.verdict == rep_b.verdict == "pass"
    assert [(r.degree, r.expected, r.computed) for r in rep_a.rows] == [
        (r.degree, r.expected, r.computed) for r in rep_b.rows
    ]


def test_flagship_degenerate_window_inconclusive():
    rep = verify_flagship(P, Box(0, 0, 4))
    assert rep.verdict == "inconclusive"


def test_flagship_deterministic_json():
    a = verify_flagship(P, Box(-3, 3, 4))
    b = verify_flagship(P, Box(-3, 3, 4))
    assert emit_report([a], "json", {"p": P}) == emit_report([b], "json", {"p": P})


def test_duality_free_source(s2):
    rep = verify_duality(ModulePresentation.free(s2), ModulePresentation.cyclic(s2, [s2.gens[0] ** 2]), 1, (-4, 4))
    assert rep.verdict == "pass"


def test_duality_flagship(flagship):
    i, m, pres = flagship
    ri = ModulePresentation.cyclic(i.ring, i.gens)
    rep = verify_duality(ri, pres, 2, (-5, 5))
    assert rep.verdict == "pass"
    assert rep.all_match()


def test_duality_random_instances():
    for n, m in random_duality_suite(count=4, seed=5):
        rep = verify_duality(n, m, 2, (-6, 6))
        assert rep.verdict == "pass", rep.instance


def test_grade_vanishing_flagship(flagship):
    i, m, _ = flagship
    rep = verify_grade_vanishing(i, m, Box(-4, 4, 4))
    assert rep.verdict == "pass"
    assert rep.details["grade"] == 1


def test_grade_vanishing_regular_element(s2):
    m = MonomialModule.cyclic(s2, [])
    rep = verify_grade_vanishing(Ideal(s2, [s2.gens[0]]), m, Box(-3, 3, 2))
    assert rep.verdict == "pass"
    assert rep.details["grade"] == 1


def test_grade_vanishing_top_ideal_on_four_cycle(r4):
    m = MonomialModule.cyclic(r4, [])
    rep = verify_grade_vanishing(Ideal(r4, list(r4.gens)), m, Box(-3, 3, 4))
    assert rep.verdict == "pass"
    assert rep.details["grade"] == 2


def test_grade_vanishing_nonmonomial_skips_iso_clause(r4):
    x, y, z, w = r4.gens
    pres = ModulePresentation.direct_sum(
        ModulePresentation.cyclic(r4, [x, y]), ModulePresentation.cyclic(r4, [y, z])
    )
    rep = verify_grade_vanishing(Ideal(r4, [x + z]), pres, Box(-3, 3, 4))
    assert rep.verdict == "pass"
    assert any("skipped" in c for c in rep.caveats)


def test_ext_shift_flagship(flagship):
    i, m, _ = flagship
    rep = verify_ext_shift(i, m, [1, 2], Box(-4, 4, 4))
    assert rep.verdict == "pass"
    assert rep.details["hypothesis"] == "holds on window"


def test_ext_shift_koszul(s2):
    m = MonomialModule.cyclic(s2, [])
    rep = verify_ext_shift(Ideal(s2, [s2.gens[0]]), m, [0, 1, 2], Box(-4, 4, 2))
    assert rep.verdict == "pass"


def test_ext_shift_hypothesis_violated(s2):
    bad = MonomialModule.direct_sum(
        MonomialModule.cyclic(s2, list(s2.gens)),  # residue field: H^0 nonzero
        MonomialModule.cyclic(s2, [s2.gens[0]]),  # k[y]: H^1 nonzero
    )
    rep = verify_ext_shift(Ideal(s2, list(s2.gens)), bad, [0, 1], Box(-3, 3, 2))
    assert rep.verdict == "hypothesis-violated"
    assert not rep.rows


def test_ideal_pair_monomial_variant():
    r, i, m = flagship_instance(P)
    j = Ideal(r, [r.gens[0], r.gens[2]])
    rep = verify_ideal_pair(j, i, m, alpha_max=2, window=Box(-3, 3, 4))
    assert rep.verdict == "pass"
    assert rep.details["localized radical hypothesis"] == "holds"
    assert rep.details["grade(J^1:I^1, M)"] == 2


def test_ideal_pair_mixed_generator_instance():
    """Engine-computed truth for the (x+z) subideal: the sufficient colon
    criterion does not hold there (grade stays 1 and the Ext obstruction is
    nonzero), so the check honestly reports fail."""
    r, i, m = flagship_instance(P)
    j = Ideal(r, [r.gens[0] + r.gens[2]])
    rep = verify_ideal_pair(j, i, m, alpha_max=2, window=None)
    assert rep.verdict == "fail"
    assert rep.details["grade"] == 1
    for alpha in (1, 2):
        assert rep.details[f"grade(J^{alpha}:I^{alpha}, M)"] == 1
    assert all(not row.computed for row in rep.rows)


def test_ideal_pair_equal_ideals_trivial():
    r, i, m = flagship_instance(P)
    rep = verify_ideal_pair(i, i, m, alpha_max=1, window=Box(-2, 2, 4))
    assert rep.verdict == "pass"


def test_ideal_pair_grade_mismatch_rejected(s2):
    with pytest.raises(PreconditionError):
        verify_ideal_pair(
            Ideal(s2, [s2.gens[0]]),
            Ideal(s2, list(s2.gens)),
            ModulePresentation.free(s2),
            alpha_max=1,
        )


def test_ideal_pair_requires_containment(s2):
    with pytest.raises(PreconditionError):
        verify_ideal_pair(
            Ideal(s2, [s2.gens[1]]),
            Ideal(s2, [s2.gens[0]]),
            ModulePresentation.free(s2),
            alpha_max=1,
        )


def test_endo_ring_flagship(flagship):
    i, m, _ = flagship
    rep = verify_endo_ring(i, m, Box(-4, 4, 4))
    assert rep.verdict == "pass"
    assert rep.details["endo dimension"] == 2
    assert rep.details["commuting dimension"] == 2


def test_endo_ring_regular_monomial(s2):
    m = MonomialModule.cyclic(s2, [])
    rep = verify_endo_ring(Ideal(s2, [s2.gens[0]]), m, Box(-3, 3, 2))
    assert rep.verdict == "pass"
    assert rep.details["endo dimension"] == 1
    assert rep.details["commuting dimension"] == 1


def test_endo_ring_empty_window(s2):
    m = MonomialModule.cyclic(s2, [])
    rep = verify_endo_ring(Ideal(s2, [s2.gens[0]]), m, Box(0, 0, 2))
    assert rep.verdict == "inconclusive"


def test_window_monotonicity(s2):
    """A pass never flips to fail when the window grows."""
    m = MonomialModule.cyclic(s2, [])
    small = verify_endo_ring(Ideal(s2, [s2.gens[0]]), m, Box(-3, 3, 2))
    large = verify_endo_ring(Ideal(s2, [s2.gens[0]]), m, Box(-5, 5, 2))
    assert small.verdict == large.verdict == "pass"
    r, i, mm = flagship_instance(P)
    small2 = verify_flagship(P, Box(-3, 3, 4))
    large2 = verify_flagship(P, Box(-4, 4, 4))
    assert small2.verdict == large2.verdict == "pass"


def test_fixed_suite_finite_grades():
    for ideal, module in fixed_grade_suite(P):
        from loccoh.homology import grade

        g = grade(ideal, module)
        assert not g.is_infinite
