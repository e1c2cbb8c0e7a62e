import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from loccoh.cech import MonomialModule
from loccoh.groebner import Ideal, quotient_ring
from loccoh.modules import ModulePresentation
from loccoh.rings import Ring


@pytest.fixture(scope="session")
def s4():
    return Ring.poly_ring(32003, ["x", "y", "z", "w"])


@pytest.fixture(scope="session")
def r4(s4):
    x, y, z, w = s4.gens
    return quotient_ring(s4, [x * z, y * w])


@pytest.fixture(scope="session")
def s2():
    return Ring.poly_ring(32003, ["x", "y"])


@pytest.fixture(scope="session")
def s1():
    return Ring.poly_ring(32003, ["x"])


@pytest.fixture(scope="session")
def flagship(r4):
    """(ideal, monomial module, z-graded presentation) of the flagship instance."""
    x, y, z, _ = r4.gens
    i = Ideal(r4, [x, y, z])
    m = MonomialModule.direct_sum(
        MonomialModule.cyclic(r4, [x, y]),
        MonomialModule.cyclic(r4, [y, z]),
    )
    return i, m, m.zgraded_presentation()


@pytest.fixture(scope="session")
def m_ps3_summands(r4):
    x, y, z, _ = r4.gens
    m1 = ModulePresentation.cyclic(r4, [x, y])
    m2 = ModulePresentation.cyclic(r4, [y, z])
    return m1, m2
