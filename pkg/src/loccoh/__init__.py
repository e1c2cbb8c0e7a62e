"""loccoh: a graded local cohomology workbench.

Exact commutative algebra over a prime field: Groebner bases, minimal graded
free resolutions, Ext/Tor, grade and depth, degreewise Matlis duality, and
multigraded Cech complexes for local cohomology of monomial-presented
modules, with named verification checks and a session-script CLI.
"""

from .cech import (
    Box,
    MonomialModule,
    SimplicialComplex,
    cd_scan,
    cech_cohomology,
    hochster_oracle,
    localized_pieces,
    module_pieces,
)
from .groebner import GradedMatrix, Ideal, maximal_ideal, quotient_ring
from .homology import GradeValue, depth, ext, find_regular_sequence, grade, hom_module, tor
from .matlis import DualWindow, check_grade_tor, ext_into_dual, tor_with_dual
from .modules import (
    FreeResolution,
    ModulePresentation,
    annihilator,
    ideal_quotient,
    intersect_ideals,
    minimal_free_resolution,
)
from .report import VerificationReport, emit_report
from .rings import MonomialOrder, Polynomial, PrimeField, Ring
from .verify import (
    flagship_instance,
    verify_duality,
    verify_endo_ring,
    verify_ext_shift,
    verify_flagship,
    verify_grade_vanishing,
    verify_ideal_pair,
)

__version__ = "0.1.0"
