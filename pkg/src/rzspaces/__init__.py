"""Invariants of Rapoport-Zink spaces of polarized p-divisible groups.

Dimension in three equivalent forms, the component group, the isocrystal
split, and an exact census of Dieudonne lattices over truncated Witt
vectors that cross-checks the duality identities.
"""
from ._backend import BACKEND
from .components import ComponentGroupDescription, component_group
from .dimension import (DimensionReport, defect, dim_eq4, dim_eq5, dim_nonpolarized,
                        dim_polarized, extension_dimension, full_report, level_free_count)
from .errors import *  # noqa: F401,F403
from .newton import (NewtonPolygon, SimpleSummand, decompose_parts, dual, enumerate_symmetric,
                     is_symmetric, m_invariant, m_invariant_symmetric, parse_newton,
                     split_polarized)
from .rootdata import Coweight, mu_minuscule, newton_vector, pair, pi1_image
from .wittring import WittRingSpec, WittScalar, arith, frobenius, teichmuller

__version__ = "0.1.0"
