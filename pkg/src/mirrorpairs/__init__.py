"""Exact mirror symmetry for semi-direct products of Lie algebras.

All arithmetic is over ℚ or ℚ(i).  The main entry points:

* :mod:`mirrorpairs.lie` and :mod:`mirrorpairs.shorthand` for Lie algebras,
* :mod:`mirrorpairs.structures` for complex, symplectic and special Lagrangian structures,
* :mod:`mirrorpairs.semidirect` for ``𝔤 ⋉ V``, its dual ``𝔤 ⋉ V*``, ``ω_J`` and ``J_ω``,
* :mod:`mirrorpairs.dga` for the differential Gerstenhaber algebras and their isomorphism,
* :mod:`mirrorpairs.catalog` and :mod:`mirrorpairs.report` for the named algebras and reports.
"""

from .errors import *  # noqa: F401,F403
from .isomorphism import IsoWitness, find_isomorphism, verify_isomorphism
from .lie import LieAlgebra, betti_numbers, check_jacobi, fingerprint, is_nilpotent
from .scalars import QI, I, format_scalar, parse_scalar
from .semidirect import (
    Representation,
    SemidirectProduct,
    J_from_omega,
    build_semidirect,
    dual_semidirect,
    omega_from_J,
    split_semidirect,
)
from .shorthand import format_shorthand, parse_shorthand
from .structures import ComplexStructure, TwoForm, is_integrable, is_symplectic

__version__ = "0.1.0"
