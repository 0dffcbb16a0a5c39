"""Finite-dimensional algebras, modules, resolutions and Ext."""

from .algebras import (
    CONSTRUCTOR_DIM_CAP,
    BasisAlgebra,
    check_group,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    klein_four_group,
    make_algebra,
    make_exterior,
    make_group_algebra,
    make_quantum_ci,
    make_truncated_polynomial,
    quaternion_group,
    symmetric_group,
)
from .chainmaps import (
    ChainOperator,
    NotPeriodic,
    detect_periodicity,
    eisenbud_operator,
    identity_operator,
    lift_chain_map,
)
from .ext import ExtCohomology, ExtGenerators, ExtSequence, ext_dims, ext_ring_generators, operator_window
from .free import FreeMap
from .modules import FDModule, regular_module, standard_module, submodule_of_free, trivial_module
from .radical import compute_radical
from .resolution import ALGEBRA_DIM_CAP, FREE_DIM_CAP, MinimalResolution, minimal_resolution
