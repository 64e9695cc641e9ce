"""Spectra and eigenspace bases of voltage-graph lifts.

The package computes complete spectra and tagged eigenvector bases of graph
lifts defined by permutation voltage assignments, working blockwise through
the irreducible representations of the voltage group instead of building the
lift, plus a character-and-trace route for regular lifts that also covers
directed base graphs.  Everything is cross-checkable against explicitly
constructed lifts.
"""

from .errors import ConsistencyError, NumericalError, ParseError
from .permgroup import (
    ConjugacyClass,
    FiniteGroup,
    Permutation,
    SubgroupContext,
    conjugacy_classes,
    generate_group,
    is_normal,
    is_regular_action,
    is_transitive,
    parse_permutation,
    right_cosets,
    stabilizer,
    subgroup_closure,
)
from .irreps import (
    Irrep,
    IrrepSet,
    SubgroupSumImage,
    builtin_irreps,
    compute_irreps,
    subgroup_sum,
    verify_character_orthogonality,
    verify_great_orthogonality,
    verify_rank_identity,
)
from .voltage import (
    Arc,
    BaseMatrix,
    GroupAlgebraElement,
    LiftGraph,
    VoltageGraph,
    base_matrix_power,
    build_base_matrix,
    build_lift,
    build_regular_lift,
    local_group_is_transitive,
    randomize_voltages,
)
from .spectral import (
    EigenvectorBundle,
    EigenvectorColumn,
    IrrepEigenData,
    IrrepImage,
    OracleReport,
    SpectrumEntry,
    SpectrumReport,
    build_coset_sum_matrix,
    build_eigenvector_blocks,
    eig_dense,
    irrep_image,
    lift_eigenvectors,
    lift_spectrum,
    verify_against_oracle,
)
from .characters import (
    CharacterSpectrum,
    PowerSumProfile,
    apply_character,
    coefficient_of_identity,
    power_sums_to_roots,
    regular_spectrum_via_characters,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BaseMatrix",
    "CharacterSpectrum",
    "ConjugacyClass",
    "ConsistencyError",
    "EigenvectorBundle",
    "EigenvectorColumn",
    "FiniteGroup",
    "GroupAlgebraElement",
    "Irrep",
    "IrrepEigenData",
    "IrrepImage",
    "IrrepSet",
    "LiftGraph",
    "NumericalError",
    "OracleReport",
    "ParseError",
    "Permutation",
    "PowerSumProfile",
    "SpectrumEntry",
    "SpectrumReport",
    "SubgroupContext",
    "SubgroupSumImage",
    "VoltageGraph",
    "apply_character",
    "base_matrix_power",
    "build_base_matrix",
    "build_coset_sum_matrix",
    "build_eigenvector_blocks",
    "build_lift",
    "build_regular_lift",
    "builtin_irreps",
    "coefficient_of_identity",
    "compute_irreps",
    "conjugacy_classes",
    "eig_dense",
    "generate_group",
    "irrep_image",
    "is_normal",
    "is_regular_action",
    "is_transitive",
    "lift_eigenvectors",
    "lift_spectrum",
    "local_group_is_transitive",
    "parse_permutation",
    "power_sums_to_roots",
    "randomize_voltages",
    "regular_spectrum_via_characters",
    "right_cosets",
    "stabilizer",
    "subgroup_closure",
    "subgroup_sum",
    "verify_against_oracle",
    "verify_character_orthogonality",
    "verify_great_orthogonality",
    "verify_rank_identity",
]
