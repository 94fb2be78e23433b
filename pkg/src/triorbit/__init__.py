"""Classification of GL2-orbits of free cyclic submodules over T_n(GF(p)).

The package decides freeness, unimodularity, and outlier status of pairs
of lower triangular matrices, reduces free pairs to unique canonical
representatives with checkable certificates, realizes the bijection
between orbits and set partitions, and verifies the classification by
exhaustive orbit enumeration at desk scale.
"""

from .errors import (
    BudgetExceeded,
    CanonicalizationFailed,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPartition,
    NonPrimeModulus,
    NotAUnit,
    NotCanonical,
    NotFree,
    NotInvertible,
    PivotSelectionFailed,
    SingularMatrix,
    SingularSystem,
    TriOrbitError,
    UnsupportedDimension,
    VerificationFailed,
    ZeroInverse,
)
from .field import GF, is_prime
from .trimat import (
    LowerTriMatrix,
    augmented_rank,
    leading_rank,
    truncated_b_rank,
)
from .modpairs import (
    ModulePair,
    Submodule,
    cyclic_submodule,
    format_pair,
    is_free_oracle,
    is_outlier_oracle,
    parse_pair,
)
from .gl2 import (
    GL2Element,
    act_left_unit,
    act_right,
    gl2_generators,
    gl2_is_invertible,
    unit_generators,
)
from .canonical import (
    Certificate,
    Trace,
    build_k,
    build_v,
    canonicalize,
    enumerate_canonical,
    is_canonical,
    select_pivots,
    verify_certificate,
)
from .partitions import (
    SetPartition,
    bell,
    enumerate_partitions,
    pair_to_partition,
    partition_to_pair,
)
from .oracle import (
    OrbitReport,
    enumerate_free_submodules,
    orbit_decomposition,
    random_free_pairs,
    verify_classification,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "GL2Element",
    "LowerTriMatrix",
    "ModulePair",
    "OrbitReport",
    "SetPartition",
    "Submodule",
    "Certificate",
    "Trace",
    "act_left_unit",
    "act_right",
    "augmented_rank",
    "bell",
    "build_k",
    "build_v",
    "canonicalize",
    "cyclic_submodule",
    "enumerate_canonical",
    "enumerate_free_submodules",
    "enumerate_partitions",
    "format_pair",
    "gl2_generators",
    "gl2_is_invertible",
    "is_canonical",
    "is_free_oracle",
    "is_outlier_oracle",
    "is_prime",
    "leading_rank",
    "orbit_decomposition",
    "pair_to_partition",
    "parse_pair",
    "partition_to_pair",
    "random_free_pairs",
    "select_pivots",
    "truncated_b_rank",
    "unit_generators",
    "verify_certificate",
    "verify_classification",
    # errors
    "TriOrbitError",
    "NonPrimeModulus",
    "ZeroInverse",
    "DimensionMismatch",
    "SingularMatrix",
    "IndexOutOfRange",
    "BudgetExceeded",
    "NotFree",
    "NotAUnit",
    "NotInvertible",
    "UnsupportedDimension",
    "PivotSelectionFailed",
    "SingularSystem",
    "CanonicalizationFailed",
    "NotCanonical",
    "InvalidPartition",
    "VerificationFailed",
]
