"""k-traces, compound matrices, mixed discriminants and interpolation bounds."""

from .errors import (
    ConvergenceError,
    DomainError,
    KTraceError,
    QuadratureError,
    ResourceLimitError,
    UnsupportedDistributionError,
)
from .exterior import KSubsetBasis, additive_compound, compound, k_subsets, mixed_exterior
from .gaps import Gap
from .linalg import (
    EigenDecomposition,
    Loewner,
    abs_matrix,
    eigh,
    hermitian,
    loewner_cmp,
    matrix_exp,
    matrix_function,
    matrix_log,
    matrix_power,
    schatten_norm,
    unitary_power,
)
from .mixed import af_gap, mixed_discriminant, trace_k_from_mixed
from .traces import elementary_symmetric, ktrace, phi, trace_k, trace_k_compound, trace_k_minors

__version__ = "0.1.0"
