"""Verification toolkit for Bethe vectors on inhomogeneous spin-1/2 chains.

The package builds monodromy matrices site by site, forms formal Bethe
vectors, and certifies the algebraic identities they satisfy: the
Yang-Baxter equation, the bilinear monodromy exchange relations,
component decompositions of Bethe vectors over subchains, and transfer
matrix eigenvalue equations checked against dense brute-force spectra.
Exact rational arithmetic is available for the rational kernel, so most
identities can be certified with zero residual.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bethe import (
    BetheCertificate,
    BetheSolveResult,
    SpectralSet,
    bethe_y,
    certify_eigenvector,
    formal_bethe_vector,
    solve_bethe,
    tau_eigenvalue,
    transfer_matrix,
)
from .chain import (
    ChainSpec,
    OperatorBlock,
    commutation_residuals,
    l_operator,
    local_alpha,
    local_delta,
    monodromy,
    multiply_blocks,
    partial_monodromy,
    pseudovacuum,
    rtt_residual,
    vacuum_eigenvalues,
    vacuum_functions,
)
from .decomposition import (
    Split,
    all_splits,
    decomposition_report,
    enumerate_bipartitions,
    enumerate_ordered_partitions,
    homogeneous_coordinate_vector,
    local_structure_vector,
    multi_component_vector,
    two_component_vector,
)
from .errors import BetheKitError
from .linalg import max_abs, rel_max_diff
from .oracle import (
    SpectrumReport,
    dense_spectrum,
    down_spin_count,
    match_bethe_to_spectrum,
    sector_indices,
)
from .rmatrix import Kernel, build_r_matrix, kernel_f, kernel_g, yang_baxter_residual
from .scalars import EXACT, FLOAT, Scalar, Tolerance

__all__ = [
    "BetheCertificate",
    "BetheKitError",
    "BetheSolveResult",
    "ChainSpec",
    "EXACT",
    "FLOAT",
    "Kernel",
    "OperatorBlock",
    "Scalar",
    "SpectralSet",
    "SpectrumReport",
    "Split",
    "Tolerance",
    "all_splits",
    "bethe_y",
    "build_r_matrix",
    "certify_eigenvector",
    "commutation_residuals",
    "decomposition_report",
    "dense_spectrum",
    "down_spin_count",
    "enumerate_bipartitions",
    "enumerate_ordered_partitions",
    "formal_bethe_vector",
    "homogeneous_coordinate_vector",
    "kernel_f",
    "kernel_g",
    "l_operator",
    "local_alpha",
    "local_delta",
    "local_structure_vector",
    "match_bethe_to_spectrum",
    "max_abs",
    "monodromy",
    "multi_component_vector",
    "multiply_blocks",
    "partial_monodromy",
    "pseudovacuum",
    "rel_max_diff",
    "rtt_residual",
    "sector_indices",
    "solve_bethe",
    "tau_eigenvalue",
    "transfer_matrix",
    "two_component_vector",
    "vacuum_eigenvalues",
    "vacuum_functions",
    "yang_baxter_residual",
]
