"""Optimal programmable discrimination of two unknown qudit states.

Closed-form unambiguous and minimum-error optima for the Haar-averaged
multi-copy discrimination problem, with a dense-matrix oracle that
certifies every formula from first principles.
"""

from .combinatorics import (
    Partition,
    binomial,
    hook_lengths,
    log_gamma_half,
    partitions,
    sym_group_dim,
    unitary_dim,
)
from .discrimination import (
    AsymptoticBounds,
    Branch,
    MinErrorResult,
    UnambiguousResult,
    asymptotic_bounds,
    block_failure,
    bound_p0,
    bound_q0,
    boundaries,
    equal_copies_failure,
    minerror_eigenvalues,
    minerror_probability,
    optimal_q,
    total_failure,
)
from .errors import OracleError, PreconditionError, QudiscError
from .spectrum import (
    BlockPriors,
    JordanBlock,
    JordanSpectrum,
    ProblemConfig,
    block_priors,
    canonicalize,
    jordan_spectrum,
    multiplicity,
    overlap,
    overlap_via_6j,
    wigner_6j,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticBounds", "BlockPriors", "Branch", "JordanBlock", "JordanSpectrum",
    "MinErrorResult", "OracleError", "Partition", "PreconditionError",
    "ProblemConfig", "QudiscError", "UnambiguousResult", "asymptotic_bounds",
    "binomial", "block_failure", "block_priors", "bound_p0", "bound_q0",
    "boundaries", "canonicalize", "equal_copies_failure", "hook_lengths",
    "jordan_spectrum", "log_gamma_half", "minerror_eigenvalues",
    "minerror_probability", "multiplicity", "optimal_q", "overlap",
    "overlap_via_6j", "partitions", "sym_group_dim", "total_failure",
    "unitary_dim", "wigner_6j",
]
