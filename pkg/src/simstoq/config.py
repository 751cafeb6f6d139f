"""Central record of the numerical tolerances used across the package.

Every threshold lives in one frozen dataclass so that a run can tighten or
relax the numerics by swapping a single object instead of hunting through
call sites.  Functions that take an explicit ``tol`` argument fall back to
the matching field of :data:`DEFAULT_TOLS` when passed ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # matrix wrapper construction
    hermiticity: float = 1e-10
    unitarity: float = 1e-10

    # Jacobi eigensolver: off-diagonal Frobenius mass relative to the input
    # Frobenius norm, sweep cap, and the reconstruction residual accepted
    # for a returned eigensystem.
    jacobi_offdiag: float = 1e-14
    jacobi_max_sweeps: int = 100
    eig_reconstruction: float = 1e-9

    # commutator Hermiticity/trace residual (scaled by the operand norms)
    commutator: float = 1e-12

    # unit-determinant phase residual of generated special unitaries
    det_phase: float = 1e-8

    # basis construction
    basis_traceless: float = 1e-14
    basis_orthonormal: float = 1e-12

    # structure-constant tables: drop-to-zero threshold for the trace
    # oracle and the accepted analytic-vs-oracle discrepancy
    table_zero: float = 1e-13
    table_match: float = 1e-12

    # Bloch conversions
    bloch_traceless: float = 1e-10

    # star closure: a residual counts as a new direction when its norm
    # exceeds closure_rank_rel times the largest input norm
    closure_rank_rel: float = 1e-8

    # runtime sanity check on word traces (cyclic rotation agreement)
    word_cyclic: float = 1e-10

    # pair similarity comparisons (scaled by dimension and operand norms)
    pair_similarity: float = 1e-8

    # certificate checks
    pairing: float = 1e-8
    stoquastic: float = 1e-10


DEFAULT_TOLS = Tolerances()
