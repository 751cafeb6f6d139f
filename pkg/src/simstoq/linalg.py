"""Dense complex linear algebra for small Hermitian problems (d <= ~16).

Self-contained building blocks used everywhere else in the package:
validated matrix wrappers, a cyclic Jacobi eigensolver for Hermitian
matrices, unitary construction from Hermitian generators, conjugation,
commutators, and seeded random ensembles.

All operations are pure functions of their inputs.  The wrapper objects
hold read-only arrays and are safe to share across threads.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .config import DEFAULT_TOLS, Tolerances


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi sweeps fail to reach the target residual."""


def _as_square_complex(entries) -> np.ndarray:
    arr = np.array(entries, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValueError("matrix must have at least one row")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite (no NaN or Inf)")
    arr.setflags(write=False)
    return arr


class ComplexMatrix:
    """Immutable dense complex square matrix.

    The wrapped array is validated (square, finite) and marked read-only at
    construction.  Access the raw ``numpy`` payload through ``.mat``.
    """

    __slots__ = ("mat",)

    def __init__(self, entries):
        self.mat = _as_square_complex(entries)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class HermitianMatrix(ComplexMatrix):
    """Complex matrix with ``max |H_jk - conj(H_kj)|`` bounded at construction.

    The trace is tracked but may be nonzero; tracelessness is enforced only
    by the operations that require it.
    """

    __slots__ = ()

    def __init__(self, entries, tol: float | None = None):
        super().__init__(entries)
        tol = DEFAULT_TOLS.hermiticity if tol is None else tol
        residual = float(np.max(np.abs(self.mat - self.mat.conj().T)))
        if residual > tol:
            raise ValueError(
                f"matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.3e}"
            )

    @property
    def trace(self) -> float:
        return float(np.trace(self.mat).real)


class UnitaryMatrix(ComplexMatrix):
    """Complex matrix with ``max |(U^dag U - I)_jk|`` bounded at construction."""

    __slots__ = ()

    def __init__(self, entries, tol: float | None = None):
        super().__init__(entries)
        tol = DEFAULT_TOLS.unitarity if tol is None else tol
        gram = self.mat.conj().T @ self.mat
        residual = float(np.max(np.abs(gram - np.eye(self.dim))))
        if residual > tol:
            raise ValueError(
                f"matrix is not unitary: residual {residual:.3e} exceeds {tol:.3e}"
            )


class EigenSystem(NamedTuple):
    """Eigenvalues sorted ascending and the matching eigenvector columns.

    Satisfies ``max |(V diag(w) V^dag - H)_jk| <= eig_reconstruction`` for the
    matrix it was computed from.
    """

    eigenvalues: np.ndarray
    eigenvectors: UnitaryMatrix


def eigh_batch(
    mats: np.ndarray,
    offdiag_tol: float | None = None,
    max_sweeps: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a stack of Hermitian matrices by cyclic Jacobi sweeps.

    Parameters
    ----------
    mats : ndarray, shape (B, d, d)
        Stack of Hermitian matrices (not validated; intended for internal
        hot paths and the public wrapper below).
    offdiag_tol : float, optional
        Convergence target for the off-diagonal Frobenius mass, relative to
        each matrix's Frobenius norm.
    max_sweeps : int, optional
        Cap on the number of full (p, q) sweeps.

    Returns
    -------
    w : ndarray, shape (B, d)
        Real eigenvalues, ascending.
    V : ndarray, shape (B, d, d)
        Unitary eigenvector columns in matching order.

    Each sweep annihilates every off-diagonal pair once with a complex
    rotation; the rotation for pair (p, q) uses the phase of A[p, q] and the
    classical smaller-angle tangent root, which keeps every rotation angle
    within pi/4 and guarantees convergence.
    """
    tols = DEFAULT_TOLS
    offdiag_tol = tols.jacobi_offdiag if offdiag_tol is None else offdiag_tol
    max_sweeps = tols.jacobi_max_sweeps if max_sweeps is None else max_sweeps

    A = np.array(mats, dtype=np.complex128)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ValueError(f"expected a (B, d, d) stack, got shape {A.shape}")
    nbatch, d, _ = A.shape
    V = np.broadcast_to(np.eye(d, dtype=np.complex128), A.shape).copy()

    norm0 = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    target = offdiag_tol * norm0
    # entries already far below rounding relevance are skipped outright
    skip = 1e-18 * norm0

    offdiag = ~np.eye(d, dtype=bool)

    def offdiag_mass(M):
        return np.sqrt(np.sum(np.abs(M[:, offdiag]) ** 2, axis=1))

    if d == 1:
        w = np.einsum("bii->bi", A).real.copy()
        return w, V

    for _ in range(max_sweeps):
        if np.all(offdiag_mass(A) <= target):
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[:, p, q]
                r = np.abs(apq)
                active = r > skip
                if not active.any():
                    continue
                phase = np.where(active, apq, 1.0)
                e = phase / np.abs(phase)
                # annihilation condition: t^2 + 2*kappa*t - 1 = 0 with
                # kappa = (A_pp - A_qq) / (2 |A_pq|); take the root of
                # smaller magnitude so |theta| <= pi/4
                kappa = (A[:, p, p].real - A[:, q, q].real) / np.where(
                    active, 2.0 * r, 1.0
                )
                sgn = np.where(kappa >= 0.0, 1.0, -1.0)
                t = sgn / (np.abs(kappa) + np.sqrt(kappa * kappa + 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                c = np.where(active, c, 1.0)
                s = np.where(active, s, 0.0)
                se = s * e
                sec = s * e.conj()

                ap = A[:, :, p].copy()
                aq = A[:, :, q].copy()
                A[:, :, p] = c[:, None] * ap + sec[:, None] * aq
                A[:, :, q] = -se[:, None] * ap + c[:, None] * aq
                rp = A[:, p, :].copy()
                rq = A[:, q, :].copy()
                A[:, p, :] = c[:, None] * rp + se[:, None] * rq
                A[:, q, :] = -sec[:, None] * rp + c[:, None] * rq
                # the rotation zeroes the (p, q) entry analytically
                A[:, p, q] = np.where(active, 0.0, A[:, p, q])
                A[:, q, p] = np.conj(A[:, p, q])

                vp = V[:, :, p].copy()
                vq = V[:, :, q].copy()
                V[:, :, p] = c[:, None] * vp + sec[:, None] * vq
                V[:, :, q] = -se[:, None] * vp + c[:, None] * vq
    else:
        worst = float(np.max(offdiag_mass(A) / np.maximum(norm0, 1e-300)))
        raise ConvergenceError(
            f"Jacobi sweeps did not converge within {max_sweeps} sweeps: "
            f"relative off-diagonal residual {worst:.3e} exceeds {offdiag_tol:.3e}"
        )

    w = np.einsum("bii->bi", A).real.copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    return w, V


def hermitian_eigensystem(
    H: HermitianMatrix, tols: Tolerances = DEFAULT_TOLS
) -> EigenSystem:
    """Full eigensystem of a Hermitian matrix via cyclic Jacobi.

    Eigenvalues come back real and ascending; the eigenvector matrix is
    unitary and reconstructs ``H`` within ``tols.eig_reconstruction``.
    Eigenvectors of a degenerate cluster are an arbitrary orthonormal basis
    of the eigenspace.
    """
    w, V = eigh_batch(
        H.mat[None, :, :],
        offdiag_tol=tols.jacobi_offdiag,
        max_sweeps=tols.jacobi_max_sweeps,
    )
    w, V = w[0], V[0]
    residual = float(np.max(np.abs((V * w) @ V.conj().T - H.mat)))
    if residual > tols.eig_reconstruction:
        raise ConvergenceError(
            f"eigensystem reconstruction residual {residual:.3e} exceeds "
            f"{tols.eig_reconstruction:.3e}"
        )
    return EigenSystem(w, UnitaryMatrix(V, tol=tols.unitarity))


def commutator_i(
    A: HermitianMatrix, B: HermitianMatrix, tols: Tolerances = DEFAULT_TOLS
) -> HermitianMatrix:
    """Return ``i(AB - BA)``, Hermitian and traceless for Hermitian inputs.

    Hermiticity and tracelessness of the result are guaranteed analytically
    and asserted numerically at ``tols.commutator`` (scaled by the operand
    norms).
    """
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    C = 1j * (A.mat @ B.mat - B.mat @ A.mat)
    scale = max(1.0, float(np.linalg.norm(A.mat) * np.linalg.norm(B.mat)))
    herm = float(np.max(np.abs(C - C.conj().T)))
    tr = abs(complex(np.trace(C)))
    if herm > tols.commutator * scale or tr > tols.commutator * scale:
        raise ValueError(
            f"commutator sanity check failed: hermiticity {herm:.3e}, trace {tr:.3e}"
        )
    return HermitianMatrix(C, tol=tols.commutator * scale)


def conjugate(
    U: UnitaryMatrix, H: HermitianMatrix, tols: Tolerances = DEFAULT_TOLS
) -> HermitianMatrix:
    """Similarity transform ``U H U^dag``; preserves spectrum and trace."""
    if U.dim != H.dim:
        raise ValueError(f"dimension mismatch: {U.dim} vs {H.dim}")
    return HermitianMatrix(U.mat @ H.mat @ U.mat.conj().T, tol=tols.hermiticity)


def unitary_from_generator(
    theta: np.ndarray, basis, tols: Tolerances = DEFAULT_TOLS
) -> UnitaryMatrix:
    """Special unitary ``exp(i sum_k theta_k L_k)`` over a Hermitian basis.

    ``basis`` is a :class:`~simstoq.su_basis.GellMannBasis`; ``theta`` must
    have length ``d**2 - 1``.  The exponential is computed exactly through
    the eigendecomposition of the Hermitian generator.  The result has unit
    determinant (traceless generator), asserted within ``tols.det_phase``.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (basis.size,):
        raise ValueError(
            f"theta must have length {basis.size}, got shape {theta.shape}"
        )
    gen = np.tensordot(theta, basis.stack, axes=(0, 0))
    w, V = eigh_batch(gen[None, :, :])
    w, V = w[0], V[0]
    U = (V * np.exp(1j * w)) @ V.conj().T
    det_phase = complex(np.exp(1j * np.sum(w)))
    if abs(det_phase - 1.0) > tols.det_phase:
        raise ValueError(
            f"determinant phase deviates from 1 by {abs(det_phase - 1.0):.3e}"
        )
    return UnitaryMatrix(U, tol=tols.unitarity)


def random_traceless_hermitian(d: int, seed) -> HermitianMatrix:
    """Seeded GUE-style draw, Hermitized as ``(A + A^dag)/2`` and de-traced.

    Entries are independent standard complex Gaussians; the trace is
    subtracted off the diagonal.  The same seed reproduces the matrix
    bitwise; ``seed`` is anything ``numpy.random.default_rng`` accepts.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    H = (A + A.conj().T) / 2.0
    H[np.diag_indices(d)] -= np.trace(H).real / d
    return HermitianMatrix(H)
