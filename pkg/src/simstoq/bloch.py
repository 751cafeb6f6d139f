"""Bloch-vector form of traceless Hermitian matrices and the star product.

A traceless Hermitian H expands as ``H = sum_i b_i L_i`` over the
generalized Gell-Mann basis; the real coefficient vector b (length
d^2 - 1, ordered by the basis linear index) is its Bloch vector.  The star
product contracts two Bloch vectors with the symmetric structure
constants.  It is commutative and distributive but not associative, and
``Tr[H_a H_b] = 2 a . b`` and ``Tr[H_a H_b H_c] = 2 (d + i f) . (a b c)``
turn matrix-trace invariants into vector geometry.

The star closure of a vector set is the smallest subspace containing the
set and closed under the star product; its dimension is a unitary
invariant and drives the no-go certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .linalg import HermitianMatrix
from .su_basis import GellMannBasis, StructureConstantTable


def traceless_part(H: HermitianMatrix) -> HermitianMatrix:
    """Subtract ``Tr(H)/d`` off the diagonal."""
    mat = H.mat.copy()
    mat[np.diag_indices(H.dim)] -= np.trace(mat).real / H.dim
    return HermitianMatrix(mat)


def to_bloch(
    H: HermitianMatrix, basis: GellMannBasis, tol: float | None = None
) -> np.ndarray:
    """Bloch vector ``b_i = Tr(H L_i) / 2`` of a traceless Hermitian matrix.

    The caller subtracts the trace first (see :func:`traceless_part`); a
    trace beyond ``tol`` is rejected so the expansion stays exact.
    """
    tol = DEFAULT_TOLS.bloch_traceless if tol is None else tol
    if H.dim != basis.dim:
        raise ValueError(f"dimension mismatch: {H.dim} vs basis {basis.dim}")
    tr = abs(complex(np.trace(H.mat)))
    if tr > tol:
        raise ValueError(
            f"matrix trace {tr:.3e} exceeds {tol:.3e}; subtract the trace first"
        )
    return np.einsum("ij,kji->k", H.mat, basis.stack).real / 2.0


def from_bloch(b: np.ndarray, basis: GellMannBasis) -> HermitianMatrix:
    """Traceless Hermitian matrix ``sum_i b_i L_i``."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (basis.size,):
        raise ValueError(f"expected length {basis.size}, got shape {b.shape}")
    return HermitianMatrix(np.tensordot(b, basis.stack, axes=(0, 0)))


def star(a: np.ndarray, b: np.ndarray, table: StructureConstantTable) -> np.ndarray:
    """Star product ``(a * b)_k = d_ijk a_i b_j``.

    Bilinear and exactly commutative: each symmetric-tensor entry
    contributes through ``a_p b_q + a_q b_p``, which is bitwise symmetric
    under swapping the arguments.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = table._star_size
    if a.shape != (n,) or b.shape != (n,):
        raise ValueError(f"expected vectors of length {n}, got {a.shape}, {b.shape}")
    p, q, k, v = table._star_p, table._star_q, table._star_k, table._star_v
    if len(v) == 0:
        return np.zeros(n)
    weights = np.where(p == q, a[p] * b[p], a[p] * b[q] + a[q] * b[p]) * v
    return np.bincount(k, weights=weights, minlength=n)


def pair_invariant(a: np.ndarray, b: np.ndarray) -> float:
    """``2 a . b``, which equals ``Tr[H_a H_b]``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return 2.0 * float(np.dot(a, b))


def triple_invariant(
    a: np.ndarray, b: np.ndarray, c: np.ndarray, table: StructureConstantTable
) -> complex:
    """``2 (d_ijk + i f_ijk) a_i b_j c_k``, which equals ``Tr[H_a H_b H_c]``.

    The real part is exactly ``2 (a * b) . c``; the imaginary part needs the
    antisymmetric constants, so the table must come from the trace oracle.
    """
    c = np.asarray(c, dtype=np.float64)
    real = float(np.dot(star(a, b, table), c))
    if table._f_v is None:
        raise ValueError("triple invariant needs the antisymmetric constants")
    fi, fj, fk, fv = table._f_i, table._f_j, table._f_k, table._f_v
    if len(fv) == 0:
        imag = 0.0
    else:
        det3 = (
            a[fi] * (b[fj] * c[fk] - b[fk] * c[fj])
            - a[fj] * (b[fi] * c[fk] - b[fk] * c[fi])
            + a[fk] * (b[fi] * c[fj] - b[fj] * c[fi])
        )
        imag = float(np.dot(fv, det3))
    return 2.0 * complex(real, imag)


@dataclass(frozen=True)
class StarClosure:
    """Orthonormal spanning set of the star closure of a vector set."""

    dim: int
    spanning_set: np.ndarray  # (rank, d^2 - 1), orthonormal rows
    rank: int
    generations: int

    def __post_init__(self):
        if not 1 <= self.rank <= self.dim * self.dim - 1:
            raise ValueError(f"rank {self.rank} out of range for dim {self.dim}")
        if self.spanning_set.shape[0] != self.rank:
            raise ValueError("rank does not match the spanning set")
        gram = self.spanning_set @ self.spanning_set.T
        if np.max(np.abs(gram - np.eye(self.rank))) > 1e-10:
            raise ValueError("spanning set is not orthonormal")


def star_closure(
    B, table: StructureConstantTable, tol: float | None = None
) -> StarClosure:
    """Smallest star-closed subspace containing ``span(B)``.

    Orthonormalizes the input vectors with a rank-revealing threshold, then
    repeatedly projects star products of current spanning vectors off the
    span, appending any residual direction, until a full pass adds nothing.
    Bilinearity of the star product makes pair products of spanning vectors
    sufficient; no deeper bracketings are needed.  When ``tol`` is omitted
    a residual counts as new if its norm exceeds ``closure_rank_rel`` times
    the largest input norm.
    """
    vecs = [np.asarray(v, dtype=np.float64) for v in B]
    if not vecs:
        raise ValueError("need at least one input vector")
    n = table._star_size
    for v in vecs:
        if v.shape != (n,):
            raise ValueError(f"expected vectors of length {n}, got {v.shape}")
    scale = max(float(np.linalg.norm(v)) for v in vecs)
    if scale == 0.0:
        raise ValueError("all input vectors are zero")
    threshold = DEFAULT_TOLS.closure_rank_rel * scale if tol is None else tol

    rows: list[np.ndarray] = []

    def try_append(v) -> bool:
        r = v.copy()
        for u in rows:
            r -= np.dot(u, r) * u
        # second projection pass keeps the set orthonormal to working precision
        for u in rows:
            r -= np.dot(u, r) * u
        norm = float(np.linalg.norm(r))
        if norm > threshold:
            rows.append(r / norm)
            return True
        return False

    for v in vecs:
        try_append(v)
        if len(rows) == n:
            break

    generations = 0
    frontier = 0  # pairs (i, j) with j < frontier were already processed
    while len(rows) < n:
        generations += 1
        count = len(rows)
        added = False
        for j in range(frontier, count):
            for i in range(j + 1):
                if try_append(star(rows[i], rows[j], table)):
                    added = True
            if len(rows) == n:
                break
        frontier = count
        if not added:
            break

    return StarClosure(
        dim=table.dim,
        spanning_set=np.array(rows),
        rank=len(rows),
        generations=generations,
    )
