"""Trace-word invariants of matrix sets under simultaneous conjugation.

A word is a tuple of 1-based indices into a matrix set; its trace is
invariant under conjugating every set member by one unitary, and two
Hermitian sets are simultaneously unitarily similar exactly when all word
traces agree.  Checking words up to a finite length suffices; the bound
depends on the set size and dimension through a block encoding that packs
the whole set into a single strictly upper triangular matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .bloch import star
from .linalg import ComplexMatrix, HermitianMatrix
from .su_basis import StructureConstantTable

Word = tuple[int, ...]


def word_trace(S, w: Word, tols: Tolerances = DEFAULT_TOLS) -> complex:
    """Trace of the matrix product ``S[w_1 - 1] S[w_2 - 1] ...``.

    Accepts any sequence of :class:`ComplexMatrix`.  As a runtime sanity
    check the trace is recomputed for the word rotated by one position;
    cyclicity of the trace makes the two values agree up to rounding.
    """
    if not w:
        raise ValueError("words must be non-empty")
    m = len(S)
    for letter in w:
        if not 1 <= letter <= m:
            raise ValueError(f"letter {letter} outside the set range [1, {m}]")
    d = S[0].dim
    for M in S:
        if M.dim != d:
            raise ValueError("set members must share one dimension")

    mats = [S[letter - 1].mat for letter in w]
    prod = mats[0]
    for M in mats[1:]:
        prod = prod @ M
    value = complex(np.trace(prod))

    if len(w) > 1:
        rotated = mats[1]
        for M in mats[2:] + [mats[0]]:
            rotated = rotated @ M
        alt = complex(np.trace(rotated))
        if abs(value - alt) > tols.word_cyclic * max(1.0, abs(value)):
            raise RuntimeError(
               f"cyclic trace check failed for word {w}: {value} vs {alt}"
            )
    return value


def _min_rotation(w: Word) -> Word:
    return min(w[i:] + w[:i] for i in range(len(w)))


def enumerate_words(m: int, length_cap: int) -> list[Word]:
    """Canonical words of lengths 2..length_cap over an m-letter alphabet.

    One representative per cyclic-equivalence class, chosen as the
    lexicographically minimal rotation; ordered by length then
    lexicographically.  Grows like ``m ** length``, so cap with care.
    """
    if m < 1 or length_cap < 1:
        raise ValueError("need m >= 1 and length_cap >= 1")
    words: list[Word] = []
    for length in range(2, length_cap + 1):
        for w in itertools.product(range(1, m + 1), repeat=length):
            if w == _min_rotation(w):
                words.append(w)
    return words


@dataclass(frozen=True)
class WordLengthBound:
    """Sufficient word-length cap for deciding simultaneous similarity.

    ``c`` is the smallest block count with ``(c^2 - 3c + 2)/2 >= m`` slots,
    ``n = c d`` the encoded size, and ``l_max`` the smaller of the
    quadratic bound ``ceil((n^2 + 2)/3)`` and the
    ``n sqrt(2 n^2/(n - 1) + 1/4) + n/2 - 2`` bound, floored to an integer.
    """

    m: int
    d: int
    c: int
    n: int
    l_max: int


def max_word_length(m: int, d: int) -> WordLengthBound:
    """Evaluate the word-length bound for a set of m matrices of size d."""
    if m < 1 or d < 2:
        raise ValueError("need m >= 1 and d >= 2")
    c = 3
    while (c * c - 3 * c + 2) // 2 < m:
        c += 1
    n = c * d
    paz = (n * n + 2 + 2) // 3  # exact ceil((n^2 + 2) / 3)
    pappacena = int(math.floor(n * math.sqrt(2.0 * n * n / (n - 1) + 0.25) + n / 2.0 - 2.0))
    return WordLengthBound(m=m, d=d, c=c, n=n, l_max=min(paz, pappacena))


@dataclass(frozen=True)
class BlockEncoding:
    """A matrix set packed into one strictly upper triangular block matrix.

    Superdiagonal blocks are identities; the remaining strict-upper blocks,
    scanned row-major, hold the set members in order, with unused blocks
    zero.  Word traces over the encoding and its adjoint decide the
    simultaneous similarity of the underlying sets.
    """

    c: int
    d: int
    matrix: ComplexMatrix


def block_encoding(S, c: int) -> BlockEncoding:
    """Encode the set into ``c`` blocks of size ``d`` (see BlockEncoding)."""
    m = len(S)
    if m < 1:
        raise ValueError("need a non-empty set")
    capacity = (c * c - 3 * c + 2) // 2
    if capacity < m:
        needed = 3
        while (needed * needed - 3 * needed + 2) // 2 < m:
            needed += 1
        raise ValueError(
            f"{c} blocks hold only {capacity} matrices; {m} need at least c={needed}"
        )
    d = S[0].dim
    big = np.zeros((c * d, c * d), dtype=np.complex128)
    eye = np.eye(d)
    for i in range(c - 1):
        big[i * d : (i + 1) * d, (i + 1) * d : (i + 2) * d] = eye
    slot = 0
    for i in range(c):
        for j in range(i + 2, c):
            if slot < m:
                big[i * d : (i + 1) * d, j * d : (j + 1) * d] = S[slot].mat
                slot += 1
    return BlockEncoding(c=c, d=d, matrix=ComplexMatrix(big))


def pair_similarity_trace(
    H1: HermitianMatrix, H2: HermitianMatrix, tol: float | None = None
) -> bool:
    """Whether two Hermitian matrices are unitarily similar, via power traces.

    Compares ``Tr[H^k]`` for k in 1..d; for Hermitian matrices equality of
    these d power sums pins the spectrum.  The comparison tolerance scales
    as ``tol * d * max(1, |H|^k)`` with the Frobenius norm.
    """
    tol = DEFAULT_TOLS.pair_similarity if tol is None else tol
    if H1.dim != H2.dim:
        raise ValueError(f"dimension mismatch: {H1.dim} vs {H2.dim}")
    d = H1.dim
    norm = max(float(np.linalg.norm(H1.mat)), float(np.linalg.norm(H2.mat)))
    p1, p2 = np.eye(d, dtype=np.complex128), np.eye(d, dtype=np.complex128)
    for k in range(1, d + 1):
        p1 = p1 @ H1.mat
        p2 = p2 @ H2.mat
        diff = abs(np.trace(p1).real - np.trace(p2).real)
        if diff > tol * d * max(1.0, norm**k):
            return False
    return True


def pair_similarity_bloch(
    a: np.ndarray,
    b: np.ndarray,
    table: StructureConstantTable,
    tol: float | None = None,
) -> bool:
    """Unitary similarity of two traceless matrices from their Bloch vectors.

    Compares the d - 1 numbers ``a^{*k} . a`` (iterated left-to-right star
    powers dotted into the vector) against those of ``b``; these carry the
    same information as the power traces of the corresponding matrices.
    """
    tol = DEFAULT_TOLS.pair_similarity if tol is None else tol
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = table._star_size
    if a.shape != (n,) or b.shape != (n,):
        raise ValueError(f"expected vectors of length {n}, got {a.shape}, {b.shape}")
    d = table.dim
    norm = max(float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    pa, pb = a, b
    for k in range(1, d):
        diff = abs(float(np.dot(pa, a)) - float(np.dot(pb, b)))
        if diff > tol * d * max(1.0, norm ** (k + 1)):
            return False
        if k < d - 1:
            pa = star(pa, a, table)
            pb = star(pb, b, table)
    return True


def invariant_residual(S, S_candidate, length_cap: int) -> np.ndarray:
    """Residual vector of the simultaneous-stoquasticity constraint system.

    Concatenates (i) ``|Tr w(S) - Tr w(S')|`` over canonical words of
    lengths 2..length_cap, (ii) hinge values ``max(0, Re H'_jk)`` and (iii)
    ``|Im H'_jk|`` over the upper off-diagonal entries of every candidate
    member.  The vector is all zero exactly when the candidate satisfies the
    constraint system at this word cap.
    """
    if len(S) != len(S_candidate):
        raise ValueError("sets must have equal size")
    if length_cap < 2:
        raise ValueError("length_cap must be at least 2")
    d = S[0].dim
    for M in list(S) + list(S_candidate):
        if M.dim != d:
            raise ValueError("all matrices must share one dimension")

    parts = [
        abs(word_trace(S, w) - word_trace(S_candidate, w))
        for w in enumerate_words(len(S), length_cap)
    ]
    iu = np.triu_indices(d, k=1)
    for M in S_candidate:
        off = M.mat[iu]
        parts.extend(np.maximum(0.0, off.real))
        parts.extend(np.abs(off.imag))
    return np.array(parts, dtype=np.float64)
