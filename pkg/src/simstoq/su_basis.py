"""Generalized Gell-Mann basis of su(d) and its structure constants.

The basis splits into three sectors: symmetric (X), skew-symmetric (Y) and
diagonal (D) matrices.  Linear indices are 1-based and interleave the
sectors as

    X[j,k] = k^2 + 2(j-k) - 1,   Y[j,k] = k^2 + 2(j-k),   D[j] = j(j+2)

for 1 <= j < k <= d and 1 <= j <= d-1.  Element ``i`` of the basis is
stored at array position ``i - 1``; all other modules address basis
elements only through :class:`IndexMap`.

Two independent constructions of the totally symmetric constants d_ijk are
provided: closed-form per-sector expressions and a dense trace scan
``Tr(L_i L_j L_k)``.  The trace scan also yields the totally antisymmetric
constants f_ijk, which have no closed-form table here.
"""

from __future__ import annotations

import math

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .linalg import HermitianMatrix


class ConsistencyError(RuntimeError):
    """Internal cross-check of a constructed table failed."""


class IndexMap:
    """Bijection between linear indices 1..d^2-1 and sector coordinates."""

    def __init__(self, d: int):
        if d < 2:
            raise ValueError(f"dimension must be at least 2, got {d}")
        self.dim = d
        self.size = d * d - 1

    def x(self, j: int, k: int) -> int:
        self._check_pair(j, k)
        return k * k + 2 * (j - k) - 1

    def y(self, j: int, k: int) -> int:
        self._check_pair(j, k)
        return k * k + 2 * (j - k)

    def diag(self, j: int) -> int:
        if not 1 <= j <= self.dim - 1:
            raise ValueError(f"diagonal coordinate must be in [1, {self.dim - 1}], got {j}")
        return j * (j + 2)

    def sector(self, i: int) -> tuple[str, ...]:
        """Return ('x', j, k), ('y', j, k) or ('d', j) for a linear index."""
        if not 1 <= i <= self.size:
            raise ValueError(f"linear index must be in [1, {self.size}], got {i}")
        root = math.isqrt(i + 1)
        if root * root == i + 1:
            return ("d", root - 1)
        k = math.isqrt(i) + 1
        offset = i - (k - 1) ** 2
        j = offset // 2 + 1
        return ("x", j, k) if offset % 2 == 0 else ("y", j, k)

    @property
    def x_indices(self) -> list[int]:
        return [self.x(j, k) for k in range(2, self.dim + 1) for j in range(1, k)]

    @property
    def y_indices(self) -> list[int]:
        return [self.y(j, k) for k in range(2, self.dim + 1) for j in range(1, k)]

    @property
    def d_indices(self) -> list[int]:
        return [self.diag(j) for j in range(1, self.dim)]

    def _check_pair(self, j, k):
        if not 1 <= j < k <= self.dim:
            raise ValueError(f"need 1 <= j < k <= {self.dim}, got j={j}, k={k}")


def index_maps(d: int) -> IndexMap:
    """Sector index maps for su(d)."""
    return IndexMap(d)


def _element(imap: IndexMap, i: int) -> np.ndarray:
    d = imap.dim
    mat = np.zeros((d, d), dtype=np.complex128)
    sector = imap.sector(i)
    if sector[0] == "x":
        _, j, k = sector
        mat[j - 1, k - 1] = 1.0
        mat[k - 1, j - 1] = 1.0
    elif sector[0] == "y":
        _, j, k = sector
        mat[j - 1, k - 1] = -1.0j
        mat[k - 1, j - 1] = 1.0j
    else:
        _, j = sector
        scale = math.sqrt(2.0 / (j * (j + 1)))
        for n in range(j):
            mat[n, n] = scale
        mat[j, j] = -j * scale
    return mat


class GellMannBasis:
    """Ordered orthogonal basis of traceless Hermitian d x d matrices.

    ``elements[i - 1]`` is the basis element with linear index ``i``;
    ``stack`` holds the same matrices as a read-only (d^2-1, d, d) array.
    Construction verifies tracelessness and ``Tr(L_i L_j) = 2 delta_ij``.
    """

    def __init__(self, d: int, tols: Tolerances = DEFAULT_TOLS):
        self.dim = d
        self.index_map = index_maps(d)
        self.size = self.index_map.size
        stack = np.stack([_element(self.index_map, i) for i in range(1, self.size + 1)])
        stack.setflags(write=False)
        self.stack = stack
        self.elements = [HermitianMatrix(m) for m in stack]

        traces = np.abs(np.einsum("kii->k", stack))
        if traces.max() > tols.basis_traceless:
            raise ConsistencyError(f"basis element trace {traces.max():.3e} too large")
        gram = np.einsum("iab,jba->ij", stack, stack).real
        if np.max(np.abs(gram - 2.0 * np.eye(self.size))) > tols.basis_orthonormal:
            raise ConsistencyError("basis orthonormality check failed")

    def __repr__(self):
        return f"GellMannBasis(dim={self.dim}, size={self.size})"


def build_basis(d: int, tols: Tolerances = DEFAULT_TOLS) -> GellMannBasis:
    """Construct the generalized Gell-Mann basis for dimension ``d``."""
    return GellMannBasis(d, tols=tols)


def _perm_parity(items: tuple[int, int, int]) -> tuple[tuple[int, int, int], int]:
    """Sort a triple, returning (sorted triple, parity sign of the sort)."""
    a, b, c = items
    sign = 1
    if a > b:
        a, b = b, a
        sign = -sign
    if b > c:
        b, c = c, b
        sign = -sign
    if a > b:
        a, b = b, a
        sign = -sign
    return (a, b, c), sign


class StructureConstantTable:
    """Sparse symmetric d_ijk and antisymmetric f_ijk tables for su(d).

    ``sym`` maps each sorted triple (i <= j <= k, 1-based linear indices) to
    its d_ijk value; all absent triples are zero.  ``antisym`` maps strictly
    ascending triples (i < j < k) to f_ijk for that ordering; permutations
    pick up the permutation sign.  ``antisym`` is ``None`` for tables built
    analytically, which provide only the symmetric part.
    """

    def __init__(self, dim: int, sym: dict, antisym: dict | None):
        self.dim = dim
        self.sym = sym
        self.antisym = antisym
        size = dim * dim - 1
        # expanded coordinate form of the symmetric table used by the star
        # product: output component K receives V * (a_P b_Q + a_Q b_P) for
        # P < Q and V * a_P b_P for P == Q (0-based positions)
        pp, qq, kk, vv = [], [], [], []
        for (i, j, k), val in sorted(sym.items()):
            i0, j0, k0 = i - 1, j - 1, k - 1
            if i == j == k:
                slots = [(i0, i0, i0)]
            elif i == j:
                slots = [(i0, i0, k0), (i0, k0, i0)]
            elif j == k:
                slots = [(j0, j0, i0), (i0, j0, j0)]
            else:
                slots = [(i0, j0, k0), (i0, k0, j0), (j0, k0, i0)]
            for p, q, out in slots:
                pp.append(p)
                qq.append(q)
                kk.append(out)
                vv.append(val)
        self._star_p = np.array(pp, dtype=np.intp)
        self._star_q = np.array(qq, dtype=np.intp)
        self._star_k = np.array(kk, dtype=np.intp)
        self._star_v = np.array(vv, dtype=np.float64)
        self._star_size = size

        if antisym is None:
            self._f_i = self._f_j = self._f_k = self._f_v = None
        else:
            triples = sorted(antisym.items())
            self._f_i = np.array([t[0][0] - 1 for t in triples], dtype=np.intp)
            self._f_j = np.array([t[0][1] - 1 for t in triples], dtype=np.intp)
            self._f_k = np.array([t[0][2] - 1 for t in triples], dtype=np.intp)
            self._f_v = np.array([t[1] for t in triples], dtype=np.float64)

    @property
    def has_antisym(self) -> bool:
        return self.antisym is not None

    def sym_value(self, i: int, j: int, k: int) -> float:
        key, _ = _perm_parity((i, j, k))
        return self.sym.get(key, 0.0)

    def antisym_value(self, i: int, j: int, k: int) -> float:
        if self.antisym is None:
            raise ValueError("this table carries only the symmetric constants")
        if i == j or j == k or i == k:
            return 0.0
        key, sign = _perm_parity((i, j, k))
        return sign * self.antisym.get(key, 0.0)

    def __repr__(self):
        nf = "none" if self.antisym is None else len(self.antisym)
        return (
            f"StructureConstantTable(dim={self.dim}, sym={len(self.sym)}, antisym={nf})"
        )


def structure_constants_analytic(d: int) -> StructureConstantTable:
    """Symmetric structure constants from their closed per-sector forms.

    Covers every non-zero family: three-index chains within the X/Y
    sectors, the X/Y-pair couplings to diagonal elements, and the purely
    diagonal entries.  Entries whose closed form evaluates to zero are
    dropped so the table holds exactly the non-zero constants.
    """
    imap = index_maps(d)
    sym: dict[tuple[int, int, int], float] = {}

    def add(i, j, k, value):
        if value == 0.0:
            return
        key, _ = _perm_parity((i, j, k))
        if key in sym:
            raise ConsistencyError(f"duplicate analytic triple {key}")
        sym[key] = value

    # chains over l < j < k: XXX and X(YY) with the X on the two larger
    # indices; the remaining X(YY) placements follow below
    for l in range(1, d + 1):
        for j in range(l + 1, d + 1):
            for k in range(j + 1, d + 1):
                add(imap.x(j, k), imap.x(l, j), imap.x(l, k), 0.5)
                add(imap.x(j, k), imap.y(l, j), imap.y(l, k), 0.5)
    for j in range(1, d + 1):
        for k in range(j + 1, d + 1):
            for l in range(k + 1, d + 1):
                add(imap.x(j, k), imap.y(k, l), imap.y(j, l), 0.5)
    for j in range(1, d + 1):
        for l in range(j + 1, d + 1):
            for k in range(l + 1, d + 1):
                add(imap.x(j, k), imap.y(j, l), imap.y(l, k), -0.5)

    # pair-diagonal couplings, identical for the X and Y partners
    for j in range(1, d + 1):
        for k in range(j + 1, d + 1):
            xjk, yjk = imap.x(j, k), imap.y(j, k)
            if j >= 2:
                val = -math.sqrt((j - 1) / (2.0 * j))
                add(xjk, xjk, imap.diag(j - 1), val)
                add(yjk, yjk, imap.diag(j - 1), val)
            for l in range(j + 1, k):
                val = math.sqrt(1.0 / (2.0 * l * (l - 1)))
                add(xjk, xjk, imap.diag(l - 1), val)
                add(yjk, yjk, imap.diag(l - 1), val)
            val = (2.0 - k) / math.sqrt(2.0 * k * (k - 1))
            add(xjk, xjk, imap.diag(k - 1), val)
            add(yjk, yjk, imap.diag(k - 1), val)
            for l in range(k + 1, d + 1):
                val = math.sqrt(2.0 / (l * (l - 1)))
                add(xjk, xjk, imap.diag(l - 1), val)
                add(yjk, yjk, imap.diag(l - 1), val)

    # purely diagonal entries
    for j in range(3, d + 1):
        for k in range(2, j):
            add(imap.diag(j - 1), imap.diag(k - 1), imap.diag(k - 1), math.sqrt(2.0 / (j * (j - 1))))
    for j in range(2, d + 1):
        add(
            imap.diag(j - 1),
            imap.diag(j - 1),
            imap.diag(j - 1),
            (2.0 - j) * math.sqrt(2.0 / (j * (j - 1))),
        )

    return StructureConstantTable(d, sym, None)


def structure_constants_trace(
    basis: GellMannBasis,
    zero_tol: float | None = None,
    tols: Tolerances = DEFAULT_TOLS,
) -> StructureConstantTable:
    """Both structure-constant tables from the triple-trace oracle.

    Uses ``d_ijk = Re Tr(L_i L_j L_k) / 2`` and
    ``f_ijk = Im Tr(L_i L_j L_k) / 2``; values below ``zero_tol`` are
    dropped as zeros.  During the scan the (j, k) transposition is cross
    checked on every triple: the real part must be symmetric and the
    imaginary part antisymmetric, otherwise a :class:`ConsistencyError` is
    raised.
    """
    zero_tol = tols.table_zero if zero_tol is None else zero_tol
    stack = basis.stack
    n = basis.size
    sym: dict[tuple[int, int, int], float] = {}
    antisym: dict[tuple[int, int, int], float] = {}
    check_tol = tols.table_match

    for i in range(n):
        # T[j - i, k] = Tr(L_i L_j L_k) for all j >= i and all k
        prods = stack[i] @ stack[i:]
        T = np.einsum("jab,kba->jk", prods, stack)
        for j in range(i, n):
            row = T[j - i]
            for k in range(j, n):
                val = row[k]
                # independent evaluation of the (j, k) transposition
                alt = T[k - i, j]
                if abs(val.real - alt.real) / 2.0 > check_tol:
                    raise ConsistencyError(
                        f"symmetric constant not symmetric at {(i + 1, j + 1, k + 1)}"
                    )
                if abs(val.imag + alt.imag) / 2.0 > check_tol:
                    raise ConsistencyError(
                        f"antisymmetric constant not antisymmetric at {(i + 1, j + 1, k + 1)}"
                    )
                dval = val.real / 2.0
                fval = val.imag / 2.0
                if abs(dval) > zero_tol:
                    sym[(i + 1, j + 1, k + 1)] = dval
                if abs(fval) > zero_tol:
                    if i == j or j == k:
                        raise ConsistencyError(
                            f"antisymmetric constant with repeated index at "
                            f"{(i + 1, j + 1, k + 1)}: {fval:.3e}"
                        )
                    antisym[(i + 1, j + 1, k + 1)] = fval

    return StructureConstantTable(basis.dim, sym, antisym)


def max_symmetric_difference(a: StructureConstantTable, b: StructureConstantTable) -> float:
    """Largest entrywise difference between two symmetric tables."""
    keys = set(a.sym) | set(b.sym)
    if not keys:
        return 0.0
    return max(abs(a.sym.get(k, 0.0) - b.sym.get(k, 0.0)) for k in keys)
