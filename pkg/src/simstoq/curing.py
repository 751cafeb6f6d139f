"""Numerical search over SU(d) for a simultaneously stoquasticizing unitary.

The unitary is parametrized as ``U(theta) = exp(i theta . L)`` over the
generalized Gell-Mann basis (d^2 - 1 real parameters, surjective onto
SU(d)).  The objective is a squared-hinge penalty on the transformed set:

    penalty(S') = sum_H sum_{j != k} max(0, Re H'_jk)^2 + (Im H'_jk)^2

which vanishes exactly on simultaneously stoquastic sets.  Minimization is
multi-start gradient descent with central finite differences and a
backtracking line search; the first restart always starts at theta = 0 so
already-stoquastic inputs succeed immediately.  A ``found = False`` result
is NOT a proof of nonexistence and says so in its message.

``plant_instance`` builds yes-instances: random stoquastic sets scrambled
by a known unitary, so a zero-penalty point is guaranteed to exist.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLS
from .linalg import HermitianMatrix, UnitaryMatrix, eigh_batch, unitary_from_generator
from .su_basis import GellMannBasis

log = logging.getLogger("simstoq")

NOT_FOUND_MESSAGE = (
    "no curing unitary found within the restart budget; "
    "this is not a proof that none exists"
)

# Armijo sufficient-decrease coefficient and the smallest step tried before
# a line search is declared stalled
_ARMIJO = 1e-4
_MIN_STEP = 1e-16
# a restart is abandoned when the penalty fails to drop by at least 5%
# over this many iterations (plateaued local minimum)
_STALL_WINDOW = 100
_STALL_FACTOR = 0.95


@dataclass
class CuringConfig:
    """Search budget and thresholds for :func:`cure_search`."""

    restarts: int = 50
    max_iters: int = 2000
    success_tol: float = 1e-10
    fd_step: float = 1e-6
    seed: int = 0
    shrink: float = 0.5
    init_step: float = 0.1

    def __post_init__(self):
        if min(self.restarts, self.max_iters) < 1:
            raise ValueError("restarts and max_iters must be positive")
        if min(self.success_tol, self.fd_step, self.init_step) <= 0:
            raise ValueError("tolerances and steps must be positive")
        if not self.success_tol < 1e-4:
            raise ValueError("success_tol must be below 1e-4")
        if not 0.0 < self.shrink < 1.0:
            raise ValueError("shrink must lie in (0, 1)")


@dataclass(frozen=True)
class CuringResult:
    """Outcome of a curing search.

    ``found`` implies ``penalty < success_tol`` and that every transformed
    member is stoquastic within ``10 * success_tol`` per entry.
    """

    found: bool
    theta: np.ndarray
    unitary: UnitaryMatrix
    transformed: list[HermitianMatrix]
    penalty: float
    restarts_used: int
    iterations_total: int
    message: str = ""


def stoq_penalty(S) -> float:
    """Sum of squared stoquasticity violations over all off-diagonals."""
    total = 0.0
    for H in S:
        mat = H.mat if isinstance(H, HermitianMatrix) else np.asarray(H)
        off = ~np.eye(mat.shape[0], dtype=bool)
        entries = mat[off]
        total += float(np.sum(np.maximum(0.0, entries.real) ** 2))
        total += float(np.sum(entries.imag**2))
    return total


def _penalty_batch(thetas: np.ndarray, mats: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """Penalties of ``{U(theta) H U(theta)^dag}`` for a batch of thetas.

    ``thetas`` is (B, d^2 - 1), ``mats`` the (m, d, d) set, ``stack`` the
    basis stack.  One batched eigendecomposition builds all the unitaries.
    """
    nb = thetas.shape[0]
    d = mats.shape[1]
    gens = np.tensordot(thetas, stack, axes=(1, 0))
    w, V = eigh_batch(gens)
    U = (V * np.exp(1j * w)[:, None, :]) @ V.conj().transpose(0, 2, 1)
    Udag = U.conj().transpose(0, 2, 1)
    off = ~np.eye(d, dtype=bool)
    total = np.zeros(nb)
    for H in mats:
        transformed = U @ H @ Udag
        entries = transformed[:, off]
        total += np.sum(np.maximum(0.0, entries.real) ** 2, axis=1)
        total += np.sum(entries.imag**2, axis=1)
    return total


def _max_violation(thetas: np.ndarray, mats: np.ndarray, stack: np.ndarray) -> float:
    """Worst per-entry stoquasticity violation of the transformed set."""
    gens = np.tensordot(thetas[None, :], stack, axes=(1, 0))
    w, V = eigh_batch(gens)
    U = (V * np.exp(1j * w)[:, None, :]) @ V.conj().transpose(0, 2, 1)
    U = U[0]
    d = mats.shape[1]
    off = ~np.eye(d, dtype=bool)
    worst = 0.0
    for H in mats:
        entries = (U @ H @ U.conj().T)[off]
        worst = max(worst, float(np.max(np.maximum(0.0, entries.real), initial=0.0)))
        worst = max(worst, float(np.max(np.abs(entries.imag), initial=0.0)))
    return worst


def cure_search(S, config: CuringConfig, basis: GellMannBasis) -> CuringResult:
    """Multi-start penalty minimization over SU(d).

    Restart 0 starts at theta = 0 (so already-stoquastic inputs succeed
    immediately); later restarts draw theta uniformly from
    [-pi, pi]^(d^2-1) with per-restart generators derived from the master
    seed.  Each restart runs gradient descent with central finite
    differences (step ``fd_step``) and a backtracking Armijo line search,
    ending on success, a tiny gradient, a stalled line search, a penalty
    plateau, or the iteration cap.  Restarts are independent, so they
    advance in lockstep as one batch; the result is selected
    deterministically (minimum penalty, ties by restart index) and does not
    depend on scheduling.

    Success requires penalty below ``success_tol`` AND every transformed
    member stoquastic within ``10 * success_tol`` per entry; the second
    condition is what certifies the returned basis, since a small penalty
    alone allows per-entry violations up to its square root.
    """
    d = basis.dim
    for H in S:
        if H.dim != d:
            raise ValueError("set dimension does not match the basis")
    mats = np.array([H.mat for H in S])
    stack = basis.stack
    n = basis.size
    entry_tol = 10.0 * config.success_tol
    nres = config.restarts

    thetas = np.zeros((nres, n))
    for r in range(1, nres):
        rng = np.random.default_rng([config.seed, r])
        thetas[r] = rng.uniform(-np.pi, np.pi, n)
    f = _penalty_batch(thetas, mats, stack)
    steps = np.full(nres, config.init_step)
    alive = np.ones(nres, dtype=bool)
    succeeded = np.zeros(nres, dtype=bool)
    iters = np.zeros(nres, dtype=np.int64)
    history: list[np.ndarray] = [f.copy()]

    def update_success():
        for idx in np.nonzero(alive & ~succeeded & (f < config.success_tol))[0]:
            if _max_violation(thetas[idx], mats, stack) <= entry_tol:
                succeeded[idx] = True

    update_success()

    ls_chunks = [config.shrink ** np.arange(lo, lo + 8) for lo in range(0, 40, 8)]
    col = np.arange(n)
    global_iter = 0
    while not succeeded.any() and alive.any() and global_iter < config.max_iters:
        global_iter += 1
        act = np.nonzero(alive)[0]
        base = thetas[act]
        iters[act] += 1

        probes = np.repeat(base[:, None, :], 2 * n, axis=1)
        probes[:, 2 * col, col] += config.fd_step
        probes[:, 2 * col + 1, col] -= config.fd_step
        fp = _penalty_batch(probes.reshape(-1, n), mats, stack).reshape(len(act), 2 * n)
        grad = (fp[:, 0::2] - fp[:, 1::2]) / (2.0 * config.fd_step)
        gnorm2 = np.einsum("an,an->a", grad, grad)
        flat = np.sqrt(gnorm2) < 1e-12
        alive[act[flat]] = False

        pending = ~flat
        for chunk in ls_chunks:
            rows = np.nonzero(pending)[0]
            if len(rows) == 0:
                break
            alphas = steps[act[rows], None] * chunk[None, :]
            cands = base[rows, None, :] - alphas[:, :, None] * grad[rows, None, :]
            fc = _penalty_batch(cands.reshape(-1, n), mats, stack).reshape(len(rows), -1)
            ok = fc <= f[act[rows], None] - _ARMIJO * alphas * gnorm2[rows, None]
            has = ok.any(axis=1)
            first = np.argmax(ok, axis=1)
            sel = rows[has]
            kk = first[has]
            thetas[act[sel]] = cands[has, kk, :]
            f[act[sel]] = fc[has, kk]
            accepted_alpha = alphas[has, kk]
            steps[act[sel]] = np.minimum(config.init_step, accepted_alpha / config.shrink)
            alive[act[sel[accepted_alpha < _MIN_STEP]]] = False
            pending[sel] = False
        # no Armijo step found in any chunk: the line search stalled
        alive[act[pending]] = False

        history.append(f.copy())
        if len(history) > _STALL_WINDOW + 1:
            old = history.pop(0)
            plateau = alive & (f > _STALL_FACTOR * old)
            alive[plateau] = False
        update_success()

    if succeeded.any():
        found = True
        winners = np.nonzero(succeeded)[0]
        best = int(winners[np.argmin(f[winners])])
        restarts_used = best + 1
    else:
        found = False
        best = int(np.argmin(f))
        restarts_used = nres

    best_theta = thetas[best]
    best_f = float(f[best])
    iterations_total = int(iters.sum())
    unitary = unitary_from_generator(best_theta, basis)
    transformed = [
        HermitianMatrix(unitary.mat @ H.mat @ unitary.mat.conj().T) for H in S
    ]
    log.info(
        "curing search: found=%s penalty=%.3e restarts=%d iterations=%d",
        found,
        best_f,
        restarts_used,
        iterations_total,
    )
    return CuringResult(
        found=found,
        theta=best_theta,
        unitary=unitary,
        transformed=transformed,
        penalty=best_f,
        restarts_used=restarts_used,
        iterations_total=iterations_total,
        message="" if found else NOT_FOUND_MESSAGE,
    )


def identity_curing_result(S, basis: GellMannBasis, config: CuringConfig) -> CuringResult:
    """Trivial curing result for an input that is already stoquastic."""
    theta = np.zeros(basis.size)
    unitary = UnitaryMatrix(np.eye(basis.dim))
    return CuringResult(
        found=True,
        theta=theta,
        unitary=unitary,
        transformed=list(S),
        penalty=stoq_penalty(S),
        restarts_used=0,
        iterations_total=0,
    )


def _draw_stoquastic(rng, d: int, m: int) -> list[HermitianMatrix]:
    members = []
    for _ in range(m):
        mat = np.zeros((d, d), dtype=np.complex128)
        for j in range(d):
            for k in range(j + 1, d):
                value = -abs(rng.standard_normal())
                mat[j, k] = value
                mat[k, j] = value
        diag = rng.standard_normal(d)
        diag -= diag.mean()
        mat[np.diag_indices(d)] = diag
        members.append(HermitianMatrix(mat))
    return members


def random_stoquastic_set(d: int, m: int, seed: int) -> list[HermitianMatrix]:
    """Seeded traceless stoquastic matrices: off-diagonals are minus
    absolute Gaussians (real, symmetric), diagonals Gaussian with the trace
    subtracted."""
    if d < 2 or m < 1:
        raise ValueError("need d >= 2 and m >= 1")
    return _draw_stoquastic(np.random.default_rng(seed), d, m)


def plant_instance(
    d: int, m: int, seed: int, basis: GellMannBasis | None = None
) -> tuple[list[HermitianMatrix], np.ndarray]:
    """Yes-instance generator: stoquastic sets scrambled by a known unitary.

    Draws m stoquastic matrices as in :func:`random_stoquastic_set`, then a
    random generator theta_star, and returns the conjugated set together
    with theta_star.  Conjugating back with ``U(theta_star)^dag`` restores
    a set of exactly zero penalty.
    """
    if d < 2 or m < 1:
        raise ValueError("need d >= 2 and m >= 1")
    basis = GellMannBasis(d) if basis is None else basis
    rng = np.random.default_rng(seed)
    members = _draw_stoquastic(rng, d, m)
    theta_star = rng.uniform(-np.pi, np.pi, basis.size)
    V = unitary_from_generator(theta_star, basis)
    planted = [
        HermitianMatrix(V.mat @ H.mat @ V.mat.conj().T) for H in members
    ]
    return planted, theta_star
