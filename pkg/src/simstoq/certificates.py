"""Decision-side checks and verdict aggregation.

A set of Hamiltonians is *simultaneously stoquasticizable* when one
unitary conjugation makes every member stoquastic (all off-diagonal
entries real and non-positive).  Two necessary conditions are checked:

* paired spectrum: for every pair the eigenvalues of ``i [H_i, H_j]`` must
  be symmetric about zero, because the commutator of real matrices is
  skew-symmetric;
* star-closure rank: the closure of the members' Bloch vectors under the
  star product must fit inside the stoquastic-compatible subspace, whose
  dimension is ``(d^2 + d - 2) / 2``.

A failed necessary condition certifies NotStoquasticizable.  Otherwise a
numerical curing search may produce StoquasticBasisFound; anything else is
honestly Inconclusive (the underlying feasibility problem is a polynomial
system; no completeness is claimed).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .config import DEFAULT_TOLS
from . import curing as curing_mod
from .bloch import star_closure, to_bloch, traceless_part
from .linalg import HermitianMatrix, UnitaryMatrix, commutator_i, hermitian_eigensystem
from .su_basis import GellMannBasis, StructureConstantTable, build_basis, structure_constants_analytic

log = logging.getLogger("simstoq")


class Verdict(str, Enum):
    NOT_STOQUASTICIZABLE = "NotStoquasticizable"
    INCONCLUSIVE = "Inconclusive"
    STOQUASTIC_BASIS_FOUND = "StoquasticBasisFound"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one certificate check; failures always carry a witness."""

    name: str
    passed: bool
    witness: dict | None = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failed check must carry a witness")


@dataclass(frozen=True)
class Certificate:
    """Aggregated verdict with per-check results and the curing outcome."""

    verdict: Verdict
    checks: list[CheckResult]
    curing: "curing_mod.CuringResult | None"
    tolerances: dict
    trace_shifts: list[float] = field(default_factory=list)


def is_stoquastic(H: HermitianMatrix, tol: float | None = None) -> bool:
    """True when all off-diagonal entries have Re <= tol and |Im| <= tol."""
    tol = DEFAULT_TOLS.stoquastic if tol is None else tol
    off = ~np.eye(H.dim, dtype=bool)
    entries = H.mat[off]
    if entries.size == 0:
        return True
    return bool(entries.real.max() <= tol and np.abs(entries.imag).max() <= tol)


def paired_eigenvalue_check(S, tol: float | None = None) -> CheckResult:
    """Spectrum of ``i [H_i, H_j]`` must equal its own negation, per pair.

    Sorted eigenvalues are matched head against tail within
    ``tol * max |eigenvalue|``; a vanishing commutator passes trivially.
    The witness names the first failing pair and its spectrum.
    """
    tol = DEFAULT_TOLS.pairing if tol is None else tol
    if len(S) < 2:
        raise ValueError("need at least two Hamiltonians")
    m = len(S)
    for i in range(m):
        for j in range(i + 1, m):
            comm = commutator_i(S[i], S[j])
            w = hermitian_eigensystem(comm).eigenvalues
            scale = float(np.max(np.abs(w)))
            if scale == 0.0:
                continue
            mismatch = float(np.max(np.abs(w + w[::-1])))
            if mismatch > tol * scale:
                return CheckResult(
                    name="paired_eigenvalues",
                    passed=False,
                    witness={
                        "pair": (i + 1, j + 1),
                        "spectrum": w.tolist(),
                        "mismatch": mismatch,
                        "tolerance": tol * scale,
                    },
                )
    return CheckResult(name="paired_eigenvalues", passed=True)


def _closure_rank(S, basis, table, tol):
    vectors = [to_bloch(H, basis) for H in S]
    return star_closure(vectors, table, tol=tol)


def span_nogo_check(
    S,
    basis: GellMannBasis,
    table: StructureConstantTable,
    tol: float | None = None,
) -> CheckResult:
    """Star-closure rank against the stoquastic-subspace bound.

    The necessary bound is the half-integer ``(d^2 + d - 1) / 2``; since
    ranks are integers the comparison used is
    ``rank <= (d^2 + d - 2) / 2``, the dimension of the subspace spanned by
    the symmetric and diagonal sectors.  Both numbers appear in the
    witness.
    """
    d = basis.dim
    closure = _closure_rank(S, basis, table, tol)
    bound_half = (d * d + d - 1) / 2.0
    bound_int = (d * d + d - 2) // 2
    witness = {
        "rank": closure.rank,
        "bound": bound_int,
        "half_integer_bound": bound_half,
        "generations": closure.generations,
    }
    return CheckResult(name="span_nogo", passed=closure.rank <= bound_int, witness=witness)


def diag_nogo_check(
    S,
    basis: GellMannBasis,
    table: StructureConstantTable,
    tol: float | None = None,
) -> CheckResult:
    """Closure-rank test for simultaneous diagonalizability.

    Passes when the star-closure rank is at most ``d - 1``.  The exact
    commutator criterion (all pairs commute) is evaluated alongside and
    reported in the witness; that oracle is decisive while the rank test is
    only necessary.
    """
    d = basis.dim
    closure = _closure_rank(S, basis, table, tol)
    rank_ok = closure.rank <= d - 1

    comm_tol = DEFAULT_TOLS.pairing if tol is None else tol
    max_comm = 0.0
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            scale = max(
                1.0, float(np.linalg.norm(S[i].mat) * np.linalg.norm(S[j].mat))
            )
            comm = S[i].mat @ S[j].mat - S[j].mat @ S[i].mat
            max_comm = max(max_comm, float(np.max(np.abs(comm))) / scale)
    commute_ok = max_comm <= comm_tol

    witness = {
        "rank": closure.rank,
        "bound": d - 1,
        "commutator_oracle_passed": commute_ok,
        "max_relative_commutator": max_comm,
    }
    return CheckResult(name="diag_nogo", passed=rank_ok, witness=witness)


@dataclass
class AnalysisConfig:
    """Knobs for :func:`analyze`; tolerances default to the package record."""

    stoq_tol: float = DEFAULT_TOLS.stoquastic
    pairing_tol: float = DEFAULT_TOLS.pairing
    closure_tol: float | None = None  # None: relative to the input norms
    run_curing: bool = True
    stop_on_failure: bool = True  # skip curing once a necessary condition fails
    curing: "curing_mod.CuringConfig" = field(default_factory=lambda: curing_mod.CuringConfig())

    def tolerances_snapshot(self) -> dict:
        return {
            "stoquastic": self.stoq_tol,
            "pairing": self.pairing_tol,
            "closure": self.closure_tol,
            "curing_success": self.curing.success_tol,
        }


def analyze(S, config: AnalysisConfig | None = None, basis: GellMannBasis | None = None) -> Certificate:
    """Run the no-go checks and (optionally) the curing search on a set.

    Members are made traceless first; the subtracted traces are logged and
    recorded.  Verdicts: NotStoquasticizable exactly when a necessary
    condition fails, StoquasticBasisFound exactly when a unitary reaching
    the curing penalty threshold is in hand (the identity counts when the
    input is already stoquastic), otherwise Inconclusive.
    """
    config = AnalysisConfig() if config is None else config
    if len(S) == 0:
        raise ValueError("need a non-empty set of Hamiltonians")
    d = S[0].dim
    for H in S:
        if H.dim != d:
            raise ValueError("all Hamiltonians must share one dimension")

    shifts = [H.trace / d for H in S]
    if any(abs(s) > 0 for s in shifts):
        log.info("subtracting traces: %s", shifts)
    S = [traceless_part(H) for H in S]

    basis = build_basis(d) if basis is None else basis
    table = structure_constants_analytic(d)
    checks: list[CheckResult] = []
    tolsnap = config.tolerances_snapshot()

    already = all(is_stoquastic(H, config.stoq_tol) for H in S)
    checks.append(
        CheckResult(
            name="already_stoquastic",
            passed=already,
            witness=None if already else {"reason": "some member has a positive or complex off-diagonal entry"},
        )
    )
    if already:
        result = curing_mod.identity_curing_result(S, basis, config.curing)
        return Certificate(
            verdict=Verdict.STOQUASTIC_BASIS_FOUND,
            checks=checks,
            curing=result,
            tolerances=tolsnap,
            trace_shifts=shifts,
        )

    if len(S) >= 2:
        checks.append(paired_eigenvalue_check(S, tol=config.pairing_tol))
    checks.append(span_nogo_check(S, basis, table, tol=config.closure_tol))

    failed = [c for c in checks if not c.passed and c.name != "already_stoquastic"]
    if failed and config.stop_on_failure:
        return Certificate(
            verdict=Verdict.NOT_STOQUASTICIZABLE,
            checks=checks,
            curing=None,
            tolerances=tolsnap,
            trace_shifts=shifts,
        )

    curing_result = None
    if config.run_curing:
        curing_result = curing_mod.cure_search(S, config.curing, basis)

    if failed:
        verdict = Verdict.NOT_STOQUASTICIZABLE
    elif curing_result is not None and curing_result.found:
        verdict = Verdict.STOQUASTIC_BASIS_FOUND
    else:
        verdict = Verdict.INCONCLUSIVE
    return Certificate(
        verdict=verdict,
        checks=checks,
        curing=curing_result,
        tolerances=tolsnap,
        trace_shifts=shifts,
    )
