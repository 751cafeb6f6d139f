"""Command-line front end.

Commands: ``basis``, ``analyze``, ``cure``, ``invariants``, ``random``.
The process exit code of ``analyze``/``cure`` encodes the verdict so shell
pipelines can branch on it: 0 = StoquasticBasisFound,
1 = NotStoquasticizable, 2 = Inconclusive; 3 flags usage or input errors
and 4 internal failures.  Reports are deterministic functions of
(input, flags, seed); wall-clock timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import __version__
from .bloch import traceless_part
from .certificates import AnalysisConfig, Verdict, analyze
from .curing import CuringConfig, cure_search, plant_instance, random_stoquastic_set
from .fileio import (
    HamiltonianSet,
    SetFileError,
    dumps_canonical,
    file_digest,
    load_set,
    matrix_payload,
    save_set,
    write_canonical,
)
from .invariants import enumerate_words, max_word_length, word_trace
from .linalg import HermitianMatrix, random_traceless_hermitian
from .su_basis import (
    build_basis,
    max_symmetric_difference,
    structure_constants_analytic,
    structure_constants_trace,
)

EXIT_FOUND = 0
EXIT_NOGO = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_INTERNAL = 4

WORD_CAP_GUARD = 12

_VERDICT_EXIT = {
    Verdict.STOQUASTIC_BASIS_FOUND: EXIT_FOUND,
    Verdict.NOT_STOQUASTICIZABLE: EXIT_NOGO,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class UsageError(ValueError):
    pass


def _default_seed() -> int:
    env = os.environ.get("SIMSTOQ_SEED")
    return int(env) if env else 0


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _check_payload(check) -> dict:
    payload = {"name": check.name, "passed": check.passed}
    if check.witness is not None:
        payload["witness"] = check.witness
    return payload


def _curing_payload(result) -> dict:
    return {
        "found": result.found,
        "penalty": result.penalty,
        "restarts_used": result.restarts_used,
        "iterations_total": result.iterations_total,
        "theta": result.theta,
        "unitary": matrix_payload(result.unitary.mat),
        "message": result.message,
    }


def _word_key(w) -> str:
    return ",".join(str(letter) for letter in w)


def _format_complex(z: complex) -> str:
    return f"{z.real:.17g} {z.imag:+.17g}j"


def _invariant_table(S, cap: int) -> dict:
    words = [(i,) for i in range(1, len(S) + 1)] + enumerate_words(len(S), cap)
    return {_word_key(w): _format_complex(word_trace(S, w)) for w in words}


def cmd_basis(args) -> int:
    if not 2 <= args.d <= 16:
        raise UsageError(f"dimension must be in [2, 16], got {args.d}")
    basis = build_basis(args.d)
    analytic = structure_constants_analytic(args.d)
    payload = {
        "format": "simstoq-basis-v1",
        "d": args.d,
        "elements": [matrix_payload(m) for m in basis.stack],
        "symmetric_constants": [
            {"i": i, "j": j, "k": k, "value": v}
            for (i, j, k), v in sorted(analytic.sym.items())
        ],
    }
    status = 0
    if args.check:
        oracle = structure_constants_trace(basis)
        diff = max_symmetric_difference(analytic, oracle)
        counts_match = len(analytic.sym) == len(oracle.sym)
        payload["check"] = {
            "max_difference": diff,
            "analytic_nonzero": len(analytic.sym),
            "oracle_nonzero": len(oracle.sym),
            "oracle_antisymmetric_nonzero": len(oracle.antisym),
            "passed": bool(counts_match and diff <= 1e-12),
        }
        if not payload["check"]["passed"]:
            status = EXIT_INTERNAL
    _emit(dumps_canonical(payload), args.out)
    return status


def _load_input_set(path):
    hset = load_set(path)
    digest = file_digest(path)
    return hset, digest


def _report(hset, digest, path, seed, certificate, word_table, bound) -> dict:
    report = {
        "format": "simstoq-report-v1",
        "tool": {"name": "simstoq", "version": __version__},
        "input": {
            "path": str(path),
            "sha256": digest,
            "d": hset.d,
            "m": hset.m,
        },
        "seed": seed,
        "tolerances": certificate.tolerances,
        "trace_shifts": certificate.trace_shifts,
        "word_length_bound": {
            "c": bound.c,
            "n": bound.n,
            "l_max": bound.l_max,
        },
        "checks": [_check_payload(c) for c in certificate.checks],
        "verdict": certificate.verdict.value,
    }
    if word_table is not None:
        report["word_invariants"] = word_table
    if certificate.curing is not None:
        report["curing"] = _curing_payload(certificate.curing)
    return report


def _resolve_word_cap(args) -> int | None:
    cap = args.word_cap
    if cap is None:
        return None
    if cap < 2:
        raise UsageError("--word-cap must be at least 2")
    if cap > WORD_CAP_GUARD and not args.force:
        raise UsageError(
            f"word cap {cap} exceeds the guard ({WORD_CAP_GUARD}); "
            "word counts grow exponentially, pass --force to proceed"
        )
    return cap


def cmd_analyze(args) -> int:
    hset, digest = _load_input_set(args.input)
    cap = _resolve_word_cap(args)
    config = AnalysisConfig()
    if args.tol is not None:
        config.stoq_tol = args.tol
        config.pairing_tol = args.tol
    config.run_curing = not args.no_cure
    config.curing = CuringConfig(seed=args.seed, restarts=args.restarts)

    t0 = time.perf_counter()
    certificate = analyze(hset.hamiltonians, config)
    word_table = None
    if cap is not None:
        word_table = _invariant_table(hset.hamiltonians, cap)
    bound = max_word_length(hset.m, hset.d)
    report = _report(hset, digest, args.input, args.seed, certificate, word_table, bound)
    _emit(dumps_canonical(report), args.out)
    print(f"analyze: {certificate.verdict.value} in {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return _VERDICT_EXIT[certificate.verdict]


def cmd_cure(args) -> int:
    hset, digest = _load_input_set(args.input)
    curing_config = CuringConfig(seed=args.seed, restarts=args.restarts)
    if args.tol is not None:
        curing_config.success_tol = args.tol

    t0 = time.perf_counter()
    members = [traceless_part(H) for H in hset.hamiltonians]
    basis = build_basis(hset.d)
    result = cure_search(members, curing_config, basis)
    report = {
        "format": "simstoq-report-v1",
        "tool": {"name": "simstoq", "version": __version__},
        "input": {"path": str(args.input), "sha256": digest, "d": hset.d, "m": hset.m},
        "seed": args.seed,
        "curing": _curing_payload(result),
        "transformed": [matrix_payload(H.mat) for H in result.transformed],
        "verdict": (
            Verdict.STOQUASTIC_BASIS_FOUND.value if result.found else Verdict.INCONCLUSIVE.value
        ),
    }
    _emit(dumps_canonical(report), args.out)
    print(
        f"cure: found={result.found} penalty={result.penalty:.3e} "
        f"in {time.perf_counter() - t0:.2f}s",
        file=sys.stderr,
    )
    return EXIT_FOUND if result.found else EXIT_INCONCLUSIVE


def cmd_invariants(args) -> int:
    hset, _ = _load_input_set(args.input)
    cap = args.word_cap if args.word_cap is not None else 6
    if cap < 1:
        raise UsageError("--word-cap must be positive")
    if cap > WORD_CAP_GUARD and not args.force:
        raise UsageError(
            f"word cap {cap} exceeds the guard ({WORD_CAP_GUARD}); pass --force to proceed"
        )
    table = _invariant_table(hset.hamiltonians, cap)
    lines = [f"{key}\t{value}" for key, value in table.items()]
    _emit("\n".join(lines), args.out)
    return 0


def cmd_random(args) -> int:
    if args.kind not in ("gue", "stoquastic", "planted"):
        raise UsageError(f"unknown kind {args.kind!r}; choose gue, stoquastic or planted")
    if args.d < 2 or args.m < 1:
        raise UsageError("need d >= 2 and m >= 1")
    metadata = {"kind": args.kind, "seed": args.seed}
    if args.kind == "gue":
        members = [random_traceless_hermitian(args.d, [args.seed, i]) for i in range(args.m)]
    elif args.kind == "stoquastic":
        members = random_stoquastic_set(args.d, args.m, args.seed)
    else:
        members, theta_star = plant_instance(args.d, args.m, args.seed)
        metadata["theta_star"] = theta_star.tolist()
    hset = HamiltonianSet(d=args.d, hamiltonians=members, metadata=metadata)
    save_set(args.out, hset)
    print(f"wrote {args.kind} set (d={args.d}, m={args.m}) to {args.out}", file=sys.stderr)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="simstoq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="print the su(d) basis and structure constants")
    p.add_argument("d", type=int)
    p.add_argument("--check", action="store_true", help="cross-check the analytic table against the trace oracle")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("analyze", help="run no-go checks and curing on a set file")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--word-cap", type=int, default=None, help="include a word-invariant table up to this length")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-cure", action="store_true")
    p.add_argument("--force", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cure", help="run only the curing search on a set file")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=None, help="success penalty threshold")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cure)

    p = sub.add_parser("invariants", help="print canonical word traces of a set file")
    p.add_argument("input")
    p.add_argument("--word-cap", type=int, default=None)
    p.add_argument("--force", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("random", help="write a random set file")
    p.add_argument("d", type=int)
    p.add_argument("m", type=int)
    p.add_argument("kind", choices=["gue", "stoquastic", "planted"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_random)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "seed") and args.seed is None:
        args.seed = _default_seed()
    try:
        return args.func(args)
    except (UsageError, SetFileError, ValueError) as exc:
        print(f"simstoq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"simstoq: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
