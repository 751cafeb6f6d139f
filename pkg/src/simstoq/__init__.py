"""simstoq: simultaneous stoquasticity analysis for sets of Hamiltonians.

Given Hermitian matrices H_1..H_m, the package decides what it can about
the existence of one unitary U making every U H_j U^dag stoquastic (all
off-diagonal entries real and non-positive):

* trace-word and Bloch-vector invariants of the set,
* no-go certificates (paired commutator spectra, star-closure rank),
* a multi-start numerical search over SU(d) for a curing unitary.

See the README for the library tour and the ``simstoq`` command line.
"""

__version__ = "0.1.0"

from .bloch import (
    StarClosure,
    from_bloch,
    pair_invariant,
    star,
    star_closure,
    to_bloch,
    traceless_part,
    triple_invariant,
)
from .certificates import (
    AnalysisConfig,
    Certificate,
    CheckResult,
    Verdict,
    analyze,
    diag_nogo_check,
    is_stoquastic,
    paired_eigenvalue_check,
    span_nogo_check,
)
from .config import DEFAULT_TOLS, Tolerances
from .curing import (
    CuringConfig,
    CuringResult,
    cure_search,
    plant_instance,
    random_stoquastic_set,
    stoq_penalty,
)
from .invariants import (
    BlockEncoding,
    WordLengthBound,
    block_encoding,
    enumerate_words,
    invariant_residual,
    max_word_length,
    pair_similarity_bloch,
    pair_similarity_trace,
    word_trace,
)
from .linalg import (
    ComplexMatrix,
    ConvergenceError,
    EigenSystem,
    HermitianMatrix,
    UnitaryMatrix,
    commutator_i,
    conjugate,
    hermitian_eigensystem,
    random_traceless_hermitian,
    unitary_from_generator,
)
from .su_basis import (
    GellMannBasis,
    IndexMap,
    StructureConstantTable,
    build_basis,
    index_maps,
    structure_constants_analytic,
    structure_constants_trace,
)

__all__ = [
    "AnalysisConfig",
    "BlockEncoding",
    "Certificate",
    "CheckResult",
    "ComplexMatrix",
    "ConvergenceError",
    "CuringConfig",
    "CuringResult",
    "DEFAULT_TOLS",
    "EigenSystem",
    "GellMannBasis",
    "HermitianMatrix",
    "IndexMap",
    "StarClosure",
    "StructureConstantTable",
    "Tolerances",
    "UnitaryMatrix",
    "Verdict",
    "WordLengthBound",
    "analyze",
    "block_encoding",
    "build_basis",
    "commutator_i",
    "conjugate",
    "cure_search",
    "diag_nogo_check",
    "enumerate_words",
    "from_bloch",
    "hermitian_eigensystem",
    "index_maps",
    "invariant_residual",
    "is_stoquastic",
    "max_word_length",
    "pair_invariant",
    "pair_similarity_bloch",
    "pair_similarity_trace",
    "paired_eigenvalue_check",
    "plant_instance",
    "random_stoquastic_set",
    "random_traceless_hermitian",
    "span_nogo_check",
    "star",
    "star_closure",
    "stoq_penalty",
    "structure_constants_analytic",
    "structure_constants_trace",
    "to_bloch",
    "traceless_part",
    "triple_invariant",
    "unitary_from_generator",
    "word_trace",
]
