"""addunique: certifies that k-additivity on positive triangular numbers
forces a multiplicative function to be the identity."""

from .arith import IntPolynomial, PrimePower, Rational, factorize, gcd, rational_roots
from .engine import (
    BranchOutcome,
    CertificationReport,
    EliminationMismatch,
    PropagationStep,
    SearchExhausted,
    SeedSolution,
    UniquenessFailure,
    coprime_cover,
    directed_certify,
    exclusion_identity,
    generic_certify,
    propagate,
    reduce_identity,
    refute_all_ones,
    seed_solutions,
    solve_seed_system,
)
from .identities import Identity, generate_identities, identity_for
from .multfunc import Conflict, EvalResult, PartialMultFn
from .triangular import (
    GaussViolation,
    LemmaViolation,
    Representation,
    enumerate_k_representations,
    exceptional_set,
    four_positive_decomposition,
    gauss_three_decomposition,
    is_positive_triangular,
    star_decomposition,
    triangular,
)

__version__ = "0.1.0"
