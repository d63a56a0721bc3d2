"""Shifts along index self-maps and derivation identities on pointwise algebras.

The package models the algebra C^n with entrywise product, the shift
operator induced by a self-map of the index set, and every derivation
flavor built from twisted, generalized, and higher product rules.  It
can decide each identity on concrete operators, synthesize and recover
the multiplier decomposition of twisting pairs, compute derivation
spaces as nullspaces of exact linear systems, and verify the structural
facts exhaustively over all maps on small index sets.
"""

from .derivcheck import (
    CheckResult,
    Witness,
    is_derivation,
    is_generalized_derivation,
    is_generalized_jordan_derivation,
    is_generalized_jordan_triple_derivation,
    is_higher_derivation,
    is_jordan_derivation,
    is_jordan_triple_derivation,
    is_psi_derivation,
    is_psi_lambda_derivation,
)
from .errors import (
    DimensionMismatchError,
    GenshiftError,
    NotADerivationError,
    ParseError,
    SemanticError,
)
from .seqalg import (
    P_INF,
    P_ONE,
    P_TWO,
    TOL,
    PExponent,
    SeqVector,
    add,
    basis_vector,
    coord,
    indicator,
    ones,
    pnorm,
    pointwise_mul,
    scale,
    vec,
    zeros,
)
from .shiftop import (
    FiberReport,
    IndexMap,
    LinOp,
    all_index_maps,
    apply_op,
    apply_shift,
    compose_maps,
    fibers,
    identity_op,
    ops_close,
    random_index_map,
    shift_operator_norm,
    sigma_op,
    to_matrix,
    zero_op,
)
from .structure import (
    Classification,
    ConstraintSystem,
    EntryWitness,
    SolveReport,
    classify_psi_lambda,
    generalized_derivation_feasible,
    higher_derivation_tail_space,
    recover_r,
    synthesize_pair,
    twisted_constraints,
    twisted_derivation_space,
)
from .verify import PropertyResult, SuiteReport, run_suite, suite_maps

__version__ = "0.1.0"
