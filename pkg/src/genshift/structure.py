"""Multiplier decompositions and derivation spaces as linear-algebra problems.

The constructive facts implemented here:

* a twisted product rule for the shift along ``phi`` forces the twisting
  pair onto the one-parameter family ``psi = r * shift``,
  ``lambda = (1 - r) * shift`` (``synthesize_pair`` / ``recover_r`` /
  ``classify_psi_lambda``);
* the space of operators ``d`` obeying ``d(xy) = d(x)psi(y) + lambda(x)d(y)``
  is the nullspace of a homogeneous linear system in the n^2 entries of
  ``d`` (``twisted_derivation_space``);
* whether the shift admits a generalized (Jordan, Jordan triple)
  product rule is the consistency of an inhomogeneous system
  (``generalized_derivation_feasible``), and the higher-order analogue
  solves one linear system per level (``higher_derivation_tail_space``).

Constraint encoding: the unknown operator is flattened row-major, so the
coefficient of entry ``d[alpha, beta]`` lives at column ``alpha*n + beta``.
Rows are emitted for basis tuples in lexicographic order; for pair
identities the row for pair (beta, gamma) at output coordinate alpha has
index ``(beta*n + gamma)*n + alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, SemanticError
from .seqalg import TOL, SeqVector, max_abs, ones
from .shiftop import IndexMap, LinOp, identity_op, require_same_dimension, sigma_op

__all__ = [
    "ConstraintSystem",
    "SolveReport",
    "EntryWitness",
    "Classification",
    "GENERALIZED_FLAVORS",
    "synthesize_pair",
    "recover_r",
    "classify_psi_lambda",
    "twisted_constraints",
    "twisted_derivation_space",
    "generalized_derivation_feasible",
    "higher_derivation_tail_space",
]

# Rank decisions: a pivot candidate below RANK_TOL times the largest pivot
# seen so far is treated as zero.  Constraint entries are small integers,
# so conditioning is benign.
RANK_TOL = 1e-8

GENERALIZED_FLAVORS = ("plain", "jordan", "jordan_triple")


@dataclass(frozen=True)
class ConstraintSystem:
    """Complex linear system over the entries of an unknown operator."""

    unknown_count: int
    rows: np.ndarray
    rhs: np.ndarray | None = None

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.complex128)
        if rows.ndim != 2 or rows.shape[1] != self.unknown_count:
            raise DimensionMismatchError(
                f"constraint rows must have {self.unknown_count} coefficients, got shape {rows.shape}"
            )
        object.__setattr__(self, "rows", rows)
        if self.rhs is not None:
            rhs = np.asarray(self.rhs, dtype=np.complex128)
            if rhs.shape != (rows.shape[0],):
                raise DimensionMismatchError("right-hand side length must match the number of rows")
            object.__setattr__(self, "rhs", rhs)

    @property
    def homogeneous(self) -> bool:
        return self.rhs is None


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a constraint solve.

    ``dimension`` is the nullspace dimension when it was computed;
    ``feasible`` is set for inhomogeneous solves.  ``basis`` spans the
    homogeneous solution space (orthonormal as flattened vectors) and
    ``solution`` is one particular solution when the system is feasible.
    ``residual`` is the largest constraint violation of anything returned.
    """

    dimension: int | None = None
    feasible: bool | None = None
    basis: tuple[LinOp, ...] = ()
    solution: LinOp | None = None
    residual: float = 0.0


def _rref(rows: np.ndarray, rhs: np.ndarray | None):
    """Gauss-Jordan elimination with partial pivoting.

    Returns the reduced matrix, reduced right-hand side, and the pivot
    column list.  The rank threshold is RANK_TOL times the largest
    absolute pivot encountered.
    """
    a = np.array(rows, dtype=np.complex128)
    b = None if rhs is None else np.array(rhs, dtype=np.complex128)
    m, ncols = a.shape
    pivot_cols: list[int] = []
    row = 0
    largest = 0.0
    for col in range(ncols):
        if row >= m:
            break
        local = row + int(np.argmax(np.abs(a[row:, col])))
        candidate = float(abs(a[local, col]))
        if candidate <= RANK_TOL * largest or candidate == 0.0:
            continue
        largest = max(largest, candidate)
        if local != row:
            a[[row, local]] = a[[local, row]]
            if b is not None:
                b[[row, local]] = b[[local, row]]
        pivot = a[row, col]
        a[row] = a[row] / pivot
        if b is not None:
            b[row] = b[row] / pivot
        factors = a[:, col].copy()
        factors[row] = 0.0
        a -= np.outer(factors, a[row])
        if b is not None:
            b -= factors * b[row]
        pivot_cols.append(col)
        row += 1
    return a, b, pivot_cols


def _nullspace(reduced: np.ndarray, pivot_cols: list[int], unknown_count: int) -> np.ndarray:
    """Orthonormal nullspace basis (columns) from a reduced system."""
    free_cols = [c for c in range(unknown_count) if c not in pivot_cols]
    if not free_cols:
        return np.zeros((unknown_count, 0), dtype=np.complex128)
    basis = np.zeros((unknown_count, len(free_cols)), dtype=np.complex128)
    for j, free in enumerate(free_cols):
        basis[free, j] = 1.0
        for i, piv in enumerate(pivot_cols):
            basis[piv, j] = -reduced[i, free]
    q, _ = np.linalg.qr(basis)
    return q


def solve_constraints(system: ConstraintSystem):
    """Solve the system; returns (feasible, particular, nullspace columns, residual).

    ``particular`` sets all free unknowns to zero.  For a homogeneous
    system the particular solution is the zero vector and feasibility is
    trivially true.
    """
    reduced, reduced_rhs, pivot_cols = _rref(system.rows, system.rhs)
    null = _nullspace(reduced, pivot_cols, system.unknown_count)

    particular = np.zeros(system.unknown_count, dtype=np.complex128)
    if reduced_rhs is not None:
        for i, piv in enumerate(pivot_cols):
            particular[piv] = reduced_rhs[i]

    rhs0 = np.zeros(system.rows.shape[0], dtype=np.complex128) if system.rhs is None else system.rhs
    misfit = float(np.max(np.abs(system.rows @ particular - rhs0))) if system.rows.size else 0.0
    feasible = misfit <= RANK_TOL * (1.0 + max_abs(rhs0)) if system.rows.size else True

    residual = 0.0
    if feasible and system.rhs is not None:
        residual = misfit
    if null.shape[1] and system.rows.size:
        residual = max(residual, float(np.max(np.abs(system.rows @ null))))
    return feasible, particular, null, residual


def _basis_ops(null: np.ndarray, n: int) -> tuple[LinOp, ...]:
    return tuple(LinOp.from_matrix(null[:, j].reshape(n, n)) for j in range(null.shape[1]))


def synthesize_pair(phi: IndexMap, r: SeqVector) -> tuple[LinOp, LinOp]:
    """Twisting pair ``(r * shift, (1 - r) * shift)`` for the shift along phi.

    The shift along phi satisfies the twisted product rule with exactly
    these pairs, one for each multiplier r.
    """
    if len(r) != phi.n:
        raise DimensionMismatchError(f"multiplier length {len(r)} does not match map on {phi.n} points")
    psi = LinOp.multiplier_shift(r, phi)
    complement = SeqVector(ones(phi.n).entries - r.entries)
    lam = LinOp.multiplier_shift(complement, phi)
    return psi, lam


def recover_r(phi: IndexMap, psi: LinOp) -> SeqVector:
    """Multiplier read off a candidate psi: entry a of psi applied to the
    basis vector at phi(a)."""
    if psi.n != phi.n:
        raise DimensionMismatchError(f"operator on C^{psi.n} does not match map on {phi.n} points")
    mat = psi.as_matrix()
    return SeqVector(mat[np.arange(phi.n), np.asarray(phi.image)])


@dataclass(frozen=True)
class EntryWitness:
    """Matrix entry on which a candidate operator deviates from the forced form."""

    operator: str
    row: int
    col: int
    expected: complex
    actual: complex
    deviation: float


@dataclass(frozen=True)
class Classification:
    """Accept(r) when (psi, lambda) is a multiplier pair for the shift, else Reject."""

    accepted: bool
    r: SeqVector | None = None
    witness: EntryWitness | None = None


def classify_psi_lambda(phi: IndexMap, psi: LinOp, lam: LinOp, tol: float = TOL) -> Classification:
    """Decide whether (psi, lambda) equals (r * shift, (1 - r) * shift) for
    the multiplier r read off psi.

    This is a code path independent of the identity check: it compares
    dense matrices entrywise against the forced form.  Acceptance here is
    equivalent to the shift passing the twisted product rule with
    (psi, lambda).
    """
    n = require_same_dimension(psi, lam)
    if phi.n != n:
        raise DimensionMismatchError(f"map on {phi.n} points does not match operators on C^{n}")
    r = recover_r(phi, psi)
    expected_psi, expected_lam = synthesize_pair(phi, r)
    pairs = (("psi", expected_psi.as_matrix(), psi.as_matrix()),
             ("lambda", expected_lam.as_matrix(), lam.as_matrix()))

    scale = max(max_abs(m) for _, exp, act in pairs for m in (exp, act))
    limit = tol * (1.0 + scale)
    for name, expected, actual in pairs:
        dev = np.abs(expected - actual)
        failing = np.argwhere(dev > limit)
        if failing.size:
            i, j = (int(v) for v in failing[0])
            witness = EntryWitness(
                operator=name,
                row=i,
                col=j,
                expected=complex(expected[i, j]),
                actual=complex(actual[i, j]),
                deviation=float(dev[i, j]),
            )
            return Classification(accepted=False, witness=witness)
    return Classification(accepted=True, r=r)


def twisted_constraints(psi: LinOp, lam: LinOp) -> ConstraintSystem:
    """Homogeneous system whose nullspace is the space of operators d with
    ``d(xy) = d(x)psi(y) + lambda(x)d(y)`` on all basis pairs.

    Basis pairs with distinct indices have product zero but still emit
    rows: they constrain d through the psi and lambda terms.  For the pair
    (beta, beta) at coordinate alpha the row reduces to a single
    coefficient ``1 - psi[alpha, beta] - lambda[alpha, beta]`` on
    d[alpha, beta].
    """
    n = require_same_dimension(psi, lam)
    p = psi.as_matrix()
    lm = lam.as_matrix()
    unknowns = n * n
    rows = np.zeros((n**3, unknowns), dtype=np.complex128)
    i = 0
    for beta in range(n):
        for gamma in range(n):
            for alpha in range(n):
                row = rows[i]
                row[alpha * n + beta] += (1.0 if beta == gamma else 0.0) - p[alpha, gamma]
                row[alpha * n + gamma] += -lm[alpha, beta]
                i += 1
    return ConstraintSystem(unknowns, rows)


def twisted_derivation_space(psi: LinOp, lam: LinOp) -> SolveReport:
    """Nullspace of the twisted product rule: every operator d satisfying
    ``d(xy) = d(x)psi(y) + lambda(x)d(y)``."""
    n = require_same_dimension(psi, lam)
    system = twisted_constraints(psi, lam)
    _, _, null, residual = solve_constraints(system)
    return SolveReport(
        dimension=int(null.shape[1]),
        basis=_basis_ops(null, n),
        residual=residual,
    )


def _jordan_triple_rows(n: int) -> np.ndarray:
    """Homogeneous rows making the unknown a Jordan triple derivation
    (polarized in the repeated argument, over basis triples)."""
    rows = np.zeros((n**4, n * n), dtype=np.complex128)
    i = 0
    for beta in range(n):
        for gamma in range(n):
            for delta in range(n):
                for alpha in range(n):
                    row = rows[i]
                    row[alpha * n + beta] += 2.0 * (
                        (1.0 if beta == gamma == delta else 0.0)
                        - (1.0 if alpha == gamma == delta else 0.0)
                    )
                    row[alpha * n + gamma] += -2.0 * (1.0 if alpha == beta == delta else 0.0)
                    row[alpha * n + delta] += -2.0 * (1.0 if alpha == beta == gamma else 0.0)
                    i += 1
    return rows


def generalized_derivation_feasible(phi: IndexMap, flavor: str) -> SolveReport:
    """Does some auxiliary operator d make the shift along phi satisfy the
    generalized product rule of the given flavor?

    flavors: "plain" requires ``S(xy) = S(x)y + xd(y)`` with d a
    derivation; "jordan" the squared form with d a derivation;
    "jordan_triple" the x.y.x form with d a Jordan triple derivation.
    All conditions are linear in d once the shift is fixed, so existence
    is the consistency of one stacked system.
    """
    if flavor not in GENERALIZED_FLAVORS:
        raise SemanticError(f"unknown flavor {flavor!r}; expected one of {GENERALIZED_FLAVORS}")
    n = phi.n
    s = sigma_op(phi).as_matrix().real
    unknowns = n * n

    if flavor == "jordan_triple":
        side_rows = _jordan_triple_rows(n)
    else:
        ident = identity_op(n)
        side_rows = twisted_constraints(ident, ident).rows

    if flavor == "plain":
        flavor_rows = np.zeros((n**3, unknowns), dtype=np.complex128)
        flavor_rhs = np.zeros(n**3, dtype=np.complex128)
        i = 0
        for beta in range(n):
            for gamma in range(n):
                for alpha in range(n):
                    flavor_rows[i, alpha * n + gamma] += 1.0 if alpha == beta else 0.0
                    flavor_rhs[i] = (1.0 if beta == gamma else 0.0) * s[alpha, beta] - s[alpha, beta] * (
                        1.0 if alpha == gamma else 0.0
                    )
                    i += 1
    elif flavor == "jordan":
        flavor_rows = np.zeros((n**3, unknowns), dtype=np.complex128)
        flavor_rhs = np.zeros(n**3, dtype=np.complex128)
        i = 0
        for beta in range(n):
            for gamma in range(n):
                for alpha in range(n):
                    flavor_rows[i, alpha * n + gamma] += 1.0 if alpha == beta else 0.0
                    flavor_rows[i, alpha * n + beta] += 1.0 if alpha == gamma else 0.0
                    flavor_rhs[i] = (
                        2.0 * (1.0 if beta == gamma else 0.0) * s[alpha, beta]
                        - s[alpha, beta] * (1.0 if alpha == gamma else 0.0)
                        - s[alpha, gamma] * (1.0 if alpha == beta else 0.0)
                    )
                    i += 1
    else:
        flavor_rows = np.zeros((n**4, unknowns), dtype=np.complex128)
        flavor_rhs = np.zeros(n**4, dtype=np.complex128)
        i = 0
        for beta in range(n):
            for gamma in range(n):
                for delta in range(n):
                    for alpha in range(n):
                        flavor_rows[i, alpha * n + gamma] += 2.0 * (1.0 if alpha == beta == delta else 0.0)
                        flavor_rows[i, alpha * n + delta] += 1.0 if alpha == beta == gamma else 0.0
                        flavor_rows[i, alpha * n + beta] += 1.0 if alpha == delta == gamma else 0.0
                        flavor_rhs[i] = (
                            2.0 * (1.0 if beta == gamma == delta else 0.0) * s[alpha, beta]
                            - s[alpha, beta] * (1.0 if alpha == gamma == delta else 0.0)
                            - s[alpha, delta] * (1.0 if alpha == gamma == beta else 0.0)
                        )
                        i += 1

    rows = np.vstack([side_rows, flavor_rows])
    rhs = np.concatenate([np.zeros(side_rows.shape[0], dtype=np.complex128), flavor_rhs])
    system = ConstraintSystem(unknowns, rows, rhs)
    feasible, particular, null, residual = solve_constraints(system)
    if not feasible:
        return SolveReport(feasible=False)
    return SolveReport(
        dimension=int(null.shape[1]),
        feasible=True,
        basis=_basis_ops(null, n),
        solution=LinOp.from_matrix(particular.reshape(n, n)),
        residual=residual,
    )


def higher_derivation_tail_space(phi: IndexMap, depth: int) -> list[SolveReport]:
    """Solve the higher product rule level by level with the shift at level 0.

    Level k of ``d_k(xy) = sum_{i+j=k} d_i(x)d_j(y)`` is linear in d_k once
    d_0, ..., d_{k-1} are known; the report at each level records the
    solution-space dimension and the particular solution used for the
    next level.
    """
    if depth < 1:
        raise SemanticError(f"tail depth must be >= 1, got {depth}")
    n = phi.n
    s = sigma_op(phi).as_matrix()
    unknowns = n * n
    known = [s]
    reports: list[SolveReport] = []
    for level in range(1, depth + 1):
        rows = np.zeros((n**3, unknowns), dtype=np.complex128)
        rhs = np.zeros(n**3, dtype=np.complex128)
        i = 0
        for beta in range(n):
            for gamma in range(n):
                for alpha in range(n):
                    row = rows[i]
                    row[alpha * n + beta] += (1.0 if beta == gamma else 0.0) - s[alpha, gamma]
                    row[alpha * n + gamma] += -s[alpha, beta]
                    rhs[i] = sum(
                        known[j][alpha, beta] * known[level - j][alpha, gamma]
                        for j in range(1, level)
                    )
                    i += 1
        system = ConstraintSystem(unknowns, rows, rhs)
        feasible, particular, null, residual = solve_constraints(system)
        if not feasible:
            reports.append(SolveReport(feasible=False))
            break
        reports.append(
            SolveReport(
                dimension=int(null.shape[1]),
                feasible=True,
                basis=_basis_ops(null, n),
                solution=LinOp.from_matrix(particular.reshape(n, n)),
                residual=residual,
            )
        )
        known.append(particular.reshape(n, n))
    return reports
