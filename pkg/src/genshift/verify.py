"""Exhaustive verification suite over index maps on small n.

Each property is the computational form of a structural fact about the
shift along an index map on the pointwise algebra.  Maps are enumerated
exhaustively for n up to min(n_max, 4); for larger n the suite draws a
fixed number of seeded samples per size.  Given the same seed and n_max
the suite is fully deterministic, including its report text.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .derivcheck import (
    is_jordan_derivation,
    is_jordan_triple_derivation,
    is_psi_derivation,
    is_psi_lambda_derivation,
)
from .errors import SemanticError
from .seqalg import deviation, max_abs, random_vector
from .shiftop import (
    IndexMap,
    LinOp,
    all_index_maps,
    random_index_map,
    random_operator,
    sigma_op,
)
from .structure import (
    GENERALIZED_FLAVORS,
    classify_psi_lambda,
    generalized_derivation_feasible,
    higher_derivation_tail_space,
    synthesize_pair,
    twisted_derivation_space,
)

__all__ = ["PropertyResult", "SuiteReport", "suite_maps", "run_suite"]

EXHAUSTIVE_N_CAP = 4
SAMPLES_PER_N = 32
RANDOM_R_PER_MAP = 16
RANDOM_PAIRS_PER_MAP = 32
RANDOM_PSI_PER_MAP = 8
HIGHER_DEPTH = 3
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class PropertyResult:
    name: str
    description: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class SuiteReport:
    n_max: int
    seed: int
    map_counts: tuple[tuple[int, int], ...]
    results: tuple[PropertyResult, ...]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)


def suite_maps(n_max: int, seed: int) -> list[IndexMap]:
    """Every map for n <= min(n_max, 4), then SAMPLES_PER_N seeded draws per larger n."""
    if n_max < 1:
        raise SemanticError(f"n_max must be >= 1, got {n_max}")
    maps: list[IndexMap] = []
    for n in range(1, min(n_max, EXHAUSTIVE_N_CAP) + 1):
        maps.extend(all_index_maps(n))
    for n in range(EXHAUSTIVE_N_CAP + 1, n_max + 1):
        rng = np.random.default_rng([seed, n])
        maps.extend(random_index_map(n, rng) for _ in range(SAMPLES_PER_N))
    return maps


def _perturbed(op: LinOp, row: int, col: int, delta: float = 1e-3) -> LinOp:
    mat = np.array(op.as_matrix(), copy=True)
    mat[row, col] += delta
    return LinOp.from_matrix(mat)


def _multiplier_round_trip(maps: list[IndexMap], seed: int) -> PropertyResult:
    rng = np.random.default_rng([seed, 101])
    cases = failures = 0
    for phi in maps:
        shift = sigma_op(phi)
        for _ in range(RANDOM_R_PER_MAP):
            r = random_vector(phi.n, rng)
            psi, lam = synthesize_pair(phi, r)
            verdict = is_psi_lambda_derivation(shift, psi, lam).holds
            outcome = classify_psi_lambda(phi, psi, lam)
            recovered = (
                outcome.accepted
                and outcome.r is not None
                and deviation(outcome.r.entries, r.entries) <= ZERO_TOL
            )
            cases += 1
            failures += 0 if (verdict and recovered) else 1
    return PropertyResult(
        "multiplier-pair-round-trip",
        "synthesized (psi, lambda) pairs satisfy the twisted rule and classify back to r",
        cases,
        failures,
    )


def _classification_completeness(maps: list[IndexMap], seed: int) -> PropertyResult:
    rng = np.random.default_rng([seed, 102])
    cases = failures = 0
    for phi in maps:
        shift = sigma_op(phi)
        candidates: list[tuple[LinOp, LinOp]] = []
        for _ in range(RANDOM_PAIRS_PER_MAP):
            candidates.append((random_operator(phi.n, rng), random_operator(phi.n, rng)))
        for _ in range(2):
            psi, lam = synthesize_pair(phi, random_vector(phi.n, rng))
            candidates.append((psi, lam))
            candidates.append((_perturbed(psi, 0, 0), lam))
        for psi, lam in candidates:
            agree = classify_psi_lambda(phi, psi, lam).accepted == is_psi_lambda_derivation(shift, psi, lam).holds
            cases += 1
            failures += 0 if agree else 1
    return PropertyResult(
        "classification-completeness",
        "classifier verdict always matches the direct twisted-rule check",
        cases,
        failures,
    )


def _half_shift_uniqueness(maps: list[IndexMap], seed: int) -> PropertyResult:
    rng = np.random.default_rng([seed, 103])
    cases = failures = 0
    for phi in maps:
        shift = sigma_op(phi)
        half = LinOp.from_matrix(0.5 * shift.as_matrix())
        cases += 1
        failures += 0 if is_psi_derivation(shift, half).holds else 1
        for row in range(phi.n):
            for col in range(phi.n):
                cases += 1
                failures += 1 if is_psi_derivation(shift, _perturbed(half, row, col)).holds else 0
        for _ in range(RANDOM_PSI_PER_MAP):
            cases += 1
            failures += 1 if is_psi_derivation(shift, random_operator(phi.n, rng)).holds else 0
    return PropertyResult(
        "half-shift-uniqueness",
        "the symmetric twisted rule holds exactly for psi = shift/2",
        cases,
        failures,
    )


def _jordan_impossibility(maps: list[IndexMap]) -> PropertyResult:
    cases = failures = 0
    for phi in maps:
        shift = sigma_op(phi)
        for check in (is_jordan_derivation, is_jordan_triple_derivation):
            result = check(shift)
            cases += 1
            failures += 0 if (not result.holds and result.witness is not None) else 1
    return PropertyResult(
        "jordan-impossibility",
        "no shift is a Jordan or Jordan-triple derivation; witnesses are produced",
        cases,
        failures,
    )


def _twisted_forced_zero(maps: list[IndexMap]) -> PropertyResult:
    cases = failures = 0
    for phi in maps:
        shift = sigma_op(phi)
        report = twisted_derivation_space(shift, shift)
        ok = report.dimension == 0 and not report.basis and report.residual <= 1e-8
        cases += 1
        failures += 0 if ok else 1
    return PropertyResult(
        "twisted-forced-zero",
        "the space of operators obeying the shift-twisted rule is trivial",
        cases,
        failures,
    )


def _generalized_identity_only(maps: list[IndexMap]) -> PropertyResult:
    cases = failures = 0
    for phi in maps:
        for flavor in GENERALIZED_FLAVORS:
            report = generalized_derivation_feasible(phi, flavor)
            ok = report.feasible == phi.is_identity
            if report.feasible:
                ok = ok and report.solution is not None and max_abs(report.solution.as_matrix()) <= ZERO_TOL
            cases += 1
            failures += 0 if ok else 1
    return PropertyResult(
        "generalized-identity-only",
        "generalized product rules are feasible exactly for the identity map, with zero certificate",
        cases,
        failures,
    )


def _higher_zero_tail(maps: list[IndexMap]) -> PropertyResult:
    cases = failures = 0
    for phi in maps:
        reports = higher_derivation_tail_space(phi, HIGHER_DEPTH)
        ok = len(reports) == HIGHER_DEPTH and all(
            level.feasible
            and level.dimension == 0
            and level.solution is not None
            and max_abs(level.solution.as_matrix()) <= ZERO_TOL
            for level in reports
        )
        cases += 1
        failures += 0 if ok else 1
    return PropertyResult(
        "higher-zero-tail",
        "level-by-level higher product rules force zero at every level above the shift",
        cases,
        failures,
    )


def run_suite(n_max: int = 4, seed: int = 0) -> SuiteReport:
    maps = suite_maps(n_max, seed)
    small = [phi for phi in maps if phi.n <= 3]
    counts: dict[int, int] = {}
    for phi in maps:
        counts[phi.n] = counts.get(phi.n, 0) + 1
    results = (
        _multiplier_round_trip(maps, seed),
        _classification_completeness(small, seed),
        _half_shift_uniqueness(small, seed),
        _jordan_impossibility(maps),
        _twisted_forced_zero(maps),
        _generalized_identity_only(maps),
        _higher_zero_tail(maps),
    )
    return SuiteReport(
        n_max=n_max,
        seed=seed,
        map_counts=tuple(sorted(counts.items())),
        results=results,
    )
