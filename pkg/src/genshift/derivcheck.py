"""Decision procedures for derivation-style identities on the pointwise algebra.

Every identity handled here is, after polarization, multilinear in its
vector inputs, so checking it on all standard-basis tuples decides it on
the whole space (the scalars have characteristic zero).  Quadratic and
cubic identities are therefore decided through their polarized forms:

* ``d(a^2) = d(a)a + ad(a)``  becomes  ``d(ab+ba) = d(a)b + ad(b) + d(b)a + bd(a)``
* ``d(aba) = d(a)ba + ad(b)a + abd(a)``  becomes the version polarized in
  the repeated argument, evaluated on basis triples.

A seeded batch of random inputs re-evaluates the literal, unpolarized
identity as a guard against mistakes in the polarization itself.

Verdicts use the combined tolerance ``tol * (1 + scale)`` where ``scale``
is the largest modulus appearing on either side; the identities are exact
in exact arithmetic, so the tolerance only absorbs rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import NotADerivationError, SemanticError
from .seqalg import TOL, SeqVector, basis_vector
from .shiftop import LinOp, identity_op, require_same_dimension

__all__ = [
    "Witness",
    "CheckResult",
    "is_psi_lambda_derivation",
    "is_psi_derivation",
    "is_derivation",
    "is_jordan_derivation",
    "is_jordan_triple_derivation",
    "is_generalized_derivation",
    "is_generalized_jordan_derivation",
    "is_generalized_jordan_triple_derivation",
    "is_higher_derivation",
    "HIGHER_FLAVORS",
]

_GUARD_SEED = 24601  # fixed seed so every call sees the same guard batch
_GUARD_COUNT = 32

HIGHER_FLAVORS = ("plain", "jordan", "jordan_triple")


@dataclass(frozen=True)
class Witness:
    """Concrete inputs on which the two sides of an identity disagree."""

    inputs: tuple[SeqVector, ...]
    lhs: SeqVector
    rhs: SeqVector
    deviation: float
    detail: str = ""


@dataclass(frozen=True)
class CheckResult:
    """Verdict of an identity check; a witness is present exactly on failure."""

    holds: bool
    witness: Witness | None = None


def _random_rows(n: int, count: int, batches: int = 2) -> tuple[np.ndarray, ...]:
    rng = np.random.default_rng(_GUARD_SEED)
    return tuple(
        (rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))) / np.sqrt(2.0)
        for _ in range(batches)
    )


def _first_failure(lhs: np.ndarray, rhs: np.ndarray, tol: float):
    """Index of the first failing tuple (lexicographic) or None; last axis is the coordinate."""
    dev = np.abs(lhs - rhs)
    per_tuple = dev.max(axis=-1)
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    limit = tol * (1.0 + scale)
    failing = np.argwhere(per_tuple > limit)
    if failing.size == 0:
        return None
    return tuple(int(i) for i in failing[0])


def _basis_witness(idx, lhs, rhs, n, detail=""):
    inputs = tuple(basis_vector(beta, n) for beta in idx)
    lhs_vec = SeqVector(lhs[idx])
    rhs_vec = SeqVector(rhs[idx])
    return Witness(
        inputs=inputs,
        lhs=lhs_vec,
        rhs=rhs_vec,
        deviation=float(np.max(np.abs(lhs[idx] - rhs[idx]))),
        detail=detail,
    )


def _guard_witness(idx, rows, lhs, rhs, detail):
    i = idx[0]
    return Witness(
        inputs=tuple(SeqVector(r[i]) for r in rows),
        lhs=SeqVector(lhs[i]),
        rhs=SeqVector(rhs[i]),
        deviation=float(np.max(np.abs(lhs[i] - rhs[i]))),
        detail=detail,
    )


def _decide(basis_lhs, basis_rhs, n, tol, guard, basis_detail="") -> CheckResult:
    """Combine the complete basis check with the random literal guard."""
    idx = _first_failure(basis_lhs, basis_rhs, tol)
    if idx is not None:
        return CheckResult(False, _basis_witness(idx, basis_lhs, basis_rhs, n, basis_detail))
    rows, guard_lhs, guard_rhs = guard()
    gidx = _first_failure(guard_lhs, guard_rhs, tol)
    if gidx is not None:
        detail = ("random guard" if not basis_detail else f"{basis_detail}; random guard")
        return CheckResult(False, _guard_witness(gidx, rows, guard_lhs, guard_rhs, detail))
    return CheckResult(True, None)


def _cols(op: LinOp) -> np.ndarray:
    """C[b, a] = coordinate a of the operator applied to basis vector b."""
    return op.as_matrix().T


def is_psi_lambda_derivation(d: LinOp, psi: LinOp, lam: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``d(xy) = d(x)psi(y) + lambda(x)d(y)`` hold for all x, y?

    Both sides are bilinear, so the check on all basis pairs is complete.
    """
    n = require_same_dimension(d, psi, lam)
    dt, pt, lt = _cols(d), _cols(psi), _cols(lam)
    pair_eye = np.eye(n)

    basis_lhs = pair_eye[:, :, None] * dt[:, None, :]
    basis_rhs = dt[:, None, :] * pt[None, :, :] + lt[:, None, :] * dt[None, :, :]

    dm, pm, lm = d.as_matrix(), psi.as_matrix(), lam.as_matrix()

    def guard():
        x, y = _random_rows(n, _GUARD_COUNT)
        lhs = (x * y) @ dm.T
        rhs = (x @ dm.T) * (y @ pm.T) + (x @ lm.T) * (y @ dm.T)
        return (x, y), lhs, rhs

    return _decide(basis_lhs, basis_rhs, n, tol, guard)


def is_psi_derivation(d: LinOp, psi: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``d(xy) = d(x)psi(y) + psi(x)d(y)`` hold for all x, y?"""
    return is_psi_lambda_derivation(d, psi, psi, tol=tol)


def is_derivation(d: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``d(xy) = d(x)y + xd(y)`` hold for all x, y?"""
    ident = identity_op(d.n)
    return is_psi_lambda_derivation(d, ident, ident, tol=tol)


def is_jordan_derivation(d: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``d(x^2) = d(x)x + xd(x)`` hold for all x?

    Decided through the polarized form ``d(ab+ba) = d(a)b + ad(b) + d(b)a + bd(a)``
    on basis pairs; the literal quadratic form is spot-checked on random vectors.
    """
    n = require_same_dimension(d)
    dt = _cols(d)
    eye = np.eye(n)

    basis_lhs = 2.0 * eye[:, :, None] * dt[:, None, :]
    basis_rhs = 2.0 * (dt[:, None, :] * eye[None, :, :] + eye[:, None, :] * dt[None, :, :])

    dm = d.as_matrix()

    def guard():
        (x,) = _random_rows(n, _GUARD_COUNT, batches=1)
        lhs = (x * x) @ dm.T
        dx = x @ dm.T
        rhs = dx * x + x * dx
        return (x,), lhs, rhs

    return _decide(basis_lhs, basis_rhs, n, tol, guard)


def is_jordan_triple_derivation(d: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``d(xyx) = d(x)yx + xd(y)x + xyd(x)`` hold for all x, y?

    Polarized in the repeated argument and decided on basis triples.
    """
    n = require_same_dimension(d)
    dt = _cols(d)
    eye = np.eye(n)
    triple_eye = np.zeros((n, n, n))
    triple_eye[np.arange(n), np.arange(n), np.arange(n)] = 1.0

    basis_lhs = 2.0 * triple_eye[:, :, :, None] * dt[:, None, None, :]
    # d(abc+cba) = d(a)bc + ad(b)c + abd(c) + d(c)ba + cd(b)a + cbd(a); the
    # algebra commutes, so the six terms collapse pairwise into three.
    basis_rhs = 2.0 * (
        dt[:, None, None, :] * eye[None, :, None, :] * eye[None, None, :, :]
        + eye[:, None, None, :] * dt[None, :, None, :] * eye[None, None, :, :]
        + eye[:, None, None, :] * eye[None, :, None, :] * dt[None, None, :, :]
    )

    dm = d.as_matrix()

    def guard():
        x, y = _random_rows(n, _GUARD_COUNT)
        lhs = (x * y * x) @ dm.T
        dx = x @ dm.T
        rhs = dx * y * x + x * (y @ dm.T) * x + x * y * dx
        return (x, y), lhs, rhs

    return _decide(basis_lhs, basis_rhs, n, tol, guard)


def _require_auxiliary(check: Callable[..., CheckResult], d: LinOp, tol: float, wanted: str) -> None:
    if not check(d, tol=tol).holds:
        raise NotADerivationError(f"auxiliary operator is not a {wanted}")


def is_generalized_derivation(big_d: LinOp, d: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``D(xy) = D(x)y + xd(y)`` hold, for an auxiliary derivation d?"""
    n = require_same_dimension(big_d, d)
    _require_auxiliary(is_derivation, d, tol, "derivation")
    bt, dt = _cols(big_d), _cols(d)
    eye = np.eye(n)

    basis_lhs = eye[:, :, None] * bt[:, None, :]
    basis_rhs = bt[:, None, :] * eye[None, :, :] + eye[:, None, :] * dt[None, :, :]

    bm, dm = big_d.as_matrix(), d.as_matrix()

    def guard():
        x, y = _random_rows(n, _GUARD_COUNT)
        lhs = (x * y) @ bm.T
        rhs = (x @ bm.T) * y + x * (y @ dm.T)
        return (x, y), lhs, rhs

    return _decide(basis_lhs, basis_rhs, n, tol, guard)


def is_generalized_jordan_derivation(big_d: LinOp, d: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``D(x^2) = D(x)x + xd(x)`` hold, for an auxiliary derivation d?

    Checked through the mixed polarized form
    ``D(ab+ba) = D(a)b + ad(b) + D(b)a + bd(a)`` on basis pairs.
    """
    n = require_same_dimension(big_d, d)
    _require_auxiliary(is_derivation, d, tol, "derivation")
    bt, dt = _cols(big_d), _cols(d)
    eye = np.eye(n)

    basis_lhs = 2.0 * eye[:, :, None] * bt[:, None, :]
    basis_rhs = (
        bt[:, None, :] * eye[None, :, :]
        + eye[:, None, :] * dt[None, :, :]
        + bt[None, :, :] * eye[:, None, :]
        + eye[None, :, :] * dt[:, None, :]
    )

    bm, dm = big_d.as_matrix(), d.as_matrix()

    def guard():
        (x,) = _random_rows(n, _GUARD_COUNT, batches=1)
        lhs = (x * x) @ bm.T
        rhs = (x @ bm.T) * x + x * (x @ dm.T)
        return (x,), lhs, rhs

    return _decide(basis_lhs, basis_rhs, n, tol, guard)


def is_generalized_jordan_triple_derivation(big_d: LinOp, d: LinOp, tol: float = TOL) -> CheckResult:
    """Does ``D(xyx) = D(x)yx + xd(y)x + xyd(x)`` hold, for an auxiliary
    Jordan triple derivation d?"""
    n = require_same_dimension(big_d, d)
    _require_auxiliary(is_jordan_triple_derivation, d, tol, "Jordan triple derivation")
    bt, dt = _cols(big_d), _cols(d)
    eye = np.eye(n)
    triple_eye = np.zeros((n, n, n))
    triple_eye[np.arange(n), np.arange(n), np.arange(n)] = 1.0

    basis_lhs = 2.0 * triple_eye[:, :, :, None] * bt[:, None, None, :]
    # D(abc+cba) = D(a)bc + ad(b)c + abd(c) + D(c)ba + cd(b)a + cbd(a)
    basis_rhs = (
        bt[:, None, None, :] * eye[None, :, None, :] * eye[None, None, :, :]
        + eye[:, None, None, :] * dt[None, :, None, :] * eye[None, None, :, :]
        + eye[:, None, None, :] * eye[None, :, None, :] * dt[None, None, :, :]
        + bt[None, None, :, :] * eye[None, :, None, :] * eye[:, None, None, :]
        + eye[None, None, :, :] * dt[None, :, None, :] * eye[:, None, None, :]
        + eye[None, None, :, :] * eye[None, :, None, :] * dt[:, None, None, :]
    )

    bm, dm = big_d.as_matrix(), d.as_matrix()

    def guard():
        x, y = _random_rows(n, _GUARD_COUNT)
        lhs = (x * y * x) @ bm.T
        rhs = (x @ bm.T) * y * x + x * (y @ dm.T) * x + x * y * (x @ dm.T)
        return (x, y), lhs, rhs

    return _decide(basis_lhs, basis_rhs, n, tol, guard)


def is_higher_derivation(ds: Sequence[LinOp], flavor: str = "plain", tol: float = TOL) -> CheckResult:
    """Is ``d_0, ..., d_m`` a higher derivation of the given flavor?

    Level k of the plain flavor requires ``d_k(xy) = sum_{i+j=k} d_i(x)d_j(y)``;
    the jordan and jordan_triple flavors use the squared and x.y.x forms with
    the analogous convolution sums, polarized as in the single-level checks.
    Level 0 of every flavor makes ``d_0`` an algebra endomorphism.
    """
    if flavor not in HIGHER_FLAVORS:
        raise SemanticError(f"unknown higher-derivation flavor {flavor!r}; expected one of {HIGHER_FLAVORS}")
    ds = list(ds)
    if not ds:
        raise SemanticError("higher-derivation check needs at least one operator")
    n = require_same_dimension(*ds)
    cols = [_cols(op) for op in ds]
    mats = [op.as_matrix() for op in ds]
    eye = np.eye(n)
    triple_eye = np.zeros((n, n, n))
    triple_eye[np.arange(n), np.arange(n), np.arange(n)] = 1.0

    for k in range(len(ds)):
        if flavor == "plain":
            basis_lhs = eye[:, :, None] * cols[k][:, None, :]
            basis_rhs = sum(cols[i][:, None, :] * cols[k - i][None, :, :] for i in range(k + 1))

            def guard(k=k):
                x, y = _random_rows(n, _GUARD_COUNT)
                lhs = (x * y) @ mats[k].T
                rhs = sum((x @ mats[i].T) * (y @ mats[k - i].T) for i in range(k + 1))
                return (x, y), lhs, rhs

        elif flavor == "jordan":
            basis_lhs = 2.0 * eye[:, :, None] * cols[k][:, None, :]
            basis_rhs = sum(
                cols[i][:, None, :] * cols[k - i][None, :, :] + cols[i][None, :, :] * cols[k - i][:, None, :]
                for i in range(k + 1)
            )

            def guard(k=k):
                (x,) = _random_rows(n, _GUARD_COUNT, batches=1)
                lhs = (x * x) @ mats[k].T
                rhs = sum((x @ mats[i].T) * (x @ mats[k - i].T) for i in range(k + 1))
                return (x,), lhs, rhs

        else:
            basis_lhs = 2.0 * triple_eye[:, :, :, None] * cols[k][:, None, None, :]
            basis_rhs = sum(
                cols[i][:, None, None, :] * cols[j][None, :, None, :] * cols[k - i - j][None, None, :, :]
                + cols[i][None, None, :, :] * cols[j][None, :, None, :] * cols[k - i - j][:, None, None, :]
                for i in range(k + 1)
                for j in range(k - i + 1)
            )

            def guard(k=k):
                x, y = _random_rows(n, _GUARD_COUNT)
                lhs = (x * y * x) @ mats[k].T
                rhs = sum(
                    (x @ mats[i].T) * (y @ mats[j].T) * (x @ mats[k - i - j].T)
                    for i in range(k + 1)
                    for j in range(k - i + 1)
                )
                return (x, y), lhs, rhs

        result = _decide(basis_lhs, basis_rhs, n, tol, guard, basis_detail=f"level {k}")
        if not result.holds:
            return result
    return CheckResult(True, None)
