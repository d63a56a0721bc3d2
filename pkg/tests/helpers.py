"""Independent oracles used to cross-check the library's closed forms.

Everything here evaluates identities literally with vector operations or
uses SVD-based rank decisions, deliberately avoiding the coefficient
assembly and Gaussian elimination paths under test.
"""

import numpy as np

from genshift.seqalg import PExponent, SeqVector, basis_vector, pnorm, pointwise_mul
from genshift.shiftop import IndexMap, LinOp, apply_op, apply_shift, sigma_op

SVD_TOL = 1e-10


def complex_randn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def shift_norm_oracle(phi: IndexMap, p: PExponent, rng, samples: int = 10_000) -> float:
    """Largest ratio ||shift(x)||_p / ||x||_p over random vectors and every
    basis vector."""
    n = phi.n
    best = 0.0
    for beta in range(n):
        e = basis_vector(beta, n)
        best = max(best, pnorm(apply_shift(phi, e), p) / pnorm(e, p))
    batch = complex_randn(rng, samples, n)
    shifted = batch[:, np.asarray(phi.image)]
    if p.is_inf:
        num = np.abs(shifted).max(axis=1)
        den = np.abs(batch).max(axis=1)
    else:
        num = np.sum(np.abs(shifted) ** p.value, axis=1) ** (1.0 / p.value)
        den = np.sum(np.abs(batch) ** p.value, axis=1) ** (1.0 / p.value)
    keep = den > 1e-12
    if keep.any():
        best = max(best, float((num[keep] / den[keep]).max()))
    return best


def _elementary_ops(n):
    for a in range(n):
        for b in range(n):
            mat = np.zeros((n, n), dtype=np.complex128)
            mat[a, b] = 1.0
            yield LinOp.from_matrix(mat)


def _rank(matrix) -> int:
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > SVD_TOL * s[0]))


def _linearize(residual, n):
    """Matrix and offset of an affine map d -> residual(d) probed on the
    elementary operators; columns follow the row-major entry order."""
    zero = residual(LinOp.from_matrix(np.zeros((n, n), dtype=np.complex128)))
    columns = [residual(op) - zero for op in _elementary_ops(n)]
    return np.column_stack(columns), zero


def twisted_residual(psi: LinOp, lam: LinOp):
    """Literal evaluation of d(xy) - d(x)psi(y) - lambda(x)d(y) on all basis pairs."""
    n = psi.n

    def residual(d: LinOp) -> np.ndarray:
        out = []
        for beta in range(n):
            for gamma in range(n):
                wb, wg = basis_vector(beta, n), basis_vector(gamma, n)
                lhs = apply_op(d, pointwise_mul(wb, wg))
                rhs = pointwise_mul(apply_op(d, wb), apply_op(psi, wg)).entries + pointwise_mul(
                    apply_op(lam, wb), apply_op(d, wg)
                ).entries
                out.append(lhs.entries - rhs)
        return np.concatenate(out)

    return residual


def twisted_nullity_oracle(psi: LinOp, lam: LinOp) -> int:
    """Nullspace dimension of the twisted rule by brute force plus SVD."""
    n = psi.n
    matrix, _ = _linearize(twisted_residual(psi, lam), n)
    return n * n - _rank(matrix)


def _random_vectors(n, count, rng):
    return [SeqVector(row) for row in complex_randn(rng, count, n)]


def generalized_feasible_oracle(phi: IndexMap, flavor: str, rng) -> bool:
    """Existence of an auxiliary d for the generalized rule, decided by
    literal residual evaluation and an SVD rank comparison.

    The quadratic and cubic identities are required for all vectors, so
    they are sampled on random inputs (each sample is linear in d); the
    bilinear identities are evaluated on all basis pairs directly.
    """
    n = phi.n
    shift = sigma_op(phi)
    samples = 4 * n * n

    def mul(*vecs):
        out = vecs[0]
        for v in vecs[1:]:
            out = pointwise_mul(out, v)
        return out

    pieces = []

    if flavor in ("plain", "jordan"):
        pieces.append(twisted_residual(LinOp.from_matrix(np.eye(n)), LinOp.from_matrix(np.eye(n))))
    else:
        xs = _random_vectors(n, samples, rng)
        ys = _random_vectors(n, samples, rng)

        def jt_side(d: LinOp) -> np.ndarray:
            out = []
            for x, y in zip(xs, ys):
                lhs = apply_op(d, mul(x, y, x)).entries
                rhs = (
                    mul(apply_op(d, x), y, x).entries
                    + mul(x, apply_op(d, y), x).entries
                    + mul(x, y, apply_op(d, x)).entries
                )
                out.append(lhs - rhs)
            return np.concatenate(out)

        pieces.append(jt_side)

    if flavor == "plain":

        def rule(d: LinOp) -> np.ndarray:
            out = []
            for beta in range(n):
                for gamma in range(n):
                    wb, wg = basis_vector(beta, n), basis_vector(gamma, n)
                    lhs = apply_op(shift, mul(wb, wg)).entries
                    rhs = mul(apply_op(shift, wb), wg).entries + mul(wb, apply_op(d, wg)).entries
                    out.append(lhs - rhs)
            return np.concatenate(out)

    elif flavor == "jordan":
        xs = _random_vectors(n, samples, rng)

        def rule(d: LinOp) -> np.ndarray:
            out = []
            for x in xs:
                lhs = apply_op(shift, mul(x, x)).entries
                rhs = mul(apply_op(shift, x), x).entries + mul(x, apply_op(d, x)).entries
                out.append(lhs - rhs)
            return np.concatenate(out)

    else:
        xs2 = _random_vectors(n, samples, rng)
        ys2 = _random_vectors(n, samples, rng)

        def rule(d: LinOp) -> np.ndarray:
            out = []
            for x, y in zip(xs2, ys2):
                lhs = apply_op(shift, mul(x, y, x)).entries
                rhs = (
                    mul(apply_op(shift, x), y, x).entries
                    + mul(x, apply_op(d, y), x).entries
                    + mul(x, y, apply_op(d, x)).entries
                )
                out.append(lhs - rhs)
            return np.concatenate(out)

    pieces.append(rule)

    def residual(d: LinOp) -> np.ndarray:
        return np.concatenate([piece(d) for piece in pieces])

    matrix, offset = _linearize(residual, n)
    rank_plain = _rank(matrix)
    rank_augmented = _rank(np.column_stack([matrix, -offset]))
    return rank_plain == rank_augmented
