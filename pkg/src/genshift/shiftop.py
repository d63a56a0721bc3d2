"""Index self-maps, fiber analysis, and multiplier-shift operators on C^n.

A self-map ``phi`` of {0, ..., n-1} induces the shift
``(x_a)_a -> (x_{phi(a)})_a``, an algebra endomorphism of the pointwise
algebra.  On a finite index set every self-map gives a bounded shift;
the quantitative fact of interest is the exact operator norm, which is
``N**(1/p)`` where ``N`` is the largest fiber size (and 1 for p = inf).
Tests validate that formula against a maximization oracle rather than
trusting it.

``LinOp`` holds a general operator either as a dense matrix or in the
structural form ``x -> (r_a * x_{phi(a)})_a`` (a diagonal multiplier
composed with a shift); the two representations must agree under
``apply_op``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DimensionMismatchError, SemanticError
from .seqalg import PExponent, SeqVector, close, ones

__all__ = [
    "IndexMap",
    "FiberReport",
    "LinOp",
    "all_index_maps",
    "random_index_map",
    "compose_maps",
    "apply_shift",
    "fibers",
    "shift_operator_norm",
    "sigma_op",
    "identity_op",
    "zero_op",
    "to_matrix",
    "apply_op",
    "ops_close",
]


@dataclass(frozen=True)
class IndexMap:
    """Total self-map of {0, ..., n-1}; ``image[a]`` is the image of ``a``."""

    n: int
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise SemanticError(f"index map needs a positive size, got {self.n!r}")
        img = tuple(int(v) for v in self.image)
        if len(img) != self.n:
            raise SemanticError(f"index map on {self.n} points needs {self.n} image entries, got {len(img)}")
        for alpha, value in enumerate(img):
            if not 0 <= value < self.n:
                raise SemanticError(f"image of {alpha} is {value}, outside 0..{self.n - 1}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int) -> "IndexMap":
        return cls(n, tuple(range(n)))

    def __call__(self, alpha: int) -> int:
        return self.image[alpha]

    @property
    def is_identity(self) -> bool:
        return all(v == a for a, v in enumerate(self.image))

    # For a total self-map of a finite set, injective == surjective == bijective.
    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == self.n

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.n


def all_index_maps(n: int) -> Iterator[IndexMap]:
    """All n**n self-maps of {0, ..., n-1}, lexicographic in the image tuple."""
    if n < 1:
        raise SemanticError("map enumeration needs n >= 1")
    for image in itertools.product(range(n), repeat=n):
        yield IndexMap(n, image)


def random_index_map(n: int, rng: np.random.Generator) -> IndexMap:
    return IndexMap(n, tuple(int(v) for v in rng.integers(0, n, size=n)))


def compose_maps(outer: IndexMap, inner: IndexMap) -> IndexMap:
    """Map sending ``a`` to ``outer(inner(a))``."""
    if outer.n != inner.n:
        raise DimensionMismatchError(f"cannot compose maps on {outer.n} and {inner.n} points")
    return IndexMap(outer.n, tuple(outer.image[v] for v in inner.image))


@dataclass(frozen=True)
class FiberReport:
    """Preimage census of an index map: size of every fiber phi^-1(beta)."""

    sizes: dict[int, int]
    bound: int
    empty_fibers: frozenset[int]


def fibers(phi: IndexMap) -> FiberReport:
    counts = np.bincount(np.asarray(phi.image), minlength=phi.n)
    sizes = {beta: int(counts[beta]) for beta in range(phi.n)}
    return FiberReport(
        sizes=sizes,
        bound=int(counts.max()),
        empty_fibers=frozenset(beta for beta in range(phi.n) if counts[beta] == 0),
    )


def apply_shift(phi: IndexMap, x: SeqVector) -> SeqVector:
    """Shift ``x`` along ``phi``: entry ``a`` of the result is ``x[phi(a)]``."""
    if phi.n != len(x):
        raise DimensionMismatchError(f"map on {phi.n} points applied to vector of length {len(x)}")
    return SeqVector(np.take(x.entries, phi.image))


def shift_operator_norm(phi: IndexMap, p: PExponent) -> float:
    """Exact operator norm of the shift on (C^n, l^p).

    For finite p the norm is N**(1/p) with N the largest fiber size,
    attained on the basis vector at a largest fiber; for p = inf it is 1.
    """
    if p.is_inf:
        return 1.0
    return float(fibers(phi).bound ** (1.0 / p.value))


@dataclass(frozen=True, eq=False)
class LinOp:
    """Linear operator on C^n: dense matrix, or multiplier-shift ``r * shift(phi)``.

    Exactly one representation is populated.  The multiplier-shift form
    acts as ``x -> (r_a * x_{phi(a)})_a``; its dense expansion has entry
    (a, b) equal to ``r_a`` when ``phi(a) == b`` and 0 otherwise.
    """

    n: int
    dense: np.ndarray | None = None
    r: SeqVector | None = None
    phi: IndexMap | None = None

    def __post_init__(self) -> None:
        has_dense = self.dense is not None
        has_shift = self.r is not None or self.phi is not None
        if has_dense == has_shift:
            raise SemanticError("operator needs exactly one of a dense matrix or a (r, phi) pair")
        if has_dense:
            mat = np.array(self.dense, dtype=np.complex128, copy=True)
            if mat.shape != (self.n, self.n):
                raise DimensionMismatchError(f"expected a {self.n}x{self.n} matrix, got shape {mat.shape}")
            if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
                raise SemanticError("matrix entries must be finite")
            mat.flags.writeable = False
            object.__setattr__(self, "dense", mat)
        else:
            if self.r is None or self.phi is None:
                raise SemanticError("multiplier-shift form needs both r and phi")
            if len(self.r) != self.n or self.phi.n != self.n:
                raise DimensionMismatchError(
                    f"multiplier length {len(self.r)} and map size {self.phi.n} must equal n={self.n}"
                )

    @classmethod
    def from_matrix(cls, rows) -> "LinOp":
        mat = np.asarray(rows, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatchError(f"operator matrix must be square, got shape {mat.shape}")
        return cls(n=int(mat.shape[0]), dense=mat)

    @classmethod
    def multiplier_shift(cls, r: SeqVector, phi: IndexMap) -> "LinOp":
        if len(r) != phi.n:
            raise DimensionMismatchError(f"multiplier length {len(r)} does not match map on {phi.n} points")
        return cls(n=phi.n, r=r, phi=phi)

    @property
    def is_dense(self) -> bool:
        return self.dense is not None

    @property
    def form(self) -> str:
        return "dense" if self.is_dense else "multiplier_shift"

    def as_matrix(self) -> np.ndarray:
        """Dense n x n array of this operator (read-only)."""
        if self.dense is not None:
            return self.dense
        mat = np.zeros((self.n, self.n), dtype=np.complex128)
        mat[np.arange(self.n), np.asarray(self.phi.image)] = self.r.entries
        mat.flags.writeable = False
        return mat

    def __repr__(self) -> str:
        if self.is_dense:
            return f"LinOp(n={self.n}, dense)"
        return f"LinOp(n={self.n}, r={self.r!r}, phi={self.phi.image!r})"


def sigma_op(phi: IndexMap) -> LinOp:
    """The shift induced by ``phi`` as an operator (multiplier r = 1)."""
    return LinOp.multiplier_shift(ones(phi.n), phi)


def identity_op(n: int) -> LinOp:
    return LinOp.from_matrix(np.eye(n, dtype=np.complex128))


def zero_op(n: int) -> LinOp:
    return LinOp.from_matrix(np.zeros((n, n), dtype=np.complex128))


def to_matrix(op: LinOp) -> LinOp:
    """Dense expansion of any operator (identity on already-dense ones)."""
    if op.is_dense:
        return op
    return LinOp.from_matrix(op.as_matrix())


def apply_op(op: LinOp, x: SeqVector) -> SeqVector:
    """Evaluate the operator; multiplier-shift form is applied directly."""
    if op.n != len(x):
        raise DimensionMismatchError(f"operator on C^{op.n} applied to vector of length {len(x)}")
    if op.is_dense:
        return SeqVector(op.dense @ x.entries)
    return SeqVector(op.r.entries * np.take(x.entries, op.phi.image))


def ops_close(a: LinOp, b: LinOp, tol: float = 1e-9) -> bool:
    """Entrywise combined-tolerance comparison of the dense forms."""
    if a.n != b.n:
        raise DimensionMismatchError(f"operators act on C^{a.n} and C^{b.n}")
    return close(a.as_matrix(), b.as_matrix(), tol=tol)


def require_same_dimension(*ops: LinOp) -> int:
    """Shared dimension of the given operators, or DimensionMismatchError."""
    dims = {op.n for op in ops}
    if len(dims) != 1:
        raise DimensionMismatchError(f"operators act on different spaces: {sorted(dims)}")
    return dims.pop()


def random_operator(n: int, rng: np.random.Generator) -> LinOp:
    """Dense operator with independent standard complex normal entries."""
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return LinOp.from_matrix(raw / np.sqrt(2.0))
