"""Pointwise complex vector algebra with l^p norms.

Vectors are fixed-length arrays of complex scalars under entrywise
addition and multiplication; the entrywise product makes C^n a
commutative algebra.  ``pnorm`` supplies the l^p norms (p in [1, inf]),
which are submultiplicative for this product.

The full space C^n has a multiplicative unit (1, ..., 1), but the
identities checked elsewhere in the package are built from indicator
vectors only and never rely on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionMismatchError, ParseError, SemanticError

# Repo-wide equality tolerance: |a - b| <= TOL * (1 + max(|a|, |b|)).
TOL = 1e-9


def max_abs(values) -> float:
    """Largest entrywise modulus of a scalar or array."""
    return float(np.max(np.abs(np.asarray(values))))


def deviation(a, b) -> float:
    """Largest entrywise |a - b|."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def close(a, b, tol: float = TOL) -> bool:
    """Combined absolute/relative closeness for scalars or equal-shape arrays."""
    scale = max(max_abs(a), max_abs(b))
    return deviation(a, b) <= tol * (1.0 + scale)


@dataclass(frozen=True)
class PExponent:
    """Norm exponent p in [1, inf]; ``math.inf`` selects the sup norm."""

    value: float

    def __post_init__(self) -> None:
        try:
            v = float(self.value)
        except (TypeError, ValueError) as exc:
            raise SemanticError(f"norm exponent must be a real number, got {self.value!r}") from exc
        if math.isnan(v) or v < 1.0:
            raise SemanticError(f"norm exponent must satisfy p >= 1, got {self.value!r}")
        object.__setattr__(self, "value", v)

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    @classmethod
    def parse(cls, raw) -> "PExponent":
        """Build from a JSON-style value: a number, or the string ``"inf"``."""
        if isinstance(raw, str):
            text = raw.strip().lower()
            if text in ("inf", "infinity"):
                return cls(math.inf)
            try:
                value = float(text)
            except ValueError as exc:
                raise ParseError(f"cannot parse norm exponent from {raw!r}") from exc
            return cls(value)
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ParseError(f"norm exponent must be a number or 'inf', got {raw!r}")
        return cls(float(raw))

    def to_json(self):
        return "inf" if self.is_inf else self.value

    def __str__(self) -> str:
        return "inf" if self.is_inf else f"{self.value:g}"


P_ONE = PExponent(1.0)
P_TWO = PExponent(2.0)
P_INF = PExponent(math.inf)


@dataclass(frozen=True, eq=False)
class SeqVector:
    """Immutable vector in C^n, n >= 1, with finite entries."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.complex128, copy=True)
        if arr.ndim != 1:
            raise SemanticError(f"vector entries must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise SemanticError("vectors must have at least one entry")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise SemanticError("vector entries must be finite complex numbers")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    def __len__(self) -> int:
        return int(self.entries.size)

    def __iter__(self) -> Iterator[complex]:
        return (complex(v) for v in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeqVector):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __repr__(self) -> str:
        return f"SeqVector({[complex(v) for v in self.entries]!r})"


def vec(values: Iterable[complex]) -> SeqVector:
    """Convenience constructor from any iterable of scalars."""
    return SeqVector(np.asarray(list(values), dtype=np.complex128))


def zeros(n: int) -> SeqVector:
    return SeqVector(np.zeros(n, dtype=np.complex128))


def ones(n: int) -> SeqVector:
    return SeqVector(np.ones(n, dtype=np.complex128))


def _require_same_length(x: SeqVector, y: SeqVector) -> None:
    if len(x) != len(y):
        raise DimensionMismatchError(f"vector lengths differ: {len(x)} vs {len(y)}")


def pnorm(x: SeqVector, p: PExponent) -> float:
    """l^p norm of ``x``: (sum |x_a|^p)^(1/p) for finite p, max |x_a| for p = inf."""
    mags = np.abs(x.entries)
    if p.is_inf:
        return float(mags.max())
    if p.value == 1.0:
        return float(mags.sum())
    return float(np.sum(mags**p.value) ** (1.0 / p.value))


def pointwise_mul(x: SeqVector, y: SeqVector) -> SeqVector:
    """Entrywise complex product; the algebra multiplication."""
    _require_same_length(x, y)
    return SeqVector(x.entries * y.entries)


def add(x: SeqVector, y: SeqVector) -> SeqVector:
    """Entrywise sum."""
    _require_same_length(x, y)
    return SeqVector(x.entries + y.entries)


def scale(c: complex, x: SeqVector) -> SeqVector:
    """Scalar multiple c * x."""
    return SeqVector(complex(c) * x.entries)


def indicator(index_set: Iterable[int], n: int) -> SeqVector:
    """0/1 vector of length ``n`` supported exactly on ``index_set``."""
    out = np.zeros(n, dtype=np.complex128)
    for idx in index_set:
        if not 0 <= idx < n:
            raise SemanticError(f"indicator index {idx} out of range for length {n}")
        out[idx] = 1.0
    return SeqVector(out)


def basis_vector(beta: int, n: int) -> SeqVector:
    """Standard basis vector supported at index ``beta``."""
    return indicator((beta,), n)


def coord(x: SeqVector, alpha: int) -> complex:
    """Entry of ``x`` at index ``alpha``."""
    if not 0 <= alpha < len(x):
        raise SemanticError(f"coordinate {alpha} out of range for length {len(x)}")
    return complex(x.entries[alpha])


def random_vector(n: int, rng: np.random.Generator) -> SeqVector:
    """Vector with independent standard complex normal entries."""
    raw = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return SeqVector(raw / math.sqrt(2.0))
