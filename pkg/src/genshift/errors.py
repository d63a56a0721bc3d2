"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: ``ParseError`` means the
input document could not be understood (exit 2), ``SemanticError`` and
its subclasses mean the document parsed but violates a domain invariant
(exit 3).
"""

from __future__ import annotations


class GenshiftError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GenshiftError, ValueError):
    """Input is not valid JSON or does not match the expected schema."""


class SemanticError(GenshiftError, ValueError):
    """Well-formed input violating a domain invariant (range, finiteness, ...)."""


class DimensionMismatchError(SemanticError):
    """Operands of an operation do not share the required dimension."""


class NotADerivationError(SemanticError):
    """Auxiliary operator fails the side condition a generalized check requires."""
