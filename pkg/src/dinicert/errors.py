"""Exception types shared across the library.

The CLI maps these onto its exit-code contract: DomainError is a
validation failure (exit 2), NumericFailure a numeric one (exit 3).
"""


class DomainError(ValueError):
    """An input lies outside the documented domain of an operation."""


class NumericFailure(RuntimeError):
    """A numeric procedure could not produce or certify its result."""


class PoleError(NumericFailure):
    """The criterion denominator D_{a,nu}(1) vanishes, i.e. some Dini zero
    sits exactly at radius 1 and the sum criterion is ill-posed."""
