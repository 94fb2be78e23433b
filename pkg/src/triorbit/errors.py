"""Exception types shared across the package.

Every error that a caller is expected to catch has a dedicated class here;
internal logic errors use plain assertions instead.
"""


class TriOrbitError(Exception):
    """Base class for all package errors."""


class NonPrimeModulus(TriOrbitError, ValueError):
    """The requested field modulus is not prime."""


class ZeroInverse(TriOrbitError, ZeroDivisionError):
    """Multiplicative inverse of zero was requested."""


class DimensionMismatch(TriOrbitError, ValueError):
    """Operands have incompatible dimensions or fields."""


class SingularMatrix(TriOrbitError, ValueError):
    """Inverse of a non-unit triangular matrix was requested."""


class IndexOutOfRange(TriOrbitError, IndexError):
    """A 1-based matrix index lies outside [1, n]."""


class BudgetExceeded(TriOrbitError, ValueError):
    """An exhaustive enumeration would exceed the configured cap."""


class NotFree(TriOrbitError, ValueError):
    """The pair does not generate a free cyclic submodule."""


class NotAUnit(TriOrbitError, ValueError):
    """A unit of the triangular ring was required."""


class NotInvertible(TriOrbitError, ValueError):
    """The 2x2 block matrix fails the invertibility criterion."""


class UnsupportedDimension(TriOrbitError, ValueError):
    """The dimension lies outside the supported range (n >= 2)."""


class PivotSelectionFailed(TriOrbitError, ValueError):
    """No admissible pivot column exists; the input violates a precondition."""


class SingularSystem(TriOrbitError, ValueError):
    """A linear system that should be uniquely solvable is singular."""


class CanonicalizationFailed(TriOrbitError, RuntimeError):
    """The reduction search exhausted its budget without reaching canonical shape."""


class NotCanonical(TriOrbitError, ValueError):
    """A canonical-form pair was required."""


class InvalidPartition(TriOrbitError, ValueError):
    """The blocks do not form a partition of {1..n}."""


class VerificationFailed(TriOrbitError, RuntimeError):
    """Exhaustive classification check found a counterexample.

    The offending report is attached as ``report``.
    """

    def __init__(self, report):
        self.report = report
        failed = [name for name, ok in report.verdicts.items() if not ok]
        super().__init__("verification failed: " + ", ".join(failed))
