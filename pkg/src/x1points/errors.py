"""Exception types shared across the package.

Every error names the contract it violates; the CLI maps them to exit code 2.
"""


class X1PointsError(Exception):
    """Base class for all package errors."""


class ModulusMismatch(X1PointsError):
    """Operands live over different moduli."""


class NotInvertible(X1PointsError):
    """Determinant is not a unit mod n."""


class NonCoprimeModuli(X1PointsError):
    """CRT or Goursat input moduli share a prime factor."""


class CapExceeded(X1PointsError):
    """Group closure grew past the configured element cap.

    `partial_count` records how many elements were found before aborting.
    """

    def __init__(self, cap: int, partial_count: int):
        super().__init__(f"closure exceeded cap of {cap} elements ({partial_count} found)")
        self.cap = cap
        self.partial_count = partial_count


class StageTooLow(X1PointsError):
    """Level detection attempted below the minimal stage (1 for odd primes, 2 for 2)."""


class HypothesisFailed(X1PointsError):
    """A per-prime full-preimage hypothesis of level composition failed."""

    def __init__(self, prime: int, detail: str = ""):
        msg = f"full-preimage hypothesis failed at prime {prime}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.prime = prime


class OrderMismatch(X1PointsError):
    """A torsion vector does not have the exact order the operation requires."""


class PreconditionFailed(X1PointsError):
    """Numeric precondition of a certificate constructor does not hold."""


class InconsistentProfile(X1PointsError):
    """A declared Galois-image profile is impossible (e.g. Borel at both 17 and 37)."""
