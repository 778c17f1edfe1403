"""Exception types shared across the package."""


class ZeroVector(ValueError):
    """All-zero coordinates where a projective point was expected."""


class NotOnSurface(ValueError):
    """Coordinates do not satisfy both defining quadrics."""


class BadInput(ValueError):
    """Argument violates a documented precondition."""


class BoundTooLarge(ValueError):
    """Requested height bound exceeds the method's ceiling."""


class MismatchError(AssertionError):
    """The two independent counters disagree.

    Carries the smallest failing bound and a sample of the symmetric
    difference of the two point sets.
    """

    def __init__(self, B, brute_only, fiber_only):
        self.B = B
        self.brute_only = list(brute_only)
        self.fiber_only = list(fiber_only)
        super().__init__(
            f"count mismatch at B={B}: "
            f"{len(self.brute_only)} brute-only, {len(self.fiber_only)} fiber-only; "
            f"samples {self.brute_only[:4]} vs {self.fiber_only[:4]}"
        )


class NotADivisor(ValueError):
    """Claimed divisor does not divide the target invariant."""


class SingularForm(ValueError):
    """Diagonal quadratic form has a vanishing determinant."""


class DegenerateModulus(ValueError):
    """Polynomial vanishes identically modulo a prime factor of the modulus."""


class BadForm(ValueError):
    """Binary form fails the nonzero-leading-coefficient requirement."""


class ZeroValue(ValueError):
    """Polynomial value hit zero where a divisor count was required."""
