"""Exception types shared across the library."""


class AeskitError(Exception):
    """Base class for all library-specific failures."""


class NonConvergent(AeskitError):
    """A power series failed to reach tolerance within the term budget."""


class InvalidRep(AeskitError):
    """Representation label is not a half-integer >= 1/2."""


class InvalidQuantumNumber(AeskitError):
    """Eigenvalue label outside the admissible set for the representation."""


class ZeroWeight(AeskitError):
    """All three weight components vanish; no algebra element defined."""


class BranchUnavailable(AeskitError):
    """A closed-form expression is only defined on the general-case branch."""


class OutsideUnitDisk(AeskitError):
    """Coherent-state amplitude must satisfy |zeta| < 1."""


class ClassMismatch(AeskitError):
    """Eigenvalue label inconsistent with the weight's spectrum class."""


class ForbiddenRegion(AeskitError):
    """Weight has no normalizable eigenstates."""


class TruncationInsufficient(AeskitError):
    """Basis truncation could not certify the requested tail bound."""


class NoConvergence(AeskitError):
    """Root-finding iteration exhausted its budget."""


class FullRank(AeskitError):
    """Matrix has no numerically small pivot; null space is trivial."""


class NotHermitian(AeskitError):
    """Operator fails the Hermiticity tolerance required for moments."""
