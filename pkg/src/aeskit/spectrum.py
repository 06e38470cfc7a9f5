"""Spectrum classification tags for algebra eigenstates."""

from enum import Enum


class SpectrumClass(Enum):
    """How the admissible eigenvalues of a weight vector are structured.

    SU(2) weights always fall in DISCRETE_SU2 (or collapse to a single
    coherent state when the quadratic invariant vanishes). SU(1,1) weights
    split into a continuous class, two discrete equidistant classes, a
    forbidden region without normalizable eigenstates, and degenerate
    (vanishing invariant) variants of the same trichotomy.
    """

    DISCRETE_SU2 = "discrete-su2"
    CONTINUOUS_SU11 = "continuous"
    DISCRETE_POSITIVE = "discrete-positive"
    DISCRETE_NEGATIVE = "discrete-negative"
    FORBIDDEN = "forbidden"
    DEGENERATE_CONTINUOUS = "degenerate-continuous"
    DEGENERATE_NO_EIGENSTATE = "degenerate-no-eigenstate"
    BOUNDARY_SPECIAL_CASE = "boundary-special-case"

    @property
    def admissible(self) -> bool:
        """True if states can be constructed for this class."""
        return self not in (
            SpectrumClass.FORBIDDEN,
            SpectrumClass.DEGENERATE_NO_EIGENSTATE,
        )

    @property
    def discrete(self) -> bool:
        """True if the eigenvalue label is a nonnegative integer l."""
        return self in (
            SpectrumClass.DISCRETE_SU2,
            SpectrumClass.DISCRETE_POSITIVE,
            SpectrumClass.DISCRETE_NEGATIVE,
            SpectrumClass.BOUNDARY_SPECIAL_CASE,
        )
