"""SU(2) algebra eigenstates as finite amplitude vectors over |j, m>.

An algebra eigenstate is a solution of

    (beta1 J1 + beta2 J2 + beta3 J3) |psi> = lambda |psi>

for a complex weight vector beta. With b = sqrt(beta1^2+beta2^2+beta3^2)
nonzero the spectrum is the symmetric ladder lambda = m0 b, m0 = -j..j,
and the eigenstates expand in Jacobi polynomials of x = beta3/b. The b = 0
weights have the single eigenvalue 0 and their eigenstates are standard
coherent states. Moments of J3 and the normalization factor admit closed
forms; everything constructed here is cross-checked against brute-force
matrix oracles in aeskit.oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lgamma

import numpy as np

from . import specfun
from .errors import BranchUnavailable, InvalidQuantumNumber, InvalidRep, ZeroWeight
from .spectrum import SpectrumClass

# Relative threshold deciding special-case dispatch: a derived quantity
# counts as zero when it is this small compared to the weight scale.
ZERO_TOL = 1e-13

# general-case branch labels
BRANCH_GENERAL = "general"
BRANCH_BETA_PLUS_ZERO = "beta-plus-zero"
BRANCH_DEGENERATE_CS = "degenerate-cs"
BRANCH_LOWEST = "lowest-weight"
BRANCH_HIGHEST = "highest-weight"


def check_rep(j: float) -> int:
    """Validate a representation label; returns 2j as an exact integer."""
    two_j = int(round(2 * float(j)))
    if abs(2 * float(j) - two_j) > 1e-12 or two_j < 1:
        raise InvalidRep(f"j must be a half-integer >= 1/2, got {j!r}")
    return two_j


def m_values(j: float) -> np.ndarray:
    """The magnetic quantum numbers -j, -j+1, ..., j as exact floats."""
    two_j = check_rep(j)
    return (np.arange(two_j + 1) * 2 - two_j) / 2.0


def _check_m0(j: float, m0: float) -> float:
    two_j = check_rep(j)
    two_m0 = round(2 * float(m0))
    if abs(2 * float(m0) - two_m0) > 1e-12 or (two_j + two_m0) % 2 or abs(two_m0) > two_j:
        raise InvalidQuantumNumber(f"m0 = {m0!r} not in {{-j, ..., j}} for j = {j}")
    return two_m0 / 2.0


@dataclass(frozen=True)
class Su2Weight:
    """Complex weight vector (beta1, beta2, beta3) and derived quantities.

    b is the principal square root of beta1^2+beta2^2+beta3^2; the sign
    ambiguity only relabels m0 <-> -m0. tau_plus/tau_minus are the roots
    controlling the analytic structure; on the branches where their
    defining ratios degenerate (beta_minus = 0) they are replaced by their
    finite limits so the general expansion machinery keeps working.
    """

    beta1: complex
    beta2: complex
    beta3: complex

    def __post_init__(self):
        object.__setattr__(self, "beta1", complex(self.beta1))
        object.__setattr__(self, "beta2", complex(self.beta2))
        object.__setattr__(self, "beta3", complex(self.beta3))

    @cached_property
    def scale(self) -> float:
        return max(abs(self.beta1), abs(self.beta2), abs(self.beta3))

    @property
    def is_zero(self) -> bool:
        return self.scale == 0.0

    @cached_property
    def beta_plus(self) -> complex:
        return (self.beta1 + 1j * self.beta2) / 2.0

    @cached_property
    def beta_minus(self) -> complex:
        return (self.beta1 - 1j * self.beta2) / 2.0

    @cached_property
    def b_squared(self) -> complex:
        return self.beta1**2 + self.beta2**2 + self.beta3**2

    @cached_property
    def b(self) -> complex:
        return complex(np.sqrt(complex(self.b_squared)))

    # dispatch predicates; b is tested through b^2 because that is the
    # directly computed quantity (rounding turns an exact zero into
    # ~eps*scale^2, far above any threshold on b itself)
    @cached_property
    def b_is_zero(self) -> bool:
        return abs(self.b_squared) < ZERO_TOL * self.scale**2

    @cached_property
    def beta_plus_is_zero(self) -> bool:
        return abs(self.beta_plus) < ZERO_TOL * self.scale

    @cached_property
    def beta_minus_is_zero(self) -> bool:
        return abs(self.beta_minus) < ZERO_TOL * self.scale

    @cached_property
    def branch(self) -> str:
        if self.is_zero:
            raise ZeroWeight("weight vector is identically zero")
        if self.b_is_zero:
            if self.beta_minus_is_zero:
                return BRANCH_LOWEST
            if self.beta_plus_is_zero:
                return BRANCH_HIGHEST
            return BRANCH_DEGENERATE_CS
        if self.beta_plus_is_zero:
            return BRANCH_BETA_PLUS_ZERO
        return BRANCH_GENERAL

    @cached_property
    def _tau_pair(self) -> tuple[complex, complex]:
        """(tau_plus, tau_minus) = 2*beta_minus / (beta3 +/- b) with limits.

        The denominators are rebalanced through (beta3+b)(beta3-b) =
        -(beta1^2+beta2^2) so that the nearly cancelling one is obtained
        from the product, and the beta_minus = 0 limit assigns {0, -kappa}
        according to the sign of x = beta3/b.
        """
        if self.branch != BRANCH_GENERAL:
            raise BranchUnavailable(f"tau pair undefined on branch {self.branch!r}")
        if self.beta_minus_is_zero:
            kap = self.kappa
            if abs(self.x - 1.0) < abs(self.x + 1.0):
                return 0j, -kap
            return kap, 0j
        num = 2.0 * self.beta_minus
        prod = -(self.beta1**2 + self.beta2**2)
        dp = self.beta3 + self.b
        dm = self.beta3 - self.b
        if abs(dp) >= abs(dm):
            dm = prod / dp
        else:
            dp = prod / dm
        return num / dp, num / dm

    @property
    def tau_plus(self) -> complex:
        if self.branch == BRANCH_BETA_PLUS_ZERO:
            return self.beta1 / self.beta3
        return self._tau_pair[0]

    @property
    def tau_minus(self) -> complex:
        return self._tau_pair[1]

    @cached_property
    def kappa(self) -> complex:
        """tau_plus - tau_minus = 2 b / (beta1 + i beta2)."""
        return self.b / self.beta_plus

    @cached_property
    def x(self) -> complex:
        return self.beta3 / self.b

    @cached_property
    def t(self) -> float:
        return abs(self.kappa) ** 2

    @cached_property
    def s_plus(self) -> float:
        return 1.0 + abs(self.tau_minus) ** 2

    @cached_property
    def s_minus(self) -> float:
        return 1.0 + abs(self.tau_plus) ** 2

    @cached_property
    def Y(self) -> float:
        return self.s_plus * self.s_minus - self.s_plus - self.s_minus

    @cached_property
    def Z(self) -> float:
        sp, sm = self.s_plus, self.s_minus
        return sp**2 * (1.0 - sm) + sm**2 * (1.0 - sp)

    @cached_property
    def h(self) -> float:
        """|tau_minus|^2, the squeezing ratio on |tau_plus tau_minus| = 1 weights."""
        return abs(self.tau_minus) ** 2

    @cached_property
    def tau_degenerate(self) -> complex:
        """tau = 2 beta_minus / beta3 on the b = 0 branch."""
        return 2.0 * self.beta_minus / self.beta3


@dataclass(frozen=True)
class Su2State:
    """Unit vector over the |j, m> basis, m = -j..j in increasing order."""

    j: float
    amplitudes: np.ndarray

    def __post_init__(self):
        two_j = check_rep(self.j)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (two_j + 1,):
            raise ValueError(f"expected {two_j + 1} amplitudes for j = {self.j}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def m_values(self) -> np.ndarray:
        return m_values(self.j)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "Su2State") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Su2AesSolution:
    """One eigenstate of beta . J together with its exact metadata.

    norm_factor is the squared norm of the branch's canonical unnormalized
    expansion (the Jacobi-coefficient vector on the general branch); the
    stored state itself is unit-normalized with the first nonzero
    amplitude made real positive.
    """

    weight: Su2Weight
    m0: float | None
    lam: complex
    norm_factor: float
    state: Su2State
    spectrum_class: SpectrumClass = SpectrumClass.DISCRETE_SU2


def _phase_fixed(amps: np.ndarray) -> np.ndarray:
    """Unit-normalize and rotate the first nonzero amplitude to be real > 0."""
    nrm = np.linalg.norm(amps)
    if nrm == 0:
        raise ValueError("cannot normalize a zero vector")
    out = amps / nrm
    idx = np.flatnonzero(np.abs(out) > 1e-14)
    if idx.size:
        lead = out[idx[0]]
        out = out * (abs(lead) / lead)
    return out


def rep_matrices(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Matrices of J1, J2, J3 on the (2j+1)-dimensional representation.

    Ladder convention J+|j,m> = sqrt((j-m)(j+m+1)) |j,m+1>, J3 diagonal.
    """
    two_j = check_rep(j)
    ms = m_values(j)
    dim = two_j + 1
    jp = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - 1):
        m = ms[i]
        jp[i + 1, i] = np.sqrt((j - m) * (j + m + 1.0))
    jm = jp.conj().T
    j1 = (jp + jm) / 2.0
    j2 = (jp - jm) / 2.0j
    j3 = np.diag(ms).astype(complex)
    return j1, j2, j3


def weight_matrix(j: float, weight: Su2Weight) -> np.ndarray:
    """Matrix of beta1 J1 + beta2 J2 + beta3 J3."""
    j1, j2, j3 = rep_matrices(j)
    return weight.beta1 * j1 + weight.beta2 * j2 + weight.beta3 * j3


def coherent_state(j: float, zeta: complex) -> Su2State:
    """Standard coherent state |j, zeta>.

    c_m = (1+|zeta|^2)^(-j) sqrt((2j)! / ((j+m)!(j-m)!)) zeta^(j+m),
    evaluated in log magnitude so large j and large |zeta| do not overflow.
    """
    check_rep(j)
    zeta = complex(zeta)
    ms = m_values(j)
    amps = np.zeros(ms.size, dtype=complex)
    az = abs(zeta)
    phase = zeta / az if az > 0 else 0j
    for i, m in enumerate(ms):
        n = int(round(j + m))
        if az == 0.0:
            amps[i] = 1.0 if n == 0 else 0.0
            continue
        logmag = (
            0.5 * (lgamma(2 * j + 1) - lgamma(j + m + 1) - lgamma(j - m + 1))
            + n * np.log(az)
            - j * np.log1p(az * az)
        )
        amps[i] = np.exp(logmag) * phase**n
    return Su2State(j, amps)


def coherent_overlap(j: float, zeta1: complex, zeta2: complex) -> complex:
    """Closed-form overlap <j,zeta1 | j,zeta2> of two coherent states."""
    check_rep(j)
    z1, z2 = complex(zeta1), complex(zeta2)
    two_j = int(round(2 * j))
    return (
        (1 + abs(z1) ** 2) ** (-j)
        * (1 + abs(z2) ** 2) ** (-j)
        * (1 + np.conj(z1) * z2) ** two_j
    )


def _general_raw_amplitudes(j: float, weight: Su2Weight, m0: float) -> np.ndarray:
    """Unnormalized Jacobi-expansion coefficients on the general branch.

    c_m = sqrt((j+m)!(j-m)!/(2j)!) P_{j+m}^{(m0-m, -m0-m)}(x) kappa^(j+m)
    """
    ms = m_values(j)
    x = weight.x
    kap = weight.kappa
    amps = np.empty(ms.size, dtype=complex)
    kap_pow = complex(1.0)
    for i, m in enumerate(ms):
        n = int(round(j + m))
        pref = np.exp(0.5 * (lgamma(j + m + 1) + lgamma(j - m + 1) - lgamma(2 * j + 1)))
        amps[i] = pref * specfun.jacobi_p(n, m0 - m, -m0 - m, x) * kap_pow
        kap_pow *= kap
    return amps


def _beta_plus_zero_raw_amplitudes(j: float, weight: Su2Weight, m0: float) -> np.ndarray:
    """Coefficients of zeta^(j+m0) (1 - tau zeta)^(j-m0), tau = beta1/beta3.

    c_m = sqrt((j+m)!/(j-m)!) (-tau)^(m-m0) / (m-m0)!  for m >= m0.
    """
    ms = m_values(j)
    tau = weight.tau_plus
    amps = np.zeros(ms.size, dtype=complex)
    for i, m in enumerate(ms):
        if m < m0 - 1e-9:
            continue
        s = int(round(m - m0))
        logmag = 0.5 * (lgamma(j + m + 1) - lgamma(j - m + 1)) - lgamma(s + 1)
        amps[i] = np.exp(logmag) * (-tau) ** s
    return amps


def solve_aes(j: float, weight: Su2Weight, m0: float | None = None) -> Su2AesSolution:
    """Construct the algebra eigenstate of weight . J with label m0.

    Dispatch: general branch (b != 0, beta_plus != 0) uses the Jacobi
    expansion; beta_plus = 0 with beta3 != 0 uses the truncated binomial
    expansion starting at m = m0; b = 0 ignores m0, forces lambda = 0 and
    returns the standard coherent state with zeta0 = -2 beta_minus / beta3
    (collapsing to |j,-j> or |j,j> when the weight is a pure ladder
    operator).
    """
    check_rep(j)
    branch = weight.branch

    if branch in (BRANCH_LOWEST, BRANCH_HIGHEST, BRANCH_DEGENERATE_CS):
        if branch == BRANCH_LOWEST:
            state = coherent_state(j, 0.0)
            norm_factor = 1.0
        elif branch == BRANCH_HIGHEST:
            amps = np.zeros(int(round(2 * j)) + 1, dtype=complex)
            amps[-1] = 1.0
            state = Su2State(j, amps)
            norm_factor = 1.0
        else:
            zeta0 = -weight.tau_degenerate
            state = Su2State(j, _phase_fixed(coherent_state(j, zeta0).amplitudes))
            norm_factor = (1.0 + abs(zeta0) ** 2) ** (2 * j)
        return Su2AesSolution(weight, None, 0j, float(norm_factor), state)

    if m0 is None:
        raise InvalidQuantumNumber("m0 is required when b != 0")
    m0 = _check_m0(j, m0)

    if branch == BRANCH_BETA_PLUS_ZERO:
        raw = _beta_plus_zero_raw_amplitudes(j, weight, m0)
        lam = m0 * weight.beta3
        tau = weight.tau_plus
        norm_factor = np.exp(lgamma(j + m0 + 1) - lgamma(j - m0 + 1)) * complex(
            specfun.jacobi_p(int(round(j - m0)), 0.0, 2 * m0, 2 * abs(tau) ** 2 + 1.0)
        )
    else:
        raw = _general_raw_amplitudes(j, weight, m0)
        lam = m0 * weight.b
        norm_factor = normalization(j, weight, m0)

    return Su2AesSolution(
        weight, m0, complex(lam), float(np.real(norm_factor)), Su2State(j, _phase_fixed(raw))
    )


def spectrum(j: float, weight: Su2Weight) -> list[complex]:
    """All eigenvalues of weight . J: {m0 b} for b != 0, else {0}."""
    check_rep(j)
    if weight.is_zero:
        raise ZeroWeight("weight vector is identically zero")
    if weight.b_is_zero:
        return [0j]
    return [complex(m0 * weight.b) for m0 in m_values(j)]


def normalization(j: float, weight: Su2Weight, m0: float) -> float:
    """Closed-form normalization factor on the general branch.

    N = (-1)^(j-|m0|) Sp^(j+m0) Sm^(j-m0) (j+m0)!(j-m0)!/(2j)!
        * P_{j-|m0|}^{(-2j-1, 0)}(1 - 2t/(Sp Sm))

    equal to the finite series sum_n n!(2j-n)!/(2j)! |P_n(x)|^2 t^n, i.e.
    the squared norm of the unnormalized Jacobi expansion. Raises
    BranchUnavailable off the general branch, where the special-case
    expansions carry their own closed norms.
    """
    check_rep(j)
    m0 = _check_m0(j, m0)
    if weight.branch != BRANCH_GENERAL:
        raise BranchUnavailable(
            f"closed normalization needs the general branch, weight is {weight.branch!r}"
        )
    sp, sm, t = weight.s_plus, weight.s_minus, weight.t
    deg = int(round(j - abs(m0)))
    value = (
        (-1.0) ** deg
        * sp ** (j + m0)
        * sm ** (j - m0)
        * np.exp(lgamma(j + m0 + 1) + lgamma(j - m0 + 1) - lgamma(2 * j + 1))
        * specfun.jacobi_p(deg, -2 * j - 1, 0.0, 1.0 - 2.0 * t / (sp * sm))
    )
    return float(np.real(value))


def normalization_series(j: float, weight: Su2Weight, m0: float) -> float:
    """Direct finite-sum normalization: sum_n n!(2j-n)!/(2j)! |P_n|^2 t^n."""
    check_rep(j)
    m0 = _check_m0(j, m0)
    x, t = weight.x, weight.t
    total = 0.0
    for n in range(int(round(2 * j)) + 1):
        w = np.exp(lgamma(n + 1) + lgamma(2 * j - n + 1) - lgamma(2 * j + 1))
        p = specfun.jacobi_p(n, j + m0 - n, j - m0 - n, x)
        total += w * abs(p) ** 2 * t**n
    return total


def normalization_f21(j: float, m0: float, t: float, s_plus: float, s_minus: float) -> complex:
    """Hypergeometric form of the closed normalization.

    N = Sp^(j+m0) Sm^(j-m0) F(-(j-m0), -(j+m0); -2j; t/(Sp Sm)), written as
    a pure function of scalar parameters so it can be evaluated at formal
    substitutions (the SU(1,1) interchange j -> -k, m0 -> r, t -> -t).
    """
    z = t / (s_plus * s_minus)
    f = specfun.gauss_2f1_continued(-(j - m0), -(j + m0), -2.0 * j, z)
    return complex(s_plus ** (j + m0) * s_minus ** (j - m0) * f)


def moments_closed(
    j: float, m0: float, t: float, s_plus: float, s_minus: float, omega_term: complex
) -> tuple[complex, complex]:
    """Closed-form (<J3>, variance) from scalar parameters.

    omega_term is the combination (j+|m0|) * Omega with Omega the Jacobi
    ratio P^{(-2j,1)}_{j-|m0|-1} / P^{(-2j-1,0)}_{j-|m0|}; passing it as one
    argument keeps the formula valid under the SU(1,1) interchange, which
    replaces the whole product.
    """
    sp, sm = s_plus, s_minus
    y = sp * sm - sp - sm
    z = sp**2 * (1.0 - sm) + sm**2 * (1.0 - sp)
    mean = (j * y + m0 * (sp - sm)) / (sp * sm) - omega_term * y * t / (sp**2 * sm**2)
    var = (
        (j + m0) * (sp - 1.0) / sp**2
        + (j - m0) * (sm - 1.0) / sm**2
        + (j**2 - m0**2) * y**2 * t / ((sp * sm - t) * sp**2 * sm**2)
        + omega_term * t / (sp**3 * sm**3) * (sp * sm * y**2 / (sp * sm - t) + 2 * j * y**2 + z)
        - omega_term**2 * y**2 * t**2 / (sp**4 * sm**4)
    )
    return mean, var


def _omega(j: float, m0: float, t: float, s_plus: float, s_minus: float) -> float:
    deg = int(round(j - abs(m0)))
    if deg == 0:
        return 0.0
    arg = 1.0 - 2.0 * t / (s_plus * s_minus)
    num = specfun.jacobi_p(deg - 1, -2 * j, 1.0, arg)
    den = specfun.jacobi_p(deg, -2 * j - 1, 0.0, arg)
    return float(np.real(num / den))


def j3_moments(j: float, weight: Su2Weight, m0: float | None = None) -> tuple[float, float]:
    """Mean and variance of J3 over the eigenstate labelled m0.

    General branch: exact closed formulas driven by the Jacobi ratio Omega
    (zero at |m0| = j, recovering the coherent-state moments), switching to
    the simplified |tau+ tau-| = 1 forms when Y vanishes. Off the general
    branch the moments are summed directly over the constructed amplitudes,
    which is exact for these finite expansions.
    """
    check_rep(j)
    if weight.branch == BRANCH_GENERAL:
        m0 = _check_m0(j, m0)
        sp, sm, t = weight.s_plus, weight.s_minus, weight.t
        om = _omega(j, m0, t, sp, sm)
        if abs(weight.Y) < 1e-12 * sp * sm:
            h = weight.h
            mean = (h - 1.0) / (h + 1.0) * m0
            var = 2 * j * h / (h + 1.0) ** 2 - 2 * (j + abs(m0)) * h**2 * t / (h + 1.0) ** 4 * om
            return float(mean), float(var)
        mean, var = moments_closed(j, m0, t, sp, sm, (j + abs(m0)) * om)
        return float(np.real(mean)), float(np.real(var))
    sol = solve_aes(j, weight, m0)
    probs = np.abs(sol.state.amplitudes) ** 2
    ms = sol.state.m_values
    mean = float(np.sum(ms * probs))
    var = float(np.sum(ms**2 * probs) - mean**2)
    return mean, var


# intelligent-state families: weight vectors whose eigenstates saturate the
# uncertainty relation for the given generator pair
IS_FAMILIES_SU2 = ("generalized", "j1j2", "j1j3", "j2j3")

_IS_PAIR_SU2 = {
    "generalized": (0, 1),
    "j1j2": (0, 1),
    "j1j3": (0, 2),
    "j2j3": (1, 2),
}


def intelligent_weight_su2(family: str, param: complex) -> Su2Weight:
    """Weight vector of an intelligent-state family.

    generalized: (eta, -i, 0) with complex eta (equality in the
    Schroedinger-Robertson relation for J1, J2); j1j2 / j1j3 / j2j3:
    (1, i gamma, 0), (1, 0, i gamma), (0, 1, i gamma) with real gamma
    (equality in the Heisenberg relation, vanishing covariance). All
    parameters are admissible; eta = +/-1 and gamma = +/-1 collapse to the
    degenerate b = 0 branch where the eigenstates are single basis or
    coherent states.
    """
    if family == "generalized":
        eta = complex(param)
        return Su2Weight(eta, -1j, 0.0)
    gamma = float(np.real(param))
    if family == "j1j2":
        return Su2Weight(1.0, 1j * gamma, 0.0)
    if family == "j1j3":
        return Su2Weight(1.0, 0.0, 1j * gamma)
    if family == "j2j3":
        return Su2Weight(0.0, 1.0, 1j * gamma)
    raise ValueError(f"unknown family {family!r}; expected one of {IS_FAMILIES_SU2}")


def intelligent_pair_su2(family: str) -> tuple[int, int]:
    """Indices into rep_matrices(j) of the generator pair a family saturates."""
    try:
        return _IS_PAIR_SU2[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {IS_FAMILIES_SU2}") from None
