"""SU(1,1) discrete-series algebra eigenstates on a truncated |k, n> basis.

The eigenvalue problem

    (beta1 K1 + beta2 K2 + beta3 K3) |psi> = lambda |psi>

has a much richer structure than its compact SU(2) counterpart. With
b = sqrt(beta3^2 - beta1^2 - beta2^2) nonzero, the moduli of
tau_pm = (beta1 - i beta2)/(beta3 +/- b) split the parameter space into a
continuous class (both inside the unit circle, lambda unrestricted), two
discrete equidistant classes lambda = +/-(k+l) b, and a forbidden region
with no normalizable eigenstates. The b = 0 weights are either continuous
(|tau| < 1, Laguerre expansions; pure lowering weights give the
Barut-Girardello states) or have no eigenstate at all (pure raising).

States are carried as truncated amplitude vectors with a certified tail
bound; every construction is checked downstream against truncated-matrix
residual oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lgamma

import numpy as np
from scipy.special import gammaln

from . import specfun
from .errors import (
    BranchUnavailable,
    ClassMismatch,
    ForbiddenRegion,
    InvalidQuantumNumber,
    InvalidRep,
    OutsideUnitDisk,
    TruncationInsufficient,
    ZeroWeight,
)
from .spectrum import SpectrumClass

ZERO_TOL = 1e-13
BOUNDARY_TOL = 1e-12
TAIL_TARGET = 1e-10
DEFAULT_TRUNCATION = 256
MAX_TRUNCATION = 1 << 14

BRANCH_GENERAL = "general"
BRANCH_BETA_PLUS_ZERO = "beta-plus-zero"
BRANCH_DEGENERATE = "degenerate"
BRANCH_PURE_RAISING = "pure-raising"
BRANCH_PURE_LOWERING = "pure-lowering"


def check_rep(k: float) -> int:
    """Validate a discrete-series label; returns 2k as an exact integer."""
    two_k = int(round(2 * float(k)))
    if abs(2 * float(k) - two_k) > 1e-12 or two_k < 1:
        raise InvalidRep(f"k must be a half-integer >= 1/2, got {k!r}")
    return two_k


@dataclass(frozen=True)
class Su11Weight:
    """Complex weight (beta1, beta2, beta3) with its derived quantities.

    Same layout as the SU(2) weight but with the non-compact invariant
    b^2 = beta3^2 - beta1^2 - beta2^2 and S_pm = 1 - |tau_mp|^2 (which can
    be arbitrarily negative). tau on the degenerate branch is
    2 beta_minus / beta3.
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
        return self.beta3**2 - self.beta1**2 - self.beta2**2

    @cached_property
    def b(self) -> complex:
        return complex(np.sqrt(complex(self.b_squared)))

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
            if self.beta_plus_is_zero:
                return BRANCH_PURE_RAISING
            if self.beta_minus_is_zero:
                return BRANCH_PURE_LOWERING
            return BRANCH_DEGENERATE
        if self.beta_plus_is_zero:
            return BRANCH_BETA_PLUS_ZERO
        return BRANCH_GENERAL

    @cached_property
    def _tau_pair(self) -> tuple[complex, complex]:
        """(tau_plus, tau_minus) with stabilized denominators and limits.

        (beta3+b)(beta3-b) = beta1^2 + beta2^2 rebalances the cancelling
        denominator; the beta_minus = 0 limit assigns {0, -kappa} by the
        sign of x = beta3/b.
        """
        if self.branch != BRANCH_GENERAL:
            raise BranchUnavailable(f"tau pair undefined on branch {self.branch!r}")
        if self.beta_minus_is_zero:
            kap = self.kappa
            if abs(self.x - 1.0) < abs(self.x + 1.0):
                return 0j, -kap
            return kap, 0j
        num = 2.0 * self.beta_minus
        prod = self.beta1**2 + self.beta2**2
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
        """tau_plus - tau_minus = -2 b / (beta1 + i beta2)."""
        return -self.b / self.beta_plus

    @cached_property
    def x(self) -> complex:
        return self.beta3 / self.b

    @cached_property
    def t(self) -> float:
        return abs(self.kappa) ** 2

    @cached_property
    def s_plus(self) -> float:
        return 1.0 - abs(self.tau_minus) ** 2

    @cached_property
    def s_minus(self) -> float:
        return 1.0 - abs(self.tau_plus) ** 2

    @cached_property
    def Y(self) -> float:
        return self.s_plus * self.s_minus - self.s_plus - self.s_minus

    @cached_property
    def Z(self) -> float:
        sp, sm = self.s_plus, self.s_minus
        return sp**2 * (1.0 - sm) + sm**2 * (1.0 - sp)

    @cached_property
    def h(self) -> float:
        return abs(self.tau_minus) ** 2

    @cached_property
    def tau_degenerate(self) -> complex:
        """tau = 2 beta_minus / beta3 on the b = 0 branch (0 for pure K-)."""
        if self.beta_minus_is_zero:
            return 0j
        return 2.0 * self.beta_minus / self.beta3


@dataclass(frozen=True)
class Su11State:
    """Truncated unit vector over |k, n>, n = 0..N, with a tail certificate.

    tail_bound estimates the squared-norm weight of the discarded n > N
    amplitudes relative to the kept ones (geometric ratio bound).
    """

    k: float
    amplitudes: np.ndarray
    tail_bound: float

    def __post_init__(self):
        check_rep(self.k)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a nonempty vector")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def truncation(self) -> int:
        return self.amplitudes.size - 1

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.amplitudes.size)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "Su11State") -> complex:
        """<self|other>, aligning truncations by zero-padding."""
        n = max(self.amplitudes.size, other.amplitudes.size)
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: self.amplitudes.size] = self.amplitudes
        b[: other.amplitudes.size] = other.amplitudes
        return complex(np.vdot(a, b))


@dataclass(frozen=True)
class Su11AesSolution:
    """One SU(1,1) eigenstate with its label, class, and norm metadata.

    Exactly one of l (discrete classes) and lam-as-given (continuous
    classes) acts as the label; r = lambda / b where b is nonzero.
    norm_factor is the squared norm of the branch's canonical unnormalized
    expansion.
    """

    weight: Su11Weight
    l: int | None
    lam: complex
    r: complex | None
    norm_factor: float
    state: Su11State
    spectrum_class: SpectrumClass


@dataclass(frozen=True)
class BgState:
    """Eigenstate of the lowering operator K- with eigenvalue z."""

    k: float
    z: complex
    state: Su11State


def _phase_fixed(amps: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(amps)
    if nrm == 0:
        raise ValueError("cannot normalize a zero vector")
    out = amps / nrm
    idx = np.flatnonzero(np.abs(out) > 1e-14)
    if idx.size:
        lead = out[idx[0]]
        out = out * (abs(lead) / lead)
    return out


def _tail_ratio_bound(amps: np.ndarray, ratio_hint: float) -> float:
    """Relative tail estimate from the trailing amplitude decay ratios.

    Uses the larger of the measured trailing |c_{n+1}/c_n| and the known
    asymptotic ratio; returns inf when no contraction can be certified.
    """
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    if norm_sq == 0:
        return np.inf
    mags = np.abs(amps)
    window = mags[-13:]
    measured = 0.0
    for i in range(window.size - 1):
        if window[i] > 0 and window[i + 1] > 0:
            measured = max(measured, window[i + 1] / window[i])
    rho = max(measured, ratio_hint)
    if not np.isfinite(rho) or rho >= 0.9999:
        return np.inf
    q = rho * rho
    return float(mags[-1] ** 2 * q / (1.0 - q) / norm_sq)


def classify(weight: Su11Weight) -> SpectrumClass:
    """Spectrum class of a weight vector.

    b != 0, beta_plus != 0: the unit-circle test on (|tau_plus|, |tau_minus|)
    gives continuous / discrete-positive / discrete-negative / forbidden.
    b != 0, beta_plus = 0: discrete boundary case, admissible only when
    |beta1/beta3| < 1. b = 0: no eigenstate for pure raising weights,
    otherwise continuous when |tau| < 1 and forbidden beyond. Moduli within
    1e-12 of the unit circle count as >= 1 (at best delta-normalizable).
    """
    branch = weight.branch
    if branch == BRANCH_PURE_RAISING:
        return SpectrumClass.DEGENERATE_NO_EIGENSTATE
    if branch in (BRANCH_DEGENERATE, BRANCH_PURE_LOWERING):
        if abs(weight.tau_degenerate) < 1.0 - BOUNDARY_TOL:
            return SpectrumClass.DEGENERATE_CONTINUOUS
        return SpectrumClass.FORBIDDEN
    if branch == BRANCH_BETA_PLUS_ZERO:
        if abs(weight.tau_plus) < 1.0 - BOUNDARY_TOL:
            return SpectrumClass.BOUNDARY_SPECIAL_CASE
        return SpectrumClass.FORBIDDEN
    ap = abs(weight.tau_plus)
    am = abs(weight.tau_minus)
    plus_inside = ap < 1.0 - BOUNDARY_TOL
    minus_inside = am < 1.0 - BOUNDARY_TOL
    if plus_inside and minus_inside:
        return SpectrumClass.CONTINUOUS_SU11
    if plus_inside:
        return SpectrumClass.DISCRETE_POSITIVE
    if minus_inside:
        return SpectrumClass.DISCRETE_NEGATIVE
    return SpectrumClass.FORBIDDEN


def boundary_diagnostic(weight: Su11Weight) -> str | None:
    """Note when a forbidden weight sits on the |tau| = 1 circle.

    Such weights (K1, K2, K1+K3, ...) have delta-normalizable improper
    eigenstates; no attempt is made to construct them.
    """
    if classify(weight) is not SpectrumClass.FORBIDDEN:
        return None
    branch = weight.branch
    if branch in (BRANCH_DEGENERATE, BRANCH_PURE_LOWERING):
        taus = [abs(weight.tau_degenerate)]
    elif branch == BRANCH_BETA_PLUS_ZERO:
        taus = [abs(weight.tau_plus)]
    else:
        taus = [abs(weight.tau_plus), abs(weight.tau_minus)]
    if any(abs(a - 1.0) <= BOUNDARY_TOL for a in taus):
        return (
            "weight lies on the |tau| = 1 boundary: eigenstates are at best "
            "delta-normalizable and are not constructed"
        )
    return None


def forbidden_reason(weight: Su11Weight) -> str:
    """Human-readable statement of which admissibility condition failed."""
    branch = weight.branch
    if branch == BRANCH_PURE_RAISING:
        return "pure raising weight: no eigenstate exists"
    if branch in (BRANCH_DEGENERATE, BRANCH_PURE_LOWERING):
        reason = f"degenerate weight with |tau| = {abs(weight.tau_degenerate):.6g} >= 1"
    elif branch == BRANCH_BETA_PLUS_ZERO:
        reason = f"beta_plus = 0 with |beta1/beta3| = {abs(weight.tau_plus):.6g} >= 1"
    else:
        reason = (
            f"|tau_plus| = {abs(weight.tau_plus):.6g} >= 1 and "
            f"|tau_minus| = {abs(weight.tau_minus):.6g} >= 1"
        )
    note = boundary_diagnostic(weight)
    base = f"{reason}: forbidden region, no normalizable eigenstates"
    return f"{base} ({note})" if note else base


def coherent_state_su11(k: float, zeta: complex, N: int = DEFAULT_TRUNCATION) -> Su11State:
    """Standard coherent state |k, zeta>, |zeta| < 1, truncated at N.

    c_n = (1-|zeta|^2)^k sqrt(Gamma(2k+n)/(n! Gamma(2k))) zeta^n with a
    geometric tail bound from the amplitude ratio.
    """
    check_rep(k)
    zeta = complex(zeta)
    az = abs(zeta)
    if az >= 1.0:
        raise OutsideUnitDisk(f"|zeta| = {az} >= 1")
    ns = np.arange(N + 1)
    if az == 0.0:
        amps = np.zeros(N + 1, dtype=complex)
        amps[0] = 1.0
        return Su11State(k, amps, 0.0)
    logmag = (
        k * np.log1p(-az * az)
        + 0.5 * (gammaln(2 * k + ns) - gammaln(ns + 1.0) - lgamma(2 * k))
        + ns * np.log(az)
    )
    phase = np.exp(1j * np.angle(zeta) * ns)
    amps = np.exp(logmag) * phase
    # ratio of |c_{n+1}/c_n| is |zeta| sqrt((2k+n)/(n+1)), decreasing, so the
    # value at n = N majorizes the tail
    q = az * az * (2 * k + N) / (N + 1.0)
    tail = np.inf if q >= 1.0 else float(np.exp(2 * logmag[-1]) * q / (1.0 - q))
    if tail > TAIL_TARGET:
        raise TruncationInsufficient(
            f"coherent state at |zeta| = {az} needs more than N = {N} basis states"
        )
    return Su11State(k, amps, tail)


def coherent_overlap_su11(k: float, zeta1: complex, zeta2: complex) -> complex:
    """Closed-form overlap <k,zeta1 | k,zeta2> of two unit-disk coherent states."""
    check_rep(k)
    z1, z2 = complex(zeta1), complex(zeta2)
    two_k = int(round(2 * k))
    return (
        (1 - abs(z1) ** 2) ** k
        * (1 - abs(z2) ** 2) ** k
        * (1 - np.conj(z1) * z2) ** (-two_k)
    )


def _resolve_label(
    k: float, weight: Su11Weight, l: int | None, lam: complex | None
) -> tuple[SpectrumClass, int | None, complex, complex | None]:
    """Validate the (l | lambda) label against the weight's class.

    Returns (class, l, lambda, r). Discrete classes demand a nonnegative
    integer l; continuous classes demand a complex lambda.
    """
    check_rep(k)
    cls = classify(weight)
    if cls in (SpectrumClass.FORBIDDEN, SpectrumClass.DEGENERATE_NO_EIGENSTATE):
        raise ForbiddenRegion(forbidden_reason(weight))
    if cls.discrete:
        if lam is not None or l is None:
            raise ClassMismatch(
                f"class {cls.value} takes a nonnegative integer l, not a free lambda"
            )
        if l != int(l) or l < 0:
            raise InvalidQuantumNumber(f"l must be a nonnegative integer, got {l!r}")
        l = int(l)
        if cls is SpectrumClass.DISCRETE_POSITIVE:
            r = k + l
            lam_out = r * weight.b
        elif cls is SpectrumClass.DISCRETE_NEGATIVE:
            r = -(k + l)
            lam_out = r * weight.b
        else:  # boundary special case, beta_plus = 0
            r = None
            lam_out = (k + l) * weight.beta3
        return cls, l, complex(lam_out), r
    if l is not None or lam is None:
        raise ClassMismatch(f"class {cls.value} takes a complex lambda, not an integer l")
    lam = complex(lam)
    if cls is SpectrumClass.CONTINUOUS_SU11:
        return cls, None, lam, lam / weight.b
    return cls, None, lam, None  # degenerate continuous


def _general_raw_amplitudes(k: float, weight: Su11Weight, r: complex, count: int) -> np.ndarray:
    """Unnormalized expansion coefficients on the general branch.

    c_n = sqrt(n! Gamma(2k)/Gamma(2k+n)) g_n^{(k-r, k+r)}(-tau_minus, -tau_plus),
    where g_n is the Lagrange coefficient of (1+tau_minus z)^(-k+r)
    (1+tau_plus z)^(-k-r); equivalently P_n^{(-k+r-n, -k-r-n)}(x) (-kappa)^n.
    """
    ns = np.arange(count)
    pref = np.exp(0.5 * (gammaln(ns + 1.0) + lgamma(2 * k) - gammaln(2 * k + ns)))
    series = specfun.lagrange_series(k - r, k + r, -weight.tau_minus, -weight.tau_plus, count)
    return pref * series


def _beta_plus_zero_raw_amplitudes(k: float, weight: Su11Weight, l: int, count: int) -> np.ndarray:
    """Coefficients of z^l (1 + tau z)^(-2k-l), tau = beta1/beta3.

    c_n = sqrt(n! Gamma(2k+n) / (l! Gamma(2k+l))) (-tau)^(n-l) / (n-l)!
    for n >= l, evaluated in log magnitude.
    """
    tau = weight.tau_plus
    ns = np.arange(count)
    amps = np.zeros(count, dtype=complex)
    if l >= count:
        return amps
    span = ns[l:] - l
    logmag = (
        0.5 * (gammaln(ns[l:] + 1.0) + gammaln(2 * k + ns[l:]))
        - 0.5 * (lgamma(l + 1.0) + lgamma(2 * k + l))
        - gammaln(span + 1.0)
    )
    at = abs(tau)
    if at > 0:
        logmag = logmag + span * np.log(at)
        phase = np.exp(1j * np.angle(-tau) * span)
    else:
        phase = np.where(span == 0, 1.0 + 0j, 0j)
        logmag = np.where(span == 0, logmag, -np.inf)
    amps[l:] = np.exp(logmag) * phase
    return amps


def _degenerate_raw_amplitudes(k: float, weight: Su11Weight, lam: complex, count: int) -> np.ndarray:
    """Laguerre expansion on the b = 0 branch.

    c_n = sqrt(n!/Gamma(2k+n)) L_n^{2k-1}(lambda'/tau) (-tau)^n with
    lambda' = lambda/beta_plus; the tau -> 0 (pure lowering) limit is the
    Barut-Girardello amplitude lambda'^n / sqrt(n! Gamma(2k+n)).
    """
    ns = np.arange(count)
    lam_p = lam / weight.beta_plus
    tau = weight.tau_degenerate
    if tau == 0:
        az = abs(lam_p)
        if az == 0.0:
            amps = np.zeros(count, dtype=complex)
            amps[0] = 1.0
            return amps
        logmag = ns * np.log(az) - 0.5 * (gammaln(ns + 1.0) + gammaln(2 * k + ns))
        phase = np.exp(1j * np.angle(lam_p) * ns)
        return np.exp(logmag - np.max(logmag)) * phase
    pref = np.exp(0.5 * (gammaln(ns + 1.0) - gammaln(2 * k + ns)))
    lag = specfun.laguerre_series(2 * k - 1.0, lam_p / tau, count)
    powers = np.concatenate(([1.0 + 0j], np.cumprod(np.full(count - 1, -tau))))
    return pref * lag * powers


def _asymptotic_ratio(weight: Su11Weight, cls: SpectrumClass) -> float:
    """Known limit of |c_{n+1}/c_n| for each admissible class."""
    if cls is SpectrumClass.CONTINUOUS_SU11:
        return max(abs(weight.tau_plus), abs(weight.tau_minus))
    if cls is SpectrumClass.DISCRETE_POSITIVE:
        return abs(weight.tau_plus)
    if cls is SpectrumClass.DISCRETE_NEGATIVE:
        return abs(weight.tau_minus)
    if cls is SpectrumClass.BOUNDARY_SPECIAL_CASE:
        return abs(weight.tau_plus)
    return abs(weight.tau_degenerate)


def solve_aes_su11(
    k: float,
    weight: Su11Weight,
    l: int | None = None,
    lam: complex | None = None,
    N: int = DEFAULT_TRUNCATION,
    tail_target: float = TAIL_TARGET,
) -> Su11AesSolution:
    """Construct the SU(1,1) eigenstate for the given label.

    Discrete classes take l = 0, 1, ...; continuous classes take a complex
    lam. The truncation starts at N and doubles until the relative tail
    bound certifies tail_target (default 1e-10), raising
    TruncationInsufficient past 2^14. Consumers of higher K3 moments want a
    tighter target, since a norm tail of eps still biases <K3^2> by about
    eps * N^2.
    """
    cls, l, lam_out, r = _resolve_label(k, weight, l, lam)
    ratio_hint = _asymptotic_ratio(weight, cls)

    count = max(N + 1, 16)
    while True:
        if cls is SpectrumClass.BOUNDARY_SPECIAL_CASE:
            raw = _beta_plus_zero_raw_amplitudes(k, weight, l, count)
        elif cls is SpectrumClass.DEGENERATE_CONTINUOUS:
            raw = _degenerate_raw_amplitudes(k, weight, lam_out, count)
        else:
            raw = _general_raw_amplitudes(k, weight, r, count)
        tail = _tail_ratio_bound(raw, ratio_hint)
        if tail <= tail_target:
            break
        if count - 1 >= MAX_TRUNCATION:
            raise TruncationInsufficient(
                f"tail bound {tail:.2e} > {tail_target} at N = {count - 1}"
            )
        count = min(2 * (count - 1) + 1, MAX_TRUNCATION + 1)

    norm_factor = _norm_factor_for(k, weight, cls, l, lam_out, r, raw)
    state = Su11State(k, _phase_fixed(raw), tail)
    return Su11AesSolution(weight, l, lam_out, r, norm_factor, state, cls)


def _norm_factor_for(k, weight, cls, l, lam, r, raw) -> float:
    """Canonical-expansion squared norm for each branch.

    Closed forms where they exist (real r); the complex-r continuous class
    falls back to the directly summed series, which is the same quantity.
    """
    if cls is SpectrumClass.BOUNDARY_SPECIAL_CASE:
        at2 = abs(weight.tau_plus) ** 2
        val = (1.0 - at2) ** (-2 * k - l) * specfun.jacobi_p(
            l, 0.0, 2 * k - 1.0, (1.0 + at2) / (1.0 - at2)
        )
        return float(np.real(val))
    if cls is SpectrumClass.DEGENERATE_CONTINUOUS:
        return degenerate_normalization(k, weight, lam)
    if abs(np.imag(complex(r))) < 1e-12:
        return normalization_su11(k, weight, l=l, lam=None if l is not None else lam)
    return float(np.sum(np.abs(raw) ** 2))


def degenerate_normalization(k: float, weight: Su11Weight, lam: complex) -> float:
    """Closed norm on the b = 0 branch.

    N = |lambda'|^(1-2k)/(1-|tau|^2) I_{2k-1}(2|lambda'|/(1-|tau|^2))
        exp(-2|tau|^2 Re(lambda'/tau) / (1-|tau|^2))

    with lambda' = lambda/beta_plus; the pure lowering limit tau -> 0 is
    |lambda'|^(1-2k) I_{2k-1}(2|lambda'|).
    """
    check_rep(k)
    lam_p = complex(lam) / weight.beta_plus
    tau = weight.tau_degenerate
    at2 = abs(tau) ** 2
    alp = abs(lam_p)
    # |w|^(1-2k) I_{2k-1}(2|w|) = G(|w|^2) with the entire Bessel kernel
    w = alp / (1.0 - at2)
    bess = w ** (2 * k - 1.0) * specfun.bessel_i_entire(2 * k - 1.0, w * w)
    val = alp ** (1.0 - 2 * k) / (1.0 - at2) * bess
    if tau != 0:
        val *= np.exp(-2.0 * at2 * np.real(lam_p / tau) / (1.0 - at2))
    if alp == 0.0:
        # lambda = 0 collapses to the coherent state with zeta0 = -tau
        val = (1.0 - at2) ** (-2 * k)
    return float(np.real(val))


def normalization_su11(
    k: float, weight: Su11Weight, l: int | None = None, lam: complex | None = None
) -> float:
    """Closed-form normalization factor on the general branch.

    Continuous class (real r only):
        N = Sp^(-k+r) Sm^(-k-r) F(k+r, k-r; 2k; -t/(Sp Sm))
    Discrete classes (r = +/-(k+l)):
        N = l! Gamma(2k)/Gamma(2k+l) S_i^l S_i'^(-2k-l)
            P_l^{(2k-1, 0)}(1 + 2t/(Sp Sm))
    with (i, i') = (+,-) for r = k+l and (-,+) for r = -(k+l). Both equal
    the series sum_n n! Gamma(2k)/Gamma(2k+n) |P_n|^2 t^n.
    """
    cls, l, lam_out, r = _resolve_label(k, weight, l, lam)
    if cls not in (
        SpectrumClass.CONTINUOUS_SU11,
        SpectrumClass.DISCRETE_POSITIVE,
        SpectrumClass.DISCRETE_NEGATIVE,
    ):
        raise BranchUnavailable(
            f"closed normalization needs the general branch, class is {cls.value}"
        )
    sp, sm, t = weight.s_plus, weight.s_minus, weight.t
    if cls is SpectrumClass.CONTINUOUS_SU11:
        if abs(np.imag(complex(r))) > 1e-12:
            raise BranchUnavailable(
                "closed normalization requires a real spectral ratio r = lambda/b; "
                "complex r makes the hypergeometric form non-real while the series stays real"
            )
        rr = float(np.real(r))
        return float(np.real(normalization_f21(k, rr, t, sp, sm)))
    arg = 1.0 + 2.0 * t / (sp * sm)
    s_i, s_ip = (sp, sm) if cls is SpectrumClass.DISCRETE_POSITIVE else (sm, sp)
    val = (
        np.exp(lgamma(l + 1.0) + lgamma(2 * k) - lgamma(2 * k + l))
        * s_i**l
        * s_ip ** (-2 * k - l)
        * specfun.jacobi_p(l, 2 * k - 1.0, 0.0, arg)
    )
    return float(np.real(val))


def normalization_f21(k: float, r: float, t: float, s_plus: float, s_minus: float) -> complex:
    """Hypergeometric form Sp^(-k+r) Sm^(-k-r) F(k+r, k-r; 2k; -t/(Sp Sm)).

    Scalar-parameter evaluator (Pfaff-continued for large t) so the SU(2)
    interchange j -> -k, m0 -> r, t -> -t can be tested numerically.
    """
    z = -t / (s_plus * s_minus)
    f = specfun.gauss_2f1_continued(k + r, k - r, 2.0 * k, z)
    return complex(s_plus ** (-k + r) * s_minus ** (-k - r) * f)


def normalization_series_terms(k: float, weight: Su11Weight, r: complex, count: int) -> np.ndarray:
    """Terms n! Gamma(2k)/Gamma(2k+n) |P_n^{(-k+r-n,-k-r-n)}(x)|^2 t^n.

    Partial sums of these terms converge to the normalization factor in
    admissible regions and grow without bound in the forbidden region
    (term ratio > 1 asymptotically), which is how grid scans certify
    non-normalizability.
    """
    check_rep(k)
    ns = np.arange(count)
    pref = np.exp(gammaln(ns + 1.0) + lgamma(2 * k) - gammaln(2 * k + ns))
    series = specfun.lagrange_series(k - r, k + r, -weight.tau_minus, -weight.tau_plus, count)
    # |g_n|^2 = |P_n|^2 t^n since |(-kappa)^n|^2 = t^n
    return pref * np.abs(series) ** 2


def normalization_series_diverges(
    k: float, weight: Su11Weight, r: complex = 0.37, count: int = 320
) -> bool:
    """Certify that the normalization series has no finite limit.

    The term ratio tends to max(|tau_plus|, |tau_minus|)^2 > 1 in the
    forbidden region; because two comparable singularities can make the
    raw ratios beat against each other, the certificate compares block
    maxima of the terms (the envelope form of the ratio test). The term
    count is capped so the fastest geometric growth stays inside double
    range.
    """
    if weight.branch != BRANCH_GENERAL:
        raise BranchUnavailable("divergence certificate needs the general branch")
    rho = max(abs(weight.tau_plus), abs(weight.tau_minus))
    if rho <= 1.0:
        return False
    count = int(min(count, max(64, 125.0 / np.log10(rho))))
    terms = np.real(normalization_series_terms(k, weight, r, count))
    terms = terms[np.isfinite(terms)]
    q = terms.size // 4
    if q < 8:
        return False
    early = float(np.max(terms[q : 2 * q]))
    mid = float(np.max(terms[2 * q : 3 * q]))
    late = float(np.max(terms[3 * q :]))
    return bool(late > mid > early)


def moments_closed(
    k: float, r: float, t: float, s_plus: float, s_minus: float, theta_term: complex
) -> tuple[complex, complex]:
    """Closed-form (<K3>, variance) from scalar parameters.

    theta_term is the combination (k^2 - r^2)/(2k) * Theta with Theta the
    hypergeometric ratio F(k+r+1, k-r+1; 2k+1; .)/F(k+r, k-r; 2k; .); the
    SU(2) interchange swaps this whole product with (j+|m0|) Omega.
    """
    sp, sm = s_plus, s_minus
    y = sp * sm - sp - sm
    z = sp**2 * (1.0 - sm) + sm**2 * (1.0 - sp)
    mean = (-k * y + r * (sp - sm)) / (sp * sm) + theta_term * y * t / (sp**2 * sm**2)
    var = (
        (k + r) * (1.0 - sm) / sm**2
        + (k - r) * (1.0 - sp) / sp**2
        - (k**2 - r**2) * y**2 * t / ((sp * sm + t) * sp**2 * sm**2)
        - theta_term * t / (sp**3 * sm**3) * (sp * sm * y**2 / (sp * sm + t) - 2 * k * y**2 + z)
        - theta_term**2 * y**2 * t**2 / (sp**4 * sm**4)
    )
    return mean, var


def _theta(k: float, r: float, l: int | None, t: float, sp: float, sm: float) -> float:
    """Hypergeometric ratio Theta; Jacobi form for discrete labels."""
    if l is not None:
        if l == 0:
            return 0.0
        arg = 1.0 + 2.0 * t / (sp * sm)
        num = specfun.jacobi_p(l - 1, 2 * k, 1.0, arg)
        den = specfun.jacobi_p(l, 2 * k - 1.0, 0.0, arg)
        return float(np.real(2.0 * k / l * num / den))
    z = -t / (sp * sm)
    num = specfun.gauss_2f1_continued(k + r + 1.0, k - r + 1.0, 2.0 * k + 1.0, z)
    den = specfun.gauss_2f1_continued(k + r, k - r, 2.0 * k, z)
    return float(np.real(num / den))


def k3_moments(
    k: float,
    weight: Su11Weight,
    l: int | None = None,
    lam: complex | None = None,
    N: int = DEFAULT_TRUNCATION,
) -> tuple[float, float]:
    """Mean and variance of K3 over the labelled eigenstate.

    General branch with real r: exact closed formulas (Theta = 0 at l = 0
    recovers the coherent-state moments; Y = 0 weights use the simplified
    squeezing-ratio forms). Elsewhere the moments are summed directly over
    the truncated amplitudes.
    """
    cls, l_res, lam_out, r = _resolve_label(k, weight, l, lam)
    general = cls in (
        SpectrumClass.CONTINUOUS_SU11,
        SpectrumClass.DISCRETE_POSITIVE,
        SpectrumClass.DISCRETE_NEGATIVE,
    )
    if general and abs(np.imag(complex(r))) < 1e-12:
        rr = float(np.real(r))
        sp, sm, t = weight.s_plus, weight.s_minus, weight.t
        th = _theta(k, rr, l_res, t, sp, sm)
        if abs(weight.Y) < 1e-12 * abs(sp * sm):
            h = weight.h
            mean = (h + 1.0) / (h - 1.0) * rr
            var = 2 * k * h / (h - 1.0) ** 2 + (k**2 - rr**2) * h**2 * t / (k * (h - 1.0) ** 4) * th
            return float(mean), float(var)
        mean, var = moments_closed(k, rr, t, sp, sm, (k**2 - rr**2) / (2.0 * k) * th)
        return float(np.real(mean)), float(np.real(var))
    sol = solve_aes_su11(k, weight, l=l, lam=lam, N=N, tail_target=1e-15)
    probs = np.abs(sol.state.amplitudes) ** 2
    levels = k + sol.state.n_values
    mean = float(np.sum(levels * probs))
    var = float(np.sum(levels**2 * probs) - mean**2)
    return mean, var


def bg_state(k: float, z: complex, N: int = DEFAULT_TRUNCATION) -> BgState:
    """Barut-Girardello state: K- |k,z> = z |k,z>.

    Amplitudes z^(k-1/2) z^n / sqrt(n! Gamma(2k+n) I_{2k-1}(2|z|)) with the
    principal branch fixing the global z^(k-1/2) phase (so the closed
    overlap formula holds verbatim); z = 0 degenerates to |k, 0>.
    """
    check_rep(k)
    z = complex(z)
    az = abs(z)
    count = max(N + 1, 16)
    if az == 0.0:
        amps = np.zeros(count, dtype=complex)
        amps[0] = 1.0
        return BgState(k, z, Su11State(k, amps, 0.0))
    while True:
        ns = np.arange(count)
        logmag = (k - 0.5 + ns) * np.log(az) - 0.5 * (gammaln(ns + 1.0) + gammaln(2 * k + ns))
        phase = np.exp(1j * np.angle(z) * (k - 0.5 + ns))
        raw = np.exp(logmag - np.max(logmag)) * phase
        # ratio |c_{n+1}/c_n| = |z| / sqrt((n+1)(2k+n)), decreasing in n
        q = az / np.sqrt((count) * (2 * k + count - 1.0))
        tail = np.inf if q >= 1.0 else float(np.abs(raw[-1]) ** 2 * q * q / (1.0 - q * q) / np.sum(np.abs(raw) ** 2))
        if tail <= TAIL_TARGET:
            break
        if count - 1 >= MAX_TRUNCATION:
            raise TruncationInsufficient(f"BG state at |z| = {az} needs N > {MAX_TRUNCATION}")
        count = 2 * (count - 1) + 1
    amps = raw / np.linalg.norm(raw)
    return BgState(k, z, Su11State(k, amps, tail))


def bg_overlap(k: float, z1: complex, z2: complex) -> complex:
    """Closed overlap of two Barut-Girardello states.

    <k,z1|k,z2> = I_{2k-1}(2 sqrt(conj(z1) z2)) /
                  sqrt(I_{2k-1}(2|z1|) I_{2k-1}(2|z2|))

    evaluated through the entire kernel G(w) = I_{2k-1}(2 sqrt(w))/w^(k-1/2)
    with principal-branch phases, consistent with the bg_state convention.
    """
    check_rep(k)
    z1, z2 = complex(z1), complex(z2)
    nu = 2 * k - 1.0

    def half_phase(z: complex) -> complex:
        # z^(k-1/2) / |z|^(k-1/2), defined as 1 at z = 0
        return (z / abs(z)) ** (k - 0.5) if z != 0 else 1.0 + 0j

    def norm_kernel(z: complex) -> float:
        # |z|^(1-2k) I_{2k-1}(2|z|) = G(|z|^2), positive
        return float(np.real(specfun.bessel_i_entire(nu, abs(z) ** 2)))

    g = specfun.bessel_i_entire(nu, np.conj(z1) * z2)
    return complex(
        np.conj(half_phase(z1)) * half_phase(z2) * g / np.sqrt(norm_kernel(z1) * norm_kernel(z2))
    )


def bg_rep_eval(
    k: float,
    weight: Su11Weight,
    l: int | None = None,
    lam: complex | None = None,
    z: complex = 0j,
    sign: int = +1,
) -> complex:
    """Analytic lowering-operator-basis representation of an eigenstate.

    Evaluates the (unnormalized) solution of the second-order equation the
    eigenvalue problem becomes in this representation:

      general branch: exp(-tau_pm z) Phi(k -/+ r; 2k; -/+ b z / beta_plus),
        upper and lower sign choices agreeing through Kummer's
        transformation (sign=+1 picks tau_plus);
      beta_plus = 0: z^l exp(-tau z), tau = beta1/beta3;
      b = 0: G(lambda' z) exp(-tau z) with the entire Bessel kernel G and
        lambda' = lambda/beta_plus, which for the pure lowering weight is
        the Barut-Girardello function.
    """
    cls, l_res, lam_out, r = _resolve_label(k, weight, l, lam)
    z = complex(z)
    if cls is SpectrumClass.BOUNDARY_SPECIAL_CASE:
        return z**l_res * np.exp(-weight.tau_plus * z)
    if cls is SpectrumClass.DEGENERATE_CONTINUOUS:
        lam_p = lam_out / weight.beta_plus
        return specfun.bessel_i_entire(2 * k - 1.0, lam_p * z) * np.exp(
            -weight.tau_degenerate * z
        )
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if sign == +1:
        return np.exp(-weight.tau_plus * z) * specfun.confluent_phi(
            k - r, 2.0 * k, -weight.b * z / weight.beta_plus
        )
    return np.exp(-weight.tau_minus * z) * specfun.confluent_phi(
        k + r, 2.0 * k, weight.b * z / weight.beta_plus
    )


def bg_function_from_state(state: Su11State, z: complex) -> complex:
    """Reconstruct the lowering-basis analytic function from amplitudes.

    Lambda(z) = sum_n c_n z^n / sqrt(n! Gamma(2k+n)); agrees with
    bg_rep_eval up to one overall constant per state.
    """
    ns = state.n_values
    k = state.k
    weights = np.exp(-0.5 * (gammaln(ns + 1.0) + gammaln(2 * k + ns)))
    z = complex(z)
    powers = np.concatenate(([1.0 + 0j], np.cumprod(np.full(ns.size - 1, z))))
    return complex(np.sum(state.amplitudes * weights * powers))


IS_FAMILIES_SU11 = ("generalized", "k1k2", "k1k3", "k2k3")

_IS_PAIR_SU11 = {
    "generalized": (0, 1),
    "k1k2": (0, 1),
    "k1k3": (0, 2),
    "k2k3": (1, 2),
}


def intelligent_weight_su11(family: str, param: complex) -> tuple[Su11Weight, SpectrumClass]:
    """Weight and admissibility class of an SU(1,1) intelligent-state family.

    generalized: (eta, -i, 0), continuous iff Re eta > 0 (eta = 1 gives the
    Barut-Girardello states); k1k2: (1, i gamma, 0), continuous iff
    gamma < 0 (gamma = -1 BG, gamma = +1 pure raising: no eigenstate);
    k1k3 / k2k3: (1, 0, i gamma) / (0, 1, i gamma), always discrete with
    lambda = i sgn(gamma) (k+l) sqrt(gamma^2+1). Inadmissible parameters
    return the forbidden / no-eigenstate tag rather than raising.
    """
    if family == "generalized":
        w = Su11Weight(complex(param), -1j, 0.0)
    elif family == "k1k2":
        w = Su11Weight(1.0, 1j * float(np.real(param)), 0.0)
    elif family == "k1k3":
        w = Su11Weight(1.0, 0.0, 1j * float(np.real(param)))
    elif family == "k2k3":
        w = Su11Weight(0.0, 1.0, 1j * float(np.real(param)))
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {IS_FAMILIES_SU11}")
    return w, classify(w)


def intelligent_pair_su11(family: str) -> tuple[int, int]:
    """Indices into the (K1, K2, K3) triple of the pair a family saturates."""
    try:
        return _IS_PAIR_SU11[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {IS_FAMILIES_SU11}") from None


def weight_from_tau_pair(tau_plus: complex, tau_minus: complex) -> Su11Weight:
    """Synthesize the b = 1 weight realizing prescribed (tau_plus, tau_minus).

    beta3 = (tau_minus + tau_plus)/(tau_minus - tau_plus),
    beta1 + i beta2 = 2/(tau_minus - tau_plus),
    beta1 - i beta2 = 2 tau_plus tau_minus/(tau_minus - tau_plus);
    handy for scanning the (|tau_plus|, |tau_minus|) parameter plane.
    """
    tp, tm = complex(tau_plus), complex(tau_minus)
    if tp == tm:
        raise ValueError("tau_plus and tau_minus must differ")
    sum_part = 2.0 / (tm - tp)
    diff_part = 2.0 * tp * tm / (tm - tp)
    beta1 = (sum_part + diff_part) / 2.0
    beta2 = (sum_part - diff_part) / 2.0j
    beta3 = (tm + tp) / (tm - tp)
    return Su11Weight(beta1, beta2, beta3)
