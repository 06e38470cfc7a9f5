"""Series kernels for the special functions behind the eigenstate expansions.

Everything is evaluated from explicit power series or finite sums so that
negative-integer and complex parameters behave exactly as the generating
functions demand. No reflection formulas, no asymptotic regimes, no
arbitrary precision: plain complex arithmetic, 1e-16 relative tolerance,
and a two-consecutive-small-terms stopping rule so alternating series do
not stop prematurely.
"""

from __future__ import annotations

import numpy as np

from .errors import NonConvergent

REL_TOL = 1e-16
MAX_TERMS = 10**6


def binom(a: complex, s: int) -> complex:
    """Generalized binomial C(a, s) = a(a-1)...(a-s+1)/s! for complex a.

    When a is a nonnegative integer smaller than s, one factor of the
    falling factorial is exactly zero and an exact 0 is returned (no
    rounded residue), which is what makes the truncated expansions below
    terminate identically.
    """
    if s < 0:
        return 0j
    out = complex(1.0)
    for i in range(int(s)):
        f = a - i
        if f == 0:
            return 0j
        out *= f / (i + 1)
    return out


def pochhammer_over_factorial(a: complex, n: int) -> complex:
    """(a)_n / n! with the rising factorial (a)_n = a(a+1)...(a+n-1)."""
    out = complex(1.0)
    for i in range(int(n)):
        f = a + i
        if f == 0:
            return 0j
        out *= f / (i + 1)
    return out


def jacobi_p(n: int, alpha: complex, beta: complex, x: complex) -> complex:
    """Jacobi polynomial P_n^{(alpha,beta)}(x) by the finite double sum.

    P_n^{(a,b)}(x) = sum_s C(n+a, s) C(n+b, n-s) ((x-1)/2)^{n-s} ((x+1)/2)^s

    The sum is the coefficient extraction of the underlying generating
    function, so it stays valid for the negative integer parameters the
    eigenstate expansions produce (where the hypergeometric reduction of
    P_n is singular). In particular P_n^{(c-n, d-n)} vanishes identically
    once n exceeds c+d for nonnegative integers c, d.
    """
    if n < 0:
        raise ValueError("jacobi_p: degree must be nonnegative")
    um = (x - 1) / 2.0
    up = (x + 1) / 2.0
    total = 0j
    for s in range(n + 1):
        c1 = binom(n + alpha, s)
        if c1 == 0:
            continue
        c2 = binom(n + beta, n - s)
        if c2 == 0:
            continue
        total += c1 * c2 * um ** (n - s) * up**s
    return total


def lagrange_g(n: int, alpha: complex, beta: complex, u: complex, v: complex) -> complex:
    """Lagrange polynomial g_n^{(alpha,beta)}(u, v).

    Defined as the zeta^n coefficient of (1-u*zeta)^(-alpha) (1-v*zeta)^(-beta)
    and computed through the Jacobi relation

        g_n = (v-u)^n P_n^{(-alpha-n, -beta-n)}((u+v)/(u-v)).

    For coincident arguments u == v the product collapses to a single
    binomial series and the coefficient is the Vandermonde value
    (alpha+beta)_n / n! * u^n, used verbatim instead of dividing by u-v.
    """
    if n < 0:
        raise ValueError("lagrange_g: order must be nonnegative")
    if u == v:
        return pochhammer_over_factorial(alpha + beta, n) * u**n
    return (v - u) ** n * jacobi_p(n, -alpha - n, -beta - n, (u + v) / (u - v))


def binomial_series(alpha: complex, u: complex, count: int) -> np.ndarray:
    """First `count` zeta-coefficients of (1 - u*zeta)^(-alpha).

    Coefficient i is (alpha)_i / i! * u^i, produced by a cumulative
    product so a terminating series (alpha a nonpositive integer) ends in
    exact zeros.
    """
    if count <= 0:
        return np.zeros(0, dtype=complex)
    i = np.arange(1, count)
    factors = (complex(alpha) + i - 1) * complex(u) / i
    return np.concatenate(([1.0 + 0j], np.cumprod(factors)))


def lagrange_series(alpha: complex, beta: complex, u: complex, v: complex, count: int) -> np.ndarray:
    """g_n^{(alpha,beta)}(u, v) for n = 0..count-1 in one shot.

    Convolution of the two binomial series, i.e. coefficient extraction of
    the product generating function. Agrees with lagrange_g term by term
    but runs vectorized, which the truncated SU(1,1) expansions need.
    """
    a = binomial_series(alpha, u, count)
    b = binomial_series(beta, v, count)
    return np.convolve(a, b)[:count]


def _is_nonpositive_integer(p: complex) -> bool:
    return p.real <= 0 and p.imag == 0 and p.real == round(p.real)


class _CompensatedSum:
    """Neumaier-compensated complex accumulator for alternating series."""

    __slots__ = ("hi", "lo")

    def __init__(self, first: complex):
        self.hi = complex(first)
        self.lo = 0j

    def add(self, term: complex) -> None:
        new = self.hi + term
        if abs(self.hi) >= abs(term):
            self.lo += (self.hi - new) + term
        else:
            self.lo += (term - new) + self.hi
        self.hi = new

    @property
    def value(self) -> complex:
        return self.hi + self.lo


def gauss_2f1(a: complex, b: complex, c: complex, z: complex) -> complex:
    """Gauss hypergeometric series F(a, b; c; z).

    Summed with compensated accumulation until two consecutive terms fall
    below 1e-16 relative, or until the series terminates through a
    Pochhammer zero in a or b. Requires |z| < 1 unless terminating; no
    analytic continuation is attempted here.

    Raises NonConvergent if the term budget is exhausted, or if c hits a
    nonpositive integer before the numerator terminates.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    term = complex(1.0)
    total = _CompensatedSum(term)
    small = 0
    for n in range(MAX_TERMS):
        if a + n == 0 or b + n == 0:
            return total.value
        if c + n == 0:
            raise NonConvergent(
                "2F1: denominator parameter reached a nonpositive integer "
                "before the series terminated"
            )
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total.add(term)
        if not np.isfinite(abs(term)) or not np.isfinite(abs(total.hi)):
            raise NonConvergent(f"2F1({a}, {b}; {c}; {z}): series terms overflow")
        if abs(term) <= REL_TOL * abs(total.hi):
            small += 1
            if small >= 2:
                return total.value
        else:
            small = 0
    raise NonConvergent(f"2F1({a}, {b}; {c}; {z}) did not converge in {MAX_TERMS} terms")


def gauss_2f1_continued(a: complex, b: complex, c: complex, z: complex) -> complex:
    """F(a, b; c; z) for real z <= 0 of any magnitude.

    The raw series only converges for |z| < 1; for z <= -1/2 (and not
    terminating) the Pfaff map w = z/(z-1) in [0, 1) is applied:
    F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; w). Used by the closed-form
    normalizations whose natural argument -t/(S+ S-) is unbounded below.
    """
    z = complex(z)
    if _is_nonpositive_integer(complex(a)) or _is_nonpositive_integer(complex(b)):
        return gauss_2f1(a, b, c, z)
    if z.real > -0.5:
        return gauss_2f1(a, b, c, z)
    w = z / (z - 1.0)
    return (1.0 - z) ** (-complex(a)) * gauss_2f1(a, complex(c) - complex(b), c, w)


def confluent_phi(a: complex, c: complex, x: complex) -> complex:
    """Kummer confluent series Phi(a; c; x) = sum (a)_n / ((c)_n n!) x^n."""
    a, c, x = complex(a), complex(c), complex(x)
    term = complex(1.0)
    total = _CompensatedSum(term)
    small = 0
    for n in range(MAX_TERMS):
        if a + n == 0:
            return total.value
        if c + n == 0:
            raise NonConvergent(
                "Phi: denominator parameter reached a nonpositive integer "
                "before the series terminated"
            )
        term *= (a + n) / ((c + n) * (n + 1)) * x
        total.add(term)
        if not np.isfinite(abs(term)) or not np.isfinite(abs(total.hi)):
            raise NonConvergent(f"Phi({a}; {c}; {x}): series terms overflow")
        if abs(term) <= REL_TOL * abs(total.hi):
            small += 1
            if small >= 2:
                return total.value
        else:
            small = 0
    raise NonConvergent(f"Phi({a}; {c}; {x}) did not converge in {MAX_TERMS} terms")


def bessel_i_entire(nu: float, w: complex) -> complex:
    """Entire part of the modified Bessel function: I_nu(2 sqrt(w)) / w^(nu/2).

    Equals sum_m w^m / (m! Gamma(m+nu+1)), analytic in w, so expressions of
    the form (arg)^(1/2-k) I_{2k-1}(2 sqrt(arg)) can be evaluated without
    choosing a square-root branch.
    """
    from math import lgamma

    if nu < 0:
        raise ValueError("bessel_i_entire: order must be nonnegative")
    w = complex(w)
    term = complex(np.exp(-lgamma(nu + 1.0)))
    total = _CompensatedSum(term)
    small = 0
    for m in range(1, MAX_TERMS):
        term *= w / (m * (m + nu))
        total.add(term)
        if not np.isfinite(abs(term)) or not np.isfinite(abs(total.hi)):
            raise NonConvergent(f"bessel_i_entire({nu}, {w}): series terms overflow")
        if abs(term) <= REL_TOL * abs(total.hi):
            small += 1
            if small >= 2:
                return total.value
        else:
            small = 0
    raise NonConvergent(f"bessel_i_entire({nu}, {w}) did not converge")


def bessel_i(nu: int, x: complex) -> complex:
    """Modified Bessel function of the first kind, integer order nu >= 0.

    I_nu(x) = sum_m (x/2)^(2m+nu) / (m! (m+nu)!) via the entire kernel.
    """
    if nu != int(nu) or nu < 0:
        raise ValueError("bessel_i: order must be a nonnegative integer")
    half = complex(x) / 2.0
    return half ** int(nu) * bessel_i_entire(float(nu), half * half)


def laguerre_l(n: int, alpha: complex, x: complex) -> complex:
    """Generalized Laguerre polynomial L_n^{alpha}(x) by the explicit sum.

    L_n^{alpha}(x) = sum_s (-1)^s C(n+alpha, n-s) x^s / s!
    """
    if n < 0:
        raise ValueError("laguerre_l: degree must be nonnegative")
    total = 0j
    xs = complex(1.0)
    fact = 1.0
    for s in range(n + 1):
        if s > 0:
            xs *= x
            fact *= s
        total += (-1) ** s * binom(n + alpha, n - s) * xs / fact
    return total


def laguerre_series(alpha: complex, x: complex, count: int) -> np.ndarray:
    """L_n^{alpha}(x) for n = 0..count-1 via the three-term recurrence.

    (n+1) L_{n+1} = (2n+alpha+1-x) L_n - (n+alpha) L_{n-1}
    """
    if count <= 0:
        return np.zeros(0, dtype=complex)
    out = np.empty(count, dtype=complex)
    out[0] = 1.0
    if count == 1:
        return out
    out[1] = alpha + 1 - x
    for n in range(1, count - 1):
        out[n + 1] = ((2 * n + alpha + 1 - x) * out[n] - (n + alpha) * out[n - 1]) / (n + 1)
    return out
