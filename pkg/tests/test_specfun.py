"""Series kernels checked against their defining generating functions."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from math import lgamma

from aeskit import specfun
from aeskit.errors import NonConvergent

from helpers import uniform_disk

RNG = np.random.default_rng(20240817)


def series_coefficients(alpha, u, count):
    """zeta-coefficients of (1 - u zeta)^(-alpha), independent recurrence."""
    out = [complex(1.0)]
    for i in range(1, count):
        out.append(out[-1] * (alpha + i - 1) * u / i)
    return np.array(out)


def product_coefficient(alpha, beta, u, v, n):
    """Oracle: zeta^n coefficient of the product series by direct convolution."""
    a = series_coefficients(alpha, u, n + 1)
    b = series_coefficients(beta, v, n + 1)
    return complex(sum(a[s] * b[n - s] for s in range(n + 1)))


# ------------------------------------------------------------------ jacobi


def test_jacobi_degree_zero_is_one():
    for _ in range(10):
        al, be, x = uniform_disk(RNG, 3), uniform_disk(RNG, 3), uniform_disk(RNG, 2)
        assert specfun.jacobi_p(0, al, be, x) == 1.0


def test_jacobi_vanishes_beyond_polynomial_degree():
    # P_2^{(-1,-2)} is identically zero (the j=1/2, m0=1/2 truncation)
    for _ in range(20):
        x = uniform_disk(RNG, 2)
        assert specfun.jacobi_p(2, -1.0, -2.0, x) == 0.0


@pytest.mark.parametrize("two_j", range(1, 9))
def test_jacobi_truncation_rule(two_j):
    # P_n^{(j+m0-n, j-m0-n)} = 0 exactly for all n > 2j
    j = two_j / 2.0
    for two_m0 in range(-two_j, two_j + 1, 2):
        m0 = two_m0 / 2.0
        for _ in range(20):
            x = uniform_disk(RNG, 2)
            for n in range(two_j + 1, two_j + 5):
                assert abs(specfun.jacobi_p(n, j + m0 - n, j - m0 - n, x)) < 1e-14


def test_jacobi_matches_generating_function_expansion():
    # coefficient of zeta^3 in (1-u zeta)^mu (1-v zeta)^nu equals
    # (v-u)^3 P_3^{(mu-3, nu-3)}((u+v)/(u-v)); arranged so the Jacobi
    # parameters are (1.5, -0.5) and the argument is 0.3
    mu, nu = 4.5, 2.5
    u, v = 1.3, -0.7
    coeff = product_coefficient(-mu, -nu, u, v, 3)
    value = specfun.jacobi_p(3, 1.5, -0.5, 0.3)
    assert abs(coeff - (v - u) ** 3 * value) < 1e-12 * abs(coeff)


# ---------------------------------------------------------------- lagrange


def test_lagrange_low_orders():
    for _ in range(10):
        al, be = uniform_disk(RNG, 3), uniform_disk(RNG, 3)
        u, v = uniform_disk(RNG, 0.5), uniform_disk(RNG, 0.5)
        assert specfun.lagrange_g(0, al, be, u, v) == 1.0
        g1 = specfun.lagrange_g(1, al, be, u, v)
        assert abs(g1 - (al * u + be * v)) < 1e-14


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=0, max_value=8),
    data=st.tuples(*[st.floats(-1, 1) for _ in range(8)]),
)
def test_lagrange_equals_product_series(n, data):
    al = complex(data[0], data[1]) * 3
    be = complex(data[2], data[3]) * 3
    u = complex(data[4], data[5]) * 0.5
    v = complex(data[6], data[7]) * 0.5
    if u == v:
        return
    got = specfun.lagrange_g(n, al, be, u, v)
    want = product_coefficient(al, be, u, v, n)
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_lagrange_coincident_arguments_limit():
    # u = v collapses the product to (1-u zeta)^-(alpha+beta)
    for _ in range(15):
        al, be = uniform_disk(RNG, 3), uniform_disk(RNG, 3)
        u = uniform_disk(RNG, 0.5)
        for n in range(7):
            got = specfun.lagrange_g(n, al, be, u, u)
            want = series_coefficients(al + be, u, n + 1)[n]
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_lagrange_series_matches_scalar_kernel():
    for _ in range(8):
        al, be = uniform_disk(RNG, 2), uniform_disk(RNG, 2)
        u, v = uniform_disk(RNG, 0.6), uniform_disk(RNG, 0.6)
        block = specfun.lagrange_series(al, be, u, v, 40)
        for n in (0, 1, 2, 7, 19, 39):
            want = specfun.lagrange_g(n, al, be, u, v)
            assert abs(block[n] - want) <= 1e-11 * max(1.0, abs(want))


# -------------------------------------------------------------------- 2f1


def test_2f1_at_origin():
    assert specfun.gauss_2f1(uniform_disk(RNG), uniform_disk(RNG), 1.7, 0.0) == 1.0


def test_2f1_log_identity():
    # F(1,1;2;z) = -log(1-z)/z
    got = specfun.gauss_2f1(1.0, 1.0, 2.0, 0.5)
    assert abs(got - (-np.log(0.5) / 0.5)) < 1e-14


def test_2f1_terminating_reduces_to_jacobi():
    # F(-l, l+alpha+1; alpha+1; z) = l! Gamma(alpha+1)/Gamma(l+alpha+1) P_l^{(alpha,0)}(1-2z)
    for l in (0, 1, 2, 5):
        for _ in range(5):
            alpha = RNG.uniform(0.2, 3.0)
            z = uniform_disk(RNG, 2.0)
            lhs = specfun.gauss_2f1(-l, l + alpha + 1.0, alpha + 1.0, z)
            rhs = np.exp(lgamma(l + 1) + lgamma(alpha + 1) - lgamma(l + alpha + 1))
            rhs = rhs * specfun.jacobi_p(l, alpha, 0.0, 1.0 - 2.0 * z)
            assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_2f1_nonconvergent_outside_disk():
    with pytest.raises(NonConvergent):
        specfun.gauss_2f1(0.5, 1.5, 2.5, 1.5)


def test_2f1_bad_denominator_parameter():
    with pytest.raises(NonConvergent):
        specfun.gauss_2f1(0.5, 1.5, -2.0, 0.1)


def test_2f1_continued_matches_series_inside_disk():
    for _ in range(10):
        a, b = RNG.uniform(0.2, 2.0, size=2)
        c = RNG.uniform(2.0, 4.0)
        z = -RNG.uniform(0.0, 0.45)
        assert abs(
            specfun.gauss_2f1_continued(a, b, c, z) - specfun.gauss_2f1(a, b, c, z)
        ) < 1e-13


def test_2f1_continued_large_negative_argument():
    # Pfaff continuation against the terminating case, which is exact anywhere
    for l in (1, 3):
        a, c = 2.5, 3.0
        z = -40.0
        exact = specfun.gauss_2f1(-l, a, c, z)  # terminating polynomial
        pfaff = (1.0 - z) ** l * specfun.gauss_2f1(-l, c - a, c, z / (z - 1.0))
        assert abs(exact - pfaff) < 1e-12 * abs(exact)


# ----------------------------------------------------------------- kummer


def test_phi_trivial_values():
    assert specfun.confluent_phi(0.3 + 0.2j, 1.5, 0.0) == 1.0
    assert abs(specfun.confluent_phi(1.0, 1.0, 1.0) - np.e) < 1e-15


@settings(max_examples=80, deadline=None)
@given(data=st.tuples(*[st.floats(-1, 1) for _ in range(6)]))
def test_phi_kummer_transformation(data):
    a = complex(data[0], data[1]) * 3
    c = complex(data[2], data[3]) * 3 + 4.0
    x = complex(data[4], data[5]) * 5
    lhs = specfun.confluent_phi(a, c, x)
    rhs = np.exp(x) * specfun.confluent_phi(c - a, c, -x)
    # the identity is exact; floating error scales with the cancellation
    # mass of the worse-conditioned side
    scale = max(abs(lhs), float(np.exp(abs(x))))
    assert abs(lhs - rhs) < 1e-12 * scale


# ----------------------------------------------------------------- bessel


def test_bessel_trivial():
    assert specfun.bessel_i(0, 0.0) == 1.0
    assert specfun.bessel_i(1, 0.0) == 0.0


def test_bessel_against_series_oracle():
    # 30-term direct series at x = 2
    x = 2.0
    from math import factorial

    oracle = sum((x / 2.0) ** (2 * m) / (factorial(m) ** 2) for m in range(30))
    assert abs(specfun.bessel_i(0, x) - oracle) < 1e-15 * oracle


def test_bessel_entire_kernel_consistency():
    for nu in (0, 1, 3):
        for _ in range(5):
            x = uniform_disk(RNG, 3.0)
            direct = specfun.bessel_i(nu, x)
            via_kernel = (x / 2.0) ** nu * specfun.bessel_i_entire(float(nu), (x / 2.0) ** 2)
            assert abs(direct - via_kernel) < 1e-13 * max(1.0, abs(direct))


# --------------------------------------------------------------- laguerre


def test_laguerre_low_orders():
    for _ in range(10):
        al, x = uniform_disk(RNG, 3), uniform_disk(RNG, 3)
        assert specfun.laguerre_l(0, al, x) == 1.0
        assert abs(specfun.laguerre_l(1, al, x) - (al + 1 - x)) < 1e-14


def test_laguerre_generates_bessel_exponential_product():
    # coefficient of z^n in G(w z) e^(-tau z), with the entire Bessel kernel
    # G of order 2k-1, equals L_n^{2k-1}(w/tau) (-tau)^n / Gamma(2k+n)
    for k in (0.5, 1.0, 2.5):
        nu = 2 * k - 1.0
        for _ in range(5):
            w = uniform_disk(RNG, 2.0)
            tau = uniform_disk(RNG, 0.8)
            if tau == 0:
                continue
            for n in (0, 1, 2, 4, 6):
                coeff = 0j
                for m in range(n + 1):
                    coeff += (
                        w**m
                        * np.exp(-lgamma(m + 1) - lgamma(2 * k + m) - lgamma(n - m + 1))
                        * (-tau) ** (n - m)
                    )
                lag = specfun.laguerre_l(n, nu, w / tau) * (-tau) ** n * np.exp(-lgamma(2 * k + n))
                assert abs(coeff - lag) < 1e-12 * max(1.0, abs(coeff))


def test_laguerre_series_matches_scalar_kernel():
    # recurrence vs explicit alternating sum: both accumulate rounding that
    # grows with degree and argument, so the tolerance reflects conditioning
    for _ in range(6):
        al = uniform_disk(RNG, 3)
        x = uniform_disk(RNG, 3)
        block = specfun.laguerre_series(al, x, 30)
        for n in (0, 1, 5, 17, 29):
            want = specfun.laguerre_l(n, al, x)
            assert abs(block[n] - want) < 2e-9 * max(1.0, abs(want))


# ------------------------------------------------------------------ binom


def test_binomial_exact_zeros_and_values():
    assert specfun.binom(3.0, 5) == 0.0
    assert specfun.binom(3.0, 2) == 3.0
    assert abs(specfun.binom(2.5, 3) - (2.5 * 1.5 * 0.5 / 6.0)) < 1e-15
    assert specfun.pochhammer_over_factorial(-2.0, 4) == 0.0


def test_summation_theorem_squared_weights():
    # sum_n n! G(mu+nu)/G(mu+nu+n) |P_n^{(-mu-n,-nu-n)}(x)|^2 t^n
    #   = Sp^-mu Sm^-nu F(nu, mu; mu+nu; -t/(Sp Sm))
    rng = np.random.default_rng(5)
    for _ in range(8):
        mu, nu = rng.uniform(0.3, 2.0, size=2)
        x = uniform_disk(rng, 1.5)
        t = rng.uniform(0.01, 0.2)
        sp = 1.0 - abs(x + 1.0) ** 2 * t / 4.0
        sm = 1.0 - abs(x - 1.0) ** 2 * t / 4.0
        if sp <= 0.05 or sm <= 0.05:
            continue
        partial = sum(
            np.exp(lgamma(n + 1) + lgamma(mu + nu) - lgamma(mu + nu + n))
            * abs(specfun.jacobi_p(n, -mu - n, -nu - n, x)) ** 2
            * t**n
            for n in range(200)
        )
        closed = sp ** (-mu) * sm ** (-nu) * specfun.gauss_2f1(nu, mu, mu + nu, -t / (sp * sm))
        assert abs(partial - closed) < 1e-10 * abs(closed)
