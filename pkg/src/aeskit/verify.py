"""Named invariant suites behind the `verify` command.

Each check is a condensed, deterministic version of the property tests in
the test suite: random corpora are drawn from a fixed seed, every check
reports a one-line detail, and the worst observed deviation is included so
a drifting tolerance is visible before it fails. The `corrupt` flag
deliberately perturbs one comparison and exists purely as a negative
control for the reporting machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lgamma

import numpy as np

from . import oracle, specfun, su2, su11
from .spectrum import SpectrumClass

SCOPES = ("all", "su2", "su11", "specfun")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _uniform_disk(rng: np.random.Generator) -> complex:
    while True:
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if abs(z) <= 1.0:
            return z


def _result(name: str, err: float, tol: float, extra: str = "") -> CheckResult:
    detail = f"max deviation {err:.3e} (tolerance {tol:.1e})"
    if extra:
        detail += f"; {extra}"
    return CheckResult(name, bool(err < tol), detail)


def _phi_with_condition(a: complex, c: complex, x: complex) -> tuple[complex, float]:
    """Kummer series value plus its summation condition number."""
    term = complex(1.0)
    total = term
    mass = abs(term)
    for n in range(10_000):
        if a + n == 0:
            break
        term *= (a + n) / ((c + n) * (n + 1)) * x
        total += term
        mass += abs(term)
        if abs(term) <= 1e-17 * abs(total):
            break
    return total, mass / max(abs(total), 1e-300)


# ---------------------------------------------------------------- specfun


def specfun_checks(seed: int = 1234, corrupt: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    # Lagrange coefficients against the explicit double product sum
    worst = 0.0
    for _ in range(25):
        alpha, beta = _uniform_disk(rng) * 3, _uniform_disk(rng) * 3
        u, v = _uniform_disk(rng) * 0.5, _uniform_disk(rng) * 0.5
        for n in range(9):
            direct = 0j
            for s in range(n + 1):
                direct += (
                    specfun.pochhammer_over_factorial(alpha, s)
                    * specfun.pochhammer_over_factorial(beta, n - s)
                    * u**s
                    * v ** (n - s)
                )
            got = specfun.lagrange_g(n, alpha, beta, u, v)
            worst = max(worst, abs(got - direct) / max(1.0, abs(direct)))
    out.append(_result("specfun.generating-function-consistency", worst, 1e-12))

    # vanishing of P_n^{(j+m0-n, j-m0-n)} beyond n = 2j
    worst = 0.0
    for two_j in range(1, 9):
        j = two_j / 2.0
        for two_m0 in range(-two_j, two_j + 1, 2):
            m0 = two_m0 / 2.0
            for _ in range(5):
                x = _uniform_disk(rng) * 2
                for n in range(two_j + 1, two_j + 4):
                    worst = max(worst, abs(specfun.jacobi_p(n, j + m0 - n, j - m0 - n, x)))
    out.append(_result("specfun.vanishing-rule", worst, 1e-14))

    # Kummer symmetry of the confluent series; draws whose series are
    # ill-conditioned in doubles (mass cancellation, condition > 1e3) are
    # redrawn since they measure rounding, not the identity
    worst = 0.0
    accepted = 0
    while accepted < 40:
        a = _uniform_disk(rng) * 3
        c = _uniform_disk(rng) * 3 + 4.0
        x = _uniform_disk(rng) * 5
        lhs, cond_l = _phi_with_condition(a, c, x)
        rhs_phi, cond_r = _phi_with_condition(c - a, c, -x)
        if max(cond_l, cond_r) > 1e3:
            continue
        accepted += 1
        worst = max(worst, abs(lhs - np.exp(x) * rhs_phi) / abs(lhs))
    out.append(_result("specfun.kummer-symmetry", worst, 1e-12))

    # summation theorem for |P_n^{(-mu-n,-nu-n)}|^2 weights
    worst = 0.0
    for _ in range(12):
        mu = rng.uniform(0.3, 2.0)
        nu = rng.uniform(0.3, 2.0)
        x = _uniform_disk(rng) * 1.5
        t = rng.uniform(0.01, 0.2)
        sp = 1.0 - abs(x + 1.0) ** 2 * t / 4.0
        sm = 1.0 - abs(x - 1.0) ** 2 * t / 4.0
        if sp <= 0.05 or sm <= 0.05:
            continue
        partial = 0.0
        for n in range(200):
            w = np.exp(lgamma(n + 1.0) + lgamma(mu + nu) - lgamma(mu + nu + n))
            partial += w * abs(specfun.jacobi_p(n, -mu - n, -nu - n, x)) ** 2 * t**n
        closed = sp ** (-mu) * sm ** (-nu) * specfun.gauss_2f1(nu, mu, mu + nu, -t / (sp * sm))
        worst = max(worst, abs(partial - closed) / abs(closed))
    out.append(_result("specfun.jacobi-summation-theorem", worst, 1e-10))

    # pinned classical values
    checks = [
        abs(specfun.gauss_2f1(1.0, 1.0, 2.0, 0.5) - 2.0 * np.log(2.0)),
        abs(specfun.confluent_phi(1.0, 1.0, 1.0) - np.e),
        abs(specfun.bessel_i(0, 2.0) - 2.2795853023360673),
        abs(specfun.laguerre_l(1, 0.7, 0.3) - (0.7 + 1.0 - 0.3)),
    ]
    out.append(_result("specfun.pinned-values", max(checks), 1e-13))
    return out


# ------------------------------------------------------------------- su2


def su2_checks(seed: int = 1234, corrupt: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    js = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5]

    def random_weight():
        while True:
            w = su2.Su2Weight(_uniform_disk(rng), _uniform_disk(rng), _uniform_disk(rng))
            if abs(w.b) > 1e-6:
                return w

    # closed expansion vs matrix eigenproblem, residual and null-space overlap
    worst_res, worst_lap = 0.0, 0.0
    for _ in range(25):
        w = random_weight()
        j = js[rng.integers(len(js))]
        matrix = su2.weight_matrix(j, w)
        for m0 in su2.m_values(j):
            sol = su2.solve_aes(j, w, m0)
            worst_res = max(worst_res, oracle.eigen_residual(matrix, sol.lam, sol.state))
            null = oracle.nullspace_vector(matrix - sol.lam * np.eye(matrix.shape[0]))
            worst_lap = max(worst_lap, 1.0 - abs(np.vdot(null, sol.state.amplitudes)))
    out.append(_result("su2.eigen-residual", worst_res, 1e-10))
    out.append(_result("su2.nullspace-overlap", worst_lap, 1e-8))

    # spectrum symmetry and agreement with characteristic-polynomial roots
    worst = 0.0
    for _ in range(12):
        w = random_weight()
        j = js[rng.integers(5)]
        expected = np.array(su2.spectrum(j, w))
        roots = oracle.char_poly_roots(su2.weight_matrix(j, w))
        for lam in expected:
            worst = max(worst, float(np.min(np.abs(roots - lam))))
            worst = max(worst, float(np.min(np.abs(expected + lam))))  # symmetry
    out.append(_result("su2.spectrum-vs-roots", worst, 1e-8))

    # closed normalization vs direct series
    worst = 0.0
    for _ in range(25):
        w = random_weight()
        j = js[rng.integers(len(js))]
        for m0 in su2.m_values(j):
            closed = su2.normalization(j, w, m0)
            if corrupt:
                closed *= 1.0 + 1e-3
            series = su2.normalization_series(j, w, m0)
            worst = max(worst, abs(closed - series) / abs(series))
    extra = "corruption injected" if corrupt else ""
    out.append(_result("su2.normalization-closed-vs-series", worst, 1e-10, extra))

    # closed moments vs direct sums
    worst = 0.0
    for _ in range(20):
        w = random_weight()
        j = js[rng.integers(len(js))]
        for m0 in su2.m_values(j):
            mean_c, var_c = su2.j3_moments(j, w, m0)
            sol = su2.solve_aes(j, w, m0)
            probs = np.abs(sol.state.amplitudes) ** 2
            ms = sol.state.m_values
            mean_d = float(np.sum(ms * probs))
            var_d = float(np.sum(ms**2 * probs) - mean_d**2)
            worst = max(worst, abs(mean_c - mean_d), abs(var_c - var_d))
    out.append(_result("su2.moments-closed-vs-direct", worst, 1e-9))

    # intelligent-state saturation, generalized and ordinary families
    worst_sr, worst_cov = 0.0, 0.0
    j = 2.0
    mats = su2.rep_matrices(j)
    for family in su2.IS_FAMILIES_SU2:
        ia, ib = su2.intelligent_pair_su2(family)
        params = (
            [0.5 + 0.3j, 1.5 - 0.8j, -0.4 + 1.2j]
            if family == "generalized"
            else [-1.6, -0.5, 0.5, 1.0, 1.6]
        )
        for par in params:
            w = su2.intelligent_weight_su2(family, par)
            labels = [None] if w.b_is_zero else list(su2.m_values(j))
            for m0 in labels:
                sol = su2.solve_aes(j, w, m0)
                rep = oracle.uncertainty_audit(sol.state, mats[ia], mats[ib])
                worst_sr = max(worst_sr, abs(rep.gap_sr))
                if family != "generalized":
                    worst_cov = max(worst_cov, abs(rep.cov_ab))
    out.append(_result("su2.is-saturation-sr", worst_sr, 1e-9))
    out.append(_result("su2.is-ordinary-covariance", worst_cov, 1e-9))

    # coherent-state completeness by quadrature
    worst = 0.0
    for j in (0.5, 1.0, 1.5):
        for _ in range(4):
            amps = rng.normal(size=int(2 * j + 1)) + 1j * rng.normal(size=int(2 * j + 1))
            state = su2.Su2State(j, amps / np.linalg.norm(amps))
            worst = max(worst, abs(oracle.identity_resolution(state) - 1.0))
    out.append(_result("su2.identity-resolution", worst, 1e-6))

    # coherent states as eigenstates: unit weight at m0 = -j, and the
    # degenerate annihilation combination
    worst = 0.0
    j = 1.5
    for _ in range(6):
        theta, phi = rng.uniform(0.2, 2.9), rng.uniform(0, 2 * np.pi)
        w = su2.Su2Weight(np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta))
        zeta0 = -np.tan(theta / 2.0) * np.exp(-1j * phi)
        cs = su2.coherent_state(j, zeta0)
        worst = max(worst, oracle.eigen_residual(su2.weight_matrix(j, w), -j, cs))
        z0 = _uniform_disk(rng) * 1.5
        w0 = su2.Su2Weight(1 - z0**2, -1j * (1 + z0**2), 2 * z0)
        cs0 = su2.coherent_state(j, z0)
        worst = max(worst, oracle.eigen_residual(su2.weight_matrix(j, w0), 0.0, cs0))
    out.append(_result("su2.coherent-eigen-equations", worst, 1e-10))
    return out


# ------------------------------------------------------------------ su11


def su11_checks(seed: int = 1234, corrupt: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    k_choices = [0.5, 1.0, 1.5, 2.0]

    def random_weight(avoid_boundary: float = 0.08):
        """Random general-branch weight, resampling the near-|tau|=1 sliver."""
        while True:
            w = su11.Su11Weight(_uniform_disk(rng), _uniform_disk(rng), _uniform_disk(rng))
            if abs(w.b) < 1e-6 or w.beta_plus_is_zero:
                continue
            moduli = (abs(w.tau_plus), abs(w.tau_minus))
            if any(abs(m - 1.0) < avoid_boundary for m in moduli):
                continue
            return w

    # classification vs residual / divergence
    worst_res = 0.0
    diverged_ok = True
    n_admissible = n_forbidden = 0
    for _ in range(40):
        w = random_weight()
        k = k_choices[rng.integers(len(k_choices))]
        cls = su11.classify(w)
        if cls is SpectrumClass.FORBIDDEN:
            n_forbidden += 1
            diverged_ok = diverged_ok and su11.normalization_series_diverges(k, w)
            continue
        n_admissible += 1
        if cls is SpectrumClass.CONTINUOUS_SU11:
            lam = complex(rng.uniform(-1.5, 1.5)) * w.b
            sol = su11.solve_aes_su11(k, w, lam=lam)
        else:
            sol = su11.solve_aes_su11(k, w, l=int(rng.integers(0, 4)))
        m = oracle.su11_weight_matrix(k, w, sol.state.truncation)
        worst_res = max(worst_res, oracle.eigen_residual(m, sol.lam, sol.state, drop_rows=2))
    out.append(
        _result(
            "su11.classification-residual",
            worst_res,
            1e-8,
            f"{n_admissible} admissible / {n_forbidden} forbidden sampled",
        )
    )
    out.append(
        CheckResult(
            "su11.forbidden-series-divergence",
            diverged_ok,
            "normalization series terms eventually ratio > 1 on all forbidden draws",
        )
    )

    # discrete class: the lambda ladder is accepted, shifted lambda rejected
    k = 1.0
    w = su11.Su11Weight(1.0, 0.0, 2.0)
    worst = 0.0
    for l in range(5):
        sol = su11.solve_aes_su11(k, w, l=l)
        m = oracle.su11_weight_matrix(k, w, sol.state.truncation)
        worst = max(worst, oracle.eigen_residual(m, sol.lam, sol.state, drop_rows=2))
    n_ctrl = 160
    m = oracle.su11_weight_matrix(k, w, n_ctrl)
    lam_bad = (k + 0.37) * w.b
    sigma_min = float(np.linalg.svd(m - lam_bad * np.eye(n_ctrl + 1), compute_uv=False)[-1])
    passed = worst < 1e-8 and sigma_min > 1e-3
    out.append(
        CheckResult(
            "su11.discrete-ladder-residual",
            passed,
            f"ladder residual {worst:.3e} (tol 1e-8), off-ladder sigma_min "
            f"{sigma_min:.3e} (must exceed 1e-3)",
        )
    )

    # closed normalization and moments vs direct sums (real spectral ratio)
    worst_n, worst_m = 0.0, 0.0
    for _ in range(15):
        w = random_weight()
        k = k_choices[rng.integers(len(k_choices))]
        cls = su11.classify(w)
        if cls is SpectrumClass.FORBIDDEN:
            continue
        if cls is SpectrumClass.CONTINUOUS_SU11:
            label = {"lam": complex(rng.uniform(-1.2, 1.2)) * w.b}
        else:
            label = {"l": int(rng.integers(0, 4))}
        sol = su11.solve_aes_su11(k, w, tail_target=1e-15, **label)
        closed = su11.normalization_su11(k, w, **label)
        series = float(
            np.sum(su11.normalization_series_terms(k, w, sol.r, sol.state.truncation + 1))
        )
        worst_n = max(worst_n, abs(closed - series) / abs(series))
        mean_c, var_c = su11.k3_moments(k, w, **label)
        probs = np.abs(sol.state.amplitudes) ** 2
        levels = k + sol.state.n_values
        mean_d = float(np.sum(levels * probs))
        var_d = float(np.sum(levels**2 * probs) - mean_d**2)
        worst_m = max(worst_m, abs(mean_c - mean_d), abs(var_c - var_d))
    out.append(_result("su11.normalization-closed-vs-series", worst_n, 1e-9))
    out.append(_result("su11.moments-closed-vs-direct", worst_m, 1e-9))

    # the two sign choices of the lowering-basis solution agree (Kummer)
    worst = 0.0
    for _ in range(10):
        w = random_weight()
        k = k_choices[rng.integers(len(k_choices))]
        cls = su11.classify(w)
        if not cls.admissible:
            continue
        label = {"lam": 0.4 * w.b} if cls is SpectrumClass.CONTINUOUS_SU11 else {"l": 1}
        z = _uniform_disk(rng) * 2
        up = su11.bg_rep_eval(k, w, z=z, sign=+1, **label)
        lo = su11.bg_rep_eval(k, w, z=z, sign=-1, **label)
        worst = max(worst, abs(up - lo) / max(abs(up), 1e-30))
    out.append(_result("su11.kummer-branch-agreement", worst, 1e-10))

    # SU(2) <-> SU(1,1) interchange of the closed forms
    worst = 0.0
    for _ in range(20):
        k = k_choices[rng.integers(len(k_choices))]
        w = random_weight()
        if su11.classify(w) is SpectrumClass.FORBIDDEN:
            continue
        r = rng.uniform(-1.5, 1.5)
        t, sp, sm = w.t, w.s_plus, w.s_minus
        n2 = su2.normalization_f21(-k, r, -t, sp, sm)
        n11 = su11.normalization_f21(k, r, t, sp, sm)
        worst = max(worst, abs(n2 - n11) / abs(n11))
        theta_term = (k**2 - r**2) / (2 * k) * su11._theta(k, r, None, t, sp, sm)
        m2 = su2.moments_closed(-k, r, -t, sp, sm, theta_term)
        m11 = su11.moments_closed(k, r, t, sp, sm, theta_term)
        worst = max(worst, abs(m2[0] - m11[0]), abs(m2[1] - m11[1]))
    out.append(_result("su11.interchange-map", worst, 1e-9))

    # Barut-Girardello overlaps and eigen residuals
    worst_o, worst_r = 0.0, 0.0
    k = 1.5
    k1, k2, _ = oracle.truncated_su11_matrices(k, 420)
    km = k1 - 1j * k2
    for _ in range(8):
        z1 = _uniform_disk(rng) * 5
        z2 = _uniform_disk(rng) * 5
        s1 = su11.bg_state(k, z1, N=420)
        s2 = su11.bg_state(k, z2, N=420)
        worst_o = max(worst_o, abs(s1.state.inner(s2.state) - su11.bg_overlap(k, z1, z2)))
        worst_r = max(worst_r, oracle.eigen_residual(km, z1, s1.state, drop_rows=2))
    out.append(_result("su11.bg-overlap-formula", worst_o, 1e-10))
    out.append(_result("su11.bg-eigen-residual", worst_r, 1e-10))

    # coherent states annihilated by their degenerate weight combination
    worst = 0.0
    k = 1.0
    for _ in range(6):
        z0 = _uniform_disk(rng) * 0.8
        w = su11.Su11Weight(1 + z0**2, -1j * (1 - z0**2), -2 * z0)
        cs = su11.coherent_state_su11(k, z0, N=300)
        m = oracle.su11_weight_matrix(k, w, cs.truncation)
        worst = max(worst, oracle.eigen_residual(m, 0.0, cs, drop_rows=2))
    out.append(_result("su11.degenerate-cs-annihilation", worst, 1e-9))

    # intelligent-state saturation for the admissible families
    worst_sr, worst_cov = 0.0, 0.0
    k = 1.0
    n_is = 320
    mats = oracle.truncated_su11_matrices(k, n_is)
    for family in su11.IS_FAMILIES_SU11:
        ia, ib = su11.intelligent_pair_su11(family)
        params = (
            [1.0 + 0.7j, 2.0 - 0.5j, 0.6]
            if family == "generalized"
            else ([-0.4, -1.0, -2.5] if family == "k1k2" else [-1.5, -0.5, 0.5, 1.5])
        )
        for par in params:
            w, cls = su11.intelligent_weight_su11(family, par)
            if not cls.admissible:
                continue
            if cls is SpectrumClass.DEGENERATE_CONTINUOUS:
                labels = [{"lam": 0.5 + 0.2j}, {"lam": -0.7j}]
            elif cls.discrete:
                labels = [{"l": 0}, {"l": 2}]
            else:
                labels = [{"lam": 0.3 * w.b}, {"lam": (k + 1) * w.b}]
            for label in labels:
                sol = su11.solve_aes_su11(k, w, N=n_is, **label)
                if sol.state.truncation != n_is:
                    continue
                rep = oracle.uncertainty_audit(sol.state, mats[ia], mats[ib])
                worst_sr = max(worst_sr, abs(rep.gap_sr))
                if family != "generalized":
                    worst_cov = max(worst_cov, abs(rep.cov_ab))
    out.append(_result("su11.is-saturation-sr", worst_sr, 1e-8))
    out.append(_result("su11.is-ordinary-covariance", worst_cov, 1e-8))
    return out


def run_checks(scope: str = "all", seed: int = 1234, corrupt: bool = False) -> list[CheckResult]:
    """Run the invariant suite for one scope ('all', 'su2', 'su11', 'specfun')."""
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected one of {SCOPES}")
    out: list[CheckResult] = []
    if scope in ("all", "specfun"):
        out.extend(specfun_checks(seed, corrupt))
    if scope in ("all", "su2"):
        out.extend(su2_checks(seed, corrupt))
    if scope in ("all", "su11"):
        out.extend(su11_checks(seed, corrupt))
    return out
