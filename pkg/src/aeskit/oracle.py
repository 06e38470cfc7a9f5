"""Brute-force verification oracles, independent of the closed forms.

Everything here goes the pedestrian way on dense matrices: characteristic
polynomials with simultaneous root iteration, elimination-based null
spaces, quadratic-form moments, and direct quadrature. None of it reuses
the analytic expansions it is meant to check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FullRank, NoConvergence, NotHermitian
from .su2 import Su2State, check_rep as check_rep_su2
from .su11 import Su11Weight, check_rep as check_rep_su11

DK_TOL = 1e-10
DK_MAX_ITER = 10**4
PIVOT_TOL = 1e-8
HERMITIAN_TOL = 1e-10


def char_poly_coeffs(matrix: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients via Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with det(lambda I - M) = sum_i c_i lambda^(n-i).
    """
    m = np.asarray(matrix, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    coeffs = np.empty(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = m.copy()
    eye = np.eye(n, dtype=complex)
    for step in range(1, n + 1):
        ck = -np.trace(mk) / step
        coeffs[step] = ck
        if step < n:
            mk = m @ (mk + ck * eye)
    return coeffs


def durand_kerner(coeffs: np.ndarray, tol: float = DK_TOL, max_iter: int = DK_MAX_ITER) -> np.ndarray:
    """All roots of a monic polynomial by simultaneous Weierstrass iteration.

    Multiple roots converge linearly to a cluster around the true value;
    the stopping rule is on the simultaneous update size. Raises
    NoConvergence past the iteration budget.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    deg = coeffs.size - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    radius = 1.0 + np.max(np.abs(coeffs[1:]))
    seed = (0.4 + 0.9j) ** np.arange(deg)
    roots = radius * seed / np.abs(seed)
    for _ in range(max_iter):
        values = np.polyval(coeffs, roots)
        diffs = roots[:, None] - roots[None, :]
        np.fill_diagonal(diffs, 1.0)
        denom = np.prod(diffs, axis=1)
        step = values / denom
        roots = roots - step
        if np.max(np.abs(step)) < tol * (1.0 + np.max(np.abs(roots))):
            return roots
    raise NoConvergence(f"Durand-Kerner did not settle within {max_iter} iterations")


def char_poly_roots(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues (with multiplicity) of a dense matrix, n <= 64.

    Faddeev-LeVerrier coefficients, Durand-Kerner iteration, then a single
    Newton polish per root (skipped where the derivative vanishes, i.e. at
    multiple-root clusters).
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape[0] > 64:
        raise ValueError("char_poly_roots is restricted to n <= 64")
    coeffs = char_poly_coeffs(m)
    roots = durand_kerner(coeffs)
    deriv = np.polyder(coeffs)
    values = np.polyval(coeffs, roots)
    slopes = np.polyval(deriv, roots)
    ok = np.abs(slopes) > 1e-12 * (1.0 + np.abs(values))
    roots = np.where(ok, roots - values / np.where(ok, slopes, 1.0), roots)
    return roots


def _lu_partial_pivot(matrix: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """In-place LU with partial row pivoting; multipliers stored below U.

    Returns the packed factor and the row-swap log. A column that is
    entirely zero below the diagonal keeps a zero pivot (multipliers 0).
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    swaps: list[tuple[int, int]] = []
    for col in range(n):
        best = int(np.argmax(np.abs(a[col:, col]))) + col
        if best != col:
            a[[col, best]] = a[[best, col]]
            swaps.append((col, best))
        pivot = a[col, col]
        if pivot == 0:
            continue
        mult = a[col + 1 :, col] / pivot
        a[col + 1 :, col] = mult
        a[col + 1 :, col + 1 :] -= np.outer(mult, a[col, col + 1 :])
    return a, swaps


def _lu_solve(packed: np.ndarray, swaps: list[tuple[int, int]], rhs: np.ndarray) -> np.ndarray:
    """Solve with the packed factor from _lu_partial_pivot."""
    n = packed.shape[0]
    x = np.array(rhs, dtype=complex)
    for i, j in swaps:
        x[[i, j]] = x[[j, i]]
    for col in range(n - 1):
        x[col + 1 :] -= packed[col + 1 :, col] * x[col]
    for row in range(n - 1, -1, -1):
        x[row] = (x[row] - np.dot(packed[row, row + 1 :], x[row + 1 :])) / packed[row, row]
    return x


def nullspace_vector(matrix: np.ndarray, pivot_tol: float = PIVOT_TOL) -> np.ndarray:
    """Unit vector v with ||M v|| <= pivot_tol ||M||, via elimination.

    Gaussian elimination with partial row pivoting first: if some column's
    pivot falls under pivot_tol * ||M||_F the rank deficiency is explicit,
    and that free variable is set to one and back-substituted. Large
    near-singular matrices (the truncated ladder operators) often hide a
    tiny singular value behind O(1) pivots, so otherwise the same
    factorization drives a few inverse-iteration steps, which converge to
    the near-null direction at rate sigma_min/sigma_next. Raises FullRank
    when the final residual check ||M v|| <= pivot_tol ||M|| fails.
    """
    src = np.asarray(matrix, dtype=complex)
    n = src.shape[0]
    if src.shape != (n, n):
        raise ValueError("matrix must be square")
    norm = float(np.linalg.norm(src))
    if norm == 0.0:
        v = np.zeros(n, dtype=complex)
        v[0] = 1.0
        return v
    packed, swaps = _lu_partial_pivot(src)
    diag = np.abs(np.diagonal(packed))
    threshold = pivot_tol * norm
    tiny = int(np.argmin(diag))
    if diag[tiny] < threshold:
        v = np.zeros(n, dtype=complex)
        v[tiny] = 1.0
        for row in range(tiny - 1, -1, -1):
            v[row] = -np.dot(packed[row, row + 1 :], v[row + 1 :]) / packed[row, row]
    else:
        rng = np.random.default_rng(0xAE5)
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v /= np.linalg.norm(v)
        for _ in range(3):
            v = _lu_solve(packed, swaps, v)
            v /= np.linalg.norm(v)
    v = v / np.linalg.norm(v)
    residual = float(np.linalg.norm(src @ v))
    if residual > pivot_tol * norm:
        raise FullRank(
            f"null-space candidate residual {residual:.2e} exceeds {pivot_tol} * ||M||"
        )
    return v


@dataclass(frozen=True)
class UncertaintyReport:
    """Moments of a Hermitian pair and both uncertainty-relation bounds.

    lhs = varA varB, rhs_sr = (|<[A,B]>|^2 + 4 cov^2)/4 (strong form),
    rhs_h = |<[A,B]>|^2 / 4 (weak form); gap_* = lhs - rhs_*. A state that
    is an eigenstate of eta A + i B gives gap_sr ~ 0, with cov ~ 0 as well
    when eta is real.
    """

    var_a: float
    var_b: float
    cov_ab: float
    mean_comm: complex
    lhs: float
    rhs_sr: float
    rhs_h: float
    gap_sr: float
    gap_h: float


def uncertainty_audit(state, a_matrix: np.ndarray, b_matrix: np.ndarray) -> UncertaintyReport:
    """Direct quadratic-form audit of the uncertainty relations.

    Accepts a raw amplitude vector or any object with an `amplitudes`
    attribute; the vector is renormalized defensively. Both operators must
    be numerically Hermitian.
    """
    v = np.asarray(getattr(state, "amplitudes", state), dtype=complex)
    v = v / np.linalg.norm(v)
    for name, op in (("A", a_matrix), ("B", b_matrix)):
        if np.linalg.norm(op - op.conj().T) > HERMITIAN_TOL:
            raise NotHermitian(f"operator {name} is not Hermitian within {HERMITIAN_TOL}")
    av = a_matrix @ v
    bv = b_matrix @ v
    mean_a = float(np.real(np.vdot(v, av)))
    mean_b = float(np.real(np.vdot(v, bv)))
    var_a = float(np.real(np.vdot(av, av))) - mean_a**2
    var_b = float(np.real(np.vdot(bv, bv))) - mean_b**2
    cross = complex(np.vdot(av, bv))
    cov = float(np.real(cross)) - mean_a * mean_b
    mean_comm = complex(2j * np.imag(cross))
    lhs = var_a * var_b
    rhs_sr = 0.25 * (abs(mean_comm) ** 2 + 4.0 * cov**2)
    rhs_h = 0.25 * abs(mean_comm) ** 2
    return UncertaintyReport(
        var_a=var_a,
        var_b=var_b,
        cov_ab=cov,
        mean_comm=mean_comm,
        lhs=lhs,
        rhs_sr=rhs_sr,
        rhs_h=rhs_h,
        gap_sr=lhs - rhs_sr,
        gap_h=lhs - rhs_h,
    )


def truncated_su11_matrices(k: float, N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (K1, K2, K3) on the truncated basis |k,0>..|k,N>.

    K+|k,n> = sqrt((n+1)(2k+n)) |k,n+1> with the outflow at the truncation
    edge simply dropped (compression of the infinite operator), K- its
    adjoint, K3 diagonal. Commutators hold exactly away from the edge.
    """
    check_rep_su11(k)
    if N < 8:
        raise ValueError("truncation must satisfy N >= 8")
    dim = N + 1
    ns = np.arange(dim)
    kp = np.zeros((dim, dim), dtype=complex)
    ladder = np.sqrt((ns[:-1] + 1.0) * (2 * k + ns[:-1]))
    kp[ns[:-1] + 1, ns[:-1]] = ladder
    km = kp.conj().T
    k1 = (kp + km) / 2.0
    k2 = (kp - km) / 2.0j
    k3 = np.diag(k + ns).astype(complex)
    return k1, k2, k3


def su11_weight_matrix(k: float, weight: Su11Weight, N: int) -> np.ndarray:
    """Dense truncated matrix of beta1 K1 + beta2 K2 + beta3 K3."""
    k1, k2, k3 = truncated_su11_matrices(k, N)
    return weight.beta1 * k1 + weight.beta2 * k2 + weight.beta3 * k3


def eigen_residual(matrix: np.ndarray, lam: complex, vec: np.ndarray, drop_rows: int = 0) -> float:
    """||(M - lambda) v|| over the first rows, skipping `drop_rows` at the top.

    Truncated SU(1,1) checks drop the last two rows, where the compressed
    ladder operator necessarily differs from the infinite one.
    """
    v = np.asarray(getattr(vec, "amplitudes", vec), dtype=complex)
    resid = np.asarray(matrix, dtype=complex) @ v - complex(lam) * v
    if drop_rows > 0:
        resid = resid[:-drop_rows]
    return float(np.linalg.norm(resid))


def identity_resolution(state: Su2State) -> float:
    """Coherent-state completeness integral for an SU(2) state.

    (2j+1)/pi * integral |<j,zeta|psi>|^2 / (1+|zeta|^2)^2 d^2 zeta,
    mapped to the sphere with zeta = -tan(theta/2) e^(-i phi) and evaluated
    with 64-node Gauss-Legendre in cos(theta) times a 128-node trapezoid in
    phi (the integrand is a polynomial in cos(theta) of degree <= 2j, so
    this is exact quadrature up to j = 63/2). Returns a value that should
    equal 1 for any unit state.
    """
    from math import lgamma

    j = state.j
    check_rep_su2(j)
    nodes, weights = np.polynomial.legendre.leggauss(64)
    n_phi = 128
    phis = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    ns = np.arange(int(round(2 * j)) + 1)  # n = j + m
    log_binom_sqrt = np.array(
        [0.5 * (lgamma(2 * j + 1) - lgamma(n + 1) - lgamma(2 * j - n + 1)) for n in ns]
    )
    # <j,zeta|psi> = sum_m conj(c_m(zeta)) psi_m separates into a radial
    # theta profile times pure harmonics e^(i phi (j+m))
    harmonics = np.exp(1j * np.outer(phis, ns))
    total = 0.0
    for u, w in zip(nodes, weights):
        theta = np.arccos(u)
        rho = np.tan(theta / 2.0)
        radial = np.exp(log_binom_sqrt - j * np.log1p(rho * rho)) * (-rho) ** ns
        inner = harmonics @ (radial * state.amplitudes)
        total += w * float(np.sum(np.abs(inner) ** 2)) * (2.0 * np.pi / n_phi)
    return float((2 * j + 1) / (4.0 * np.pi) * total)
