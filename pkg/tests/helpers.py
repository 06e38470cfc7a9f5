"""Shared test utilities: random corpora and multiset comparison."""

import numpy as np


def uniform_disk(rng: np.random.Generator, radius: float = 1.0) -> complex:
    """Uniform draw from the complex disk of the given radius."""
    while True:
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if abs(z) <= 1.0:
            return z * radius


def random_su2_weight(rng, min_b=1e-6):
    from aeskit import su2

    while True:
        w = su2.Su2Weight(uniform_disk(rng), uniform_disk(rng), uniform_disk(rng))
        if abs(w.b) > min_b:
            return w


def random_su11_weight(rng, min_b=1e-6, avoid_boundary=0.05):
    """General-branch SU(1,1) weight bounded away from the |tau|=1 circle."""
    from aeskit import su11

    while True:
        w = su11.Su11Weight(uniform_disk(rng), uniform_disk(rng), uniform_disk(rng))
        if abs(w.b) < min_b or w.beta_plus_is_zero:
            continue
        if any(abs(abs(t) - 1.0) < avoid_boundary for t in (w.tau_plus, w.tau_minus)):
            continue
        return w


def assert_multiset_close(found, expected, tol):
    """Greedy nearest matching of two eigenvalue multisets."""
    found = list(found)
    for lam in expected:
        dists = [abs(f - lam) for f in found]
        idx = int(np.argmin(dists))
        assert dists[idx] < tol, f"no root within {tol} of {lam}; nearest {dists[idx]:.3e}"
        found.pop(idx)
    assert not found


def series_sum_su11_norm(k, weight, r, rel_tail=1e-13, start=512):
    """Direct normalization series, summed until the tail is negligible."""
    from aeskit import su11

    count = start
    while True:
        terms = np.real(su11.normalization_series_terms(k, weight, r, count))
        total = float(np.sum(terms))
        if abs(terms[-1]) < rel_tail * abs(total) or count >= 1 << 15:
            return total
        count *= 2
