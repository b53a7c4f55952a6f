"""Gaussian surrogate ensemble: coefficients, covariance fidelity, rank
structure, determinism."""

import math

import numpy as np
import pytest

from hyperspectra import (
    CovarianceProfile,
    ModelParams,
    assemble_surrogate,
    covariance_profile,
    sample_surrogate,
    surrogate_coefficients,
)
from hyperspectra.gaussian import _draw_components


def test_coefficients_catalog():
    c = surrogate_coefficients(CovarianceProfile(rho_n=0.0, gamma_n=0.0, theta_sq=1.0))
    assert (c.theta, c.alpha, c.beta) == (1.0, 0.0, 0.0)

    prof = covariance_profile(ModelParams.of(6, [4], [0.5]))
    c = surrogate_coefficients(prof)
    assert c.theta == pytest.approx(math.sqrt(1.0 / 6.0), rel=1e-12)
    assert c.alpha == pytest.approx(math.sqrt(1.0 / 3.0), rel=1e-12)
    assert c.beta == pytest.approx(math.sqrt(1.0 / 6.0), rel=1e-12)


def test_coefficients_variance_identity_randomized():
    rng = np.random.default_rng(31)
    for _ in range(50):
        n = int(rng.integers(5, 400))
        r = int(rng.integers(2, min(n, 9)))
        p = float(rng.uniform(0.01, 0.99))
        c = surrogate_coefficients(covariance_profile(ModelParams.of(n, [r], [p])))
        assert c.theta**2 + 2 * c.alpha**2 + c.beta**2 == pytest.approx(
            1.0, abs=1e-12
        )


def test_coefficients_reject_bad_profile():
    with pytest.raises(ValueError):
        surrogate_coefficients(CovarianceProfile(rho_n=0.5, gamma_n=0.1, theta_sq=0.2))


def test_sample_determinism():
    prof = covariance_profile(ModelParams.of(10, [3], [0.4]))
    c = surrogate_coefficients(prof)
    a = sample_surrogate(64, c, seed=99)
    b = sample_surrogate(64, c, seed=99)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_surrogate(64, c, seed=100))


def test_sample_shape_invariants():
    prof = covariance_profile(ModelParams.of(12, [4], [0.25]))
    H = sample_surrogate(80, surrogate_coefficients(prof), seed=2)
    assert H.shape == (80, 80)
    assert np.array_equal(H, H.T)
    assert (np.diag(H) == 0.0).all()


def test_entry_variance_goe_case():
    # theta = 1: plain symmetric Gaussian entries with variance 1/n
    c = surrogate_coefficients(CovarianceProfile(rho_n=0.0, gamma_n=0.0, theta_sq=1.0))
    n = 2000
    H = sample_surrogate(n, c, seed=7)
    off = H[np.triu_indices(n, 1)]
    var = off.var(ddof=1)
    se = math.sqrt(2.0 / off.size) / n  # Var estimator s.e. for Gaussian data
    assert abs(var - 1.0 / n) <= 3 * se


def test_entry_covariance_fidelity():
    # n Cov(H_12, H_13) ~ gamma_n and n Cov(H_12, H_34) ~ rho_n
    params = ModelParams.of(200, [5], [0.3])
    prof = covariance_profile(params)
    c = surrogate_coefficients(prof)
    trials = 2000
    h12 = np.empty(trials)
    h13 = np.empty(trials)
    h34 = np.empty(trials)
    for s in range(trials):
        H = sample_surrogate(200, c, seed=s)
        h12[s], h13[s], h34[s] = H[0, 1], H[0, 2], H[2, 3]
    for x, y, want in [(h12, h13, prof.gamma_n), (h12, h34, prof.rho_n)]:
        prod = 200.0 * x * y
        cov = prod.mean() - 200.0 * x.mean() * y.mean()
        se = prod.std(ddof=1) / math.sqrt(trials)
        assert abs(cov - want) <= 4 * se


def test_perturbation_rank_at_most_three():
    # alpha (g_u + g_v) + beta g as a matrix has rank <= 3 before the
    # diagonal correction; check the 4th singular value vanishes
    prof = covariance_profile(ModelParams.of(20, [6], [0.3]))
    c = surrogate_coefficients(prof)
    n = 100
    W, g, g0 = _draw_components(n, seed=5)
    pert = c.alpha * (g[:, None] + g[None, :]) + c.beta * g0
    sv = np.linalg.svd(pert, compute_uv=False)
    assert sv[3] < 1e-8 * sv[0]
    # and the assembled matrix reproduces theta W + perturbation off-diagonal
    H = assemble_surrogate(n, c, W, g, g0)
    upper = np.triu(W, 1)
    want = (c.theta * (upper + upper.T) + pert) / math.sqrt(n)
    np.fill_diagonal(want, 0.0)
    assert H == pytest.approx(want, abs=1e-15)


def test_entry_normality():
    # pooled standardized entries over many seeds: skewness and excess
    # kurtosis near zero
    prof = covariance_profile(ModelParams.of(15, [4], [0.2]))
    c = surrogate_coefficients(prof)
    n = 50
    vals = np.empty(10_000)
    for s in range(vals.size):
        H = sample_surrogate(n, c, seed=s)
        vals[s] = H[1, 2] * math.sqrt(n)
    m = vals.mean()
    sd = vals.std(ddof=1)
    z = (vals - m) / sd
    skew = np.mean(z**3)
    kurt = np.mean(z**4) - 3.0
    assert abs(skew) < 0.1
    assert abs(kurt) < 0.2
