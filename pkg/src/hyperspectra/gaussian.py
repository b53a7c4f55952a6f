"""Gaussian surrogate matching the entry covariance profile.

For a profile (rho, gamma, theta^2) the surrogate entry is

    U_uv = theta W_uv + alpha (g_u + g_v) + beta g,   u < v,

with W_uv, g_u, g i.i.d. standard normal, theta = sqrt(theta^2),
alpha = sqrt(gamma - rho), beta = sqrt(rho).  Then Var U_uv = 1, entries
sharing one vertex have covariance gamma, vertex-disjoint entries rho.
The sampled matrix is symmetric with zero diagonal, scaled by 1/sqrt(n).
The (g_u + g_v) and g parts form a perturbation of rank at most 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .theory import CovarianceProfile

__all__ = ["SurrogateCoefficients", "surrogate_coefficients", "sample_surrogate"]

# covariance identities can go this far negative through log-space rounding
_PROFILE_SLACK = 1e-12


@dataclass(frozen=True)
class SurrogateCoefficients:
    theta: float
    alpha: float
    beta: float


def surrogate_coefficients(profile: CovarianceProfile) -> SurrogateCoefficients:
    """theta = sqrt(theta^2), alpha = sqrt(gamma - rho), beta = sqrt(rho).

    Satisfies theta^2 + 2 alpha^2 + beta^2 = 1 by construction.
    """
    rho, gamma, theta_sq = profile.rho_n, profile.gamma_n, profile.theta_sq
    if not 0.0 <= rho <= 1.0 or not 0.0 <= gamma <= 1.0:
        raise ValueError(f"profile outside [0, 1]: rho={rho}, gamma={gamma}")
    alpha_sq = gamma - rho
    if alpha_sq < -_PROFILE_SLACK or theta_sq < -_PROFILE_SLACK:
        raise ValueError(
            f"inconsistent profile: gamma - rho = {alpha_sq}, theta^2 = {theta_sq}"
        )
    return SurrogateCoefficients(
        theta=math.sqrt(max(theta_sq, 0.0)),
        alpha=math.sqrt(max(alpha_sq, 0.0)),
        beta=math.sqrt(max(rho, 0.0)),
    )


def _draw_components(
    n: int, seed: int
) -> tuple[np.ndarray, np.ndarray, float]:
    """Raw normal draws behind one surrogate sample, in a fixed order."""
    rng = np.random.default_rng(seed)
    W = rng.standard_normal((n, n))
    g = rng.standard_normal(n)
    g0 = float(rng.standard_normal())
    return W, g, g0


def assemble_surrogate(
    n: int,
    coeffs: SurrogateCoefficients,
    W: np.ndarray,
    g: np.ndarray,
    g0: float,
) -> np.ndarray:
    """Deterministic assembly given the component draws; upper triangle of W
    is used for both (u, v) and (v, u)."""
    upper = np.triu(W, 1)
    sym = upper + upper.T
    pert = coeffs.alpha * (g[:, None] + g[None, :]) + coeffs.beta * g0
    H = (coeffs.theta * sym + pert) / math.sqrt(n)
    np.fill_diagonal(H, 0.0)
    return H


def sample_surrogate(n: int, coeffs: SurrogateCoefficients, seed: int) -> np.ndarray:
    """One n x n surrogate matrix: symmetric, zero diagonal, float64.

    Identical (n, coeffs, seed) give a bit-identical matrix.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"need an integer n >= 2, got {n!r}")
    W, g, g0 = _draw_components(n, seed)
    return assemble_surrogate(n, coeffs, W, g, g0)
