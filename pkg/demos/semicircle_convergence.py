"""Kolmogorov-Smirnov distance to the predicted semicircle as n grows."""

import math

import numpy as np

from hyperspectra import (
    ModelParams,
    SemicircleLaw,
    adjacency,
    center_scale,
    derive_stats,
    eigenvalues,
    esd,
    ks_distance,
    sample_hypergraph,
)

TRIALS = 3

print("     n   s2_pred        KS")
for n in (100, 200, 400, 800):
    params = ModelParams.of(n, [2, 3], [0.08, 0.004])
    stats = derive_stats(params)
    s2 = math.fsum(w * (1.0 - r / n) ** 2 for w, r in zip(stats.w_fin, params.r))
    pooled = np.concatenate(
        [
            eigenvalues(center_scale(adjacency(sample_hypergraph(params, 10 * n + t)), params))
            for t in range(TRIALS)
        ]
    )
    ks = ks_distance(esd(pooled), SemicircleLaw(s2))
    print(f"{n:6d}   {s2:.5f}   {ks:.4f}")

print()
print("the KS column should shrink roughly like n^(-1/2)")
