"""Spectra, empirical spectral distributions, and semicircle reference laws.

The semicircle law with variance s^2 has density
(2 pi s^2)^{-1} sqrt(4 s^2 - x^2) on [-2s, 2s], cumulative

    F(x) = 1/2 + x sqrt(4 s^2 - x^2) / (4 pi s^2) + arcsin(x / 2s) / pi,

and Stieltjes transform S(z) = (-z + sqrt(z^2 - 4 s^2)) / (2 s^2) on the
upper half plane, the root with Im S > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "EmpiricalMeasure",
    "SemicircleLaw",
    "eigenvalues",
    "esd",
    "average_esd",
    "semicircle_pdf",
    "semicircle_cdf",
    "semicircle_stieltjes",
    "empirical_stieltjes",
    "ks_distance",
    "ks_against_cdf",
    "moment",
]

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """A probability measure in one of two forms: equal-weight atoms (sorted)
    or a histogram (bin edges plus masses, uniform within each bin)."""

    atoms: np.ndarray | None = None
    bin_edges: np.ndarray | None = None
    masses: np.ndarray | None = None

    def __post_init__(self) -> None:
        has_atoms = self.atoms is not None
        has_hist = self.bin_edges is not None or self.masses is not None
        if has_atoms == has_hist:
            raise ValueError("measure needs either atoms or a histogram, not both")
        if has_atoms:
            atoms = np.sort(np.asarray(self.atoms, dtype=np.float64).ravel())
            if atoms.size == 0:
                raise ValueError("measure needs at least one atom")
            if not np.isfinite(atoms).all():
                raise ValueError("atoms must be finite")
            atoms.setflags(write=False)
            object.__setattr__(self, "atoms", atoms)
        else:
            edges = np.asarray(self.bin_edges, dtype=np.float64).ravel()
            masses = np.asarray(self.masses, dtype=np.float64).ravel()
            if edges.size != masses.size + 1:
                raise ValueError(
                    f"{edges.size} bin edges do not bound {masses.size} masses"
                )
            if masses.size == 0:
                raise ValueError("histogram needs at least one bin")
            if not (np.isfinite(edges).all() and np.isfinite(masses).all()):
                raise ValueError("histogram values must be finite")
            if np.any(np.diff(edges) <= 0):
                raise ValueError("bin edges must be strictly increasing")
            if masses.min(initial=0.0) < 0.0:
                raise ValueError("masses must be nonnegative")
            total = masses.sum()
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"masses sum to {total!r}, not 1")
            edges.setflags(write=False)
            masses.setflags(write=False)
            object.__setattr__(self, "bin_edges", edges)
            object.__setattr__(self, "masses", masses)

    @classmethod
    def from_atoms(cls, atoms) -> "EmpiricalMeasure":
        return cls(atoms=np.asarray(atoms))

    @classmethod
    def from_histogram(cls, bin_edges, masses) -> "EmpiricalMeasure":
        return cls(bin_edges=np.asarray(bin_edges), masses=np.asarray(masses))

    @property
    def is_histogram(self) -> bool:
        return self.atoms is None

    def cdf(self, x) -> np.ndarray | float:
        """Right-continuous cdf for atoms; piecewise linear for a histogram."""
        x = np.asarray(x, dtype=np.float64)
        if self.atoms is not None:
            out = np.searchsorted(self.atoms, x, side="right") / self.atoms.size
        else:
            cum = np.concatenate(([0.0], np.cumsum(self.masses)))
            out = np.interp(x, self.bin_edges, cum)
        return out if out.ndim else float(out)


def eigenvalues(H: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a symmetric real matrix.

    Requires max |H - H^T| <= 1e-12 and finite entries.  The LAPACK
    symmetric solver keeps residuals ||H v - lambda v|| at the
    1e-10 * n * max|H| level, which tests spot-check.
    """
    H = np.asarray(H, dtype=np.float64)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"need a square matrix, got shape {H.shape}")
    if not np.isfinite(H).all():
        raise ValueError("matrix entries must be finite")
    if H.shape[0] > 1 and np.abs(H - H.T).max() > _SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric within 1e-12")
    return np.linalg.eigvalsh(H)


def esd(eigs) -> EmpiricalMeasure:
    """Empirical spectral distribution: one atom of mass 1/n per eigenvalue."""
    return EmpiricalMeasure.from_atoms(eigs)


def average_esd(measures: Sequence[EmpiricalMeasure], bins: int) -> EmpiricalMeasure:
    """Equal-weight mixture of atom-form measures, binned on the common hull."""
    if not measures:
        raise ValueError("need at least one measure")
    if not isinstance(bins, int) or bins < 1:
        raise ValueError(f"need an integer bin count >= 1, got {bins!r}")
    for m in measures:
        if m.is_histogram:
            raise ValueError("average_esd mixes atom-form measures only")
    lo = min(float(m.atoms[0]) for m in measures)
    hi = max(float(m.atoms[-1]) for m in measures)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    masses = np.zeros(bins, dtype=np.float64)
    share = 1.0 / len(measures)
    edges = np.linspace(lo, hi, bins + 1)
    for m in measures:
        counts, _ = np.histogram(m.atoms, bins=edges)
        masses += counts * (share / m.atoms.size)
    return EmpiricalMeasure.from_histogram(edges, masses)


# ---------------------------------------------------------------------------
# semicircle reference law


def _check_s_sq(s_sq: float) -> float:
    s_sq = float(s_sq)
    if not (s_sq > 0.0) or not math.isfinite(s_sq):
        raise ValueError(f"need a positive finite variance, got {s_sq}")
    return s_sq


def semicircle_pdf(s_sq: float, x) -> np.ndarray | float:
    s_sq = _check_s_sq(s_sq)
    x = np.asarray(x, dtype=np.float64)
    sq = 4.0 * s_sq - x * x
    out = np.where(sq > 0.0, np.sqrt(np.maximum(sq, 0.0)) / (2.0 * math.pi * s_sq), 0.0)
    return out if out.ndim else float(out)


def semicircle_cdf(s_sq: float, x) -> np.ndarray | float:
    s_sq = _check_s_sq(s_sq)
    two_s = 2.0 * math.sqrt(s_sq)
    x = np.asarray(x, dtype=np.float64)
    xc = np.clip(x, -two_s, two_s)
    sq = np.maximum(4.0 * s_sq - xc * xc, 0.0)
    out = (
        0.5
        + xc * np.sqrt(sq) / (4.0 * math.pi * s_sq)
        + np.arcsin(xc / two_s) / math.pi
    )
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def semicircle_stieltjes(s_sq: float, z: complex) -> complex:
    """S(z) = (-z + sqrt(z^2 - 4 s^2)) / (2 s^2), the root with Im S > 0."""
    s_sq = _check_s_sq(s_sq)
    z = complex(z)
    if not z.imag > 0.0:
        raise ValueError(f"need Im z > 0, got z = {z}")
    w = cmath.sqrt(z * z - 4.0 * s_sq)
    S = (-z + w) / (2.0 * s_sq)
    if S.imag <= 0.0:
        S = (-z - w) / (2.0 * s_sq)
    return S


@dataclass(frozen=True)
class SemicircleLaw:
    """Semicircle law with variance s_sq, support [-2s, 2s]."""

    s_sq: float

    def __post_init__(self) -> None:
        _check_s_sq(self.s_sq)

    @property
    def radius(self) -> float:
        return 2.0 * math.sqrt(self.s_sq)

    def pdf(self, x):
        return semicircle_pdf(self.s_sq, x)

    def cdf(self, x):
        return semicircle_cdf(self.s_sq, x)

    def stieltjes(self, z: complex) -> complex:
        return semicircle_stieltjes(self.s_sq, z)


def empirical_stieltjes(eigs, z: complex) -> complex:
    """Mean of 1 / (lambda - z) over the eigenvalues; Im z > 0 required."""
    z = complex(z)
    if not z.imag > 0.0:
        raise ValueError(f"need Im z > 0, got z = {z}")
    eigs = np.asarray(eigs, dtype=np.float64).ravel()
    if eigs.size == 0:
        raise ValueError("need at least one eigenvalue")
    return complex(np.mean(1.0 / (eigs - z)))


# ---------------------------------------------------------------------------
# distances and moments


def ks_against_cdf(m: EmpiricalMeasure, cdf: Callable) -> float:
    """sup_x |F_m(x) - F(x)| over the measure's jump or bin boundaries,
    taking both one-sided limits at atoms."""
    if m.atoms is not None:
        x = m.atoms
        size = x.size
        F = np.asarray(cdf(x), dtype=np.float64)
        # left limit matters when the target cdf itself jumps at an atom
        F_left = np.asarray(cdf(np.nextafter(x, -np.inf)), dtype=np.float64)
        upper = np.arange(1, size + 1) / size
        lower = np.arange(0, size) / size
        d_plus = float(np.max(upper - F))
        d_minus = float(np.max(F_left - lower))
        return max(d_plus, d_minus, 0.0)
    edges = m.bin_edges
    fm = np.concatenate(([0.0], np.cumsum(m.masses)))
    F = np.asarray(cdf(edges), dtype=np.float64)
    return float(np.max(np.abs(fm - F)))


def ks_distance(m: EmpiricalMeasure, law: SemicircleLaw) -> float:
    """Kolmogorov distance between the measure and a semicircle law."""
    return ks_against_cdf(m, law.cdf)


def moment(m: EmpiricalMeasure, k: int) -> float:
    """k-th moment.  Exact for atoms; bin-midpoint approximation for a
    histogram (so only as good as the binning)."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"need an integer moment order >= 0, got {k!r}")
    if m.atoms is not None:
        return float(np.mean(m.atoms**k))
    mids = 0.5 * (m.bin_edges[:-1] + m.bin_edges[1:])
    return float(np.sum(m.masses * mids**k))
