"""Energy-concentration diagnostics for transform coefficients.

A transform that packs most signal energy into few coefficients denoises
well under a fixed threshold.  These measures quantify that packing:
the Lorenz curve of sorted coefficient energies, its Gini index, the
share of energy in the top q% of coefficients, and a normalized-entropy
complexity index (1 = flat spectrum, 0 = a single active coefficient).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UndefinedForN1, ZeroEnergy
from .wavmat import coefficient_values


def _energies(d):
    values = coefficient_values(d)
    x = np.abs(np.asarray(values)) ** 2
    if x.ndim != 1 or len(x) == 0:
        raise ValueError("expected a nonempty coefficient vector")
    if x.sum() == 0.0:
        raise ZeroEnergy("all coefficients are zero")
    return x


@dataclass(frozen=True)
class LorenzCurve:
    """Cumulative energy share of the smallest floor(n*p) coefficients,
    evaluated exactly at p = k/n for k = 0..n."""

    p: np.ndarray
    values: np.ndarray

    @property
    def points(self):
        return list(zip(self.p.tolist(), self.values.tolist()))

    def area(self):
        """Trapezoid area under the curve on its exact grid."""
        return float(np.trapezoid(self.values, self.p))


def lorenz(d) -> LorenzCurve:
    x = np.sort(_energies(d), kind="stable")
    n = len(x)
    cum = np.concatenate([[0.0], np.cumsum(x)])
    return LorenzCurve(p=np.arange(n + 1) / n, values=cum / cum[-1])


def gini(d) -> float:
    """1 - 2 * area under the Lorenz curve; 0 = even spread."""
    return 1.0 - 2.0 * lorenz(d).area()


def top_fraction(d, q) -> float:
    """Share of total energy carried by the ceil(q*n) largest energies."""
    if not 0.0 < q <= 1.0:
        raise ValueError(f"q must be in (0, 1], got {q}")
    x = _energies(d)
    k = min(len(x), max(1, math.ceil(q * len(x) - 1e-12)))
    top = np.sort(x)[len(x) - k:]
    return float(top.sum() / x.sum())


def complexity_index(d) -> float:
    """Normalized Shannon entropy of the energy distribution, in [0, 1]."""
    x = _energies(d)
    if len(x) < 2:
        raise UndefinedForN1("complexity index needs n >= 2")
    p = x / x.sum()
    nz = p[p > 0.0]
    entropy = float(-(nz * np.log(nz)).sum())
    return min(1.0, max(0.0, entropy / math.log(len(x))))


@dataclass(frozen=True)
class EnergyProfile:
    total_energy: float
    top_fractions: dict
    gini: float
    complexity: float


def energy_profile(d, qs=(0.01, 0.05)) -> EnergyProfile:
    x = _energies(d)
    return EnergyProfile(
        total_energy=float(x.sum()),
        top_fractions={float(q): top_fraction(d, q) for q in qs},
        gini=gini(d),
        complexity=complexity_index(d),
    )
