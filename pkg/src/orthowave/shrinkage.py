"""Threshold denoising: transform, shrink coefficients, invert.

The pipeline is deliberately fixed (hard thresholding at the universal
level) so that different transforms can be compared on identical terms.
Noise level comes in three flavors: caller-supplied, median absolute
deviation over the finest detail band, or MAD over all detail-like
coefficients; the latter is the fallback for composite layouts that have
no designated finest band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEstimate
from .wavmat import (CoefficientVector, WaveletOperator, apply,
                     coefficient_values, inverse_apply)

#: median absolute deviation of a standard normal
MAD_SCALE = 0.6745

KNOWN = "known"
MAD_FINEST = "mad_finest"
MAD_ALL = "mad_all"
AUTO = "auto"


@dataclass(frozen=True)
class ThresholdRule:
    """How the shrinkage level is chosen.

    `sigma_source="auto"` resolves to mad_finest for layouts with real
    detail bands and to mad_all for mixed (composite) layouts.  Scaling
    coefficients are thresholded like everything else unless
    `exempt_scaling` is set.
    """

    kind: str = "hard"
    lambda_source: str = "universal"  # or "fixed"
    sigma_source: str = AUTO
    sigma: float | None = None
    lam: float | None = None
    exempt_scaling: bool = False

    def __post_init__(self):
        if self.kind != "hard":
            raise ValueError(f"unsupported threshold kind {self.kind!r}")
        if self.lambda_source not in ("universal", "fixed"):
            raise ValueError(f"unsupported lambda source {self.lambda_source!r}")
        if self.lambda_source == "fixed" and (self.lam is None or self.lam < 0):
            raise ValueError("fixed rule needs lam >= 0")
        if self.sigma_source not in (AUTO, KNOWN, MAD_FINEST, MAD_ALL):
            raise ValueError(f"unsupported sigma source {self.sigma_source!r}")
        if self.sigma_source == KNOWN and (self.sigma is None or self.sigma < 0):
            raise ValueError("known sigma source needs sigma >= 0")


def universal_rule(sigma=None, exempt_scaling=False):
    """Universal threshold with known sigma, or MAD estimation when None."""
    if sigma is None:
        return ThresholdRule(exempt_scaling=exempt_scaling)
    return ThresholdRule(sigma_source=KNOWN, sigma=float(sigma),
                         exempt_scaling=exempt_scaling)


def fixed_rule(lam, exempt_scaling=False):
    return ThresholdRule(lambda_source="fixed", lam=float(lam),
                         exempt_scaling=exempt_scaling)


def estimate_sigma(d, layout=None, source=MAD_FINEST):
    """Robust noise scale from coefficient magnitudes.

    mad_finest uses the finest-level detail band(s); mad_all uses every
    detail-like coefficient.  Raises DegenerateEstimate when the selected
    coefficients are all zero.
    """
    values = coefficient_values(d)
    if layout is None:
        if not isinstance(d, CoefficientVector):
            raise ValueError("estimate_sigma needs a layout")
        layout = d.layout
    if source == MAD_FINEST:
        idx = layout.finest_detail_indices()
        if len(idx) == 0:
            raise ValueError("layout has no finest detail band")
    elif source == MAD_ALL:
        idx = layout.detail_indices()
    else:
        raise ValueError(f"unsupported sigma source {source!r}")
    sigma = float(np.median(np.abs(values[idx]))) / MAD_SCALE
    if sigma == 0.0:
        raise DegenerateEstimate("selected coefficients are all zero")
    return sigma


def universal_threshold(n, sigma):
    """lambda = sigma * sqrt(2 ln n) (natural log)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return float(sigma) * math.sqrt(2.0 * math.log(n))


def hard_threshold(d, lam, exempt=None):
    """Zero out entries with |d_i| <= lam; survivors pass unchanged.

    `exempt` is an optional index array whose entries bypass the rule.
    Returns the same container kind it was given.
    """
    if lam < 0:
        raise ValueError("threshold must be nonnegative")
    values = coefficient_values(d)
    out = np.where(np.abs(values) > lam, values, 0)
    if exempt is not None and len(exempt):
        out[exempt] = values[exempt]
    if isinstance(d, CoefficientVector):
        return CoefficientVector(out, d.layout)
    return out


@dataclass(frozen=True)
class DenoiseReport:
    """Per-block thresholds/sigmas (single-block operators report floats)."""

    thresholds: tuple
    kept: int
    sigmas: tuple
    imag_residue: float

    @property
    def threshold(self):
        return self.thresholds[0] if len(self.thresholds) == 1 \
            else self.thresholds

    @property
    def sigma(self):
        return self.sigmas[0] if len(self.sigmas) == 1 else self.sigmas


def resolve_sigma_source(rule: ThresholdRule, layout):
    if rule.sigma_source != AUTO:
        return rule.sigma_source
    return MAD_ALL if layout.is_mixed else MAD_FINEST


def denoise(y, op: WaveletOperator, rule: ThresholdRule = ThresholdRule()):
    """Full pipeline: threshold W y at the chosen level, reconstruct.

    A block-diagonal operator is a stack of independent sub-pipelines, so
    the universal threshold is computed per diagonal block from that
    block's thresholded-coefficient count.  Returns (s_hat,
    DenoiseReport); for a real input through a complex operator the real
    part is returned and the size of the discarded imaginary residue is
    reported.
    """
    y = np.asarray(y)
    d = apply(op, y)
    exempt = op.layout.scaling_indices() if rule.exempt_scaling else None

    thresholds, sigmas = [], []
    kept_values = np.array(d.values, copy=True)
    for (a, b), sub in zip(op.layout.block_slices(), op.layout.block_layouts()):
        block = CoefficientVector(d.values[a:b], sub)
        block_exempt = exempt[(exempt >= a) & (exempt < b)] - a \
            if exempt is not None else None
        n_thresholded = (b - a) - (len(block_exempt) if block_exempt is not None
                                   else 0)
        sigma = None
        if rule.lambda_source == "fixed":
            lam = rule.lam
        else:
            source = resolve_sigma_source(rule, sub)
            sigma = rule.sigma if source == KNOWN else \
                estimate_sigma(block, sub, source)
            lam = universal_threshold(max(n_thresholded, 1), sigma)
        kept_values[a:b] = hard_threshold(block, lam, block_exempt).values
        thresholds.append(float(lam))
        sigmas.append(sigma)

    s_hat = inverse_apply(op, CoefficientVector(kept_values, op.layout))
    residue = 0.0
    if np.iscomplexobj(s_hat) and not np.iscomplexobj(y):
        residue = float(np.abs(s_hat.imag).max())
        s_hat = s_hat.real
    return s_hat, DenoiseReport(thresholds=tuple(thresholds),
                                kept=int(np.count_nonzero(kept_values)),
                                sigmas=tuple(sigmas), imag_residue=residue)
