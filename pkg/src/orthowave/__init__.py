"""Orthogonal wavelet matrices, composite unitary transforms, threshold
denoising and sparsity diagnostics, with a CLI and sklearn-style wrappers."""

from .compose import (block_diag, kron, product, similarity, transform2d,
                      inverse_transform2d)
from .diagnostics import (EnergyProfile, LorenzCurve, complexity_index,
                          energy_profile, gini, lorenz, top_fraction)
from .estimators import WaveletDenoiser, WaveletTransform
from .filters import (FilterSpec, PolyphaseReport, available_filters,
                      collapse_product_filter, eval_z, get_filter,
                      polyphase_determinant, qmf, qmf_taps)
from .pgm import GrayImage, read_pgm, write_pgm
from .recipes import build_recipe, canonical, parse_recipe
from .shrinkage import (DenoiseReport, ThresholdRule, denoise, estimate_sigma,
                        fixed_rule, hard_threshold, universal_rule,
                        universal_threshold)
from .signals import (NoiseSource, available_signals, combined_signal,
                      gaussian_noise, make_signal, read_signal_file,
                      rescale_to_snr, write_signal_file)
from .wavmat import (Band, BandLayout, CoefficientVector, WaveletOperator,
                     apply, atom, build_level_blocks, build_wavmat,
                     inverse_apply, max_levels)

__version__ = "0.1.0"

__all__ = [
    "Band", "BandLayout", "CoefficientVector", "DenoiseReport",
    "EnergyProfile", "FilterSpec", "GrayImage", "LorenzCurve", "NoiseSource",
    "PolyphaseReport", "ThresholdRule", "WaveletDenoiser", "WaveletOperator",
    "WaveletTransform", "apply", "atom", "available_filters",
    "available_signals", "block_diag", "build_level_blocks", "build_recipe",
    "build_wavmat", "canonical", "collapse_product_filter",
    "combined_signal", "complexity_index", "denoise", "energy_profile",
    "estimate_sigma", "eval_z", "fixed_rule", "gaussian_noise", "get_filter",
    "gini", "hard_threshold", "inverse_apply", "inverse_transform2d", "kron",
    "lorenz", "make_signal", "max_levels", "parse_recipe",
    "polyphase_determinant", "product", "qmf", "qmf_taps", "read_pgm",
    "read_signal_file", "rescale_to_snr", "similarity", "top_fraction",
    "transform2d", "universal_rule", "universal_threshold", "write_pgm",
    "write_signal_file",
]
