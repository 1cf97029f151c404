"""Orthonormal wavelet filter catalog and two-channel filter algebra.

The catalog holds low-pass scaling filters (haar, db2..db10, sym4..sym8,
coif1..coif3 and the complex 6-tap cd6).  On top of it sit the small
filter-domain operations needed to reason about composite transforms:
quadrature mirror construction, product-filter collapse, z-transform
evaluation and the 2x2 polyphase determinant test that certifies (or
refutes) two-channel perfect reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._filter_coeffs import FAMILY, TAPS, VANISHING_MOMENTS
from .errors import EmptyFilter, UnknownFilter

#: verdict tolerance for the perfect-reconstruction test
PR_TOLERANCE = 1e-8
#: default number of frequency samples on [-pi, pi]
DEFAULT_GRID = 4097

_INVARIANT_TOL = 1e-10


@dataclass(frozen=True)
class FilterSpec:
    """A named FIR filter on support 0..M-1.

    `shift_n` is the index shift used by the matrix builder; for catalog
    low-pass filters it defaults to the number of vanishing moments.
    """

    name: str
    taps: tuple
    shift_n: int
    family: str

    def __len__(self):
        return len(self.taps)

    @property
    def is_complex(self):
        return any(complex(t).imag != 0.0 for t in self.taps)

    def tap_array(self):
        """Taps as a numpy vector (float64, or complex128 when needed)."""
        dtype = complex if self.is_complex else float
        return np.asarray(self.taps, dtype=dtype)


def lowpass_defects(taps, tol=_INVARIANT_TOL):
    """Return the list of violated low-pass invariants (empty when valid).

    Checks sum(h) = sqrt(2) (real), sum(|h|^2) = 1, and double-shift
    orthogonality sum_s h[s] conj(h[s+2k]) = 0 for all k != 0.
    """
    h = np.asarray(taps, dtype=complex)
    bad = []
    s = h.sum()
    if abs(s.real - math.sqrt(2)) > tol or abs(s.imag) > tol:
        bad.append(f"sum(h) = {s}, expected sqrt(2)")
    e = float(np.abs(h) ** 2 @ np.ones(len(h)))
    if abs(e - 1.0) > tol:
        bad.append(f"sum(|h|^2) = {e}, expected 1")
    for k in range(1, len(h) // 2 + 1):
        d = np.vdot(h[2 * k:], h[: len(h) - 2 * k])
        if abs(d) > tol:
            bad.append(f"double-shift orthogonality violated at k={k}: {d}")
    return bad


def available_filters():
    """Sorted names accepted by :func:`get_filter`."""
    return sorted(TAPS)


def get_filter(name):
    """Look up a catalog filter by name (case-insensitive).

    Raises UnknownFilter for names outside the catalog.
    """
    key = str(name).strip().lower()
    if key not in TAPS:
        raise UnknownFilter(name)
    return FilterSpec(name=key, taps=TAPS[key], shift_n=VANISHING_MOMENTS[key],
                      family=FAMILY[key])


def qmf_taps(taps):
    """Alternating conjugate flip: g_i = (-1)^i conj(h_{M-1-i})."""
    h = np.asarray(taps, dtype=complex)
    g = np.conj(h[::-1]).copy()
    g[1::2] *= -1.0
    if np.max(np.abs(g.imag)) == 0.0:
        g = g.real
    return g


def qmf(h: FilterSpec) -> FilterSpec:
    """High-pass partner of a low-pass spec (same support and shift)."""
    g = qmf_taps(h.taps)
    return FilterSpec(name=f"qmf({h.name})", taps=tuple(g.tolist()),
                      shift_n=h.shift_n, family=h.family)


def upsample2(taps):
    """Insert one zero between consecutive taps (length 2M-1)."""
    h = np.asarray(taps)
    out = np.zeros(2 * len(h) - 1, dtype=h.dtype)
    out[::2] = h
    return out


def collapse_product_filter(h1: FilterSpec, h2: FilterSpec):
    """Single-stage low-pass equivalent of applying h2 after h1.

    Returns h1 convolved with the 2x upsampled h2 (length M1 + 2*M2 - 2),
    the candidate filter for refactoring a two-transform product into one
    filterbank stage.
    """
    a = h1.tap_array() if isinstance(h1, FilterSpec) else np.asarray(h1)
    b = h2.tap_array() if isinstance(h2, FilterSpec) else np.asarray(h2)
    return np.convolve(a, upsample2(b))


def eval_z(taps, z):
    """Evaluate H(z) = sum_k taps[k] * z^{-k}.

    `z` may be a scalar or an array of points; negative powers with the
    tap index starting at 0.
    """
    h = np.asarray(taps, dtype=complex)
    z = np.asarray(z, dtype=complex)
    k = np.arange(len(h))
    out = (h * z[..., None] ** (-k)).sum(axis=-1)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class PolyphaseReport:
    """Result of the 2x2 polyphase invertibility sweep."""

    collapsed_taps: tuple
    value_at_nyquist: complex
    omegas: np.ndarray
    dets: np.ndarray
    min_abs_det: float
    is_perfect_reconstruction: bool

    @property
    def det_grid(self):
        return list(zip(self.omegas.tolist(), self.dets.tolist()))


def polyphase_determinant(h, g, grid_size=DEFAULT_GRID, tolerance=PR_TOLERANCE):
    """Sweep det E(e^{i w}) over a uniform grid on [-pi, pi].

    E has rows (h_even, h_odd) and (g_even, g_odd), each polyphase
    component evaluated as a polynomial in e^{-i w}.  The grid size must
    be odd and >= 3 so that w = pi (and 0) land exactly on grid points.
    The filter pair is declared perfect-reconstruction iff |det| stays
    above `tolerance` everywhere.
    """
    if grid_size < 3 or grid_size % 2 == 0:
        raise ValueError(f"grid_size must be odd and >= 3, got {grid_size}")
    h = np.asarray(h, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if not h.any() or not g.any():
        raise EmptyFilter("polyphase test needs nonzero filters")
    omegas = np.linspace(-math.pi, math.pi, grid_size)
    zs = np.exp(1j * omegas)
    dets = (eval_z(h[0::2], zs) * eval_z(g[1::2], zs)
            - eval_z(h[1::2], zs) * eval_z(g[0::2], zs))
    min_abs = float(np.min(np.abs(dets)))
    return PolyphaseReport(
        collapsed_taps=tuple(h.tolist()),
        value_at_nyquist=eval_z(h, -1.0),
        omegas=omegas,
        dets=dets,
        min_abs_det=min_abs,
        is_perfect_reconstruction=min_abs > tolerance,
    )


def _check_catalog():
    for name in TAPS:
        bad = lowpass_defects(TAPS[name])
        if bad:
            raise RuntimeError(f"catalog filter {name!r} is corrupt: {bad}")


_check_catalog()
