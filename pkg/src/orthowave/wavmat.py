"""Dense orthogonal/unitary wavelet matrices built from catalog filters.

A single decomposition level is a pair of circulant blocks (H, G) whose
rows carry the low- and high-pass filters on a stride-2 lattice with
periodic wrap-around.  Cascading levels on the running scaling path gives
the full transform matrix; a per-level parity bit selects between the two
decimation phases, so each filter yields a family of 2^L distinct
orthogonal matrices for an L-level transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (FilterLongerThanBlock, IndexOutOfRange, LengthMismatch,
                     SizeOverflow)
from .filters import FilterSpec, get_filter, qmf_taps

#: largest dense operator this library will materialize (4096^2 complex
#: doubles = 256 MB)
DENSE_CEILING = 4096

SCALING = "scaling"
DETAIL = "detail"
MIXED = "mixed"


@dataclass(frozen=True)
class Band:
    kind: str
    level: int
    start: int
    length: int

    @property
    def stop(self):
        return self.start + self.length


@dataclass(frozen=True)
class BandLayout:
    """Partition of coefficient indices into scaling/detail/mixed bands.

    `block_starts` marks the independent diagonal blocks of the operator
    (a single transform is one block; block-diagonal assemblies keep one
    entry per part) so the shrinkage stage can treat blocks separately.
    """

    bands: tuple
    block_starts: tuple = (0,)

    def __post_init__(self):
        pos = 0
        for b in self.bands:
            if b.start != pos or b.length < 1:
                raise ValueError("bands must partition 0..N-1 in order")
            pos = b.stop
        if not self.block_starts or self.block_starts[0] != 0 or \
                list(self.block_starts) != sorted(set(self.block_starts)):
            raise ValueError("block_starts must be sorted and begin at 0")

    def block_slices(self):
        edges = list(self.block_starts) + [self.n]
        return [(a, b) for a, b in zip(edges[:-1], edges[1:])]

    def block_layouts(self):
        """Per-block sub-layouts, re-based to start at 0."""
        out = []
        for a, b in self.block_slices():
            bands = tuple(Band(x.kind, x.level, x.start - a, x.length)
                          for x in self.bands if a <= x.start < b)
            out.append(BandLayout(bands))
        return out

    @property
    def n(self):
        return self.bands[-1].stop

    def indices(self, kinds):
        sel = [np.arange(b.start, b.stop) for b in self.bands if b.kind in kinds]
        return np.concatenate(sel) if sel else np.empty(0, dtype=int)

    def scaling_indices(self):
        return self.indices({SCALING})

    def detail_indices(self):
        """Detail coefficients; mixed bands count as detail-like."""
        return self.indices({DETAIL, MIXED})

    def finest_detail_indices(self):
        levels = [b.level for b in self.bands if b.kind == DETAIL]
        if not levels:
            return np.empty(0, dtype=int)
        finest = max(levels)
        sel = [np.arange(b.start, b.stop) for b in self.bands
               if b.kind == DETAIL and b.level == finest]
        return np.concatenate(sel)

    @property
    def is_mixed(self):
        return all(b.kind == MIXED for b in self.bands)

    def shifted_bands(self, offset):
        """Bands translated by `offset`, for concatenation into a new layout."""
        return tuple(Band(b.kind, b.level, b.start + offset, b.length)
                     for b in self.bands)


def mixed_layout(n):
    return BandLayout((Band(MIXED, 0, 0, n),))


@dataclass(frozen=True)
class WaveletOperator:
    """Dense N x N orthogonal (or unitary) transform with band metadata."""

    n: int
    matrix: np.ndarray = field(repr=False)
    layout: BandLayout
    recipe: str

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def is_complex(self):
        return np.iscomplexobj(self.matrix)

    def __repr__(self):
        return f"WaveletOperator({self.recipe!r}, n={self.n})"


@dataclass(frozen=True)
class CoefficientVector:
    """Transform-domain values plus the band layout they live in."""

    values: np.ndarray
    layout: BandLayout

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return len(self.values)


def coefficient_values(d):
    return d.values if isinstance(d, CoefficientVector) else np.asarray(d)


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


def build_level_blocks(filt: FilterSpec, rows, eps_k=0):
    """Circulant analysis blocks (H, G) of shape rows x 2*rows.

    Entry (i, j) of H is taps[(shift_n + eps_k + j - 2i) mod 2*rows]; G is
    built the same way from the quadrature mirror filter.  Row i is row 0
    rotated right by 2i, so the blocks stay orthogonal under the periodic
    boundary as long as the filter fits inside one block row.
    """
    if eps_k not in (0, 1):
        raise ValueError("eps_k must be 0 or 1")
    n = 2 * rows
    m = len(filt.taps)
    if m > n:
        raise FilterLongerThanBlock(
            f"filter {filt.name!r} has {m} taps but the level only has {n} inputs")

    def circulant(taps):
        base = np.zeros(n, dtype=taps.dtype)
        cols = (np.arange(len(taps)) - filt.shift_n - eps_k) % n
        base[cols] = taps
        return np.stack([np.roll(base, 2 * i) for i in range(rows)])

    h = filt.tap_array()
    return circulant(h), circulant(qmf_taps(h))


def max_levels(filt: FilterSpec, n):
    """Deepest cascade for which every level block can hold the filter."""
    levels = 0
    length = n
    while length >= len(filt.taps) and length >= 2:
        levels += 1
        length //= 2
    return levels


def build_wavmat(filt, n, levels, eps=None):
    """L-level orthogonal wavelet matrix for signals of length n.

    `eps` is an optional sequence of L bits choosing the decimation phase
    per level (all zeros by default).  Coefficient order is the scaling
    band first, then detail bands from coarsest to finest.
    """
    if isinstance(filt, str):
        filt = get_filter(filt)
    if not _is_power_of_two(n) or n < 2:
        raise ValueError(f"signal length must be a power of two >= 2, got {n}")
    if n > DENSE_CEILING:
        raise SizeOverflow(f"n={n} exceeds the dense ceiling {DENSE_CEILING}")
    j = n.bit_length() - 1
    if not 1 <= levels <= j:
        raise ValueError(f"levels must be in 1..log2(n)={j}, got {levels}")
    eps = tuple(int(b) for b in eps) if eps is not None else (0,) * levels
    if len(eps) != levels or any(b not in (0, 1) for b in eps):
        raise ValueError("eps must be a bit vector of length `levels`")

    scaling_path = None
    details = []
    for k in range(1, levels + 1):
        h, g = build_level_blocks(filt, n >> k, eps[k - 1])
        if scaling_path is None:
            scaling_path, details = h, [g]
        else:
            details.append(g @ scaling_path)
            scaling_path = h @ scaling_path

    matrix = np.vstack([scaling_path] + details[::-1])
    bands = [Band(SCALING, j - levels, 0, n >> levels)]
    start = n >> levels
    for k in range(levels, 0, -1):
        bands.append(Band(DETAIL, j - k, start, n >> k))
        start += n >> k
    recipe = f"wavmat({filt.name},L={levels},eps={''.join(map(str, eps))})"
    return WaveletOperator(n=n, matrix=matrix, layout=BandLayout(tuple(bands)),
                           recipe=recipe)


def apply(op: WaveletOperator, y) -> CoefficientVector:
    """Forward transform d = W y."""
    y = np.asarray(y)
    if y.shape != (op.n,):
        raise LengthMismatch(f"signal has shape {y.shape}, operator needs ({op.n},)")
    return CoefficientVector(op.matrix @ y, op.layout)


def inverse_apply(op: WaveletOperator, d):
    """Adjoint (= inverse) transform W^H d."""
    values = coefficient_values(d)
    if values.shape != (op.n,):
        raise LengthMismatch(f"coefficients have shape {values.shape}, "
                             f"operator needs ({op.n},)")
    return op.matrix.conj().T @ values


def atom(op: WaveletOperator, k):
    """Analysis atom for coefficient k: column k of W^H."""
    if not 0 <= int(k) < op.n:
        raise IndexOutOfRange(f"atom index {k} outside 0..{op.n - 1}")
    return op.matrix[int(k)].conj()
