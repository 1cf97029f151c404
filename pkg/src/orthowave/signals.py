"""Benchmark signal generators, SNR rescaling and seeded Gaussian noise.

The four classic denoising test signals (doppler, blocks, heavisine,
bumps) are sampled on the right-closed grid t_i = i/n.  Noise comes from
counter-keyed streams: replicate j of a Monte Carlo run draws from stream
j of the master seed, so results do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadLength, ConstantSignal, UnknownSignal

# breakpoint/height/width tables shared by blocks and bumps
_POSITIONS = np.array([0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                       0.44, 0.65, 0.76, 0.78, 0.81])
_BLOCK_HEIGHTS = np.array([4.0, -5.0, 3.0, -4.0, 5.0, -4.2,
                           2.1, 4.3, -3.1, 2.1, -4.2])
_BUMP_HEIGHTS = np.array([4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                          2.1, 4.3, 3.1, 5.1, 4.2])
_BUMP_WIDTHS = np.array([0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                         0.01, 0.01, 0.005, 0.008, 0.005])

assert len(_POSITIONS) == 11 and ((_POSITIONS > 0) & (_POSITIONS < 1)).all()
assert (_BUMP_HEIGHTS > 0).all() and (_BUMP_WIDTHS > 0).all()

#: combination weights for the heterogeneous test signal
COMBINED_WEIGHTS = (1.0, 0.2, 0.1, 0.2)
COMBINED_PARTS = ("doppler", "blocks", "heavisine", "bumps")


def _grid(n):
    return np.arange(1, n + 1) / n


def _doppler(t):
    return np.sqrt(t * (1.0 - t)) * np.sin(2.0 * np.pi * 1.05 / (t + 0.05))


def _heavisine(t):
    return 4.0 * np.sin(4.0 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)


def _blocks(t):
    out = np.zeros_like(t)
    for pos, h in zip(_POSITIONS, _BLOCK_HEIGHTS):
        out += h * (1.0 + np.sign(t - pos)) / 2.0
    return out


def _bumps(t):
    out = np.zeros_like(t)
    for pos, h, w in zip(_POSITIONS, _BUMP_HEIGHTS, _BUMP_WIDTHS):
        out += h * (1.0 + np.abs((t - pos) / w)) ** -4.0
    return out


_GENERATORS = {
    "doppler": _doppler,
    "blocks": _blocks,
    "heavisine": _heavisine,
    "bumps": _bumps,
}


def available_signals():
    return sorted(_GENERATORS)


def make_signal(name, n):
    """Sample a named test signal at t_i = i/n, i = 1..n."""
    key = str(name).strip().lower()
    if key not in _GENERATORS:
        raise UnknownSignal(name)
    if n < 8:
        raise BadLength(f"signal length must be >= 8, got {n}")
    return _GENERATORS[key](_grid(n))


def rescale_to_snr(x0, snr):
    """Scale so the population variance equals `snr`."""
    x0 = np.asarray(x0, dtype=float)
    if snr <= 0:
        raise ValueError(f"snr must be positive, got {snr}")
    var = x0.var()
    if var == 0.0:
        raise ConstantSignal("cannot rescale a constant signal")
    return np.sqrt(snr / var) * x0


def combined_signal(n_total):
    """Four weighted quarters: doppler, 0.2 blocks, 0.1 heavisine, 0.2 bumps.

    Returns (signal, boundaries); boundaries mark the four equal segments
    so a block-diagonal operator can be aligned with them.
    """
    if n_total % 4 != 0:
        raise BadLength(f"combined length must be divisible by 4, got {n_total}")
    seg = n_total // 4
    if seg < 8 or seg & (seg - 1):
        raise BadLength(f"segment length {seg} must be a power of two >= 8")
    parts = [w * make_signal(name, seg)
             for name, w in zip(COMBINED_PARTS, COMBINED_WEIGHTS)]
    boundaries = tuple(seg * i for i in range(5))
    return np.concatenate(parts), boundaries


@dataclass(frozen=True)
class NoiseSource:
    """Deterministic Gaussian stream keyed by (master_seed, stream_id)."""

    master_seed: int
    stream_id: int = 0

    def generator(self):
        seq = np.random.SeedSequence(entropy=self.master_seed,
                                     spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(seq))

    def stream(self, stream_id):
        return NoiseSource(self.master_seed, stream_id)


def gaussian_noise(src: NoiseSource, n):
    """n standard normal deviates, bit-reproducible per (seed, stream)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return src.generator().standard_normal(n)


def read_signal_file(path):
    """Load a one-value-per-line text signal; complex entries as "re,im"."""
    values = []
    with open(path) as f:
        for raw in f:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "," in line:
                re_part, im_part = line.split(",", 1)
                values.append(complex(float(re_part), float(im_part)))
            else:
                values.append(float(line))
    arr = np.asarray(values)
    if np.iscomplexobj(arr) and not np.abs(arr.imag).any():
        arr = arr.real
    return arr


def write_signal_file(x, path):
    with open(path, "w") as f:
        for v in np.asarray(x):
            if np.iscomplexobj(np.asarray(v)):
                f.write(f"{v.real!r},{v.imag!r}\n")
            else:
                f.write(f"{float(v)!r}\n")
