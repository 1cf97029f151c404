"""Minimal PGM (P2/P5) reader and writer for grayscale experiments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedHeader, TruncatedData, UnsupportedMagic


@dataclass
class GrayImage:
    """Row-major grayscale raster; pixels are floats in [0, maxval]."""

    pixels: np.ndarray
    maxval: int = 255

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]


def _header_tokens(data, count):
    """Yield `count` whitespace-separated tokens, skipping # comments.

    Returns (tokens, offset_just_past_last_token).
    """
    tokens = []
    i = 0
    while len(tokens) < count:
        if i >= len(data):
            raise MalformedHeader("ran out of header bytes")
        c = data[i:i + 1]
        if c == b"#":
            j = data.find(b"\n", i)
            i = len(data) if j < 0 else j + 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j:j + 1].isspace() \
                    and data[j:j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j
    return tokens, i


def read_pgm(path) -> GrayImage:
    """Read an ASCII (P2) or binary (P5) PGM file, maxval up to 65535."""
    with open(path, "rb") as f:
        data = f.read()
    if data[:2] not in (b"P2", b"P5"):
        raise UnsupportedMagic(f"unsupported magic {data[:2]!r}, expected P2 or P5")
    magic = data[:2].decode()
    try:
        tokens, offset = _header_tokens(data[2:], 3)
        width, height, maxval = (int(t) for t in tokens)
    except (ValueError, MalformedHeader) as e:
        raise MalformedHeader(f"bad PGM header: {e}") from e
    if width < 1 or height < 1 or not 0 < maxval <= 65535:
        raise MalformedHeader(f"bad dimensions {width}x{height}, maxval {maxval}")
    count = width * height

    if magic == "P5":
        raster = data[2 + offset + 1:]  # single whitespace after maxval
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(raster) < need:
            raise TruncatedData(f"raster holds {len(raster)} bytes, need {need}")
        pixels = np.frombuffer(raster[:need], dtype=dtype).astype(float)
    else:
        try:
            values, _ = _header_tokens(data[2 + offset:], count)
        except MalformedHeader as e:
            raise TruncatedData(f"ASCII raster too short: {e}") from e
        pixels = np.array([int(v) for v in values], dtype=float)
    if pixels.max(initial=0.0) > maxval:
        raise MalformedHeader("sample exceeds declared maxval")
    return GrayImage(pixels=pixels.reshape(height, width), maxval=maxval)


def write_pgm(img: GrayImage, path):
    """Write binary P5; integer-valued pixels round-trip losslessly."""
    pixels = np.clip(np.rint(img.pixels), 0, img.maxval)
    dtype = np.dtype(">u2") if img.maxval > 255 else np.dtype("u1")
    with open(path, "wb") as f:
        f.write(f"P5\n{img.width} {img.height}\n{img.maxval}\n".encode())
        f.write(pixels.astype(dtype).tobytes())
