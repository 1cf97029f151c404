"""Orthogonality-preserving combinations of wavelet operators.

Products, Kronecker products, block-diagonal assemblies and similarity
transforms of unitary matrices are unitary again, so the transform /
shrink / inverse pipeline keeps working even though the result is
generally no longer a single filterbank transform.  The 2-D scale-mixing
transform W1 A W2^H lives here too, tied to the Kronecker form through
the column-major vec identity.
"""

from __future__ import annotations

import numpy as np

from .errors import SizeMismatch, SizeOverflow
from .wavmat import (DENSE_CEILING, WaveletOperator, mixed_layout)


def _result_operator(matrix, recipe, layout=None):
    matrix = np.ascontiguousarray(matrix)
    return WaveletOperator(n=matrix.shape[0], matrix=matrix,
                           layout=layout or mixed_layout(matrix.shape[0]),
                           recipe=recipe)


def product(parts):
    """Left-to-right matrix product of equally sized operators."""
    parts = list(parts)
    if len(parts) < 2:
        raise SizeMismatch("product needs at least two operators")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise SizeMismatch(f"product parts must share one size, got "
                           f"{[p.n for p in parts]}")
    matrix = parts[0].matrix
    for p in parts[1:]:
        matrix = matrix @ p.matrix
    recipe = f"product({','.join(p.recipe for p in parts)})"
    return _result_operator(matrix, recipe)


def kron(a: WaveletOperator, b: WaveletOperator):
    """Kronecker product; entry ((ia*nb+ib),(ja*nb+jb)) = a[ia,ja]*b[ib,jb]."""
    n = a.n * b.n
    if n > DENSE_CEILING:
        raise SizeOverflow(f"kron size {n} exceeds the dense ceiling "
                           f"{DENSE_CEILING}")
    return _result_operator(np.kron(a.matrix, b.matrix),
                            f"kron({a.recipe},{b.recipe})")


def block_diag(parts):
    """Block-diagonal assembly; layouts concatenate with offsets."""
    parts = list(parts)
    if not parts:
        raise SizeMismatch("block_diag needs at least one operator")
    n = sum(p.n for p in parts)
    if n > DENSE_CEILING:
        raise SizeOverflow(f"block_diag size {n} exceeds the dense ceiling "
                           f"{DENSE_CEILING}")
    dtype = complex if any(p.is_complex for p in parts) else float
    matrix = np.zeros((n, n), dtype=dtype)
    bands = []
    starts = []
    pos = 0
    for p in parts:
        matrix[pos:pos + p.n, pos:pos + p.n] = p.matrix
        bands.extend(p.layout.shifted_bands(pos))
        starts.extend(s + pos for s in p.layout.block_starts)
        pos += p.n
    recipe = f"blockdiag({','.join(p.recipe for p in parts)})"
    from .wavmat import BandLayout
    return _result_operator(matrix, recipe,
                            layout=BandLayout(tuple(bands), tuple(starts)))


def similarity(w: WaveletOperator, a: WaveletOperator):
    """Change of basis w^H a w; spectrum of `a` is preserved."""
    if w.n != a.n:
        raise SizeMismatch(f"similarity needs equal sizes, got {w.n} and {a.n}")
    return _result_operator(w.matrix.conj().T @ a.matrix @ w.matrix,
                            f"similarity({w.recipe},{a.recipe})")


def transform2d(a, w1: WaveletOperator, w2: WaveletOperator):
    """Scale-mixing 2-D transform W1 A W2^H of an m x n array."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape != (w1.n, w2.n):
        raise SizeMismatch(f"array shape {a.shape} does not match operators "
                           f"({w1.n}, {w2.n})")
    return w1.matrix @ a @ w2.matrix.conj().T


def inverse_transform2d(b, w1: WaveletOperator, w2: WaveletOperator):
    """Inverse of :func:`transform2d`: W1^H B W2."""
    b = np.asarray(b)
    if b.ndim != 2 or b.shape != (w1.n, w2.n):
        raise SizeMismatch(f"array shape {b.shape} does not match operators "
                           f"({w1.n}, {w2.n})")
    return w1.matrix.conj().T @ b @ w2.matrix


def vec(a):
    """Column-major vectorization (the stacking order the identities use)."""
    return np.asarray(a).reshape(-1, order="F")


def unvec(v, shape):
    return np.asarray(v).reshape(shape, order="F")


def kron_operator_for_2d(w1: WaveletOperator, w2: WaveletOperator):
    """Kronecker operator K with vec(transform2d(A)) = K vec(A).

    For complex column operators this is conj(W2) (x) W1; transposes in
    the real identity become conjugates so that unitarity survives.
    """
    return kron(_result_operator(w2.matrix.conj(), f"conj({w2.recipe})"), w1)
