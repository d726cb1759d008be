"""Wedge-product primitives on dense vector families.

A *family* is a 2-D float array of shape ``(k, dim)`` whose rows are the
member vectors.  Everything here is a pure function of its inputs; the
target sizes are desk scale (dim <= 20), so plain LU determinants are
accurate to ~1e-13 and no structured factorizations are needed.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, RankDeficient

# Gram determinants that should be >= 0 may round slightly negative.
NEGATIVE_CLAMP = 1e-12
# Residual fraction below which a vector counts as dependent on its
# predecessors during orthonormalization.
RANK_TOL = 1e-8


def as_family(vectors, dim: int | None = None) -> np.ndarray:
    """Validate and return a family as a float array of shape (k, dim).

    Accepts any nested sequence; rejects non-finite entries and, when
    ``dim`` is given, any other ambient dimension.
    """
    arr = np.atleast_2d(np.asarray(vectors, dtype=float))
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D family, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("family contains non-finite entries")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.shape[1]}")
    return arr


def gram_matrix(a, b) -> np.ndarray:
    """Matrix of inner products <a_i, b_j>; symmetric when a is b."""
    fa, fb = as_family(a), as_family(b)
    if fa.shape != fb.shape:
        raise DimensionMismatch(
            f"family shapes differ: {fa.shape} vs {fb.shape}"
        )
    return fa @ fb.T


def wedge_inner(a, b) -> float:
    """Inner product of the wedges of two equal-length families.

    Equals det of the cross Gram matrix.
    """
    g = gram_matrix(a, b)
    if g.shape[0] == 0:
        raise DimensionMismatch("wedge of an empty family is undefined")
    return float(np.linalg.det(g))


def wedge_norm_sq(a) -> float:
    """Squared norm of the wedge of a family, clamped to 0 in [-1e-12, 0]."""
    val = wedge_inner(a, a)
    if -NEGATIVE_CLAMP <= val < 0.0:
        return 0.0
    return val


def leave_one_out_wedges(v) -> np.ndarray:
    """All n wedges of n-1 members of an n-family in R^n.

    Row i holds the coordinates of the wedge of every member except the
    i-th, coordinatized by plain (n-1)x(n-1) minors: entry (i, j) is the
    determinant of the input with row i and column j deleted.  Signs are
    deliberately not cofactor-adjusted; all downstream uses are norms and
    determinants, which fix them only up to sign.  The squared norm of
    row i is the Gram determinant of the complementary n-1 members.
    """
    fv = as_family(v)
    n = fv.shape[0]
    if fv.shape[1] != n:
        raise DimensionMismatch(
            f"need n vectors in R^n, got {n} vectors in R^{fv.shape[1]}"
        )
    if n < 2:
        raise DimensionMismatch("leave-one-out wedges need at least 2 vectors")
    out = np.empty((n, n))
    rows = np.arange(n)
    for i in range(n):
        sub = fv[rows != i, :]
        for j in range(n):
            out[i, j] = np.linalg.det(np.delete(sub, j, axis=1))
    return out


def orthonormalize(a) -> np.ndarray:
    """Orthonormal family spanning the same subspace.

    Modified Gram-Schmidt with one re-orthogonalization pass; raises
    RankDeficient when a residual drops below RANK_TOL of the member's
    original norm.
    """
    fa = as_family(a).copy()
    k = fa.shape[0]
    if k > fa.shape[1]:
        raise RankDeficient(
            f"{k} vectors cannot be independent in R^{fa.shape[1]}"
        )
    out = np.empty_like(fa)
    for i in range(k):
        w = fa[i]
        original = np.linalg.norm(w)
        if original == 0.0:
            raise RankDeficient(f"member {i} is the zero vector")
        for _ in range(2):
            for j in range(i):
                w = w - (out[j] @ w) * out[j]
        residual = np.linalg.norm(w)
        if residual < RANK_TOL * original:
            raise RankDeficient(
                f"member {i} is dependent on its predecessors "
                f"(residual {residual:.3e} of {original:.3e})"
            )
        out[i] = w / residual
    return out
