"""Projection determinantal processes on a finite ground set.

A process is induced by an N x p matrix with orthonormal columns: the
probability that a k-set of points is contained in a realization is the
squared wedge norm of the corresponding feature rows, and realizations
have size exactly p.  Everything is exact and enumeration-backed up to
the desk-scale cap N <= 20.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .errors import (
    EnumerationTooLarge,
    FullRank,
    NotOrthogonal,
    PointOutOfRange,
    RankDeficient,
    WrongCardinality,
)
from .exterior import wedge_norm_sq
from .pointsets import PointSet, check_within

# Hard cap on exhaustive enumeration: 2^20 subsets is the desk-scale ceiling.
ENUMERATION_CAP = 20
# Default orthonormality tolerance for frames built in process.
FRAME_TOL = 1e-10
# Looser tolerance for frames deserialized from JSON files.
FRAME_LOAD_TOL = 1e-8

_PROB_CLIP = 1e-12


def _clip_probability(x: float) -> float:
    """Snap probabilities that rounded just outside [0, 1] back onto it."""
    if -_PROB_CLIP <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + _PROB_CLIP:
        return 1.0
    return float(x)


class OrthonormalFrame:
    """An N x p matrix with orthonormal columns.

    Rows are the per-point feature vectors in R^p; columns span the
    p-dimensional subspace that induces the process.  Instances are
    immutable after construction.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix, *, tol: float = FRAME_TOL):
        mat = np.array(matrix, dtype=float)
        if mat.ndim != 2:
            raise ValueError(f"frame matrix must be 2-D, got shape {mat.shape}")
        if not np.isfinite(mat).all():
            raise ValueError("frame matrix contains non-finite entries")
        n, p = mat.shape
        if p < 1:
            raise ValueError("frame needs at least one column")
        if p > n:
            raise RankDeficient(f"{p} columns cannot be orthonormal in R^{n}")
        dev = np.abs(mat.T @ mat - np.eye(p)).max()
        if dev > tol:
            raise NotOrthogonal(
                f"columns are not orthonormal (max deviation {dev:.3e} > {tol:.1e})"
            )
        mat.setflags(write=False)
        self._matrix = mat

    @classmethod
    def from_columns(cls, columns, *, tol: float = FRAME_TOL) -> "OrthonormalFrame":
        """Build from a family of p column vectors, each of length N."""
        arr = np.asarray(columns, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"columns must form a 2-D family, got {arr.shape}")
        return cls(arr.T, tol=tol)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def n_points(self) -> int:
        return self._matrix.shape[0]

    @property
    def rank(self) -> int:
        return self._matrix.shape[1]

    @property
    def columns(self) -> np.ndarray:
        """The p column vectors as a (p, N) family."""
        return self._matrix.T

    def row(self, index: int) -> np.ndarray:
        """Feature vector of 1-based point ``index``."""
        if not 1 <= index <= self.n_points:
            raise PointOutOfRange(f"point {index} outside 1..{self.n_points}")
        return self._matrix[index - 1]

    def rows(self, points: PointSet) -> np.ndarray:
        """Feature rows of the given points, in ascending point order."""
        check_within(points, self.n_points)
        idx = [i - 1 for i in points.indices]
        return self._matrix[idx, :]

    def __repr__(self) -> str:
        return f"OrthonormalFrame(n_points={self.n_points}, rank={self.rank})"


def frame_to_json(frame: OrthonormalFrame) -> str:
    return json.dumps(
        {
            "n_points": frame.n_points,
            "rank": frame.rank,
            "columns": frame.columns.tolist(),
        }
    )


def frame_from_json(text: str) -> OrthonormalFrame:
    """Parse a frame document, validating orthonormality at 1e-8."""
    doc = json.loads(text)
    try:
        n, p, cols = doc["n_points"], doc["rank"], doc["columns"]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"frame document missing field: {exc}") from exc
    arr = np.asarray(cols, dtype=float)
    if arr.ndim != 2 or arr.shape != (p, n):
        raise ValueError(
            f"'columns' must be {p} vectors of length {n}, got shape {arr.shape}"
        )
    return OrthonormalFrame.from_columns(arr, tol=FRAME_LOAD_TOL)


def random_frame(n_points: int, rank: int, rng: np.random.Generator) -> OrthonormalFrame:
    """Orthonormalized Gaussian frame; deterministic given the generator state."""
    g = rng.standard_normal((n_points, rank))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return OrthonormalFrame(q * signs)


def complement_frame(frame: OrthonormalFrame) -> OrthonormalFrame:
    """Orthonormal frame of the orthogonal complement of the column span.

    Built from the column space of the projector I - Z Z^t (via its SVD),
    so the output is deterministic given the input.
    """
    n, p = frame.n_points, frame.rank
    if p == n:
        raise FullRank("frame already spans the whole space")
    z = frame.matrix
    projector = np.eye(n) - z @ z.T
    u, s, _ = np.linalg.svd(projector)
    comp = u[:, : n - p]
    return OrthonormalFrame(comp)


def _law_from_matrix(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Masks and probabilities of every size-p subset, in index order."""
    n, p = mat.shape
    if n > ENUMERATION_CAP:
        raise EnumerationTooLarge(
            f"ground set of size {n} exceeds the enumeration cap {ENUMERATION_CAP}"
        )
    rows_idx = np.array(list(combinations(range(n), p)), dtype=np.int64)
    masks = np.bitwise_or.reduce(np.int64(1) << rows_idx, axis=1)
    probs = np.empty(len(rows_idx))
    chunk = 65536
    for start in range(0, len(rows_idx), chunk):
        sub = mat[rows_idx[start : start + chunk], :]
        dets = np.linalg.det(sub)
        probs[start : start + chunk] = dets * dets
    return masks, probs


class ProjectionDPP:
    """The determinantal process induced by an orthonormal frame."""

    __slots__ = ("frame", "_law")

    def __init__(self, frame: OrthonormalFrame):
        self.frame = frame
        self._law = None

    @property
    def n_points(self) -> int:
        return self.frame.n_points

    @property
    def rank(self) -> int:
        return self.frame.rank

    def inclusion_probability(self, points: PointSet) -> float:
        """P(points subset of the realization): squared wedge norm of rows."""
        check_within(points, self.n_points)
        k = len(points)
        if k == 0:
            return 1.0
        if k > self.rank:
            return 0.0
        return _clip_probability(wedge_norm_sq(self.frame.rows(points)))

    def elementary_probability(self, points: PointSet) -> float:
        """P(realization equals points); requires |points| = rank."""
        check_within(points, self.n_points)
        if len(points) != self.rank:
            raise WrongCardinality(
                f"need exactly {self.rank} points, got {len(points)}"
            )
        det = np.linalg.det(self.frame.rows(points))
        return _clip_probability(float(det * det))

    def law_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Cached (masks, probabilities) over all size-p subsets, index order.

        The returned arrays are shared; treat them as read-only.
        """
        if self._law is None:
            masks, probs = _law_from_matrix(self.frame.matrix)
            masks.setflags(write=False)
            probs.setflags(write=False)
            self._law = (masks, probs)
        return self._law

    def exact_law(self) -> dict[PointSet, float]:
        """The full law as an index-ordered dict PointSet -> probability."""
        masks, probs = self.law_arrays()
        return {PointSet(int(m)): float(q) for m, q in zip(masks, probs)}

    def event_probability(self, predicate: Callable[[PointSet], bool]) -> float:
        """Probability of an arbitrary event, by exhaustive enumeration.

        The sum is accumulated in fixed subset-index order, so results are
        bit-identical across calls.
        """
        masks, probs = self.law_arrays()
        keep = np.fromiter(
            (predicate(PointSet(int(m))) for m in masks), dtype=bool, count=len(masks)
        )
        return _clip_probability(float(np.sum(probs[keep])))

    def complement(self) -> "ProjectionDPP":
        """The process of the complement set {1..N} minus the realization."""
        return ProjectionDPP(complement_frame(self.frame))

    def sample_many(self, count: int, rng: np.random.Generator) -> list[PointSet]:
        """Draw ``count`` independent realizations (chain-rule sampler).

        Each step picks a point with probability proportional to its
        current squared row norm, then projects every row orthogonally to
        the chosen one.  Identical generator state gives an identical
        sample sequence.
        """
        if count < 0:
            raise ValueError("count must be nonnegative")
        if count == 0:
            return []
        z = self.frame.matrix
        n, p = z.shape
        b = np.broadcast_to(z, (count, n, p)).copy()
        chosen = np.zeros((count, p), dtype=np.int64)
        draws = np.arange(count)
        for step in range(p):
            norms = np.einsum("mnp,mnp->mn", b, b)
            norms[norms < 1e-24] = 0.0
            cdf = np.cumsum(norms, axis=1)
            u = rng.random(count) * cdf[:, -1]
            idx = np.minimum(np.sum(cdf < u[:, None], axis=1), n - 1)
            chosen[:, step] = idx
            v = b[draws, idx, :]
            v = v / np.linalg.norm(v, axis=1, keepdims=True)
            proj = np.einsum("mnp,mp->mn", b, v)
            b = b - proj[:, :, None] * v[:, None, :]
            b[draws, idx, :] = 0.0
        masks = np.bitwise_or.reduce(np.int64(1) << chosen, axis=1)
        return [PointSet(int(m)) for m in masks]

    def sample(self, rng: np.random.Generator) -> PointSet:
        """Draw one realization (a set of exactly ``rank`` points)."""
        return self.sample_many(1, rng)[0]

    def __repr__(self) -> str:
        return f"ProjectionDPP(n_points={self.n_points}, rank={self.rank})"


def basis_invariance_check(frame: OrthonormalFrame, rotation) -> bool:
    """Whether rotating the columns leaves every elementary probability
    unchanged within 1e-10.

    ``rotation`` must be a p x p orthogonal matrix (tolerance 1e-10).
    """
    q = np.asarray(rotation, dtype=float)
    p = frame.rank
    if q.shape != (p, p):
        raise NotOrthogonal(f"rotation must be {p}x{p}, got {q.shape}")
    dev = np.abs(q.T @ q - np.eye(p)).max()
    if dev > 1e-10:
        raise NotOrthogonal(f"rotation is not orthogonal (deviation {dev:.3e})")
    _, probs = _law_from_matrix(frame.matrix)
    _, probs_rot = _law_from_matrix(frame.matrix @ q)
    return bool(np.abs(probs - probs_rot).max() <= 1e-10)


def all_point_sets(n_points: int, size: int) -> Iterable[PointSet]:
    """All size-``size`` subsets of {1..n_points}, in index order."""
    for comb in combinations(range(1, n_points + 1), size):
        yield PointSet.from_indices(comb)
