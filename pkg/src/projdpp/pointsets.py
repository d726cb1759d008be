"""Subsets of the ground set {1..N} as immutable bitmasks.

Indices are 1-based at every public surface; bit ``i - 1`` of the mask
records membership of point ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import PointOutOfRange


@dataclass(frozen=True, slots=True)
class PointSet:
    """An immutable subset of {1..N}, stored as an integer bitmask."""

    mask: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise ValueError(f"negative bitmask: {self.mask}")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "PointSet":
        mask = 0
        for i in indices:
            if i < 1:
                raise PointOutOfRange(f"point indices are 1-based, got {i}")
            mask |= 1 << (i - 1)
        return cls(mask)

    @property
    def indices(self) -> tuple[int, ...]:
        """Sorted 1-based member indices."""
        out, m, i = [], self.mask, 1
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, index: int) -> bool:
        return index >= 1 and (self.mask >> (index - 1)) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask & ~other.mask)

    def issubset(self, other: "PointSet") -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "PointSet") -> bool:
        return self.mask & other.mask == 0

    def max_index(self) -> int:
        """Largest member, 0 for the empty set."""
        return self.mask.bit_length()

    def complement(self, n_points: int) -> "PointSet":
        """The complement within {1..n_points}."""
        check_within(self, n_points)
        return PointSet(~self.mask & ((1 << n_points) - 1))

    def add(self, index: int) -> "PointSet":
        if index < 1:
            raise PointOutOfRange(f"point indices are 1-based, got {index}")
        return PointSet(self.mask | (1 << (index - 1)))

    def __repr__(self) -> str:
        return f"PointSet{{{', '.join(map(str, self.indices))}}}"


def check_within(points: PointSet, n_points: int) -> None:
    """Raise PointOutOfRange unless ``points`` fits inside {1..n_points}."""
    if points.mask >> n_points:
        raise PointOutOfRange(
            f"point set {points!r} exceeds ground set of size {n_points}"
        )
