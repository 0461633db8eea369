"""
Points of EG(m, 2) and point sets stored as bit-masks.

Point P_j (1-based) has coordinate vector j - 1, with v_1 as the
least-significant bit. A PointSet over [2^m] keeps bit j - 1 for P_j.
"""

from dataclasses import dataclass
from typing import Iterable, List

from errors import ParameterError


def point_index(coords: int) -> int:
    """Return the 1-based index j of the point with coordinate vector coords."""
    return coords + 1


def point_coords(index: int) -> int:
    return index - 1


def coordinate_bits(index: int, m: int) -> List[int]:
    """Coordinates (v_m, ..., v_1) of point P_index, as printed in the point table."""
    coords = point_coords(index)
    return [(coords >> (i - 1)) & 1 for i in range(m, 0, -1)]


@dataclass(frozen=True)
class PointSet:
    n: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError(f"Point mask out of range for {self.n} points")

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> 'PointSet':
        mask = 0
        for j in indices:
            if not 1 <= j <= n:
                raise ParameterError(f"Point index {j} outside [1, {n}]")
            mask |= 1 << (j - 1)
        return cls(n, mask)

    @classmethod
    def from_coords(cls, n: int, coords: Iterable[int]) -> 'PointSet':
        return cls.from_indices(n, (point_index(c) for c in coords))

    def indices(self) -> List[int]:
        result = []
        mask = self.mask
        while mask:
            low = mask & -mask
            result.append(low.bit_length())
            mask ^= low
        return result

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, index: int) -> bool:
        return 1 <= index <= self.n and bool(self.mask >> (index - 1) & 1)

    def __iter__(self):
        return iter(self.indices())

    def __or__(self, other: 'PointSet') -> 'PointSet':
        return PointSet(self.n, self.mask | other.mask)

    def __sub__(self, other: 'PointSet') -> 'PointSet':
        return PointSet(self.n, self.mask & ~other.mask)

    def intersects(self, other: 'PointSet') -> bool:
        return bool(self.mask & other.mask)

    def isdisjoint(self, other: 'PointSet') -> bool:
        return not self.mask & other.mask

    def to_list(self) -> List[int]:
        return self.indices()
