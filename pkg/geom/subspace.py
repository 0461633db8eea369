"""
Linear subspaces of F_2^m, Gaussian binomials and subspace enumeration.

Vectors are Python ints with variable v_i at bit i - 1, so a vector doubles as
the coordinate word of a point. Bases are kept in reduced row-echelon form with
the pivot of a row at its highest set bit and rows ordered by descending pivot;
this form is unique per subspace.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from errors import ParameterError
from geom.points import PointSet

logger = logging.getLogger(__name__)


def gaussian_binomial(m: int, r: int) -> int:
    """Number of r-dimensional subspaces of F_2^m, in exact integer arithmetic."""
    if m < 0 or r < 0:
        raise ParameterError(f"Gaussian binomial needs non-negative arguments, got ({m}, {r})")
    if r > m:
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= (1 << (m - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def reduce_basis(vectors: Iterable[int]) -> Tuple[int, ...]:
    """Canonical reduced row-echelon basis of the span of vectors."""
    rows: Dict[int, int] = {}
    for v in vectors:
        for pivot, row in rows.items():
            if v >> pivot & 1:
                v ^= row
        if not v:
            continue
        pivot = v.bit_length() - 1
        for other in list(rows):
            if rows[other] >> pivot & 1:
                rows[other] ^= v
        rows[pivot] = v
    return tuple(rows[p] for p in sorted(rows, reverse=True))


def _reduce_vector(v: int, basis: Tuple[int, ...]) -> int:
    for row in basis:
        if v >> (row.bit_length() - 1) & 1:
            v ^= row
    return v


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise ParameterError(f"Negative ambient dimension {self.ambient_dim}")
        for v in self.basis:
            if v < 0 or v >> self.ambient_dim:
                raise ParameterError(f"Basis vector {v:b} does not fit in F_2^{self.ambient_dim}")
        if reduce_basis(self.basis) != tuple(self.basis):
            raise ParameterError("Basis is not in canonical reduced row-echelon form")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> 'Subspace':
        return cls(ambient_dim, reduce_basis(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> 'Subspace':
        return cls.span(ambient_dim, (1 << i for i in range(ambient_dim)))

    @classmethod
    def axes(cls, ambient_dim: int, variables: Iterable[int]) -> 'Subspace':
        """Coordinate subspace spanned by e_i for the given 1-based variables."""
        vectors = []
        for i in variables:
            if not 1 <= i <= ambient_dim:
                raise ParameterError(f"Variable index {i} outside [1, {ambient_dim}]")
            vectors.append(1 << (i - 1))
        return cls.span(ambient_dim, vectors)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(row.bit_length() - 1 for row in self.basis)

    def vectors(self) -> List[int]:
        """All 2^dim members; the origin comes first."""
        members = [0]
        for row in self.basis:
            members += [x ^ row for x in members]
        return members

    def contains_vector(self, v: int) -> bool:
        return _reduce_vector(v, self.basis) == 0

    def contains(self, other: 'Subspace') -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def to_text(self) -> str:
        """One basis vector per line, v_m first."""
        return "\n".join(format(v, f"0{self.ambient_dim}b") for v in self.basis)

    @classmethod
    def from_text(cls, ambient_dim: int, text: str) -> 'Subspace':
        vectors = []
        for line in text.split():
            if len(line) != ambient_dim or set(line) - {'0', '1'}:
                raise ParameterError(f"Malformed basis line {line!r} for dimension {ambient_dim}")
            vectors.append(int(line, 2))
        return cls.span(ambient_dim, vectors)

    def __str__(self) -> str:
        inner = ", ".join(format(v, f"0{self.ambient_dim}b") for v in self.basis)
        return f"span{{{inner}}}"


def subspace_points(space: Subspace) -> PointSet:
    """Point set of all members of the subspace (always includes P_1)."""
    mask = 0
    for v in space.vectors():
        mask |= 1 << v
    return PointSet(1 << space.ambient_dim, mask)


def _check_dims(ambient_dim: int, dim: int):
    if ambient_dim < 0 or not 0 <= dim <= ambient_dim:
        raise ParameterError(f"Subspace dimension {dim} out of range for F_2^{ambient_dim}")


def _echelon_bases(ambient_dim: int, dim: int) -> Iterator[Tuple[int, ...]]:
    for pivots in itertools.combinations(range(ambient_dim), dim):
        pivot_set = set(pivots)
        free = [[q for q in range(p) if q not in pivot_set] for p in pivots]
        total = sum(len(f) for f in free)
        for assignment in range(1 << total):
            rows = []
            shift = 0
            for p, positions in zip(pivots, free):
                row = 1 << p
                for q in positions:
                    if assignment >> shift & 1:
                        row |= 1 << q
                    shift += 1
                rows.append(row)
            yield tuple(reversed(rows))


def enumerate_subspaces(ambient_dim: int, dim: int) -> Iterator[Subspace]:
    """Yield every dim-dimensional subspace of F_2^ambient_dim exactly once.

    Order: pivot sets in combination order of their bit positions, then free
    entries counted upward. The order is fixed, so repeated enumeration is
    identical.
    """
    _check_dims(ambient_dim, dim)
    for basis in _echelon_bases(ambient_dim, dim):
        yield Subspace(ambient_dim, basis)


def enumerate_superspaces(space: Subspace, dim: int) -> Iterator[Subspace]:
    """Yield every dim-dimensional subspace containing space, each exactly once.

    Works in the quotient W = V / space, identified with the coordinates that are
    not pivots of the canonical basis, and lifts each subspace of W back to V.
    """
    m = space.ambient_dim
    if not space.dim <= dim <= m:
        raise ParameterError(f"Superspace dimension {dim} out of range [{space.dim}, {m}]")
    quotient_coords = [q for q in range(m) if q not in set(space.pivots)]
    for quotient_basis in _echelon_bases(len(quotient_coords), dim - space.dim):
        lifted = []
        for w in quotient_basis:
            v = 0
            for bit, q in enumerate(quotient_coords):
                if w >> bit & 1:
                    v |= 1 << q
            lifted.append(v)
        yield Subspace.span(m, space.basis + tuple(lifted))


def complement_points(outer: Subspace, inner: Subspace) -> PointSet:
    """Points of outer that are not in inner (a truncated flat)."""
    if outer.ambient_dim != inner.ambient_dim or not outer.contains(inner):
        raise ParameterError(f"{inner} is not contained in {outer}")
    return subspace_points(outer) - subspace_points(inner)
