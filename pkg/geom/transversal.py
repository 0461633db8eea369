"""
Transversals (blocking sets) of truncated-flat families.

The family for (m, S, flat_dim) is { F \\ S : S <= F <= F_2^m, dim F = flat_dim }.
Its minimum transversal has 2^(m - flat_dim + 1) - 1 points.
"""

import logging
from typing import List, Optional, Sequence

import config
from errors import GuardExceededError, ParameterError
from geom.points import PointSet
from geom.subspace import Subspace, complement_points, enumerate_superspaces, subspace_points

logger = logging.getLogger(__name__)


def _check_family_dims(m: int, space: Subspace, flat_dim: int):
    if space.ambient_dim != m:
        raise ParameterError(f"Subspace lives in F_2^{space.ambient_dim}, expected F_2^{m}")
    if not space.dim < flat_dim <= m:
        raise ParameterError(f"Need dim S < flat_dim <= m, got dim S={space.dim}, flat_dim={flat_dim}, m={m}")


def truncated_flats(m: int, space: Subspace, flat_dim: int) -> List[PointSet]:
    """Members of the family, in superspace enumeration order."""
    return [complement_points(f, space) for f in enumerate_superspaces(space, flat_dim)]


def transversal_size(m: int, flat_dim: int) -> int:
    return (1 << (m - flat_dim + 1)) - 1


def blocking_subspace(m: int, space: Subspace, flat_dim: int) -> Subspace:
    """The complement U with dim U = m - flat_dim + 1 and U meeting S only in 0.

    U is spanned by the lowest coordinate axes that are not pivots of S, which
    gives the lexicographically smallest basis among axis choices.
    """
    _check_family_dims(m, space, flat_dim)
    needed = m - flat_dim + 1
    free_axes = [q for q in range(m) if q not in set(space.pivots)]
    if len(free_axes) < needed:
        # unreachable when dim S < flat_dim
        raise ParameterError(f"No complement of dimension {needed} avoids {space}")
    return Subspace.span(m, (1 << q for q in free_axes[:needed]))


def minimum_transversal(m: int, space: Subspace, flat_dim: int) -> PointSet:
    """Nonzero points of the blocking subspace; disjoint from the points of S."""
    u = blocking_subspace(m, space, flat_dim)
    points = subspace_points(u) - PointSet.from_indices(1 << m, [1])
    if points.intersects(subspace_points(space)):
        raise ParameterError(f"Blocking subspace {u} meets {space} outside the origin")
    return points


def coset_transversal(m: int, space: Subspace, flat_dim: int, shifts: Sequence[int]) -> PointSet:
    """A minimum transversal with one representative u + s per nonzero coset of U.

    Shifts are members of S applied cyclically; the result need not be a subspace.
    """
    u = blocking_subspace(m, space, flat_dim)
    for s in shifts:
        if not space.contains_vector(s):
            raise ParameterError(f"Shift {s:b} is not a member of {space}")
    if not shifts:
        shifts = [0]
    coords = [v ^ shifts[i % len(shifts)] for i, v in enumerate(u.vectors()[1:])]
    return PointSet.from_coords(1 << m, coords)


def is_transversal(points: PointSet, m: int, space: Subspace, flat_dim: int) -> bool:
    """True iff points meets every truncated flat of the family."""
    if points.n != 1 << m:
        raise ParameterError(f"Point set over {points.n} points, expected {1 << m}")
    _check_family_dims(m, space, flat_dim)
    return all(points.intersects(member) for member in truncated_flats(m, space, flat_dim))


def _hits_possible(unhit: List[int], budget: int, excluded: int) -> Optional[int]:
    """Depth-limited exact hitting-set search; returns a hitting mask or None."""
    if not unhit:
        return 0
    if budget == 0:
        return None

    # Bound: the budget's best points cannot cover more sets than their degrees.
    degree = {}
    for member in unhit:
        allowed = member & ~excluded
        if not allowed:
            return None
        while allowed:
            low = allowed & -allowed
            degree[low] = degree.get(low, 0) + 1
            allowed ^= low
    if sum(sorted(degree.values(), reverse=True)[:budget]) < len(unhit):
        return None

    target = min(unhit, key=lambda s: (s & ~excluded).bit_count())
    choices = target & ~excluded
    while choices:
        low = choices & -choices
        remaining = [s for s in unhit if not s & low]
        found = _hits_possible(remaining, budget - 1, excluded)
        if found is not None:
            return found | low
        excluded |= low
        choices ^= low
    return None


def transversal_number_bruteforce(m: int, space: Subspace, flat_dim: int,
                                  max_points: Optional[int] = None) -> int:
    """Exact transversal number by increasing-cardinality search.

    Independent of the construction above: it only sees the family's point sets.
    """
    limit = config.BRUTEFORCE_MAX_POINTS if max_points is None else max_points
    if (1 << m) > limit:
        logger.warning(f"Refusing brute-force transversal search over {1 << m} points (limit {limit})")
        raise GuardExceededError(f"2^{m} points exceed the brute-force limit {limit}")
    _check_family_dims(m, space, flat_dim)
    family = [member.mask for member in truncated_flats(m, space, flat_dim)]
    for size in range(0, (1 << m) + 1):
        if _hits_possible(family, size, 0) is not None:
            logger.debug(f"Transversal number for m={m}, dim S={space.dim}, flat_dim={flat_dim}: {size}")
            return size
    raise ParameterError("Family cannot be blocked")
