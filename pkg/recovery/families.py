"""
Recovery-set families used by the one-step majority-logic decoder.

For a message symbol a_sigma of order l the family holds the small set (points of
the axis subspace span{e_i : i in sigma}, size 2^l) and one large set per
(r+1)-dimensional superspace F of it: F minus the small set, size 2^(r+1) - 2^l.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import config
from errors import GuardExceededError, ParameterError, RecoveryValidityError
from geom.points import PointSet
from geom.subspace import Subspace, complement_points, enumerate_superspaces, gaussian_binomial, subspace_points
from rmcode.generator import GeneratorMatrix, MonomialIndex, generator_matrix, symbol_name

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecoveryFamily:
    sigma: MonomialIndex
    r: int
    subspace: Subspace
    small_set: PointSet
    large_sets: Tuple[PointSet, ...]

    @property
    def order(self) -> int:
        return len(self.sigma)

    @property
    def name(self) -> str:
        return symbol_name(self.sigma)

    def all_sets(self) -> List[PointSet]:
        """Small set first, then the large sets in enumeration order."""
        return [self.small_set, *self.large_sets]

    def to_dict(self) -> Dict:
        lam, _ = design_check(self)
        return {
            'sigma': list(self.sigma),
            'small': self.small_set.indices(),
            'large': [s.indices() for s in self.large_sets],
            'lambda': lam,
        }


def _check_sigma(sigma: MonomialIndex, gen: GeneratorMatrix):
    if sigma not in gen.row_index:
        params = gen.params
        raise ParameterError(f"{sigma} is not a monomial index of RM({params.r},{params.m})")


def verify_recovery_set(points: PointSet, sigma: MonomialIndex, gen: GeneratorMatrix) -> bool:
    """True iff the generator columns over points sum to the unit vector of sigma."""
    if sigma not in gen.row_index or points.n != gen.params.n:
        return False
    target = gen.row_index[sigma]
    for i, row in enumerate(gen.row_masks):
        parity = (row & points.mask).bit_count() & 1
        if parity != (i == target):
            return False
    return True


def small_recovery_set(sigma: MonomialIndex, gen: GeneratorMatrix) -> Tuple[Subspace, PointSet]:
    _check_sigma(sigma, gen)
    space = Subspace.axes(gen.params.m, sigma)
    points = subspace_points(space)
    if not verify_recovery_set(points, sigma, gen):
        raise RecoveryValidityError(f"Small set for {symbol_name(sigma)} fails the column-sum check")
    return space, points


def large_set_count(sigma: MonomialIndex, gen: GeneratorMatrix) -> int:
    params = gen.params
    order = len(sigma)
    return gaussian_binomial(params.m - order, params.r + 1 - order)


def large_recovery_sets(sigma: MonomialIndex, gen: GeneratorMatrix) -> List[PointSet]:
    _check_sigma(sigma, gen)
    count = large_set_count(sigma, gen)
    if count > config.MAX_LARGE_SETS:
        logger.warning(f"Refusing {count} large sets for {symbol_name(sigma)} (cap {config.MAX_LARGE_SETS})")
        raise GuardExceededError(f"{count} large recovery sets exceed cap {config.MAX_LARGE_SETS}")
    space, _ = small_recovery_set(sigma, gen)
    sets = []
    for outer in enumerate_superspaces(space, gen.params.r + 1):
        candidate = complement_points(outer, space)
        if not verify_recovery_set(candidate, sigma, gen):
            raise RecoveryValidityError(f"Large set {candidate.indices()} for {symbol_name(sigma)} is invalid")
        sets.append(candidate)
    return sets


def build_family(sigma: MonomialIndex, gen: GeneratorMatrix) -> RecoveryFamily:
    space, small = small_recovery_set(sigma, gen)
    return RecoveryFamily(sigma=sigma, r=gen.params.r, subspace=space, small_set=small,
                          large_sets=tuple(large_recovery_sets(sigma, gen)))


def expected_lambda(r: int, m: int, order: int) -> int:
    return gaussian_binomial(m - order - 1, r - order)


def design_check(family: RecoveryFamily) -> Tuple[int, bool]:
    """Count large sets through every point outside the small set."""
    n = family.small_set.n
    expected = expected_lambda(family.r, family.subspace.ambient_dim, family.order)
    counts = [0] * n
    for member in family.large_sets:
        for j in member.indices():
            counts[j - 1] += 1
    outside = [counts[j - 1] for j in range(1, n + 1) if j not in family.small_set]
    if outside and all(c == outside[0] for c in outside):
        return outside[0], outside[0] == expected
    return expected, False


def corrupted_votes(error_mask: int, family: RecoveryFamily) -> int:
    """Votes whose parity is flipped by the error pattern."""
    return sum((member.mask & error_mask).bit_count() & 1 for member in family.all_sets())


def _subset_sums(columns: List[int]) -> List[int]:
    sums = [0] * (1 << len(columns))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] ^ columns[low.bit_length() - 1]
    return sums


def minimal_recovery_sets(sigma: MonomialIndex, gen: GeneratorMatrix) -> List[int]:
    """Every minimal coordinate set recovering a_sigma, by exhaustive search."""
    _check_sigma(sigma, gen)
    n = gen.params.n
    if n > config.MINIMALITY_MAX_N:
        logger.warning(f"Refusing exhaustive subset search over {n} coordinates")
        raise GuardExceededError(f"n={n} exceeds minimality search limit {config.MINIMALITY_MAX_N}")
    target = 1 << gen.row_index[sigma]
    sums = _subset_sums(gen.column_masks())
    valid = [mask for mask, s in enumerate(sums) if s == target]
    # a valid set is minimal iff it holds no nonempty zero-sum subset
    zero_sum = [mask for mask, s in enumerate(sums) if mask and not s]
    return [v for v in valid if not any(z & v == z for z in zero_sum)]


def minimality_check(sigma: MonomialIndex, gen: GeneratorMatrix) -> bool:
    """Exhaustive size structure of all minimal recovery sets.

    Order l < r: the small set is the only one below 2^r, the rest have at least
    2^(r+1) - 2^l points, and exactly the small-plus-large count sit at that size.
    Order l = r: every minimal set has at least 2^r points and the small set with
    its 2^(m-r) - 1 translates are exactly the ones at that size.
    """
    params = gen.params
    order = len(sigma)
    _, small = small_recovery_set(sigma, gen)
    minimal = minimal_recovery_sets(sigma, gen)
    large_size = (1 << (params.r + 1)) - (1 << order)
    count = large_set_count(sigma, gen)
    sizes = [v.bit_count() for v in minimal]
    if order < params.r:
        below = [v for v in minimal if v.bit_count() < (1 << params.r)]
        if below != [small.mask]:
            return False
        rest = [s for v, s in zip(minimal, sizes) if v != small.mask]
        return all(s >= large_size for s in rest) and rest.count(large_size) == count
    if min(sizes) < large_size:
        return False
    return sizes.count(large_size) == count + 1 and small.mask in minimal


class RecoveryTable:
    """Recovery families for every symbol of one code, built once."""

    def __init__(self, gen: GeneratorMatrix):
        self.logger = logging.getLogger(__name__)
        self.gen = gen
        params = gen.params
        total = self.total_sets(gen)
        self.logger.info(f"RM({params.r},{params.m}): {params.k} symbols, {total} recovery sets")
        if total > config.MAX_FAMILY_SETS:
            self.logger.warning(f"Refusing to build {total} recovery sets (budget {config.MAX_FAMILY_SETS})")
            raise GuardExceededError(f"{total} recovery sets exceed budget {config.MAX_FAMILY_SETS}")
        self.families: Tuple[RecoveryFamily, ...] = tuple(build_family(sigma, gen) for sigma in gen.monomials)

    @staticmethod
    def total_sets(gen: GeneratorMatrix) -> int:
        return sum(1 + large_set_count(sigma, gen) for sigma in gen.monomials)

    def family(self, sigma: MonomialIndex) -> RecoveryFamily:
        _check_sigma(sigma, self.gen)
        return self.families[self.gen.row_index[sigma]]

    def __iter__(self):
        return iter(self.families)

    def __len__(self) -> int:
        return len(self.families)


@lru_cache(maxsize=32)
def recovery_table(r: int, m: int) -> RecoveryTable:
    return RecoveryTable(generator_matrix(r, m))
