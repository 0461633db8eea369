"""
Exhaustive structural checks on small Reed-Muller codes.
"""

import logging
from typing import Iterator, Set

import config
from errors import GuardExceededError
from geom.subspace import enumerate_subspaces, gaussian_binomial, subspace_points
from rmcode.generator import GeneratorMatrix, generator_matrix
from rmcode.gf2 import gf2_rank

logger = logging.getLogger(__name__)


def _guard_sweep(gen: GeneratorMatrix):
    params = gen.params
    if params.k > config.MAX_K_EXHAUSTIVE or params.m > config.MAX_M_EXHAUSTIVE:
        logger.warning(f"Refusing exhaustive sweep of RM({params.r},{params.m}) with k={params.k}")
        raise GuardExceededError(
            f"Exhaustive sweep needs k <= {config.MAX_K_EXHAUSTIVE} and m <= {config.MAX_M_EXHAUSTIVE}"
        )


def all_codewords(gen: GeneratorMatrix) -> Iterator[int]:
    """Every codeword, walked in Gray-code order of the messages."""
    _guard_sweep(gen)
    word = 0
    yield word
    for step in range(1, 1 << gen.params.k):
        flip = (step & -step).bit_length() - 1
        word ^= gen.row_masks[flip]
        yield word


def minimum_distance(gen: GeneratorMatrix) -> int:
    return min(w.bit_count() for w in all_codewords(gen) if w)


def flat_incidence_vectors(m: int, dim: int) -> Set[int]:
    """Incidence masks of every dim-flat (each coset of each dim-subspace) of EG(m, 2)."""
    flats = set()
    for space in enumerate_subspaces(m, dim):
        base = subspace_points(space).mask
        # shifts in the same coset give the same flat; the set keeps one
        for shift in range(1 << m):
            flats.add(translate(base, shift))
    return flats


def translate(mask: int, shift: int) -> int:
    """Image of a point set under P -> P + shift."""
    moved = 0
    while mask:
        low = mask & -mask
        moved |= 1 << ((low.bit_length() - 1) ^ shift)
        mask ^= low
    return moved


def count_flats(m: int, dim: int) -> int:
    return (1 << (m - dim)) * gaussian_binomial(m, dim)


def min_weight_flats_check(r: int, m: int) -> bool:
    """Minimum-weight codewords coincide with the (m - r)-flats."""
    gen = generator_matrix(r, m)
    d = gen.params.d
    minimum = {w for w in all_codewords(gen) if w.bit_count() == d}
    flats = flat_incidence_vectors(m, m - r)
    if len(flats) != count_flats(m, m - r):
        return False
    return minimum == flats


def generator_rank(gen: GeneratorMatrix) -> int:
    return gf2_rank(gen.rows)


def rows_orthogonal(first: GeneratorMatrix, second: GeneratorMatrix) -> bool:
    """Every row of first has even overlap with every row of second."""
    return all((a & b).bit_count() % 2 == 0 for a in first.row_masks for b in second.row_masks)


def dual_check(r: int, m: int) -> bool:
    return rows_orthogonal(generator_matrix(r, m), generator_matrix(m - r - 1, m))
