"""
Error and erasure pattern streams.

Exhaustive streams walk the weight-w subsets of the n coordinates in colex
order (increasing as integers), so a contiguous rank range is a contiguous run
of masks and shards can start anywhere by unranking.
"""

import logging
from math import comb
from typing import Iterator, List

import numpy as np

import config
from errors import GuardExceededError, ParameterError
from rmcode.gf2 import masks_to_array

logger = logging.getLogger(__name__)


def pattern_count(n: int, weight: int) -> int:
    return comb(n, weight)


def patterns_upto(n: int, max_weight: int, min_weight: int = 0) -> int:
    return sum(comb(n, w) for w in range(min_weight, max_weight + 1))


def pattern_rank(mask: int) -> int:
    """Colex rank of a mask among all masks of the same weight."""
    rank = 0
    i = 0
    while mask:
        low = mask & -mask
        rank += comb(low.bit_length() - 1, i + 1)
        mask ^= low
        i += 1
    return rank


def pattern_unrank(rank: int, n: int, weight: int) -> int:
    if not 0 <= rank < comb(n, weight):
        raise ParameterError(f"Rank {rank} outside [0, C({n},{weight}))")
    mask = 0
    for i in range(weight, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        mask |= 1 << c
    return mask


def next_pattern(mask: int) -> int:
    """Next larger integer with the same popcount."""
    low = mask & -mask
    ripple = mask + low
    return (((ripple ^ mask) >> 2) // low) | ripple


def colex_patterns(n: int, weight: int, start: int = 0, stop: int = None) -> Iterator[int]:
    """Masks of colex ranks [start, stop) among weight-`weight` subsets of n coordinates."""
    total = comb(n, weight)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    if weight == 0:
        yield 0
        return
    mask = pattern_unrank(start, n, weight)
    for _ in range(stop - start):
        yield mask
        mask = next_pattern(mask)


def check_pattern_budget(n: int, max_weight: int, min_weight: int = 0, cap: int = None) -> int:
    limit = config.CAMPAIGN_CAP if cap is None else cap
    total = patterns_upto(n, max_weight, min_weight)
    if total > limit:
        logger.warning(f"Refusing {total} patterns of weight {min_weight}..{max_weight} over {n} coordinates")
        raise GuardExceededError(f"{total} patterns exceed campaign cap {limit}")
    return total


def masks_to_words(masks: List[int], n: int) -> np.ndarray:
    """Masks as a (len, n) uint8 array, bit j-1 into column j-1."""
    if n <= 64:
        values = np.array(masks, dtype=np.uint64).reshape(-1, 1)
        return ((values >> np.arange(n, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)
    return masks_to_array(masks, n)


def make_rng(seed: int) -> np.random.Generator:
    if seed is None:
        raise ParameterError("Sampled runs need an explicit seed")
    return np.random.Generator(np.random.PCG64(seed))


def sample_patterns(rng: np.random.Generator, n: int, weight: int, count: int) -> List[int]:
    """Uniform weight-`weight` masks, drawn independently."""
    if not 0 <= weight <= n:
        raise ParameterError(f"Weight {weight} outside [0, {n}]")
    if weight == 0:
        return [0] * count
    order = rng.random((count, n)).argsort(axis=1)[:, :weight]
    return [int(sum(1 << int(j) for j in row)) for row in order]


def channel_masks(rng: np.random.Generator, n: int, probability: float, count: int) -> np.ndarray:
    """Bernoulli(probability) masks as a (count, n) uint8 array."""
    if not 0.0 <= probability <= 1.0:
        raise ParameterError(f"Channel probability {probability} outside [0, 1]")
    return (rng.random((count, n)) < probability).astype(np.uint8)
