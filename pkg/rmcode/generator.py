"""
Reed-Muller code RM(r, m): monomial ordering, generator matrix, encoding and parameters.

Rows follow degree ascending and, within a degree, descending colexicographic
order of the variable tuples. For RM(2, 4) this is
1, v4, v3, v2, v1, v3v4, v2v4, v1v4, v2v3, v1v3, v1v2.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

import numpy as np

import config
from errors import GuardExceededError, ParameterError
from rmcode.bitstrings import format_bits
from rmcode.gf2 import masks_to_array

logger = logging.getLogger(__name__)

MonomialIndex = Tuple[int, ...]


def check_order(r: int, m: int):
    if not isinstance(r, int) or not isinstance(m, int):
        raise ParameterError(f"r and m must be integers, got ({r!r}, {m!r})")
    if not 0 <= r < m:
        raise ParameterError(f"Need 0 <= r < m, got r={r}, m={m}")


@dataclass(frozen=True)
class CodeParams:
    r: int
    m: int
    n: int
    k: int
    d: int

    def to_dict(self) -> Dict[str, int]:
        return {'r': self.r, 'm': self.m, 'n': self.n, 'k': self.k, 'd': self.d}

    @property
    def error_radius(self) -> int:
        """Errors the one-step decoder is guaranteed to correct (d / 4, floored)."""
        return (1 << (self.m - self.r)) // 4

    @property
    def erasure_radius(self) -> int:
        return self.d - 1


def code_params(r: int, m: int) -> CodeParams:
    check_order(r, m)
    return CodeParams(r=r, m=m, n=1 << m, k=sum(comb(m, i) for i in range(r + 1)), d=1 << (m - r))


def one_step_bound(r: int, m: int) -> Dict:
    """Dual distance and the general one-step limit (n - 1) / (2 (d_dual - 1))."""
    params = code_params(r, m)
    dual_distance = 1 << (r + 1)
    limit = Fraction(params.n - 1, 2 * (dual_distance - 1))
    universal = Fraction(1 << m, 1 << (r + 2))
    return {
        'dual_distance': dual_distance,
        'one_step_limit': str(limit),
        'one_step_limit_floor': limit.numerator // limit.denominator,
        'universal_limit': str(universal),
        'guaranteed_errors': params.error_radius,
        'guaranteed_erasures': params.erasure_radius,
    }


def monomial_order(r: int, m: int) -> List[MonomialIndex]:
    check_order(r, m)
    order: List[MonomialIndex] = []
    for degree in range(r + 1):
        tuples = itertools.combinations(range(1, m + 1), degree)
        order.extend(sorted(tuples, key=lambda t: tuple(reversed(t)), reverse=True))
    return order


def symbol_name(sigma: MonomialIndex) -> str:
    """a0 for the constant term, else a followed by the variable indices."""
    if not sigma:
        return "a0"
    if max(sigma) >= 10:
        return "a" + ",".join(str(i) for i in sigma)
    return "a" + "".join(str(i) for i in sigma)


def parse_sigma(text: str, m: int) -> MonomialIndex:
    text = text.strip().lower()
    if text.startswith("a"):
        text = text[1:]
    if text in ("", "0", "()"):
        return ()
    parts = text.split(",") if "," in text else list(text)
    try:
        sigma = tuple(int(p) for p in parts)
    except ValueError as e:
        raise ParameterError(f"Malformed monomial index {text!r}") from e
    if list(sigma) != sorted(set(sigma)) or not all(1 <= i <= m for i in sigma):
        raise ParameterError(f"Monomial index {sigma} must be strictly increasing within [1, {m}]")
    return sigma


def variable_row(i: int, m: int) -> int:
    """Evaluations of v_i over P_1..P_{2^m}, as a mask with bit j-1 for P_j."""
    half = 1 << (i - 1)
    period = half << 1
    block = ((1 << half) - 1) << half
    return block * (((1 << (1 << m)) - 1) // ((1 << period) - 1))


@dataclass(frozen=True)
class GeneratorMatrix:
    params: CodeParams
    monomials: Tuple[MonomialIndex, ...]
    row_masks: Tuple[int, ...]
    row_index: Dict[MonomialIndex, int] = field(compare=False, hash=False)

    @property
    def rows(self) -> np.ndarray:
        matrix = masks_to_array(self.row_masks, self.params.n)
        matrix.setflags(write=False)
        return matrix

    def column_masks(self) -> List[int]:
        """Column j (0-based) as a k-bit mask, bit i for row i."""
        columns = [0] * self.params.n
        for i, mask in enumerate(self.row_masks):
            while mask:
                low = mask & -mask
                columns[low.bit_length() - 1] |= 1 << i
                mask ^= low
        return columns

    def encode(self, message: Sequence[int]) -> int:
        return encode(message, self)

    def to_text(self) -> str:
        return "\n".join(format_bits(mask, self.params.n) for mask in self.row_masks)


@lru_cache(maxsize=64)
def generator_matrix(r: int, m: int) -> GeneratorMatrix:
    params = code_params(r, m)
    if m > config.MAX_M_ENCODE:
        logger.warning(f"Refusing RM({r},{m}): m above limit {config.MAX_M_ENCODE}")
        raise GuardExceededError(f"m={m} exceeds encoding limit {config.MAX_M_ENCODE}")
    variables = {i: variable_row(i, m) for i in range(1, m + 1)}
    everything = (1 << params.n) - 1
    monomials = tuple(monomial_order(r, m))
    masks = []
    for sigma in monomials:
        row = everything
        for i in sigma:
            row &= variables[i]
        masks.append(row)
    logger.debug(f"Built generator matrix for RM({r},{m}): {params.k}x{params.n}")
    return GeneratorMatrix(
        params=params,
        monomials=monomials,
        row_masks=tuple(masks),
        row_index={sigma: i for i, sigma in enumerate(monomials)},
    )


def encode(message: Sequence[int], gen: GeneratorMatrix) -> int:
    """Codeword a . G as a mask with bit j-1 holding x_j."""
    if len(message) != gen.params.k:
        raise ParameterError(f"Message length {len(message)} != k={gen.params.k}")
    word = 0
    for bit, row in zip(message, gen.row_masks):
        if int(bit) & 1:
            word ^= row
    return word


def encode_partial(message: Sequence[int], gen: GeneratorMatrix, degree: int) -> int:
    """Contribution of the degree-`degree` symbols alone."""
    word = 0
    for bit, sigma, row in zip(message, gen.monomials, gen.row_masks):
        if len(sigma) == degree and int(bit) & 1:
            word ^= row
    return word
