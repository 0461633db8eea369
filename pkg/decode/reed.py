"""
Reed's sequential majority-logic decoder, the baseline the one-step decoder is measured against.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from decode.words import ReceivedWord
from errors import ChannelContractError, ParameterError
from geom.subspace import Subspace, subspace_points
from rmcode.generator import GeneratorMatrix, MonomialIndex, encode_partial, generator_matrix
from rmcode.weights import translate

logger = logging.getLogger(__name__)


def coset_sets(sigma: MonomialIndex, m: int) -> List[int]:
    """The 2^(m - l) disjoint translates of span{e_i : i in sigma}."""
    base = subspace_points(Subspace.axes(m, sigma)).mask
    spanned = 0
    for i in sigma:
        spanned |= 1 << (i - 1)
    return [translate(base, shift) for shift in range(1 << m) if not shift & spanned]


class ReedDecoder:
    def __init__(self, gen: GeneratorMatrix):
        self.logger = logging.getLogger(__name__)
        self.gen = gen
        m = gen.params.m
        self.cosets: Dict[MonomialIndex, List[int]] = {sigma: coset_sets(sigma, m) for sigma in gen.monomials}

    def decode(self, y: ReceivedWord) -> Tuple[int, ...]:
        if y.erasures:
            raise ChannelContractError("Reed decoding does not accept erased coordinates")
        params = self.gen.params
        if y.n != params.n:
            raise ParameterError(f"Received word has {y.n} coordinates, code length is {params.n}")
        message = [0] * params.k
        residual = y.bits
        for degree in range(params.r, -1, -1):
            stage = [0] * params.k
            for i, sigma in enumerate(self.gen.monomials):
                if len(sigma) != degree:
                    continue
                cosets = self.cosets[sigma]
                ones = sum((c & residual).bit_count() & 1 for c in cosets)
                # ties go to 0
                stage[i] = 1 if 2 * ones > len(cosets) else 0
                message[i] = stage[i]
            residual ^= encode_partial(stage, self.gen, degree)
        return tuple(message)


@lru_cache(maxsize=32)
def reed_decoder(r: int, m: int) -> ReedDecoder:
    return ReedDecoder(generator_matrix(r, m))


def reed_decode(y: ReceivedWord, gen: GeneratorMatrix) -> Tuple[int, ...]:
    return reed_decoder(gen.params.r, gen.params.m).decode(y)
