"""
Brute-force reference decoders used to cross-check the majority-logic decoders.
"""

import logging
from functools import lru_cache

import numpy as np

import config
from decode.words import ReceivedWord
from errors import ChannelContractError, GuardExceededError, ParameterError
from rmcode.generator import GeneratorMatrix, generator_matrix
from rmcode.gf2 import array_to_masks, gf2_rank, int_to_bits

logger = logging.getLogger(__name__)


def _guard_codebook(gen: GeneratorMatrix):
    params = gen.params
    cells = (1 << params.k) * params.n
    if params.k > config.ML_ORACLE_MAX_K or cells > config.ML_ORACLE_MAX_CELLS:
        logger.warning(f"Refusing ML codebook for RM({params.r},{params.m}): k={params.k}, {cells} cells")
        raise GuardExceededError(
            f"ML oracle needs k <= {config.ML_ORACLE_MAX_K} and at most {config.ML_ORACLE_MAX_CELLS} cells"
        )


@lru_cache(maxsize=8)
def codebook(r: int, m: int) -> np.ndarray:
    """All codewords as a (2^k, n) uint8 array, row v encoding the message whose bits spell v (first symbol high)."""
    gen = generator_matrix(r, m)
    _guard_codebook(gen)
    k = gen.params.k
    rows = gen.rows.astype(np.float32)
    shifts = np.arange(k - 1, -1, -1)
    book = np.empty((1 << k, gen.params.n), dtype=np.uint8)
    for start in range(0, 1 << k, config.BATCH_SIZE):
        values = np.arange(start, min(start + config.BATCH_SIZE, 1 << k))
        messages = ((values[:, None] >> shifts) & 1).astype(np.float32)
        book[start:start + len(values)] = (messages @ rows).astype(np.int64) & 1
    book.setflags(write=False)
    logger.debug(f"Built ML codebook for RM({r},{m}): {book.shape[0]} codewords")
    return book


def ml_decode_oracle(y: ReceivedWord, gen: GeneratorMatrix) -> int:
    """Nearest codeword; among equals the one with the lexicographically smallest message."""
    if y.erasures:
        raise ChannelContractError("ML oracle does not accept erased coordinates")
    params = gen.params
    if y.n != params.n:
        raise ParameterError(f"Received word has {y.n} coordinates, code length is {params.n}")
    book = codebook(params.r, params.m)
    distances = (book != int_to_bits(y.bits, params.n)).sum(axis=1)
    best = int(np.argmin(distances))
    return array_to_masks(book[best:best + 1])[0]


def erasure_correctable_oracle(mask: int, gen: GeneratorMatrix) -> bool:
    """True iff the generator columns left after erasing `mask` still have rank k."""
    params = gen.params
    kept = int_to_bits(~mask & ((1 << params.n) - 1), params.n).astype(bool)
    return gf2_rank(gen.rows[:, kept]) == params.k
