"""
One-step majority-logic decoding of RM(r, m) for errors and for erasures.

Every symbol is decoded in the same pass from its own recovery family; there is
no subtraction between symbols. A vote is the parity of the received word over
one recovery set.
"""

import logging
from typing import Tuple

import numpy as np

from decode.words import DecodeReport, ReceivedWord, SymbolDecision
from errors import ChannelContractError, ParameterError
from recovery.families import RecoveryFamily, RecoveryTable, recovery_table
from rmcode.generator import code_params, encode, generator_matrix

logger = logging.getLogger(__name__)


def _check_length(y: ReceivedWord, table: RecoveryTable):
    if y.n != table.gen.params.n:
        raise ParameterError(f"Received word has {y.n} coordinates, code length is {table.gen.params.n}")


def vote_symbol(bits: int, family: RecoveryFamily) -> SymbolDecision:
    ones = sum((member.mask & bits).bit_count() & 1 for member in family.all_sets())
    zeros = 1 + len(family.large_sets) - ones
    return SymbolDecision(
        sigma=family.sigma,
        value=1 if ones > zeros else 0,
        votes_for_0=zeros,
        votes_for_1=ones,
        tie=ones == zeros,
    )


def recover_symbol(bits: int, erasures: int, family: RecoveryFamily) -> SymbolDecision:
    """Read the symbol from the first recovery set free of erasures."""
    for position, member in enumerate(family.all_sets()):
        if member.mask & erasures:
            continue
        value = (member.mask & bits).bit_count() & 1
        return SymbolDecision(sigma=family.sigma, value=value, votes_for_0=1 - value,
                              votes_for_1=value, used_set=position)
    return SymbolDecision(sigma=family.sigma, unrecoverable=True)


def mld_decode_errors(y: ReceivedWord, table: RecoveryTable) -> DecodeReport:
    """Majority vote per symbol; exact ties decode to 0 and are flagged."""
    if y.erasures:
        raise ChannelContractError("Error decoding was given erased coordinates; decode erasures separately")
    _check_length(y, table)
    return DecodeReport(per_symbol=[vote_symbol(y.bits, family) for family in table])


def mld_decode_erasures(y: ReceivedWord, table: RecoveryTable) -> DecodeReport:
    """Erasure-channel decoding; unrecoverable symbols are reported in-band."""
    _check_length(y, table)
    report = DecodeReport(per_symbol=[recover_symbol(y.bits, y.erasures, family) for family in table])
    if report.unrecoverable_symbols():
        logger.debug(f"{len(report.unrecoverable_symbols())} symbols blocked by {y.erasure_weight} erasures")
    return report


class BatchMajorityDecoder:
    """Vectorised form of the same decoder over many words at once.

    Words are uint8 arrays of shape (batch, n). Recovery sets become the rows of
    an incidence matrix, so every vote of every word is one matrix product.
    """

    def __init__(self, table: RecoveryTable):
        self.logger = logging.getLogger(__name__)
        self.table = table
        n = table.gen.params.n
        rows = []
        starts = []
        for family in table:
            starts.append(len(rows))
            rows.extend(member.mask for member in family.all_sets())
        incidence = np.zeros((len(rows), n), dtype=np.float32)
        for i, mask in enumerate(rows):
            while mask:
                low = mask & -mask
                incidence[i, low.bit_length() - 1] = 1.0
                mask ^= low
        self.incidence_t = np.ascontiguousarray(incidence.T)
        self.starts = np.array(starts, dtype=np.intp)
        self.sizes = np.diff(np.append(self.starts, len(rows)))
        self.logger.debug(f"Batch decoder ready: {len(rows)} recovery sets over {n} coordinates")

    def _counts(self, words: np.ndarray) -> np.ndarray:
        return (words.astype(np.float32) @ self.incidence_t).astype(np.int64)

    def decode_errors(self, words: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Returns (messages, ties), both of shape (batch, k)."""
        votes = self._counts(words) & 1
        ones = np.add.reduceat(votes, self.starts, axis=1)
        zeros = self.sizes - ones
        return (ones > zeros).astype(np.uint8), ones == zeros

    def decode_erasures(self, words: np.ndarray, erasures: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Returns (messages, unrecoverable), both of shape (batch, k)."""
        unblocked = self._counts(erasures) == 0
        parities = self._counts(words * (1 - erasures)) & 1
        batch = words.shape[0]
        messages = np.zeros((batch, len(self.starts)), dtype=np.uint8)
        unrecoverable = np.zeros((batch, len(self.starts)), dtype=bool)
        rows = np.arange(batch)
        for i, (start, size) in enumerate(zip(self.starts, self.sizes)):
            block = unblocked[:, start:start + size]
            found = block.any(axis=1)
            first = block.argmax(axis=1)
            messages[:, i] = np.where(found, parities[rows, start + first], 0)
            unrecoverable[:, i] = ~found
        return messages, unrecoverable


def naive_erasure_radius(r: int, m: int) -> int:
    """Erasure count guaranteed by the plain counting argument, below the true radius d - 1."""
    code_params(r, m)
    return (1 << (m - r - 1)) - 1


class MajorityLogicDecoder:
    """One-step decoder bound to a single code."""

    def __init__(self, r: int, m: int):
        self.logger = logging.getLogger(__name__)
        self.gen = generator_matrix(r, m)
        self.table = recovery_table(r, m)

    @property
    def params(self):
        return self.gen.params

    def decode(self, y: ReceivedWord, mode: str = 'errors') -> DecodeReport:
        if mode == 'errors':
            report = mld_decode_errors(y, self.table)
        elif mode == 'erasures':
            report = mld_decode_erasures(y, self.table)
        else:
            raise ParameterError(f"Unknown decoding mode {mode!r}")
        self.logger.debug(f"RM({self.params.r},{self.params.m}) {mode}: {report.status}")
        return report

    def decode_codeword(self, y: ReceivedWord, mode: str = 'errors') -> int:
        return encode(self.decode(y, mode).message, self.gen)
