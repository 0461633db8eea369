#!/usr/bin/env python3
"""
Tests for the one-step majority-logic decoder, Reed's decoder and the brute-force oracles.
"""

import os
import sys
from itertools import combinations

import numpy as np
import pytest

# Add current directory to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from decode.majority import (BatchMajorityDecoder, MajorityLogicDecoder, mld_decode_erasures,
                             mld_decode_errors, naive_erasure_radius)
from decode.oracles import codebook, erasure_correctable_oracle, ml_decode_oracle
from decode.reed import coset_sets, reed_decode
from decode.words import STATUS_ERASURE_FAILURE, STATUS_OK, STATUS_TIE, ReceivedWord
from errors import ChannelContractError, GuardExceededError, ParameterError
from geom.points import PointSet
from recovery.families import recovery_table
from rmcode.bitstrings import message_from_int
from rmcode.generator import generator_matrix
from rmcode.gf2 import bits_to_int


def mask_of(*indices, n=16):
    return PointSet.from_indices(n, indices).mask


def sample_messages(k, count=32):
    step = max(1, (1 << k) // count)
    return [message_from_int(v, k) for v in range(0, 1 << k, step)]


def test_codewords_decode_exactly():
    gen = generator_matrix(2, 4)
    table = recovery_table(2, 4)
    for message in sample_messages(11):
        report = mld_decode_errors(ReceivedWord(16, gen.encode(message)), table)
        assert report.message == message
        assert report.status == STATUS_OK


def test_single_errors_are_corrected():
    gen = generator_matrix(2, 4)
    table = recovery_table(2, 4)
    for message in sample_messages(11, 8):
        for j in range(16):
            report = mld_decode_errors(ReceivedWord(16, gen.encode(message) ^ (1 << j)), table)
            assert report.message == message


def test_two_errors_tie_a1():
    gen = generator_matrix(2, 4)
    table = recovery_table(2, 4)
    ones = (1,) * 11
    y = ReceivedWord(16, gen.encode(ones) ^ mask_of(3, 5))
    report = mld_decode_errors(y, table)
    a1 = report.per_symbol[gen.row_index[(1,)]]
    assert a1.tie
    assert a1.value == 0
    assert (a1.votes_for_0, a1.votes_for_1) == (4, 4)
    assert report.status == STATUS_TIE
    assert report.message != ones


def test_error_decoder_rejects_erasures():
    table = recovery_table(2, 4)
    with pytest.raises(ChannelContractError):
        mld_decode_errors(ReceivedWord(16, 0, erasures=1), table)
    with pytest.raises(ParameterError):
        mld_decode_errors(ReceivedWord(8, 0), table)


def test_received_word_checks():
    with pytest.raises(ParameterError):
        ReceivedWord(4, 0b10000)
    word = ReceivedWord.from_text(4, "0110", "0x8")
    assert word.erasures == 1
    assert word.to_dict() == {'word': "0110", 'erasures': "1000"}


def test_erasures_within_radius_recovered():
    gen = generator_matrix(2, 4)
    table = recovery_table(2, 4)
    message = message_from_int(0b10110100111, 11)
    erased = mask_of(1, 3, 5)
    report = mld_decode_erasures(ReceivedWord(16, gen.encode(message) & ~erased, erased), table)
    assert report.message == message
    assert report.status == STATUS_OK
    assert report.per_symbol[gen.row_index[(1,)]].used_set > 0


def test_erasure_blocking_pattern():
    gen = generator_matrix(2, 4)
    table = recovery_table(2, 4)
    erased = mask_of(1, 3, 5, 7)
    report = mld_decode_erasures(ReceivedWord(16, 0, erased), table)
    assert report.status == STATUS_ERASURE_FAILURE
    assert (1,) in report.unrecoverable_symbols()
    assert report.per_symbol[gen.row_index[(1,)]].unrecoverable


def test_erasure_first_unblocked_set():
    table = recovery_table(2, 4)
    report = mld_decode_erasures(ReceivedWord(16, 0, mask_of(16)), table)
    gen = table.gen
    assert report.per_symbol[gen.row_index[(1,)]].used_set == 0
    report = mld_decode_erasures(ReceivedWord(16, 0, mask_of(2)), table)
    assert report.per_symbol[gen.row_index[(1,)]].used_set == 1


def test_decoder_object():
    decoder = MajorityLogicDecoder(1, 3)
    gen = decoder.gen
    message = (1, 0, 1, 1)
    assert decoder.decode_codeword(ReceivedWord(8, gen.encode(message) ^ 1)) == gen.encode(message)
    assert decoder.decode(ReceivedWord(8, gen.encode(message), 0b11), 'erasures').message == message
    with pytest.raises(ParameterError):
        decoder.decode(ReceivedWord(8, 0), 'list')


def test_naive_erasure_radius():
    assert naive_erasure_radius(2, 4) == 1
    assert naive_erasure_radius(1, 5) == 7
    with pytest.raises(ParameterError):
        naive_erasure_radius(3, 3)


def test_coset_sets_partition():
    cosets = coset_sets((1,), 4)
    assert len(cosets) == 8
    union = 0
    for c in cosets:
        assert c.bit_count() == 2
        assert not union & c
        union |= c
    assert union == (1 << 16) - 1


def test_reed_single_errors_rm24():
    gen = generator_matrix(2, 4)
    for message in sample_messages(11, 16):
        codeword = gen.encode(message)
        assert reed_decode(ReceivedWord(16, codeword), gen) == message
        for j in range(16):
            assert reed_decode(ReceivedWord(16, codeword ^ (1 << j)), gen) == message


def test_reed_corrects_three_errors_rm14():
    gen = generator_matrix(1, 4)
    messages = [(0,) * 5, (1,) * 5, (1, 0, 1, 1, 0)]
    for message in messages:
        codeword = gen.encode(message)
        for w in range(4):
            for positions in combinations(range(16), w):
                errors = sum(1 << j for j in positions)
                assert reed_decode(ReceivedWord(16, codeword ^ errors), gen) == message


def test_reed_rejects_erasures():
    gen = generator_matrix(1, 3)
    with pytest.raises(ChannelContractError):
        reed_decode(ReceivedWord(8, 0, 1), gen)


@pytest.mark.parametrize("r,m", [(1, 3), (2, 4)])
def test_ml_oracle_agrees_within_radius(r, m):
    gen = generator_matrix(r, m)
    n = gen.params.n
    table = recovery_table(r, m)
    for message in sample_messages(gen.params.k, 16):
        codeword = gen.encode(message)
        for error in [0] + [1 << j for j in range(n)]:
            y = ReceivedWord(n, codeword ^ error)
            assert ml_decode_oracle(y, gen) == codeword
            assert gen.encode(mld_decode_errors(y, table).message) == codeword


def test_codebook_layout():
    book = codebook(1, 3)
    gen = generator_matrix(1, 3)
    assert book.shape == (16, 8)
    assert bits_to_int(book[0b1000]) == gen.row_masks[0]
    assert bits_to_int(book[0b0001]) == gen.row_masks[3]


def test_codebook_guard():
    with pytest.raises(GuardExceededError):
        codebook(3, 6)


def test_erasure_correctable_oracle():
    gen = generator_matrix(2, 4)
    assert erasure_correctable_oracle(0, gen)
    assert erasure_correctable_oracle(mask_of(1, 3, 5), gen)
    # the support of a minimum-weight codeword cannot be erased
    assert not erasure_correctable_oracle(gen.row_masks[gen.row_index[(1, 2)]], gen)
    # origin plus a minimum transversal is a 2-flat, so no decoder recovers it
    assert not erasure_correctable_oracle(mask_of(1, 3, 5, 7), gen)


def test_batch_decoder_matches_scalar_errors():
    rng = np.random.Generator(np.random.PCG64(7))
    table = recovery_table(2, 5)
    batch = BatchMajorityDecoder(table)
    words = (rng.random((200, 32)) < 0.15).astype(np.uint8)
    decoded, ties = batch.decode_errors(words)
    for i, row in enumerate(words):
        report = mld_decode_errors(ReceivedWord(32, bits_to_int(row)), table)
        assert tuple(int(b) for b in decoded[i]) == report.message
        assert [bool(t) for t in ties[i]] == [d.tie for d in report.per_symbol]


def test_batch_decoder_matches_scalar_erasures():
    rng = np.random.Generator(np.random.PCG64(11))
    table = recovery_table(2, 4)
    batch = BatchMajorityDecoder(table)
    words = rng.integers(0, 2, size=(200, 16), dtype=np.uint8)
    erasures = (rng.random((200, 16)) < 0.3).astype(np.uint8)
    decoded, unrecoverable = batch.decode_erasures(words, erasures)
    for i in range(len(words)):
        y = ReceivedWord(16, bits_to_int(words[i]), bits_to_int(erasures[i]))
        report = mld_decode_erasures(y, table)
        assert [bool(u) for u in unrecoverable[i]] == [d.unrecoverable for d in report.per_symbol]
        assert tuple(int(b) for b in decoded[i]) == report.message


def test_decoding_is_deterministic():
    table = recovery_table(2, 4)
    y = ReceivedWord(16, mask_of(3, 5, 9))
    assert mld_decode_errors(y, table).to_dict() == mld_decode_errors(y, table).to_dict()
