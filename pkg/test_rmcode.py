#!/usr/bin/env python3
"""
Tests for the Reed-Muller generator matrix, encoding, text forms and code structure.
"""

import os
import sys

import numpy as np
import pytest

# Add current directory to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from errors import GuardExceededError, ParameterError
from rmcode.bitstrings import (format_bits, format_hex, format_message, message_from_int, parse_bits,
                               parse_hex, parse_message, parse_word)
from rmcode.generator import (code_params, encode, encode_partial, generator_matrix, monomial_order,
                              one_step_bound, parse_sigma, symbol_name, variable_row)
from rmcode.gf2 import array_to_masks, gf2_rank, masks_to_array
from rmcode.weights import (all_codewords, count_flats, dual_check, flat_incidence_vectors,
                            generator_rank, min_weight_flats_check, minimum_distance, translate)

RM24_ROWS = [
    "1111111111111111",
    "0000000011111111",
    "0000111100001111",
    "0011001100110011",
    "0101010101010101",
    "0000000000001111",
    "0000000000110011",
    "0000000001010101",
    "0000001100000011",
    "0000010100000101",
    "0001000100010001",
]


def test_monomial_order():
    assert monomial_order(2, 4) == [(), (4,), (3,), (2,), (1,),
                                    (3, 4), (2, 4), (1, 4), (2, 3), (1, 3), (1, 2)]
    assert monomial_order(1, 2) == [(), (2,), (1,)]
    assert monomial_order(0, 3) == [()]


def test_generator_matrix_rm24():
    gen = generator_matrix(2, 4)
    assert gen.to_text().split("\n") == RM24_ROWS
    assert gen.rows.shape == (11, 16)
    assert gen.row_index[(1, 2)] == 10


def test_generator_matrix_rm12():
    assert generator_matrix(1, 2).to_text() == "1111\n0011\n0101"


def test_variable_rows():
    assert format_bits(variable_row(1, 3), 8) == "01010101"
    assert format_bits(variable_row(3, 3), 8) == "00001111"


def test_code_params():
    params = code_params(2, 4)
    assert (params.n, params.k, params.d) == (16, 11, 4)
    assert params.error_radius == 1
    assert params.erasure_radius == 3
    assert code_params(1, 5).error_radius == 4
    assert code_params(0, 1).to_dict() == {'r': 0, 'm': 1, 'n': 2, 'k': 1, 'd': 2}


@pytest.mark.parametrize("r,m", [(-1, 3), (3, 3), (4, 3), (1.0, 3)])
def test_code_params_rejects_bad_orders(r, m):
    with pytest.raises(ParameterError):
        code_params(r, m)


def test_encoding_basics():
    gen = generator_matrix(2, 4)
    single = [0] * 11
    single[gen.row_index[(1, 2)]] = 1
    assert format_bits(encode(single, gen), 16) == "0001000100010001"
    constant = [1] + [0] * 10
    assert format_bits(gen.encode(constant), 16) == "1" * 16
    assert gen.encode([0] * 11) == 0
    with pytest.raises(ParameterError):
        gen.encode([1, 0])


def test_encode_partial_splits_by_degree():
    gen = generator_matrix(2, 4)
    message = message_from_int(0b10110011101, 11)
    total = 0
    for degree in range(3):
        total ^= encode_partial(message, gen, degree)
    assert total == gen.encode(message)


def test_one_step_bound():
    assert one_step_bound(2, 4) == {
        'dual_distance': 8,
        'one_step_limit': '15/14',
        'one_step_limit_floor': 1,
        'universal_limit': '1',
        'guaranteed_errors': 1,
        'guaranteed_erasures': 3,
    }


def test_symbol_names():
    assert symbol_name(()) == "a0"
    assert symbol_name((1, 2)) == "a12"
    assert symbol_name((3, 10)) == "a3,10"
    assert parse_sigma("a12", 4) == (1, 2)
    assert parse_sigma("0", 4) == ()
    assert parse_sigma("a0", 4) == ()
    assert parse_sigma("3,10", 12) == (3, 10)
    for bad in ("21", "15", "1x"):
        with pytest.raises(ParameterError):
            parse_sigma(bad, 4)


def test_bit_string_forms():
    assert format_hex(1, 16) == "0x8000"
    assert parse_hex("0x8000", 16) == 1
    assert format_hex(0b1, 2) == "0x8"
    assert parse_word("0x8", 2) == 1
    assert parse_word("10", 2) == 1
    with pytest.raises(ParameterError):
        parse_hex("0xc", 2)
    with pytest.raises(ParameterError):
        parse_bits("1021", 4)
    with pytest.raises(ParameterError):
        parse_bits("101", 4)


def test_message_forms():
    assert message_from_int(1, 3) == (0, 0, 1)
    assert message_from_int(4, 3) == (1, 0, 0)
    assert parse_message("001", 3) == (0, 0, 1)
    assert format_message((1, 0, 1)) == "101"


def test_gf2_helpers():
    assert gf2_rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2
    assert gf2_rank(np.zeros((0, 4))) == 0
    masks = [0b1011, 0b0001, 0]
    assert array_to_masks(masks_to_array(masks, 4)) == masks


@pytest.mark.parametrize("r,m", [(0, 1), (1, 3), (2, 4), (1, 5), (2, 5), (3, 6)])
def test_generator_has_full_rank(r, m):
    gen = generator_matrix(r, m)
    assert generator_rank(gen) == gen.params.k


@pytest.mark.parametrize("m", range(1, 7))
def test_dual_codes_are_orthogonal(m):
    for r in range(m):
        assert dual_check(r, m)


def test_minimum_distance():
    # exhaustive over all 2^16 codewords
    assert minimum_distance(generator_matrix(2, 5)) == code_params(2, 5).d == 8
    assert minimum_distance(generator_matrix(2, 4)) == 4
    assert minimum_distance(generator_matrix(1, 4)) == 8
    assert sum(1 for _ in all_codewords(generator_matrix(1, 3))) == 16


def test_minimum_weight_codewords_are_flats():
    assert min_weight_flats_check(0, 2)
    assert min_weight_flats_check(1, 3)
    assert min_weight_flats_check(2, 4)
    assert len(flat_incidence_vectors(3, 2)) == count_flats(3, 2) == 14


def test_translate():
    assert translate(0b0011, 0b10) == 0b1100
    assert translate(0, 5) == 0


def test_exhaustive_sweep_guard():
    with pytest.raises(GuardExceededError):
        next(all_codewords(generator_matrix(4, 5)))
