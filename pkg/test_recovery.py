#!/usr/bin/env python3
"""
Tests for the recovery-set families and their design and minimality properties.
"""

import os
import sys

import pytest

# Add current directory to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import config
from errors import GuardExceededError, ParameterError
from geom.points import PointSet
from geom.subspace import gaussian_binomial
from recovery.families import (RecoveryTable, build_family, corrupted_votes, design_check, expected_lambda,
                               large_recovery_sets, minimal_recovery_sets, minimality_check, recovery_table,
                               small_recovery_set, verify_recovery_set)
from rmcode.generator import generator_matrix

# a1 of RM(2, 4)
A1_LARGE = {
    frozenset({5, 6, 9, 10, 13, 14}),
    frozenset({3, 4, 9, 10, 11, 12}),
    frozenset({7, 8, 9, 10, 15, 16}),
    frozenset({3, 4, 5, 6, 7, 8}),
    frozenset({5, 6, 11, 12, 15, 16}),
    frozenset({3, 4, 13, 14, 15, 16}),
    frozenset({7, 8, 11, 12, 13, 14}),
}


def points(n, *indices):
    return PointSet.from_indices(n, indices)


def test_a1_family_of_rm24():
    family = recovery_table(2, 4).family((1,))
    assert family.small_set.indices() == [1, 2]
    assert {frozenset(s.indices()) for s in family.large_sets} == A1_LARGE
    assert design_check(family) == (3, True)
    # 7 sets of 6 points cover the 14 outside points 3 times each
    assert 7 * 6 == 14 * 3


def test_top_order_family_partitions_the_rest():
    family = recovery_table(2, 4).family((1, 2))
    assert family.small_set.indices() == [1, 2, 3, 4]
    assert sorted(s.indices() for s in family.large_sets) == [
        [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16],
    ]
    assert design_check(family) == (1, True)


def test_constant_family_of_rm12():
    family = recovery_table(1, 2).family(())
    assert family.small_set.indices() == [1]
    assert [s.indices() for s in family.large_sets] == [[2, 3, 4]]


def test_verify_recovery_set():
    gen = generator_matrix(2, 4)
    assert verify_recovery_set(points(16, 1, 2), (1,), gen)
    assert verify_recovery_set(points(16, 3, 4, 5, 6, 7, 8), (1,), gen)
    assert not verify_recovery_set(points(16, 1, 2, 3), (1,), gen)
    assert not verify_recovery_set(points(16, 1, 2), (2,), gen)
    assert not verify_recovery_set(points(8, 1, 2), (1,), gen)
    assert not verify_recovery_set(points(16, 1, 2), (1, 2, 3), gen)


def test_unknown_symbol_rejected():
    gen = generator_matrix(1, 3)
    with pytest.raises(ParameterError):
        small_recovery_set((1, 2), gen)
    with pytest.raises(ParameterError):
        recovery_table(1, 3).family((4,))


def test_corrupted_votes():
    family = recovery_table(2, 4).family((1,))
    assert corrupted_votes(points(16, 3, 5).mask, family) == 4
    assert corrupted_votes(points(16, 3).mask, family) == 3
    assert corrupted_votes(0, family) == 0


def test_table_order_and_size():
    table = recovery_table(2, 4)
    assert len(table) == 11
    assert [f.sigma for f in table] == list(table.gen.monomials)
    assert RecoveryTable.total_sets(table.gen) == 72


def test_table_guard(monkeypatch):
    monkeypatch.setattr(config, 'MAX_FAMILY_SETS', 10)
    with pytest.raises(GuardExceededError):
        RecoveryTable(generator_matrix(2, 4))


def test_large_set_guard(monkeypatch):
    monkeypatch.setattr(config, 'MAX_LARGE_SETS', 3)
    with pytest.raises(GuardExceededError):
        large_recovery_sets((), generator_matrix(2, 4))


def test_family_to_dict():
    entry = recovery_table(2, 4).family((1,)).to_dict()
    assert set(entry) == {'sigma', 'small', 'large', 'lambda'}
    assert entry['sigma'] == [1]
    assert entry['lambda'] == 3
    assert len(entry['large']) == 7


@pytest.mark.parametrize("m", range(1, 6))
def test_families_valid_and_balanced(m):
    for r in range(m):
        gen = generator_matrix(r, m)
        for family in recovery_table(r, m):
            order = family.order
            assert len(family.small_set) == 1 << order
            assert len(family.large_sets) == gaussian_binomial(m - order, r + 1 - order)
            for member in family.all_sets():
                assert verify_recovery_set(member, family.sigma, gen)
            for member in family.large_sets:
                assert len(member) == (1 << (r + 1)) - (1 << order)
                assert member.isdisjoint(family.small_set)
            assert design_check(family) == (expected_lambda(r, m, order), True)


@pytest.mark.slow
def test_families_valid_and_balanced_m6():
    for r in range(6):
        for family in recovery_table(r, 6):
            assert design_check(family)[1]


def test_build_family_is_deterministic():
    gen = generator_matrix(2, 5)
    assert build_family((2,), gen) == build_family((2,), gen)


@pytest.mark.parametrize("r,m,sigma", [(2, 4, (1,)), (2, 4, (1, 2)), (2, 4, ()), (1, 3, ()),
                                       (1, 3, (2,)), (1, 2, (1,)), (1, 4, ())])
def test_minimality(r, m, sigma):
    assert minimality_check(sigma, generator_matrix(r, m))


def test_minimal_sets_of_rm13_linear_symbol():
    minimal = minimal_recovery_sets((1,), generator_matrix(1, 3))
    sizes = sorted(v.bit_count() for v in minimal)
    assert sizes.count(2) == 4
    assert min(sizes) == 2
    # not every minimal set beyond the small one is a small or large set
    assert points(8, 2, 3, 5, 7).mask in minimal


def test_minimality_guard():
    with pytest.raises(GuardExceededError):
        minimal_recovery_sets((), generator_matrix(1, 5))


@pytest.mark.parametrize("m", range(2, 6))
def test_top_order_families_partition_all_points(m):
    for r in range(1, m):
        for family in recovery_table(r, m):
            if family.order != r:
                continue
            members = family.all_sets()
            assert len(members) == 1 << (m - r)
            union = 0
            for member in members:
                assert len(member) == 1 << r
                assert not union & member.mask
                union |= member.mask
            assert union == (1 << (1 << m)) - 1
