#!/usr/bin/env python3
"""
Tests for subspaces, Gaussian binomials and transversals over F_2.
"""

import os
import sys

import pytest

# Add current directory to path for imports
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from errors import GuardExceededError, ParameterError
from geom.points import PointSet, coordinate_bits, point_coords
from geom.subspace import (Subspace, complement_points, enumerate_subspaces, enumerate_superspaces,
                           gaussian_binomial, subspace_points)
from geom.transversal import (coset_transversal, is_transversal, minimum_transversal,
                              transversal_number_bruteforce, transversal_size, truncated_flats)


def points(n, *indices):
    return PointSet.from_indices(n, indices)


def test_gaussian_binomial_values():
    assert gaussian_binomial(3, 2) == 7
    assert gaussian_binomial(2, 1) == 3
    assert gaussian_binomial(5, 0) == 1
    assert gaussian_binomial(4, 1) == 15
    assert gaussian_binomial(4, 2) == 35
    assert gaussian_binomial(2, 3) == 0
    # exact beyond 64 bits
    assert gaussian_binomial(40, 20) > 2 ** 64
    with pytest.raises(ParameterError):
        gaussian_binomial(-1, 0)


def test_point_table_convention():
    assert point_coords(1) == 0
    assert coordinate_bits(2, 4) == [0, 0, 0, 1]
    assert coordinate_bits(9, 4) == [1, 0, 0, 0]
    assert coordinate_bits(16, 4) == [1, 1, 1, 1]


def test_point_set_range_checks():
    assert len(points(16, 1, 3, 5)) == 3
    assert 3 in points(16, 1, 3, 5)
    with pytest.raises(ParameterError):
        points(16, 17)


def test_subspace_points():
    assert subspace_points(Subspace.zero(4)).indices() == [1]
    assert subspace_points(Subspace.span(4, [0b0001])).indices() == [1, 2]
    assert subspace_points(Subspace.span(4, [0b0001, 0b0010])).indices() == [1, 2, 3, 4]


def test_canonical_form_is_unique():
    assert Subspace.span(3, [0b011, 0b001]) == Subspace.span(3, [0b010, 0b011])
    with pytest.raises(ParameterError):
        Subspace(3, (0b001, 0b011))


def test_enumerate_subspaces_small():
    assert [str(s) for s in enumerate_subspaces(2, 1)] == ['span{01}', 'span{10}', 'span{11}']
    assert len(list(enumerate_subspaces(3, 2))) == 7
    assert list(enumerate_subspaces(4, 4)) == [Subspace.full(4)]
    with pytest.raises(ParameterError):
        list(enumerate_subspaces(3, 4))


@pytest.mark.parametrize("m", range(0, 6))
def test_subspace_counts_match_gaussian_binomial(m):
    for r in range(m + 1):
        spaces = list(enumerate_subspaces(m, r))
        assert len(spaces) == gaussian_binomial(m, r)
        assert len(set(spaces)) == len(spaces)
        assert all(s.dim == r for s in spaces)


def test_enumeration_is_deterministic():
    assert list(enumerate_subspaces(5, 2)) == list(enumerate_subspaces(5, 2))


def test_superspaces_of_a_line():
    s = Subspace.span(4, [0b0001])
    supers = list(enumerate_superspaces(s, 3))
    assert len(supers) == 7
    assert all(f.contains(s) for f in supers)


def test_superspaces_match_filtered_enumeration():
    s = Subspace.span(4, [0b0011, 0b0100])
    supers = set(enumerate_superspaces(s, 3))
    filtered = {f for f in enumerate_subspaces(4, 3) if f.contains(s)}
    assert supers == filtered
    assert len(supers) == 3


@pytest.mark.parametrize("m", range(1, 6))
def test_superspace_counts(m):
    for level in range(m + 1):
        s = Subspace.axes(m, range(1, level + 1))
        for dim in range(level, m + 1):
            assert len(list(enumerate_superspaces(s, dim))) == gaussian_binomial(m - level, dim - level)


def test_full_space_is_its_own_superspace():
    full = Subspace.full(3)
    assert list(enumerate_superspaces(full, 3)) == [full]


def test_complement_points():
    s = Subspace.span(4, [0b0001])
    f = Subspace.span(4, [0b0001, 0b0010, 0b0100])
    assert complement_points(f, s).indices() == [3, 4, 5, 6, 7, 8]
    assert complement_points(s, s).indices() == []
    plane = Subspace.span(4, [0b0001, 0b0010])
    assert complement_points(plane, Subspace.zero(4)).indices() == [2, 3, 4]
    with pytest.raises(ParameterError):
        complement_points(s, plane)


def test_subspace_text_round_trip():
    s = Subspace.span(4, [0b0001, 0b0010])
    assert s.to_text() == "0010\n0001"
    assert Subspace.from_text(4, s.to_text()) == s
    with pytest.raises(ParameterError):
        Subspace.from_text(4, "012")


def test_minimum_transversal_example():
    s = Subspace.span(4, [0b0001])
    t = minimum_transversal(4, s, 3)
    assert t.indices() == [3, 5, 7]
    assert is_transversal(t, 4, s, 3)
    assert t.isdisjoint(subspace_points(s))


def test_minimum_transversal_small_cases():
    single = minimum_transversal(3, Subspace.zero(3), 3)
    assert len(single) == 1
    assert is_transversal(single, 3, Subspace.zero(3), 3)
    lines = minimum_transversal(4, Subspace.zero(4), 2)
    assert len(lines) == 7
    assert len(truncated_flats(4, Subspace.zero(4), 2)) == 35
    assert is_transversal(lines, 4, Subspace.zero(4), 2)


def test_is_transversal_rejects():
    s = Subspace.span(4, [0b0001])
    assert not is_transversal(PointSet(16), 4, s, 3)
    assert is_transversal(points(16, 3, 5, 7), 4, s, 3)
    assert not is_transversal(points(16, 3, 5), 4, s, 3)


def test_coset_transversal_is_minimum_but_not_a_subspace():
    s = Subspace.span(4, [0b0001])
    t = coset_transversal(4, s, 3, [0, 1])
    assert t.indices() == [4, 5, 7]
    assert len(t) == transversal_size(4, 3)
    assert is_transversal(t, 4, s, 3)
    with pytest.raises(ParameterError):
        coset_transversal(4, s, 3, [0b0010])


def test_bruteforce_transversal_numbers():
    assert transversal_number_bruteforce(4, Subspace.span(4, [0b0001]), 3) == 3
    assert transversal_number_bruteforce(3, Subspace.zero(3), 3) == 1
    assert transversal_number_bruteforce(4, Subspace.zero(4), 4) == 1


def test_bruteforce_guard():
    with pytest.raises(GuardExceededError):
        transversal_number_bruteforce(6, Subspace.zero(6), 6)


def test_transversal_dimension_checks():
    with pytest.raises(ParameterError):
        minimum_transversal(4, Subspace.span(4, [0b0001, 0b0010]), 2)


@pytest.mark.parametrize("m", range(1, 5))
def test_transversal_optimality_up_to_m4(m):
    for level in range(m):
        s = Subspace.axes(m, range(1, level + 1))
        for flat_dim in range(level + 1, m + 1):
            built = minimum_transversal(m, s, flat_dim)
            assert len(built) == transversal_size(m, flat_dim)
            assert is_transversal(built, m, s, flat_dim)
            assert transversal_number_bruteforce(m, s, flat_dim) == len(built)


@pytest.mark.slow
def test_transversal_optimality_m5():
    for level in range(5):
        s = Subspace.axes(5, range(1, level + 1))
        for flat_dim in range(level + 1, 6):
            assert transversal_number_bruteforce(5, s, flat_dim) == (1 << (5 - flat_dim + 1)) - 1
