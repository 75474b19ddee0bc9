import math

import pytest
from hypothesis import given, strategies as st

from stablematch.profile import (PreferenceProfile, ProfileError, all_profiles, choice_order,
                                 complement, decode, encode, format_profile, index_space_size,
                                 parse_profile, perm_rank, perm_unrank, permutation_table,
                                 random_profile, ratings_from_order)
from conftest import profiles


def test_rank_lookups(worked_example):
    p = worked_example
    assert p.n == 3
    assert p.man_rank(2, 1) == 2
    assert p.woman_rank(1, 1) == 3
    assert p.men_order(2) == (3, 1, 2)
    assert p.women_order(1) == (2, 3, 1)


def test_arrays_are_zero_based(worked_example):
    men, women = worked_example.arrays()
    assert men.dtype.itemsize == 1
    assert men[0].tolist() == [0, 1, 2]
    assert women[0].tolist() == [2, 0, 1]


@pytest.mark.parametrize("men, women, msg", [
    (((1, 2), (2, 2)), ((1, 2), (2, 1)), "man 2"),
    (((1, 2), (2, 1)), ((1, 2, 3), (2, 1)), "woman 1"),
    (((1, 2), (2, 1)), ((1, 2),), "2 men but 1 women"),
    ((), (), "at least one"),
])
def test_invalid_profiles_rejected(men, women, msg):
    with pytest.raises(ProfileError, match=msg):
        PreferenceProfile(men, women)


def test_choice_order_inverts_ratings():
    assert choice_order((3, 1, 2)) == (2, 3, 1)
    assert ratings_from_order((2, 3, 1)) == (3, 1, 2)


@given(st.integers(1, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_perm_rank_roundtrip(perm):
    perm = tuple(perm)
    assert perm_unrank(perm_rank(perm), len(perm)) == perm


def test_permutation_table_is_lexicographic():
    t = permutation_table(3)
    assert t.tolist() == [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
    assert not t.flags.writeable
    assert [perm_rank(tuple(r + 1)) for r in t] == list(range(6))


def test_index_of_all_reversed_n2():
    p = PreferenceProfile(((2, 1), (2, 1)), ((2, 1), (2, 1)))
    assert encode(p) == 15
    assert decode(15, 2) == p


def test_decode_follows_enumeration_order():
    assert [encode(p) for p in all_profiles(2)] == list(range(16))
    assert index_space_size(3) == 46656


@given(profiles(max_n=7))
def test_encode_decode_roundtrip(p):
    assert decode(encode(p), p.n) == p


@pytest.mark.parametrize("index", [-1, 16])
def test_decode_out_of_range(index):
    with pytest.raises(ValueError):
        decode(index, 2)


@given(profiles())
def test_complement_is_an_involution(p):
    assert complement(complement(p)) == p


@given(profiles())
def test_text_roundtrip(p):
    assert parse_profile(format_profile(p)) == p
    assert parse_profile(format_profile(p).encode()) == p


def test_parse_skips_comments_and_blank_lines():
    p = parse_profile("# men\n1 2\n\n2 1\n# women\n1 2\n1 2\n")
    assert p.men == ((1, 2), (2, 1))


@pytest.mark.parametrize("text, msg", [
    ("1 2\n2 2\n1 2\n1 2\n", "line 2: row \\[2, 2\\] is not a permutation"),
    ("1 2\n2 1 3\n", "line 2: expected 2 entries"),
    ("1 2\n2 1\n1 2\n", "expected 4 rows"),
    ("1 x\n", "line 1: expected integers"),
    ("\n# nothing\n", "no data"),
])
def test_parse_errors_name_the_line(text, msg):
    with pytest.raises(ProfileError, match=msg):
        parse_profile(text)


def test_random_profile_is_reproducible():
    import numpy as np
    a = random_profile(5, np.random.default_rng(7))
    b = random_profile(5, np.random.default_rng(7))
    assert a == b and a.n == 5


def test_swap_sides_twice():
    p = decode(12345, 3)
    assert p.swap_sides().swap_sides() == p
    assert p.swap_sides().men == p.women
    assert math.factorial(3) ** 6 == index_space_size(3)
