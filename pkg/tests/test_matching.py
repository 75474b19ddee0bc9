import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from stablematch.classify import count_soulmates, men_first_choices_distinct, soulmate_pairs
from stablematch.formulas import tastes_differ_profiles
from stablematch.matching import (MAX_ENUMERATE_N, Matching, Side, all_matchings, egalitarian_cost,
                                  enumerate_stable, find_blocking_pair, gale_shapley,
                                  hell_couples_in, is_stable, pair_costs)
from stablematch.profile import (PreferenceProfile, ProfileError, all_profiles, complement,
                                 random_profile)
from conftest import profiles

TWO_STABLE = PreferenceProfile(men=((1, 2), (2, 1)), women=((2, 1), (1, 2)))


def blocking_pairs_naive(p, m):
    """Every blocking pair, straight from the definition."""
    out = []
    for man, woman in itertools.product(range(1, p.n + 1), repeat=2):
        if m.wife(man) == woman:
            continue
        if (p.man_rank(man, woman) < p.man_rank(man, m.wife(man))
                and p.woman_rank(woman, man) < p.woman_rank(woman, m.husband(woman))):
            out.append((man, woman))
    return out


def test_matching_views():
    m = Matching((2, 3, 1))
    assert m.couples() == [(1, 2), (2, 3), (3, 1)]
    assert m.husbands() == (3, 1, 2)
    assert m.wife(1) == 2 and m.husband(1) == 3
    with pytest.raises(ProfileError):
        Matching((1, 1, 2))


def test_worked_example(worked_example):
    men = gale_shapley(worked_example, Side.MEN)
    women = gale_shapley(worked_example, "women")
    assert men.matching.couples() == [(1, 1), (2, 3), (3, 2)]
    assert egalitarian_cost(worked_example, men.matching) == 12
    assert women.matching.husbands() == (3, 1, 2)
    assert egalitarian_cost(worked_example, women.matching) == 11
    stable = enumerate_stable(worked_example)
    assert sorted(egalitarian_cost(worked_example, m) for m in stable) == [11, 12]
    assert [pc.cost for pc in pair_costs(worked_example, men.matching)] == [4, 3, 5]


def test_both_matchings_stable_in_small_example():
    assert find_blocking_pair(TWO_STABLE, Matching((1, 2))) is None
    assert find_blocking_pair(TWO_STABLE, Matching((2, 1))) is None
    assert len(enumerate_stable(TWO_STABLE)) == 2


def test_single_couple():
    p = PreferenceProfile(((1,),), ((1,),))
    assert find_blocking_pair(p, Matching((1,))) is None
    assert hell_couples_in(p, Matching((1,))) == [(1, 1)]
    assert gale_shapley(p).rounds == 1


def test_blocking_pair_is_lexicographically_first():
    p = PreferenceProfile(men=((1, 2), (1, 2)), women=((1, 2), (1, 2)))
    assert find_blocking_pair(p, Matching((2, 1))) == (1, 1)


def test_size_mismatch_rejected(worked_example):
    with pytest.raises(ProfileError):
        find_blocking_pair(worked_example, Matching((1, 2)))
    with pytest.raises(ProfileError):
        egalitarian_cost(worked_example, Matching((1, 2)))


def test_enumeration_cap():
    p = random_profile(MAX_ENUMERATE_N + 1, np.random.default_rng(0))
    with pytest.raises(ValueError):
        enumerate_stable(p)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_blocking_pair_agrees_with_definition(n):
    for p in itertools.islice(all_profiles(n), 0, None, 7):
        for m in all_matchings(n):
            naive = blocking_pairs_naive(p, m)
            assert find_blocking_pair(p, m) == (min(naive) if naive else None)


@given(profiles(max_n=8))
def test_gale_shapley_is_stable(p):
    for side in Side:
        trace = gale_shapley(p, side)
        assert is_stable(p, trace.matching)
        assert 1 <= trace.rounds <= p.n * p.n


@settings(max_examples=60)
@given(profiles(max_n=5))
def test_men_optimal_and_women_pessimal(p):
    stable = enumerate_stable(p)
    men = gale_shapley(p, Side.MEN).matching
    women = gale_shapley(p, Side.WOMEN).matching
    assert men in stable and women in stable
    for m in range(1, p.n + 1):
        assert p.man_rank(m, men.wife(m)) == min(p.man_rank(m, s.wife(m)) for s in stable)
        assert p.man_rank(m, women.wife(m)) == max(p.man_rank(m, s.wife(m)) for s in stable)
    for w in range(1, p.n + 1):
        assert p.woman_rank(w, men.husband(w)) == max(p.woman_rank(w, s.husband(w)) for s in stable)


@settings(max_examples=60)
@given(profiles(max_n=5))
def test_soulmates_and_hell_couples(p):
    stable = enumerate_stable(p)
    for s in stable:
        for m, w in soulmate_pairs(p):
            assert s.wife(m) == w
        assert len(hell_couples_in(p, s)) <= 1
    hells = {tuple(hell_couples_in(p, s)) for s in stable}
    assert len(hells) == 1


def test_no_stable_matching_of_cost_18():
    for p in all_profiles(3):
        for s in enumerate_stable(p):
            assert egalitarian_cost(p, s) < 18


def test_rounds_with_n_minus_1_soulmates():
    seen = 0
    for p in all_profiles(3):
        if count_soulmates(p) != 2:
            continue
        seen += 1
        paired = {m for m, _ in soulmate_pairs(p)}
        (m,) = set(range(1, 4)) - paired
        trace = gale_shapley(p, Side.MEN)
        assert trace.rounds == p.man_rank(m, trace.matching.wife(m))
    assert seen == 9216


def test_distinct_first_choices_finish_in_one_round():
    seen = 0
    for p in all_profiles(3):
        if men_first_choices_distinct(p):
            seen += 1
            assert gale_shapley(p, Side.MEN).rounds == 1
    assert seen == tastes_differ_profiles(3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_same_taste_takes_n_rounds(n, rng):
    men = tuple(rng.permutation(n) + 1)
    women = tuple(rng.permutation(n) + 1)
    p = PreferenceProfile((men,) * n, (women,) * n)
    for side in Side:
        trace = gale_shapley(p, side)
        assert trace.rounds == n
        assert egalitarian_cost(p, trace.matching) == n * (n + 1)
        ranks = sorted((p.man_rank(m, w), p.woman_rank(w, m)) for m, w in trace.matching.couples())
        assert ranks == [(i, i) for i in range(1, n + 1)]


@given(profiles(max_n=6))
def test_all_soulmates_cost_2n(p):
    if count_soulmates(p) == p.n:
        (s,) = enumerate_stable(p)
        assert egalitarian_cost(p, s) == 2 * p.n


def test_outcasts_that_rank_each_other_last_marry():
    # man 3 and woman 3 are ranked last by everyone and rank each other last
    p = PreferenceProfile(men=((1, 2, 3), (2, 1, 3), (1, 2, 3)),
                          women=((2, 1, 3), (1, 2, 3), (1, 2, 3)))
    for s in enumerate_stable(p):
        assert hell_couples_in(p, s) == [(3, 3)]

