import numpy as np
import pytest

from stablematch import classify as C
from stablematch.kernels import Batch, _better_tables, cost_range, n_matchings
from stablematch.matching import (all_matchings, egalitarian_cost, enumerate_stable,
                                  hell_couples_in)
from stablematch.profile import all_profiles, perm_rank, random_profile


def sample(n, count, seed=1):
    if n <= 2:
        return list(all_profiles(n))
    rng = np.random.default_rng(seed)
    return [random_profile(n, rng) for _ in range(count)]


CASES = [(1, 1), (2, 16), (3, 400), (4, 120), (5, 25)]


@pytest.mark.parametrize("n, count", CASES)
def test_pair_features_agree_with_scalar_code(n, count):
    profiles = sample(n, count)
    b = Batch.from_profiles(profiles)
    checks = {
        "soulmates": C.count_soulmates,
        "hell_pairs": C.count_hell_pairs,
        "outcasts": lambda p: len(C.find_outcasts(p)),
        "outcast_hell": C.has_outcast_hell_pair,
        "homecoming_queen": C.has_homecoming_queen,
        "homecoming_king": C.has_homecoming_king,
        "men_same_taste": C.men_same_taste,
        "women_same_taste": C.women_same_taste,
        "men_first_distinct": C.men_first_choices_distinct,
        "women_first_distinct": C.women_first_choices_distinct,
        "men_latin": C.men_latin,
        "women_latin": C.women_latin,
        "latin_profile": C.is_latin_profile,
        "disjoint": C.is_disjoint,
        "joint": C.is_joint,
    }
    for name, fn in checks.items():
        assert getattr(b, name).tolist() == [fn(p) for p in profiles], name
    if n >= 2:
        assert b.dominance_men().tolist() == [C.dominance(p, 1, 2) for p in profiles]
        assert b.dominance_women(1, 0).tolist() == [C.dominance(p, 2, 1, "women") for p in profiles]


def test_families_agree_on_structured_profiles():
    # Random profiles almost never land in the small families; walk all of n = 3 in steps.
    profiles = [p for i, p in enumerate(all_profiles(3)) if i % 13 == 0]
    b = Batch.from_profiles(profiles)
    assert b.men_latin.tolist() == [C.men_latin(p) for p in profiles]
    assert b.joint.tolist() == [C.is_joint(p) for p in profiles]
    assert b.disjoint.tolist() == [C.is_disjoint(p) for p in profiles]
    assert b.outcasts.tolist() == [len(C.find_outcasts(p)) for p in profiles]


@pytest.mark.parametrize("n, count", CASES[:4])
def test_stability_and_costs_agree_with_brute_force(n, count):
    profiles = sample(n, count, seed=2)
    b = Batch.from_profiles(profiles)
    matchings = list(all_matchings(n))
    assert b.stable.shape == (len(profiles), n_matchings(n))
    for i, p in enumerate(profiles):
        stable = set(enumerate_stable(p))
        assert [m in stable for m in matchings] == b.stable[i].tolist()
        assert b.stable_count[i] == len(stable)
        assert b.matching_costs[i].tolist() == [egalitarian_cost(p, m) for m in matchings]
        assert b.matching_has_hell_couple[i].tolist() == [bool(hell_couples_in(p, m)) for m in matchings]
        assert b.stable_hell[i] == sum(bool(hell_couples_in(p, m)) for m in stable)


def test_row_ids_match_permutation_ranks():
    profiles = sample(4, 30)
    b = Batch.from_profiles(profiles)
    for i, p in enumerate(profiles):
        assert b.men_ids[i].tolist() == [perm_rank(r) for r in p.men]
        assert b.women_ids[i].tolist() == [perm_rank(r) for r in p.women]


def test_better_tables_small_case():
    men, women = _better_tables(2)
    # a man holding row [1, 2] (perm 0) matched to woman 2 prefers woman 1
    assert men[0, 1, 0] == 1 << 0
    assert men[0, 0, 0] == 0
    # woman 1 holding row [2, 1] (perm 1) matched to man 1 prefers man 2: bit (1, 0)
    assert women[0, 0, 1] == 1 << 2
    assert not men.flags.writeable


def test_shape_validation_and_helpers():
    with pytest.raises(ValueError):
        Batch(np.zeros((2, 3, 3), np.int8), np.zeros((2, 2, 2), np.int8))
    assert cost_range(3) == (6, 18)
    assert n_matchings(4) == 24
