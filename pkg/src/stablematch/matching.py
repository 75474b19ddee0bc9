"""Gale-Shapley, blocking pairs, brute-force stable matchings, egalitarian cost."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .profile import PreferenceProfile, ProfileError, choice_order

MAX_ENUMERATE_N = 6


class Side(str, Enum):
    MEN = "men"
    WOMEN = "women"


@dataclass(frozen=True)
class Matching:
    """Perfect matching; ``pairs[i]`` is the (1-based) wife of man ``i + 1``."""

    pairs: tuple[int, ...]

    def __post_init__(self):
        pairs = tuple(int(w) for w in self.pairs)
        if sorted(pairs) != list(range(1, len(pairs) + 1)):
            raise ProfileError(f"matching {list(pairs)} is not a permutation")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def couples(self) -> list[tuple[int, int]]:
        return [(m, w) for m, w in enumerate(self.pairs, start=1)]

    def husbands(self) -> tuple[int, ...]:
        """Woman-indexed view: entry j is the husband of woman ``j + 1``."""
        out = [0] * self.n
        for m, w in enumerate(self.pairs, start=1):
            out[w - 1] = m
        return tuple(out)

    def wife(self, man: int) -> int:
        return self.pairs[man - 1]

    def husband(self, woman: int) -> int:
        return self.husbands()[woman - 1]


@dataclass(frozen=True)
class GsTrace:
    matching: Matching
    rounds: int
    side: Side


@dataclass(frozen=True)
class PairCost:
    man: int
    woman: int
    cost: int


def _check_sizes(profile: PreferenceProfile, matching: Matching):
    if matching.n != profile.n:
        raise ProfileError(f"matching has {matching.n} couples but profile has n={profile.n}")


def gale_shapley(profile: PreferenceProfile, side: Side | str = Side.MEN) -> GsTrace:
    """Deferred acceptance with synchronous rounds.

    In each round every free proposer asks the best partner not yet asked;
    every receiver then keeps the best suitor seen so far.
    """
    side = Side(side)
    proposers, receivers = profile.men, profile.women
    if side is Side.WOMEN:
        proposers, receivers = receivers, proposers
    n = profile.n
    orders = [[p - 1 for p in choice_order(row)] for row in proposers]
    next_choice = [0] * n
    holder = [-1] * n          # receiver -> proposer currently held
    free = list(range(n))
    rounds = 0
    while free:
        rounds += 1
        for p in free:
            r = orders[p][next_choice[p]]
            next_choice[p] += 1
            cur = holder[r]
            if cur < 0 or receivers[r][p] < receivers[r][cur]:
                holder[r] = p
        engaged = set(holder)
        free = [p for p in range(n) if p not in engaged]

    partner = [0] * n
    for r, p in enumerate(holder):
        partner[p] = r + 1
    if side is Side.MEN:
        matching = Matching(tuple(partner))
    else:
        # partner[w] is the husband of woman w; flip to the man-indexed form.
        wives = [0] * n
        for w, m in enumerate(partner, start=1):
            wives[m - 1] = w
        matching = Matching(tuple(wives))
    return GsTrace(matching, rounds, side)


def find_blocking_pair(profile: PreferenceProfile, matching: Matching) -> Optional[tuple[int, int]]:
    """Lexicographically smallest blocking pair ``(man, woman)``, or None if stable."""
    _check_sizes(profile, matching)
    n = profile.n
    wives = matching.pairs
    husbands = matching.husbands()
    for m in range(1, n + 1):
        mrow = profile.men[m - 1]
        current = mrow[wives[m - 1] - 1]
        for w in range(1, n + 1):
            if mrow[w - 1] >= current:
                continue
            wrow = profile.women[w - 1]
            if wrow[m - 1] < wrow[husbands[w - 1] - 1]:
                return (m, w)
    return None


def is_stable(profile: PreferenceProfile, matching: Matching) -> bool:
    return find_blocking_pair(profile, matching) is None


def all_matchings(n: int):
    for perm in itertools.permutations(range(1, n + 1)):
        yield Matching(perm)


def enumerate_stable(profile: PreferenceProfile) -> list[Matching]:
    """All stable matchings, found by testing each of the n! matchings.

    Returned in lexicographic order of ``pairs``.
    """
    if profile.n > MAX_ENUMERATE_N:
        raise ValueError(f"brute-force enumeration is capped at n <= {MAX_ENUMERATE_N}")
    return [m for m in all_matchings(profile.n) if is_stable(profile, m)]


def pair_costs(profile: PreferenceProfile, matching: Matching) -> list[PairCost]:
    _check_sizes(profile, matching)
    return [PairCost(m, w, profile.man_rank(m, w) + profile.woman_rank(w, m))
            for m, w in matching.couples()]


def egalitarian_cost(profile: PreferenceProfile, matching: Matching) -> int:
    return sum(pc.cost for pc in pair_costs(profile, matching))


def hell_couples_in(profile: PreferenceProfile, matching: Matching) -> list[tuple[int, int]]:
    """Married couples who rank each other last."""
    _check_sizes(profile, matching)
    n = profile.n
    return [(m, w) for m, w in matching.couples()
            if profile.man_rank(m, w) == n and profile.woman_rank(w, m) == n]
