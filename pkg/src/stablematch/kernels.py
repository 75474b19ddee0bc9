"""Vectorised per-profile statistics over a batch of profiles.

A batch is a pair of int8 arrays ``men[b, m, w]`` and ``women[b, w, m]``
holding 0-based ranks.  Every property is computed lazily and cached, so a
census pays only for the statistics it asks for.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from math import factorial

import numpy as np

from .profile import permutation_table


@lru_cache(maxsize=None)
def _matchings(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All matchings (man -> woman, 0-based) and their inverses, lexicographic."""
    wives = permutation_table(n).astype(np.intp)
    husbands = np.argsort(wives, axis=1)
    return wives, husbands


class Batch:
    def __init__(self, men: np.ndarray, women: np.ndarray):
        if men.shape != women.shape or men.ndim != 3 or men.shape[1] != men.shape[2]:
            raise ValueError(f"bad batch shapes {men.shape} / {women.shape}")
        self.men = men
        self.women = women
        self.size = men.shape[0]
        self.n = men.shape[1]

    @classmethod
    def from_profiles(cls, profiles) -> "Batch":
        men = np.stack([p.arrays()[0] for p in profiles])
        women = np.stack([p.arrays()[1] for p in profiles])
        return cls(men, women)

    @cached_property
    def women_t(self) -> np.ndarray:
        """``women_t[b, m, w]`` = rank woman w gives man m."""
        return self.women.transpose(0, 2, 1)

    # -- pair-level features ------------------------------------------------

    @cached_property
    def soulmates(self) -> np.ndarray:
        return ((self.men == 0) & (self.women_t == 0)).sum(axis=(1, 2))

    @cached_property
    def hell_pairs(self) -> np.ndarray:
        last = self.n - 1
        return ((self.men == last) & (self.women_t == last)).sum(axis=(1, 2))

    @cached_property
    def _outcast_mask(self) -> np.ndarray:
        last = self.n - 1
        ranked_last_by_women = self.women_t == last            # [b, m, w]
        ranked_last_by_men = self.men == last                  # [b, m, w]
        per_man = ranked_last_by_women.sum(axis=2, keepdims=True)
        per_woman = ranked_last_by_men.sum(axis=1, keepdims=True)
        # Everyone except the partner in the candidate pair must rank them last.
        return ((per_man - ranked_last_by_women) == last) & ((per_woman - ranked_last_by_men) == last)

    @cached_property
    def outcasts(self) -> np.ndarray:
        return self._outcast_mask.sum(axis=(1, 2))

    @cached_property
    def outcast_hell(self) -> np.ndarray:
        last = self.n - 1
        hell = (self.men == last) & (self.women_t == last)
        return (self._outcast_mask & hell).any(axis=(1, 2))

    # -- family predicates --------------------------------------------------

    def _first_choices(self, ranks: np.ndarray) -> np.ndarray:
        return np.argmin(ranks, axis=2)

    @cached_property
    def homecoming_queen(self) -> np.ndarray:
        fc = self._first_choices(self.men)
        return (fc == fc[:, :1]).all(axis=1)

    @cached_property
    def homecoming_king(self) -> np.ndarray:
        fc = self._first_choices(self.women)
        return (fc == fc[:, :1]).all(axis=1)

    @cached_property
    def men_same_taste(self) -> np.ndarray:
        return (self.men == self.men[:, :1, :]).all(axis=(1, 2))

    @cached_property
    def women_same_taste(self) -> np.ndarray:
        return (self.women == self.women[:, :1, :]).all(axis=(1, 2))

    @staticmethod
    def _distinct_along(a: np.ndarray, axis: int) -> np.ndarray:
        s = np.sort(a, axis=axis)
        d = np.diff(s, axis=axis)
        return (d != 0).all(axis=axis)

    @cached_property
    def men_first_distinct(self) -> np.ndarray:
        return self._distinct_along(self._first_choices(self.men), 1)

    @cached_property
    def women_first_distinct(self) -> np.ndarray:
        return self._distinct_along(self._first_choices(self.women), 1)

    @cached_property
    def men_latin(self) -> np.ndarray:
        return self._distinct_along(self.men, 1).all(axis=1)

    @cached_property
    def women_latin(self) -> np.ndarray:
        return self._distinct_along(self.women, 1).all(axis=1)

    @cached_property
    def latin_profile(self) -> np.ndarray:
        return ((self.men + self.women_t) == self.n - 1).all(axis=(1, 2))

    @cached_property
    def _cells(self) -> np.ndarray:
        # Mutual ranking (i, j) of each pair flattened to i * n + j.
        return (self.men.astype(np.int16) * self.n + self.women_t).reshape(self.size, -1)

    @cached_property
    def disjoint(self) -> np.ndarray:
        return self._distinct_along(self._cells, 1)

    @cached_property
    def joint(self) -> np.ndarray:
        # The woman's rank must be a function of the man's rank; because every
        # woman's row is a permutation, that function is then a bijection.
        n = self.n
        m = self.men.reshape(self.size, -1)
        w = self.women_t.reshape(self.size, -1)
        ok = np.ones(self.size, dtype=bool)
        for i in range(n):
            sel = m == i
            vals = np.where(sel, w, -1)
            hi = vals.max(axis=1)
            lo = np.where(sel, w, n).min(axis=1)
            ok &= hi == lo
        return ok

    def dominance_men(self, a: int = 0, b: int = 1) -> np.ndarray:
        return (self.men[:, :, a] < self.men[:, :, b]).all(axis=1)

    def dominance_women(self, a: int = 0, b: int = 1) -> np.ndarray:
        return (self.women[:, :, a] < self.women[:, :, b]).all(axis=1)

    # -- matchings -----------------------------------------------------------
    #
    # Every row of a profile is one of the n! permutations, so the per-matching
    # work is done with small lookup tables indexed by row id instead of with
    # reductions over tiny axes.

    @cached_property
    def men_ids(self) -> np.ndarray:
        """Lexicographic permutation index of every man's rating row, ``[b, m]``."""
        return _row_ids(self.men)

    @cached_property
    def women_ids(self) -> np.ndarray:
        return _row_ids(self.women)

    @cached_property
    def stable(self) -> np.ndarray:
        """``stable[b, s]``: is matching s (lexicographic index) stable for profile b."""
        n = self.n
        wives, husbands = _matchings(n)
        men_t, women_t = _better_tables(n)
        mid = [self.men_ids[:, m] for m in range(n)]
        wid = [self.women_ids[:, w] for w in range(n)]
        out = np.empty((self.size, len(wives)), dtype=bool)
        for s in range(len(wives)):
            # Blocking pairs are the bits set in both masks.
            mb = men_t[0, wives[s, 0]][mid[0]]
            wb = women_t[0, husbands[s, 0]][wid[0]]
            for k in range(1, n):
                mb = mb | men_t[k, wives[s, k]][mid[k]]
                wb = wb | women_t[k, husbands[s, k]][wid[k]]
            out[:, s] = (mb & wb) == 0
        return out

    @cached_property
    def stable_count(self) -> np.ndarray:
        return self.stable.sum(axis=1)

    @cached_property
    def _couple_ranks(self) -> tuple[np.ndarray, np.ndarray]:
        """Rank each spouse gives the other, for every matching: two ``[b, s, m]`` arrays."""
        wives, _ = _matchings(self.n)
        ar = np.arange(self.n)
        by_man = self.men[:, ar[None, :], wives]
        by_woman = self.women_t[:, ar[None, :], wives]
        return by_man, by_woman

    @cached_property
    def matching_costs(self) -> np.ndarray:
        """Egalitarian cost (1-based ranks) of every matching, ``[b, s]``."""
        by_man, by_woman = self._couple_ranks
        return by_man.sum(axis=2, dtype=np.int16) + by_woman.sum(axis=2, dtype=np.int16) + 2 * self.n

    @cached_property
    def matching_has_hell_couple(self) -> np.ndarray:
        last = self.n - 1
        by_man, by_woman = self._couple_ranks
        return ((by_man == last) & (by_woman == last)).any(axis=2)

    @cached_property
    def stable_hell(self) -> np.ndarray:
        """Number of stable matchings containing a hell-couple, per profile."""
        return (self.stable & self.matching_has_hell_couple).sum(axis=1)


@lru_cache(maxsize=None)
def _code_lookup(n: int) -> np.ndarray:
    # base-n code of a row -> its permutation index (-1 for non-permutations)
    perms = permutation_table(n).astype(np.int64)
    codes = perms @ (n ** np.arange(n, dtype=np.int64))
    lut = np.full(n ** n, -1, dtype=np.int32)
    lut[codes] = np.arange(len(perms), dtype=np.int32)
    return lut


def _row_ids(rows: np.ndarray) -> np.ndarray:
    n = rows.shape[-1]
    codes = rows.astype(np.int64) @ (n ** np.arange(n, dtype=np.int64))
    return _code_lookup(n)[codes]


@lru_cache(maxsize=None)
def _better_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Bitmask tables for the blocking-pair test.

    Pair (m, w) is bit ``m * n + w``.  ``men[m, j, p]`` sets the bits (m, w)
    of every woman w that a man with row p prefers to woman j;
    ``women[w, i, q]`` sets the bits (m, w) of every man m that a woman with
    row q prefers to man i.
    """
    dtype = np.uint64 if n * n > 32 else (np.uint32 if n * n > 16 else np.uint16)
    perms = permutation_table(n)
    P = len(perms)
    men = np.zeros((n, n, P), dtype=dtype)
    women = np.zeros((n, n, P), dtype=dtype)
    for p, row in enumerate(perms.tolist()):
        for j in range(n):
            better = [x for x in range(n) if row[x] < row[j]]
            for k in range(n):
                men[k, j, p] = sum(1 << (k * n + x) for x in better)
                women[k, j, p] = sum(1 << (x * n + k) for x in better)
    men.setflags(write=False)
    women.setflags(write=False)
    return men, women


def cost_range(n: int) -> tuple[int, int]:
    return 2 * n, 2 * n * n


def n_matchings(n: int) -> int:
    return factorial(n)
