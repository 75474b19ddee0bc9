"""Preference profiles: validation, integer indexing and the text format.

A profile stores *ratings*: ``men[i][j]`` is the rank (1 = favourite) that
man ``i + 1`` gives woman ``j + 1``, and ``women[i][j]`` is the rank woman
``i + 1`` gives man ``j + 1``.  People and ranks are 1-based at the API
boundary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np


class ProfileError(ValueError):
    """Raised for rows that are not permutations, bad sizes or bad text."""


def _check_ranking(row: Sequence[int], n: int, what: str) -> tuple[int, ...]:
    row = tuple(int(r) for r in row)
    if len(row) != n:
        raise ProfileError(f"{what}: expected {n} entries, got {len(row)}")
    if sorted(row) != list(range(1, n + 1)):
        raise ProfileError(f"{what} is not a permutation of 1..{n}: {list(row)}")
    return row


@dataclass(frozen=True)
class PreferenceProfile:
    men: tuple[tuple[int, ...], ...]
    women: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.men)
        if n == 0:
            raise ProfileError("profile must have at least one man")
        if len(self.women) != n:
            raise ProfileError(f"{n} men but {len(self.women)} women")
        men = tuple(_check_ranking(r, n, f"man {i + 1} (row {i + 1})")
                    for i, r in enumerate(self.men))
        women = tuple(_check_ranking(r, n, f"woman {i + 1} (row {n + i + 1})")
                      for i, r in enumerate(self.women))
        object.__setattr__(self, "men", men)
        object.__setattr__(self, "women", women)

    @property
    def n(self) -> int:
        return len(self.men)

    def man_rank(self, man: int, woman: int) -> int:
        """Rank man ``man`` gives woman ``woman`` (both 1-based)."""
        return self.men[man - 1][woman - 1]

    def woman_rank(self, woman: int, man: int) -> int:
        return self.women[woman - 1][man - 1]

    def men_order(self, man: int) -> tuple[int, ...]:
        """Women in man's order of preference, favourite first."""
        return choice_order(self.men[man - 1])

    def women_order(self, woman: int) -> tuple[int, ...]:
        return choice_order(self.women[woman - 1])

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based rank arrays ``(men, women)`` of shape ``(n, n)``."""
        m = np.asarray(self.men, dtype=np.int8) - 1
        w = np.asarray(self.women, dtype=np.int8) - 1
        return m, w

    def swap_sides(self) -> "PreferenceProfile":
        return PreferenceProfile(self.women, self.men)

    def __str__(self) -> str:
        return format_profile(self)


def choice_order(ratings: Sequence[int]) -> tuple[int, ...]:
    """Convert a rating row into the list of people by preference (1-based)."""
    order = [0] * len(ratings)
    for person, rank in enumerate(ratings, start=1):
        order[rank - 1] = person
    return tuple(order)


def ratings_from_order(order: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`choice_order`."""
    return choice_order(order)


# -- permutation ranking ----------------------------------------------------

def perm_rank(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of 1..n via its Lehmer code."""
    n = len(perm)
    rank = 0
    for i, v in enumerate(perm):
        smaller = sum(1 for u in perm[i + 1:] if u < v)
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def perm_unrank(rank: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`perm_rank`."""
    if not 0 <= rank < math.factorial(n):
        raise ValueError(f"permutation rank {rank} out of range for n={n}")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n - 1, -1, -1):
        d, rank = divmod(rank, math.factorial(i))
        out.append(pool.pop(d))
    return tuple(out)


@lru_cache(maxsize=None)
def permutation_table(n: int) -> np.ndarray:
    """All permutations of 0..n-1 in lexicographic order, shape ``(n!, n)``.

    Row ``r`` is ``perm_unrank(r, n)`` shifted to 0-based.  Read-only.
    """
    t = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    t = t.reshape(math.factorial(n), n)
    t.setflags(write=False)
    return t


# -- indexing ---------------------------------------------------------------

def index_space_size(n: int) -> int:
    return math.factorial(n) ** (2 * n)


def encode(profile: PreferenceProfile) -> int:
    """Mixed-radix index of a profile; man 1's row is the most significant digit."""
    base = math.factorial(profile.n)
    value = 0
    for row in profile.men + profile.women:
        value = value * base + perm_rank(row)
    return value


def decode(index: int, n: int) -> PreferenceProfile:
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= index < index_space_size(n):
        raise ValueError(f"index {index} out of range [0, {index_space_size(n)}) for n={n}")
    base = math.factorial(n)
    digits = []
    for _ in range(2 * n):
        index, d = divmod(index, base)
        digits.append(d)
    rows = [perm_unrank(d, n) for d in reversed(digits)]
    return PreferenceProfile(tuple(rows[:n]), tuple(rows[n:]))


def all_profiles(n: int) -> Iterator[PreferenceProfile]:
    """Every profile of size ``n`` in index order.  Only sensible for n <= 3."""
    perms = list(itertools.permutations(range(1, n + 1)))
    for rows in itertools.product(perms, repeat=2 * n):
        yield PreferenceProfile(rows[:n], rows[n:])


def random_profile(n: int, rng: np.random.Generator) -> PreferenceProfile:
    men = tuple(tuple(int(x) + 1 for x in rng.permutation(n)) for _ in range(n))
    women = tuple(tuple(int(x) + 1 for x in rng.permutation(n)) for _ in range(n))
    return PreferenceProfile(men, women)


def complement(profile: PreferenceProfile) -> PreferenceProfile:
    """Replace every rank r with n + 1 - r; swaps soulmates and hell-pairs."""
    k = profile.n + 1
    flip = lambda rows: tuple(tuple(k - r for r in row) for row in rows)
    return PreferenceProfile(flip(profile.men), flip(profile.women))


# -- text format ------------------------------------------------------------

def parse_profile(text: str | bytes) -> PreferenceProfile:
    """Parse the plain text profile format.

    2n lines of n space-separated ranks: the men's rows, then the women's.
    Blank lines and ``#`` comments are skipped; n comes from the first row.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[tuple[int, list[int]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            vals = [int(tok) for tok in s.split()]
        except ValueError:
            raise ProfileError(f"line {lineno}: expected integers, got {s!r}") from None
        rows.append((lineno, vals))
    if not rows:
        raise ProfileError("no data lines")
    n = len(rows[0][1])
    for lineno, vals in rows:
        if len(vals) != n:
            raise ProfileError(f"line {lineno}: expected {n} entries, got {len(vals)}")
        if sorted(vals) != list(range(1, n + 1)):
            raise ProfileError(f"line {lineno}: row {vals} is not a permutation of 1..{n}")
    if len(rows) != 2 * n:
        raise ProfileError(f"expected {2 * n} rows for n={n}, got {len(rows)}")
    data = [tuple(v) for _, v in rows]
    return PreferenceProfile(tuple(data[:n]), tuple(data[n:]))


def format_profile(profile: PreferenceProfile) -> str:
    lines = [" ".join(map(str, row)) for row in profile.men + profile.women]
    return "\n".join(lines) + "\n"


def profile_from_rows(men: Iterable[Sequence[int]], women: Iterable[Sequence[int]]) -> PreferenceProfile:
    return PreferenceProfile(tuple(map(tuple, men)), tuple(map(tuple, women)))
