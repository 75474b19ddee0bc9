"""Per-profile predicates for the profile families studied in the census.

These are straightforward scalar implementations; :mod:`stablematch.kernels`
computes the same quantities in bulk and is tested against this module.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .profile import PreferenceProfile


def count_soulmates(p: PreferenceProfile) -> int:
    """Number of man-woman pairs who rank each other first."""
    return _count_mutual(p, 1)


def count_hell_pairs(p: PreferenceProfile) -> int:
    """Number of man-woman pairs who rank each other last."""
    return _count_mutual(p, p.n)


def _count_mutual(p: PreferenceProfile, rank: int) -> int:
    n = p.n
    return sum(1 for m in range(1, n + 1) for w in range(1, n + 1)
               if p.man_rank(m, w) == rank and p.woman_rank(w, m) == rank)


def soulmate_pairs(p: PreferenceProfile) -> list[tuple[int, int]]:
    n = p.n
    return [(m, w) for m in range(1, n + 1) for w in range(1, n + 1)
            if p.man_rank(m, w) == 1 and p.woman_rank(w, m) == 1]


def find_outcasts(p: PreferenceProfile) -> list[tuple[int, int]]:
    """Pairs (m, w) where every other woman ranks m last and every other man ranks w last.

    The pair's own mutual ranks are unconstrained.
    """
    n = p.n
    out = []
    for m in range(1, n + 1):
        for w in range(1, n + 1):
            if all(p.woman_rank(w2, m) == n for w2 in range(1, n + 1) if w2 != w) and \
               all(p.man_rank(m2, w) == n for m2 in range(1, n + 1) if m2 != m):
                out.append((m, w))
    return out


def has_outcast_hell_pair(p: PreferenceProfile) -> bool:
    """An outcast pair who also rank each other last, i.e. everyone ranks them last."""
    n = p.n
    return any(p.man_rank(m, w) == n and p.woman_rank(w, m) == n
               for m, w in find_outcasts(p))


def has_homecoming_queen(p: PreferenceProfile) -> bool:
    """Some woman is ranked first by every man."""
    firsts = {row.index(1) for row in p.men}
    return len(firsts) == 1


def has_homecoming_king(p: PreferenceProfile) -> bool:
    return has_homecoming_queen(p.swap_sides())


def men_same_taste(p: PreferenceProfile) -> bool:
    return len(set(p.men)) == 1


def women_same_taste(p: PreferenceProfile) -> bool:
    return len(set(p.women)) == 1


def men_first_choices_distinct(p: PreferenceProfile) -> bool:
    return len({row.index(1) for row in p.men}) == p.n


def women_first_choices_distinct(p: PreferenceProfile) -> bool:
    return men_first_choices_distinct(p.swap_sides())


def _is_latin(rows) -> bool:
    # Rows are permutations already; a repeated rank within a column breaks it.
    n = len(rows)
    return all(len({row[j] for row in rows}) == n for j in range(n))


def men_latin(p: PreferenceProfile) -> bool:
    """For every k, the women ranked k by the men are all different."""
    return _is_latin(p.men)


def women_latin(p: PreferenceProfile) -> bool:
    return _is_latin(p.women)


def is_latin_profile(p: PreferenceProfile) -> bool:
    """Every man-woman pair has pairwise egalitarian cost n + 1."""
    n = p.n
    return all(p.man_rank(m, w) + p.woman_rank(w, m) == n + 1
               for m in range(1, n + 1) for w in range(1, n + 1))


def mutual_rankings(p: PreferenceProfile) -> list[tuple[int, int]]:
    """(man's rank of woman, woman's rank of man) for all n^2 pairs."""
    n = p.n
    return [(p.man_rank(m, w), p.woman_rank(w, m))
            for m in range(1, n + 1) for w in range(1, n + 1)]


def is_disjoint(p: PreferenceProfile) -> bool:
    """Each cell (i, j) of {1..n}^2 occurs exactly once as a mutual ranking."""
    cells = mutual_rankings(p)
    return len(set(cells)) == len(cells)


def key_function(p: PreferenceProfile) -> dict[int, int] | None:
    """The map i -> j if every mutual ranking with man's rank i has woman's rank j.

    Returns None when no such map exists, i.e. the profile is not joint.
    """
    key: dict[int, int] = {}
    for i, j in mutual_rankings(p):
        if key.setdefault(i, j) != j:
            return None
    if sorted(key.values()) != list(range(1, p.n + 1)):
        return None
    return key


def is_joint(p: PreferenceProfile) -> bool:
    return key_function(p) is not None


def dominance(p: PreferenceProfile, a: int, b: int, side: str = "men") -> bool:
    """True if every person on ``side`` ranks ``a`` strictly above ``b``.

    With side="men", a and b are women; with side="women" they are men.
    """
    if a == b:
        raise ValueError("dominance needs two different people")
    if side not in ("men", "women"):
        raise ValueError(f"side must be 'men' or 'women', not {side!r}")
    rows = p.men if side == "men" else p.women
    return all(row[a - 1] < row[b - 1] for row in rows)


@dataclass(frozen=True)
class ProfileStats:
    soulmate_pairs: int
    hell_pairs: int
    has_homecoming_queen: bool
    has_homecoming_king: bool
    men_first_choices_distinct: bool
    men_same_taste: bool
    men_latin: bool
    women_latin: bool
    is_latin_profile: bool
    is_disjoint: bool
    is_joint: bool
    outcast_pairs: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["outcast_pairs"] = [list(pair) for pair in self.outcast_pairs]
        return d


def profile_stats(p: PreferenceProfile) -> ProfileStats:
    return ProfileStats(
        soulmate_pairs=count_soulmates(p),
        hell_pairs=count_hell_pairs(p),
        has_homecoming_queen=has_homecoming_queen(p),
        has_homecoming_king=has_homecoming_king(p),
        men_first_choices_distinct=men_first_choices_distinct(p),
        men_same_taste=men_same_taste(p),
        men_latin=men_latin(p),
        women_latin=women_latin(p),
        is_latin_profile=is_latin_profile(p),
        is_disjoint=is_disjoint(p),
        is_joint=is_joint(p),
        outcast_pairs=tuple(find_outcasts(p)),
    )
