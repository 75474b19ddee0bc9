"""Exact counting formulas for families of preference profiles.

Everything returns a Python ``int``; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Callable

MAX_N = 20

# Number of Latin squares of order n (OEIS A002860), n = 1..7.
LATIN_SQUARES = {
    1: 1,
    2: 2,
    3: 12,
    4: 576,
    5: 161280,
    6: 812851200,
    7: 61479419904000,
}


class FormulaDomainError(ValueError):
    """The formula is not defined for the requested arguments."""


def _check_n(n: int, lo: int = 1, cap: int = MAX_N):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < lo:
        raise FormulaDomainError(f"n must be >= {lo}, got {n}")
    if n > cap:
        raise FormulaDomainError(f"n={n} exceeds the cap of {cap}")


def _check_k(k: int, n: int):
    if not 0 <= k <= n:
        raise FormulaDomainError(f"need 0 <= k <= n, got k={k}, n={n}")


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


def latin_squares(n: int) -> int:
    """L_n, from the stored table."""
    if n not in LATIN_SQUARES:
        raise FormulaDomainError(f"Latin square count only stored for 1 <= n <= 7, got {n}")
    return LATIN_SQUARES[n]


@lru_cache(maxsize=None)
def derangements(i: int) -> int:
    """D_i via D_i = (i - 1)(D_{i-1} + D_{i-2})."""
    if i < 0:
        raise FormulaDomainError("derangements need i >= 0")
    if i == 0:
        return 1
    if i == 1:
        return 0
    return (i - 1) * (derangements(i - 1) + derangements(i - 2))


def total_profiles(n: int) -> int:
    _check_n(n)
    return factorial(n) ** (2 * n)


def homecoming_queen_profiles(n: int) -> int:
    """Profiles where all men rank the same woman first."""
    _check_n(n)
    return n * factorial(n - 1) ** n * factorial(n) ** n


def homecoming_queen_men(n: int) -> int:
    """Men's preference matrices where all men rank the same woman first."""
    _check_n(n)
    return n * factorial(n - 1) ** n


def homecoming_fixed_queen_men(n: int) -> int:
    """Men's matrices where every man ranks woman 1 first."""
    _check_n(n)
    return factorial(n - 1) ** n


def homecoming_both(n: int) -> int:
    """Profiles with both a homecoming queen and a homecoming king."""
    return homecoming_queen_men(n) ** 2


def dominance_profiles(n: int) -> int:
    """Profiles where every man ranks woman 1 above woman 2 (n > 1)."""
    _check_n(n, lo=2)
    return _exact_div(factorial(n) ** (2 * n), 2 ** n)


def dominance_men(n: int) -> int:
    _check_n(n, lo=2)
    return _exact_div(factorial(n) ** n, 2 ** n)


def dominance_both_sides(n: int) -> int:
    """Men rank woman 1 above woman 2 and women rank man 1 above man 2."""
    _check_n(n, lo=2)
    return _exact_div(factorial(n) ** (2 * n), 4 ** n)


def same_taste_profiles(n: int) -> int:
    """All men rank the women in the same order; women unrestricted."""
    _check_n(n)
    return factorial(n) ** (n + 1)


def same_taste_both(n: int) -> int:
    _check_n(n)
    return factorial(n) ** 2


def tastes_differ_profiles(n: int) -> int:
    """All men have different first choices; women unrestricted."""
    _check_n(n)
    return factorial(n) ** (n + 1) * factorial(n - 1) ** n


def tastes_differ_men_only(n: int) -> int:
    _check_n(n)
    return factorial(n) * factorial(n - 1) ** n


def tastes_differ_both(n: int) -> int:
    _check_n(n)
    return factorial(n) ** 2 * factorial(n - 1) ** (2 * n)


def latin_men_profiles(n: int) -> int:
    """Men's matrix is a Latin square; women unrestricted."""
    _check_n(n)
    return factorial(n) ** n * latin_squares(n)


def mutually_latin_profiles(n: int) -> int:
    _check_n(n)
    return latin_squares(n) ** 2


def latin_profiles(n: int) -> int:
    """Every pair has egalitarian cost n + 1; the women's matrix is forced."""
    _check_n(n)
    return latin_squares(n)


def joint_profiles(n: int) -> int:
    _check_n(n)
    return latin_squares(n) * factorial(n)


def soulmate_free_completions(k: int, n: int) -> int:
    """S(k, n): completions of the n - k unpaired men and women with no soulmates.

    Inclusion-exclusion over the number i of forced soulmate pairs.
    """
    _check_n(n)
    _check_k(k, n)
    f, g = factorial(n), factorial(n - 1)
    r = n - k
    return sum((-1) ** i * comb(r, i) ** 2 * g ** (2 * i) * factorial(i) * f ** (2 * r - 2 * i)
               for i in range(r + 1))


def soulmate_profiles(k: int, n: int) -> int:
    """F(k, n): profiles with exactly k soulmate pairs."""
    _check_n(n)
    _check_k(k, n)
    return comb(n, k) ** 2 * factorial(k) * factorial(n - 1) ** (2 * k) * soulmate_free_completions(k, n)


def latin_men_soulmates(n: int, k: int) -> int:
    """Profiles with a Latin men's matrix and exactly k soulmate pairs."""
    _check_n(n)
    _check_k(k, n)
    return latin_squares(n) * comb(n, k) * (n - 1) ** (n - k) * factorial(n - 1) ** n


def mutually_latin_soulmates(n: int, k: int) -> int:
    """Mutually-Latin profiles with exactly k soulmate pairs."""
    _check_n(n)
    _check_k(k, n)
    L = latin_squares(n)
    return _exact_div(L * L, factorial(n)) * comb(n, k) * derangements(n - k)


def outcast_profiles(n: int) -> int:
    """Profiles with at least one outcast pair."""
    _check_n(n)
    if n == 2:
        # Two outcast pairs are possible and 2 profiles get counted twice.
        return 14
    return n ** 4 * factorial(n - 1) ** (2 * n)


def outcast_hell_profiles(n: int) -> int:
    """Profiles with a pair ranked last by everybody, each other included."""
    _check_n(n)
    return n ** 2 * factorial(n - 1) ** (2 * n)


def men_profiles_up_to_relabeling(n: int) -> int:
    """n-multisets of permutations of n elements."""
    _check_n(n)
    return comb(factorial(n) + n - 1, n)


def disjoint_profile_bounds(n: int) -> tuple[int, int]:
    """(upper bound, divisor) for the number of disjoint profiles."""
    _check_n(n)
    return factorial(n * n), factorial(n) ** 2


@dataclass(frozen=True)
class FormulaInfo:
    name: str
    func: Callable[..., int]
    takes_k: bool
    oeis: str
    description: str

    def __call__(self, n: int, k: int | None = None) -> int:
        if self.takes_k:
            if k is None:
                raise FormulaDomainError(f"formula {self.name} needs k")
            if self.name in ("F", "S"):
                return self.func(k, n)
            return self.func(n, k)
        if k is not None:
            raise FormulaDomainError(f"formula {self.name} takes no k")
        return self.func(n)


FORMULAS: dict[str, FormulaInfo] = {f.name: f for f in [
    FormulaInfo("total", total_profiles, False, "A185141", "all profiles, (n!)^(2n)"),
    FormulaInfo("homecoming-queen", homecoming_queen_profiles, False, "A340890",
                "all men rank the same woman first"),
    FormulaInfo("homecoming-queen-men", homecoming_queen_men, False, "A342573",
                "men's matrices with a common first choice"),
    FormulaInfo("homecoming-fixed-queen-men", homecoming_fixed_queen_men, False, "A091868 (shifted)",
                "men's matrices where all men rank woman 1 first"),
    FormulaInfo("homecoming-both", homecoming_both, False, "A343474",
                "a homecoming queen and a homecoming king"),
    FormulaInfo("dominance", dominance_profiles, False, "A338665",
                "every man ranks woman 1 above woman 2 (n > 1)"),
    FormulaInfo("dominance-men", dominance_men, False, "A343692",
                "men's matrices where woman 1 beats woman 2 (n > 1)"),
    FormulaInfo("dominance-both", dominance_both_sides, False, "A343693",
                "dominance on both sides (n > 1)"),
    FormulaInfo("same-taste", same_taste_profiles, False, "A091868",
                "all men share one ranking"),
    FormulaInfo("same-taste-both", same_taste_both, False, "A001044",
                "all men share one ranking and all women share one ranking"),
    FormulaInfo("tastes-differ", tastes_differ_profiles, False, "A343475",
                "men's first choices all distinct"),
    FormulaInfo("tastes-differ-men", tastes_differ_men_only, False, "A343694",
                "men's matrices with distinct first choices"),
    FormulaInfo("tastes-differ-both", tastes_differ_both, False, "A343695",
                "distinct first choices on both sides"),
    FormulaInfo("latin-men", latin_men_profiles, False, "A343696",
                "men's matrix is a Latin square"),
    FormulaInfo("mutually-latin", mutually_latin_profiles, False, "A343697",
                "both matrices are Latin squares"),
    FormulaInfo("latin", latin_profiles, False, "A002860",
                "every pair has egalitarian cost n + 1"),
    FormulaInfo("joint", joint_profiles, False, "A344693", "joint profiles"),
    FormulaInfo("L", latin_squares, False, "A002860", "Latin squares of order n (stored, n <= 7)"),
    FormulaInfo("S", soulmate_free_completions, True, "-", "soulmate-free completions S(k, n)"),
    FormulaInfo("F", soulmate_profiles, True, "A343698/A343699/A343700",
                "profiles with exactly k soulmate pairs F(k, n)"),
    FormulaInfo("latin-men-soulmates", latin_men_soulmates, True, "A344662/A344663",
                "Latin men's matrix and exactly k soulmate pairs"),
    FormulaInfo("mutually-latin-soulmates", mutually_latin_soulmates, True, "A344664/A344665",
                "mutually-Latin with exactly k soulmate pairs"),
    FormulaInfo("outcasts", outcast_profiles, False, "A344689",
                "at least one outcast pair"),
    FormulaInfo("outcast-hell", outcast_hell_profiles, False, "A343474",
                "an outcast pair who are also a hell-pair"),
    FormulaInfo("men-up-to-relabeling", men_profiles_up_to_relabeling, False, "A344690",
                "men's matrices up to relabeling the men"),
]}


def evaluate(name: str, n: int, k: int | None = None) -> int:
    try:
        info = FORMULAS[name]
    except KeyError:
        raise KeyError(f"unknown formula {name!r}; known: {', '.join(FORMULAS)}") from None
    return info(n, k)
