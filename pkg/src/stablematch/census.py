"""Brute-force census over families of preference profiles.

A family is laid out as an integer index space.  The space is cut into
contiguous ranges, each range is decoded into a :class:`~stablematch.kernels.Batch`
and reduced to integer histograms, and the histograms are summed.  Addition
is associative and commutative, so the result does not depend on how the
space was split or how many workers ran.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Optional

import numpy as np

from . import formulas
from .kernels import Batch
from .latin import latin_square_array
from .profile import permutation_table

log = logging.getLogger(__name__)

FAMILIES = ("all", "latin-men", "mutually-latin", "disjoint", "joint", "with-soulmate-pair")

PROFILE_STATISTICS = (
    "stable-count",
    "soulmate-count",
    "hell-pair-count",
    "egalitarian-cost-profiles",
    "egalitarian-cost-matchings",
    "hell-couple-profiles",
    "hell-couple-matchings",
    "outcasts",
)

# 0/1 histograms of single-profile predicates, used by the formula cross-check.
PREDICATE_STATISTICS = {
    "homecoming-queen": lambda b: b.homecoming_queen,
    "homecoming-both": lambda b: b.homecoming_queen & b.homecoming_king,
    "dominance-men": lambda b: b.dominance_men(),
    "dominance-both": lambda b: b.dominance_men() & b.dominance_women(),
    "men-same-taste": lambda b: b.men_same_taste,
    "same-taste-both": lambda b: b.men_same_taste & b.women_same_taste,
    "men-first-distinct": lambda b: b.men_first_distinct,
    "first-distinct-both": lambda b: b.men_first_distinct & b.women_first_distinct,
    "men-latin": lambda b: b.men_latin,
    "mutually-latin": lambda b: b.men_latin & b.women_latin,
    "latin-profile": lambda b: b.latin_profile,
    "disjoint": lambda b: b.disjoint,
    "joint": lambda b: b.joint,
    "outcast-hell": lambda b: b.outcast_hell,
}

# Statistics that mention specific labels and so cannot use relabeling symmetry.
LABELED_STATISTICS = {"dominance-men", "dominance-both"}

STATISTICS = PROFILE_STATISTICS + tuple(PREDICATE_STATISTICS)

DEFAULT_CHUNK = 1 << 16
GUARD_PROFILES = 50_000_000
GUARD_DISJOINT_N = 3


class CensusGuardError(RuntimeError):
    """The requested census is too large to run without ``force``."""


@dataclass(frozen=True)
class CensusSpec:
    n: int
    family: str = "all"
    statistics: tuple[str, ...] = ("stable-count",)
    workers: int = 1
    symmetry_reduction: bool = False
    # Also relabel the women (all but woman 1) using man 1's ranking.  Cuts
    # the full space by another (n-1)!; used for the n = 4 run.
    deep_symmetry: bool = False
    chunk_size: int = DEFAULT_CHUNK
    force: bool = False

    def __post_init__(self):
        if isinstance(self.statistics, str):
            object.__setattr__(self, "statistics", (self.statistics,))
        else:
            object.__setattr__(self, "statistics", tuple(self.statistics))
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.statistics:
            raise ValueError("at least one statistic is required")
        for s in self.statistics:
            if s not in STATISTICS:
                raise ValueError(f"unknown statistic {s!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.workers < 1 or self.chunk_size < 1:
            raise ValueError("workers and chunk_size must be positive")
        if self.deep_symmetry and not self.symmetry_reduction:
            object.__setattr__(self, "symmetry_reduction", True)
        if self.symmetry_reduction:
            labeled = LABELED_STATISTICS.intersection(self.statistics)
            if labeled:
                raise ValueError(f"statistics {sorted(labeled)} refer to specific people; "
                                 "run them without symmetry reduction")


@dataclass
class CensusTable:
    spec: CensusSpec
    histograms: dict[str, dict[int, int]]
    total: int
    elapsed: float = 0.0

    @property
    def rows(self) -> dict[int, int]:
        if len(self.histograms) != 1:
            raise ValueError("table holds several statistics; use .histograms")
        return next(iter(self.histograms.values()))

    def __getitem__(self, statistic: str) -> dict[int, int]:
        return self.histograms[statistic]

    def to_dict(self) -> dict:
        return {
            "spec": asdict(self.spec),
            "total": self.total,
            "elapsed": self.elapsed,
            "histograms": {s: {str(k): v for k, v in h.items()} for s, h in self.histograms.items()},
        }


# -- index spaces -------------------------------------------------------------

class Space:
    """Product of independent factors; each factor supplies some of the 2n rows.

    A factor is an array of shape ``(choices, rows, n)`` of 0-based rating
    rows.  The first factor is the most significant digit.
    """

    def __init__(self, n: int, factors: list[np.ndarray], weight: int = 1):
        self.n = n
        self.factors = factors
        self.weight = weight
        self.radices = [len(f) for f in factors]
        self.size = prod(self.radices)

    def digits(self, start: int, stop: int) -> list[np.ndarray]:
        idx = np.arange(start, stop, dtype=np.int64)
        out = []
        for r in reversed(self.radices):
            idx, d = np.divmod(idx, r)
            out.append(d)
        return out[::-1]

    def rows(self, start: int, stop: int) -> np.ndarray:
        parts = [f[d] for f, d in zip(self.factors, self.digits(start, stop))]
        return np.concatenate(parts, axis=1)

    def batch(self, start: int, stop: int) -> Optional[Batch]:
        rows = self.rows(start, stop)
        return Batch(rows[:, :self.n], rows[:, self.n:])


class FilteredSpace(Space):
    def __init__(self, n, factors, weight, keep: Callable[[Batch], np.ndarray]):
        super().__init__(n, factors, weight)
        self.keep = keep

    def batch(self, start, stop):
        b = super().batch(start, stop)
        mask = self.keep(b)
        return Batch(b.men[mask], b.women[mask])


class JointSpace(Space):
    """Women's Latin square times a key permutation; the men's matrix follows."""

    def batch(self, start, stop):
        n = self.n
        lat_d, key_d = self.digits(start, stop)
        women = self.factors[0][lat_d]                       # [b, w, m]
        key = permutation_table(n)[key_d]                    # [b, n]
        wt = women.transpose(0, 2, 1)                        # [b, m, w]
        men = np.take_along_axis(key[:, None, :], wt.reshape(len(key), 1, -1), axis=2)
        return Batch(men.reshape(len(key), n, n), women)


class ExplicitSpace(Space):
    def __init__(self, n, men: np.ndarray, women: np.ndarray, weight: int):
        self.n = n
        self.men, self.women = men, women
        self.weight = weight
        self.size = len(men)

    def batch(self, start, stop):
        return Batch(self.men[start:stop], self.women[start:stop])


def _row_factor(rows: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(rows[:, None, :])


@lru_cache(maxsize=None)
def _sorted_tail_rows(n: int) -> np.ndarray:
    """Rating rows whose ratings of people 2..n increase; one per first rating."""
    t = permutation_table(n)
    keep = np.all(np.diff(t[:, 1:], axis=1) > 0, axis=1) if n > 2 else np.ones(len(t), bool)
    return t[keep]


def _identity_row(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int8)[None, :]


def build_space(spec: CensusSpec) -> Space:
    n = spec.n
    perms = permutation_table(n)
    free = _row_factor(perms)
    fam = spec.family
    if fam in ("all", "with-soulmate-pair"):
        men = [free] * n
        women = [free] * n
        weight = 1
        if spec.symmetry_reduction:
            women[0] = _row_factor(_identity_row(n))
            weight = factorial(n)
            if spec.deep_symmetry:
                men[0] = _row_factor(_sorted_tail_rows(n))
                weight *= factorial(n - 1)
        if fam == "with-soulmate-pair":
            return FilteredSpace(n, men + women, weight, lambda b: b.soulmates > 0)
        return Space(n, men + women, weight)
    if spec.deep_symmetry:
        raise ValueError("deep symmetry is only available for the unrestricted families")
    if fam == "latin-men":
        squares = latin_square_array(n)
        women = [free] * n
        weight = 1
        if spec.symmetry_reduction:
            women[0] = _row_factor(_identity_row(n))
            weight = factorial(n)
        return Space(n, [squares] + women, weight)
    if fam == "mutually-latin":
        squares = latin_square_array(n)
        women_sq, weight = squares, 1
        if spec.symmetry_reduction:
            women_sq = squares[(squares[:, 0, :] == np.arange(n)).all(axis=1)]
            weight = factorial(n)
        return Space(n, [squares, women_sq], weight)
    if fam == "joint":
        if spec.symmetry_reduction:
            raise ValueError("symmetry reduction is not implemented for the joint family")
        squares = latin_square_array(n)
        return JointSpace(n, [squares, _row_factor(perms)], 1)
    if fam == "disjoint":
        men, women = canonical_disjoint_profiles(n, force=spec.force)
        return ExplicitSpace(n, men, women, factorial(n) ** 2)
    raise ValueError(f"unknown family {fam!r}")


def canonical_disjoint_profiles(n: int, force: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Disjoint profiles in which man 1 and woman 1 both rank people in label order.

    Every disjoint profile has exactly one soulmate pair, so relabeling the men
    by that woman's ranking and the women by that man's ranking reaches exactly
    one of these; each stands for n!^2 disjoint profiles.
    """
    if n > GUARD_DISJOINT_N and not force:
        raise CensusGuardError(f"disjoint census for n={n} is slow; pass force=True")
    perms = [tuple(p) for p in permutation_table(n).tolist()]
    ident = tuple(range(n))
    found_men, found_women = [], []
    for men_rest in itertools.product(perms, repeat=n - 1):
        men = (ident,) + men_rest
        used = {(0, 0)} | {(men[m][0], m) for m in range(1, n)}
        women = [ident] + [None] * (n - 1)

        def place(w: int, used: set):
            if w == n:
                found_men.append(men)
                found_women.append(tuple(women))
                return
            for row in perms:
                cells = {(men[m][w], row[m]) for m in range(n)}
                if len(cells) == n and not (cells & used):
                    women[w] = row
                    place(w + 1, used | cells)
            women[w] = None

        place(1, used)
    shape = (len(found_men), n, n)
    return (np.array(found_men, dtype=np.int8).reshape(shape),
            np.array(found_women, dtype=np.int8).reshape(shape))


# -- accumulation -------------------------------------------------------------

def _hist(values: np.ndarray, weight: int) -> dict[int, int]:
    if values.size == 0:
        return {}
    counts = np.bincount(values.astype(np.int64).ravel())
    return {int(k): int(c) * weight for k, c in enumerate(counts) if c}


def _merge(into: dict[str, dict[int, int]], other: dict[str, dict[int, int]]):
    for stat, h in other.items():
        dst = into.setdefault(stat, {})
        for k, v in h.items():
            dst[k] = dst.get(k, 0) + v


def batch_histograms(b: Batch, statistics, weight: int = 1) -> dict[str, dict[int, int]]:
    out: dict[str, dict[int, int]] = {}
    for stat in statistics:
        if stat == "stable-count":
            h = _hist(b.stable_count, weight)
        elif stat == "soulmate-count":
            h = _hist(b.soulmates, weight)
        elif stat == "hell-pair-count":
            h = _hist(b.hell_pairs, weight)
        elif stat == "outcasts":
            h = _hist(b.outcasts, weight)
        elif stat == "egalitarian-cost-profiles":
            costs = b.matching_costs
            bi, si = np.nonzero(b.stable)
            present = np.zeros((b.size, 2 * b.n * b.n + 1), dtype=bool)
            present[bi, costs[bi, si]] = True
            h = {k: int(c) * weight for k, c in enumerate(present.sum(axis=0)) if c}
        elif stat == "egalitarian-cost-matchings":
            h = _hist(b.matching_costs[b.stable], weight)
        elif stat == "hell-couple-profiles":
            h = _hist(b.stable_hell > 0, weight)
        elif stat == "hell-couple-matchings":
            with_hell = int(b.stable_hell.sum())
            without = int(b.stable_count.sum()) - with_hell
            h = {k: v * weight for k, v in ((0, without), (1, with_hell)) if v}
        else:
            h = _hist(PREDICATE_STATISTICS[stat](b), weight)
        out[stat] = h
    return out


def _run_range(spec: CensusSpec, start: int, stop: int, space: Space | None = None):
    space = space or build_space(spec)
    acc: dict[str, dict[int, int]] = {s: {} for s in spec.statistics}
    total = 0
    for lo in range(start, stop, spec.chunk_size):
        hi = min(stop, lo + spec.chunk_size)
        b = space.batch(lo, hi)
        total += b.size * space.weight
        if b.size:
            _merge(acc, batch_histograms(b, spec.statistics, space.weight))
    return acc, total


def estimate_seconds(spec: CensusSpec, space: Space | None = None, sample: int = 4096) -> float:
    """Rough wall-clock estimate from timing one small chunk."""
    space = space or build_space(spec)
    sample = min(sample, space.size)
    if sample == 0:
        return 0.0
    t0 = time.perf_counter()
    _run_range(spec, 0, sample, space)
    per = (time.perf_counter() - t0) / sample
    return per * space.size / spec.workers


def run_census(spec: CensusSpec, progress: Callable[[float], None] | None = None) -> CensusTable:
    """Run a census and return its histograms.

    Refuses (:class:`CensusGuardError`) when the index space exceeds
    ``GUARD_PROFILES`` entries unless ``spec.force`` is set.  A run that is
    interrupted raises and returns nothing.
    """
    t0 = time.perf_counter()
    space = build_space(spec)
    if space.size > GUARD_PROFILES and not spec.force:
        est = estimate_seconds(spec, space)
        raise CensusGuardError(
            f"census over {space.size} profiles (n={spec.n}, family={spec.family}) "
            f"estimated at {est / 3600:.1f} h with {spec.workers} worker(s); pass force to run it")

    n_tasks = max(1, min(space.size // spec.chunk_size + 1, 100 * spec.workers))
    bounds = [space.size * i // n_tasks for i in range(n_tasks + 1)]
    ranges = [(bounds[i], bounds[i + 1]) for i in range(n_tasks) if bounds[i] < bounds[i + 1]]

    acc: dict[str, dict[int, int]] = {s: {} for s in spec.statistics}
    total = 0
    done = 0
    if spec.workers == 1:
        results = (_run_range(spec, lo, hi, space) for lo, hi in ranges)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=spec.workers)
        results = pool.map(_run_range, [spec] * len(ranges),
                           [lo for lo, _ in ranges], [hi for _, hi in ranges])
    try:
        for (lo, hi), (h, t) in zip(ranges, results):
            _merge(acc, h)
            total += t
            done += hi - lo
            if progress:
                progress(done / space.size)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    hist = {s: dict(sorted(acc[s].items())) for s in spec.statistics}
    return CensusTable(spec, hist, total, time.perf_counter() - t0)


# -- named censuses -----------------------------------------------------------

def census_stable_with_soulmates(n: int, **kw) -> CensusTable:
    """Profiles with at least one soulmate pair, bucketed by number of stable matchings."""
    return run_census(CensusSpec(n, "with-soulmate-pair", ("stable-count",), **kw))


def census_hell_couples(n: int, **kw) -> tuple[int, int]:
    """(profiles with a stable hell-couple, stable matchings of those profiles)."""
    t = run_census(CensusSpec(n, "all", ("hell-couple-profiles", "hell-couple-matchings"), **kw))
    return t["hell-couple-profiles"].get(1, 0), t["hell-couple-matchings"].get(1, 0)


def census_egalitarian_profiles(n: int, **kw) -> CensusTable:
    return run_census(CensusSpec(n, "all", ("egalitarian-cost-profiles",), **kw))


def census_egalitarian_matchings(n: int, **kw) -> CensusTable:
    return run_census(CensusSpec(n, "all", ("egalitarian-cost-matchings",), **kw))


def census_disjoint(n: int, force: bool = False) -> int:
    men, _ = canonical_disjoint_profiles(n, force=force)
    return len(men) * factorial(n) ** 2


def census_men_up_to_relabeling(n: int) -> int:
    """Distinct multisets of men's rows, by enumerating every men's matrix."""
    perms = [tuple(r) for r in permutation_table(n).tolist()]
    return len({tuple(sorted(rows)) for rows in itertools.product(perms, repeat=n)})


# -- formula cross-check -------------------------------------------------------

@dataclass
class VerifyRow:
    name: str
    census: int
    formula: int

    @property
    def match(self) -> bool:
        return self.census == self.formula


@dataclass
class VerifyReport:
    n: int
    rows: list[VerifyRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.rows)

    def add(self, name: str, census: int, formula: int):
        self.rows.append(VerifyRow(name, int(census), int(formula)))

    def to_dict(self) -> dict:
        return {"n": self.n, "ok": self.ok,
                "rows": [dict(name=r.name, census=r.census, formula=r.formula, match=r.match)
                         for r in self.rows]}


def _div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"census count {a} is not a multiple of {b}")
    return q


def verify_formulas(n: int, workers: int = 1, force: bool = False) -> VerifyReport:
    """Run every census that has a closed form and compare the two."""
    if n > 3 and not force:
        raise CensusGuardError("formula verification beyond n=3 needs force")
    f = formulas
    rep = VerifyReport(n)
    stats = ("soulmate-count", "hell-pair-count", "outcasts") + tuple(
        s for s in PREDICATE_STATISTICS if n >= 2 or s not in LABELED_STATISTICS)
    t = run_census(CensusSpec(n, "all", stats, workers=workers, force=force))
    yes = lambda s: t[s].get(1, 0)
    fact_n = factorial(n)

    rep.add("total", t.total, f.total_profiles(n))
    for k in range(n + 1):
        rep.add(f"F({k},{n})", t["soulmate-count"].get(k, 0), f.soulmate_profiles(k, n))
    for k in range(n + 1):
        rep.add(f"hell-pairs={k} (complement of F({k},{n}))",
                t["hell-pair-count"].get(k, 0), f.soulmate_profiles(k, n))
    rep.add("homecoming-queen", yes("homecoming-queen"), f.homecoming_queen_profiles(n))
    rep.add("homecoming-queen-men", _div(yes("homecoming-queen"), fact_n ** n), f.homecoming_queen_men(n))
    rep.add("homecoming-both", yes("homecoming-both"), f.homecoming_both(n))
    if n >= 2:
        rep.add("dominance", yes("dominance-men"), f.dominance_profiles(n))
        rep.add("dominance-men", _div(yes("dominance-men"), fact_n ** n), f.dominance_men(n))
        rep.add("dominance-both", yes("dominance-both"), f.dominance_both_sides(n))
    rep.add("same-taste", yes("men-same-taste"), f.same_taste_profiles(n))
    rep.add("same-taste-both", yes("same-taste-both"), f.same_taste_both(n))
    rep.add("tastes-differ", yes("men-first-distinct"), f.tastes_differ_profiles(n))
    rep.add("tastes-differ-men", _div(yes("men-first-distinct"), fact_n ** n), f.tastes_differ_men_only(n))
    rep.add("tastes-differ-both", yes("first-distinct-both"), f.tastes_differ_both(n))
    rep.add("latin-men", yes("men-latin"), f.latin_men_profiles(n))
    rep.add("mutually-latin", yes("mutually-latin"), f.mutually_latin_profiles(n))
    rep.add("latin", yes("latin-profile"), f.latin_profiles(n))
    rep.add("joint", yes("joint"), f.joint_profiles(n))
    outcast_any = sum(v for k, v in t["outcasts"].items() if k >= 1)
    rep.add("outcasts", outcast_any, f.outcast_profiles(n))
    rep.add("outcast-hell", yes("outcast-hell"), f.outcast_hell_profiles(n))

    # generative families
    lm = run_census(CensusSpec(n, "latin-men", ("soulmate-count",), workers=workers, force=force))
    for k in range(n + 1):
        rep.add(f"latin-men-soulmates({n},{k})", lm.rows.get(k, 0), f.latin_men_soulmates(n, k))
    ml = run_census(CensusSpec(n, "mutually-latin", ("soulmate-count",), workers=workers, force=force))
    for k in range(n + 1):
        rep.add(f"mutually-latin-soulmates({n},{k})", ml.rows.get(k, 0), f.mutually_latin_soulmates(n, k))
    jt = run_census(CensusSpec(n, "joint", ("soulmate-count",), workers=workers, force=force))
    rep.add("joint (generated)", jt.total, f.joint_profiles(n))

    disjoint = yes("disjoint")
    upper, divisor = f.disjoint_profile_bounds(n)
    rep.add("disjoint (canonical x n!^2 vs filter)", census_disjoint(n, force=force), disjoint)
    rep.add("disjoint <= (n^2)!", int(disjoint <= upper), 1)
    rep.add("n!^2 divides disjoint", int(disjoint % divisor == 0), 1)
    rep.add("men-up-to-relabeling", census_men_up_to_relabeling(n), f.men_profiles_up_to_relabeling(n))
    return rep
