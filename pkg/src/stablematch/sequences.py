"""Registry of published integer sequences and the code that reproduces them.

The terms live in ``data/sequences.json``.  Each entry names a producer; a
producer maps an index to a term.  Census-backed producers refuse sizes
beyond :data:`DESK_CENSUS_N` with :class:`SequenceGated` unless explicitly
allowed, since an n = 4 census over every profile takes a long time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import factorial
from typing import Callable

from . import census, formulas
from .latin import count_via_reduced

DESK_CENSUS_N = 3
LATIN_COUNT_MAX_N = 6


class SequenceGated(RuntimeError):
    """Computing this term needs a census beyond the desk-scale limit."""


@dataclass(frozen=True)
class SequenceEntry:
    id: str
    description: str
    offset: int
    kind: str
    producer: str | None
    terms: tuple[int, ...]
    gate: str | None = None
    note: str | None = None

    @property
    def known_terms(self) -> list[tuple[int, int]]:
        return [(self.offset + i, v) for i, v in enumerate(self.terms)]

    @property
    def stored_only(self) -> bool:
        return self.gate == "stored-only"


# -- census-backed terms ------------------------------------------------------

def _gate(n: int, allow_gated: bool):
    if n > DESK_CENSUS_N and not allow_gated:
        raise SequenceGated(f"needs a census at n={n} (desk limit is n={DESK_CENSUS_N})")


@lru_cache(maxsize=None)
def _full_census(n: int) -> census.CensusTable:
    stats = ("stable-count", "egalitarian-cost-profiles", "egalitarian-cost-matchings",
             "hell-couple-profiles", "hell-couple-matchings")
    return census.run_census(census.CensusSpec(
        n, "all", stats, symmetry_reduction=n >= 4, deep_symmetry=n >= 4, force=n >= 4))


def _stable_rows(n: int) -> dict[int, int]:
    return _full_census(n)["stable-count"]


def _table_position(index: int) -> tuple[int, int]:
    """Flattened table index (1-based) -> (n, cost); row n covers costs 2n..n(n+1)."""
    n, start = 1, 1
    while True:
        length = n * n - n + 1
        if index < start + length:
            return n, 2 * n + (index - start)
        start += length
        n += 1


def _census_producer(kind: str) -> Callable[[int, bool], int]:
    def produce(index: int, allow_gated: bool) -> int:
        if kind.startswith("table:"):
            n, cost = _table_position(index)
            _gate(n, allow_gated)
            stat = {"table:egalitarian-profiles": "egalitarian-cost-profiles",
                    "table:egalitarian-matchings": "egalitarian-cost-matchings"}[kind]
            return _full_census(n)[stat].get(cost, 0)
        if kind.startswith("stable-distribution("):
            n = int(kind[len("stable-distribution("):-1])
            _gate(n, allow_gated)
            return _stable_rows(n).get(index, 0)
        n = index
        _gate(n, allow_gated)
        if kind == "census:one-stable":
            return _stable_rows(n).get(1, 0)
        if kind == "census:max-stable":
            rows = _stable_rows(n)
            return rows[max(rows)]
        if kind == "census:hell-couple-profiles":
            return _full_census(n)["hell-couple-profiles"].get(1, 0)
        if kind == "census:hell-couple-matchings":
            return _full_census(n)["hell-couple-matchings"].get(1, 0)
        if kind == "census:disjoint":
            return census.census_disjoint(n, force=allow_gated)
        raise KeyError(kind)
    return produce


def _formula_producer(fn: Callable[[int], int]) -> Callable[[int, bool], int]:
    return lambda index, allow_gated: fn(index)


def _latin_count(n: int, allow_gated: bool) -> int:
    if n > LATIN_COUNT_MAX_N:
        raise SequenceGated(f"counting Latin squares of order {n} is out of reach")
    return count_via_reduced(n)


def _same_taste(n: int, allow_gated: bool) -> int:
    # Offset 0: the empty profile counts once.
    return 1 if n == 0 else formulas.same_taste_profiles(n)


F = formulas
PRODUCERS: dict[str, Callable[[int, bool], int]] = {
    "factorial": _formula_producer(factorial),
    "same-taste-both": _formula_producer(F.same_taste_both),
    "latin-squares": _latin_count,
    "same-taste": _same_taste,
    "total": _formula_producer(F.total_profiles),
    "dominance": _formula_producer(F.dominance_profiles),
    "homecoming-queen": _formula_producer(F.homecoming_queen_profiles),
    "homecoming-queen-men": _formula_producer(F.homecoming_queen_men),
    "homecoming-both": _formula_producer(F.homecoming_both),
    "tastes-differ": _formula_producer(F.tastes_differ_profiles),
    "dominance-men": _formula_producer(F.dominance_men),
    "dominance-both": _formula_producer(F.dominance_both_sides),
    "tastes-differ-men": _formula_producer(F.tastes_differ_men_only),
    "tastes-differ-both": _formula_producer(F.tastes_differ_both),
    "latin-men": _formula_producer(F.latin_men_profiles),
    "mutually-latin": _formula_producer(F.mutually_latin_profiles),
    "F(n,n)": _formula_producer(lambda n: F.soulmate_profiles(n, n)),
    "F(n-1,n)": _formula_producer(lambda n: F.soulmate_profiles(n - 1, n)),
    "F(0,n)": _formula_producer(lambda n: F.soulmate_profiles(0, n)),
    "latin-men-soulmates(n,n)": _formula_producer(lambda n: F.latin_men_soulmates(n, n)),
    "latin-men-soulmates(n,0)": _formula_producer(lambda n: F.latin_men_soulmates(n, 0)),
    "mutually-latin-soulmates(n,n)": _formula_producer(lambda n: F.mutually_latin_soulmates(n, n)),
    "mutually-latin-soulmates(n,0)": _formula_producer(lambda n: F.mutually_latin_soulmates(n, 0)),
    "outcasts": _formula_producer(F.outcast_profiles),
    "men-up-to-relabeling": _formula_producer(F.men_profiles_up_to_relabeling),
    "joint": _formula_producer(F.joint_profiles),
}
for _kind in ("stable-distribution(3)", "stable-distribution(4)", "census:one-stable",
              "census:max-stable", "census:hell-couple-profiles", "census:hell-couple-matchings",
              "census:disjoint", "table:egalitarian-profiles", "table:egalitarian-matchings"):
    PRODUCERS[_kind] = _census_producer(_kind)


# -- registry -----------------------------------------------------------------

@lru_cache(maxsize=None)
def load_registry() -> dict[str, SequenceEntry]:
    raw = json.loads(resources.files("stablematch").joinpath("data/sequences.json").read_text())
    reg = {}
    for rec in raw["sequences"]:
        entry = SequenceEntry(
            id=rec["id"], description=rec["description"], offset=rec["offset"],
            kind=rec["kind"], producer=rec.get("producer"), terms=tuple(rec["terms"]),
            gate=rec.get("gate"), note=rec.get("note"))
        if entry.producer is not None and entry.producer not in PRODUCERS:
            raise ValueError(f"{entry.id}: unknown producer {entry.producer!r}")
        reg[entry.id] = entry
    return reg


def get_entry(seq_id: str) -> SequenceEntry:
    try:
        return load_registry()[seq_id]
    except KeyError:
        raise KeyError(f"unknown sequence {seq_id!r}") from None


def term(seq_id: str, index: int, allow_gated: bool = False) -> int:
    entry = get_entry(seq_id)
    if entry.stored_only:
        raise SequenceGated(f"{seq_id} is stored only; its terms are not reproduced here")
    return PRODUCERS[entry.producer](index, allow_gated)


@dataclass
class CheckRow:
    index: int
    expected: int
    got: int | None
    status: str          # "ok", "mismatch", "gated" or "stored-only"


@dataclass
class CheckReport:
    id: str
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "mismatch" for r in self.rows)

    @property
    def mismatches(self) -> list[CheckRow]:
        return [r for r in self.rows if r.status == "mismatch"]

    def to_dict(self) -> dict:
        return {"id": self.id, "ok": self.ok,
                "rows": [vars(r) for r in self.rows]}


def check_sequence(seq_id: str, max_index: int, allow_gated: bool = False) -> CheckReport:
    """Recompute every known term up to ``max_index`` and compare."""
    entry = get_entry(seq_id)
    report = CheckReport(seq_id)
    for index, expected in entry.known_terms:
        if index > max_index:
            break
        if entry.stored_only:
            report.rows.append(CheckRow(index, expected, None, "stored-only"))
            continue
        try:
            got = term(seq_id, index, allow_gated)
        except SequenceGated:
            report.rows.append(CheckRow(index, expected, None, "gated"))
            continue
        report.rows.append(CheckRow(index, expected, got, "ok" if got == expected else "mismatch"))
    return report


def export_bfile(seq_id: str, max_index: int, allow_gated: bool = False) -> str:
    """Terms ``offset..max_index`` as b-file lines ``"index value"``.

    Stored-only entries export their stored terms.  A term that needs a gated
    census raises :class:`SequenceGated` rather than truncating the output.
    """
    entry = get_entry(seq_id)
    lines = []
    if entry.stored_only:
        for index, value in entry.known_terms:
            if index > max_index:
                break
            lines.append(f"{index} {value}\n")
        return "".join(lines)
    for index in range(entry.offset, max_index + 1):
        lines.append(f"{index} {term(seq_id, index, allow_gated)}\n")
    return "".join(lines)


def parse_bfile(text: str) -> list[tuple[int, int]]:
    out = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        idx, val = s.split()
        out.append((int(idx), int(val)))
    return out
