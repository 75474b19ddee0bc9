"""Stable marriage toolkit: matchings, profile families, counting formulas and censuses."""

from .profile import (PreferenceProfile, ProfileError, complement, decode, encode,
                      format_profile, parse_profile)
from .matching import (GsTrace, Matching, PairCost, Side, egalitarian_cost, enumerate_stable,
                       find_blocking_pair, gale_shapley, hell_couples_in)
from .census import CensusSpec, CensusTable, run_census, verify_formulas

__all__ = [
    "PreferenceProfile", "ProfileError", "complement", "decode", "encode", "format_profile",
    "parse_profile", "GsTrace", "Matching", "PairCost", "Side", "egalitarian_cost",
    "enumerate_stable", "find_blocking_pair", "gale_shapley", "hell_couples_in",
    "CensusSpec", "CensusTable", "run_census", "verify_formulas",
]
