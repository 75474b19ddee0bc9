# %% [markdown]
# # The full n = 4 census
#
# 110,075,314,176 profiles.  Relabeling the men, and the women other than
# woman 1, does not change any of the statistics below, so only profiles
# where woman 1's ranking is the identity and man 1 rates women 2..4 in
# increasing order are visited, each standing for 4! * 3! = 144 profiles.
# That is about 7.6e8 profiles; expect roughly an hour on one core.
#
# Writes results/census_n4_full.json, which the acceptance suite checks.

# %%
import json
import sys
from pathlib import Path

from stablematch.census import CensusSpec, run_census

STATS = ("stable-count", "egalitarian-cost-profiles", "egalitarian-cost-matchings",
         "hell-couple-profiles", "hell-couple-matchings", "soulmate-count", "outcasts")
out = Path(__file__).resolve().parent.parent / "results" / "census_n4_full.json"
workers = int(sys.argv[1]) if len(sys.argv) > 1 else 1

last = [-1]


def progress(frac):
    pct = int(frac * 100)
    if pct != last[0]:
        last[0] = pct
        print(f"{pct}%", file=sys.stderr, flush=True)


table = run_census(CensusSpec(4, "all", STATS, workers=workers, deep_symmetry=True, force=True),
                   progress=progress)
out.parent.mkdir(exist_ok=True)
out.write_text(json.dumps(table.to_dict(), indent=1))
print("stable matchings per profile:", table["stable-count"])
print(f"done in {table.elapsed / 60:.1f} min")
