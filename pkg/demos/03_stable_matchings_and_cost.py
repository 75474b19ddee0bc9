# %% [markdown]
# # How many stable matchings, and how good are they?
#
# Every n = 3 profile (46656 of them) is checked against all 6 matchings.

# %%
import time

from stablematch.census import CensusSpec, run_census

t0 = time.perf_counter()
table = run_census(CensusSpec(3, "all", ("stable-count", "egalitarian-cost-profiles",
                                         "egalitarian-cost-matchings")))
print(f"{time.perf_counter() - t0:.2f}s")
print("stable matchings per profile:", table["stable-count"])

# %% [markdown]
# Egalitarian cost of a matching = sum over couples of the two ranks they give
# each other.  First: profiles having a stable matching of each cost.  Second:
# stable matchings of each cost, summed over all profiles.

# %%
for cost in range(6, 19):
    print(cost, table["egalitarian-cost-profiles"].get(cost, 0),
          table["egalitarian-cost-matchings"].get(cost, 0))

# %% [markdown]
# Cost 18 would need every couple to rank each other last, which stability
# rules out; the tables stop at 12.
