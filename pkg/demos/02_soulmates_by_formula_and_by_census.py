# %% [markdown]
# # Counting profiles by number of soulmate pairs
#
# A soulmate pair is a man and a woman who rank each other first.  The
# closed form F(k, n) counts the profiles with exactly k such pairs.  For
# n <= 3 we can also just look at every profile.

# %%
from stablematch import formulas
from stablematch.census import CensusSpec, run_census

for n in range(1, 5):
    print(n, [formulas.soulmate_profiles(k, n) for k in range(n + 1)])

# %%
for n in (1, 2, 3):
    counted = run_census(CensusSpec(n, "all", ("soulmate-count", "hell-pair-count")))
    print(n, counted["soulmate-count"], counted["hell-pair-count"])

# %% [markdown]
# Reversing every ranking turns soulmates into hell-pairs, so the two
# histograms above are equal.  The same split for profiles whose men's
# ratings form a Latin square:

# %%
for n in (1, 2, 3):
    t = run_census(CensusSpec(n, "latin-men", ("soulmate-count",)))
    print(n, t.rows, [formulas.latin_men_soulmates(n, k) for k in range(n + 1)])
