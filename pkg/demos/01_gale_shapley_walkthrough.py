# %% [markdown]
# # Gale-Shapley on a small profile
#
# Three men and three women.  Ratings are given as "rank this person gives
# each member of the other side", so row (2, 3, 1) means woman 3 is this
# man's favourite, then woman 1, then woman 2.

# %%
from stablematch import PreferenceProfile, Side, enumerate_stable, gale_shapley
from stablematch.matching import pair_costs

p = PreferenceProfile(
    men=((1, 2, 3), (2, 3, 1), (3, 2, 1)),
    women=((3, 1, 2), (1, 2, 3), (1, 2, 3)),
)
print(p)

# %% [markdown]
# Run the algorithm with each side proposing.  The proposing side does
# better: the two runs give different matchings with different totals.

# %%
for side in Side:
    trace = gale_shapley(p, side)
    costs = pair_costs(p, trace.matching)
    print(f"{side.value}-proposing, {trace.rounds} rounds")
    for pc in costs:
        print(f"  m{pc.man} - w{pc.woman}  cost {pc.cost}")
    print("  total", sum(pc.cost for pc in costs))

# %% [markdown]
# Brute force over all 3! matchings confirms these are the only two stable ones.

# %%
for m in enumerate_stable(p):
    print(m.couples(), sum(pc.cost for pc in pair_costs(p, m)))
