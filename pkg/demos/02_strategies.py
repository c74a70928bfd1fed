"""
Random restarts versus parameters fixing
========================================

Both strategies on one cubic graph, depth 1 through 6.
Takes around ten seconds.
"""
import numpy as np

from qaoa_pf.graphs import generate_regular
from qaoa_pf.strategies import drift_tracks, parameters_fixing_sweep, random_init_sweep

g = generate_regular(8, 3, seed=1)

rnd = random_init_sweep(g, 6, trials_per_depth=20, seed=0)
pf = parameters_fixing_sweep(g, 6, trials_per_depth=20, seed=0)

print(" p   random mean   fixing mean   fixing std")
for a, b in zip(rnd, pf):
    print(f"{a.depth:2d}   {a.mean_alpha:11.4f}   {b.mean_alpha:11.4f}   {b.std_alpha:10.4f}")

# the best angles found at depth 6
best = pf[-1].best_trial
print(best.alpha, best.optimal_params.canonical())

# how far each gamma_i/beta_i moves once it has been introduced
for t in drift_tracks(pf)[:4]:
    print(t.kind, t.index, np.round(list(t.values.values()), 3))
