"""
Landscape of the newest layer
=============================

F_2 over the second layer's (gamma, beta) with the first layer frozen at a
good and at a bad depth-1 optimum.
"""
import numpy as np

from qaoa_pf.graphs import generate_regular
from qaoa_pf.landscape import landscape_grid
from qaoa_pf.optimize import maximize, minimize
from qaoa_pf.simulator import MaxCutQAOA

g = generate_regular(8, 3, seed=0)
sim = MaxCutQAOA(g)

good = maximize(sim.expectation, [0.6, 0.4]).x_opt
bad = minimize(sim.expectation, [2.5, 0.4]).x_opt
print("F_1 at good / bad prefix:", sim(good), sim(bad))

for name, prefix in (("good", good), ("bad", bad)):
    grid = landscape_grid(g, prefix, resolution=24, sim=sim)
    a, b = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    print(f"{name}: mean {grid.mean():.3f}, max {grid.values.max():.3f} "
          f"at gamma={grid.gammas[a]:.3f} beta={grid.betas[b]:.3f}")

# to plot: grid.values is indexed [gamma, beta]; write_csv keeps that layout
# grid.write_csv("landscape.csv")
