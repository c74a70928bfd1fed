"""
Exact QAOA expectation values
=============================

The ansatz state for a small graph, checked against a closed form.
"""
import math

import numpy as np

from qaoa_pf import graphs
from qaoa_pf.simulator import MaxCutQAOA, ParameterVector, fp

# A single edge: F_1 = 1/2 (1 + sin(gamma) sin(4 beta)), so the best
# angles gamma = pi/2, beta = pi/8 cut the edge with certainty
edge = graphs.complete_graph(2)
print(fp(edge, ParameterVector((math.pi / 2,), (math.pi / 8,))))

# a random cubic graph on 8 vertices and its exact maximum cut
g = graphs.generate_regular(8, 3, seed=0)
print(g.to_text())
best = graphs.max_cut_bruteforce(g)
print("C_max =", best.c_max, "witness", best.witness)

# all angles zero leaves |+>^n untouched: every edge is cut half the time
sim = MaxCutQAOA(g)
print(sim.expectation(ParameterVector.zeros(3)), g.num_edges / 2)

# the flat array form is gammas first, then betas
x = np.array([0.6, 0.3, 0.4, 0.2])
print(sim.expectation(x) / best.c_max)

# probabilities of the most likely bitstrings (vertex j is bit j)
probs = np.abs(sim.evolve(x)) ** 2
for idx in np.argsort(probs)[::-1][:4]:
    bits = graphs.bits_of_index(int(idx), g.n)
    print(bits, round(float(probs[idx]), 4), graphs.cut_value(g, bits))
