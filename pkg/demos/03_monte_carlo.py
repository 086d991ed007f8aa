"""
Sample averages: exact colouring versus IRCM
============================================
"""

import numpy as np

from chibar import exact_polynomial, mc_ac, mc_ircm

# small order: the sample mean should sit within a few standard errors of the polynomial
e = mc_ac(8, 0.5, s=4096, seed=1)
print(f"MC&AC n=8: {e.mean:.4f} +- {e.stderr:.4f}, exact {exact_polynomial(8)(0.5):.4f}")

# same seed, same graphs: IRCM counts can only be at or above the exact ones
n, p, s = 14, 0.5, 2048
exact = mc_ac(n, p, s, seed=7)
heur = mc_ircm(n, p, s, seed=7)
print(f"n={n}: exact {exact.mean:.4f}, IRCM {heur.mean:.4f} after {heur.t_final} iterations")
print("IRCM above exact on", int(np.sum(heur.values > exact.values)), "of", s, "graphs")

# thread count does not change any output
assert mc_ac(n, p, s, seed=7, threads=2) == exact
