"""
Watching one IRCM run
=====================
"""

from chibar import chi_exact, ircm_run, ircm_until_stable, sample_gnp
from chibar.ircm import ColoringState, trace_csv

g = sample_gnp(30, 0.5, seed=3)
print("edges:", g.edge_count(), "exact chromatic number:", chi_exact(g).chi)

# colour count after 1, 2, 4, ... iterations
r = ircm_run(g, 1 << 16, seed=0, trace=True)
print(trace_csv(r.trace))

# the doubling rule stops once a doubling brings no improvement
print(ircm_until_stable(g, 256, seed=0))

# the state can be stepped by hand; the colouring stays proper throughout
state = ColoringState(g, seed=0)
for _ in range(5):
    state.advance(100)
    print(state.t, state.distinct_count, state.is_proper())
