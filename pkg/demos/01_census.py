"""
Counting graphs by chromatic number
===================================
"""

from chibar import LabeledGraph, build_census, chi_exact, enumerate_all

# every labeled graph on 4 vertices, indexed by its edge bitset
graphs = list(enumerate_all(4))
print(len(graphs), "graphs of order 4")

# the path 0-1-2-3 is bipartite
path = LabeledGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
r = chi_exact(path)
print(path.to_line(), "chi =", r.chi, "witness", r.witness)

# the census tabulates graphs by edge count and chromatic number
c = build_census(5)
for m, row in enumerate(c.counts):
    print(f"|E|={m:2d}", row)
print("totals by chromatic number:", c.chi_totals())

# order 7 has about two million graphs; this takes a few seconds
c7 = build_census(7)
print("n=7 totals:", c7.chi_totals())
