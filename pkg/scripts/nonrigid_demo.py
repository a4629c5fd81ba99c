"""Show that a delta built over a triple with a nontrivial automorphism is not generic.

E is empty, T has two points over a single base point, so swapping T fixes
(p1, h, p2) and yields a second filler for the identity square.
"""

from genbicat import poly as pl
from genbicat import suites
from genbicat.bicategory import filler_candidates

g = suites.nonrigid_example()
B = pl.PolyBicat(1, 2)
fillers = filler_candidates(B, g, g.cell, g.l, g.r)
print(f"delta: {g.c!r} -> {g.l!r} ; {g.r!r}")
print(f"fillers of the identity square: {len(fillers)}")
for f in fillers:
    print("  ", f)
print("generic:", B.is_generic(g))
print(suites.check_nonrigid_not_generic().line())
