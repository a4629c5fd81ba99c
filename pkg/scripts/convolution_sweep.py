"""Sizes of reduced vs coend Day convolution over a small sweep.

Usage: python3 scripts/convolution_sweep.py [max_size] [species_N]
"""

import itertools
import sys

from genbicat import convolution as cv
from genbicat import span as sp
from genbicat.cli import SPECIES, span_families
from genbicat.monoidal import SpeciesBicat

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
N = int(sys.argv[2]) if len(sys.argv) > 2 else 4

B = sp.SpanBicat(n, n)
print("spans: X Y Z  cell  F  G  reduced coend ok")
for X, Y, Z in itertools.product(B.objects(), repeat=3):
    c1, c2 = cv.hom_category(B, X, Y), cv.hom_category(B, Y, Z)
    for c in B.hom(X, Z):
        for F, G in itertools.product(span_families(c1), span_families(c2)):
            r = cv.verify_convolution_iso(B, F, G, c, Y)
            print(f"  {X} {Y} {Z}  {c!r}  {F.name} {G.name}  {r.bound['reduced']} {r.bound['coend']} {r.passed}")

S = SpeciesBicat(N)
base = cv.hom_category(S, 0, 0)
print("species: F G  sizes for n = 0..N")
for a, b in itertools.product(SPECIES, repeat=2):
    F, G = (cv.species_presheaf(SPECIES[k](N), base) for k in (a, b))
    sizes = [cv.verify_convolution_iso(S, F, G, m, 0).bound["coend"] for m in range(N + 1)]
    print(f"  {a} {b}  {sizes}")
