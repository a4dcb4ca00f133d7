# %% [markdown]
# # The one-bit classical polytope
#
# Enumerate every deterministic strategy that sends one bit, take the convex
# hull of the resulting tables and list its facets in exact arithmetic.

# %%
from collections import Counter

from sdiqkd.polytope import affine_dimension
from sdiqkd.witness import classical_vertices, enumerate_facets, facet_orbits, witness_S

vertices = classical_vertices(2)
print(f"{len(vertices)} distinct vertices, affine dimension {affine_dimension(vertices)}")

facets = enumerate_facets(2)
print(f"{len(facets)} facets; offsets: {Counter(str(f.offset) for f in facets)}")

# %% [markdown]
# Up to relabelling preparations, settings and outputs, the nontrivial
# facets fall into a small number of classes. One of them is S <= 2.

# %%
orbits = facet_orbits([f for f in facets if not f.is_box])
for orbit in orbits:
    rep = orbit[0]
    print(f"class of size {len(orbit):3d}: {rep.coefficients} <= {rep.offset}")
print("S in the list:", any(f.coefficients == witness_S().flat() for f in facets))
