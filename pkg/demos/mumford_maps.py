"""
Mumford maps and the two embeddings
===================================

A Heisenberg group is a Mumford group when its commutator form
identifies K = E x F with Hom(K, A).  This happens exactly when both
curried maps of omega are bijective.
"""

from heiskit.abelian import FiniteAbelianGroup, cyclic
from heiskit.bilinear import BilinearForm, curry
from heiskit.heisenberg import (HeisenbergGroup, center_and_derived, embed_standard,
                                is_mumford_group, mackey_weil, mumford_map)

V = FiniteAbelianGroup((2, 2))

# the Mackey-Weil group of V pairs V with its dual
MW = mackey_weil(V)
r = is_mumford_group(MW)
print(MW, "order", MW.order, "mumford:", r.mumford)

# omega((a, b), y) = (ay, 0) ignores b, so it does not separate points
w = BilinearForm(V, cyclic(2), V, [[(1, 0)], [(0, 0)]])
print("separated:", curry(w, "left").is_injective() and curry(w, "right").is_injective())

# omega((a, b), y) = (ay, by) separates points on both sides
w = BilinearForm(V, cyclic(2), V, [[(1, 0)], [(0, 1)]])
H = HeisenbergGroup(w)
cd = center_and_derived(H)
print(H, "center", len(cd.center), "derived", len(cd.derived))

# its Mumford map is injective but misses most of Hom(K, A)
M = mumford_map(H)
print("Mumford map injective:", M.is_injective(), "image", len(M.image()), "of", M.target.order)

# one embedding into a standard Heisenberg group is onto, the other is not
for side in "EF":
    emb = embed_standard(H, side)
    print(f"embedding through {side}: injective {emb.injective}, bijective {emb.bijective}")
print("mumford:", is_mumford_group(H).mumford)
