"""
Peeling hyperbolic pairs off a symplectic form
==============================================

Every separated alternating form on a finite abelian group K is the
standard form g(x) - f(y) on some A x dual(A).  The decomposition finds
A one hyperbolic pair at a time and then realizes the form as the
commutator pairing of a Mackey-Weil group.
"""

from heiskit.abelian import FiniteAbelianGroup
from heiskit.catalogue import alternating_forms
from heiskit.bilinear import is_separated
from heiskit.symplectic import (SelfDuality, dualities_isomorphic, mumford_group_from_duality,
                                standard_self_duality, symplectic_decompose)

K = FiniteAbelianGroup((2, 4, 2, 4))

# take the first separated alternating form from a seeded enumeration
w = next(f for f in alternating_forms(K, limit=64) if is_separated(f))
print("form matrix on", K, ":", w.matrix)

# split it: each pair (x, y, m) has b(x, y) = 1/m and is orthogonal to the rest
dec = symplectic_decompose(w)
for x, y, m in dec.pairs:
    print(f"  pair of order {m}: x = {x.coords}, y = {y.coords}")
print("A =", dec.A, "verified at every point:", dec.verified)

# the same group with the standard form is an isomorphic duality
d = SelfDuality.from_form(w)
same, witness = dualities_isomorphic(d, standard_self_duality(FiniteAbelianGroup((2, 4))))
print("isomorphic to the standard duality on Z2 x Z4:", same)

# realize the duality by a Mackey-Weil group
r = mumford_group_from_duality(d)
print("realized by", r.group, "of order", r.group.order)
print("Mumford data matches:", r.mumford_matches, "cocycle identity exact:", r.cocycle_matches)
