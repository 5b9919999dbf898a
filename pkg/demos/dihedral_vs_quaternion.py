"""
D4 is a Heisenberg group, Q8 is not
===================================

Both groups have order 8, a center of order 2 and a quotient Z2 x Z2 with
the same commutator form.  Only one of them splits as H(E, F, A, omega).
"""

from heiskit.catalogue import dihedral_table, multiplication_heisenberg, quaternion_table
from heiskit.grouptable import (TableGroup, factorized_commutator, heisenberg_pair_search,
                                isomorphic_via, recognize_heisenberg)
from heiskit.heisenberg import element_order_profile

# the Heisenberg group over Z2 with omega(x, y) = xy
H = multiplication_heisenberg(2)
print("H(Z2) order:", H.order, "element orders:", element_order_profile(H))

# it has the element-order profile of D4 and is isomorphic to it
D4 = dihedral_table(4)
print("D4 element orders:", D4.order_profile())
dec = recognize_heisenberg(D4)
print("D4 recognized as", dec.heisenberg, "isomorphism checked:", isomorphic_via(D4, dec.heisenberg, dec.phi))

# Q8 shares the commutator form with D4
Q8 = quaternion_table()
print("same commutator form:", factorized_commutator(D4).form() == factorized_commutator(Q8).form())

# but no pair of maximal abelian subgroups splits its center
checks, maximal, _, _ = heisenberg_pair_search(Q8)
for c in checks:
    print(f"  pair of orders {len(maximal[c.first])}, {len(maximal[c.second])}: "
          f"meets in center {c.meets_in_center}, "
          f"generates {c.generates}, center splits {c.center_splits}")
print("Q8 recognized:", recognize_heisenberg(Q8))

# the round trip through a plain table recovers H(Z2)
T = TableGroup.from_heisenberg(H)
print("H(Z2) from its table:", recognize_heisenberg(T).heisenberg)
