"""
Galois objects over a braided line
==================================

The two dimensional Galois objects C(a; alpha) over the braided line B,
their invariants, the group law given by the cotensor product and the
normal basis question.
"""

from hopfbrauer.exact import FieldSpec
from hopfbrauer.families import HndParams, braided_line, c_object
from hopfbrauer.galois import (CocycleData, cocycle_twist, cotensor, galois_invariant, has_normal_basis,
                               is_galois, opposite_galois, regular_galois)

F13 = FieldSpec.prime(13, 6)
equal = HndParams(2, 3, (3, 3), 3)     # d_n = m, both a and alpha are free
unequal = HndParams(2, 3, (5, 1), 3)   # d_n != m, only alpha

B = braided_line(equal, F13)
print(B.name, B.dim)
S = c_object(2, (1,), equal, F13)
T = c_object(7, (4,), equal, F13)
print(is_galois(S))

# invariants add under the cotensor product and negate under the opposite
print(galois_invariant(cotensor(S, T)))
print(galois_invariant(opposite_galois(S)))
print(galois_invariant(regular_galois(B)))

# a normal basis exists exactly when alpha vanishes
print(has_normal_basis(c_object(3, (0,), equal, F13)) is not None)
print(has_normal_basis(c_object(0, (5,), unequal, F13)))

# cocycle twists of B give the C(a; 0)
line = braided_line(HndParams(1, 3, (3,), 3), F13)
sigma = CocycleData.from_entries(line, [(0, 0, 1), (1, 1, 2)])
print(galois_invariant(cocycle_twist(sigma)))
