"""
The family H(n,d)
=================

Build a few members of the family, check the Hopf axioms exactly and look
for quasi-triangular structures.
"""

from hopfbrauer.exact import FieldSpec
from hopfbrauer.families import HndParams, hnd, qt_congruence, r_s
from hopfbrauer.braiding import check_qt, is_triangular
from hopfbrauer.hopf import dual_hopf, verify_hopf

# Sweedler's four dimensional algebra lives over the rationals
Q = FieldSpec.rational()
H4 = hnd(HndParams(1, 1, (1,)), Q)
print(H4.basis_names)
print(verify_hopf(H4))

# m = 3 needs a primitive 6th root of unity, so work over F_13
F13 = FieldSpec.prime(13, 6)
params = HndParams(2, 3, (3, 3))
H = hnd(params, F13)
print(H.dim, H.basis_names[:6])
print("x1 * g =", H.product(H.basis_vector(H.index("x1")), H.basis_vector(H.index("g"))))

# duals are Hopf algebras too
print(bool(verify_hopf(dual_hopf(H))))

# which R_s are quasi-triangular, by brute force and by the congruence
found = {s for s in range(6) if check_qt(H, r_s(3, s, F13, H))}
print(found, qt_congruence(params))

# failures come with a witness
rep = check_qt(H4, r_s(1, 0, Q, H4))
print(rep.failures()[0])
print(is_triangular(H4, r_s(1, 1, Q, H4)))
