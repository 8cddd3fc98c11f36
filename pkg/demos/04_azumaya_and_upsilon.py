"""
Azumaya algebras and the map to Galois objects
==============================================

End(P) of the regular module is Azumaya with an inner action. Upsilon sends
it to the trivial class. The Heisenberg-type algebra T # B* goes back to T.
"""

from hopfbrauer.exact import FieldSpec
from hopfbrauer.families import HndParams, braided_line, c_object
from hopfbrauer.galois import azumaya_check, galois_invariant, gamma_roundtrip, has_normal_basis, upsilon
from hopfbrauer.modcat import check_inner_action, dual_smash_module_algebra, end_algebra, regular_module, \
    smash_product, theta_inner_pair

Q = FieldSpec.rational()
B = braided_line(HndParams(1, 1, (1,), 1), Q)
P = regular_module(B)
E = end_algebra(P)
print(azumaya_check(E))
print(smash_product(E).dim)

th, ths = theta_inner_pair(P)
print("inner:", bool(check_inner_action(E, th, ths)))
U = upsilon(E)
print(U.dim, has_normal_basis(U) is not None)

# a class without a normal basis survives the round trip
F13 = FieldSpec.prime(13, 6)
T = c_object(0, (6,), HndParams(2, 3, (5, 1), 3), F13)
A = dual_smash_module_algebra(T)
print(bool(azumaya_check(A)), galois_invariant(upsilon(A)))
print(gamma_roundtrip(T))
