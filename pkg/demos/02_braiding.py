"""
Braidings from R-matrices
=========================

Modules over a quasi-triangular Hopf algebra form a braided category. Here
we look at the braiding on a pair of modules, the hexagon identity and the
double braiding on characters of a cyclic group algebra.
"""

from hopfbrauer.exact import FieldSpec, Matrix, kron
from hopfbrauer.families import HndParams, group_hopf, hnd, hnd_module, r_s
from hopfbrauer.braiding import BraidedCategory, braiding_matrix
from hopfbrauer.hopf import HModule
from hopfbrauer.modcat import regular_module

Q = FieldSpec.rational()
H4 = hnd(HndParams(1, 1, (1,)), Q)
R = r_s(1, 1, Q, H4)

# a two dimensional module: g = diag(1, -1), x sends e0 to e1
V = hnd_module(HndParams(1, 1, (1,)), Q, [[1, 0], [0, -1]], [[[0, 0], [1, 0]]], "V")
reg = regular_module(H4)
phi = braiding_matrix(R, V, V)
print(phi.matrix.a)

# hexagon: braiding past V (x) V in one go or one factor at a time
cat = BraidedCategory(H4, R)
VV = cat.tensor(V, V)
lhs = braiding_matrix(R, VV, reg).matrix
eye = Matrix.identity(Q, 2)
rhs = kron(braiding_matrix(R, V, reg).matrix, eye) @ kron(eye, braiding_matrix(R, V, reg).matrix)
print("hexagon holds:", lhs == rhs)

# monodromy on characters of K[Z_6]; it is trivial only for s in {0, 3}
F13 = FieldSpec.prime(13, 6)
K = group_hopf(3, F13)
w = F13.root_of_unity(6)
chi = [HModule(K, Matrix(F13, [[F13.power(w, a * j) for j in range(6)]]), f"chi{a}") for a in range(6)]
for s in range(6):
    c = BraidedCategory(K, r_s(3, s, F13, K))
    table = [[int(c.monodromy(chi[a], chi[b]).a[0, 0]) for b in range(6)] for a in range(6)]
    print(s, table[1])
