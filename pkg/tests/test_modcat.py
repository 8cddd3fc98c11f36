import numpy as np
import pytest

from hopfbrauer.braiding import check_qt
from hopfbrauer.exact import FieldSpec, Matrix
from hopfbrauer.families import HndParams, braided_line, c_object, group_hopf, hnd, hnd_module
from hopfbrauer.galois import azumaya_check, regular_galois
from hopfbrauer.hopf import algebra_morphism_check, verify_algebra, verify_comodule, verify_hopf, verify_module
from hopfbrauer.modcat import (
    biproduct,
    check_biproduct,
    check_inner_action,
    comodule_from_module,
    dual_smash,
    dual_smash_module_algebra,
    end_algebra,
    lift_rmatrix,
    module_from_comodule,
    regular_module,
    smash_embeddings,
    smash_product,
    star_matches_smash,
    tensor_module,
    theta_inner_pair,
    trivial_module,
    trivial_module_structure,
    verify_comodule_algebra,
    verify_module_algebra,
)

Q = FieldSpec.rational()
F13 = FieldSpec.prime(13, 6)

LINES = [(HndParams(1, 1, (1,), 1), Q), (HndParams(1, 3, (3,), 3), F13), (HndParams(2, 3, (5, 1), 3), F13),
         (HndParams(2, 3, (3, 3), 3), F13)]


def _smash_by_elements(A, H):
    """(a # h)(b # k) = a (h1 . b) # h2 k, straight from the structure tensors."""
    f = A.field
    dA, dH = A.dim, H.dim
    mu_A = A.algebra.mult_tensor
    mu_H = H.mult_tensor
    de = H.comult_tensor
    act = A.module.representation  # [h, out, in]
    n = dA * dH
    out = f.zeros((n, n * n))
    for a in range(dA):
        for h in range(dH):
            for b in range(dA):
                for k in range(dH):
                    # h1 . b -> sum over p, q of de[h, p, q] act[p, :, b]
                    hb = f.reduce(np.einsum("pq,pr->qr", de[h], act[:, :, b]))  # [h2, b']
                    col = (a * dH + h) * n + b * dH + k
                    for q in range(dH):
                        for r in range(dA):
                            c = hb[q, r]
                            if c == 0:
                                continue
                            for s in range(dA):
                                if mu_A[a, r, s] == 0:
                                    continue
                                for t in range(dH):
                                    if mu_H[q, k, t] == 0:
                                        continue
                                    out[s * dH + t, col] = f.add(out[s * dH + t, col],
                                                                 f.mul(c, f.mul(mu_A[a, r, s], mu_H[q, k, t])))
    return Matrix(f, out, canonical=True)


def _two_dim_modules():
    V = hnd_module(HndParams(1, 1, (1,)), Q, [[1, 0], [0, -1]], [[[0, 0], [1, 0]]], "V")
    return [V, regular_module(group_hopf(1, Q))]


@pytest.mark.parametrize("P", _two_dim_modules(), ids=lambda P: P.name)
def test_smash_product_matches_element_formula(P):
    H = P.hopf
    E = end_algebra(P)
    assert verify_module_algebra(E)
    S = smash_product(E)
    assert S.mult == _smash_by_elements(E, H)
    assert verify_algebra(S)
    ia, ih = smash_embeddings(E, S)
    assert algebra_morphism_check(ia, E.algebra, S)
    assert algebra_morphism_check(ih, H, S)


@pytest.mark.parametrize("m,field", [(1, Q), (3, F13)])
def test_heisenberg_double_is_a_matrix_algebra(m, field):
    H = group_hopf(m, field)
    T = regular_galois(H)
    A = dual_smash_module_algebra(T)
    assert verify_module_algebra(A)
    S, _ = dual_smash(T.algebra)
    assert S.dim == H.dim ** 2
    assert azumaya_check(S)
    assert star_matches_smash(T.algebra)


def test_trivial_structures():
    H = hnd(HndParams(1, 1, (1,)), Q)
    K2 = trivial_module(H, 2)
    assert verify_module(K2)
    E = end_algebra(K2)
    A = trivial_module_structure(E.algebra, H)
    assert verify_module_algebra(A)
    assert verify_module(tensor_module(regular_module(H), K2))


@pytest.mark.parametrize("params,field", LINES)
def test_comodules_versus_dual_modules(params, field):
    B = braided_line(params, field)
    T = regular_galois(B).algebra
    M = module_from_comodule(T.comodule)
    assert verify_module(M)
    back = comodule_from_module(M, B)
    assert back.coaction == T.coaction
    assert verify_comodule(back)


@pytest.mark.parametrize("params,field", LINES)
def test_biproduct(params, field):
    B = braided_line(params, field)
    P = biproduct(B)
    assert P.dim == 2 * B.cat.hopf.dim
    assert check_biproduct(B, P)
    assert check_qt(P, lift_rmatrix(B, P))


@pytest.mark.parametrize("params,field", LINES[:3])
def test_end_algebra_is_inner(params, field):
    B = braided_line(params, field)
    P = regular_module(B)
    E = end_algebra(P)
    assert verify_module_algebra(E)
    assert azumaya_check(E)
    th, ths = theta_inner_pair(P)
    assert check_inner_action(E, th, ths)
    # swapping f and its inverse breaks the inner formula
    assert not check_inner_action(E, ths, th)


@pytest.mark.parametrize("params,field,a,alpha", [
    (HndParams(1, 1, (1,), 1), Q, 1, ()),
    (HndParams(1, 3, (3,), 3), F13, 2, ()),
    (HndParams(2, 3, (5, 1), 3), F13, 0, (3,)),
    (HndParams(2, 3, (3, 3), 3), F13, 4, (1,)),
])
def test_dual_smash_of_c_objects(params, field, a, alpha):
    T = c_object(a, alpha, params, field)
    assert verify_comodule_algebra(T)
    A = dual_smash_module_algebra(T)
    assert verify_module_algebra(A)
    assert azumaya_check(A)
    assert star_matches_smash(T)
    assert verify_hopf(A.hopf)
