import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfbrauer.exact import FieldSpec, Matrix
from hopfbrauer.families import HndParams, group_hopf, hnd
from hopfbrauer.hopf import (
    FDHopf,
    HModule,
    convolution,
    dual_hopf,
    hopf_morphism_check,
    is_cocommutative,
    is_commutative,
    trivial_hopf,
    verify_algebra,
    verify_hopf,
    verify_module,
)

Q = FieldSpec.rational()
F13 = FieldSpec.prime(13, 6)


def sweedler_by_hand():
    """H4 with basis 1, x, g, gx from g^2 = 1, x^2 = 0, xg = -gx."""
    n = 4
    table = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
        (1, 0): {1: 1}, (1, 1): {}, (1, 2): {3: -1}, (1, 3): {},
        (2, 0): {2: 1}, (2, 1): {3: 1}, (2, 2): {0: 1}, (2, 3): {1: 1},
        (3, 0): {3: 1}, (3, 1): {}, (3, 2): {1: -1}, (3, 3): {},
    }
    mult = Q.zeros((n, n * n))
    for (i, j), out in table.items():
        for k, c in out.items():
            mult[k, i * n + j] = Q.scalar(c)
    comult = Q.zeros((n * n, n))
    for i, terms in {0: [(0, 0)], 1: [(0, 1), (1, 2)], 2: [(2, 2)], 3: [(2, 3), (3, 0)]}.items():
        for a, b in terms:
            comult[a * n + b, i] = Q.one
    S = Q.zeros((n, n))
    S[0, 0], S[3, 1], S[2, 2], S[1, 3] = 1, 1, 1, -1
    return FDHopf(Matrix(Q, mult), Matrix.column(Q, [1, 0, 0, 0]), Matrix(Q, comult),
                  Matrix(Q, [[1, 0, 1, 0]]), Matrix(Q, S), "H4hand")


def test_family_h4_matches_hand_table():
    H = hnd(HndParams(1, 1, (1,)), Q)
    ref = sweedler_by_hand()
    assert H.basis_names == ("1", "x1", "g", "gx1")
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert getattr(H, attr) == getattr(ref, attr), attr
    assert verify_hopf(ref)


@pytest.mark.parametrize("H", [
    trivial_hopf(Q), group_hopf(1, Q), group_hopf(2, FieldSpec.prime(5, 4)),
    group_hopf(3, F13), hnd(HndParams(1, 1, (1,)), Q), hnd(HndParams(2, 1, (1, 1)), Q),
], ids=lambda H: H.name)
def test_known_hopf_algebras_and_duals(H):
    assert verify_hopf(H)
    D = dual_hopf(H)
    assert verify_hopf(D)
    DD = dual_hopf(D)
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert getattr(DD, attr) == getattr(H, attr)


def test_broken_antipode_is_caught_with_witness():
    H = hnd(HndParams(1, 1, (1,)), Q)
    bad = FDHopf(H.mult, H.unit, H.comult, H.counit, H.antipode.scale(-1), "bad", H.basis_names)
    rep = verify_hopf(bad)
    assert not rep
    failed = {r.name for r in rep.failures()}
    assert "antipode_left" in failed
    w = rep.result("antipode_left").witness
    assert w["index"] == (0,)  # already fails on the unit: S(1) = -1


def test_nonassociative_algebra_rejected():
    from hopfbrauer.hopf import FDAlgebra

    # e1 e1 = e2, e1 e2 = e1, e2 e1 = 0: (e1 e1) e1 = 0 but e1 (e1 e1) = e1
    n = 3
    m = Q.zeros((n, n * n))
    for i in range(n):
        m[i, i] = m[i, i * n] = Q.one
    m[2, 1 * n + 1] = Q.one
    m[1, 1 * n + 2] = Q.one
    A = FDAlgebra(Matrix(Q, m), Matrix.column(Q, [1, 0, 0]), "broken")
    rep = verify_algebra(A)
    assert rep.result("left_unit").passed and rep.result("right_unit").passed
    bad = rep.result("associativity")
    assert not bad.passed
    assert bad.witness["index"] == (1, 1, 1)


def test_commutativity_flags():
    K = group_hopf(2, FieldSpec.prime(5, 4))
    assert is_commutative(K) and is_cocommutative(K)
    H4 = hnd(HndParams(1, 1, (1,)), Q)
    assert not is_commutative(H4) and not is_cocommutative(H4)


def test_antipode_is_convolution_inverse_of_identity():
    H = hnd(HndParams(2, 3, (3, 3)), F13)
    I = Matrix.identity(F13, H.dim)
    eta_eps = H.unit @ H.counit
    assert convolution(H, H.antipode, I, H) == eta_eps
    assert convolution(H, I, H.antipode, H) == eta_eps


def test_identity_is_hopf_morphism_and_others_are_not():
    H = hnd(HndParams(1, 1, (1,)), Q)
    assert hopf_morphism_check(Matrix.identity(Q, 4), H, H)
    P = Matrix.permutation(Q, [0, 2, 1, 3])
    assert not hopf_morphism_check(P, H, H)


def test_regular_module_axioms():
    H = group_hopf(3, F13)
    M = HModule(H, H.mult, "reg")
    assert verify_module(M)


def _element(f, draw, n):
    return f.array([draw(st.integers(0, 12)) for _ in range(n)])


@settings(max_examples=25)
@given(data=st.data())
def test_comultiplication_is_multiplicative_on_elements(data):
    # element-level check through the structure tensors, not the diagrams
    H = hnd(HndParams(2, 3, (3, 3)), F13)
    n = H.dim
    mu = H.mult_tensor
    de = H.comult_tensor
    u = _element(F13, data.draw, n)
    v = _element(F13, data.draw, n)

    def mul(a, b):
        return np.mod(np.einsum("i,j,ijk->k", a, b, mu), 13)

    def delta(a):
        return np.mod(np.einsum("i,ijk->jk", a, de), 13)

    lhs = delta(mul(u, v))
    du, dv = delta(u), delta(v)
    # (a (x) b)(c (x) d) = ac (x) bd in H (x) H with the flip
    t = np.mod(np.einsum("ab,ack->bck", du, mu), 13)
    rhs = np.mod(np.einsum("bck,cd,bdl->kl", t, dv, mu), 13)
    assert np.array_equal(lhs, rhs)


@settings(max_examples=25)
@given(data=st.data())
def test_antipode_is_antimultiplicative_on_elements(data):
    H = hnd(HndParams(2, 3, (5, 1)), F13)
    n = H.dim
    mu = H.mult_tensor
    S = H.antipode.a
    u = _element(F13, data.draw, n)
    v = _element(F13, data.draw, n)

    def mul(a, b):
        return np.mod(np.einsum("i,j,ijk->k", a, b, mu), 13)

    assert np.array_equal(np.mod(S @ mul(u, v), 13), mul(np.mod(S @ v, 13), np.mod(S @ u, 13)))


def test_report_serializes():
    rep = verify_hopf(hnd(HndParams(1, 1, (1,)), Q))
    d = rep.to_dict()
    assert d["pass"] is True
    assert {r["name"] for r in d["details"]} >= {"associativity", "antipode_left", "comult_multiplicative"}
