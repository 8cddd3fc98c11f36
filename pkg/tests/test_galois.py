import pytest
from hypothesis import given, settings, strategies as st

from hopfbrauer.exact import FieldSpec, Matrix
from hopfbrauer.families import HndParams, braided_line, c_object, group_hopf, hnd
from hopfbrauer.galois import (
    CocycleData,
    GaloisError,
    NotGalois,
    Unknown,
    azumaya_check,
    check_cocycle,
    cocycle_twist,
    cotensor,
    find_comodule_algebra_morphism,
    galois_invariant,
    gamma_roundtrip,
    has_normal_basis,
    is_galois,
    make_galois,
    opposite_galois,
    regular_galois,
    upsilon,
    verify_comodule_algebra_morphism,
)
from hopfbrauer.hopf import FDAlgebra, HComodule, HComoduleAlgebra
from hopfbrauer.modcat import dual_smash_module_algebra, end_algebra, regular_module, trivial_module, \
    trivial_module_structure

Q = FieldSpec.rational()
F13 = FieldSpec.prime(13, 6)
EQUAL = HndParams(2, 3, (3, 3), 3)  # d_n = m, I_2 = {1}
UNEQUAL = HndParams(2, 3, (5, 1), 3)  # d_n != m, I_2 = {1}

residues = st.integers(0, 12)


def _draw_params(draw, params):
    a = draw(residues) if params.d[-1] == params.m else 0
    alpha = tuple(draw(residues) if i + 1 in params.I() else 0 for i in range(params.n - 1))
    return a, alpha


@pytest.mark.parametrize("params", [EQUAL, UNEQUAL], ids=["dn=m", "dn!=m"])
@settings(max_examples=15)
@given(data=st.data())
def test_c_objects_are_galois_and_classified(params, data):
    a, alpha = _draw_params(data.draw, params)
    T = c_object(a, alpha, params, F13)
    rep = is_galois(T)
    assert rep
    assert rep.result("coinvariants_trivial").passed and rep.result("can_invertible").passed
    assert galois_invariant(T) == (a, alpha)


@pytest.mark.parametrize("params", [EQUAL, UNEQUAL], ids=["dn=m", "dn!=m"])
@settings(max_examples=10)
@given(data=st.data())
def test_cotensor_adds_invariants(params, data):
    a1, al1 = _draw_params(data.draw, params)
    a2, al2 = _draw_params(data.draw, params)
    S, T = c_object(a1, al1, params, F13), c_object(a2, al2, params, F13)
    X = cotensor(S, T)
    a, alpha = galois_invariant(X)
    assert a == (a1 + a2) % 13
    assert alpha == tuple((x + y) % 13 for x, y in zip(al1, al2))


@pytest.mark.parametrize("params", [EQUAL, UNEQUAL], ids=["dn=m", "dn!=m"])
def test_group_law_identities(params):
    a, alpha = (5, (3,)) if params.d[-1] == params.m else (0, (3,))
    T = c_object(a, alpha, params, F13)
    Hc = regular_galois(braided_line(params, F13))
    assert galois_invariant(Hc) == (0, (0,))
    F = find_comodule_algebra_morphism(cotensor(Hc, T), T)
    assert isinstance(F, Matrix)
    assert verify_comodule_algebra_morphism(F, cotensor(Hc, T), T)
    op = opposite_galois(T)
    assert galois_invariant(op) == ((-a) % 13, tuple((-x) % 13 for x in alpha))
    G = find_comodule_algebra_morphism(cotensor(T, op), Hc)
    assert isinstance(G, Matrix) and G.rank() == 2


def test_distinct_classes_have_no_isomorphism():
    C1, C2 = c_object(0, (2,), UNEQUAL, F13), c_object(0, (7,), UNEQUAL, F13)
    assert find_comodule_algebra_morphism(C1, C2) is None


def test_not_galois_reports_and_raises():
    K = group_hopf(1, Q)
    # K x K with the trivial coaction a -> a (x) 1
    alg = FDAlgebra(Matrix(Q, [[1, 0, 0, 0], [0, 0, 0, 1]]), Matrix(Q, [[1], [1]]), "KxK")
    co = HComodule(K, Matrix(Q, [[1, 0], [0, 0], [0, 1], [0, 0]]), "KxK")
    T = HComoduleAlgebra(alg, co)
    rep = is_galois(T)
    assert not rep
    assert not rep.result("coinvariants_trivial").passed
    with pytest.raises(NotGalois):
        make_galois(T)


def test_cotensor_needs_commutative_cocommutative():
    H4 = regular_galois(hnd(HndParams(1, 1, (1,)), Q))
    with pytest.raises(GaloisError):
        cotensor(H4, H4)


@pytest.mark.parametrize("a", range(5))
def test_normal_basis_when_alpha_vanishes(a):
    T = c_object(a, (0,), EQUAL, F13)
    F = has_normal_basis(T)
    assert F is not None and F.rank() == 2


@pytest.mark.parametrize("alpha", [1, 2, 5, 11, 12])
def test_no_normal_basis_when_alpha_nonzero(alpha):
    assert has_normal_basis(c_object(0, (alpha,), UNEQUAL, F13)) is None


@pytest.mark.parametrize("a", range(3))
def test_cocycle_twist_gives_c_a(a):
    params = HndParams(1, 3, (3,), 3)
    B = braided_line(params, F13)
    sigma = CocycleData.from_entries(B, [(0, 0, 1), (1, 1, a)])
    assert check_cocycle(sigma)
    T = cocycle_twist(sigma)
    assert is_galois(T)
    assert galois_invariant(T) == (a, ())


def test_cocycle_rejected_when_dn_differs_from_m():
    B = braided_line(UNEQUAL, F13)
    rep = check_cocycle(CocycleData.from_entries(B, [(0, 0, 1), (1, 1, 1)]))
    assert not rep
    assert not rep.result("sigma_is_morphism").passed


def test_azumaya_matrix_versus_split():
    K = group_hopf(1, Q)
    assert azumaya_check(end_algebra(trivial_module(K, 2)))
    KK = FDAlgebra(Matrix(Q, [[1, 0, 0, 0], [0, 0, 0, 1]]), Matrix(Q, [[1], [1]]), "KxK")
    assert not azumaya_check(KK)


def test_upsilon_of_trivial_matrix_algebra():
    K = group_hopf(1, Q)
    A = trivial_module_structure(end_algebra(trivial_module(K, 2)).algebra, K)
    U = upsilon(A)
    assert U.dim == K.dim
    assert isinstance(find_comodule_algebra_morphism(U, regular_galois(K)), Matrix)


@pytest.mark.parametrize("params,field", [(HndParams(1, 1, (1,), 1), Q), (HndParams(1, 3, (3,), 3), F13)])
def test_upsilon_of_end_is_trivial_class(params, field):
    B = braided_line(params, field)
    U = upsilon(end_algebra(regular_module(B)))
    assert U.dim == B.dim
    assert has_normal_basis(U) is not None
    assert isinstance(find_comodule_algebra_morphism(U, regular_galois(B)), Matrix)


@pytest.mark.parametrize("params,field,a,alpha", [
    (HndParams(1, 1, (1,), 1), Q, 0, ()),
    (HndParams(1, 1, (1,), 1), Q, 3, ()),
    (HndParams(2, 3, (5, 1), 3), F13, 0, (4,)),
    (HndParams(2, 3, (3, 3), 3), F13, 2, (0,)),
])
def test_gamma_roundtrip(params, field, a, alpha):
    assert gamma_roundtrip(c_object(a, alpha, params, field))
    assert gamma_roundtrip(regular_galois(braided_line(params, field)))


def test_upsilon_of_dual_smash_keeps_class():
    T = c_object(0, (1,), UNEQUAL, F13)
    U = upsilon(dual_smash_module_algebra(T))
    assert has_normal_basis(U) is None
    assert galois_invariant(U) == (0, (1,))


def test_unknown_is_a_falsy_singleton():
    assert not Unknown
    assert type(Unknown)() is Unknown
