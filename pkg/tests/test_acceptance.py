"""Acceptance criteria 1-11, one test per criterion.

Each test records a PASS/FAIL line in RESULTS. pytest prints these in its
terminal summary, and ``python3 tests/test_acceptance.py`` prints them directly.
"""
import random
import time

import pytest

from hopfbrauer.braiding import BraidedCategory, braid_linearity_equivalence, check_h_linearity, check_qt, \
    flip_matrix, is_triangular
from hopfbrauer.exact import FieldSpec, Matrix
from hopfbrauer.families import HndParams, braided_line, c_object, check_psi, group_hopf, hnd, qt_congruence, r_s
from hopfbrauer.galois import (
    CocycleData,
    SearchBudgetExceeded,
    azumaya_check,
    check_cocycle,
    cocycle_twist,
    cotensor,
    find_comodule_algebra_morphism,
    galois_invariant,
    gamma_roundtrip,
    has_normal_basis,
    is_galois,
    opposite_galois,
    regular_galois,
    upsilon,
    verify_comodule_algebra_morphism,
)
from hopfbrauer.hopf import FDAlgebra, HModule, dual_hopf, trivial_hopf, verify_hopf
from hopfbrauer.modcat import check_inner_action, dual_smash_module_algebra, end_algebra, regular_module, \
    theta_inner_pair, trivial_module, trivial_module_structure, trivial_object_algebra

Q = FieldSpec.rational()
F5 = FieldSpec.prime(5, 4)
F13 = FieldSpec.prime(13, 6)
EQUAL = HndParams(2, 3, (3, 3), 3)
UNEQUAL = HndParams(2, 3, (5, 1), 3)
SWEEDLER_LINE = HndParams(1, 1, (1,), 1)

RESULTS = {}


def run_criterion(number, title, body, limit=None):
    t0 = time.perf_counter()
    try:
        body()
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed >= limit:
            raise AssertionError(f"took {elapsed:.1f}s, limit {limit}s")
    except BaseException as exc:
        elapsed = time.perf_counter() - t0
        RESULTS[number] = f"criterion {number:2d} FAIL  {title} ({elapsed:.2f}s): {type(exc).__name__}: {exc}"
        raise
    RESULTS[number] = f"criterion {number:2d} PASS  {title} ({elapsed:.2f}s)"


def _cyclic_monodromy_ok():
    for m, field in [(1, Q), (2, F5), (3, F13)]:
        N = 2 * m
        K = group_hopf(m, field)
        w = field.root_of_unity(N)
        chars = [HModule(K, Matrix(field, [[field.power(w, a * j) for j in range(N)]]), f"chi{a}") for a in range(N)]
        for s in range(N):
            R = r_s(m, s, field, K)
            cat = BraidedCategory(K, R)
            trivial = True
            for a in range(N):
                for b in range(N):
                    val = cat.monodromy(chars[a], chars[b]).a[0, 0]
                    assert val == field.power(w, 2 * s * a * b % N), (m, s, a, b)
                    trivial &= val == field.one
            assert trivial == bool(is_triangular(K, R))


# 1
def criterion_hopf_suite():
    cases = [(group_hopf(m, f), f) for m, f in [(1, Q), (2, F5), (3, F13)]]
    cases += [(hnd(HndParams(1, 1, (1,)), Q), Q), (hnd(HndParams(2, 1, (1, 1)), Q), Q),
              (hnd(HndParams(2, 3, (3, 3)), F13), F13)]
    for H, _ in cases:
        rep = verify_hopf(H)
        assert rep, rep.failures()
        D = dual_hopf(H)
        rep = verify_hopf(D)
        assert rep, rep.failures()


# 2
def criterion_qt_congruence():
    for n, m, d in [(1, 1, (1,)), (1, 3, (3,)), (2, 3, (3, 3)), (2, 3, (5, 1))]:
        params = HndParams(n, m, d)
        field = Q if m == 1 else F13
        H = hnd(params, field)
        found = {s for s in range(2 * m) if check_qt(H, r_s(m, s, field, H))}
        assert found == qt_congruence(params), (params, found)


# 3
def criterion_bosonization():
    for params, field in [(SWEEDLER_LINE, Q), (EQUAL, F13)]:
        rep = check_psi(params, field)
        assert rep, rep.failures()
        assert rep.result("invertible").passed and rep.result("r_transport").passed


# 4
def criterion_classification():
    rng = random.Random(2024)
    pool = [HndParams(1, 1, (1,), 1), HndParams(1, 3, (3,), 3), EQUAL, UNEQUAL]
    for _ in range(20):
        params = rng.choice(pool)
        a = rng.randrange(13) if params.d[-1] == params.m else 0
        alpha = tuple(rng.randrange(13) if i + 1 in params.I() else 0 for i in range(params.n - 1))
        T = c_object(a, alpha, params, F13)
        rep = is_galois(T)
        assert rep and rep.result("coinvariants_trivial").passed and rep.result("can_invertible").passed
        assert galois_invariant(T) == (a, alpha)


# 5
def criterion_additivity():
    rng = random.Random(7)
    for params in (EQUAL, UNEQUAL):
        Hc = regular_galois(braided_line(params, F13))
        for _ in range(20):
            draws = []
            for _ in range(2):
                a = rng.randrange(13) if params.d[-1] == params.m else 0
                draws.append((a, (rng.randrange(13),)))
            (a1, al1), (a2, al2) = draws
            S, T = c_object(a1, al1, params, F13), c_object(a2, al2, params, F13)
            assert galois_invariant(cotensor(S, T)) == ((a1 + a2) % 13, ((al1[0] + al2[0]) % 13,))
        for a, alpha in [(0, (0,)), (0, (6,)), (4 if params.d[-1] == params.m else 0, (11,))]:
            T = c_object(a, alpha, params, F13)
            left = cotensor(Hc, T)
            F = find_comodule_algebra_morphism(left, T)
            assert isinstance(F, Matrix) and verify_comodule_algebra_morphism(F, left, T) and F.rank() == 2
            both = cotensor(T, opposite_galois(T))
            G = find_comodule_algebra_morphism(both, Hc)
            assert isinstance(G, Matrix) and verify_comodule_algebra_morphism(G, both, Hc) and G.rank() == 2


# 6
def criterion_normal_basis():
    try:
        for a in range(5):
            F = has_normal_basis(c_object(a, (0,), EQUAL, F13))
            assert F is not None and F.rank() == 2, a
        for alpha in (1, 2, 5, 11, 12):
            assert has_normal_basis(c_object(0, (alpha,), UNEQUAL, F13)) is None, alpha
    except SearchBudgetExceeded as exc:
        raise AssertionError(f"search budget exceeded: {exc}")


# 7
def criterion_cocycles():
    params = HndParams(1, 3, (3,), 3)
    B = braided_line(params, F13)
    for a in range(3):
        sigma = CocycleData.from_entries(B, [(0, 0, 1), (1, 1, a)])
        assert check_cocycle(sigma)
        T = cocycle_twist(sigma)
        assert is_galois(T)
        assert galois_invariant(T) == (a, ())
    bad = CocycleData.from_entries(braided_line(UNEQUAL, F13), [(0, 0, 1), (1, 1, 1)])
    assert not check_cocycle(bad)


# 8
def criterion_beattie():
    # (i) trivial action on End(K^2)
    for params, field in [(SWEEDLER_LINE, Q), (EQUAL, F13)]:
        B = braided_line(params, field)
        E = end_algebra(trivial_module(trivial_hopf(field), 2)).algebra
        A = trivial_module_structure(trivial_object_algebra(E, B.cat), B)
        U = upsilon(A)
        assert U.dim == B.dim
        F = find_comodule_algebra_morphism(U, regular_galois(B))
        assert isinstance(F, Matrix) and verify_comodule_algebra_morphism(F, U, regular_galois(B))
    # (ii) End(P) for the regular module
    for params, field in [(SWEEDLER_LINE, Q), (HndParams(1, 3, (3,), 3), F13)]:
        B = braided_line(params, field)
        U = upsilon(end_algebra(regular_module(B)))
        assert U.dim == B.dim
        F = find_comodule_algebra_morphism(U, regular_galois(B))
        assert isinstance(F, Matrix) and verify_comodule_algebra_morphism(F, U, regular_galois(B))
    # (iii) Gamma round trips
    sweedler = [regular_galois(braided_line(SWEEDLER_LINE, Q)), c_object(0, (), SWEEDLER_LINE, Q),
                c_object(3, (), SWEEDLER_LINE, Q)]
    equal = [regular_galois(braided_line(EQUAL, F13)), c_object(0, (5,), EQUAL, F13), c_object(2, (0,), EQUAL, F13)]
    for T in sweedler + equal:
        assert gamma_roundtrip(T), T.name


# 9
def criterion_azumaya():
    K = trivial_hopf(Q)
    assert azumaya_check(end_algebra(trivial_module(K, 2)))
    for a in (0, 1, 4):
        assert azumaya_check(dual_smash_module_algebra(c_object(a, (0,), EQUAL, F13)))
    KK = FDAlgebra(Matrix(Q, [[1, 0, 0, 0], [0, 0, 0, 1]]), Matrix(Q, [[1], [1]]), "KxK")
    assert not azumaya_check(KK)


# 10
def criterion_inner_action():
    for params, field in [(SWEEDLER_LINE, Q), (HndParams(1, 3, (3,), 3), F13), (UNEQUAL, F13)]:
        P = regular_module(braided_line(params, field))
        E = end_algebra(P)
        th, ths = theta_inner_pair(P)
        assert check_inner_action(E, th, ths)
        assert has_normal_basis(upsilon(E)) is not None
    for alpha in (1, 6):
        A = dual_smash_module_algebra(c_object(0, (alpha,), UNEQUAL, F13))
        U = upsilon(A)
        assert galois_invariant(U) == (0, (alpha,))
        assert has_normal_basis(U) is None


# 11
def criterion_braiding():
    from test_braiding import _hexagons, _inverse_via_r_inverse, _yang_baxter, big_module, sweedler_modules

    H4 = hnd(HndParams(1, 1, (1,)), Q)
    R4 = r_s(1, 1, Q, H4)
    mods = sweedler_modules() + [regular_module(H4)]
    for M in mods:
        for N in mods:
            for P in mods[:4]:
                assert all(_hexagons(R4, M, N, P)) and _yang_baxter(R4, M, N, P)
    big = hnd(HndParams(2, 3, (3, 3)), F13)
    Rb = r_s(3, 3, F13, big)
    ws = [big_module(e, c1, c2, "W") for e, c1, c2 in [(0, 1, 0), (2, 1, 5), (5, 0, 3)]]
    assert all(_hexagons(Rb, *ws)) and _yang_baxter(Rb, *ws)
    # naturality against right multiplications of the regular module
    from hopfbrauer.braiding import braiding_matrix
    from hopfbrauer.exact import kron
    from hopfbrauer.hopf import right_mult_matrix

    reg = regular_module(H4)
    rng = random.Random(11)
    for N in sweedler_modules():
        for _ in range(5):
            fmap = right_mult_matrix(H4, Q.array([rng.randint(-3, 3) for _ in range(4)]))
            phi = braiding_matrix(R4, reg, N).matrix
            eye = Matrix.identity(Q, N.dim)
            assert phi @ kron(fmap, eye) == kron(eye, fmap) @ phi
    # inverse braiding from the inverse R-matrix
    for N in [reg] + sweedler_modules():
        assert braiding_matrix(R4, reg, N).inverse == _inverse_via_r_inverse(R4, reg, N)
    # braid-linearity equivalence on the registered modules
    res = braid_linearity_equivalence(H4, sweedler_modules())
    assert res["lhs"] == res["rhs"]
    for params, field in [(SWEEDLER_LINE, Q), (EQUAL, F13), (UNEQUAL, F13)]:
        res = braid_linearity_equivalence(braided_line(params, field), [])
        assert res["lhs"] == res["rhs"]
    Bl = braided_line(SWEEDLER_LINE, Q)
    regB = regular_module(Bl)
    assert check_h_linearity(Bl, regB, regB) and not check_h_linearity(Bl, regB, regB, flip_matrix(Q, 2, 2))
    _cyclic_monodromy_ok()


CRITERIA = [
    (1, "Hopf verification suite with duals", criterion_hopf_suite, 10),
    (2, "QT set equals the congruence", criterion_qt_congruence, 60),
    (3, "bosonization isomorphism and R transport", criterion_bosonization, None),
    (4, "Galois classification on 20 draws", criterion_classification, None),
    (5, "cotensor additivity and group identities", criterion_additivity, 60),
    (6, "normal basis dichotomy", criterion_normal_basis, None),
    (7, "cocycle twists give C(a;0)", criterion_cocycles, None),
    (8, "Upsilon and Gamma witnesses", criterion_beattie, 300),
    (9, "Azumaya suite", criterion_azumaya, None),
    (10, "inner action versus normal basis", criterion_inner_action, None),
    (11, "braiding property suite", criterion_braiding, None),
]


@pytest.mark.parametrize("number,title,body,limit", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_acceptance(number, title, body, limit):
    run_criterion(number, title, body, limit)


if __name__ == "__main__":
    import sys

    failed = 0
    for number, title, body, limit in CRITERIA:
        try:
            run_criterion(number, title, body, limit)
        except BaseException:
            failed += 1
        print(RESULTS[number], flush=True)
    sys.exit(1 if failed else 0)
