"""Module and comodule algebras and the products built from them.

Product carriers are ordered with the left factor major, so a (x) h has
index i * dim H + j.  Every construction works in the ambient category of
its inputs, so the crossings below are braidings there.
"""

from __future__ import annotations

import numpy as np

from .braiding import BraidedCategory, RMatrix, _element_rep, check_h_linearity
from .diagram import (
    VECT,
    Act,
    Antipode,
    Braid,
    BraidInv,
    Coact,
    Coev,
    Comult,
    Counit,
    Custom,
    Diagram,
    Ev,
    Flip,
    Id,
    Mult,
    Unit,
    WireObject,
    carrier,
    compile_diagram,
    env_of,
)
from .exact import Matrix, ShapeError, kron
from .hopf import (
    AxiomReport,
    FDAlgebra,
    FDHopf,
    HComodule,
    HComoduleAlgebra,
    HModule,
    HModuleAlgebra,
    HopfMismatch,
    StructureError,
    _morphism_check,
    compare,
    compare_matrices,
    dual_hopf,
    hopf_morphism_check,
    opposite_algebra,
    verify_algebra,
    verify_comodule,
    verify_hopf,
    verify_module,
)


class BraidingNotBLinear(StructureError):
    pass


def _tensor_obj(env, *objs):
    return None if env is VECT else env.tensor(*objs)


def _compile(d, env, field):
    return compile_diagram(d, env, field)


def regular_module(H: FDHopf, name: str | None = None) -> HModule:
    """H acting on itself by left multiplication."""
    return HModule(H, H.mult, name or H.name, H.basis_names, carrier(H) if H.cat is not None else None)


def trivial_module(H: FDHopf, dim: int, name: str = "K", obj=None) -> HModule:
    """h.m = eps(h) m."""
    f = H.field
    return HModule(H, kron(H.counit, Matrix.identity(f, dim)), name, None, obj)


def tensor_module(M: HModule, N: HModule, name: str | None = None) -> HModule:
    """h.(m (x) n) = h1.m' (x) h2'.n with h2 braided past m."""
    if M.hopf is not N.hopf:
        raise HopfMismatch(f"{M.name} and {N.name} are modules over different Hopf algebras")
    H = M.hopf
    env = H.env
    Hw, Mw, Nw = carrier(H), carrier(M), carrier(N)
    d = Diagram([Hw, Mw, Nw], [
        [Comult(H), Id(Mw), Id(Nw)],
        [Id(Hw), Braid(Hw, Mw), Id(Nw)],
        [Act(M), Act(N)],
    ])
    action = _compile(d, env, H.field)
    return HModule(H, action, name or f"{M.name}(x){N.name}", None, _tensor_obj(env, Mw, Nw))


def verify_module_algebra(A: HModuleAlgebra) -> AxiomReport:
    """Algebra and module axioms, h.(ab) = (h1.a)(h2.b) and h.1 = eps(h) 1."""
    H = A.hopf
    env = env_of(A)
    f = A.field
    Hw, Aw = carrier(H), carrier(A)
    r = AxiomReport(f"module algebra {A.name}")
    r.extend(verify_algebra(A.algebra), "algebra.")
    r.extend(verify_module(A.module), "module.")
    compare(r, "action_multiplicative",
            Diagram([Hw, Aw, Aw], [[Id(Hw), Mult(A)], [Act(A.module)]]),
            Diagram([Hw, Aw, Aw], [
                [Comult(H), Id(Aw), Id(Aw)],
                [Id(Hw), Braid(Hw, Aw), Id(Aw)],
                [Act(A.module), Act(A.module)],
                [Mult(A)],
            ]), env, f)
    compare(r, "action_unital",
            Diagram([Hw], [[Id(Hw), Unit(A)], [Act(A.module)]]),
            Diagram([Hw], [[Counit(H), Unit(A)]]), env, f)
    return r


def verify_comodule_algebra(A: HComoduleAlgebra) -> AxiomReport:
    """Algebra and comodule axioms, rho(ab) = rho(a) rho(b) in A (x) H and rho(1) = 1 (x) 1."""
    H = A.hopf
    env = env_of(A)
    f = A.field
    Hw, Aw = carrier(H), carrier(A)
    co = A.comodule
    r = AxiomReport(f"comodule algebra {A.name}")
    r.extend(verify_algebra(A.algebra), "algebra.")
    r.extend(verify_comodule(co), "comodule.")
    compare(r, "coaction_multiplicative",
            Diagram([Aw, Aw], [[Mult(A)], [Coact(co)]]),
            Diagram([Aw, Aw], [
                [Coact(co), Coact(co)],
                [Id(Aw), Braid(Hw, Aw), Id(Hw)],
                [Mult(A), Mult(H)],
            ]), env, f)
    compare(r, "coaction_unital",
            Diagram([], [[Unit(A)], [Coact(co)]]),
            Diagram([], [[Unit(A), Unit(H)]]), env, f)
    return r


def trivial_module_structure(A: FDAlgebra, H: FDHopf) -> HModuleAlgebra:
    """A with h.a = eps(h) a."""
    if A.field != H.field:
        raise HopfMismatch("algebra and Hopf algebra over different fields")
    return HModuleAlgebra(A, trivial_module(H, A.dim, A.name, carrier(A) if A.cat is not None else A.obj))


def trivial_object_algebra(A: FDAlgebra, cat) -> FDAlgebra:
    """A plain algebra placed in the module category ``cat`` with l.a = eps(l) a."""
    if cat is None:
        return A
    return FDAlgebra(A.mult, A.unit, A.name, A.basis_names, trivial_module(cat.hopf, A.dim, A.name), cat)


def smash_product(A: HModuleAlgebra, name: str | None = None) -> FDAlgebra:
    """A # H with (a # h)(b # k) = a (h1.b') # h2' k."""
    H = A.hopf
    env = env_of(A)
    f = A.field
    Hw, Aw = carrier(H), carrier(A)
    d = Diagram([Aw, Hw, Aw, Hw], [
        [Id(Aw), Comult(H), Id(Aw), Id(Hw)],
        [Id(Aw), Id(Hw), Braid(Hw, Aw), Id(Hw)],
        [Id(Aw), Act(A.module), Id(Hw), Id(Hw)],
        [Mult(A), Mult(H)],
    ])
    mult = _compile(d, env, f)
    unit = kron(A.unit, H.unit)
    return FDAlgebra(mult, unit, name or f"{A.name}#{H.name}", None, _tensor_obj(env, Aw, Hw), A.cat)


def smash_embeddings(A: HModuleAlgebra, S: FDAlgebra):
    """a -> a # 1 and h -> 1 # h as matrices into the smash product."""
    H = A.hopf
    return kron(Matrix.identity(A.field, A.dim), H.unit), kron(A.unit, Matrix.identity(A.field, H.dim))


# comodules over H versus modules over H*


def module_from_comodule(N: HComodule, Hstar: FDHopf | None = None) -> HModule:
    """phi . n = n0' phi'(n1) where n0' (x) phi' is the braiding of phi (x) n0."""
    H = N.hopf
    env = env_of(N)
    Hstar = Hstar if Hstar is not None else dual_hopf(H, env)
    Hw, Nw, D = carrier(H), carrier(N), carrier(Hstar)
    d = Diagram([D, Nw], [
        [Id(D), Coact(N)],
        [Braid(D, Nw), Id(Hw)],
        [Id(Nw), Ev(Hw)],
    ])
    action = _compile(d, env, H.field)
    return HModule(Hstar, action, N.name, N.basis_names, N.obj)


def comodule_from_module(M: HModule, H: FDHopf) -> HComodule:
    """rho(n) = braiding of sum_i e_i (x) e^i . n."""
    env = env_of(M)
    Hw, Mw = carrier(H), carrier(M)
    d = Diagram([Mw], [
        [Coev(Hw), Id(Mw)],
        [Id(Hw), Act(M)],
        [Braid(Hw, Mw)],
    ])
    coaction = _compile(d, env, H.field)
    return HComodule(H, coaction, M.name, M.basis_names, M.obj)


def module_algebra_from_comodule_algebra(T: HComoduleAlgebra, Hstar: FDHopf | None = None) -> HModuleAlgebra:
    return HModuleAlgebra(T.algebra, module_from_comodule(T.comodule, Hstar))


def dual_smash(T: HComoduleAlgebra, Hstar: FDHopf | None = None):
    """T # H* and its left H-module structure.

    The H-action is h.(t # phi) = phi1''(h') t' # phi2, where t' (x) phi1' is
    the inverse braiding applied to t (x) phi1 and phi1'' (x) h' the inverse
    braiding applied to h (x) phi1'.
    """
    H = T.hopf
    env = env_of(T)
    f = T.field
    Hstar = Hstar if Hstar is not None else dual_hopf(H, env)
    TA = module_algebra_from_comodule_algebra(T, Hstar)
    S = smash_product(TA, f"{T.name}#{Hstar.name}")
    Hw, Tw, D = carrier(H), carrier(T), carrier(Hstar)
    d = Diagram([Hw, Tw, D], [
        [Id(Hw), Id(Tw), Comult(Hstar)],
        [Id(Hw), BraidInv(D, Tw), Id(D)],
        [BraidInv(D, Hw), Id(Tw), Id(D)],
        [Ev(Hw), Id(Tw), Id(D)],
    ])
    action = _compile(d, env, f)
    module = HModule(H, action, S.name, None, S.obj)
    return S, module


def dual_smash_module_algebra(T: HComoduleAlgebra, Hstar: FDHopf | None = None) -> HModuleAlgebra:
    S, module = dual_smash(T, Hstar)
    return HModuleAlgebra(S, module)


def hopf_action_on_dual(H: FDHopf, Hstar: FDHopf | None = None) -> HModule:
    """h . phi = phi1' phi2'(h'') with two inverse braidings."""
    env = H.env
    Hstar = Hstar if Hstar is not None else dual_hopf(H, env)
    Hw, D = carrier(H), carrier(Hstar)
    d = Diagram([Hw, D], [
        [Id(Hw), Comult(Hstar)],
        [BraidInv(D, Hw), Id(D)],
        [Id(D), BraidInv(D, Hw)],
        [Id(D), Ev(Hw)],
    ])
    return HModule(H, _compile(d, env, H.field), Hstar.name, Hstar.basis_names,
                   carrier(Hstar) if H.cat is not None else None)


def star_product(T: HComoduleAlgebra, Hstar: FDHopf | None = None) -> FDAlgebra:
    """(a (x) phi)(b (x) psi) = b0'' a' (x) (b1 . phi') psi on the opposite of T."""
    H = T.hopf
    env = env_of(T)
    f = T.field
    Hstar = Hstar if Hstar is not None else dual_hopf(H, env)
    act = hopf_action_on_dual(H, Hstar)
    Hw, Tw, D = carrier(H), carrier(T), carrier(Hstar)
    d = Diagram([Tw, D, Tw, D], [
        [Id(Tw), Braid(D, Tw), Id(D)],
        [Id(Tw), Coact(T.comodule), Id(D), Id(D)],
        [Braid(Tw, Tw), Act(act), Id(D)],
        [Mult(T), Mult(Hstar)],
    ])
    return FDAlgebra(_compile(d, env, f), kron(T.unit, Hstar.unit), f"{T.name}bar*{Hstar.name}",
                     None, _tensor_obj(env, Tw, D), T.cat)


def opposite_comodule_algebra(T: HComoduleAlgebra) -> HComoduleAlgebra:
    """The opposite algebra of T with the coaction of T."""
    Top = opposite_algebra(T.algebra)
    # same carrier as T, so the coaction of T still plugs in
    Top = FDAlgebra(Top.mult, Top.unit, T.name + "bar", T.algebra.basis_names, carrier(T.algebra), T.algebra.cat)
    return HComoduleAlgebra(Top, T.comodule)


def star_matches_smash(T: HComoduleAlgebra, Hstar: FDHopf | None = None) -> AxiomReport:
    """Compare the star product of T with the smash product of its opposite and H*."""
    H = T.hopf
    Hstar = Hstar if Hstar is not None else dual_hopf(H, env_of(T))
    star = star_product(T, Hstar)
    sm = smash_product(module_algebra_from_comodule_algebra(opposite_comodule_algebra(T), Hstar))
    r = AxiomReport(f"star versus smash product for {T.name}")
    n = T.dim * Hstar.dim
    compare_matrices(r, "same_multiplication", star.mult, sm.mult, (n, n))
    compare_matrices(r, "same_unit", star.unit, sm.unit, (1,))
    return r


# Radford biproduct


def majid_coaction(B) -> Matrix:
    """lambda(b) = R2 (x) R1 . b as a matrix B -> H (x) B."""
    cat = B.cat
    if not isinstance(cat, BraidedCategory):
        raise StructureError("the biproduct needs a braided Hopf algebra in a category of modules")
    H = cat.hopf
    f = H.field
    rep = cat.rep(carrier(B))
    dB = B.dim
    lam = f.zeros((H.dim * dB, dB))
    for i, j, c in cat.rmatrix.terms():
        blk = f.reduce(rep[i] * c)
        lam[j * dB:(j + 1) * dB, :] = f.reduce(lam[j * dB:(j + 1) * dB, :] + blk)
    return Matrix(f, lam, canonical=True)


def biproduct(B: FDHopf, check: bool = True) -> FDHopf:
    """The ordinary Hopf algebra B x H of a Hopf algebra B in modules over (H, R)."""
    cat = B.cat
    if not isinstance(cat, BraidedCategory):
        raise StructureError("the biproduct needs a braided Hopf algebra in a category of modules")
    H = cat.hopf
    f = H.field
    if check:
        rep = verify_hopf(B)
        if not rep:
            raise StructureError(str(rep))
        reg = regular_module(B)
        lin = check_h_linearity(B, reg, reg)
        if not lin:
            raise BraidingNotBLinear(str(lin))
    Bw = WireObject(B.name, B.dim)
    Hw = WireObject(H.name, H.dim)
    act = Custom(B.obj.action if isinstance(B.obj, HModule) else kron(H.counit, Matrix.identity(f, B.dim)),
                 (Hw, Bw), (Bw,))
    lam = Custom(majid_coaction(B), (Bw,), (Hw, Bw))
    mB, mH = Custom(B.mult, (Bw, Bw), (Bw,)), Custom(H.mult, (Hw, Hw), (Hw,))
    dB, dH = Custom(B.comult, (Bw,), (Bw, Bw)), Custom(H.comult, (Hw,), (Hw, Hw))
    sB, sH = Custom(B.antipode, (Bw,), (Bw,)), Custom(H.antipode, (Hw,), (Hw,))
    mult = _compile(Diagram([Bw, Hw, Bw, Hw], [
        [Id(Bw), dH, Id(Bw), Id(Hw)],
        [Id(Bw), Id(Hw), Flip(Hw, Bw), Id(Hw)],
        [Id(Bw), act, Id(Hw), Id(Hw)],
        [mB, mH],
    ]), VECT, f)
    comult = _compile(Diagram([Bw, Hw], [
        [dB, dH],
        [Id(Bw), lam, Id(Hw), Id(Hw)],
        [Id(Bw), Id(Hw), Flip(Bw, Hw), Id(Hw)],
        [Id(Bw), mH, Id(Bw), Id(Hw)],
    ]), VECT, f)
    antipode = _compile(Diagram([Bw, Hw], [
        [lam, Id(Hw)],
        [Id(Hw), Flip(Bw, Hw)],
        [mH, Id(Bw)],
        [sH, sB],
        [dH, Id(Bw)],
        [Id(Hw), Flip(Hw, Bw)],
        [act, Id(Hw)],
    ]), VECT, f)
    names = None
    if B.basis_names and H.basis_names:
        names = tuple(f"{b}x{h}" for b in B.basis_names for h in H.basis_names)
    return FDHopf(mult, kron(B.unit, H.unit), comult, kron(B.counit, H.counit), antipode,
                  f"{B.name}x{H.name}", names)


def biproduct_maps(B: FDHopf, P: FDHopf):
    """iota: h -> 1 x h and pi: b x h -> eps(b) h."""
    H = B.cat.hopf
    f = H.field
    I = Matrix.identity(f, H.dim)
    return kron(B.unit, I), kron(B.counit, I)


def check_biproduct(B: FDHopf, P: FDHopf) -> AxiomReport:
    H = B.cat.hopf
    iota, pi = biproduct_maps(B, P)
    r = AxiomReport(f"biproduct {P.name}")
    r.extend(verify_hopf(P), "hopf.")
    r.extend(hopf_morphism_check(iota, H, P), "iota.")
    r.extend(hopf_morphism_check(pi, P, H), "pi.")
    compare_matrices(r, "pi_iota", pi @ iota, Matrix.identity(H.field, H.dim), (H.dim,))
    return r


def lift_rmatrix(B: FDHopf, P: FDHopf):
    """(iota (x) iota)(R) in the biproduct."""
    iota, _ = biproduct_maps(B, P)
    R = B.cat.rmatrix
    return RMatrix(P, (iota.kron(iota) @ Matrix.column(P.field, R.element)).a[:, 0])


# inner actions and internal endomorphisms


def check_inner_action(A: HModuleAlgebra, fm: Matrix, f_inv: Matrix) -> AxiomReport:
    """h . a = f(h1) a' u' where a' (x) u' is the braiding of f^-1(h2) (x) a."""
    H = A.hopf
    env = env_of(A)
    fld = A.field
    Hw, Aw = carrier(H), carrier(A)
    for m in (fm, f_inv):
        if m.shape != (A.dim, H.dim):
            raise ShapeError(f"f must be {A.dim} x {H.dim}, got {m.shape}")
    F, Fi = Custom(fm, (Hw,), (Aw,)), Custom(f_inv, (Hw,), (Aw,))
    r = AxiomReport(f"inner action on {A.name}")
    eta_eps = Diagram([Hw], [[Counit(H), Unit(A)]])
    compare(r, "convolution_inverse_left", Diagram([Hw], [[Comult(H)], [F, Fi], [Mult(A)]]), eta_eps, env, fld)
    compare(r, "convolution_inverse_right", Diagram([Hw], [[Comult(H)], [Fi, F], [Mult(A)]]), eta_eps, env, fld)
    compare(r, "inner",
            Diagram([Hw, Aw], [[Act(A.module)]]),
            Diagram([Hw, Aw], [
                [Comult(H), Id(Aw)],
                [F, Fi, Id(Aw)],
                [Id(Aw), Braid(Aw, Aw)],
                [Mult(A), Id(Aw)],
                [Mult(A)],
            ]), env, fld)
    _morphism_check(r, "f_is_morphism", env, fm, (Hw,), (Aw,))
    return r


def _ambient_rep(P):
    """Representation of the ambient Hopf algebra on the carrier of P, if any."""
    cat = env_of(P)
    if isinstance(cat, BraidedCategory):
        return cat.hopf, cat.rep(carrier(P))
    return None, None


def end_algebra(P: HModule, name: str | None = None) -> HModuleAlgebra:
    """The internal endomorphism algebra [P, P] = End(P) of an H-module P.

    Basis E_ij (e_j -> e_i) at index i * dim P + j; multiplication is
    composition.  In a category of L-modules End(P) carries the conjugation
    action, and H acts by (h.f)(m) = h1 . f'(s' . m) with s = S(h2)
    braided past f.
    """
    H = P.hopf
    fld = P.field
    env = H.env
    d = P.dim
    n = d * d
    mult = fld.zeros((n, n * n))
    for i in range(d):
        for j in range(d):
            for l in range(d):
                mult[i * d + l, (i * d + j) * n + j * d + l] = fld.one
    unit = fld.zeros((n, 1))
    for i in range(d):
        unit[i * d + i, 0] = fld.one
    name = name or f"End({P.name})"
    obj = None
    L, rep = _ambient_rep(P)
    if L is not None:
        # l . f = l1 f S(l2)
        Lrep = fld.zeros((L.dim, n, n))
        delta = L.comult.a.reshape(L.dim, L.dim, L.dim)
        S = L.antipode.a
        for l in range(L.dim):
            acc = fld.zeros((n, n))
            for p, q in zip(*np.nonzero(delta[:, :, l] != 0)):
                sq = _element_rep(rep, S[:, q], fld)
                acc = fld.reduce(acc + np.kron(rep[p], sq.T) * delta[p, q, l])
            Lrep[l] = acc
        action = np.concatenate([Lrep[l] for l in range(L.dim)], axis=1)
        obj = HModule(L, Matrix(fld, action, canonical=True), name)
    alg = FDAlgebra(Matrix(fld, mult, canonical=True), Matrix(fld, unit, canonical=True), name, None, obj, H.cat)
    # H-action on End(P)
    Hw, Pw, Ew = carrier(H), carrier(P), carrier(alg)
    evalE = Custom(end_evaluation(P), (Ew, Pw), (Pw,))
    big = _compile(Diagram([Hw, Ew, Pw], [
        [Comult(H), Id(Ew), Id(Pw)],
        [Id(Hw), Antipode(H), Id(Ew), Id(Pw)],
        [Id(Hw), Braid(Hw, Ew), Id(Pw)],
        [Id(Hw), Id(Ew), Act(P)],
        [Id(Hw), evalE],
        [Act(P)],
    ]), env, fld)
    # curry the P input: action[(p' d + p), (h n + e)] = big[p', (h n + e) d + p]
    A3 = big.a.reshape(d, H.dim * n, d)
    action = np.ascontiguousarray(A3.transpose(0, 2, 1)).reshape(n, H.dim * n)
    module = HModule(H, Matrix(fld, action, canonical=True), name, None, obj)
    return HModuleAlgebra(alg, module)


def end_evaluation(P) -> Matrix:
    """End(P) (x) P -> P, f (x) m -> f(m)."""
    fld = P.field
    d = P.dim
    ev = fld.zeros((d, d * d * d))
    for i in range(d):
        for j in range(d):
            ev[i, (i * d + j) * d + j] = fld.one
    return Matrix(fld, ev, canonical=True)


def theta(P: HModule) -> Matrix:
    """The algebra map H -> End(P), h -> action of h."""
    d = P.dim
    rep = P.representation
    return Matrix(P.field, rep.reshape(P.hopf.dim, d * d).T.copy(), canonical=True)


def theta_inner_pair(P: HModule):
    """(theta, theta S), the convolution-inverse pair making the action on End(P) inner."""
    th = theta(P)
    return th, th @ P.hopf.antipode
