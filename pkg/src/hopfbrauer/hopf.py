"""Finite-dimensional algebras, coalgebras and Hopf algebras by structure maps.

Structure maps are stored as matrices acting on tensor powers:
``mult`` is n x n^2 (column i*n+j holds e_i e_j), ``comult`` is n^2 x n,
``unit`` is n x 1, ``counit`` is 1 x n and ``antipode`` is n x n.

Every structure may live in a braided category ``cat`` (None means vector
spaces with the flip).  Its carrier ``obj`` is then an object of that
category; axioms are checked with that category's braiding.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .diagram import (
    VECT,
    Act,
    Antipode,
    Braid,
    Coact,
    Comult,
    Counit,
    Custom,
    Diagram,
    Env,
    Ev,
    Id,
    Mult,
    Unit,
    WireObject,
    carrier,
    compile_diagram,
    env_of,
    first_difference,
)
from .exact import FieldSpec, Matrix, ShapeError, kron


class StructureError(ValueError):
    pass


class HopfMismatch(StructureError):
    pass


# reports


@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: dict | None = None

    def __str__(self):
        mark = "pass" if self.passed else "FAIL"
        extra = ""
        if self.witness is not None:
            w = self.witness
            extra = (f"  at {tuple(w.get('index', ()))}: lhs=[{', '.join(map(str, w.get('lhs', [])))}]"
                     f" rhs=[{', '.join(map(str, w.get('rhs', [])))}]")
        return f"{mark}  {self.name}{extra}"

    def to_dict(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {"index": list(w.get("index", ())),
                              "lhs": [str(x) for x in w.get("lhs", [])],
                              "rhs": [str(x) for x in w.get("rhs", [])]}
        return out


def plain(x):
    """A numpy scalar as the matching Python value."""
    if isinstance(x, np.integer):
        return int(x)
    return x


def _plain_witness(w):
    if w is None:
        return None
    w = dict(w)
    w["index"] = tuple(int(i) for i in w.get("index", ()))
    for k in ("lhs", "rhs"):
        w[k] = [plain(x) for x in w.get(k, [])]
    return w


@dataclass
class AxiomReport:
    """Outcome of a batch of axiom checks; truthy iff every check passed."""

    subject: str = ""
    results: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.passed

    def add(self, name, witness=None, passed=None):
        if passed is None:
            passed = witness is None
        self.results.append(AxiomResult(name, passed, _plain_witness(witness)))
        return self

    def extend(self, other: "AxiomReport", prefix: str = ""):
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.name, r.passed, r.witness))
        return self

    def failures(self):
        return [r for r in self.results if not r.passed]

    def result(self, name) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"subject": self.subject, "pass": self.passed, "details": [r.to_dict() for r in self.results]}

    def __str__(self):
        head = f"{self.subject}: {'pass' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + str(r) for r in self.results])


def _witness(diff):
    if diff is None:
        return None
    idx, lhs, rhs = diff
    return {"index": idx, "lhs": list(lhs), "rhs": list(rhs)}


def compare(report, name, d1, d2, env, field):
    report.add(name, _witness(first_difference(d1, d2, env, field)))


def compare_matrices(report, name, lhs: Matrix, rhs: Matrix, in_dims=None):
    """Record the first column where two matrices differ."""
    if lhs.shape != rhs.shape:
        raise ShapeError(f"{name}: {lhs.shape} vs {rhs.shape}")
    bad = np.nonzero(np.any(lhs.a != rhs.a, axis=0))[0]
    if bad.size == 0:
        report.add(name)
        return
    j = int(bad[0])
    idx = tuple(int(i) for i in np.unravel_index(j, in_dims)) if in_dims else (j,)
    report.add(name, {"index": idx, "lhs": list(lhs.a[:, j]), "rhs": list(rhs.a[:, j])})


# structures


def _check_shape(m: Matrix, shape, what):
    if not isinstance(m, Matrix):
        raise TypeError(f"{what} must be a Matrix")
    if m.shape != shape:
        raise ShapeError(f"{what} has shape {m.shape}, expected {shape}")


class _Carried:
    """Common carrier plumbing for structures living in a category."""

    @property
    def field(self) -> FieldSpec:
        raise NotImplementedError

    @cached_property
    def wire(self):
        return WireObject(self.name, self.dim)

    @property
    def carrier(self):
        return carrier(self)

    @property
    def env(self) -> Env:
        return env_of(self)


@dataclass(frozen=True, eq=False)
class FDAlgebra(_Carried):
    mult: Matrix
    unit: Matrix
    name: str = "A"
    basis_names: tuple | None = None
    obj: object = None
    cat: object = None

    def __post_init__(self):
        n = self.unit.rows
        _check_shape(self.mult, (n, n * n), "mult")
        _check_shape(self.unit, (n, 1), "unit")

    @property
    def dim(self) -> int:
        return self.unit.rows

    @property
    def field(self) -> FieldSpec:
        return self.mult.field

    @property
    def mult_tensor(self) -> np.ndarray:
        """mu[i, j, k] = coefficient of e_k in e_i e_j."""
        n = self.dim
        return self.mult.a.T.reshape(n, n, n)

    @classmethod
    def from_tensor(cls, field, mult_tensor, unit, **kw):
        t = field.array(mult_tensor)
        n = t.shape[0]
        return cls(Matrix(field, t.reshape(n * n, n).T.copy(), canonical=True),
                   Matrix.column(field, unit), **kw)

    def product(self, u, v) -> np.ndarray:
        return product(self, u, v)

    @property
    def one(self) -> np.ndarray:
        return self.unit.a[:, 0].copy()


@dataclass(frozen=True, eq=False)
class FDCoalgebra(_Carried):
    comult: Matrix
    counit: Matrix
    name: str = "C"
    basis_names: tuple | None = None
    obj: object = None
    cat: object = None

    def __post_init__(self):
        n = self.counit.cols
        _check_shape(self.comult, (n * n, n), "comult")
        _check_shape(self.counit, (1, n), "counit")

    @property
    def dim(self) -> int:
        return self.counit.cols

    @property
    def field(self) -> FieldSpec:
        return self.comult.field

    @property
    def comult_tensor(self) -> np.ndarray:
        """delta[i, j, k] = coefficient of e_j (x) e_k in Delta(e_i)."""
        n = self.dim
        return self.comult.a.T.reshape(n, n, n)


@dataclass(frozen=True, eq=False)
class FDHopf(_Carried):
    mult: Matrix
    unit: Matrix
    comult: Matrix
    counit: Matrix
    antipode: Matrix
    name: str = "H"
    basis_names: tuple | None = None
    obj: object = None
    cat: object = None

    def __post_init__(self):
        n = self.unit.rows
        _check_shape(self.mult, (n, n * n), "mult")
        _check_shape(self.unit, (n, 1), "unit")
        _check_shape(self.comult, (n * n, n), "comult")
        _check_shape(self.counit, (1, n), "counit")
        _check_shape(self.antipode, (n, n), "antipode")
        fields = {m.field for m in (self.mult, self.unit, self.comult, self.counit, self.antipode)}
        if len(fields) != 1:
            raise StructureError("structure maps over different fields")

    @property
    def dim(self) -> int:
        return self.unit.rows

    @property
    def field(self) -> FieldSpec:
        return self.mult.field

    @cached_property
    def algebra(self) -> FDAlgebra:
        return FDAlgebra(self.mult, self.unit, self.name, self.basis_names, carrier(self), self.cat)

    @cached_property
    def coalgebra(self) -> FDCoalgebra:
        return FDCoalgebra(self.comult, self.counit, self.name, self.basis_names, carrier(self), self.cat)

    @property
    def mult_tensor(self):
        return self.algebra.mult_tensor

    @property
    def comult_tensor(self):
        return self.coalgebra.comult_tensor

    def product(self, u, v):
        return product(self, u, v)

    @property
    def one(self):
        return self.unit.a[:, 0].copy()

    def basis_vector(self, i) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def index(self, label: str) -> int:
        if self.basis_names is None:
            raise KeyError(label)
        return list(self.basis_names).index(label)

    @cached_property
    def antipode_inverse(self) -> Matrix:
        return self.antipode.inverse()


@dataclass(frozen=True, eq=False)
class HModule(_Carried):
    """Left module: action is dim x (hopf.dim * dim), column h*dim+m holds e_h . f_m."""

    hopf: FDHopf
    action: Matrix
    name: str = "M"
    basis_names: tuple | None = None
    obj: object = None

    def __post_init__(self):
        n = self.action.rows
        _check_shape(self.action, (n, self.hopf.dim * n), "action")

    @property
    def dim(self) -> int:
        return self.action.rows

    @property
    def field(self) -> FieldSpec:
        return self.action.field

    @property
    def cat(self):
        return self.hopf.cat

    @property
    def wire(self):
        # a module over a Hopf algebra of vector spaces is itself an object
        # of the module category, so it serves as its own wire
        if self.hopf.cat is None:
            return self
        return WireObject(self.name, self.dim)

    def wire_key(self):
        return ("module", id(self.hopf), self.action.a.tobytes())

    def act(self, h) -> Matrix:
        """Matrix of the basis element h (or of an element vector h)."""
        n = self.dim
        if isinstance(h, (int, np.integer)):
            return Matrix(self.field, self.action.a[:, h * n:(h + 1) * n].copy(), canonical=True)
        blocks = self.action.a.reshape(n, self.hopf.dim, n)
        out = self.field.zeros((n, n))
        for k in np.nonzero(np.asarray(h) != 0)[0]:
            out = self.field.reduce(out + blocks[:, k, :] * h[k])
        return Matrix(self.field, out, canonical=True)

    @cached_property
    def representation(self) -> np.ndarray:
        """rho[h] = matrix of e_h, shape (hopf.dim, dim, dim)."""
        n = self.dim
        return np.ascontiguousarray(self.action.a.reshape(n, self.hopf.dim, n).transpose(1, 0, 2))


@dataclass(frozen=True, eq=False)
class HComodule(_Carried):
    """Right comodule: coaction is (dim * hopf.dim) x dim."""

    hopf: FDHopf
    coaction: Matrix
    name: str = "M"
    basis_names: tuple | None = None
    obj: object = None

    def __post_init__(self):
        n = self.coaction.cols
        _check_shape(self.coaction, (n * self.hopf.dim, n), "coaction")

    @property
    def dim(self) -> int:
        return self.coaction.cols

    @property
    def field(self) -> FieldSpec:
        return self.coaction.field

    @property
    def cat(self):
        return self.hopf.cat


class _AlgebraWith(_Carried):
    @property
    def mult(self):
        return self.algebra.mult

    @property
    def unit(self):
        return self.algebra.unit

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field

    @property
    def name(self):
        return self.algebra.name

    @property
    def obj(self):
        return self.algebra.obj

    @property
    def wire(self):
        return carrier(self.algebra)

    @property
    def cat(self):
        return self.algebra.cat

    @property
    def one(self):
        return self.algebra.one


@dataclass(frozen=True, eq=False)
class HModuleAlgebra(_AlgebraWith):
    algebra: FDAlgebra
    module: HModule

    def __post_init__(self):
        if self.module.dim != self.algebra.dim:
            raise StructureError("module and algebra carriers differ")

    @property
    def hopf(self):
        return self.module.hopf

    @property
    def action(self):
        return self.module.action


@dataclass(frozen=True, eq=False)
class HComoduleAlgebra(_AlgebraWith):
    algebra: FDAlgebra
    comodule: HComodule

    def __post_init__(self):
        if self.comodule.dim != self.algebra.dim:
            raise StructureError("comodule and algebra carriers differ")

    @property
    def hopf(self):
        return self.comodule.hopf

    @property
    def coaction(self):
        return self.comodule.coaction


# element arithmetic


def product(alg, u, v) -> np.ndarray:
    f = alg.field
    uv = f.reduce(np.kron(f.array(u), f.array(v)))
    return f.matmul(alg.mult.a, uv.reshape(-1, 1))[:, 0]


def left_mult_matrix(alg, u) -> Matrix:
    """Matrix of x -> u x."""
    f = alg.field
    n = alg.dim
    m = alg.mult.a.reshape(n, n, n)  # [k, i, j]
    u = f.array(u)
    out = f.zeros((n, n))
    for i in np.nonzero(u != 0)[0]:
        out = f.reduce(out + m[:, i, :] * u[i])
    return Matrix(f, out, canonical=True)


def right_mult_matrix(alg, u) -> Matrix:
    """Matrix of x -> x u."""
    f = alg.field
    n = alg.dim
    m = alg.mult.a.reshape(n, n, n)
    u = f.array(u)
    out = f.zeros((n, n))
    for j in np.nonzero(u != 0)[0]:
        out = f.reduce(out + m[:, :, j] * u[j])
    return Matrix(f, out, canonical=True)


def power(alg, u, k: int) -> np.ndarray:
    out = alg.unit.a[:, 0].copy()
    for _ in range(k):
        out = product(alg, out, u)
    return out


# verifiers


def _env(x, env):
    return env if env is not None else env_of(x)


def _morphism_check(report, name, env, matrix, ins, outs):
    w = env.check_morphism(matrix, ins, outs)
    if w is not None or not env.symmetric_flip:
        report.add(name, w)


def verify_algebra(A, env: Env | None = None) -> AxiomReport:
    env = _env(A, env)
    X = carrier(A)
    f = A.field
    r = AxiomReport(f"algebra {A.name}")
    compare(r, "associativity",
            Diagram([X, X, X], [[Mult(A), Id(X)], [Mult(A)]]),
            Diagram([X, X, X], [[Id(X), Mult(A)], [Mult(A)]]), env, f)
    compare(r, "left_unit", Diagram([X], [[Unit(A), Id(X)], [Mult(A)]]), Diagram([X], [[Id(X)]]), env, f)
    compare(r, "right_unit", Diagram([X], [[Id(X), Unit(A)], [Mult(A)]]), Diagram([X], [[Id(X)]]), env, f)
    _morphism_check(r, "mult_is_morphism", env, A.mult, (X, X), (X,))
    _morphism_check(r, "unit_is_morphism", env, A.unit, (), (X,))
    return r


def verify_coalgebra(C, env: Env | None = None) -> AxiomReport:
    env = _env(C, env)
    X = carrier(C)
    f = C.field
    r = AxiomReport(f"coalgebra {C.name}")
    compare(r, "coassociativity",
            Diagram([X], [[Comult(C)], [Comult(C), Id(X)]]),
            Diagram([X], [[Comult(C)], [Id(X), Comult(C)]]), env, f)
    compare(r, "left_counit", Diagram([X], [[Comult(C)], [Counit(C), Id(X)]]), Diagram([X], [[Id(X)]]), env, f)
    compare(r, "right_counit", Diagram([X], [[Comult(C)], [Id(X), Counit(C)]]), Diagram([X], [[Id(X)]]), env, f)
    _morphism_check(r, "comult_is_morphism", env, C.comult, (X,), (X, X))
    _morphism_check(r, "counit_is_morphism", env, C.counit, (X,), ())
    return r


def _middle(H, X, braiding):
    if braiding is None:
        return Braid(X, X)
    return Custom(braiding, (X, X), (X, X))


def verify_bialgebra(H, env: Env | None = None, braiding: Matrix | None = None) -> AxiomReport:
    env = _env(H, env)
    X = carrier(H)
    f = H.field
    r = AxiomReport(f"bialgebra {H.name}")
    r.extend(verify_algebra(H, env))
    r.extend(verify_coalgebra(H, env))
    compare(r, "comult_multiplicative",
            Diagram([X, X], [[Mult(H)], [Comult(H)]]),
            Diagram([X, X], [[Comult(H), Comult(H)], [Id(X), _middle(H, X, braiding), Id(X)],
                             [Mult(H), Mult(H)]]), env, f)
    compare(r, "comult_unital", Diagram([], [[Unit(H)], [Comult(H)]]),
            Diagram([], [[Unit(H), Unit(H)]]), env, f)
    compare(r, "counit_multiplicative", Diagram([X, X], [[Mult(H)], [Counit(H)]]),
            Diagram([X, X], [[Counit(H), Counit(H)]]), env, f)
    compare(r, "counit_unital", Diagram([], [[Unit(H)], [Counit(H)]]), Diagram([], []), env, f)
    return r


def verify_hopf(H: FDHopf, env: Env | None = None, braiding: Matrix | None = None) -> AxiomReport:
    """All Hopf axioms; the middle crossing is the ambient braiding unless given."""
    env = _env(H, env)
    X = carrier(H)
    f = H.field
    r = verify_bialgebra(H, env, braiding)
    r.subject = f"hopf {H.name}"
    eta_eps = Diagram([X], [[Counit(H)], [Unit(H)]])
    compare(r, "antipode_left", Diagram([X], [[Comult(H)], [Antipode(H), Id(X)], [Mult(H)]]), eta_eps, env, f)
    compare(r, "antipode_right", Diagram([X], [[Comult(H)], [Id(X), Antipode(H)], [Mult(H)]]), eta_eps, env, f)
    _morphism_check(r, "antipode_is_morphism", env, H.antipode, (X,), (X,))
    return r


def is_commutative(A, env: Env | None = None) -> bool:
    env = _env(A, env)
    X = carrier(A)
    return first_difference(Diagram([X, X], [[Mult(A)]]),
                            Diagram([X, X], [[Braid(X, X)], [Mult(A)]]), env, A.field) is None


def is_cocommutative(C, env: Env | None = None) -> bool:
    env = _env(C, env)
    X = carrier(C)
    return first_difference(Diagram([X], [[Comult(C)]]),
                            Diagram([X], [[Comult(C)], [Braid(X, X)]]), env, C.field) is None


# constructions


def trivial_hopf(field: FieldSpec, name: str = "K") -> FDHopf:
    one = Matrix(field, [[1]])
    return FDHopf(one, one, one, one, one, name, ("1",))


def opposite_algebra(A, braiding: Matrix | None = None, env: Env | None = None) -> FDAlgebra:
    """Same unit, multiplication precomposed with the braiding of A with itself."""
    env = _env(A, env)
    X = carrier(A)
    if braiding is None:
        braiding = compile_diagram(Diagram([X, X], [[Braid(X, X)]]), env, A.field)
    n = A.dim
    if braiding.shape != (n * n, n * n):
        raise ShapeError("braiding must be dim^2 x dim^2")
    return FDAlgebra(A.mult @ braiding, A.unit, A.name + "op", getattr(A, "basis_names", None),
                     getattr(A, "obj", None), getattr(A, "cat", None))


def dual_hopf(H: FDHopf, env: Env | None = None) -> FDHopf:
    """The Hopf algebra on the coordinate dual H*, with the ambient braiding.

    (phi psi)(h) = phi(h1') psi'(h2) where h1' (x) psi' is the braiding of
    psi (x) h1.  The coproduct is the solution of Q Delta*(phi) = phi o mu for
    the pairing Q of H* (x) H* with H (x) H, which is the identity matrix when
    the braiding is the flip.
    """
    env = _env(H, env)
    X = carrier(H)
    D = env.dual(X)
    f = H.field
    n = H.dim
    pair3 = compile_diagram(
        Diagram([D, D, X], [[Id(D), Id(D), Comult(H)], [Id(D), Braid(D, X), Id(X)], [Ev(X), Ev(X)]]), env, f)
    # pair3[0, (phi, psi, h)] = (phi psi)(h)
    mult = Matrix(f, pair3.a.reshape(n * n, n).T.copy(), canonical=True)
    Q = compile_diagram(Diagram([D, D, X, X], [[Id(D), Braid(D, X), Id(X)], [Ev(X), Ev(X)]]), env, f)
    Qm = Matrix(f, Q.a.reshape(n * n, n * n).T.copy(), canonical=True)  # rows (h,k), cols (phi,psi)
    comult = Qm.inverse() @ H.mult.T
    names = None if H.basis_names is None else tuple(b + "*" for b in H.basis_names)
    return FDHopf(mult, H.counit.T, comult, H.unit.T, H.antipode.T, H.name + "*", names,
                  D if env is not VECT else None, H.cat)


def hopf_morphism_check(fm: Matrix, H1: FDHopf, H2: FDHopf) -> AxiomReport:
    """f mu = mu (f (x) f), f eta = eta, (f (x) f) Delta = Delta f, eps f = eps, f S = S f."""
    if fm.shape != (H2.dim, H1.dim):
        raise ShapeError(f"morphism has shape {fm.shape}, expected {(H2.dim, H1.dim)}")
    r = AxiomReport(f"hopf morphism {H1.name} -> {H2.name}")
    ff = kron(fm, fm)
    n1 = H1.dim
    compare_matrices(r, "multiplicative", fm @ H1.mult, H2.mult @ ff, (n1, n1))
    compare_matrices(r, "unital", fm @ H1.unit, H2.unit, (1,))
    compare_matrices(r, "comultiplicative", ff @ H1.comult, H2.comult @ fm, (n1,))
    compare_matrices(r, "counital", H2.counit @ fm, H1.counit, (n1,))
    compare_matrices(r, "antipode", fm @ H1.antipode, H2.antipode @ fm, (n1,))
    return r


def algebra_morphism_check(fm: Matrix, A1, A2) -> AxiomReport:
    r = AxiomReport(f"algebra morphism {A1.name} -> {A2.name}")
    n1 = A1.dim
    compare_matrices(r, "multiplicative", fm @ A1.mult, A2.mult @ kron(fm, fm), (n1, n1))
    compare_matrices(r, "unital", fm @ A1.unit, A2.unit, (1,))
    return r


def convolution(H, f1: Matrix, f2: Matrix, A, env: Env | None = None) -> Matrix:
    """Convolution mu_A (f1 (x) f2) Delta_H of two maps H -> A."""
    return A.mult @ kron(f1, f2) @ H.comult


def verify_module(M: HModule, env: Env | None = None) -> AxiomReport:
    """(hk).m = h.(k.m), 1.m = m, and the action is a morphism of the ambient category."""
    env = _env(M, env)
    H = M.hopf
    X, Hw = carrier(M), carrier(H)
    f = M.field
    r = AxiomReport(f"module {M.name}")
    compare(r, "action_associative",
            Diagram([Hw, Hw, X], [[Mult(H), Id(X)], [Act(M)]]),
            Diagram([Hw, Hw, X], [[Id(Hw), Act(M)], [Act(M)]]), env, f)
    compare(r, "action_unital", Diagram([X], [[Unit(H), Id(X)], [Act(M)]]), Diagram([X], [[Id(X)]]), env, f)
    _morphism_check(r, "action_is_morphism", env, M.action, (Hw, X), (X,))
    return r


def verify_comodule(M: HComodule, env: Env | None = None) -> AxiomReport:
    env = _env(M, env)
    H = M.hopf
    X, Hw = carrier(M), carrier(H)
    f = M.field
    r = AxiomReport(f"comodule {M.name}")
    compare(r, "coaction_coassociative",
            Diagram([X], [[Coact(M)], [Coact(M), Id(Hw)]]),
            Diagram([X], [[Coact(M)], [Id(X), Comult(H)]]), env, f)
    compare(r, "coaction_counital", Diagram([X], [[Coact(M)], [Id(X), Counit(H)]]), Diagram([X], [[Id(X)]]), env, f)
    _morphism_check(r, "coaction_is_morphism", env, M.coaction, (X,), (X, Hw))
    return r
