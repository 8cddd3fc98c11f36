"""Quasi-triangular structures and the braided category of modules they induce.

For R = sum R1 (x) R2 in H (x) H the braiding of H-modules is
m (x) n -> R2.n (x) R1.m, with inverse n (x) m -> R1.m (x) S^-1(R2).n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .diagram import (
    FLIP,
    Act,
    Braid,
    Comult,
    Custom,
    Diagram,
    Env,
    Id,
    WireObject,
    carrier,
    compile_diagram,
    first_difference,
)
from .exact import FieldSpec, Inconsistent, Matrix, ShapeError, Singular, solve
from .hopf import (
    AxiomReport,
    FDHopf,
    HModule,
    StructureError,
    _witness,
    left_mult_matrix,
    verify_module,
)


class BraidingError(StructureError):
    pass


class NotAModule(BraidingError):
    pass


class SNotInvertible(BraidingError):
    pass


# elements of tensor powers of H


def _left_ops(H: FDHopf) -> np.ndarray:
    """ops[a] = matrix of left multiplication by e_a."""
    n = H.dim
    return np.ascontiguousarray(H.mult.a.reshape(n, n, n).transpose(1, 0, 2))


def _apply_axis(field, op: np.ndarray, v: np.ndarray, axis: int) -> np.ndarray:
    moved = np.moveaxis(v, axis, 0)
    shape = moved.shape
    out = field.matmul(op, moved.reshape(shape[0], -1)).reshape((op.shape[0],) + shape[1:])
    return np.moveaxis(out, 0, axis)


def tensor_product(H: FDHopf, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Product in the algebra H^(x)k of two elements given as k-way arrays."""
    f = H.field
    ops = _left_ops(H)
    out = f.zeros(v.shape)
    for idx in zip(*np.nonzero(u != 0)):
        w = v
        for axis, a in enumerate(idx):
            w = _apply_axis(f, ops[a], w, axis)
        out = f.reduce(out + w * u[idx])
    return out


def _one(H):
    return H.unit.a[:, 0]


@dataclass(frozen=True, eq=False)
class RMatrix:
    hopf: FDHopf
    element: np.ndarray  # length dim^2, index i*dim + j for e_i (x) e_j

    def __post_init__(self):
        n = self.hopf.dim
        el = self.hopf.field.array(self.element).reshape(-1)
        if el.shape != (n * n,):
            raise ShapeError(f"R-matrix needs {n * n} entries, got {el.shape}")
        object.__setattr__(self, "element", el)

    @classmethod
    def from_terms(cls, H: FDHopf, terms):
        f = H.field
        el = f.zeros(H.dim * H.dim)
        for i, j, c in terms:
            el[i * H.dim + j] = f.add(el[i * H.dim + j], c)
        return cls(H, el)

    @classmethod
    def trivial(cls, H: FDHopf):
        return cls(H, np.kron(_one(H), _one(H)))

    @property
    def field(self) -> FieldSpec:
        return self.hopf.field

    @property
    def tensor(self) -> np.ndarray:
        n = self.hopf.dim
        return self.element.reshape(n, n)

    def terms(self):
        t = self.tensor
        return [(int(i), int(j), t[i, j]) for i, j in zip(*np.nonzero(t != 0))]

    @cached_property
    def inverse(self) -> np.ndarray | None:
        """Inverse of R in the algebra H (x) H, or None."""
        H = self.hopf
        f = H.field
        n = H.dim
        one2 = f.reduce(np.kron(_one(H), _one(H)))
        # left multiplication by R on H (x) H
        L = f.zeros((n * n, n * n))
        for i, j, c in self.terms():
            L = f.reduce(L + np.kron(left_mult_matrix(H, H.basis_vector(i)).a,
                                     left_mult_matrix(H, H.basis_vector(j)).a) * c)
        try:
            x = solve(Matrix(f, L, canonical=True), one2)
        except Inconsistent:
            return None
        xt = x.reshape(n, n)
        if not np.array_equal(tensor_product(H, xt, self.tensor), one2.reshape(n, n)):
            return None
        return x

    def flipped(self) -> "RMatrix":
        """R21."""
        return RMatrix(self.hopf, self.tensor.T.reshape(-1))


def check_qt(H: FDHopf, R: RMatrix) -> AxiomReport:
    """Quasi-triangularity axioms, each with a first failing witness."""
    if R.hopf.dim != H.dim:
        raise ShapeError("R-matrix and Hopf algebra dimensions differ")
    f = H.field
    n = H.dim
    r = AxiomReport(f"quasi-triangular {H.name}")
    Rt = f.array(R.tensor)
    one = _one(H)
    delta = H.comult.a.reshape(n, n, n)  # [p, q, i]
    R13 = f.reduce(np.einsum("ac,b->abc", Rt, one))
    R23 = f.reduce(np.einsum("a,bc->abc", one, Rt))
    R12 = f.reduce(np.einsum("ab,c->abc", Rt, one))

    def cmp3(name, lhs, rhs):
        bad = np.argwhere(lhs != rhs)
        if bad.size == 0:
            r.add(name)
        else:
            idx = tuple(int(i) for i in bad[0])
            r.add(name, {"index": idx, "lhs": [lhs[idx]], "rhs": [rhs[idx]]})

    d_left = f.reduce(_apply_axis(f, H.comult.a, Rt, 0).reshape(n, n, n))
    cmp3("comult_first", d_left, tensor_product(H, R13, R23))
    d_right = f.reduce(_apply_axis(f, H.comult.a, Rt, 1).reshape(n, n, n))
    cmp3("comult_second", d_right, tensor_product(H, R13, R12))

    witness = None
    for h in range(n):
        dh = f.array(delta[:, :, h])
        lhs = tensor_product(H, Rt, dh)
        rhs = tensor_product(H, dh.T.copy(), Rt)
        if not np.array_equal(lhs, rhs):
            witness = {"index": (h,), "lhs": list(lhs.reshape(-1)), "rhs": list(rhs.reshape(-1))}
            break
    r.add("quasi_cocommutative", witness)

    eps = H.counit.a[0]
    cmp_vec(r, "counit_first", f.matmul(eps.reshape(1, -1), Rt)[0], one)
    cmp_vec(r, "counit_second", f.matmul(Rt, eps.reshape(-1, 1))[:, 0], one)
    r.add("invertible", None if R.inverse is not None else {"index": (), "lhs": [], "rhs": []})
    return r


def cmp_vec(report, name, lhs, rhs):
    bad = np.nonzero(lhs != rhs)[0]
    if bad.size == 0:
        report.add(name)
    else:
        report.add(name, {"index": (int(bad[0]),), "lhs": list(lhs), "rhs": list(rhs)})


def is_triangular(H: FDHopf, R: RMatrix) -> bool:
    """R21 R = 1 (x) 1."""
    f = H.field
    one = _one(H)
    prod_ = tensor_product(H, R.flipped().tensor, R.tensor)
    return np.array_equal(prod_, f.reduce(np.multiply.outer(one, one)))


# braidings of modules


def representation(L: FDHopf, x) -> np.ndarray:
    """rho[l] for a module x over L; objects without an action are trivial modules."""
    f = L.field
    if isinstance(x, HModule):
        if x.hopf is not L:
            raise NotAModule(f"{x.name} is a module over {x.hopf.name}, not {L.name}")
        return x.representation
    eps = L.counit.a[0]
    return f.reduce(eps.reshape(-1, 1, 1) * f.eye(x.dim)[None, :, :])


def _element_rep(rep, vec, field):
    out = field.zeros(rep.shape[1:])
    for k in np.nonzero(vec != 0)[0]:
        out = field.reduce(out + rep[k] * vec[k])
    return out


def flip_matrix(field: FieldSpec, dm: int, dn: int) -> Matrix:
    """tau: M (x) N -> N (x) M."""
    perm = [n * dm + m for m in range(dm) for n in range(dn)]
    return Matrix.permutation(field, perm)


@dataclass(frozen=True, eq=False)
class BraidingOp:
    source: tuple
    matrix: Matrix
    inverse: Matrix


def braiding_matrix(R: RMatrix, M, N, check_modules: bool = True) -> BraidingOp:
    """Phi(m (x) n) = R2.n (x) R1.m, with the inverse formula verified."""
    L = R.hopf
    f = L.field
    for x in (M, N):
        if check_modules and isinstance(x, HModule):
            rep = verify_module(x)
            if not rep:
                raise NotAModule(str(rep))
    rM, rN = representation(L, M), representation(L, N)
    dm, dn = M.dim, N.dim
    try:
        Sinv = L.antipode_inverse
    except Singular as e:
        raise SNotInvertible(str(e)) from e
    phi = f.zeros((dn * dm, dn * dm))
    inv = f.zeros((dm * dn, dm * dn))
    for i, j, c in R.terms():
        phi = f.reduce(phi + np.kron(rN[j], rM[i]) * c)
        inv = f.reduce(inv + np.kron(rM[i], _element_rep(rN, Sinv.a[:, j], f)) * c)
    phi = Matrix(f, phi, canonical=True) @ flip_matrix(f, dm, dn)
    inv = Matrix(f, inv, canonical=True) @ flip_matrix(f, dn, dm)
    if not (inv @ phi).is_identity() or not (phi @ inv).is_identity():
        raise BraidingError(f"braiding of ({getattr(M, 'name', M)}, {getattr(N, 'name', N)}) "
                            "does not match its inverse formula")
    return BraidingOp((M, N), phi, inv)


class BraidedCategory(Env):
    """Finite-dimensional modules over ``hopf`` braided by ``rmatrix``.

    Objects are HModules over ``hopf`` or plain WireObjects (trivial action).
    Braidings, duals and tensor objects are computed on demand and cached.
    """

    def __init__(self, hopf: FDHopf, rmatrix: RMatrix, name: str | None = None):
        super().__init__()
        if rmatrix.hopf is not hopf:
            raise BraidingError("R-matrix belongs to another Hopf algebra")
        self.hopf = hopf
        self.rmatrix = rmatrix
        self.name = name or f"mod({hopf.name})"
        self._tensors = {}
        self._checked = set()

    def __repr__(self):
        return f"BraidedCategory({self.name})"

    @property
    def field(self) -> FieldSpec:
        return self.hopf.field

    def _checked_module(self, x):
        if isinstance(x, HModule) and id(x) not in self._checked:
            if x.hopf is not self.hopf:
                raise NotAModule(f"{x.name} is not a module over {self.hopf.name}")
            rep = verify_module(x)
            if not rep:
                raise NotAModule(str(rep))
            self._checked.add(id(x))
            self._keep = getattr(self, "_keep", []) + [x]

    def resolve_braiding(self, x, y):
        key = (id(x), id(y))
        hit = self._braids.get(key)
        if hit is None:
            self._checked_module(x)
            self._checked_module(y)
            op = braiding_matrix(self.rmatrix, x, y, check_modules=False)
            self._braids[key] = hit = (x, y, op.matrix, op.inverse)
        return hit[2], hit[3]

    def braiding_op(self, x, y) -> BraidingOp:
        m, inv = self.resolve_braiding(x, y)
        return BraidingOp((x, y), m, inv)

    def rep(self, x) -> np.ndarray:
        return representation(self.hopf, x)

    def make_dual(self, x):
        if not isinstance(x, HModule):
            return WireObject(getattr(x, "name", "X") + "*", x.dim)
        L = self.hopf
        f = L.field
        rep = x.representation
        S = L.antipode.a
        blocks = [_element_rep(rep, S[:, l], f).T for l in range(L.dim)]
        action = np.concatenate(blocks, axis=1)
        return HModule(L, Matrix(f, action, canonical=True), x.name + "*")

    def tensor(self, *objs):
        key = tuple(id(o) for o in objs)
        hit = self._tensors.get(key)
        if hit is not None:
            return hit[1]
        name = "(x)".join(getattr(o, "name", "X") for o in objs)
        if not any(isinstance(o, HModule) for o in objs):
            out = WireObject(name, int(np.prod([o.dim for o in objs])))
        else:
            L = self.hopf
            f = L.field
            reps = [self.rep(o) for o in objs]
            out_rep = _tensor_rep(L, reps)
            d = out_rep.shape[1]
            action = np.concatenate([out_rep[l] for l in range(L.dim)], axis=1)
            out = HModule(L, Matrix(f, action, canonical=True), name)
        self._tensors[key] = (objs, out)
        return out

    def tensor_rep(self, objs) -> np.ndarray:
        return _tensor_rep(self.hopf, [self.rep(o) for o in objs])

    def check_morphism(self, matrix, ins, outs):
        """First (l, column) where matrix fails to commute with the action, or None."""
        f = self.field
        rin = self.tensor_rep(ins) if ins else None
        rout = self.tensor_rep(outs) if outs else None
        eps = self.hopf.counit.a[0]
        for l in range(self.hopf.dim):
            a = rin[l] if rin is not None else f.array([[eps[l]]])
            b = rout[l] if rout is not None else f.array([[eps[l]]])
            lhs = f.matmul(b, matrix.a)
            rhs = f.matmul(matrix.a, a)
            bad = np.nonzero(np.any(lhs != rhs, axis=0))[0]
            if bad.size:
                j = int(bad[0])
                return {"index": (l, j), "lhs": list(lhs[:, j]), "rhs": list(rhs[:, j])}
        return None

    def monodromy(self, x, y) -> Matrix:
        """Phi_{y,x} Phi_{x,y} on x (x) y."""
        return self.resolve_braiding(y, x)[0] @ self.resolve_braiding(x, y)[0]


def _tensor_rep(L: FDHopf, reps) -> np.ndarray:
    """Diagonal action of L on a tensor product of modules."""
    f = L.field
    if len(reps) == 1:
        return reps[0]
    n = L.dim
    left = reps[0]
    right = _tensor_rep(L, reps[1:])
    delta = L.comult.a.reshape(n, n, n)  # [p, q, l]
    dl, dr = left.shape[1], right.shape[1]
    out = f.zeros((n, dl * dr, dl * dr))
    for l in range(n):
        for p, q in zip(*np.nonzero(delta[:, :, l] != 0)):
            out[l] = f.reduce(out[l] + np.kron(left[p], right[q]) * delta[p, q, l])
    return out


# braiding predicates


def tensor_action_diagram(B, M, N, env=None):
    """Diagram of b.(m (x) n) = b1.m' (x) b2'.n with the ambient braiding."""
    env = env if env is not None else B.env
    Bw, Mw, Nw = carrier(B), carrier(M), carrier(N)
    return Diagram([Bw, Mw, Nw], [
        [Comult(B), Id(Mw), Id(Nw)],
        [Id(Bw), Braid(Bw, Mw), Id(Nw)],
        [Act(M), Act(N)],
    ])


def check_h_linearity(B: FDHopf, M: HModule, N: HModule, braiding: Matrix | None = None) -> AxiomReport:
    """Is the braiding M (x) N -> N (x) M linear for the tensor action of B?"""
    env = B.env
    f = B.field
    Bw, Mw, Nw = carrier(B), carrier(M), carrier(N)
    phi = Braid(Mw, Nw) if braiding is None else Custom(braiding, (Mw, Nw), (Nw, Mw))
    lhs = Diagram([Bw, Mw, Nw], list(tensor_action_diagram(B, M, N).layers) + [[phi]])
    rhs = Diagram([Bw, Mw, Nw], [[Id(Bw), phi]] + list(tensor_action_diagram(B, N, M).layers))
    r = AxiomReport(f"{B.name}-linearity of the braiding on ({M.name}, {N.name})")
    r.add("braiding_linear", _witness(first_difference(lhs, rhs, env, f)))
    return r


def check_symmetric_pair(phi_mn: Matrix, phi_nm: Matrix) -> bool:
    """Phi_NM Phi_MN = id."""
    if phi_nm.cols != phi_mn.rows:
        raise ShapeError("braidings do not compose")
    return (phi_nm @ phi_mn).is_identity()


def check_cocommutative(H: FDHopf, phi_hh: Matrix | None = None) -> bool:
    """Delta = Phi_HH Delta."""
    if phi_hh is None:
        X = carrier(H)
        phi_hh = compile_diagram(Diagram([X, X], [[Braid(X, X)]]), H.env, H.field)
    return H.comult == phi_hh @ H.comult


def braiding_of(env: Env, x, y, field: FieldSpec) -> Matrix:
    m = env.braiding(x, y)
    if m is FLIP:
        return flip_matrix(field, x.dim, y.dim)
    return m


def braid_linearity_equivalence(H: FDHopf, modules) -> dict:
    """Both sides of the braid-linearity criterion on a finite set of H-modules.

    lhs: the braiding is H-linear on every ordered pair of the tested set.
    rhs: H is cocommutative and H is symmetric with the carrier of every module.
    The regular module of H is always added to the tested set.
    """
    env = H.env
    f = H.field
    Hw = carrier(H)
    regular = HModule(H, H.mult, H.name, obj=Hw if H.obj is not None else None)
    tested = [regular] + [m for m in modules]
    lhs = all(bool(check_h_linearity(H, a, b)) for a in tested for b in tested)
    cocomm = check_cocommutative(H, braiding_of(env, Hw, Hw, f))
    symmetric = all(
        check_symmetric_pair(braiding_of(env, Hw, carrier(m), f), braiding_of(env, carrier(m), Hw, f))
        for m in tested
    )
    return {
        "lhs": lhs,
        "rhs": cocomm and symmetric,
        "cocommutative": cocomm,
        "symmetric": symmetric,
        "tested": [m.name for m in tested],
    }
