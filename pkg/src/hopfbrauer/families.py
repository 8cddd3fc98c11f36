"""The H(n,d) family, its quasi-triangular structures and its Galois objects.

H(n,d) = K<g, x_1..x_n> with g^(2m) = 1, x_i^2 = 0, g x_i = w^(d_i) x_i g and
x_i x_j = -x_j x_i, where w is a primitive 2m-th root of unity and every d_i
is odd.  Basis index of g^j x_S is j * 2^n + S with S a bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .braiding import BraidedCategory, RMatrix, tensor_product
from .exact import FieldSpec, Matrix, OrderNotDividing
from .hopf import (
    FDAlgebra,
    FDHopf,
    HComodule,
    HComoduleAlgebra,
    HModule,
    StructureError,
    hopf_morphism_check,
)


class BadParams(ValueError):
    pass


class BadAlpha(ValueError):
    pass


class BadA(ValueError):
    pass


@dataclass(frozen=True)
class HndParams:
    n: int
    m: int
    d: tuple = ()
    s: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.n < 0 or self.m < 1:
            raise BadParams(f"need n >= 0 and m >= 1, got n={self.n}, m={self.m}")
        if len(self.d) != self.n:
            raise BadParams(f"d has {len(self.d)} entries, expected {self.n}")
        for di in self.d:
            if di % 2 == 0 or not 1 <= di < 2 * self.m:
                raise BadParams(f"d_i must be odd with 1 <= d_i < {2 * self.m}, got {di}")
        if self.s is not None and not 0 <= self.s < 2 * self.m:
            raise BadParams(f"s must lie in [0, {2 * self.m}), got {self.s}")

    @property
    def order(self) -> int:
        return 2 * self.m

    @property
    def dim(self) -> int:
        return 2 * self.m * 2 ** self.n

    def truncate(self, k: int) -> "HndParams":
        """Parameters of H(k, d_1..d_k) with the same m and s."""
        return HndParams(k, self.m, self.d[:k], self.s)

    def I(self, j: int | None = None) -> tuple:
        """1-based indices i < j with d_i + d_j = 0 mod 2m."""
        j = self.n if j is None else j
        if not 1 <= j <= self.n:
            raise BadParams(f"index {j} out of range 1..{self.n}")
        dj = self.d[j - 1]
        return tuple(i for i in range(1, j) if (self.d[i - 1] + dj) % self.order == 0)


def _omega(field: FieldSpec, order: int):
    if field.characteristic and order % field.characteristic == 0:
        raise BadParams(f"characteristic {field.characteristic} divides {order}")
    if field.omega_order == order:
        return field.omega
    try:
        return field.root_of_unity(order)
    except OrderNotDividing as e:
        raise BadParams(f"{field} has no primitive root of unity of order {order}") from e


def _sign(S: int, T: int) -> int:
    """Sign of sorting x_S x_T into increasing order."""
    inv = 0
    t = T
    while t:
        low = t & -t
        inv += bin(S & ~(2 * low - 1)).count("1")
        t ^= low
    return -1 if inv % 2 else 1


def _monomial_name(j: int, S: int, n: int) -> str:
    parts = [] if j == 0 else (["g"] if j == 1 else [f"g^{j}"])
    parts += [f"x{i + 1}" for i in range(n) if S >> i & 1]
    return "".join(parts) or "1"


def _hnd_algebra(params: HndParams, field: FieldSpec) -> FDAlgebra:
    n, N = params.n, params.order
    dim = params.dim
    w = _omega(field, N) if n else field.one
    wpow = [field.power(w, k) for k in range(N)]
    mult = field.zeros((dim, dim * dim))
    for j in range(N):
        for S in range(2 ** n):
            dS = sum(params.d[i] for i in range(n) if S >> i & 1)
            for k in range(N):
                for T in range(2 ** n):
                    if S & T:
                        continue
                    # x_S g^k = w^(-k d_S) g^k x_S
                    c = field.mul(wpow[(-k * dS) % N], field.scalar(_sign(S, T)))
                    mult[((j + k) % N) * 2 ** n + (S | T), (j * 2 ** n + S) * dim + k * 2 ** n + T] = c
    unit = field.zeros((dim, 1))
    unit[0, 0] = field.one
    names = tuple(_monomial_name(j, S, n) for j in range(N) for S in range(2 ** n))
    return FDAlgebra(Matrix(field, mult, canonical=True), Matrix(field, unit, canonical=True),
                     f"H({n},{params.d})" if n else f"K[Z{N}]", names)


def _gen(params, j=0, S=0):
    return j * 2 ** params.n + S


def hnd(params: HndParams, field: FieldSpec) -> FDHopf:
    """H(n,d) with Delta(g) = g (x) g, Delta(x_i) = 1 (x) x_i + x_i (x) g^m."""
    return _hnd_cached(HndParams(params.n, params.m, params.d), field)


@lru_cache(maxsize=None)
def _hnd_cached(params: HndParams, field: FieldSpec) -> FDHopf:
    A = _hnd_algebra(params, field)
    n, N, m = params.n, params.order, params.m
    dim = A.dim

    def e(i):
        v = field.zeros(dim)
        v[i] = field.one
        return v

    def outer(u, v):
        return field.reduce(np.multiply.outer(u, v))

    g, one, gm = e(_gen(params, 1)), e(0), e(_gen(params, m))
    dg = outer(g, g)
    dx = [field.reduce(outer(one, e(_gen(params, 0, 1 << i))) + outer(e(_gen(params, 0, 1 << i)), gm))
          for i in range(n)]
    comult = field.zeros((dim * dim, dim))
    antipode = field.zeros((dim, dim))
    counit = field.zeros((1, dim))
    ginv = e(_gen(params, N - 1))
    sx = [field.reduce(-A.product(e(_gen(params, 0, 1 << i)), gm)) for i in range(n)]
    for j in range(N):
        for S in range(2 ** n):
            idx = _gen(params, j, S)
            t = outer(one, one)
            s = one
            for _ in range(j):
                t = tensor_product(A, t, dg)
                s = A.product(ginv, s)
            for i in range(n):
                if S >> i & 1:
                    t = tensor_product(A, t, dx[i])
                    s = A.product(sx[i], s)
            comult[:, idx] = t.reshape(-1)
            antipode[:, idx] = s
            if S == 0:
                counit[0, idx] = field.one
    return FDHopf(A.mult, A.unit, Matrix(field, comult, canonical=True), Matrix(field, counit, canonical=True),
                  Matrix(field, antipode, canonical=True), A.name, A.basis_names)


def group_hopf(m: int, field: FieldSpec) -> FDHopf:
    """The group algebra of the cyclic group of order 2m."""
    return hnd(HndParams(0, m), field)


def r_s(m: int, s: int, field: FieldSpec, hopf: FDHopf | None = None) -> RMatrix:
    """R_s = (1/2m) sum_{j,t} w^(-jt) g^j (x) g^(st), placed in ``hopf`` (default K[Z_2m])."""
    N = 2 * m
    H = hopf if hopf is not None else group_hopf(m, field)
    if H.dim % N:
        raise BadParams(f"{H.name} does not contain K[Z{N}] in the expected basis")
    stride = H.dim // N
    w = _omega(field, N)
    c = field.inv(field.scalar(N))
    el = field.zeros((H.dim, H.dim))
    for j in range(N):
        for t in range(N):
            a, b = j * stride, (s * t % N) * stride
            el[a, b] = field.add(el[a, b], field.mul(c, field.power(w, (-j * t) % N)))
    return RMatrix(H, el.reshape(-1))


def qt_congruence(params: HndParams) -> set:
    """{s : s d_i = m mod 2m for every i}."""
    N = params.order
    return {s for s in range(N) if all(s * di % N == params.m for di in params.d)}


@lru_cache(maxsize=None)
def family_category(params: HndParams, field: FieldSpec) -> BraidedCategory:
    """Modules over H(n,d) braided by R_s."""
    if params.s is None:
        raise BadParams("the category needs a quasi-triangular index s")
    H = hnd(params, field)
    return BraidedCategory(H, r_s(params.m, params.s, field, H), f"mod {H.name}, s={params.s}")


def hnd_module(params: HndParams, field: FieldSpec, g, xs, name="M", basis_names=None) -> HModule:
    """Module over H(n,d) from the matrices of g and x_1..x_n (relations are checked later)."""
    H = hnd(params, field)
    g = Matrix(field, g) if not isinstance(g, Matrix) else g
    xs = [Matrix(field, x) if not isinstance(x, Matrix) else x for x in xs]
    if len(xs) != params.n:
        raise BadParams(f"need {params.n} matrices for the x_i, got {len(xs)}")
    d = g.rows
    blocks = []
    for j in range(params.order):
        gj = Matrix.identity(field, d)
        for _ in range(j):
            gj = gj @ g
        for S in range(2 ** params.n):
            blk = gj
            for i in range(params.n):
                if S >> i & 1:
                    blk = blk @ xs[i]
            blocks.append(blk.a)
    return HModule(H, Matrix(field, np.concatenate(blocks, axis=1), canonical=True), name, basis_names)


def _line_module(params: HndParams, field: FieldSpec, g_scalar, alpha=None, name="B"):
    """Two-dimensional module over H(n-1) with basis (1, v): g.v = c v, x_i.v = alpha_i 1."""
    L = params.truncate(params.n - 1)
    g = field.array([[field.one, field.zero], [field.zero, g_scalar]])
    xs = []
    for i in range(L.n):
        a = field.zero if alpha is None else field.scalar(alpha[i])
        xs.append(field.array([[field.zero, a], [field.zero, field.zero]]))
    return hnd_module(L, field, g, xs, name, ("1", "x" if name == "B" else "w"))


def _require_line(params: HndParams):
    if params.n < 1:
        raise BadParams("the braided line needs n >= 1")
    if params.s is None:
        raise BadParams("the braided line needs a quasi-triangular index s")
    if params.s not in qt_congruence(params):
        raise BadParams(f"R_{params.s} is not quasi-triangular on H(n,d) for {params}")


def _two_dim_algebra(field, a):
    """K<w : w^2 = a> on basis (1, w)."""
    mult = field.zeros((2, 4))
    mult[0, 0] = field.one  # 1 1
    mult[1, 1] = field.one  # 1 w
    mult[1, 2] = field.one  # w 1
    mult[0, 3] = field.scalar(a)  # w w
    unit = field.array([[field.one], [field.zero]])
    return Matrix(field, mult, canonical=True), Matrix(field, unit, canonical=True)


def braided_line(params: HndParams, field: FieldSpec) -> FDHopf:
    """B = K[x_n]/(x_n^2) as a Hopf algebra in modules over H(n-1, d_1..d_{n-1}), s fixed."""
    _require_line(params)
    return _line_cached(params, field)


@lru_cache(maxsize=None)
def _line_cached(params, field):
    N = params.order
    w = _omega(field, N)
    Lp = params.truncate(params.n - 1)
    cat = family_category(Lp, field)
    obj = _line_module(params, field, field.power(w, params.d[-1] % N))
    mult, unit = _two_dim_algebra(field, 0)
    z, o = field.zero, field.one
    comult = Matrix(field, [[o, z], [z, o], [z, o], [z, z]])
    counit = Matrix(field, [[o, z]])
    antipode = Matrix(field, [[o, z], [z, field.neg(o)]])
    return FDHopf(mult, unit, comult, counit, antipode, "B", ("1", "x"), obj, cat)


def c_object(a, alpha, params: HndParams, field: FieldSpec) -> HComoduleAlgebra:
    """C(a; alpha) = K<w : w^2 = a>, rho(w) = 1 (x) x_n + w (x) 1, g.w = w^(d_n) w, x_i.w = alpha_i."""
    _require_line(params)
    B = braided_line(params, field)
    n, m = params.n, params.m
    a = field.scalar(a)
    alpha = tuple(field.scalar(x) for x in (alpha if alpha is not None else [0] * (n - 1)))
    if len(alpha) != n - 1:
        raise BadAlpha(f"alpha needs {n - 1} entries, got {len(alpha)}")
    support = params.I(n)
    bad = [i + 1 for i, x in enumerate(alpha) if x != field.zero and i + 1 not in support]
    if bad:
        raise BadAlpha(f"alpha_i must vanish outside I_n = {support}; nonzero at {bad}")
    if a != field.zero and params.d[-1] != m:
        raise BadA(f"a must be 0 unless d_n = m (d_n = {params.d[-1]}, m = {m})")
    w = _omega(field, params.order)
    obj = _line_module(params, field, field.power(w, params.d[-1] % params.order), alpha, "C")
    mult, unit = _two_dim_algebra(field, a)
    name = f"C({field.format(a)};{','.join(field.format(x) for x in alpha)})"
    alg = FDAlgebra(mult, unit, name, ("1", "w"), obj, B.cat)
    z, o = field.zero, field.one
    # rows (c, b) -> c*2 + b
    coaction = Matrix(field, [[o, z], [z, o], [z, o], [z, z]])
    return HComoduleAlgebra(alg, HComodule(B, coaction, name, ("1", "w"), obj))


def gal_group_dimension(params: HndParams) -> int:
    """r_n = |I_n| + [d_n = m]."""
    if params.n < 1:
        raise BadParams("needs n >= 1")
    return len(params.I(params.n)) + (1 if params.d[-1] == params.m else 0)


def psi_iso(params: HndParams, field: FieldSpec):
    """Psi: H(n,d) -> B x H(n-1,...), together with the biproduct it lands in."""
    from .modcat import biproduct

    _require_line(params)
    H = hnd(params, field)
    B = braided_line(params, field)
    P = biproduct(B)
    L = B.cat.hopf
    dL = L.dim
    n, m = params.n, params.m

    def lvec(idx):
        v = field.zeros(P.dim)
        v[idx] = field.one
        return v

    Lp = params.truncate(n - 1)
    G = lvec(_gen(Lp, 1))
    X = [lvec(_gen(Lp, 0, 1 << i)) for i in range(n - 1)]
    X.append(lvec(1 * dL + _gen(Lp, m)))
    cols = []
    for j in range(params.order):
        for S in range(2 ** n):
            v = lvec(0)
            for _ in range(j):
                v = P.product(v, G)
            for i in range(n):
                if S >> i & 1:
                    v = P.product(v, X[i])
            cols.append(v)
    psi = Matrix(field, np.stack(cols, axis=1), canonical=True)
    return psi, H, P


def r_transport(params: HndParams, field: FieldSpec, psi: Matrix, P: FDHopf) -> bool:
    """(Psi^-1 (x) Psi^-1)(iota (x) iota)(R_s) equals R_s in H(n,d) (x) H(n,d)."""
    H = hnd(params, field)
    L = hnd(params.truncate(params.n - 1), field)
    R_L = r_s(params.m, params.s, field, L)
    iota = Matrix(field, np.eye(P.dim, L.dim, dtype=int))  # l -> 1 x l
    pinv = psi.inverse()
    lifted = (pinv @ iota).kron(pinv @ iota) @ Matrix.column(field, R_L.element)
    return np.array_equal(lifted.a[:, 0], r_s(params.m, params.s, field, H).element)


def check_psi(params: HndParams, field: FieldSpec):
    """Report of Psi as a Hopf morphism, plus invertibility and R_s transport."""
    psi, H, P = psi_iso(params, field)
    report = hopf_morphism_check(psi, H, P)
    report.add("invertible", None if psi.rank() == psi.rows == psi.cols else
               {"index": (), "lhs": [psi.rank()], "rhs": [psi.rows]})
    ok = r_transport(params, field, psi, P)
    report.add("r_transport", None if ok else {"index": (), "lhs": [], "rhs": []})
    return report
