"""Exact scalar fields and dense linear algebra over them.

Two backends are supported: the rationals (numpy object arrays of
``fractions.Fraction``) and prime fields F_p (int64 residues in [0, p)).
Scalars are plain Python values: ``Fraction`` for Q and ``int`` for F_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class OrderNotDividing(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class ShapeError(ValueError):
    pass


class Inconsistent(ValueError):
    """A linear system has no solution."""


class Singular(ArithmeticError):
    def __init__(self, rank, size):
        super().__init__(f"singular matrix: rank {rank} < {size}")
        self.rank = rank
        self.size = size


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of F_p."""
    if not is_prime(p):
        raise NotPrime(p)
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable")


def find_root_of_unity(p: int, order: int) -> int:
    """Deterministic element of F_p of multiplicative order exactly ``order``.

    The smallest primitive root g is raised to (p-1)/order.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if order < 1 or (p - 1) % order:
        raise OrderNotDividing(f"{order} does not divide {p}-1")
    return pow(primitive_root(p), (p - 1) // order, p)


def multiplicative_order(x, field: "FieldSpec", bound: int = 10_000) -> int | None:
    x = field.scalar(x)
    if x == 0:
        return None
    y = x
    for k in range(1, bound + 1):
        if y == 1:
            return k
        y = field.mul(y, x)
    return None


# int64 products of residues stay exact for p below this bound
_INT64_SAFE_P = 1 << 20


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rational" or "prime"
    p: int | None = None
    omega_order: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise NotPrime(self.p)
            if self.omega_order is not None and (self.p - 1) % self.omega_order:
                raise OrderNotDividing(f"{self.omega_order} does not divide {self.p}-1")
        elif self.kind == "rational":
            if self.p is not None:
                raise FieldError("rational field has no modulus")
            if self.omega_order not in (None, 1, 2):
                raise OrderNotDividing("Q only has roots of unity of order 1 and 2")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational", None, 2)

    @classmethod
    def prime(cls, p: int, omega_order: int | None = None) -> "FieldSpec":
        return cls("prime", p, omega_order)

    def __str__(self):
        return "Q" if self.kind == "rational" else f"F_{self.p}"

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "prime" else 0

    @cached_property
    def omega(self):
        """The designated root of unity of order ``omega_order``."""
        if self.omega_order is None:
            return None
        return self.root_of_unity(self.omega_order)

    def root_of_unity(self, order: int):
        if self.kind == "rational":
            if order == 1:
                return Fraction(1)
            if order == 2:
                return Fraction(-1)
            raise OrderNotDividing("Q only has roots of unity of order 1 and 2")
        return find_root_of_unity(self.p, order)

    # scalars

    @property
    def dtype(self):
        if self.kind == "prime" and self.p < _INT64_SAFE_P:
            return np.int64
        return object

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    def scalar(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "rational":
            if isinstance(x, (float, np.floating)):
                raise FieldError("floats are not exact scalars")
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, (float, np.floating)):
            raise FieldError("floats are not exact scalars")
        return int(x) % self.p

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.scalar(Fraction(int(num), int(den)))
        return self.scalar(int(text))

    def format(self, x) -> str:
        return str(self.scalar(x))

    def add(self, a, b):
        return self.scalar(a + b)

    def mul(self, a, b):
        return self.scalar(a * b)

    def neg(self, a):
        return self.scalar(-a)

    def inv(self, a):
        a = self.scalar(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rational":
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k: int):
        a = self.scalar(a)
        if k < 0:
            a, k = self.inv(a), -k
        if self.kind == "rational":
            return a**k
        return pow(a, k, self.p)

    # arrays

    def array(self, data) -> np.ndarray:
        """Canonical ndarray of field elements."""
        if isinstance(data, np.ndarray) and data.dtype != object:
            if data.dtype.kind == "f":
                raise FieldError("floats are not exact scalars")
            if self.dtype is np.int64:
                return np.mod(data.astype(np.int64), self.p)
        arr = np.array(data, dtype=object)
        flat = [self.scalar(v) for v in arr.ravel()]
        out = np.empty(arr.shape, dtype=object)
        if flat:
            out.ravel()[:] = flat
        if self.dtype is np.int64:
            return out.astype(np.int64)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is np.int64:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.kind == "prime":
            return np.mod(arr, self.p)
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact (broadcasting) matrix product."""
        if self.kind == "prime" and self.dtype is np.int64:
            k = a.shape[-1]
            # float64 products of small residues are exact integers
            if (self.p - 1) ** 2 * max(k, 1) < 2**52:
                out = np.matmul(a.astype(np.float64), b.astype(np.float64))
                return np.mod(np.rint(out).astype(np.int64), self.p)
            return np.mod(np.matmul(a, b), self.p)
        if self.kind == "rational":
            return _rational_matmul(a, b)
        return self.reduce(np.matmul(a, b))

    def random_array(self, rng: np.random.Generator, shape, low: int = -3, high: int = 3):
        if self.kind == "prime":
            return rng.integers(0, self.p, size=shape).astype(self.dtype)
        return self.array(rng.integers(low, high + 1, size=shape))


_numerator = np.frompyfunc(lambda x: x.numerator, 1, 1)
_denominator = np.frompyfunc(lambda x: x.denominator, 1, 1)


def _integerize(a: np.ndarray):
    """(N, D) with a = N / D, N an object array of ints."""
    dens = {x.denominator for x in a.ravel()} if a.size else {1}
    D = math.lcm(*dens)
    if D == 1:
        return _numerator(a), 1
    return _numerator(a * D), D


def _rational_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # clear denominators and multiply integers; exact in float64 when the
    # worst-case accumulated magnitude stays below 2^52
    na, da = _integerize(a)
    nb, db = _integerize(b)
    k = a.shape[-1]
    ma = max((abs(int(x)) for x in na.ravel()), default=0)
    mb = max((abs(int(x)) for x in nb.ravel()), default=0)
    if ma * mb * max(k, 1) < 2**52:
        num = np.rint(np.matmul(na.astype(np.float64), nb.astype(np.float64))).astype(np.int64).astype(object)
    else:
        num = np.matmul(na, nb)
    den = da * db
    out = np.empty(num.shape, dtype=object)
    zero = Fraction(0)
    out.fill(zero)
    nz = np.nonzero(num != 0)
    if den == 1:
        out[nz] = [Fraction(int(x)) for x in num[nz]]
    else:
        out[nz] = [Fraction(int(x), den) for x in num[nz]]
    return out


def as_field(field: FieldSpec | None) -> FieldSpec:
    return FieldSpec.rational() if field is None else field


class Matrix:
    """Dense matrix over a FieldSpec; immutable by convention."""

    __slots__ = ("field", "a")
    __array_priority__ = 100

    def __init__(self, field: FieldSpec, data, *, canonical: bool = False):
        self.field = field
        a = data if canonical else field.array(data)
        if a.ndim != 2:
            raise ShapeError(f"matrix data must be 2-d, got shape {a.shape}")
        self.a = a

    # constructors

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, field.zeros((rows, cols)), canonical=True)

    @classmethod
    def identity(cls, field, n):
        return cls(field, field.eye(n), canonical=True)

    @classmethod
    def column(cls, field, values):
        return cls(field, field.array(list(values)).reshape(-1, 1), canonical=True)

    @classmethod
    def row(cls, field, values):
        return cls(field, field.array(list(values)).reshape(1, -1), canonical=True)

    @classmethod
    def from_columns(cls, field, columns, rows=None):
        cols = [field.array(c).reshape(-1) for c in columns]
        if not cols:
            return cls.zeros(field, rows or 0, 0)
        return cls(field, np.stack(cols, axis=1), canonical=True)

    @classmethod
    def permutation(cls, field, perm):
        """Matrix sending basis vector j to basis vector perm[j]."""
        n = len(perm)
        out = field.zeros((n, n))
        for j, i in enumerate(perm):
            out[i, j] = field.one
        return cls(field, out, canonical=True)

    # shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    def tolist(self):
        return [[self.field.scalar(v) for v in row] for row in self.a]

    def col(self, j) -> np.ndarray:
        return self.a[:, j].copy()

    def __getitem__(self, idx):
        return self.a[idx]

    # arithmetic

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other):
        if isinstance(other, np.ndarray):
            if other.shape[0] != self.cols:
                raise ShapeError(f"{self.shape} @ {other.shape}")
            return self.field.matmul(self.a, self.field.array(other))
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        return Matrix(self.field, self.field.matmul(self.a, other.a), canonical=True)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.field.reduce(self.a + other.a), canonical=True)

    def __neg__(self):
        return Matrix(self.field, self.field.reduce(-self.a), canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field.scalar(c)
        return Matrix(self.field, self.field.reduce(self.a * c), canonical=True)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.a == other.a))
        )

    __hash__ = None

    @property
    def T(self):
        return Matrix(self.field, self.a.T.copy(), canonical=True)

    def kron(self, other):
        self._check(other)
        return Matrix(self.field, self.field.reduce(np.kron(self.a, other.a)), canonical=True)

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    # linear algebra

    def rref(self):
        return row_reduce(self.field, self.a)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Matrix":
        """Basis of the right null space as the columns of a matrix."""
        return kernel_matrix(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def solve(self, b):
        return solve(self, b)

    def det(self):
        return determinant(self)


def kron(*mats: Matrix) -> Matrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.kron(m)
    return out


def hstack(mats) -> Matrix:
    mats = list(mats)
    for m in mats[1:]:
        mats[0]._check(m)
    return Matrix(mats[0].field, np.concatenate([m.a for m in mats], axis=1), canonical=True)


def vstack(mats) -> Matrix:
    mats = list(mats)
    for m in mats[1:]:
        mats[0]._check(m)
    return Matrix(mats[0].field, np.concatenate([m.a for m in mats], axis=0), canonical=True)


def row_reduce(field: FieldSpec, a: np.ndarray):
    """Reduced row echelon form. Returns (rref, pivot columns)."""
    m = a.copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    prime = field.kind == "prime"
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        piv = field.inv(m[r, c])
        m[r] = field.reduce(m[r] * piv)
        others = np.nonzero(m[:, c] != 0)[0]
        others = others[others != r]
        if others.size:
            upd = np.multiply.outer(m[others, c], m[r])
            m[others] = np.mod(m[others] - upd, field.p) if prime else m[others] - upd
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_matrix(M: Matrix) -> Matrix:
    field = M.field
    n = M.cols
    rref, pivots = M.rref()
    free = [c for c in range(n) if c not in set(pivots)]
    basis = field.zeros((n, len(free)))
    for j, f in enumerate(free):
        basis[f, j] = field.one
        for i, pc in enumerate(pivots):
            basis[pc, j] = field.scalar(-rref[i, f])
    # normalize so that the basis vectors, read as rows, are in reduced echelon form
    if free:
        basis = row_reduce(field, basis.T.copy())[0].T.copy()
    return Matrix(field, basis, canonical=True)


def kernel(M: Matrix) -> list[np.ndarray]:
    """Right null space basis in reduced echelon form, as a list of vectors."""
    K = kernel_matrix(M)
    return [K.a[:, j].copy() for j in range(K.cols)]


def rank(M: Matrix) -> int:
    return M.rank()


def inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise ShapeError(f"inverse of non-square {M.shape}")
    n = M.rows
    field = M.field
    aug = np.concatenate([M.a, field.eye(n)], axis=1)
    rref, pivots = row_reduce(field, aug)
    lead = [c for c in pivots if c < n]
    if len(lead) < n:
        raise Singular(len(lead), n)
    return Matrix(field, rref[:, n:].copy(), canonical=True)


def solve(M: Matrix, b) -> np.ndarray:
    """One solution x of M x = b (b a vector or a matrix of columns)."""
    field = M.field
    bb = b.a if isinstance(b, Matrix) else field.array(b)
    vec = bb.ndim == 1
    if vec:
        bb = bb.reshape(-1, 1)
    if bb.shape[0] != M.rows:
        raise ShapeError(f"rhs has {bb.shape[0]} rows, matrix has {M.rows}")
    n = M.cols
    aug = np.concatenate([M.a, bb], axis=1)
    rref, pivots = row_reduce(field, aug)
    if any(c >= n for c in pivots):
        raise Inconsistent("linear system has no solution")
    x = field.zeros((n, bb.shape[1]))
    for i, c in enumerate(pivots):
        x[c] = rref[i, n:]
    return x[:, 0] if vec else x


def solve_affine(M: Matrix, b) -> tuple[np.ndarray, Matrix]:
    """Particular solution and kernel basis of M x = b."""
    return solve(M, b), kernel_matrix(M)


def determinant(M: Matrix):
    if M.rows != M.cols:
        raise ShapeError("determinant of non-square matrix")
    field = M.field
    m = M.a.copy()
    n = M.rows
    det = field.one
    for c in range(n):
        nz = np.nonzero(m[c:, c] != 0)[0]
        if nz.size == 0:
            return field.zero
        k = c + nz[0]
        if k != c:
            m[[c, k]] = m[[k, c]]
            det = field.neg(det)
        det = field.mul(det, m[c, c])
        piv = field.inv(m[c, c])
        below = np.arange(c + 1, n)
        if below.size:
            factors = field.reduce(m[below, c] * piv)
            m[below] = field.reduce(m[below] - np.multiply.outer(factors, m[c]))
    return det


class Subspace:
    """A subspace given by a basis (columns), with exact coordinates."""

    def __init__(self, basis: Matrix):
        self.basis = basis
        self.field = basis.field
        # coordinate rows: the pivot rows of the transposed basis
        rref, pivots = row_reduce(self.field, basis.a.T.copy())
        if len(pivots) != basis.cols:
            raise Singular(len(pivots), basis.cols)
        self._rows = pivots
        self._solve = inverse(Matrix(self.field, basis.a[pivots, :], canonical=True))

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def ambient(self) -> int:
        return self.basis.rows

    @property
    def projector(self) -> Matrix:
        """Left inverse of the basis: ambient vectors to coordinates."""
        p = self.field.zeros((self.dim, self.ambient))
        p[:, self._rows] = self._solve.a
        return Matrix(self.field, p, canonical=True)

    def coords(self, v) -> np.ndarray:
        """Coordinates of an ambient vector; raises Inconsistent if v is outside."""
        v = self.field.array(v)
        c = self.field.matmul(self._solve.a, v[self._rows])
        if not np.array_equal(self.field.matmul(self.basis.a, c), v):
            raise Inconsistent("vector is not in the subspace")
        return c
