"""Layered string diagrams evaluated as exact linear maps.

A diagram is a straight-line program: a list of input wires and a list of
layers, each layer a horizontal juxtaposition of boxes covering every wire.
Layers apply top to bottom and wire order is tensor factor order, so
``(i, j) -> i * dim_j + j`` is the index convention throughout.

Evaluation never forms Kronecker products.  The state is a tensor with one
axis per wire (plus a batch axis of input basis vectors), and each box is
contracted into the axes it covers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import prod

import numpy as np

from .exact import FieldSpec, Matrix, ShapeError


class DiagramError(ValueError):
    pass


class WireMismatch(DiagramError):
    def __init__(self, layer, message):
        super().__init__(f"layer {layer}: {message}")
        self.layer = layer


class UnresolvedBox(DiagramError):
    pass


@dataclass(frozen=True)
class WireObject:
    """A plain object: a vector space of the given dimension."""

    name: str
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("wire dimension must be positive")


class _Flip:
    def __repr__(self):
        return "FLIP"


# returned by an environment when a braiding is the plain flip
FLIP = _Flip()


def same_wire(x, y) -> bool:
    if x is y:
        return True
    if x.dim != y.dim:
        return False
    if isinstance(x, WireObject) and isinstance(y, WireObject):
        return x.name == y.name
    kx, ky = getattr(x, "wire_key", None), getattr(y, "wire_key", None)
    if kx is not None and ky is not None:
        return kx() == ky()
    # a plain wire matches a structured one of the same dimension only by name
    return getattr(x, "name", None) == getattr(y, "name", None)


class Env:
    """Registry of braidings and duals used to resolve boxes.

    The base class only knows what was registered explicitly.  Braided
    categories subclass it and resolve pairs on demand.
    """

    def __init__(self):
        self._braids = {}
        self._duals = {}

    def register_braiding(self, x, y, matrix, inverse=None):
        if isinstance(matrix, Matrix) and matrix.shape != (x.dim * y.dim, x.dim * y.dim):
            raise ShapeError("braiding matrix has the wrong size")
        if inverse is None and isinstance(matrix, Matrix):
            inverse = matrix.inverse()
        self._braids[(id(x), id(y))] = (x, y, matrix, inverse)

    def register_dual(self, x, dual):
        self._duals[id(x)] = (x, dual)

    def braiding(self, x, y):
        """Matrix of the braiding x (x) y -> y (x) x, or FLIP."""
        hit = self._braids.get((id(x), id(y)))
        if hit is not None:
            return hit[2]
        return self.resolve_braiding(x, y)[0]

    def braiding_inverse(self, x, y):
        """Inverse of braiding(x, y), a map y (x) x -> x (x) y."""
        hit = self._braids.get((id(x), id(y)))
        if hit is not None:
            return hit[3]
        return self.resolve_braiding(x, y)[1]

    def resolve_braiding(self, x, y):
        raise UnresolvedBox(f"no braiding registered for ({_name(x)}, {_name(y)})")

    def dual(self, x):
        hit = self._duals.get(id(x))
        if hit is not None and hit[0] is x:
            return hit[1]
        d = self.make_dual(x)
        self._duals[id(x)] = (x, d)
        return d

    def make_dual(self, x):
        return WireObject(_name(x) + "*", x.dim)

    def tensor(self, *objs):
        return WireObject("(x)".join(_name(o) for o in objs), prod(o.dim for o in objs))

    def check_morphism(self, matrix, ins, outs):
        """First witness that a map is not a morphism of the category, or None."""
        return None

    @property
    def symmetric_flip(self) -> bool:
        return False


class VectEnv(Env):
    """Vector spaces: every braiding is the flip."""

    def resolve_braiding(self, x, y):
        return FLIP, FLIP

    def dual(self, x):
        return WireObject(_name(x) + "*", x.dim)

    @property
    def symmetric_flip(self) -> bool:
        return True


VECT = VectEnv()


def _name(x):
    return getattr(x, "name", None) or f"<{type(x).__name__} dim {x.dim}>"


def carrier(x):
    """The wire object of a structure (its carrier in the ambient category)."""
    obj = getattr(x, "obj", None)
    if obj is not None:
        return obj
    return x.wire


def env_of(x) -> Env:
    cat = getattr(x, "cat", None)
    return VECT if cat is None else cat


@dataclass(frozen=True, eq=False)
class Box:
    kind: str
    args: tuple = dc_field(default=())

    def wires(self, env: Env):
        k, a = self.kind, self.args
        if k == "id":
            return (a[0],), (a[0],)
        if k == "mult":
            w = carrier(a[0])
            return (w, w), (w,)
        if k == "unit":
            return (), (carrier(a[0]),)
        if k == "comult":
            w = carrier(a[0])
            return (w,), (w, w)
        if k == "counit":
            return (carrier(a[0]),), ()
        if k == "antipode":
            w = carrier(a[0])
            return (w,), (w,)
        if k == "act":
            m = a[0]
            return (carrier(m.hopf), carrier(m)), (carrier(m),)
        if k == "coact":
            m = a[0]
            return (carrier(m),), (carrier(m), carrier(m.hopf))
        if k in ("braid", "flip"):
            return (a[0], a[1]), (a[1], a[0])
        if k == "braid_inv":
            return (a[1], a[0]), (a[0], a[1])
        if k == "ev":
            return (env.dual(a[0]), a[0]), ()
        if k == "coev":
            return (), (a[0], env.dual(a[0]))
        if k == "custom":
            return tuple(a[1]), tuple(a[2])
        raise UnresolvedBox(f"unknown box kind {k!r}")

    def matrix(self, env: Env, field: FieldSpec):
        """Matrix of the box, FLIP, or None for an identity."""
        k, a = self.kind, self.args
        if k == "id":
            return None
        if k == "mult":
            return a[0].mult
        if k == "unit":
            return a[0].unit
        if k == "comult":
            return a[0].comult
        if k == "counit":
            return a[0].counit
        if k == "antipode":
            return a[0].antipode
        if k == "act":
            return a[0].action
        if k == "coact":
            return a[0].coaction
        if k == "flip":
            return FLIP
        if k == "braid":
            return env.braiding(a[0], a[1])
        if k == "braid_inv":
            return env.braiding_inverse(a[0], a[1])
        if k == "ev":
            n = a[0].dim
            e = field.zeros((1, n * n))
            e[0, [i * n + i for i in range(n)]] = field.one
            return Matrix(field, e, canonical=True)
        if k == "coev":
            n = a[0].dim
            e = field.zeros((n * n, 1))
            e[[i * n + i for i in range(n)], 0] = field.one
            return Matrix(field, e, canonical=True)
        if k == "custom":
            return a[0]
        raise UnresolvedBox(f"unknown box kind {k!r}")


def Id(x):
    return Box("id", (x,))


def Mult(alg):
    return Box("mult", (alg,))


def Unit(alg):
    return Box("unit", (alg,))


def Comult(coalg):
    return Box("comult", (coalg,))


def Counit(coalg):
    return Box("counit", (coalg,))


def Antipode(hopf):
    return Box("antipode", (hopf,))


def Act(module):
    return Box("act", (module,))


def Coact(comodule):
    return Box("coact", (comodule,))


def Braid(x, y):
    return Box("braid", (x, y))


def BraidInv(x, y):
    """Inverse of Braid(x, y): wires (y, x) -> (x, y)."""
    return Box("braid_inv", (x, y))


def Flip(x, y):
    return Box("flip", (x, y))


def Ev(x):
    return Box("ev", (x,))


def Coev(x):
    return Box("coev", (x,))


def Custom(matrix, ins, outs):
    ins, outs = tuple(ins), tuple(outs)
    if matrix.shape != (prod(w.dim for w in outs), prod(w.dim for w in ins)):
        raise ShapeError(f"custom box matrix {matrix.shape} does not fit its wires")
    return Box("custom", (matrix, ins, outs))


@dataclass(frozen=True)
class Diagram:
    inputs: tuple
    layers: tuple
    outputs: tuple | None = None

    def __init__(self, inputs, layers, outputs=None):
        object.__setattr__(self, "inputs", tuple(inputs))
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in layers))
        object.__setattr__(self, "outputs", None if outputs is None else tuple(outputs))

    def typecheck(self, env: Env = VECT):
        """Check wire typing; returns the wire list after every layer."""
        current = list(self.inputs)
        trace = [tuple(current)]
        for li, layer in enumerate(self.layers):
            ins = []
            outs = []
            for box in layer:
                i, o = box.wires(env)
                ins.extend(i)
                outs.extend(o)
            if len(ins) != len(current):
                raise WireMismatch(li, f"layer consumes {len(ins)} wires, {len(current)} available")
            for pos, (want, have) in enumerate(zip(ins, current)):
                if not same_wire(want, have):
                    raise WireMismatch(li, f"wire {pos}: expected {_name(want)}, got {_name(have)}")
            current = outs
            trace.append(tuple(current))
        if self.outputs is not None:
            if len(self.outputs) != len(current) or not all(
                same_wire(a, b) for a, b in zip(self.outputs, current)
            ):
                raise WireMismatch(len(self.layers), "declared outputs do not match")
        return trace

    @property
    def in_dim(self) -> int:
        return prod(w.dim for w in self.inputs)

    def then(self, other: "Diagram") -> "Diagram":
        """Vertical composition: self first, then other."""
        return Diagram(self.inputs, self.layers + other.layers, other.outputs)

    def beside(self, other: "Diagram", env: Env = VECT) -> "Diagram":
        """Horizontal juxtaposition, padding the shorter diagram with identities."""
        ta, tb = self.typecheck(env), other.typecheck(env)
        n = max(len(self.layers), len(other.layers))
        layers = []
        for k in range(n):
            left = list(self.layers[k]) if k < len(self.layers) else [Id(w) for w in ta[-1]]
            right = list(other.layers[k]) if k < len(other.layers) else [Id(w) for w in tb[-1]]
            layers.append(left + right)
        return Diagram(self.inputs + other.inputs, layers)


def _field_of(d: Diagram, env: Env):
    for layer in d.layers:
        for box in layer:
            for a in box.args:
                f = getattr(a, "field", None)
                if isinstance(f, FieldSpec):
                    return f
    raise DiagramError("cannot infer the field of a diagram without structured boxes")


# Sparse evaluation.  A batch of states is held as parallel arrays
# (batch, idx, val) where idx is the row-major index over the current wires.
# Over Q the values are integers sharing one running denominator.


def _integer_form(a: np.ndarray):
    """Rational array as (integer array, common denominator)."""
    dens = {x.denominator for x in a.ravel()} if a.size else {1}
    den = math.lcm(*dens)
    num = [int(x * den) for x in a.ravel()]
    big = max((abs(v) for v in num), default=0) >= 2**62
    out = np.array(num, dtype=object if big else np.int64).reshape(a.shape)
    return out, den


@dataclass
class _SparseBox:
    starts: np.ndarray  # column c occupies [starts[c], starts[c+1])
    rows: np.ndarray
    vals: np.ndarray
    den: int


_SPARSE_CACHE: dict = {}


def _sparse_box(m: Matrix, field: FieldSpec) -> _SparseBox:
    hit = _SPARSE_CACHE.get(id(m))
    if hit is not None and hit[0] is m:
        return hit[1]
    a = m.a
    den = 1
    if field.kind == "rational":
        a, den = _integer_form(a)
    cols, rows = np.nonzero(a.T != 0)
    counts = np.bincount(cols, minlength=a.shape[1])
    starts = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    sb = _SparseBox(starts, rows.astype(np.int64), a[rows, cols], den)
    if len(_SPARSE_CACHE) > 4096:
        _SPARSE_CACHE.clear()
    _SPARSE_CACHE[id(m)] = (m, sb)
    return sb


def _maxabs(v: np.ndarray) -> int:
    return int(np.abs(v).max()) if v.size else 0


class _State:
    def __init__(self, columns, dims, field):
        self.field = field
        self.rational = field.kind == "rational"
        self.dims = list(dims)
        self.batch = np.arange(len(columns), dtype=np.int64)
        self.idx = np.asarray(columns, dtype=np.int64).copy()
        if self.rational:
            self.val = np.ones(len(columns), dtype=np.int64)
        else:
            self.val = field.array(np.ones(len(columns), dtype=np.int64))
        self.den = 1

    def _split(self, pos, r):
        post = prod(self.dims[pos + r:])
        mid = prod(self.dims[pos:pos + r])
        rest, post_i = np.divmod(self.idx, post)
        pre_i, mid_i = np.divmod(rest, mid)
        return pre_i, mid_i, post_i, post

    def flip(self, pos):
        a, b = self.dims[pos], self.dims[pos + 1]
        pre_i, mid_i, post_i, post = self._split(pos, 2)
        i, j = np.divmod(mid_i, b)
        self.idx = ((pre_i * b + j) * a + i) * post + post_i
        self.dims[pos], self.dims[pos + 1] = b, a

    def apply(self, pos, r, out_dims, sb: _SparseBox):
        pre_i, mid_i, post_i, post = self._split(pos, r)
        counts = sb.starts[mid_i + 1] - sb.starts[mid_i]
        total = int(counts.sum())
        rep = np.repeat(np.arange(len(self.idx)), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        ptr = sb.starts[mid_i][rep] + offsets
        out_n = prod(out_dims)
        vals = self.val[rep]
        bvals = sb.vals[ptr]
        if self.rational:
            if vals.dtype != object and _maxabs(vals) * _maxabs(bvals) >= 2**62:
                vals = vals.astype(object)
            self.den *= sb.den
            vals = vals * bvals
        else:
            vals = self.field.reduce(vals * bvals)
        self.idx = (pre_i[rep] * out_n + sb.rows[ptr]) * post + post_i[rep]
        self.batch = self.batch[rep]
        self.val = vals
        self.dims = self.dims[:pos] + list(out_dims) + self.dims[pos + r:]
        self._merge()

    def _merge(self):
        if not len(self.idx):
            return
        width = prod(self.dims)
        key = self.batch * width + self.idx
        order = np.argsort(key, kind="stable")
        key = key[order]
        val = self.val[order]
        first = np.concatenate([[True], key[1:] != key[:-1]])
        starts = np.nonzero(first)[0]
        if len(starts) < len(key):
            if self.rational and val.dtype != object and _maxabs(val) * len(key) >= 2**62:
                val = val.astype(object)
            val = np.add.reduceat(val, starts)
            if not self.rational:
                val = self.field.reduce(val)
            key = key[starts]
        keep = val != 0
        key, val = key[keep], val[keep]
        self.batch, self.idx = np.divmod(key, width)
        self.val = val

    def dense(self, n_cols):
        n_out = prod(self.dims)
        f = self.field
        out = f.zeros((n_out, n_cols))
        if self.rational:
            out[self.idx, self.batch] = [Fraction(int(v), self.den) for v in self.val]
        else:
            out[self.idx, self.batch] = self.val
        return out


def evaluate(d: Diagram, env: Env, columns, field: FieldSpec | None = None) -> np.ndarray:
    """Images of the given input basis vectors, as columns of an array."""
    field = field or _field_of(d, env)
    columns = np.asarray(columns, dtype=np.int64)
    st = _State(columns, [w.dim for w in d.inputs], field)
    for layer in d.layers:
        pos = 0
        for box in layer:
            ins, outs = box.wires(env)
            m = box.matrix(env, field)
            if m is FLIP:
                st.flip(pos)
            elif m is not None:
                st.apply(pos, len(ins), [w.dim for w in outs], _sparse_box(m, field))
            pos += len(outs)
    return st.dense(len(columns))


# cap on the number of scalars in a dense block of output columns
STATE_LIMIT = 1 << 22


def _chunks(d: Diagram, env: Env):
    trace = d.typecheck(env)
    out = prod(w.dim for w in trace[-1])
    step = max(1, STATE_LIMIT // max(out, 1))
    n = d.in_dim
    for start in range(0, n, step):
        yield np.arange(start, min(n, start + step))


def compile_diagram(d: Diagram, env: Env = VECT, field: FieldSpec | None = None) -> Matrix:
    """Matrix of size (prod of output dims) x (prod of input dims)."""
    field = field or _field_of(d, env)
    parts = [evaluate(d, env, cols, field) for cols in _chunks(d, env)]
    return Matrix(field, np.concatenate(parts, axis=1), canonical=True)


compile = compile_diagram


def first_difference(d1: Diagram, d2: Diagram, env: Env = VECT, field: FieldSpec | None = None):
    """First input basis index where two diagrams differ, with both images."""
    t1, t2 = d1.typecheck(env), d2.typecheck(env)
    if len(t1[0]) != len(t2[0]) or not all(same_wire(a, b) for a, b in zip(t1[0], t2[0])):
        raise WireMismatch(0, "diagrams have different inputs")
    if len(t1[-1]) != len(t2[-1]) or not all(same_wire(a, b) for a, b in zip(t1[-1], t2[-1])):
        raise WireMismatch(len(d1.layers), "diagrams have different outputs")
    try:
        field = field or _field_of(d1, env)
    except DiagramError:
        field = _field_of(d2, env)
    step = max(1, STATE_LIMIT // max(prod(w.dim for w in t1[-1]), 1))
    n = d1.in_dim
    for start in range(0, n, step):
        cols = np.arange(start, min(n, start + step))
        a = evaluate(d1, env, cols, field)
        b = evaluate(d2, env, cols, field)
        bad = np.nonzero(np.any(a != b, axis=0))[0]
        if bad.size:
            j = bad[0]
            idx = tuple(int(i) for i in np.unravel_index(cols[j], [w.dim for w in d1.inputs]))
            return idx, a[:, j].copy(), b[:, j].copy()
    return None


def diagrams_equal(d1: Diagram, d2: Diagram, env: Env = VECT, field: FieldSpec | None = None) -> bool:
    return first_difference(d1, d2, env, field) is None


def identity_diagram(*wires) -> Diagram:
    return Diagram(wires, [[Id(w) for w in wires]])


def morphism(matrix: Matrix, ins, outs) -> Diagram:
    """A one-box diagram."""
    return Diagram(ins, [[Custom(matrix, ins, outs)]])
