"""JSON interchange for algebras, Hopf algebras, modules and comodules.

Tensors are stored sparsely with 0-based indices and scalars as strings:

    mult      [i, j, k, c]    e_i e_j has coefficient c on e_k
    unit      [k, c]
    comult    [i, j, k, c]    Delta(e_i) has coefficient c on e_j (x) e_k
    counit    [i, c]
    antipode  [i, j, c]       S(e_i) has coefficient c on e_j
    rmatrix   [i, j, c]       R has coefficient c on e_i (x) e_j
    action    [h, m, n, c]    e_h . f_m has coefficient c on f_n
    coaction  [m, n, h, c]    rho(f_m) has coefficient c on f_n (x) e_h

Structures living in modules over a quasi-triangular Hopf algebra L carry
an "ambient" document for L (with its rmatrix) and an "ambient_action" of
L on their carrier, in the format of "action".  Module and comodule
algebras name the Hopf algebra they are over in a nested "over" document.
"""

from __future__ import annotations

import json

import numpy as np

from .braiding import BraidedCategory, RMatrix
from .diagram import carrier
from .exact import FieldSpec, Matrix
from .hopf import FDAlgebra, FDHopf, HComodule, HComoduleAlgebra, HModule, HModuleAlgebra

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


# fields and sparse tensors


def field_to_json(f: FieldSpec) -> dict:
    if f.kind == "rational":
        return {"kind": "rational"}
    out = {"kind": "prime", "p": f.p}
    if f.omega_order is not None:
        out["omega_order"] = f.omega_order
    return out


def field_from_json(d) -> FieldSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise FormatError("field must be an object with a 'kind'")
    if d["kind"] == "rational":
        return FieldSpec.rational()
    if d["kind"] == "prime":
        return FieldSpec.prime(int(d["p"]), d.get("omega_order"))
    raise FormatError(f"unknown field kind {d['kind']!r}")


def _entries(f: FieldSpec, arr: np.ndarray):
    return [[int(i) for i in idx] + [f.format(arr[idx])] for idx in zip(*np.nonzero(arr != 0))]


def _dense(f: FieldSpec, entries, shape, what):
    arr = f.zeros(shape)
    for e in entries:
        if not isinstance(e, list) or len(e) != len(shape) + 1:
            raise FormatError(f"{what}: entry {e!r} should have {len(shape)} indices and a scalar")
        idx = tuple(int(i) for i in e[:-1])
        if any(not 0 <= i < n for i, n in zip(idx, shape)):
            raise FormatError(f"{what}: index {idx} out of range for shape {shape}")
        arr[idx] = f.add(arr[idx], f.scalar(str(e[-1])))
    return arr


# structure maps <-> tensors


def _mult_tensor(m: Matrix, n):  # [i, j, k]
    return m.a.reshape(n, n, n).transpose(1, 2, 0)


def _comult_tensor(m: Matrix, n):  # [i, j, k]
    return m.a.reshape(n, n, n).transpose(2, 0, 1)


def _action_tensor(a: Matrix, h, n):  # [h, m, m']
    return a.a.reshape(n, h, n).transpose(1, 2, 0)


def _coaction_tensor(c: Matrix, n, h):  # [m, m', h]
    return c.a.reshape(n, h, n).transpose(2, 0, 1)


def _mult_matrix(f, t, n):
    return Matrix(f, np.ascontiguousarray(t.transpose(2, 0, 1)).reshape(n, n * n), canonical=True)


def _comult_matrix(f, t, n):
    return Matrix(f, np.ascontiguousarray(t.transpose(1, 2, 0)).reshape(n * n, n), canonical=True)


def _action_matrix(f, t, h, n):
    return Matrix(f, np.ascontiguousarray(t.transpose(2, 0, 1)).reshape(n, h * n), canonical=True)


def _coaction_matrix(f, t, n, h):
    return Matrix(f, np.ascontiguousarray(t.transpose(1, 2, 0)).reshape(n * h, n), canonical=True)


# dumping


def _ambient(x, out):
    cat = getattr(x, "cat", None)
    if isinstance(cat, BraidedCategory):
        out["ambient"] = dump_hopf(cat.hopf, cat.rmatrix)
        rep = cat.rep(carrier(x))
        out["ambient_action"] = _entries(cat.field, rep.transpose(0, 2, 1))
    return out


def _algebra_part(A, out):
    f, n = A.field, A.dim
    out.update({
        "field": field_to_json(f),
        "name": A.name,
        "dim": n,
        "mult": _entries(f, _mult_tensor(A.mult, n)),
        "unit": _entries(f, A.unit.a[:, 0]),
    })
    names = getattr(A, "basis_names", None)
    if names:
        out["basis"] = list(names)
    return out


def dump_algebra(A) -> dict:
    return _ambient(A, _algebra_part(A, {"format": FORMAT_VERSION}))


def dump_hopf(H: FDHopf, rmatrix: RMatrix | None = None) -> dict:
    f, n = H.field, H.dim
    out = _algebra_part(H, {"format": FORMAT_VERSION})
    out["comult"] = _entries(f, _comult_tensor(H.comult, n))
    out["counit"] = _entries(f, H.counit.a[0])
    out["antipode"] = _entries(f, H.antipode.a.T)
    if rmatrix is not None:
        out["rmatrix"] = _entries(f, rmatrix.tensor)
    return _ambient(H, out)


def dump_comodule_algebra(T) -> dict:
    if not isinstance(T, HComoduleAlgebra):
        T = T.algebra
    H = T.hopf
    out = _algebra_part(T, {"format": FORMAT_VERSION})
    out["coaction"] = _entries(T.field, _coaction_tensor(T.coaction, T.dim, H.dim))
    out["over"] = dump_hopf(H)
    return _ambient(T, out)


def dump_module_algebra(A: HModuleAlgebra) -> dict:
    H = A.hopf
    out = _algebra_part(A, {"format": FORMAT_VERSION})
    out["action"] = _entries(A.field, _action_tensor(A.action, H.dim, A.dim))
    out["over"] = dump_hopf(H)
    return _ambient(A, out)


def dump(obj, rmatrix: RMatrix | None = None) -> dict:
    if isinstance(obj, FDHopf):
        return dump_hopf(obj, rmatrix)
    if isinstance(obj, HModuleAlgebra):
        return dump_module_algebra(obj)
    if isinstance(obj, HComoduleAlgebra) or hasattr(obj, "coaction"):
        return dump_comodule_algebra(obj)
    return dump_algebra(obj)


# loading


class Loader:
    """Builds objects from documents, sharing ambient categories between them."""

    def __init__(self):
        self._categories = {}
        self._hopfs = {}

    def category(self, doc) -> BraidedCategory:
        key = json.dumps(doc, sort_keys=True)
        hit = self._categories.get(key)
        if hit is None:
            L = self._plain_hopf(doc)
            if "rmatrix" not in doc:
                raise FormatError("an ambient Hopf algebra needs an 'rmatrix'")
            R = RMatrix(L, _dense(L.field, doc["rmatrix"], (L.dim, L.dim), "rmatrix").reshape(-1))
            hit = self._categories[key] = BraidedCategory(L, R)
        return hit

    def _header(self, doc):
        if not isinstance(doc, dict):
            raise FormatError("document must be a JSON object")
        if doc.get("format", FORMAT_VERSION) != FORMAT_VERSION:
            raise FormatError(f"unsupported format version {doc.get('format')!r}")
        for key in ("field", "dim", "mult", "unit"):
            if key not in doc:
                raise FormatError(f"missing key {key!r}")
        f = field_from_json(doc["field"])
        n = int(doc["dim"])
        if n < 1:
            raise FormatError("dim must be positive")
        return f, n

    def _carrier(self, doc, f, n, name):
        if "ambient" not in doc:
            return None, None
        cat = self.category(doc["ambient"])
        L = cat.hopf
        if L.field != f:
            raise FormatError("ambient Hopf algebra is over a different field")
        t = _dense(f, doc.get("ambient_action", []), (L.dim, n, n), "ambient_action")
        if "ambient_action" not in doc:
            eps = L.counit.a[0]
            t = f.reduce(eps[:, None, None] * f.eye(n)[None])
        return HModule(L, _action_matrix(f, t, L.dim, n), name), cat

    def _algebra(self, doc):
        f, n = self._header(doc)
        name = doc.get("name", "A")
        mult = _mult_matrix(f, _dense(f, doc["mult"], (n, n, n), "mult"), n)
        unit = Matrix(f, _dense(f, doc["unit"], (n,), "unit").reshape(n, 1), canonical=True)
        obj, cat = self._carrier(doc, f, n, name)
        names = tuple(doc["basis"]) if "basis" in doc else None
        return f, n, name, mult, unit, obj, cat, names

    def _plain_hopf(self, doc):
        return self.hopf({k: v for k, v in doc.items() if k not in ("ambient", "ambient_action")})

    def hopf(self, doc) -> FDHopf:
        key = json.dumps(doc, sort_keys=True)
        hit = self._hopfs.get(key)
        if hit is not None:
            return hit
        f, n, name, mult, unit, obj, cat, names = self._algebra(doc)
        for k in ("comult", "counit", "antipode"):
            if k not in doc:
                raise FormatError(f"a Hopf algebra needs {k!r}")
        comult = _comult_matrix(f, _dense(f, doc["comult"], (n, n, n), "comult"), n)
        counit = Matrix(f, _dense(f, doc["counit"], (n,), "counit").reshape(1, n), canonical=True)
        antipode = Matrix(f, _dense(f, doc["antipode"], (n, n), "antipode").T.copy(), canonical=True)
        H = FDHopf(mult, unit, comult, counit, antipode, name, names, obj, cat)
        self._hopfs[key] = H
        return H

    def rmatrix(self, doc, H: FDHopf) -> RMatrix:
        if "rmatrix" not in doc:
            raise FormatError("document has no 'rmatrix'")
        return RMatrix(H, _dense(H.field, doc["rmatrix"], (H.dim, H.dim), "rmatrix").reshape(-1))

    def algebra(self, doc) -> FDAlgebra:
        f, n, name, mult, unit, obj, cat, names = self._algebra(doc)
        return FDAlgebra(mult, unit, name, names, obj, cat)

    def _over(self, doc, over):
        if over is None:
            if "over" not in doc:
                raise FormatError("the Hopf algebra is missing: give an 'over' document")
            over = doc["over"]
        return over if isinstance(over, FDHopf) else self.hopf(over)

    def comodule_algebra(self, doc, over=None) -> HComoduleAlgebra:
        if "coaction" not in doc and "comult" in doc:
            # a Hopf document stands for H coacting on itself
            from .galois import regular_galois

            return regular_galois(self.hopf(doc)).algebra
        H = self._over(doc, over)
        A = self.algebra(doc)
        if "coaction" not in doc:
            raise FormatError("a comodule algebra needs 'coaction'")
        if A.cat is not H.cat:
            raise FormatError("comodule algebra and Hopf algebra live in different categories")
        co = _coaction_matrix(A.field, _dense(A.field, doc["coaction"], (A.dim, A.dim, H.dim), "coaction"),
                              A.dim, H.dim)
        return HComoduleAlgebra(A, HComodule(H, co, A.name, A.basis_names, A.obj))

    def module_algebra(self, doc, over=None) -> HModuleAlgebra:
        H = self._over(doc, over)
        A = self.algebra(doc)
        if "action" not in doc:
            raise FormatError("a module algebra needs 'action'")
        if A.cat is not H.cat:
            raise FormatError("module algebra and Hopf algebra live in different categories")
        act = _action_matrix(A.field, _dense(A.field, doc["action"], (H.dim, A.dim, A.dim), "action"),
                             H.dim, A.dim)
        return HModuleAlgebra(A, HModule(H, act, A.name, A.basis_names, A.obj))

    def load(self, doc, over=None):
        """Infer the kind of structure from the keys present."""
        if "coaction" in doc:
            return self.comodule_algebra(doc, over)
        if "action" in doc:
            return self.module_algebra(doc, over)
        if all(k in doc for k in ("comult", "counit", "antipode")):
            return self.hopf(doc)
        return self.algebra(doc)


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: malformed JSON ({e})") from e


def write_json(path: str, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
