"""Command-line front end: ``hopfbrauer verify|family|galois ...``.

Every command prints one JSON document on stdout.  Exit status is 0 when
the check passes, 1 when it fails and 2 when the input cannot be used.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .braiding import check_qt
from .exact import FieldError, FieldSpec, Matrix, ShapeError
from .families import BadA, BadAlpha, BadParams, HndParams, braided_line, c_object, hnd, r_s
from .galois import (
    CocycleData,
    GaloisError,
    NotClassifiableShape,
    SearchBudgetExceeded,
    Unknown,
    azumaya_check,
    cocycle_twist,
    cotensor,
    find_comodule_algebra_morphism,
    galois_invariant,
    gamma_roundtrip,
    has_normal_basis,
    is_galois,
    opposite_galois,
    upsilon,
)
from .hopf import AxiomReport, FDHopf, StructureError, verify_algebra, verify_hopf
from .modcat import verify_comodule_algebra, verify_module_algebra

VERIFY_KINDS = ("hopf", "algebra", "qt", "module-algebra", "comodule-algebra", "galois", "azumaya")
GALOIS_SUBS = ("cotensor", "opposite", "invariant", "normal-basis", "twist", "upsilon", "roundtrip")


class InputError(Exception):
    """Raised for anything wrong with what the user handed us."""


def _report(check: str, rep: AxiomReport, seed: int, **extra) -> dict:
    d = rep.to_dict()
    fails = [r for r in d["details"] if not r["pass"]]
    out = {
        "check": check,
        "pass": d["pass"],
        "details": d["details"],
        "witness": fails[0].get("witness") if fails else None,
        "seed": seed,
        "versions": {"format": io.FORMAT_VERSION},
    }
    out.update(extra)
    return out


def _matrix_json(m: Matrix):
    return [[m.field.format(x) for x in row] for row in m.a]


# loading helpers


def _over(loader, args):
    return loader.hopf(io.read_json(args.over)) if getattr(args, "over", None) else None


def _as(loader, path, kind, over=None):
    doc = io.read_json(path)
    if kind == "hopf":
        return loader.hopf(doc)
    if kind == "algebra":
        return loader.algebra(doc)
    if kind == "module-algebra":
        return loader.module_algebra(doc, over)
    if kind == "comodule-algebra":
        return loader.comodule_algebra(doc, over)
    return loader.load(doc, over)


def _emit(doc, path):
    if path is None:
        return doc
    io.write_json(path, doc)
    return path


# verify


def cmd_verify(args) -> tuple[dict, int]:
    loader = io.Loader()
    over = _over(loader, args)
    kind = args.kind
    if kind == "hopf":
        rep = verify_hopf(_as(loader, args.file, "hopf"))
    elif kind == "algebra":
        rep = verify_algebra(_as(loader, args.file, "algebra"))
    elif kind == "qt":
        doc = io.read_json(args.file)
        H = loader.hopf(doc)
        rep = check_qt(H, loader.rmatrix(doc, H))
    elif kind == "module-algebra":
        rep = verify_module_algebra(_as(loader, args.file, "module-algebra", over))
    elif kind == "comodule-algebra":
        rep = verify_comodule_algebra(_as(loader, args.file, "comodule-algebra", over))
    elif kind == "galois":
        rep = is_galois(_as(loader, args.file, "comodule-algebra", over))
    else:
        rep = azumaya_check(_as(loader, args.file, "any", over))
    out = _report(f"verify {kind}", rep, args.seed)
    return out, 0 if out["pass"] else 1


# family


def _field(p, m):
    if p is None:
        if m > 1:
            raise InputError(f"m = {m} needs a prime field with a root of unity of order {2 * m}; pass --p")
        return FieldSpec.rational()
    return FieldSpec.prime(p, 2 * m)


def _ints(text, what):
    if text is None or text == "":
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as e:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from e


def cmd_family(args) -> tuple[dict, int]:
    d = _ints(args.d, "--d")
    params = HndParams(args.n, args.m, d, args.s)
    f = _field(args.p, args.m)
    if args.object == "hopf":
        H = hnd(params, f)
        R = r_s(args.m, args.s, f, H) if args.s is not None else None
        doc = io.dump_hopf(H, R)
        rep = verify_hopf(H)
        if R is not None:
            rep.extend(check_qt(H, R), "qt.")
    elif args.object == "line":
        B = braided_line(params, f)
        doc = io.dump_hopf(B)
        rep = verify_hopf(B)
    else:
        alpha = _ints(args.alpha, "--alpha")
        T = c_object(f.scalar(args.a), tuple(f.scalar(x) for x in alpha), params, f)
        doc = io.dump_comodule_algebra(T)
        rep = is_galois(T)
    where = _emit(doc, args.emit)
    out = _report(f"family {args.object}", rep, args.seed)
    if args.emit is None:
        out["document"] = where
    else:
        out["emitted"] = where
    return out, 0 if out["pass"] else 1


# galois


def _sigma(text, H: FDHopf):
    entries = []
    for part in filter(None, (text or "").split(";")):
        bits = part.split(",")
        if len(bits) != 3:
            raise InputError(f"--sigma entries look like i,j,c; got {part!r}")
        i, j = int(bits[0]), int(bits[1])
        if not (0 <= i < H.dim and 0 <= j < H.dim):
            raise InputError(f"--sigma index ({i},{j}) out of range")
        entries.append((i, j, H.field.parse(bits[2].strip())))
    return CocycleData.from_entries(H, entries)


def _result(check, G, args, seed):
    """Report the Galois check of a produced object and emit it."""
    rep = is_galois(G)
    out = _report(check, rep, seed)
    where = _emit(io.dump_comodule_algebra(G), args.emit)
    out["emitted" if args.emit else "document"] = where
    return out, 0 if out["pass"] else 1


def _morphism_json(F):
    if F is None:
        return None
    if F is Unknown:
        return "unknown"
    return _matrix_json(F)


def cmd_galois(args) -> tuple[dict, int]:
    loader = io.Loader()
    over = _over(loader, args)
    sub = args.sub
    seed = args.seed
    files = args.files
    need = {"cotensor": 2}.get(sub, 1)
    if len(files) != need:
        raise InputError(f"galois {sub} takes {need} file(s), got {len(files)}")

    if sub == "cotensor":
        A = _as(loader, files[0], "comodule-algebra", over)
        B = _as(loader, files[1], "comodule-algebra", over if over is not None else A.hopf)
        return _result("galois cotensor", cotensor(A, B), args, seed)
    if sub == "opposite":
        return _result("galois opposite", opposite_galois(_as(loader, files[0], "comodule-algebra", over)), args, seed)
    if sub == "invariant":
        a, alpha = galois_invariant(_as(loader, files[0], "comodule-algebra", over))
        return {"a": str(a), "alpha": [str(x) for x in alpha]}, 0
    if sub == "normal-basis":
        T = _as(loader, files[0], "comodule-algebra", over)
        F = has_normal_basis(T, seed=seed)
        rep = AxiomReport(f"normal basis {T.name}")
        rep.add("normal_basis", None if F is not None else {"index": (), "lhs": [0], "rhs": [1]})
        out = _report("galois normal-basis", rep, seed, map=_morphism_json(F))
        return out, 0 if F is not None else 1
    if sub == "twist":
        H = _as(loader, files[0], "hopf")
        return _result("galois twist", cocycle_twist(_sigma(args.sigma, H)), args, seed)
    if sub == "upsilon":
        A = _as(loader, files[0], "module-algebra", over)
        return _result("galois upsilon", upsilon(A), args, seed)
    T = _as(loader, files[0], "comodule-algebra", over)
    rep = gamma_roundtrip(T, report=True)
    out = _report("galois roundtrip", rep, seed)
    return out, 0 if out["pass"] else 1


def cmd_iso(args) -> tuple[dict, int]:
    loader = io.Loader()
    over = _over(loader, args)
    A = _as(loader, args.files[0], "comodule-algebra", over)
    B = _as(loader, args.files[1], "comodule-algebra", over if over is not None else A.hopf)
    F = find_comodule_algebra_morphism(A, B, seed=args.seed)
    rep = AxiomReport(f"{A.name} -> {B.name}")
    rep.add("isomorphism", None if isinstance(F, Matrix) else {"index": (), "lhs": [0], "rhs": [1]})
    out = _report("galois iso", rep, args.seed, map=_morphism_json(F))
    return out, 0 if isinstance(F, Matrix) else 1


# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfbrauer", description="Exact checks on finite-dimensional Hopf algebras.")
    sp = p.add_subparsers(dest="command", required=True)

    v = sp.add_parser("verify", help="run an axiom suite on a JSON file")
    v.add_argument("kind", choices=VERIFY_KINDS)
    v.add_argument("file")
    v.add_argument("--over", help="Hopf algebra file for module and comodule algebras")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(run=cmd_verify)

    fm = sp.add_parser("family", help="emit a member of the H(n, d) family")
    fm.add_argument("--n", type=int, required=True)
    fm.add_argument("--m", type=int, required=True)
    fm.add_argument("--d", default="", help="comma-separated odd exponents d1,...,dn")
    fm.add_argument("--s", type=int, default=None)
    fm.add_argument("--p", type=int, default=None, help="prime; omit for the rationals (m = 1 only)")
    fm.add_argument("--object", choices=("hopf", "line", "c"), default="hopf",
                    help="H(n, d) with R_s, the braided line B, or the Galois object C(a; alpha)")
    fm.add_argument("--a", default="0")
    fm.add_argument("--alpha", default="", help="comma-separated alpha_1,...,alpha_{n-1}")
    fm.add_argument("--emit", default=None, help="output path; the document goes to stdout otherwise")
    fm.add_argument("--seed", type=int, default=0)
    fm.set_defaults(run=cmd_family)

    g = sp.add_parser("galois", help="Galois object operations")
    g.add_argument("sub", choices=GALOIS_SUBS + ("iso",))
    g.add_argument("files", nargs="+")
    g.add_argument("--over", help="Hopf algebra file, when the inputs do not embed one")
    g.add_argument("--sigma", default="", help="twist: entries i,j,c separated by ';' (unlisted pairs are zero)")
    g.add_argument("--emit", default=None)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(run=cmd_galois)
    return p


INPUT_ERRORS = (
    InputError, io.FormatError, OSError, json.JSONDecodeError, BadParams, BadAlpha, BadA,
    ShapeError, FieldError, NotClassifiableShape, KeyError, IndexError, TypeError,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "galois" and args.sub == "iso":
        args.run = cmd_iso
    try:
        out, code = args.run(args)
    except INPUT_ERRORS as e:
        out, code = {"error": f"{type(e).__name__}: {e}", "versions": {"format": io.FORMAT_VERSION}}, 2
    except (GaloisError, StructureError, SearchBudgetExceeded) as e:
        out = {"check": f"{args.command}", "pass": False, "details": [], "witness": None,
               "error": f"{type(e).__name__}: {e}", "seed": getattr(args, "seed", 0),
               "versions": {"format": io.FORMAT_VERSION}}
        code = 1
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
