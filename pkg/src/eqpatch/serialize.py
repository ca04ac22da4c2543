"""JSON encodings for rings, matrices, modules, equalizer objects, cocycles and finite categories.

Scalars are decimal strings ("3", "-1/2").  Polynomial-type elements are
``{"num": [...], "den": [...]}`` (ascending coefficients); Laurent elements
may instead use ``{"coeffs": [...], "offset": k}`` and are written that way.
Decoders raise :class:`ParseError` naming the JSON path of the offending value.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .birkhoff import Cocycle
from .equalizer import EqContext, EqObject
from .errors import EqPatchError, ParseError
from .fincat import FinCat, FinFunctor
from .matrix import Mat
from .modcat import ModuleMap, PresentedModule
from .rings import FUNCTION_KINDS, Laurent, RingDesc, RingElem, field_by_name

RING_KINDS = ("poly", "laurent", "local", "ratfunc")


def _fail(path: str, msg: str):
    raise ParseError(f"{path if path.startswith('$') else '$' + path}: {msg}")


def _get(d: Any, key: str, path: str):
    if not isinstance(d, dict):
        _fail(path, f"expected an object, got {type(d).__name__}")
    if key not in d:
        _fail(path, f"missing key {key!r}")
    return d[key]


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, f"expected an integer, got {x!r}")
    return x


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        _fail(path, f"expected a list, got {type(x).__name__}")
    return x


# -- rings and scalars ----------------------------------------------------------------------


def field_name(k: RingDesc) -> str:
    return "q" if k.kind == "Q" else f"f{k.p}"


def encode_ring(R: RingDesc) -> dict:
    if R.kind in FUNCTION_KINDS:
        return {"kind": R.kind, "field": field_name(R.base), "var": R.var}
    return {"kind": "field", "field": field_name(R)}


def decode_ring(d: Any, path: str = "") -> RingDesc:
    kind = _get(d, "kind", path)
    try:
        k = field_by_name(str(_get(d, "field", path)))
    except ValueError as e:
        _fail(f"{path}.field", str(e))
    if kind == "field":
        return k
    if kind not in RING_KINDS:
        _fail(f"{path}.kind", f"unknown ring kind {kind!r}")
    var = d.get("var", "t")
    if var not in ("t", "s"):
        _fail(f"{path}.var", f"variable must be 't' or 's', got {var!r}")
    return RingDesc(kind, base=k, var=var)


def encode_scalar(c) -> str:
    return str(c)


def decode_scalar(x: Any, path: str):
    if isinstance(x, bool):
        _fail(path, f"expected a number, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            _fail(path, f"malformed scalar {x!r}")
    _fail(path, f"expected a decimal string, got {x!r}")


def encode_elem(x: RingElem) -> dict:
    if x.ring.kind == "laurent":
        off, cs = x.laurent_coeffs()
        return {"coeffs": [encode_scalar(c) for c in cs], "offset": off}
    return {"num": [encode_scalar(c) for c in x.num], "den": [encode_scalar(c) for c in x.den]}


def decode_elem(R: RingDesc, d: Any, path: str = "") -> RingElem:
    if isinstance(d, (int, str)) and not isinstance(d, bool):
        return R.elem((decode_scalar(d, path),))
    if not isinstance(d, dict):
        _fail(path, f"expected an element object, got {type(d).__name__}")
    try:
        if "coeffs" in d:
            if R.kind != "laurent":
                _fail(path, f"coeffs/offset form is only for Laurent rings, not {R}")
            cs = [decode_scalar(c, f"{path}.coeffs[{i}]") for i, c in enumerate(_list(d["coeffs"], f"{path}.coeffs"))]
            return R.laurent(cs, _int(d.get("offset", 0), f"{path}.offset"))
        num = [decode_scalar(c, f"{path}.num[{i}]") for i, c in enumerate(_list(_get(d, "num", path), f"{path}.num"))]
        den = [decode_scalar(c, f"{path}.den[{i}]") for i, c in enumerate(_list(d.get("den", [1]), f"{path}.den"))]
        return R.elem(num, den)
    except ParseError:
        raise
    except (EqPatchError, ValueError, ZeroDivisionError) as e:
        _fail(path, f"not an element of {R}: {e}")


# -- matrices and modules -------------------------------------------------------------------


def encode_matrix(m: Mat, with_ring: bool = True) -> dict:
    d = {"rows": m.rows, "cols": m.cols, "entries": [[encode_elem(x) for x in row] for row in m.tolist()]}
    if with_ring:
        d["ring"] = encode_ring(m.ring)
    return d


def decode_matrix(d: Any, path: str = "", ring: RingDesc | None = None) -> Mat:
    R = ring if ring is not None else decode_ring(_get(d, "ring", path), f"{path}.ring")
    rows = _list(_get(d, "entries", path), f"{path}.entries")
    cols = d.get("cols")
    if cols is None:
        cols = len(rows[0]) if rows else 0
    cols = _int(cols, f"{path}.cols")
    if "rows" in d and _int(d["rows"], f"{path}.rows") != len(rows):
        _fail(f"{path}.rows", f"declared {d['rows']} rows but found {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"{path}.entries[{i}]")
        if len(row) != cols:
            _fail(f"{path}.entries[{i}]", f"expected {cols} entries, got {len(row)}")
        out.append([decode_elem(R, x, f"{path}.entries[{i}][{j}]") for j, x in enumerate(row)])
    return Mat(R, out, cols)


def encode_module(M: PresentedModule) -> dict:
    return {"ring": encode_ring(M.ring), "gens": M.gens, "relations": encode_matrix(M.rel, with_ring=False)}


def decode_module(d: Any, path: str = "") -> PresentedModule:
    R = decode_ring(_get(d, "ring", path), f"{path}.ring")
    g = _int(_get(d, "gens", path), f"{path}.gens")
    if g < 0:
        _fail(f"{path}.gens", "number of generators must be non-negative")
    rel = d.get("relations")
    if rel is None:
        return PresentedModule.free(R, g)
    m = decode_matrix(rel, f"{path}.relations", R)
    if m.rows == 0 and m.cols == 0:
        return PresentedModule.free(R, g)
    if m.rows != g:
        _fail(f"{path}.relations", f"relation matrix has {m.rows} rows, expected {g}")
    return PresentedModule(R, g, m)


def encode_map(f: ModuleMap) -> dict:
    return {"source": encode_module(f.source), "target": encode_module(f.target), "matrix": encode_matrix(f.matrix, with_ring=False)}


def decode_map(d: Any, path: str = "") -> ModuleMap:
    M = decode_module(_get(d, "source", path), f"{path}.source")
    N = decode_module(_get(d, "target", path), f"{path}.target")
    m = decode_matrix(_get(d, "matrix", path), f"{path}.matrix", M.ring)
    try:
        return ModuleMap(M, N, m)
    except EqPatchError as e:
        _fail(path, str(e))


# -- equalizer objects and cocycles -----------------------------------------------------------


def encode_eq_object(x: EqObject) -> dict:
    return {
        "context": x.ctx.name,
        "carriers": [encode_module(M) for M in x.carriers],
        "glue": encode_matrix(x.glue.matrix, with_ring=False),
    }


def decode_eq_object(ctx: EqContext, d: Any, path: str = "") -> EqObject:
    cs = _list(_get(d, "carriers", path), f"{path}.carriers")
    if len(cs) != len(ctx.lanes):
        _fail(f"{path}.carriers", f"expected {len(ctx.lanes)} carriers, got {len(cs)}")
    carriers = [decode_module(c, f"{path}.carriers[{i}]") for i, c in enumerate(cs)]
    for i, (M, R) in enumerate(zip(carriers, ctx.lanes)):
        if M.ring != R:
            _fail(f"{path}.carriers[{i}].ring", f"expected {R}, got {M.ring}")
    g = decode_matrix(_get(d, "glue", path), f"{path}.glue", ctx.R1)
    src, tgt = ctx.pull(1, carriers), ctx.pull(0, carriers)
    try:
        return EqObject(ctx, carriers, ModuleMap(src, tgt, g))
    except EqPatchError as e:
        _fail(f"{path}.glue", str(e))


def encode_cocycle(c: Cocycle) -> dict:
    return {"field": field_name(c.field), "matrix": encode_matrix(c.matrix, with_ring=False)}


def decode_cocycle(d: Any, path: str = "") -> Cocycle:
    try:
        k = field_by_name(str(_get(d, "field", path)))
    except ValueError as e:
        _fail(f"{path}.field", str(e))
    m = decode_matrix(_get(d, "matrix", path), f"{path}.matrix", Laurent(k))
    if m.rows != m.cols:
        _fail(f"{path}.matrix", f"cocycle must be square, got {m.rows}x{m.cols}")
    try:
        return Cocycle(m)
    except EqPatchError as e:
        _fail(f"{path}.matrix", f"not invertible over {m.ring}: {e}")


# -- finite categories ------------------------------------------------------------------------


def encode_fincat(C: FinCat) -> dict:
    lab = str
    return {
        "name": C.name,
        "objects": [lab(a) for a in C.objects],
        "morphisms": {lab(m): [lab(a), lab(b)] for m, (a, b) in C.morphisms.items()},
        "identities": {lab(a): lab(m) for a, m in C.identities.items()},
        "compose": sorted([lab(g), lab(f), lab(h)] for (g, f), h in C.compose.items()),
    }


def decode_fincat(d: Any, path: str = "") -> FinCat:
    objs = [str(a) for a in _list(_get(d, "objects", path), f"{path}.objects")]
    mors_raw = _get(d, "morphisms", path)
    if not isinstance(mors_raw, dict):
        _fail(f"{path}.morphisms", "expected an object mapping names to [source, target]")
    mors = {}
    for m, st in mors_raw.items():
        st = _list(st, f"{path}.morphisms.{m}")
        if len(st) != 2 or any(str(x) not in objs for x in st):
            _fail(f"{path}.morphisms.{m}", f"expected [source, target] among the objects, got {st!r}")
        mors[m] = (str(st[0]), str(st[1]))
    ids_raw = _get(d, "identities", path)
    if not isinstance(ids_raw, dict):
        _fail(f"{path}.identities", "expected an object")
    ids = {str(a): str(m) for a, m in ids_raw.items()}
    comp = {}
    for i, row in enumerate(_list(_get(d, "compose", path), f"{path}.compose")):
        row = _list(row, f"{path}.compose[{i}]")
        if len(row) != 3 or any(str(x) not in mors for x in row):
            _fail(f"{path}.compose[{i}]", f"expected [g, f, g.f] among the morphisms, got {row!r}")
        comp[(str(row[0]), str(row[1]))] = str(row[2])
    try:
        return FinCat(objs, mors, comp, ids, str(d.get("name", "")))
    except (EqPatchError, ValueError, KeyError, AssertionError) as e:
        _fail(path, f"not a category: {e}")


def encode_functor(F: FinFunctor) -> dict:
    return {"obj": {str(a): str(b) for a, b in F.obj.items()}, "mor": {str(a): str(b) for a, b in F.mor.items()}}


def decode_functor(S: FinCat, T: FinCat, d: Any, path: str = "") -> FinFunctor:
    obj = _get(d, "obj", path)
    mor = _get(d, "mor", path)
    if not isinstance(obj, dict) or not isinstance(mor, dict):
        _fail(path, "obj and mor must be objects")
    F = FinFunctor(S, T, {str(a): str(b) for a, b in obj.items()}, {str(a): str(b) for a, b in mor.items()})
    try:
        F.check()
    except (EqPatchError, ValueError, KeyError, AssertionError) as e:
        _fail(path, f"not a functor: {e}")
    return F


# -- files ---------------------------------------------------------------------------------


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"
