"""JSON form of code descriptors.

Layout::

    {"n": 3, "k": 1,
     "field": {"p": 5, "e": 1, "k_ext": 1, "base_modulus": [0, 1],
               "ext_modulus": [[0], [1]]},
     "generator": [G_0, G_1, ...],
     "label": "...", "provenance": {...}}

Each G_t is a k x n list of elements and each element is its canonical
coefficient array: k_ext lists of e integers in [0, p), lowest power first.
Only integers, strings, lists and objects appear; output is key-sorted and
compact so that dumping a loaded descriptor reproduces the input bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .convmodel import CodeDescriptor
from .errors import MDPError, SchemaError
from .fieldcore import FieldTower, build_field, is_prime
from .linalg import PolyMat


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def descriptor_to_dict(code: CodeDescriptor) -> dict:
    F = code.field
    d = {
        "n": code.n,
        "k": code.k,
        "field": F.to_dict(),
        "generator": [[[F.to_coeffs(x) for x in row] for row in block]
                      for block in code.generator.coeffs],
    }
    if code.label is not None:
        d["label"] = code.label
    if code.provenance:
        d["provenance"] = code.provenance
    return d


def dumps(code: CodeDescriptor) -> str:
    return canonical_json(descriptor_to_dict(code)) + "\n"


def _int(v, ptr: str, lo: int | None = None, hi: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(ptr, "expected an integer")
    if lo is not None and v < lo:
        raise SchemaError(ptr, f"must be >= {lo}")
    if hi is not None and v >= hi:
        raise SchemaError(ptr, f"must be < {hi}")
    return v


def _list(v, ptr: str, length: int | None = None) -> list:
    if not isinstance(v, list):
        raise SchemaError(ptr, "expected an array")
    if length is not None and len(v) != length:
        raise SchemaError(ptr, f"expected {length} entries, got {len(v)}")
    return v


def _field(d, ptr: str) -> FieldTower:
    if not isinstance(d, dict):
        raise SchemaError(ptr, "expected an object")
    for key in ("p", "e", "k_ext", "base_modulus", "ext_modulus"):
        if key not in d:
            raise SchemaError(f"{ptr}/{key}", "missing")
    p = _int(d["p"], f"{ptr}/p", 2)
    if not is_prime(p):
        raise SchemaError(f"{ptr}/p", "not prime")
    e = _int(d["e"], f"{ptr}/e", 1)
    k = _int(d["k_ext"], f"{ptr}/k_ext", 1)
    bm = _list(d["base_modulus"], f"{ptr}/base_modulus", e + 1)
    for i, c in enumerate(bm):
        _int(c, f"{ptr}/base_modulus/{i}", 0, p)
    em = _list(d["ext_modulus"], f"{ptr}/ext_modulus", k + 1)
    for i, c in enumerate(em):
        for t, x in enumerate(_list(c, f"{ptr}/ext_modulus/{i}", e)):
            _int(x, f"{ptr}/ext_modulus/{i}/{t}", 0, p)
    try:
        base = build_field(p, e, 1, tuple(bm), None)
    except MDPError as exc:
        raise SchemaError(f"{ptr}/base_modulus", str(exc)) from exc
    try:
        return build_field(p, e, k, tuple(bm), tuple(base.from_coeffs([c]) for c in em))
    except MDPError as exc:
        raise SchemaError(f"{ptr}/ext_modulus", str(exc)) from exc


def descriptor_from_dict(d: Any) -> CodeDescriptor:
    if not isinstance(d, dict):
        raise SchemaError("", "expected an object")
    for key in ("n", "k", "field", "generator"):
        if key not in d:
            raise SchemaError(f"/{key}", "missing")
    n = _int(d["n"], "/n", 2)
    k = _int(d["k"], "/k", 1, n)
    F = _field(d["field"], "/field")
    gen = _list(d["generator"], "/generator")
    if not gen:
        raise SchemaError("/generator", "needs at least one coefficient matrix")
    blocks = []
    for t, block in enumerate(gen):
        rows = []
        for r, row in enumerate(_list(block, f"/generator/{t}", k)):
            vals = []
            for c, el in enumerate(_list(row, f"/generator/{t}/{r}", n)):
                ptr = f"/generator/{t}/{r}/{c}"
                for i, digits in enumerate(_list(el, ptr, F.k_ext)):
                    for s, x in enumerate(_list(digits, f"{ptr}/{i}", F.e)):
                        _int(x, f"{ptr}/{i}/{s}", 0, F.p)
                vals.append(F.from_coeffs(el))
            rows.append(vals)
        blocks.append(rows)
    label = d.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("/label", "expected a string")
    prov = d.get("provenance", {})
    if not isinstance(prov, dict):
        raise SchemaError("/provenance", "expected an object")
    _no_floats(prov, "/provenance")
    return CodeDescriptor(n, k, F, PolyMat.from_coeffs(F, blocks), label, prov)


def _no_floats(v, ptr: str) -> None:
    if isinstance(v, float):
        raise SchemaError(ptr, "floats are not allowed")
    if isinstance(v, dict):
        for key, x in v.items():
            _no_floats(x, f"{ptr}/{key}")
    elif isinstance(v, list):
        for i, x in enumerate(v):
            _no_floats(x, f"{ptr}/{i}")


def loads(text: str) -> CodeDescriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from exc
    return descriptor_from_dict(data)


def read_descriptor(path: str | Path) -> CodeDescriptor:
    return loads(Path(path).read_text())


def write_descriptor(code: CodeDescriptor, path: str | Path) -> None:
    Path(path).write_text(dumps(code))
