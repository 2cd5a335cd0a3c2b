"""JSON encodings shared by the library and the CLI.

Prime-field elements are plain ints; extension-field elements are coefficient
lists (low degree first).  Decoders accept either form.
"""

from __future__ import annotations

import numpy as np

from .gf import Field, decode_element, encode_element, field_from_json


class FormatError(ValueError):
    """Malformed JSON input; the message names the offending field."""


def field_json(F: Field) -> dict:
    return F.to_json()


def read_field(d) -> Field:
    if not isinstance(d, dict):
        raise FormatError("field: expected an object {p, e, modulus}")
    try:
        return field_from_json(d)
    except (ValueError, KeyError) as exc:
        raise FormatError(f"field: {exc}") from exc


def vector_entries(F: Field, v) -> list:
    return [encode_element(F, int(x)) for x in np.asarray(v).reshape(-1)]


def matrix_entries(F: Field, M) -> list:
    M = np.asarray(M)
    return [vector_entries(F, row) for row in M]


def read_vector(F: Field, data, name: str, length: int | None = None) -> np.ndarray:
    if not isinstance(data, list):
        raise FormatError(f"{name}: expected a list")
    try:
        v = np.array([decode_element(F, x) for x in data], dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{name}: {exc}") from exc
    if length is not None and len(v) != length:
        raise FormatError(f"{name}: expected length {length}, got {len(v)}")
    return v


def read_matrix(F: Field, data, name: str, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    if not isinstance(data, list):
        raise FormatError(f"{name}: expected a list of rows")
    out = [read_vector(F, row, f"{name}[{i}]", cols) for i, row in enumerate(data)]
    if rows is not None and len(out) != rows:
        raise FormatError(f"{name}: expected {rows} rows, got {len(out)}")
    if not out:
        return np.zeros((0, cols or 0), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def require(d: dict, key: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"{key}: missing required field")
    val = d[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"{key}: expected {kind.__name__}")
    return val


def matrix_json(F: Field, M) -> dict:
    M = np.asarray(M)
    return {"field": field_json(F), "rows": int(M.shape[0]), "cols": int(M.shape[1]),
            "entries": matrix_entries(F, M)}


def code_to_json(C) -> dict:
    F = C.field
    return {"field": field_json(F), "n": C.n, "m": C.m,
            "basis": [matrix_entries(F, B) for B in C.basis_matrices()]}


def code_from_json(d: dict):
    from .rankcode import MatrixCode

    F = read_field(require(d, "field"))
    n = require(d, "n", int)
    m = require(d, "m", int)
    basis = require(d, "basis", list)
    mats = [read_matrix(F, B, f"basis[{i}]", n, m) for i, B in enumerate(basis)]
    return MatrixCode(F, n, m, mats)


def blockcode_to_json(C) -> dict:
    F = C.field
    return {"field": field_json(F), "N": C.N, "k": C.k, "generator": matrix_entries(F, C.generator)}


def blockcode_from_json(d: dict):
    from .blockcode import BlockCode

    F = read_field(require(d, "field"))
    N = require(d, "N", int)
    G = read_matrix(F, require(d, "generator", list), "generator", None, N)
    return BlockCode(F, G)


def tensor_from_json(d: dict):
    from .tensor import Tensor3

    F = read_field(require(d, "field"))
    dims = require(d, "dims", list)
    if len(dims) != 3:
        raise FormatError("dims: expected three integers")
    k, n, m = (int(x) for x in dims)
    slices = require(d, "slices", list)
    if len(slices) != k:
        raise FormatError(f"slices: expected {k} slices")
    arr = np.array([read_matrix(F, S, f"slices[{i}]", n, m) for i, S in enumerate(slices)],
                   dtype=np.int64).reshape(k, n, m)
    return Tensor3(F, arr)


def simplesum_from_json(d: dict):
    from .tensor import SimpleSum

    F = read_field(require(d, "field"))
    dims = tuple(int(x) for x in require(d, "dims", list))
    trip = []
    for i, t in enumerate(require(d, "triples", list)):
        trip.append((read_vector(F, require(t, "u"), f"triples[{i}].u", dims[0]),
                     read_vector(F, require(t, "v"), f"triples[{i}].v", dims[1]),
                     read_vector(F, require(t, "w"), f"triples[{i}].w", dims[2])))
    return SimpleSum(F, dims, trip)


def point_json(F: Field, a) -> object:
    return "inf" if a is None or a == "inf" else encode_element(F, int(a))


def read_point(F: Field, x):
    if x == "inf":
        return None
    return decode_element(F, x)
