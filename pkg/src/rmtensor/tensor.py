"""3-tensors over finite fields: coordinates, simple sums, contractions and slice spaces."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .gf import Field
from .linalg import (Subspace, batch_rank, lincomb, matmul, projective_points, rank,
                     rank_factor, rref)


class TensorError(ValueError):
    pass


@dataclass(frozen=True)
class Tensor3:
    """Dense coordinate tensor X[i, j, l] of shape (k, n, m)."""

    field: Field
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 3:
            raise TensorError("Tensor3 needs a 3-d array")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dims(self) -> tuple[int, int, int]:
        return tuple(self.entries.shape)

    def slices(self) -> list[np.ndarray]:
        return [self.entries[i] for i in range(self.dims[0])]

    def permute(self, axes) -> Tensor3:
        return Tensor3(self.field, np.transpose(self.entries, axes))

    def is_zero(self) -> bool:
        return not self.entries.any()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor3) and self.field == other.field
                and self.entries.shape == other.entries.shape
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.field, self.entries.shape, self.entries.tobytes()))


@dataclass
class SimpleSum:
    """sum_r u_r (x) v_r (x) w_r with u_r in F^k, v_r in F^n, w_r in F^m."""

    field: Field
    dims: tuple[int, int, int]
    triples: list = dc_field(default_factory=list)

    def __post_init__(self):
        k, n, m = self.dims
        clean = []
        for u, v, w in self.triples:
            u = np.asarray(u, dtype=np.int64).reshape(-1)
            v = np.asarray(v, dtype=np.int64).reshape(-1)
            w = np.asarray(w, dtype=np.int64).reshape(-1)
            if (len(u), len(v), len(w)) != (k, n, m):
                raise TensorError(f"triple dims {(len(u), len(v), len(w))} do not match {self.dims}")
            if not (u.any() and v.any() and w.any()):
                raise TensorError("simple tensors must have nonzero factors")
            clean.append((u, v, w))
        self.triples = clean

    def __len__(self) -> int:
        return len(self.triples)

    def rank_one_matrices(self) -> list[np.ndarray]:
        F = self.field
        return [matmul(F, v.reshape(-1, 1), w.reshape(1, -1)) for _, v, w in self.triples]


def to_coordinates(S: SimpleSum) -> Tensor3:
    F = S.field
    k, n, m = S.dims
    X = np.zeros((k, n, m), dtype=np.int64)
    for u, v, w in S.triples:
        vw = matmul(F, v.reshape(-1, 1), w.reshape(1, -1))
        X = F.add(X, F.mul(u[:, None, None], vw[None, :, :]))
    return Tensor3(F, X)


def from_matrices(F: Field, mats) -> Tensor3:
    """X = sum_i e_i (x) A_i for the given list of n x m matrices."""
    arr = np.asarray(mats, dtype=np.int64)
    if arr.ndim != 3:
        raise TensorError("expected a list of equally shaped matrices")
    return Tensor3(F, arr)


def split(X: Tensor3) -> SimpleSum:
    """Simple-sum form from rank factorizations of the axis-1 slices."""
    F = X.field
    k, n, m = X.dims
    triples = []
    for i in range(k):
        U, R = rank_factor(F, X.entries[i])
        e = np.zeros(k, dtype=np.int64)
        e[i] = 1
        for r in range(R.shape[0]):
            triples.append((e, U[:, r], R[r]))
    return SimpleSum(F, (k, n, m), triples)


def tensor_mult(axis: int, A, X: Tensor3, collapse: bool = True):
    """m_axis(A, X): contract axis (1, 2 or 3) of X with the rows of A.

    The contracted axis is replaced in place by one of length s = rows(A).
    A 1-d A, or s = 1 with ``collapse`` set, returns the remaining matrix.
    """
    if axis not in (1, 2, 3):
        raise TensorError("axis must be 1, 2 or 3")
    F = X.field
    A = np.asarray(A, dtype=np.int64)
    vector = A.ndim == 1
    A2 = A.reshape(1, -1) if vector else A
    ax = axis - 1
    if A2.shape[1] != X.dims[ax]:
        raise TensorError(f"A has {A2.shape[1]} columns, axis {axis} has length {X.dims[ax]}")
    moved = np.moveaxis(X.entries, ax, 0)
    rest = moved.shape[1:]
    out = matmul(F, A2, moved.reshape(moved.shape[0], -1)).reshape((A2.shape[0],) + rest)
    out = np.moveaxis(out, 0, ax)
    if vector or (collapse and A2.shape[0] == 1):
        return np.squeeze(out, axis=ax)
    return Tensor3(F, out)


def unfold(X: Tensor3, axis: int) -> np.ndarray:
    """Rows are the vectorized slices m_axis(e_j, X)."""
    moved = np.moveaxis(X.entries, axis - 1, 0)
    return moved.reshape(moved.shape[0], -1)


def slice_space(axis: int, X: Tensor3) -> Subspace:
    U = unfold(X, axis)
    return Subspace(X.field, U.shape[1], U)


def slice_dim(axis: int, X: Tensor3) -> int:
    return rank(X.field, unfold(X, axis))


def double_dot(X, Y) -> np.ndarray:
    """(X:Y)[i, s] = sum_{j,l} X[i,j,l] Y[s,j,l]; plain matrices act as 1 x n x m tensors."""
    def as3(T):
        if isinstance(T, Tensor3):
            return T.field, T.entries
        raise TensorError("double_dot takes Tensor3 operands")

    F, x = as3(X)
    G, y = as3(Y)
    if F != G:
        raise TensorError("operands belong to different fields")
    if x.shape[1:] != y.shape[1:]:
        raise TensorError(f"last two dims differ: {x.shape[1:]} vs {y.shape[1:]}")
    return matmul(F, x.reshape(x.shape[0], -1), y.reshape(y.shape[0], -1).T)


def min_combination_rank(F: Field, mats, chunk: int = 1 << 14) -> tuple[int, np.ndarray]:
    """Minimum rank of a nonzero combination of the given matrices, and a coefficient witness."""
    mats = np.asarray(mats, dtype=np.int64)
    k = mats.shape[0]
    coeffs = projective_points(F, k)
    best, arg = None, None
    flat = mats.reshape(k, -1)
    for start in range(0, coeffs.shape[0], chunk):
        c = coeffs[start:start + chunk]
        words = matmul(F, c, flat).reshape((c.shape[0],) + mats.shape[1:])
        nz = words.reshape(c.shape[0], -1).any(axis=1)
        if not nz.any():
            continue
        ranks = batch_rank(F, words[nz])
        i = int(np.argmin(ranks))
        if best is None or ranks[i] < best:
            best, arg = int(ranks[i]), c[nz][i]
            if best == 1:
                break
    if best is None:
        raise TensorError("all combinations vanish")
    return best, arg


def kruskal_bound_info(X: Tensor3) -> tuple[int, bool]:
    """(dim_1(X) + min nonzero slice-combination rank - 1, degenerate flag).

    For a degenerate X the bound is computed on a basis of the slice space.
    """
    F = X.field
    U = unfold(X, 1)
    B, r, _ = rref(F, U)
    if r == 0:
        return 0, True
    mats = B.reshape(r, X.dims[1], X.dims[2])
    d, _ = min_combination_rank(F, mats)
    return r + d - 1, r < X.dims[0]


def kruskal_lower_bound(X: Tensor3) -> int:
    return kruskal_bound_info(X)[0]


def tensor_to_json(X: Tensor3) -> dict:
    from .serialize import field_json, matrix_entries
    return {"field": field_json(X.field), "dims": list(X.dims),
            "slices": [matrix_entries(X.field, S) for S in X.slices()]}


def simplesum_to_json(S: SimpleSum) -> dict:
    from .serialize import field_json, vector_entries
    F = S.field
    return {"field": field_json(F), "dims": list(S.dims),
            "triples": [{"u": vector_entries(F, u), "v": vector_entries(F, v), "w": vector_entries(F, w)}
                        for u, v, w in S.triples]}


def span_rank_one(S: SimpleSum) -> Subspace:
    """Span of the vectorized v_r (x) w_r."""
    k, n, m = S.dims
    mats = S.rank_one_matrices()
    if not mats:
        return Subspace(S.field, n * m)
    return Subspace(S.field, n * m, np.array([M.reshape(-1) for M in mats]))


def restrict_to_code(S: SimpleSum, code_basis) -> SimpleSum:
    """Rewrite a rank-1 spanning set as a simple sum for the generator tensor of the code.

    Each basis matrix is expressed in the rank-1 matrices; the coefficients
    give the u-vectors.  Raises when a basis matrix is outside the span.
    """
    from .linalg import solve_left

    F = S.field
    code_basis = np.asarray(code_basis, dtype=np.int64)
    k = code_basis.shape[0]
    n, m = code_basis.shape[1:]
    mats = np.array([M.reshape(-1) for M in S.rank_one_matrices()]) if len(S) else np.zeros((0, n * m), dtype=np.int64)
    keep = _independent_subset(F, mats)
    sub = mats[keep]
    coeff = np.zeros((k, len(keep)), dtype=np.int64)
    for i in range(k):
        c = solve_left(F, sub, code_basis[i].reshape(-1))
        if c is None:
            raise TensorError("code matrix outside the rank-1 span")
        coeff[i] = c
    triples = []
    for t, idx in enumerate(keep):
        u = coeff[:, t]
        if u.any():
            _, v, w = S.triples[idx]
            triples.append((u, v, w))
    return SimpleSum(F, (k, n, m), triples)


def _independent_subset(F: Field, rows) -> list[int]:
    rows = np.asarray(rows, dtype=np.int64)
    keep: list[int] = []
    cur = 0
    for i in range(rows.shape[0]):
        r = rank(F, rows[keep + [i]])
        if r > cur:
            keep.append(i)
            cur = r
    return keep


def combine(F: Field, coeffs, mats) -> np.ndarray:
    return lincomb(F, coeffs, mats)
