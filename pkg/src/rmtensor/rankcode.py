"""Rank-metric codes: linear subspaces of n x m matrices over GF(q)."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .gf import Field
from .linalg import (Subspace, batch_rank, enumerate_subspaces, gaussian_binomial, inverse,
                     is_invertible, kernel, matmul, projective_points, rank, rref)
from .tensor import Tensor3, from_matrices, tensor_mult, unfold

DEFAULT_EXHAUSTIVE_CAP = 1 << 24
_CHUNK = 1 << 14


class CodeError(ValueError):
    pass


class MatrixCode:
    """An F_q-linear code in F_q^{n x m}, kept as the canonical RREF of its vectorized basis.

    The input matrices only need to span the code; dependent generators are
    reduced away.
    """

    def __init__(self, field: Field, n: int, m: int, mats=()):
        self.field = field
        self.n = n
        self.m = m
        arr = np.asarray(mats, dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, n * m), dtype=np.int64)
        else:
            if arr.ndim == 2 and arr.shape[1] == n * m:
                pass
            elif arr.ndim == 3 and arr.shape[1:] == (n, m):
                arr = arr.reshape(arr.shape[0], n * m)
            else:
                raise CodeError(f"basis matrices must be {n} x {m}")
            if arr.min() < 0 or arr.max() >= field.order:
                raise CodeError("basis entries outside the field")
        self.space = Subspace(field, n * m, arr)

    @classmethod
    def from_subspace(cls, S: Subspace, n: int, m: int) -> MatrixCode:
        C = cls.__new__(cls)
        C.field, C.n, C.m, C.space = S.field, n, m, S
        return C

    @property
    def k(self) -> int:
        return self.space.dim

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_matrices(self) -> np.ndarray:
        return self.space.basis.reshape(self.k, self.n, self.m)

    def vectors(self) -> np.ndarray:
        return self.space.basis

    def contains(self, M) -> bool:
        return self.space.contains(np.asarray(M).reshape(-1))

    def codeword(self, coeffs) -> np.ndarray:
        return matmul(self.field, np.asarray(coeffs).reshape(1, -1), self.space.basis).reshape(self.n, self.m)

    def iter_projective(self, chunk: int = _CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Chunks of (coefficients, codewords) with one codeword per 1-dim subcode."""
        coeffs = projective_points(self.field, self.k)
        for start in range(0, coeffs.shape[0], chunk):
            c = coeffs[start:start + chunk]
            yield c, matmul(self.field, c, self.space.basis).reshape(-1, self.n, self.m)

    def transpose(self) -> MatrixCode:
        return MatrixCode(self.field, self.m, self.n, np.transpose(self.basis_matrices(), (0, 2, 1)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatrixCode) and (self.n, self.m) == (other.n, other.m)
                and self.space == other.space)

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.space))

    def __repr__(self) -> str:
        return f"MatrixCode(GF({self.field.order}), {self.n}x{self.m}, k={self.k})"


@dataclass(frozen=True)
class DistanceBounds:
    lower: int
    upper: int
    exact: bool = False


def _require_nonzero(C: MatrixCode) -> None:
    if C.k == 0:
        raise CodeError("nonzero code required")


def min_distance_witness(C: MatrixCode) -> tuple[int, np.ndarray]:
    """Exact minimum rank and a codeword attaining it."""
    _require_nonzero(C)
    best, word = None, None
    for _, words in C.iter_projective():
        ranks = batch_rank(C.field, words)
        i = int(np.argmin(ranks))
        if best is None or ranks[i] < best:
            best, word = int(ranks[i]), words[i].copy()
            if best == 1:
                break
    return best, word


def min_distance(C: MatrixCode, cap: int = DEFAULT_EXHAUSTIVE_CAP, seed: int = 0):
    """d(C); above ``cap`` codewords returns DistanceBounds from sampling and Singleton."""
    _require_nonzero(C)
    q = C.field.order
    if q ** C.k <= cap:
        return min_distance_witness(C)[0]
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, q, size=(4096, C.k))
    coeffs = coeffs[coeffs.any(axis=1)]
    words = matmul(C.field, coeffs, C.space.basis).reshape(-1, C.n, C.m)
    upper = int(batch_rank(C.field, words).min())
    lo_side, hi_side = min(C.n, C.m), max(C.n, C.m)
    # Singleton: k <= hi*(lo-d+1) gives d <= lo - ceil(k/hi) + 1
    singleton = lo_side - -(-C.k // hi_side) + 1
    return DistanceBounds(1, min(upper, singleton), False)


def rank_spectrum(C: MatrixCode) -> dict[int, int]:
    """Number of codewords of each rank, zero word included."""
    q = C.field.order
    out = {0: 1}
    if C.k == 0:
        return out
    for _, words in C.iter_projective():
        ranks, counts = np.unique(batch_rank(C.field, words), return_counts=True)
        for r, c in zip(ranks.tolist(), counts.tolist()):
            out[r] = out.get(r, 0) + c * (q - 1)
    return dict(sorted(out.items()))


def singleton_max_dim(n: int, m: int, d: int) -> int:
    return max(n, m) * (min(n, m) - d + 1)


def is_mrd(C: MatrixCode, d: int | None = None) -> bool:
    d = min_distance(C) if d is None else d
    return C.k == singleton_max_dim(C.n, C.m, d)


def dual(C: MatrixCode) -> MatrixCode:
    return MatrixCode.from_subspace(C.space.dual_complement(), C.n, C.m)


def supports(C: MatrixCode) -> tuple[Subspace, Subspace, bool]:
    """(column support in F^n, row support in F^m, nondegenerate flag)."""
    F = C.field
    mats = C.basis_matrices()
    if C.k == 0:
        cs, rs = Subspace(F, C.n), Subspace(F, C.m)
    else:
        cs = Subspace(F, C.n, np.concatenate([M.T for M in mats], axis=0))
        rs = Subspace(F, C.m, np.concatenate(list(mats), axis=0))
    return cs, rs, cs.dim == C.n and rs.dim == C.m


def generator_tensor(C: MatrixCode) -> Tensor3:
    _require_nonzero(C)
    return from_matrices(C.field, C.basis_matrices())


def code_of_tensor(X: Tensor3) -> MatrixCode:
    """ss_1(X) as a matrix code."""
    k, n, m = X.dims
    return MatrixCode(X.field, n, m, X.entries)


def parity_tensor(C: MatrixCode) -> Tensor3:
    if C.k == C.n * C.m:
        raise CodeError("the full space has no parity check tensor")
    return generator_tensor(dual(C))


def apply_equivalence(C: MatrixCode, A, B, transpose: bool = False) -> MatrixCode:
    """{A X B} (or {A X^T B} when ``transpose``) for invertible A, B."""
    F = C.field
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if transpose and C.n != C.m:
        raise CodeError("the transpose equivalence needs square matrices")
    if not (is_invertible(F, A) and A.shape[0] == C.n):
        raise CodeError("A must be an invertible n x n matrix")
    if not (is_invertible(F, B) and B.shape[0] == C.m):
        raise CodeError("B must be an invertible m x m matrix")
    mats = C.basis_matrices()
    if transpose:
        mats = np.transpose(mats, (0, 2, 1))
    out = [matmul(F, matmul(F, A, M), B) for M in mats]
    return MatrixCode(F, C.n, C.m, out)


# ---------------------------------------------------------------------------
# puncturing and shortening
# ---------------------------------------------------------------------------

def _transformed(C: MatrixCode, side: str, T, I: Sequence[int]):
    F = C.field
    T = np.asarray(T, dtype=np.int64)
    size = C.n if side == "row" else C.m
    if side not in ("row", "col"):
        raise CodeError("side must be 'row' or 'col'")
    I = sorted(set(int(i) for i in I))
    if not I or len(I) >= size or I[0] < 0 or I[-1] >= size:
        raise CodeError(f"index set must be a nonempty proper subset of range({size})")
    if T.shape != (size, size) or not is_invertible(F, T):
        raise CodeError("transform must be invertible")
    mats = C.basis_matrices()
    if side == "row":
        TM = np.array([matmul(F, T, M) for M in mats]).reshape(C.k, C.n, C.m)
    else:
        TM = np.array([matmul(F, M, T) for M in mats]).reshape(C.k, C.n, C.m)
        TM = np.transpose(TM, (0, 2, 1))
    keep = [i for i in range(size) if i not in I]
    return F, TM, I, keep


def _finish(F, words, side, rows, cols) -> MatrixCode:
    if side == "col":
        words = np.transpose(words, (0, 2, 1))
    return MatrixCode(F, rows, cols, words)


def puncture(C: MatrixCode, side: str, T, I) -> MatrixCode:
    """Row side: {(TM) with rows I deleted}; column side: {(MT) with columns I deleted}."""
    F, TM, I, keep = _transformed(C, side, T, I)
    words = TM[:, keep, :]
    rows, cols = (len(keep), C.m) if side == "row" else (C.n, len(keep))
    return _finish(F, words, side, rows, cols)


def shorten(C: MatrixCode, side: str, T, I) -> MatrixCode:
    """As puncture, restricted to codewords whose rows (columns) I vanish after T."""
    F, TM, I, keep = _transformed(C, side, T, I)
    rows, cols = (len(keep), C.m) if side == "row" else (C.n, len(keep))
    if C.k == 0:
        return _finish(F, np.zeros((0,) + TM.shape[1:])[:, keep, :], side, rows, cols)
    cond = TM[:, I, :].reshape(C.k, -1)
    coeffs = kernel(F, cond.T)
    if coeffs.shape[0] == 0:
        return MatrixCode(F, rows, cols)
    words = matmul(F, coeffs, TM[:, keep, :].reshape(C.k, -1)).reshape(coeffs.shape[0], len(keep), -1)
    return _finish(F, words, side, rows, cols)


# ---------------------------------------------------------------------------
# distance criteria
# ---------------------------------------------------------------------------

@dataclass
class CriteriaResult:
    holds: bool
    side: str = "row"
    verdicts: dict = dc_field(default_factory=dict)
    transform: np.ndarray | None = None
    codeword: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.holds


def _complete_to_invertible(F: Field, rows: np.ndarray, size: int) -> np.ndarray:
    out = [r for r in rows]
    for i in range(size):
        e = np.zeros(size, dtype=np.int64)
        e[i] = 1
        if rank(F, np.array(out + [e])) > len(out):
            out.append(e)
    return np.array(out, dtype=np.int64)


def distance_criteria(C: MatrixCode, d: int) -> CriteriaResult:
    """Decide d(C) >= d by three dual formulations that must agree.

    Every (d-1)-dim subspace U on the cheaper side is tested:
      puncture  -- A with kernel U keeps dim_1(m_2(A, X)) = k;
      shorten   -- completing A to an invertible T, the shortened code on the rows of A is {0};
      parity    -- the rows of a basis of U push the parity tensor onto all of F^{(d-1) x m}.
    """
    _require_nonzero(C)
    if d < 1:
        raise CodeError("d must be positive")
    if d == 1:
        return CriteriaResult(True, verdicts={"puncture": True, "shorten": True, "parity": True})
    if d > min(C.n, C.m):
        dd, word = min_distance_witness(C)
        return CriteriaResult(False, codeword=word,
                              verdicts={"puncture": False, "shorten": False, "parity": False})
    F = C.field
    q = F.order
    side = "row" if gaussian_binomial(C.n, d - 1, q) <= gaussian_binomial(C.m, d - 1, q) else "col"
    D = C if side == "row" else C.transpose()
    n, m, k = D.n, D.m, D.k
    X = generator_tensor(D)
    full_space = D.k == n * m
    Y = None if full_space else parity_tensor(D)
    for U in enumerate_subspaces(F, n, d - 1):
        A = kernel(F, U)                                   # (n-d+1) x n, ker A = U
        punct = tensor_mult(2, A, X, collapse=False)
        ok_p = rank(F, unfold(punct, 1)) == k
        T = _complete_to_invertible(F, A, n)
        sh = shorten(D, "row", T, list(range(A.shape[0])))
        ok_s = sh.k == 0
        if Y is None:
            ok_y = False
        else:
            img = tensor_mult(2, U, Y, collapse=False)
            ok_y = rank(F, unfold(img, 1)) == (d - 1) * m
        if not (ok_p == ok_s == ok_y):
            raise AssertionError(f"distance criteria disagree: {ok_p}, {ok_s}, {ok_y}")
        if not ok_p:
            c = kernel(F, unfold(punct, 1).T)[0]
            word = matmul(F, c.reshape(1, -1), D.space.basis).reshape(n, m)
            if side == "col":
                word = word.T
            return CriteriaResult(False, side, {"puncture": False, "shorten": False, "parity": False},
                                  transform=A, codeword=word)
    return CriteriaResult(True, side, {"puncture": True, "shorten": True, "parity": True})
