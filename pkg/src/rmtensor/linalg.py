"""Exact linear algebra over finite fields.

Matrices are numpy int64 arrays holding packed field elements; every function
takes the field as its first argument.  Vectorization of an n x m matrix is
row-major: entry (j, l) sits at position j*m + l.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from .gf import Field

DEFAULT_ENUM_CAP = 1 << 22


class LinalgError(ValueError):
    pass


def asmatrix(M, cols: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if cols is None or A.size else np.zeros((0, cols), dtype=np.int64)
    if A.ndim != 2:
        raise LinalgError("expected a 2-d matrix")
    return A


def _is_prime_field(F: Field) -> bool:
    return F.base is None and F.degree == 1


def matmul(F: Field, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise LinalgError(f"shape mismatch {A.shape} x {B.shape}")
    if _is_prime_field(F):
        return (A @ B) % F.p
    out_shape = A.shape[:-1] + B.shape[1:]
    out = np.zeros(out_shape, dtype=np.int64)
    for t in range(A.shape[-1]):
        out = F.add(out, F.mul(A[..., t:t + 1] if A.ndim > 1 else A[t], B[t]))
    return out


def matvec(F: Field, A, x) -> np.ndarray:
    return matmul(F, A, np.asarray(x, dtype=np.int64).reshape(-1, 1)).reshape(-1)


def dot(F: Field, x, y) -> int:
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    y = np.asarray(y, dtype=np.int64).reshape(-1)
    if x.shape != y.shape:
        raise LinalgError("length mismatch")
    if _is_prime_field(F):
        return int(np.dot(x, y) % F.p)
    prods = F.mul(x, y)
    acc = 0
    for v in prods.tolist():
        acc = F.add(acc, v)
    return int(acc)


def lincomb(F: Field, coeffs, rows) -> np.ndarray:
    """sum_i coeffs[i] * rows[i] for a stack of rows (any trailing shape)."""
    rows = np.asarray(rows, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1)
    if rows.shape[0] != coeffs.shape[0]:
        raise LinalgError("coefficient count does not match row count")
    flat = rows.reshape(rows.shape[0], -1)
    out = matmul(F, coeffs.reshape(1, -1), flat).reshape(rows.shape[1:])
    return out


def rref(F: Field, M) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, rank, pivot columns)."""
    A = asmatrix(M).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    char2 = F.char2
    prime = _is_prime_field(F)
    p = F.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.mul(A[r], F.inv(lead)) if not prime else (A[r] * pow(lead, p - 2, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            if char2 and F.order == 2:
                A[others] ^= A[r]
            elif prime:
                A[others] = (A[others] - col[others, None] * A[r][None, :]) % p
            else:
                A[others] = F.sub(A[others], F.mul(col[others, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], r, tuple(pivots)


def rank(F: Field, M) -> int:
    A = asmatrix(M)
    if A.size == 0:
        return 0
    if F.order == 2 and A.shape[1] <= 62:
        return len(bits_rref(pack_rows(A)))
    return rref(F, A)[1]


def kernel(F: Field, M, ncols: int | None = None) -> np.ndarray:
    """Rows spanning the right null space {x : M x = 0}."""
    A = asmatrix(M)
    n = A.shape[1] if ncols is None else ncols
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, r, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, pc in enumerate(piv):
            K[t, pc] = F.neg(int(R[i, f]))
    return K


def left_kernel(F: Field, M) -> np.ndarray:
    """Rows y with y M = 0."""
    return kernel(F, asmatrix(M).T)


def inverse(F: Field, M) -> np.ndarray:
    A = asmatrix(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise LinalgError("inverse of a non-square matrix")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, r, piv = rref(F, aug)
    if r < n or piv[n - 1] != n - 1:
        raise LinalgError("matrix is singular")
    return R[:, n:]


def is_invertible(F: Field, M) -> bool:
    A = asmatrix(M)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def solve_left(F: Field, B, target) -> np.ndarray | None:
    """Coefficients c with c @ B = target (rows of B independent), or None."""
    B = asmatrix(B)
    t = np.asarray(target, dtype=np.int64).reshape(1, -1)
    k = B.shape[0]
    aug = np.concatenate([B.T, t.T], axis=1)
    R, r, piv = rref(F, aug)
    if piv and piv[-1] == k:
        return None
    c = np.zeros(k, dtype=np.int64)
    for i, pc in enumerate(piv):
        c[pc] = R[i, k]
    if not np.array_equal(matmul(F, c.reshape(1, -1), B).reshape(-1), t.reshape(-1)):
        return None
    return c


def random_matrix(F: Field, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, F.order, size=(rows, cols), dtype=np.int64)


def random_invertible(F: Field, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        A = random_matrix(F, n, n, rng)
        if rank(F, A) == n:
            return A


def trace_product(F: Field, M, N) -> int:
    """<M, N> = Tr(M N^T), the entrywise dot product."""
    M = np.asarray(M, dtype=np.int64)
    N = np.asarray(N, dtype=np.int64)
    if M.shape != N.shape:
        raise LinalgError(f"shape mismatch {M.shape} vs {N.shape}")
    return dot(F, M, N)


def outer(F: Field, v, w) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
    w = np.asarray(w, dtype=np.int64).reshape(1, -1)
    return F.mul(v, w) if not _is_prime_field(F) else (v * w) % F.p


def normalize_projective(F: Field, v) -> np.ndarray:
    """Scale so the first nonzero entry is 1 (rows of a 2-d array independently)."""
    A = np.asarray(v, dtype=np.int64)
    flat = A.reshape(-1, A.shape[-1]) if A.ndim > 1 else A.reshape(1, -1)
    if F.order == 2:
        return A.copy()
    nzmask = flat != 0
    first = np.argmax(nzmask, axis=1)
    lead = flat[np.arange(flat.shape[0]), first]
    lead = np.where(lead == 0, 1, lead)
    inv = F._inv[lead]
    out = F.mul(flat, inv[:, None]) if not _is_prime_field(F) else (flat * inv[:, None]) % F.p
    return out.reshape(A.shape)


# ---------------------------------------------------------------------------
# enumeration helpers
# ---------------------------------------------------------------------------

def all_vectors(F: Field, N: int) -> np.ndarray:
    """All q^N vectors; row t holds the base-q digits of t, most significant first."""
    q = F.order
    idx = np.arange(q ** N, dtype=np.int64)
    out = np.zeros((q ** N, N), dtype=np.int64)
    for j in range(N - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def projective_points(F: Field, N: int) -> np.ndarray:
    """One representative (leading entry 1) per 1-dim subspace of F^N."""
    q = F.order
    parts = []
    for lead in range(N):
        tail = all_vectors(F, N - lead - 1)
        block = np.zeros((tail.shape[0], N), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        parts.append(block)
    if not parts:
        return np.zeros((0, N), dtype=np.int64)
    return np.concatenate(parts, axis=0)


def gaussian_binomial(N: int, k: int, q: int) -> int:
    if k < 0 or k > N:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(F: Field, N: int, k: int) -> Iterator[np.ndarray]:
    """Yield every k-dim subspace of F^N as its RREF basis."""
    q = F.order
    for piv in itertools.combinations(range(N), k):
        free_slots = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, N)
                      if c not in piv]
        for vals in itertools.product(range(q), repeat=len(free_slots)):
            B = np.zeros((k, N), dtype=np.int64)
            for i, pc in enumerate(piv):
                B[i, pc] = 1
            for (i, c), v in zip(free_slots, vals):
                B[i, c] = v
            yield B


def enumerate_rank_one(F: Field, n: int, m: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[np.ndarray]:
    """One v (x) w per 1-dim span of rank-1 n x m matrices, v normalized to lead 1."""
    q = F.order
    if q ** (n + m) > cap:
        raise LinalgError(f"rank-1 enumeration for q={q}, n={n}, m={m} exceeds cap {cap}")
    V = projective_points(F, n)
    W = projective_points(F, m)
    for v in V:
        for w in W:
            yield outer(F, v, w)


def rank_one_array(F: Field, n: int, m: int, cap: int = DEFAULT_ENUM_CAP) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All projective rank-1 matrices vectorized, with their (v, w) factors."""
    q = F.order
    if q ** (n + m) > cap:
        raise LinalgError(f"rank-1 enumeration for q={q}, n={n}, m={m} exceeds cap {cap}")
    V = projective_points(F, n)
    W = projective_points(F, m)
    vi = np.repeat(np.arange(V.shape[0]), W.shape[0])
    wi = np.tile(np.arange(W.shape[0]), V.shape[0])
    vv, ww = V[vi], W[wi]
    if _is_prime_field(F):
        mats = (vv[:, :, None] * ww[:, None, :]) % F.p
    else:
        mats = F.mul(vv[:, :, None], ww[:, None, :])
    return mats.reshape(len(vi), n * m), vv, ww


# ---------------------------------------------------------------------------
# GF(2) bit-packed rows: bit j of the int is column j
# ---------------------------------------------------------------------------

def pack_rows(A) -> list[int]:
    A = asmatrix(A)
    weights = [1 << j for j in range(A.shape[1])]
    return [sum(w for w, a in zip(weights, row) if a) for row in A.tolist()]


def unpack_rows(rows: Sequence[int], N: int) -> np.ndarray:
    out = np.zeros((len(rows), N), dtype=np.int64)
    for i, r in enumerate(rows):
        for j in range(N):
            if (r >> j) & 1:
                out[i, j] = 1
    return out


def bits_rref(rows: Iterable[int]) -> tuple[int, ...]:
    """Canonical reduced basis of the span of packed GF(2) rows.

    The pivot of each row is its highest set bit; rows are fully reduced and
    returned sorted in decreasing order, so equal spans give equal tuples.
    """
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            top = r.bit_length() - 1
            basis = [b ^ r if (b >> top) & 1 else b for b in basis]
            basis.append(r)
    return tuple(sorted(basis, reverse=True))


def bits_reduce(r: int, basis: Sequence[int]) -> int:
    for b in basis:
        r = min(r, r ^ b)
    return r


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of F^N held by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_key")

    def __init__(self, field: Field, ambient_dim: int, rows=None, *, _canonical: bool = False):
        self.field = field
        self.ambient_dim = ambient_dim
        if rows is None:
            B = np.zeros((0, ambient_dim), dtype=np.int64)
        else:
            B = asmatrix(rows, cols=ambient_dim)
            if B.size and B.shape[1] != ambient_dim:
                raise LinalgError("row length does not match ambient dimension")
            B = B.reshape(-1, ambient_dim)
        if _canonical:
            self.basis = B
            self.pivots = tuple(int(np.nonzero(row)[0][0]) for row in B)
        else:
            self.basis, _, self.pivots = rref(field, B) if B.shape[0] else (B, 0, ())
        self.basis.setflags(write=False)
        self._key = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.ambient_dim.to_bytes(4, "little") + self.basis.astype(np.int32).tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.field == other.field and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, N={self.ambient_dim})"

    def _check(self, other: Subspace) -> None:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise LinalgError("ambient dimension mismatch")

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.field, self.ambient_dim, np.concatenate([self.basis, other.basis]))

    def dual_complement(self) -> Subspace:
        if self.dim == 0:
            return Subspace(self.field, self.ambient_dim, np.eye(self.ambient_dim, dtype=np.int64))
        return Subspace(self.field, self.ambient_dim, kernel(self.field, self.basis))

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        return self.dual_complement().sum(other.dual_complement()).dual_complement()

    def contains(self, x) -> bool:
        if isinstance(x, Subspace):
            self._check(x)
            return all(self.contains(row) for row in x.basis)
        v = np.asarray(x, dtype=np.int64).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise LinalgError("vector length does not match ambient dimension")
        return self.reduce(v).any() == False  # noqa: E712

    def reduce(self, v) -> np.ndarray:
        """Remainder of v after clearing the pivot columns of the basis."""
        F = self.field
        v = np.asarray(v, dtype=np.int64).reshape(-1).copy()
        for row, pc in zip(self.basis, self.pivots):
            c = int(v[pc])
            if c:
                v = F.sub(v, F.mul(row, c)) if not _is_prime_field(F) else (v - c * row) % F.p
        return v

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of v in the canonical basis (v must lie in the subspace)."""
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        if not self.contains(v):
            raise LinalgError("vector is not in the subspace")
        return v[list(self.pivots)].astype(np.int64)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)


def subspace_ops(op: str, U: Subspace, V: Subspace | None = None):
    if op == "sum":
        return U.sum(V)
    if op == "intersect":
        return U.intersect(V)
    if op == "contains":
        return U.contains(V)
    if op == "dual_complement":
        return U.dual_complement()
    raise LinalgError(f"unknown subspace operation {op!r}")


def span(F: Field, rows, N: int | None = None) -> Subspace:
    A = asmatrix(rows, cols=N)
    return Subspace(F, A.shape[1] if N is None else N, A)


def batch_rank(F: Field, mats) -> np.ndarray:
    """Ranks of a stack of matrices with shape (B, n, m), by batched elimination."""
    A = np.array(mats, dtype=np.int64)
    if A.ndim != 3:
        raise LinalgError("batch_rank expects a 3-d array")
    if A.shape[1] < A.shape[2]:
        A = np.ascontiguousarray(A.transpose(0, 2, 1))
    B, n, m = A.shape
    r = np.zeros(B, dtype=np.int64)
    rows = np.arange(n)
    for c in range(m):
        col = A[:, :, c]
        cand = (col != 0) & (rows[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        pr = np.argmax(cand[b], axis=1)
        rr = r[b]
        tmp = A[b, pr].copy()
        A[b, pr] = A[b, rr]
        A[b, rr] = tmp
        lead = A[b, rr, c]
        prow = F.mul(A[b, rr], F._inv[lead][:, None])
        A[b, rr] = prow
        factors = np.where(rows[None, :] > rr[:, None], A[b, :, c], 0)
        A[b] = F.sub(A[b], F.mul(factors[:, :, None], prow[:, None, :]))
        r[b] += 1
    return r


def rank_factor(F: Field, M) -> tuple[np.ndarray, np.ndarray]:
    """Columns U (n x r) and rows R (r x m) with M = U R and r = rank(M)."""
    M = asmatrix(M)
    R, r, piv = rref(F, M)
    return M[:, list(piv)], R
