"""Linear block codes and the maps between block codes and matrix codes."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .gf import Field
from .linalg import (Subspace, matmul, projective_points, rank, rref, solve_left)
from .rankcode import MatrixCode

INF = None  # the point at infinity of the projective line


class BlockCodeError(ValueError):
    pass


class BlockCode:
    """A linear [N, k] code over GF(q) stored by its canonical RREF generator."""

    def __init__(self, field: Field, generator):
        G = np.asarray(generator, dtype=np.int64)
        if G.ndim != 2:
            raise BlockCodeError("generator must be a 2-d matrix")
        self.field = field
        self.N = G.shape[1]
        self.space = Subspace(field, self.N, G) if G.shape[0] else Subspace(field, self.N)

    @property
    def k(self) -> int:
        return self.space.dim

    @property
    def generator(self) -> np.ndarray:
        return self.space.basis

    def parity_check(self) -> np.ndarray:
        return self.space.dual_complement().basis

    def dual(self) -> BlockCode:
        return BlockCode(self.field, self.parity_check())

    def contains(self, x) -> bool:
        return self.space.contains(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockCode) and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)

    def __repr__(self) -> str:
        return f"BlockCode(GF({self.field.order}), [{self.N},{self.k}])"


def codewords_projective(C: BlockCode, chunk: int = 1 << 15):
    coeffs = projective_points(C.field, C.k)
    for s in range(0, coeffs.shape[0], chunk):
        yield matmul(C.field, coeffs[s:s + chunk], C.generator)


def hamming_min_distance(C: BlockCode) -> int:
    if C.k == 0:
        raise BlockCodeError("nonzero code required")
    best = C.N
    for words in codewords_projective(C):
        best = min(best, int((words != 0).sum(axis=1).min()))
        if best == 1:
            break
    return best


# ---------------------------------------------------------------------------
# Cauchy codes on the projective line
# ---------------------------------------------------------------------------

def cauchy_matrix(F: Field, alpha: Sequence, beta: Sequence[int], k: int) -> np.ndarray:
    """k x N evaluation matrix of the monomials x^j y^(k-1-j), scaled by beta.

    A point ``None`` (or "inf") stands for infinity, where only x^(k-1) survives.
    """
    pts = [None if a is None or a == "inf" else int(a) for a in alpha]
    finite = [a for a in pts if a is not None]
    if len(set(finite)) != len(finite) or pts.count(None) > 1:
        raise BlockCodeError("evaluation points must be distinct")
    N = len(pts)
    if len(beta) != N:
        raise BlockCodeError("beta must have one entry per evaluation point")
    G = np.zeros((k, N), dtype=np.int64)
    for i, a in enumerate(pts):
        for j in range(k):
            if a is None:
                val = 1 if j == k - 1 else 0
            else:
                val = F.pow(a, j)
            G[j, i] = F.mul(val, int(beta[i]))
    return G


def cauchy_code(F: Field, alpha: Sequence, beta: Sequence[int] | None, k: int) -> BlockCode:
    N = len(alpha)
    if not 1 <= k <= N - 1:
        raise BlockCodeError(f"dimension {k} out of range 1..{N - 1}")
    if beta is None:
        beta = [1] * N
    return BlockCode(F, cauchy_matrix(F, alpha, beta, k))


def evaluate(F: Field, f: Sequence[int], alpha: Sequence) -> list[int]:
    """ev_alpha(f) for a univariate f; at infinity the value is the leading coefficient
    of the degree-(deg f) homogenization, i.e. f's top coefficient."""
    from .gf import poly_eval, poly_trim

    f = poly_trim(f)
    out = []
    for a in alpha:
        if a is None or a == "inf":
            out.append(f[-1] if f else 0)
        else:
            out.append(poly_eval(F, f, int(a)))
    return out


def default_points(F: Field, R: int) -> list:
    """Powers of the generator, then 0, then infinity."""
    q = F.order
    if R > q + 1:
        raise BlockCodeError(f"only {q + 1} points on the projective line over GF({q})")
    pts: list = [F.gen_pow(i) for i in range(min(R, q - 1))]
    if R >= q:
        pts.append(0)
    if R == q + 1:
        pts.append(None)
    return pts


# ---------------------------------------------------------------------------
# N_q(k, d)
# ---------------------------------------------------------------------------

def griesmer(q: int, k: int, d: int) -> int:
    return sum(-(-d // q ** i) for i in range(k))


@lru_cache(maxsize=None)
def _upper_table(q: int, K: int, D: int) -> tuple[tuple[int, ...], ...]:
    """Lengths of explicit [N, k, >= d] codes for k <= K, d <= D, closed under simple operations."""
    big = 10 ** 9
    U = [[big] * (D + 1) for _ in range(K + 1)]
    for k in range(1, K + 1):
        for d in range(1, D + 1):
            best = k * d                                           # repetition of every symbol
            if d == 1:
                best = k
            if k == 1:
                best = min(best, d)
            if d == 2:
                best = min(best, k + 1)
            if k + d - 1 <= q + 1:                                 # Cauchy / doubly extended RS
                best = min(best, k + d - 1)
            if k == 2:                                             # projective-line points, repeated
                N = d
                while N - -(-N // (q + 1)) < d:
                    N += 1
                best = min(best, N)
            s = -(-d // q ** (k - 1))                              # simplex copies
            best = min(best, s * (q ** k - 1) // (q - 1))
            if q == 2 and k >= 2:
                r = k - 1                                          # first-order Reed-Muller [2^r, r+1, 2^(r-1)]
                if d <= 2 ** (r - 1):
                    best = min(best, 2 ** r)
            U[k][d] = best
    changed = True
    while changed:
        changed = False
        for k in range(1, K + 1):
            for d in range(1, D + 1):
                cand = U[k][d]
                for d1 in range(1, d):                             # juxtaposition
                    cand = min(cand, U[k][d1] + U[k][d - d1])
                if d < D:
                    cand = min(cand, U[k][d + 1] - 1)              # puncture
                if k < K:
                    cand = min(cand, U[k + 1][d] - 1)              # shorten
                if cand < U[k][d]:
                    U[k][d] = cand
                    changed = True
    return tuple(tuple(r) for r in U)


def nq_bounds(q: int, k: int, d: int) -> tuple[int, int, bool]:
    """(lower, upper, exact) for the shortest length of an [N, k, d] code over GF(q)."""
    if k < 1 or d < 1:
        raise BlockCodeError("k and d must be positive")
    lower = max(k + d - 1, griesmer(q, k, d))
    table = _upper_table(q, k + 2, d + 2)
    upper = table[k][d]
    assert upper >= lower, "construction table below the Griesmer bound"
    return lower, upper, lower == upper


# ---------------------------------------------------------------------------
# the maps psi_A and phi_{V,W}
# ---------------------------------------------------------------------------

def psi(F: Field, A: Sequence, M) -> np.ndarray:
    """Coordinates of M in the independent rank-1 set A."""
    mats = np.array([np.asarray(a, dtype=np.int64).reshape(-1) for a in A])
    if rank(F, mats) != len(A):
        raise BlockCodeError("the rank-1 set is linearly dependent")
    c = solve_left(F, mats, np.asarray(M, dtype=np.int64).reshape(-1))
    if c is None:
        raise BlockCodeError("matrix is outside the span of the rank-1 set")
    return c


def phi(F: Field, V, W, x) -> np.ndarray:
    """V diag(x) W^T."""
    V = np.asarray(V, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    if V.shape[1] != len(x) or W.shape[1] != len(x):
        raise BlockCodeError("V, W and x must share the length R")
    return matmul(F, F.mul(V, x[None, :]), W.T)


def phi_code(C: BlockCode, V, W) -> MatrixCode:
    F = C.field
    V = np.asarray(V, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    mats = [phi(F, V, W, g) for g in C.generator]
    return MatrixCode(F, V.shape[0], W.shape[0], mats)


def rank_via_subspaces(F: Field, V, W, c) -> int:
    """rk(V diag(c) W^T) = rk(V) - dim(C_V cap C_{W_c}^perp) for the row spaces C_V, C_{W_c}."""
    V = np.asarray(V, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    R = V.shape[1]
    CV = Subspace(F, R, V)
    CWc = Subspace(F, R, F.mul(W, np.asarray(c, dtype=np.int64)[None, :]))
    return CV.dim - CV.intersect(CWc.dual_complement()).dim


def rank_weight_transfer(C: BlockCode, V, W) -> tuple[int, int, int]:
    """(dim, min rank distance, tensor-rank upper bound R) of phi_{V,W}(C)."""
    F = C.field
    V = np.asarray(V, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    if rank(F, V) != min(V.shape) or rank(F, W) != min(W.shape):
        raise BlockCodeError("V and W must have full rank (pad or reduce first)")
    from .linalg import batch_rank

    best = None
    for words in codewords_projective(C):
        Vx = F.mul(V[None, :, :], words[:, None, :])
        mats = np.stack([matmul(F, Vx[i], W.T) for i in range(words.shape[0])])
        ranks = batch_rank(F, mats)
        for i in range(min(len(ranks), 64)):
            if rank_via_subspaces(F, V, W, words[i]) != ranks[i]:
                raise AssertionError("subspace rank formula disagrees with direct rank")
        m = int(ranks.min())
        best = m if best is None else min(best, m)
    image = phi_code(C, V, W)
    return image.k, best, C.N
