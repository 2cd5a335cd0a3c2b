"""Randomized property checks shared by the module tests and the acceptance run.

Each ``prop_*`` draws one instance from ``rng`` and raises AssertionError on failure.
"""

import numpy as np

from rmtensor.blockcode import psi
from rmtensor.gf import make_field
from rmtensor.linalg import (Subspace, inverse, matmul, random_invertible, random_matrix, rank,
                             rank_one_array)
from rmtensor.rankcode import (MatrixCode, apply_equivalence, dual, generator_tensor, min_distance,
                               parity_tensor, puncture, shorten)
from rmtensor.tensor import SimpleSum, Tensor3, double_dot, tensor_mult, to_coordinates
from rmtensor.trank import gen_tensor_ranks, tensor_rank

SMALL_FIELDS = [make_field(2), make_field(3), make_field(2, 2)]


def pick_field(rng, fields=SMALL_FIELDS):
    return fields[int(rng.integers(len(fields)))]


def random_code(F, n, m, k, rng) -> MatrixCode:
    while True:
        B = random_matrix(F, k, n * m, rng)
        if rank(F, B) == k:
            return MatrixCode(F, n, m, B.reshape(k, n, m))


def random_tensor(F, dims, rng) -> Tensor3:
    return Tensor3(F, rng.integers(0, F.order, size=dims))


def random_simple_sum(F, dims, terms, rng) -> SimpleSum:
    trip = []
    while len(trip) < terms:
        u, v, w = (rng.integers(0, F.order, size=x) for x in dims)
        if u.any() and v.any() and w.any():
            trip.append((u, v, w))
    return SimpleSum(F, dims, trip)


def _dot(F, x, y) -> int:
    return int(matmul(F, np.asarray(x).reshape(1, -1), np.asarray(y).reshape(-1, 1))[0, 0])


def prop_puncture_shorten_duality(rng):
    """The dual of a punctured code is the shortened dual code under (T^T)^{-1}."""
    F = pick_field(rng)
    n, m = int(rng.integers(2, 4)), int(rng.integers(2, 4))
    k = int(rng.integers(1, n * m))
    C = random_code(F, n, m, k, rng)
    side = "row" if rng.integers(2) == 0 else "col"
    size = n if side == "row" else m
    T = random_invertible(F, size, rng)
    I = sorted(rng.choice(size, size=int(rng.integers(1, size)), replace=False).tolist())
    P = puncture(C, side, T, I)
    S = shorten(dual(C), side, inverse(F, T).T, I)
    assert dual(P).space == S.space, (side, I)
    # direct oracle for the punctured code: keep the rows of T outside I
    keep = [i for i in range(size) if i not in I]
    if side == "row":
        words = [matmul(F, T[keep], M) for M in C.basis_matrices()]
    else:
        words = [matmul(F, M, T[:, keep]) for M in C.basis_matrices()]
    D = Subspace(F, P.n * P.m, np.array([w.reshape(-1) for w in words]))
    assert D == P.space


def prop_generator_parity_orthogonal(rng):
    """X:Y = 0, and Y:M = 0 exactly for codewords M."""
    F = pick_field(rng)
    n, m = int(rng.integers(1, 4)), int(rng.integers(2, 4))
    k = int(rng.integers(1, n * m))
    C = random_code(F, n, m, k, rng)
    X, Y = generator_tensor(C), parity_tensor(C)
    assert Y.dims == (n * m - k, n, m)
    assert not double_dot(X, Y).any()
    c = rng.integers(0, F.order, size=k)
    M = matmul(F, c.reshape(1, -1), C.space.basis).reshape(1, n, m)
    assert not double_dot(Tensor3(F, M), Y).any()
    R = rng.integers(0, F.order, size=(1, n, m))
    assert (not double_dot(Tensor3(F, R), Y).any()) == C.space.contains(R.reshape(-1))


def prop_double_dot_identities(rng):
    """m_1(A,X):Y = A(X:Y), X:m_1(B,Y) = (X:Y)B^T, and the simple-sum formula."""
    F = pick_field(rng)
    k, k2, n, m = (int(x) for x in rng.integers(1, 4, size=4))
    s, t = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    X, Y = random_tensor(F, (k, n, m), rng), random_tensor(F, (k2, n, m), rng)
    A, B = random_matrix(F, s, k, rng), random_matrix(F, t, k2, rng)
    XY = double_dot(X, Y)
    assert np.array_equal(double_dot(tensor_mult(1, A, X, collapse=False), Y), matmul(F, A, XY))
    assert np.array_equal(double_dot(X, tensor_mult(1, B, Y, collapse=False)), matmul(F, XY, B.T))
    S1 = random_simple_sum(F, (k, n, m), int(rng.integers(1, 4)), rng)
    S2 = random_simple_sum(F, (k2, n, m), int(rng.integers(1, 4)), rng)
    want = np.zeros((k, k2), dtype=np.int64)
    for u, v, w in S1.triples:
        for u2, v2, w2 in S2.triples:
            c = F.mul(_dot(F, v, v2), _dot(F, w, w2))
            want = F.add(want, F.mul(c, matmul(F, u.reshape(-1, 1), u2.reshape(1, -1))))
    assert np.array_equal(double_dot(to_coordinates(S1), to_coordinates(S2)), want)


def prop_mult_associativity(rng):
    """m_i(AB, X) = m_i(A, m_i(B, X)) on every axis."""
    F = pick_field(rng)
    dims = tuple(int(x) for x in rng.integers(1, 4, size=3))
    X = random_tensor(F, dims, rng)
    axis = int(rng.integers(1, 4))
    r, s = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    A, B = random_matrix(F, r, s, rng), random_matrix(F, s, dims[axis - 1], rng)
    lhs = tensor_mult(axis, matmul(F, A, B), X, collapse=False)
    rhs = tensor_mult(axis, A, tensor_mult(axis, B, X, collapse=False), collapse=False)
    assert lhs == rhs


def prop_weight_bound(rng):
    """Coordinates of M in an independent rank-1 set have Hamming weight >= rk M."""
    F = pick_field(rng)
    n, m = int(rng.integers(2, 4)), int(rng.integers(2, 4))
    vecs, _, _ = rank_one_array(F, n, m)
    R = int(rng.integers(1, n * m + 1))
    chosen, cur = [], 0
    for i in rng.permutation(len(vecs)):
        if rank(F, vecs[chosen + [i]]) > cur:
            chosen.append(i)
            cur += 1
            if cur == R:
                break
    A = vecs[chosen].reshape(-1, n, m)
    c = rng.integers(0, F.order, size=len(chosen))
    M = matmul(F, c.reshape(1, -1), vecs[chosen]).reshape(n, m)
    x = psi(F, A, M)
    assert np.array_equal(x, c)
    assert int(np.count_nonzero(x)) >= rank(F, M)


TINY_SHAPES = [(make_field(2), 2, 2), (make_field(2), 2, 3), (make_field(3), 2, 2)]


def _tiny_code(rng):
    F, n, m = TINY_SHAPES[int(rng.integers(len(TINY_SHAPES)))]
    k = int(rng.integers(1, n * m))
    return random_code(F, n, m, k, rng)


def prop_trk_invariance(rng, cfg=None):
    """trk is unchanged by A X B and, for square codes, by transposition."""
    C = _tiny_code(rng)
    F = C.field
    A, B = random_invertible(F, C.n, rng), random_invertible(F, C.m, rng)
    t0 = tensor_rank(C, cfg).value
    assert tensor_rank(apply_equivalence(C, A, B), cfg).value == t0
    if C.n == C.m:
        assert tensor_rank(apply_equivalence(C, A, B, transpose=True), cfg).value == t0


def prop_gtr_chain(rng, cfg=None):
    """d_1 = d, d_k = trk, d + r - 1 <= d_r <= trk - k + r, strictly increasing."""
    C = _tiny_code(rng)
    prof = gen_tensor_ranks(C, cfg).values
    d = min_distance(C)
    trk = tensor_rank(C, cfg).value
    k = C.k
    assert len(prof) == k and prof[0] == d and prof[-1] == trk
    for r, x in enumerate(prof, start=1):
        assert d + r - 1 <= x <= trk - k + r
    assert all(a < b for a, b in zip(prof, prof[1:]))


PROPERTIES = {
    "puncture/shorten duality": prop_puncture_shorten_duality,
    "X:Y = 0 for generator/parity pairs": prop_generator_parity_orthogonal,
    "double-dot identities": prop_double_dot_identities,
    "m_i associativity": prop_mult_associativity,
    "weight bound wt(psi_A(M)) >= rk M": prop_weight_bound,
    "trk invariance under equivalence": prop_trk_invariance,
    "GTR bound chain": prop_gtr_chain,
}
