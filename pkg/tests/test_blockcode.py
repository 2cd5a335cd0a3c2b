import itertools
import json

import numpy as np
import pytest

from rmtensor import catalog
from rmtensor.blockcode import (BlockCode, BlockCodeError, cauchy_code, default_points, evaluate, griesmer,
                                hamming_min_distance, nq_bounds, phi, phi_code, psi, rank_via_subspaces,
                                rank_weight_transfer)
from rmtensor.gf import make_field
from rmtensor.linalg import matmul, outer, random_matrix, rank
from rmtensor.serialize import blockcode_from_json, blockcode_to_json

F2 = make_field(2)


def _f8_triple():
    F = catalog.f8_field()
    alpha = default_points(F, 7)
    C = cauchy_code(F, alpha, None, 5)
    V = catalog.from_exponents(F, catalog.F8_V_EXP)
    W = catalog.from_exponents(F, catalog.F8_W_EXP)
    (r, c), _, fixed = catalog.F8_W_MISPRINT
    W[r, c] = F.gen_pow(fixed)
    return F, C, V, W


def _exists_binary_code(N, k, d):
    """Any [N, k, d] binary code has a systematic form [I | P] up to column order."""
    if N < k:
        return False
    if N == k:
        return d <= 1
    I = np.eye(k, dtype=np.int64)
    for bits in itertools.product((0, 1), repeat=k * (N - k)):
        G = np.concatenate([I, np.array(bits, dtype=np.int64).reshape(k, N - k)], axis=1)
        if hamming_min_distance(BlockCode(F2, G)) >= d:
            return True
    return False


def test_repetition_and_full_space():
    assert hamming_min_distance(BlockCode(F2, np.ones((1, 5), dtype=np.int64))) == 5
    F = make_field(3)
    assert hamming_min_distance(BlockCode(F, np.eye(4, dtype=np.int64))) == 1


def test_rs_code_from_example():
    F = catalog.f8_field()
    alpha = default_points(F, 7)
    assert alpha == [F.gen_pow(i) for i in range(7)]
    C = cauchy_code(F, alpha, None, 5)
    assert (C.N, C.k, hamming_min_distance(C)) == (7, 5, 3)


def test_evaluation_of_example_polynomial():
    F = catalog.f8_field()
    alpha = default_points(F, 7)
    assert evaluate(F, catalog.F8_F, alpha) == [F.gen_pow(e) for e in catalog.F8_EVF_EXP]


def test_cauchy_code_with_infinity():
    C = cauchy_code(F2, [0, 1, None], None, 2)
    assert C == BlockCode(F2, [[0, 1, 1], [1, 1, 0]])
    assert hamming_min_distance(C) == 2


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8])
def test_cauchy_codes_are_mds(q):
    from rmtensor.gf import field_from_order
    F = field_from_order(q)
    for N in range(3, q + 2):
        alpha = default_points(F, N)
        for k in range(1, N):
            if q ** k > 5000:
                continue
            assert hamming_min_distance(cauchy_code(F, alpha, None, k)) == N - k + 1


def test_cauchy_code_errors():
    with pytest.raises(BlockCodeError):
        cauchy_code(F2, [0, 1, 1], None, 2)
    with pytest.raises(BlockCodeError):
        cauchy_code(F2, [0, 1, None], None, 3)
    with pytest.raises(BlockCodeError):
        default_points(F2, 4)


def test_nq_examples():
    assert nq_bounds(8, 5, 3) == (7, 7, True)
    assert nq_bounds(2, 2, 3) == (5, 5, True)
    assert nq_bounds(2, 4, 4) == (8, 8, True)
    assert griesmer(2, 4, 4) == 8


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nq_against_exhaustive_binary_search(k):
    for d in range(1, 5):
        lower, upper, exact = nq_bounds(2, k, d)
        true = next(N for N in range(k, 20) if _exists_binary_code(N, k, d))
        assert lower <= true <= upper
        if exact:
            assert true == lower


def test_nq_bounds_are_consistent():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for k in range(1, 7):
            for d in range(1, 7):
                lo, up, exact = nq_bounds(q, k, d)
                assert k + d - 1 <= lo <= up and exact == (lo == up)
                if k + d - 1 <= q + 1:
                    assert up == k + d - 1


def test_psi_examples():
    F = make_field(3)
    A = [outer(F, [1, 0], [1, 0]), outer(F, [0, 1], [1, 1]), outer(F, [1, 1], [0, 1])]
    assert list(psi(F, A, A[0])) == [1, 0, 0]
    assert not psi(F, A, np.zeros((2, 2), dtype=np.int64)).any()
    with pytest.raises(BlockCodeError):
        psi(F, A, np.array([[0, 0], [1, 0]]))
    with pytest.raises(BlockCodeError):
        psi(F, A + [A[0]], A[0])


def test_phi_examples():
    F = make_field(5)
    rng = np.random.default_rng(0)
    V, W = rng.integers(0, 5, size=(2, 3, 4))
    for r in range(4):
        e = np.zeros(4, dtype=np.int64)
        e[r] = 1
        assert np.array_equal(phi(F, V, W, e), outer(F, V[:, r], W[:, r]))
    x = rng.integers(0, 5, size=3)
    I3 = np.eye(3, dtype=np.int64)
    assert np.array_equal(phi(F, I3, I3, x), np.diag(x))


def test_phi_image_of_example_and_preimage_is_mds():
    F, C, V, W = _f8_triple()
    code = phi_code(C, V, W)
    A = [outer(F, V[:, i], W[:, i]) for i in range(7)]
    pre = BlockCode(F, np.array([psi(F, A, M) for M in code.basis_matrices()]))
    assert pre == C
    assert (pre.N, pre.k, hamming_min_distance(pre)) == (7, 5, 3)
    for c in rank_weight_sample(C, 50):
        assert rank(F, phi(F, V, W, c)) >= 3


def rank_weight_sample(C, count):
    rng = np.random.default_rng(1)
    coeffs = rng.integers(0, C.field.order, size=(count, C.k))
    coeffs = coeffs[coeffs.any(axis=1)]
    return matmul(C.field, coeffs, C.generator)


def test_rank_weight_transfer_of_example():
    F, C, V, W = _f8_triple()
    assert rank_weight_transfer(C, V, W) == (5, 3, 7)


def test_rank_formula_on_random_triples():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        F = [make_field(2), make_field(3), make_field(2, 2)][int(rng.integers(3))]
        R = int(rng.integers(2, 6))
        V = random_matrix(F, int(rng.integers(1, R + 1)), R, rng)
        W = random_matrix(F, int(rng.integers(1, R + 1)), R, rng)
        c = rng.integers(0, F.order, size=R)
        assert rank_via_subspaces(F, V, W, c) == rank(F, phi(F, V, W, c))


def test_blockcode_basics_and_json():
    F = make_field(3)
    C = BlockCode(F, [[1, 2, 0, 1], [0, 1, 1, 1]])
    D = C.dual()
    assert D.k == 2 and not matmul(F, C.generator, D.generator.T).any()
    assert C.contains([1, 0, 1, 2]) and not C.contains([1, 0, 0, 0])
    assert blockcode_from_json(json.loads(json.dumps(blockcode_to_json(C)))) == C
