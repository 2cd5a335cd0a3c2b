import json

import numpy as np
import pytest

import props
from rmtensor import catalog
from rmtensor.gf import make_field
from rmtensor.linalg import matmul, rank, trace_product
from rmtensor.rankcode import generator_tensor
from rmtensor.serialize import simplesum_from_json, tensor_from_json
from rmtensor.tensor import (SimpleSum, Tensor3, TensorError, double_dot, kruskal_bound_info,
                             kruskal_lower_bound, min_combination_rank, restrict_to_code,
                             simplesum_to_json, slice_dim, slice_space, split, tensor_mult,
                             tensor_to_json, to_coordinates, unfold)

F2, F3 = make_field(2), make_field(3)


def test_single_triple_and_empty_sum():
    e = np.array([1, 0])
    X = to_coordinates(SimpleSum(F2, (2, 2, 2), [(e, e, e)]))
    assert X.entries[0, 0, 0] == 1 and X.entries.sum() == 1
    assert to_coordinates(SimpleSum(F2, (2, 3, 4), [])).is_zero()


def test_simple_sum_rejects_bad_factors():
    with pytest.raises(TensorError):
        SimpleSum(F2, (2, 2, 2), [([0, 0], [1, 0], [1, 0])])
    with pytest.raises(TensorError):
        SimpleSum(F2, (2, 2, 2), [([1, 0, 0], [1, 0], [1, 0])])


def test_worked_example_coordinates_and_slices():
    X = catalog.small_tensor()
    assert int(np.count_nonzero(X.entries)) == 4
    assert np.array_equal(tensor_mult(1, np.array([1, 0]), X), [[1, 0, 0], [0, 1, 0]])
    assert (slice_dim(1, X), slice_dim(2, X), slice_dim(3, X)) == (2, 2, 3)
    S = catalog.small_tensor_decomposition()
    assert len(S) == 3 and to_coordinates(S) == X
    assert kruskal_lower_bound(X) == 3


def test_zero_tensor_slice_spaces():
    Z = Tensor3(F3, np.zeros((2, 3, 2), dtype=np.int64))
    assert all(slice_space(i, Z).dim == 0 for i in (1, 2, 3))
    assert kruskal_bound_info(Z) == (0, True)


def test_unfold_rows_are_slices():
    rng = np.random.default_rng(0)
    X = props.random_tensor(F3, (2, 3, 4), rng)
    for axis in (1, 2, 3):
        U = unfold(X, axis)
        for j in range(X.dims[axis - 1]):
            e = np.zeros(X.dims[axis - 1], dtype=np.int64)
            e[j] = 1
            assert np.array_equal(tensor_mult(axis, e, X).reshape(-1), U[j])


def test_tensor_mult_rejects_bad_shape():
    X = Tensor3(F2, np.zeros((2, 2, 2), dtype=np.int64))
    with pytest.raises(TensorError):
        tensor_mult(2, np.eye(3, dtype=np.int64), X)
    with pytest.raises(TensorError):
        tensor_mult(4, np.eye(2, dtype=np.int64), X)


def test_double_dot_on_matrices_is_trace_product():
    rng = np.random.default_rng(1)
    F = make_field(2, 2)
    for _ in range(20):
        M, N = rng.integers(0, 4, size=(2, 1, 3, 2))
        got = double_dot(Tensor3(F, M), Tensor3(F, N))
        assert got.shape == (1, 1) and got[0, 0] == trace_product(F, M[0], N[0])


def test_double_dot_with_zero():
    X = props.random_tensor(F3, (2, 2, 3), np.random.default_rng(2))
    assert not double_dot(X, Tensor3(F3, np.zeros((3, 2, 3), dtype=np.int64))).any()
    with pytest.raises(TensorError):
        double_dot(X, Tensor3(F3, np.zeros((1, 3, 2), dtype=np.int64)))


@pytest.mark.parametrize("name", ["double-dot identities", "m_i associativity"])
def test_tensor_properties(name):
    rng = np.random.default_rng(3)
    for _ in range(100):
        props.PROPERTIES[name](rng)


def test_split_round_trip():
    rng = np.random.default_rng(4)
    for _ in range(20):
        X = props.random_tensor(make_field(2, 2), (2, 3, 3), rng)
        S = split(X)
        assert to_coordinates(S) == X
        assert len(S) == sum(rank(X.field, X.entries[i]) for i in range(2))


def test_min_combination_rank_against_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(20):
        mats = rng.integers(0, 3, size=(2, 3, 3))
        if rank(F3, mats.reshape(2, -1)) < 2:
            continue
        best = min(rank(F3, (a * mats[0] + b * mats[1]) % 3)
                   for a in range(3) for b in range(3) if a or b)
        assert min_combination_rank(F3, mats)[0] == best


def test_kruskal_bound_for_gtr_code():
    X = generator_tensor(catalog.gtr_code("C1"))
    assert kruskal_lower_bound(X) == 4 + 4 - 1


def test_restrict_to_code_decomposes_generator():
    X = catalog.small_tensor()
    S = catalog.small_tensor_decomposition()
    rank_one = SimpleSum(F3, (1, 2, 3), [(np.ones(1, dtype=np.int64), v, w) for _, v, w in S.triples])
    T = restrict_to_code(rank_one, X.entries)
    assert to_coordinates(T) == X
    with pytest.raises(TensorError):
        restrict_to_code(SimpleSum(F3, (1, 2, 3), rank_one.triples[:1]), X.entries)


def test_json_round_trips():
    rng = np.random.default_rng(6)
    for F in (F3, make_field(2, 3)):
        X = props.random_tensor(F, (2, 3, 2), rng)
        assert tensor_from_json(json.loads(json.dumps(tensor_to_json(X)))) == X
        S = props.random_simple_sum(F, (2, 3, 2), 3, rng)
        S2 = simplesum_from_json(json.loads(json.dumps(simplesum_to_json(S))))
        assert to_coordinates(S2) == to_coordinates(S)


def test_rank_one_matrices_of_sum():
    rng = np.random.default_rng(7)
    S = props.random_simple_sum(F2, (1, 3, 3), 4, rng)
    for (u, v, w), M in zip(S.triples, S.rank_one_matrices()):
        assert np.array_equal(M, matmul(F2, v.reshape(-1, 1), w.reshape(1, -1)))
        assert rank(F2, M) == 1
