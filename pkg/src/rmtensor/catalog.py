"""Fixed worked examples used by ``reproduce`` and the acceptance checks."""

from __future__ import annotations

import numpy as np

from .gf import Field, make_field
from .rankcode import MatrixCode
from .tensor import SimpleSum, Tensor3

_I4 = np.eye(4, dtype=np.int64).tolist()

GTR_BASES = {
    "C1": [_I4,
           [[0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 1, 0]],
           [[0, 0, 1, 0], [0, 0, 1, 1], [1, 0, 1, 0], [1, 1, 0, 1]],
           [[0, 0, 0, 1], [1, 0, 1, 0], [1, 1, 0, 1], [0, 1, 0, 1]]],
    "C2": [_I4,
           [[0, 1, 0, 0], [1, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 1]],
           [[0, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0]],
           [[0, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, 1], [1, 0, 0, 1]]],
    "C3": [_I4,
           [[0, 1, 0, 0], [0, 1, 1, 1], [1, 0, 0, 0], [1, 0, 0, 1]],
           [[0, 0, 1, 0], [1, 0, 0, 0], [1, 0, 0, 1], [0, 1, 0, 0]],
           [[0, 0, 0, 1], [0, 1, 0, 1], [1, 1, 1, 0], [0, 1, 1, 0]]],
}

GTR_EXPECTED = {"C1": (4, 6, 8, 9), "C2": (4, 6, 7, 9), "C3": (4, 6, 7, 9)}
DUAL_TRK_EXPECTED = {"C2": 14, "C3": 13}


def gtr_code(name: str) -> MatrixCode:
    """One of three binary 4x4 codes of dimension 4 and minimum distance 4."""
    return MatrixCode(make_field(2), 4, 4, GTR_BASES[name])


def small_tensor() -> Tensor3:
    """e1 (x) (e1 e1 + e2 e2) + e2 (x) (e1 e2 + e2 e3) in GF(3)^{2x2x3}."""
    X = np.zeros((2, 2, 3), dtype=np.int64)
    X[0, 0, 0] = X[0, 1, 1] = 1
    X[1, 0, 1] = X[1, 1, 2] = 1
    return Tensor3(make_field(3), X)


def small_tensor_decomposition() -> SimpleSum:
    """The three-term decomposition; 1/2 = 2 and -1 = 2 in GF(3)."""
    F = make_field(3)
    a = np.array
    trip = [(a([1, 0]), a([1, 0]), a([1, 0, 2])),
            (a([2, 2]), a([1, 1]), a([0, 1, 1])),
            (a([1, 2]), a([1, 2]), a([0, 1, 2]))]
    return SimpleSum(F, (2, 2, 3), trip)


# exponents of a primitive element w of GF(8); None is zero
F8_V_EXP = [[0, None, None, None, None, 6, 2],
            [None, 0, None, None, None, 3, 5],
            [None, None, 0, None, None, 6, 3],
            [None, None, None, 0, None, 5, 4],
            [None, None, None, None, 0, 4, 2]]
F8_W_EXP = [[0, None, None, 3, 1, 0, 2],
            [None, 0, None, 6, 6, 0, 2],
            [None, None, 0, 5, 4, 0, 4]]
F8_EVF_EXP = [0, 1, 2, 4, 4, 2, 1]
F8_F = [1, 0, 1, 0, 0, 1]                      # x^5 + x^2 + 1
F8_W_MISPRINT = ((0, 6), 2, 3)                 # entry (row, col), reference exponent, consistent exponent


def from_exponents(F: Field, rows) -> np.ndarray:
    return np.array([[0 if e is None else F.gen_pow(e) for e in r] for r in rows], dtype=np.int64)


def f8_field() -> Field:
    return make_field(2, 3)
