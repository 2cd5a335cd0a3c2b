import numpy as np
import pytest

import props
from rmtensor import catalog
from rmtensor.construct import poly_mult_tensor, rs_extremal_triple
from rmtensor.gf import make_field
from rmtensor.linalg import enumerate_subspaces, rank
from rmtensor.rankcode import CodeError, MatrixCode, dual
from rmtensor.tensor import to_coordinates
from rmtensor.trank import (SearchConfig, SearchError, excess_table, exhaustive_gtr, exhaustive_tensor_rank,
                            gen_tensor_ranks, inequivalence_witness, mtr_verdict, tensor_rank,
                            tensor_rank_of_tensor)

F2 = make_field(2)


def _certificate_decomposes(C, cert):
    """The upper certificate is a simple sum equal to the generator tensor of C."""
    X = to_coordinates(cert.upper)
    assert X.dims == (C.k, C.n, C.m)
    assert MatrixCode(C.field, C.n, C.m, X.entries) == C
    assert len(cert.upper) == cert.upper_value


def test_worked_example_rank():
    cert = tensor_rank_of_tensor(catalog.small_tensor())
    assert cert.exact and cert.value == 3 and cert.lower == 3
    assert to_coordinates(cert.upper) == catalog.small_tensor()


@pytest.mark.parametrize("strategy", ["quotient_bfs", "codim_enum", "exhaustive"])
def test_strategies_agree_on_small_codes(strategy):
    cfg = SearchConfig(strategy=strategy)
    for k in (1, 2, 3):
        for B in enumerate_subspaces(F2, 4, k):
            C = MatrixCode(F2, 2, 2, B.reshape(-1, 2, 2))
            cert = tensor_rank(C, cfg)
            assert cert.value == exhaustive_tensor_rank(C)[0]
            _certificate_decomposes(C, cert)


def test_random_codes_over_gf3():
    rng = np.random.default_rng(0)
    F = make_field(3)
    for _ in range(15):
        C = props.random_code(F, 2, 2, int(rng.integers(1, 4)), rng)
        a = tensor_rank(C, SearchConfig(strategy="quotient_bfs")).value
        b = tensor_rank(C, SearchConfig(strategy="codim_enum")).value
        assert a == b == exhaustive_tensor_rank(C)[0]


def test_one_dimensional_code_profile():
    M = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    C = MatrixCode(F2, 3, 3, [M])
    assert gen_tensor_ranks(C).values == (rank(F2, M),)


def test_gtr_against_definition():
    rng = np.random.default_rng(1)
    for _ in range(25):
        C = props._tiny_code(rng)
        assert gen_tensor_ranks(C).values == exhaustive_gtr(C)
        assert gen_tensor_ranks(C, SearchConfig(strategy="exhaustive")).values == exhaustive_gtr(C)


def test_gtr_matches_excess_table():
    rng = np.random.default_rng(2)
    for _ in range(10):
        C = props.random_code(F2, 2, 3, int(rng.integers(1, 5)), rng)
        tau = excess_table(C)
        assert gen_tensor_ranks(C).values == tuple(r + tau[r] for r in range(1, C.k + 1))


def test_gtr_subcode_certificates():
    rng = np.random.default_rng(3)
    C = props.random_code(F2, 2, 3, 3, rng)
    prof = gen_tensor_ranks(C)
    for r, (S, dr) in enumerate(zip(prof.certificates, prof.values), start=1):
        assert len(S) == dr and S.dims[0] == r
        X = to_coordinates(S)
        sub = MatrixCode(F2, 2, 3, X.entries)
        assert sub.k == r and all(C.contains(M) for M in sub.basis_matrices())


def test_property_suites_small():
    rng = np.random.default_rng(4)
    for _ in range(30):
        props.prop_trk_invariance(rng)
        props.prop_gtr_chain(rng)


def test_dual_tensor_ranks():
    for name, want in catalog.DUAL_TRK_EXPECTED.items():
        cert = tensor_rank(dual(catalog.gtr_code(name)), SearchConfig(strategy="codim_enum"))
        assert cert.value == want
        _certificate_decomposes(dual(catalog.gtr_code(name)), cert)


def test_poly_mult_rank_over_gf2():
    X = poly_mult_tensor(2, 2, 2, 2, [1, 1, 1])
    cert = tensor_rank_of_tensor(X)
    assert cert.value == 3
    assert to_coordinates(cert.upper) == X


def test_budget_exhaustion_reports_bounds():
    C = catalog.gtr_code("C1")
    cert = tensor_rank(C, SearchConfig(strategy="quotient_bfs", node_budget=50))
    assert not cert.exact and cert.lower_reason == "budget_exhausted"
    assert 7 <= cert.lower <= cert.upper_value
    with pytest.raises(SearchError):
        cert.value


def test_search_config_validation():
    with pytest.raises(SearchError):
        SearchConfig(strategy="magic")
    with pytest.raises(SearchError):
        SearchConfig(workers=0)


def test_zero_code_rejected():
    with pytest.raises(CodeError, match="nonzero code required"):
        tensor_rank(MatrixCode(F2, 2, 2))


def test_mtr_verdict_for_example_code():
    T = rs_extremal_triple(8, 5, 3, f=catalog.F8_F)
    v = mtr_verdict(T.code, upper_hint=T.simple_sum())
    assert v.label == "MTR" and v.mtr and v.extremal
    assert v.evidence["trk_upper"] == 7 and v.evidence["nq_lower"] == 7


def test_mtr_verdict_small_rs_code():
    T = rs_extremal_triple(4, 3, 2)
    cert = tensor_rank(T.code)
    assert cert.value == 4
    assert mtr_verdict(T.code).mtr


def test_verdict_single_full_rank_matrix():
    C = MatrixCode(F2, 3, 3, [np.eye(3, dtype=np.int64)])
    assert mtr_verdict(C).label == "MTR"


def test_inequivalence_cheap_invariants():
    a = MatrixCode(F2, 2, 2, [np.eye(2, dtype=np.int64)])
    b = MatrixCode(F2, 2, 2, [[[1, 0], [0, 0]]])
    assert inequivalence_witness(a, b).invariant == "min_distance"
    c = MatrixCode(F2, 2, 2, [np.eye(2, dtype=np.int64), [[0, 1], [0, 0]]])
    assert inequivalence_witness(a, c).invariant == "dim"
    assert not inequivalence_witness(a, a).inequivalent


def test_inequivalence_by_gtr_with_given_profiles():
    C1, C2 = catalog.gtr_code("C1"), catalog.gtr_code("C2")
    w = inequivalence_witness(C1, C2, profiles=(catalog.GTR_EXPECTED["C1"], catalog.GTR_EXPECTED["C2"]))
    assert w.inequivalent and w.invariant == "gtr" and w.detail["first_r"] == 3


def test_inequivalence_by_dual_rank():
    C2, C3 = catalog.gtr_code("C2"), catalog.gtr_code("C3")
    w = inequivalence_witness(C2, C3, profiles=(catalog.GTR_EXPECTED["C2"], catalog.GTR_EXPECTED["C3"]))
    assert w.inequivalent and w.invariant == "dual_trk" and w.values == (14, 13)


def test_upper_hint_meeting_bound_skips_search():
    T = rs_extremal_triple(8, 5, 3, f=catalog.F8_F)
    cert = tensor_rank(T.code, upper_hint=T.simple_sum())
    assert cert.provenance["strategy"] == "bound_meets_hint" and cert.value == 7
    X = to_coordinates(cert.upper)
    basis = T.code.basis_matrices()
    assert np.array_equal(X.entries, basis)


def test_verdict_neither():
    mats = [[[1, 0, 0], [0, 1, 1], [0, 0, 0]], [[0, 1, 0], [0, 1, 1], [0, 0, 1]],
            [[0, 0, 1], [0, 0, 1], [0, 1, 1]], [[0, 0, 0], [1, 1, 0], [1, 0, 1]]]
    v = mtr_verdict(MatrixCode(F2, 3, 3, mats))
    assert v.label == "neither" and v.mtr is False and v.extremal is False
    assert v.evidence["trk_upper"] == 6 and v.evidence["nq_upper"] == 4


@pytest.mark.slow
def test_verdict_neither_for_gtr_code():
    v = mtr_verdict(catalog.gtr_code("C1"))
    assert v.label == "neither"
    assert (v.evidence["k"], v.evidence["d"], v.evidence["trk_upper"]) == (4, 4, 9)
