"""Rank-metric codes as 3-tensors over finite fields."""

from .gf import Field, make_field, parse_field, extension_field
from .rankcode import MatrixCode, dual, min_distance, rank_spectrum, is_mrd
from .blockcode import BlockCode, cauchy_code, nq_bounds
from .tensor import Tensor3, SimpleSum
from .trank import SearchConfig, TrkCertificate, tensor_rank, gen_tensor_ranks, inequivalence_witness
from .construct import (ExtremalTriple, verify_triple, rs_extremal_triple, maxsum_triple,
                        extend_triple, gabidulin, poly_mult_tensor, small_trank_code,
                        classify_parameters)

__version__ = "0.1.0"
