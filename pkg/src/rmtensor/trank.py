"""Exact tensor rank and generalized tensor ranks of small matrix codes.

The search works in the quotient F^{nm}/C, identified with F^L (L = nm - k)
through a parity-check matrix H.  Every projective rank-1 matrix a has an image
H a; nonzero images are grouped into projective points with multiplicities.
For a subspace Q of F^L let P_Q be the rank-1 classes whose image lies in Q and

    e(Q) = rank(P_Q) - dim Q.

A rank-1-spanned space U with dim(U cap C) >= r exists with dim U = dim Q + r
exactly when e(Q) >= r, so

    d_r(C) = r + min{dim Q : e(Q) >= r},   trk(C) = d_k(C).

e(Q) never decreases when Q grows by a point, so each level is either ruled out
completely or witnessed.  The exhaustive strategy works from the definitions
directly and is the oracle the quotient strategies are checked against.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .blockcode import nq_bounds
from .gf import Field
from .linalg import (Subspace, bits_rref, enumerate_subspaces, gaussian_binomial, kernel,
                     normalize_projective, pack_rows, rank, rank_factor, rank_one_array)
from .rankcode import (CodeError, MatrixCode, dual, min_distance_witness, rank_spectrum)
from .tensor import SimpleSum, Tensor3, restrict_to_code

STRATEGIES = ("auto", "quotient_bfs", "codim_enum", "exhaustive")
CODIM_ENUM_LIMIT = 200_000


class BudgetExhausted(RuntimeError):
    """Search stopped early; ``lower`` and ``upper`` are still valid bounds."""

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class SearchError(ValueError):
    pass


@dataclass
class SearchConfig:
    strategy: str = "auto"
    workers: int = 1
    node_budget: int = 20_000_000
    time_budget: float = 3600.0
    seed: int = 0
    greedy_trials: int = 400

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise SearchError(f"unknown strategy {self.strategy!r}")
        if self.workers < 1 or self.node_budget < 1 or self.time_budget <= 0:
            raise SearchError("budgets and worker count must be positive")


@dataclass
class TrkCertificate:
    """trk bounds with an explicit simple-sum witness for the upper bound."""

    upper: SimpleSum | None
    upper_value: int
    lower: int
    lower_reason: str
    provenance: dict = dc_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper_value

    @property
    def value(self) -> int:
        if not self.exact:
            raise SearchError(f"tensor rank only bounded: {self.lower} <= trk <= {self.upper_value}")
        return self.upper_value


@dataclass
class GtrProfile:
    values: tuple[int, ...]
    certificates: list = dc_field(default_factory=list)
    provenance: dict = dc_field(default_factory=dict)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


# ---------------------------------------------------------------------------
# quotient model
# ---------------------------------------------------------------------------

class _Budget:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.start = time.monotonic()
        self.nodes = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.cfg.node_budget:
            raise BudgetExhausted(f"node budget {self.cfg.node_budget} exhausted")
        if time.monotonic() - self.start > self.cfg.time_budget:
            raise BudgetExhausted(f"time budget {self.cfg.time_budget}s exhausted")


def _encode(F: Field, A: np.ndarray) -> np.ndarray:
    """Integer code of each row (base q, first entry most significant)."""
    q = F.order
    L = A.shape[1]
    if L == 0:
        return np.zeros(A.shape[0], dtype=np.int64)
    w = q ** np.arange(L - 1, -1, -1, dtype=np.int64)
    return A @ w


def _reduce_rows(F: Field, R: np.ndarray, B: np.ndarray, piv) -> np.ndarray:
    """Clear the pivot columns of the RREF basis B from every row of R."""
    R = R.copy()
    for row, pc in zip(B, piv):
        c = R[:, pc]
        nzm = c != 0
        if not nzm.any():
            continue
        if F.order == 2:
            R[nzm] ^= row
        else:
            R[nzm] = F.sub(R[nzm], F.mul(c[nzm, None], row[None, :]))
    return R


def _insert_row(F: Field, B: np.ndarray, piv: tuple, r: np.ndarray) -> tuple[np.ndarray, tuple]:
    """RREF of B plus a row r already reduced against B and normalized."""
    pc = int(np.nonzero(r)[0][0])
    if B.shape[0]:
        c = B[:, pc]
        nzm = c != 0
        if nzm.any():
            B = B.copy()
            if F.order == 2:
                B[nzm] ^= r
            else:
                B[nzm] = F.sub(B[nzm], F.mul(c[nzm, None], r[None, :]))
    pos = 0
    while pos < len(piv) and piv[pos] < pc:
        pos += 1
    newB = np.concatenate([B[:pos], r[None, :], B[pos:]], axis=0)
    return newB, piv[:pos] + (pc,) + piv[pos:]


class QuotientModel:
    """Rank-1 classes of F^{n x m} and their images in the quotient by a code."""

    def __init__(self, C: MatrixCode):
        if C.k == 0:
            raise CodeError("nonzero code required")
        F = C.field
        self.code = C
        self.field = F
        self.n, self.m, self.k = C.n, C.m, C.k
        self.L = C.n * C.m - C.k
        vecs, vv, ww = rank_one_array(F, C.n, C.m)
        self.vecs, self.vfac, self.wfac = vecs, vv, ww
        if self.L:
            H = kernel(F, C.space.basis)            # rows span C^perp
            img = _matmul_T(F, vecs, H)
        else:
            img = np.zeros((vecs.shape[0], 0), dtype=np.int64)
        self.images = img
        nz = img.any(axis=1)
        self.zero_idx = np.nonzero(~nz)[0]
        norm = normalize_projective(F, img[nz]) if nz.any() else img[nz]
        codes = _encode(F, norm)
        uniq, first, inv, counts = np.unique(codes, return_index=True, return_inverse=True,
                                             return_counts=True)
        nz_idx = np.nonzero(nz)[0]
        self.points = norm[first]
        self.weights = counts.astype(np.int64)
        self.point_members = [[] for _ in range(len(uniq))]
        for cls, p in zip(nz_idx.tolist(), inv.tolist()):
            self.point_members[p].append(cls)
        self.e0 = self._rank_of(self.zero_idx)

    # e(Q) and membership ------------------------------------------------
    def _rank_of(self, idx) -> int:
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size == 0:
            return 0
        if self.field.order == 2 and self.vecs.shape[1] <= 62:
            return len(bits_rref(pack_rows(self.vecs[idx])))
        return rank(self.field, self.vecs[idx])

    def members(self, B: np.ndarray, piv: tuple) -> np.ndarray:
        """Indices of rank-1 classes whose image lies in rowspace(B)."""
        if B.shape[0] == 0:
            return self.zero_idx
        R = _reduce_rows(self.field, self.images, B, piv)
        return np.nonzero(~R.any(axis=1))[0]

    def excess(self, B: np.ndarray, piv: tuple) -> int:
        return self._rank_of(self.members(B, piv)) - B.shape[0]

    def point_weight_in(self, B: np.ndarray, piv: tuple) -> int:
        R = _reduce_rows(self.field, self.points, B, piv)
        return int(self.weights[~R.any(axis=1)].sum())

    # witnesses ----------------------------------------------------------
    def witness_space(self, B: np.ndarray, piv: tuple, r: int) -> list[int]:
        """Rank-1 classes spanning U with image rowspace(B) and dim(U cap C) = r."""
        mem = self.members(B, piv)
        t = B.shape[0]
        F = self.field
        chosen: list[int] = []
        # first reach the full image, then add classes that only grow U
        img_rank = 0
        for idx in mem.tolist():
            if img_rank == t:
                break
            if rank(F, self.images[chosen + [idx]]) > img_rank:
                chosen.append(idx)
                img_rank += 1
        vrank = self._rank_of(chosen)
        for idx in mem.tolist():
            if vrank == t + r:
                break
            if idx in chosen:
                continue
            nr = self._rank_of(chosen + [idx])
            if nr > vrank:
                chosen.append(idx)
                vrank = nr
        if vrank != t + r:
            raise AssertionError("quotient witness does not reach the requested excess")
        return chosen


def _matmul_T(F: Field, A: np.ndarray, H: np.ndarray) -> np.ndarray:
    from .linalg import matmul
    return matmul(F, A, H.T)


# ---------------------------------------------------------------------------
# existence of Q with dim t and e(Q) >= r
# ---------------------------------------------------------------------------

def _need_chain(q: int, t: int, target: int) -> list[int]:
    """need[j]: minimal point weight of a point-spanned j-dim subspace on the way to target."""
    need = [0] * (t + 1)
    need[t] = target
    for j in range(t, 1, -1):
        num = need[j] * (q ** (j - 1) - 1)
        den = q ** j - 1
        need[j - 1] = -(-num // den)
    return need


def _bfs_exists(model: QuotientModel, t: int, r: int, budget: _Budget):
    """Complete level search; returns (B, piv) of the canonical-smallest witness or None."""
    F = model.field
    if t == 0:
        return (np.zeros((0, model.L), dtype=np.int64), ()) if model.e0 >= r else None
    if t > model.L:
        return None
    target = t + r - model.e0
    need = _need_chain(F.order, t, target)
    pts, wts = model.points, model.weights
    level = {}
    for i in np.nonzero(wts >= need[1])[0].tolist():
        B = pts[i:i + 1].copy()
        level[B.astype(np.int8).tobytes()] = (B, (int(np.nonzero(B[0])[0][0]),), int(wts[i]))
    budget.tick(len(level))
    for j in range(1, t):
        final = j + 1 == t
        nxt = {}
        best = None
        for key in sorted(level):
            B, piv, w = level[key]
            R = _reduce_rows(F, pts, B, piv)
            nz = R.any(axis=1)
            if not nz.any():
                continue
            R, wr = R[nz], wts[nz]
            Rn = normalize_projective(F, R) if F.order > 2 else R
            codes = _encode(F, Rn)
            uniq, first, inv = np.unique(codes, return_index=True, return_inverse=True)
            bw = np.bincount(inv, weights=wr).astype(np.int64)
            good = np.nonzero(w + bw >= need[j + 1])[0]
            budget.tick(len(good))
            for g in good.tolist():
                nB, npiv = _insert_row(F, B, piv, Rn[first[g]])
                nkey = nB.astype(np.int8).tobytes()
                if nkey in nxt:
                    continue
                nxt[nkey] = (nB, npiv, w + int(bw[g]))
                if final and model.excess(nB, npiv) >= r:
                    if best is None or nkey < best[0]:
                        best = (nkey, nB, npiv)
        if final:
            return None if best is None else (best[1], best[2])
        level = nxt
        if not level:
            return None
    # t == 1
    best = None
    for key in sorted(level):
        B, piv, w = level[key]
        if model.excess(B, piv) >= r:
            return B, piv
    return best


def _codim_exists(model: QuotientModel, t: int, r: int, budget: _Budget):
    F = model.field
    if t > model.L:
        return None
    for B in enumerate_subspaces(F, model.L, t):
        budget.tick()
        piv = tuple(int(np.nonzero(row)[0][0]) for row in B)
        if model.excess(B, piv) >= r:
            return B, piv
    return None


def _greedy_exists(model: QuotientModel, t: int, r: int, rng: np.random.Generator, trials: int,
                   budget: _Budget):
    """Randomized growth of Q one point at a time, preferring the largest gain in rank(P_Q).

    A returned Q is a valid witness; failure proves nothing.
    """
    F = model.field
    if t == 0 or t > model.L or len(model.weights) == 0:
        return None
    pts = model.points
    members = model.point_members
    tracker = _RankTracker(model)
    for _ in range(trials):
        i = int(rng.integers(len(pts)))
        B = pts[i:i + 1].copy()
        piv = (int(np.nonzero(B[0])[0][0]),)
        span = tracker.start(list(model.zero_idx) + members[i])
        while B.shape[0] < t:
            R = _reduce_rows(F, pts, B, piv)
            nz = np.nonzero(R.any(axis=1))[0]
            if nz.size == 0:
                break
            Rn = normalize_projective(F, R[nz]) if F.order > 2 else R[nz]
            uniq, first, inv = np.unique(_encode(F, Rn), return_index=True, return_inverse=True)
            buckets = [[] for _ in range(len(uniq))]
            for pi, g in zip(nz.tolist(), inv.tolist()):
                buckets[g].extend(members[pi])
            gains = np.array([tracker.gain(span, b) for b in buckets], dtype=float)
            gains += rng.random(len(gains)) * 0.9
            g = int(np.argmax(gains))
            span = tracker.extend(span, buckets[g])
            B, piv = _insert_row(F, B, piv, Rn[first[g]])
        budget.tick()
        if B.shape[0] == t and tracker.rank(span) - t >= r:
            return B, piv
    return None


class _RankTracker:
    """Incremental span of rank-1 classes (bit-packed over GF(2), RREF otherwise)."""

    def __init__(self, model: QuotientModel):
        self.model = model
        self.bits = model.field.order == 2 and model.vecs.shape[1] <= 62
        if self.bits:
            self.packed = pack_rows(model.vecs)

    def start(self, idx):
        return self.extend(() if self.bits else np.zeros((0, self.model.vecs.shape[1]), dtype=np.int64), idx)

    def extend(self, span, idx):
        if not idx:
            return span
        if self.bits:
            return bits_rref(list(span) + [self.packed[i] for i in idx])
        from .linalg import rref
        rows = np.concatenate([span, self.model.vecs[list(idx)]])
        return rref(self.model.field, rows)[0]

    def rank(self, span) -> int:
        return len(span) if self.bits else span.shape[0]

    def gain(self, span, idx) -> int:
        if not idx:
            return 0
        if self.bits:
            basis = list(span)
            g = 0
            for i in idx:
                v = self.packed[i]
                for b in basis:
                    v = min(v, v ^ b)
                if v:
                    basis = list(bits_rref(basis + [v]))
                    g += 1
            return g
        return self.rank(self.extend(span, idx)) - self.rank(span)


def _pick_strategy(cfg: SearchConfig, model: QuotientModel, t: int) -> str:
    if cfg.strategy != "auto":
        return cfg.strategy
    if gaussian_binomial(model.L, t, model.field.order) <= CODIM_ENUM_LIMIT:
        return "codim_enum"
    return "quotient_bfs"


def _exists(model: QuotientModel, t: int, r: int, cfg: SearchConfig, budget: _Budget, rng,
            use_greedy: bool = True):
    strategy = _pick_strategy(cfg, model, t)
    if strategy == "codim_enum":
        return _codim_exists(model, t, r, budget), strategy
    if use_greedy and cfg.strategy == "auto":
        found = _greedy_exists(model, t, r, rng, cfg.greedy_trials, budget)
        if found is not None:
            return found, "greedy"
    return _bfs_exists(model, t, r, budget), strategy


def _tau(model: QuotientModel, r: int, lo: int, cfg: SearchConfig, budget: _Budget, rng, log: list):
    t = max(lo, 0)
    while True:
        found, how = _exists(model, t, r, cfg, budget, rng)
        if found is not None:
            log.append({"r": r, "dim": t, "found_by": how})
            return t, found
        log.append({"r": r, "dim": t, "ruled_out_by": how})
        t += 1
        if t > model.L:
            raise AssertionError("the whole quotient must have excess k")


# ---------------------------------------------------------------------------
# exhaustive oracle on the definitions
# ---------------------------------------------------------------------------

def _span_rank(F: Field, rows: np.ndarray) -> int:
    if rows.shape[0] == 0:
        return 0
    if F.order == 2 and rows.shape[1] <= 62:
        return len(bits_rref(pack_rows(rows)))
    return rank(F, rows)


def exhaustive_tensor_rank(C: MatrixCode, max_rank: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Smallest R with R rank-1 matrices spanning a space that contains C."""
    if C.k == 0:
        raise CodeError("nonzero code required")
    F = C.field
    vecs, _, _ = rank_one_array(F, C.n, C.m)
    Cb = C.space.basis
    top = max_rank or C.n * C.m
    if F.order == 2 and vecs.shape[1] <= 62:
        pv = pack_rows(vecs)
        pc = pack_rows(Cb)
        for R in range(C.k, top + 1):
            for combo in itertools.combinations(range(len(pv)), R):
                basis = bits_rref(pv[i] for i in combo)
                if len(basis) < R:
                    continue
                if len(bits_rref(list(basis) + pc)) == R:
                    return R, combo
    else:
        for R in range(C.k, top + 1):
            for combo in itertools.combinations(range(len(vecs)), R):
                S = vecs[list(combo)]
                if rank(F, S) < R:
                    continue
                if rank(F, np.concatenate([S, Cb])) == R:
                    return R, combo
    raise AssertionError("no spanning set found")


def exhaustive_gtr(C: MatrixCode) -> tuple[int, ...]:
    """d_r from the definition: smallest rank-1-spanned U with dim(U cap C) >= r."""
    F = C.field
    vecs, _, _ = rank_one_array(F, C.n, C.m)
    Cb = C.space.basis
    k = C.k
    out = []
    s = 1
    for r in range(1, k + 1):
        s = max(s, r)
        while True:
            hit = False
            for combo in itertools.combinations(range(len(vecs)), s):
                S = vecs[list(combo)]
                if _span_rank(F, S) < s:
                    continue
                inter = s + k - _span_rank(F, np.concatenate([S, Cb]))
                if inter >= r:
                    hit = True
                    break
            if hit:
                out.append(s)
                break
            s += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _lower_bounds(C: MatrixCode, d: int) -> tuple[int, str]:
    kr = C.k + d - 1
    nql = nq_bounds(C.field.order, C.k, d)[0]
    return (nql, "nq") if nql > kr else (kr, "kruskal")


def certificate_from_classes(model: QuotientModel, classes, code_basis) -> SimpleSum:
    F = model.field
    triples = [(np.zeros(1, dtype=np.int64) + 1, model.vfac[i], model.wfac[i]) for i in classes]
    S = SimpleSum(F, (1, model.n, model.m), triples)
    return restrict_to_code(S, code_basis)


def tensor_rank(C: MatrixCode, cfg: SearchConfig | None = None,
                upper_hint: SimpleSum | None = None) -> TrkCertificate:
    """Exact tensor rank of C with an upper certificate and the reason for the lower bound.

    ``upper_hint`` is a simple sum whose rank-1 span contains C; when it meets the
    Kruskal or N_q bound no search is run.  On budget exhaustion the returned
    certificate carries the bounds reached so far.
    """
    cfg = cfg or SearchConfig()
    if C.k == 0:
        raise CodeError("nonzero code required")
    d, word = min_distance_witness(C)
    lower, reason = _lower_bounds(C, d)
    code_basis = C.basis_matrices()
    if upper_hint is not None:
        S = restrict_to_code(upper_hint if upper_hint.dims[0] == 1 else _as_rank_one(upper_hint), code_basis)
        if len(S) == lower:
            return TrkCertificate(S, len(S), lower, reason, {"strategy": "bound_meets_hint",
                                                              "nodes_explored": 0, "levels_ruled_out": []})
    if cfg.strategy == "exhaustive":
        R, combo = exhaustive_tensor_rank(C)
        model = None
        vecs, vv, ww = rank_one_array(C.field, C.n, C.m)
        S = SimpleSum(C.field, (1, C.n, C.m), [(np.ones(1, dtype=np.int64), vv[i], ww[i]) for i in combo])
        S = restrict_to_code(S, code_basis)
        return TrkCertificate(S, R, R, "exhaustive", {"strategy": "exhaustive", "nodes_explored": 0,
                                                       "levels_ruled_out": list(range(lower, R))})
    budget = _Budget(cfg)
    rng = np.random.default_rng(cfg.seed)
    model = QuotientModel(C)
    log: list = []
    upper_value = C.n * C.m if upper_hint is None else len(upper_hint)
    try:
        tau, (B, piv) = _tau(model, C.k, lower - C.k, cfg, budget, rng, log)
    except BudgetExhausted as exc:
        ruled = [e["dim"] + C.k for e in log if "ruled_out_by" in e]
        lo = max([lower] + [x + 1 for x in ruled])
        return TrkCertificate(None, upper_value, lo, "budget_exhausted",
                              {"strategy": cfg.strategy, "nodes_explored": budget.nodes,
                               "levels_ruled_out": ruled, "error": str(exc)})
    classes = model.witness_space(B, piv, C.k)
    S = certificate_from_classes(model, classes, code_basis)
    R = C.k + tau
    if len(S) != R:
        raise AssertionError("certificate length differs from the quotient dimension count")
    ruled = [e["dim"] + C.k for e in log if "ruled_out_by" in e]
    lower_reason = "exhaustive" if ruled else reason
    strategies = sorted({e.get("found_by") or e.get("ruled_out_by") for e in log})
    return TrkCertificate(S, R, R, lower_reason, {"strategy": "+".join(strategies),
                                                   "nodes_explored": budget.nodes,
                                                   "levels_ruled_out": ruled})


def _as_rank_one(S: SimpleSum) -> SimpleSum:
    return SimpleSum(S.field, (1,) + tuple(S.dims[1:]),
                     [(np.ones(1, dtype=np.int64), v, w) for _, v, w in S.triples])


def tensor_rank_of_tensor(X: Tensor3, cfg: SearchConfig | None = None) -> TrkCertificate:
    """trk(X) = trk(ss_1(X)); the certificate decomposes X itself."""
    from .rankcode import code_of_tensor

    C = code_of_tensor(X)
    cert = tensor_rank(C, cfg)
    if cert.upper is not None:
        cert.upper = restrict_to_code(_as_rank_one(cert.upper), X.entries)
    return cert


def gen_tensor_ranks(C: MatrixCode, cfg: SearchConfig | None = None) -> GtrProfile:
    """(d_1, ..., d_k) with a simple-sum certificate for an r-dim subcode at each r."""
    cfg = cfg or SearchConfig()
    if C.k == 0:
        raise CodeError("nonzero code required")
    F = C.field
    q = F.order
    d, word = min_distance_witness(C)
    if cfg.strategy == "exhaustive":
        vals = exhaustive_gtr(C)
        prof = GtrProfile(vals, [], {"strategy": "exhaustive"})
        check_profile(prof, C.k, d)
        return prof
    budget = _Budget(cfg)
    rng = np.random.default_rng(cfg.seed)
    model = QuotientModel(C)
    log: list = []
    values, certs = [], []
    tau_prev = -1
    for r in range(1, C.k + 1):
        lo = max(tau_prev, d - 1, nq_bounds(q, r, d)[0] - r)
        if r == 1:
            # a minimum-rank codeword and its rank factorization
            U, Rw = rank_factor(F, word)
            S = SimpleSum(F, (1, C.n, C.m), [(np.ones(1, dtype=np.int64), U[:, i], Rw[i])
                                            for i in range(Rw.shape[0])])
            tau = d - 1
            log.append({"r": 1, "dim": tau, "found_by": "min_distance"})
        else:
            try:
                tau, (B, piv) = _tau(model, r, lo, cfg, budget, rng, log)
            except BudgetExhausted as exc:
                raise BudgetExhausted(f"{exc} at r={r}", lower=lo + r) from exc
            classes = model.witness_space(B, piv, r)
            U = model.vecs[classes]
            sub = Subspace(F, C.n * C.m, U).intersect(C.space)
            S = certificate_from_classes(model, classes, sub.basis[:r].reshape(r, C.n, C.m))
            if len(S) != tau + r:
                raise AssertionError("subcode certificate length mismatch")
        values.append(tau + r)
        certs.append(S)
        tau_prev = tau
    prof = GtrProfile(tuple(values), certs, {"nodes_explored": budget.nodes, "log": log})
    check_profile(prof, C.k, d)
    return prof


def check_profile(prof: GtrProfile, k: int, d: int) -> None:
    v = prof.values
    if len(v) != k or v[0] != d:
        raise AssertionError("profile must have k entries starting at d")
    trk = v[-1]
    for r, x in enumerate(v, start=1):
        if not d + r - 1 <= x <= trk - k + r:
            raise AssertionError(f"profile bound chain violated at r={r}: {v}")
        if r > 1 and not v[r - 2] < x:
            raise AssertionError(f"profile not strictly increasing: {v}")


def excess_table(C: MatrixCode) -> dict[int, int]:
    """min dim Q with e(Q) >= r for every r, by enumerating all subspaces of the quotient."""
    model = QuotientModel(C)
    F = model.field
    best: dict[int, int] = {}
    for t in range(model.L + 1):
        for B in enumerate_subspaces(F, model.L, t) if t else [np.zeros((0, model.L), dtype=np.int64)]:
            piv = tuple(int(np.nonzero(row)[0][0]) for row in B)
            e = model.excess(B, piv)
            for r in range(1, e + 1):
                best.setdefault(r, t)
    return best


@dataclass
class Verdict:
    label: str
    mtr: bool | None
    extremal: bool | None
    evidence: dict


def mtr_verdict(C: MatrixCode, cfg: SearchConfig | None = None,
                upper_hint: SimpleSum | None = None) -> Verdict:
    d, _ = min_distance_witness(C)
    cert = tensor_rank(C, cfg, upper_hint)
    lo_nq, up_nq, exact_nq = nq_bounds(C.field.order, C.k, d)
    ev = {"k": C.k, "d": d, "trk_lower": cert.lower, "trk_upper": cert.upper_value,
          "nq_lower": lo_nq, "nq_upper": up_nq}
    if cert.exact:
        trk = cert.value
        if trk == C.k + d - 1:
            return Verdict("MTR", True, True, ev)
        if trk == lo_nq:
            return Verdict("tensor_rank_extremal", False, True, ev)
        if trk > up_nq:
            return Verdict("neither", False, False, ev)
        return Verdict("unknown", False, None, ev)
    if cert.lower > C.k + d - 1 and cert.lower > up_nq:
        return Verdict("neither", False, False, ev)
    return Verdict("unknown", None, None, ev)


@dataclass
class InequivalenceResult:
    inequivalent: bool
    invariant: str | None = None
    values: tuple = ()
    detail: dict = dc_field(default_factory=dict)


def inequivalence_witness(C1: MatrixCode, C2: MatrixCode, cfg: SearchConfig | None = None,
                          use_dual: bool = True, profiles=None) -> InequivalenceResult:
    """First invariant (dim, d, rank spectrum, GTR, dual tensor rank) telling the codes apart.

    ``profiles`` may carry already computed GTR tuples for the two codes.
    """
    if C1.field != C2.field:
        return InequivalenceResult(True, "field", (C1.field.order, C2.field.order))
    if sorted((C1.n, C1.m)) != sorted((C2.n, C2.m)):
        return InequivalenceResult(True, "ambient", ((C1.n, C1.m), (C2.n, C2.m)))
    if C1.k != C2.k:
        return InequivalenceResult(True, "dim", (C1.k, C2.k))
    if C1.k == 0:
        return InequivalenceResult(False)
    d1, d2 = min_distance_witness(C1)[0], min_distance_witness(C2)[0]
    if d1 != d2:
        return InequivalenceResult(True, "min_distance", (d1, d2))
    s1, s2 = rank_spectrum(C1), rank_spectrum(C2)
    if s1 != s2:
        return InequivalenceResult(True, "rank_spectrum", (s1, s2))
    if profiles is None:
        g1, g2 = gen_tensor_ranks(C1, cfg).values, gen_tensor_ranks(C2, cfg).values
    else:
        g1, g2 = (tuple(p) for p in profiles)
    if g1 != g2:
        r = next(i for i in range(len(g1)) if g1[i] != g2[i]) + 1
        return InequivalenceResult(True, "gtr", (g1, g2), {"first_r": r})
    if use_dual and C1.k < C1.n * C1.m:
        t1, t2 = tensor_rank(dual(C1), cfg), tensor_rank(dual(C2), cfg)
        if t1.exact and t2.exact and t1.value != t2.value:
            return InequivalenceResult(True, "dual_trk", (t1.value, t2.value))
    return InequivalenceResult(False, None, (g1,))
