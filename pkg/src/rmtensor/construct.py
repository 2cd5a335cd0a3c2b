"""Constructions: extremal triples, Gabidulin codes, polynomial multiplication
tensors and codes of small tensor rank."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

import numpy as np

from .blockcode import (BlockCode, cauchy_code, codewords_projective, default_points, evaluate,
                        nq_bounds, phi_code)
from .gf import (Field, FieldError, TowerBasis, extension_field, field_from_order, find_irreducible,
                 is_irreducible, poly_mod, poly_trim, subfield_expand)
from .linalg import (batch_rank, inverse, kernel, matmul, projective_points, rank, rref,
                     solve_left)
from .rankcode import MatrixCode, min_distance
from .tensor import SimpleSum, Tensor3, restrict_to_code
from .trank import TrkCertificate


class ConstructionError(ValueError):
    pass


def as_field(q) -> Field:
    if isinstance(q, Field):
        return q
    try:
        return field_from_order(int(q))
    except FieldError as exc:
        raise ConstructionError(str(exc)) from exc


# ---------------------------------------------------------------------------
# extremal triples
# ---------------------------------------------------------------------------

@dataclass
class ExtremalTriple:
    C: BlockCode
    V: np.ndarray
    W: np.ndarray
    d: int
    verified: bool = False
    certificate: dict = dc_field(default_factory=dict)

    @property
    def R(self) -> int:
        return self.C.N

    @property
    def n(self) -> int:
        return self.V.shape[0]

    @property
    def m(self) -> int:
        return self.W.shape[0]

    @property
    def code(self) -> MatrixCode:
        return phi_code(self.C, self.V, self.W)

    def simple_sum(self) -> SimpleSum:
        """Generator tensor sum_i G[:, i] (x) V[:, i] (x) W[:, i] of the image code."""
        G = self.C.generator
        trip = [(G[:, i], self.V[:, i], self.W[:, i]) for i in range(self.R)
                if G[:, i].any() and self.V[:, i].any() and self.W[:, i].any()]
        return SimpleSum(self.C.field, (G.shape[0], self.n, self.m), trip)


def _support_kernels(F: Field, W: np.ndarray):
    cache: dict = {}

    def get(supp: tuple) -> np.ndarray:
        if supp not in cache:
            cache[supp] = kernel(F, W[:, list(supp)], len(supp)) if supp else np.zeros((0, 0), np.int64)
        return cache[supp]
    return get


def _pad_rows(A: np.ndarray, rows: int) -> np.ndarray:
    out = np.zeros((rows, A.shape[1]), dtype=np.int64)
    out[:A.shape[0]] = A
    return out


def verify_triple(C: BlockCode, V, W, d: int) -> ExtremalTriple:
    """Check rk(V diag(c) W^T) >= d for every nonzero c in C, five ways.

    With a = rk V and b = dim C_{W_c} the equivalent conditions are
      (1) rk(V diag(c) W^T) >= d
      (2) dim(C_V^perp cap C_{W_c}) <= b - d
      (3) dim(C_V cap C_{W_c}^perp) <= a - d
      (4) dim(C_V^perp + C_{W_c}) >= R - a + d
      (5) dim(C_V + C_{W_c}^perp) >= R - b + d
    (2)-(5) are evaluated from explicit bases of the subspaces involved.
    A failing triple is returned unverified with a witness codeword.
    """
    F = C.field
    V = np.asarray(V, dtype=np.int64)
    W = np.asarray(W, dtype=np.int64)
    R = C.N
    if V.ndim != 2 or W.ndim != 2 or V.shape[1] != R or W.shape[1] != R:
        raise ConstructionError("V and W need one column per coordinate of C")
    a = rank(F, V)
    if a != min(V.shape) or rank(F, W) != min(W.shape):
        raise ConstructionError("V and W must have full rank")
    rkW = rank(F, W)
    HV = kernel(F, V)                                   # basis of C_V^perp
    Vr = rref(F, V)[0]
    kern = _support_kernels(F, W)
    hist: dict[int, int] = {}
    witness = None
    variant_gap = None
    ok_all = True
    for words in codewords_projective(C, chunk=1024):
        N = words.shape[0]
        Wc = F.mul(W[None, :, :], words[:, None, :])                     # W diag(c)
        Vc = F.mul(V[None, :, :], words[:, None, :])                      # V diag(c)
        prod = np.zeros((N, V.shape[0], W.shape[0]), dtype=np.int64)
        for j in range(R):
            prod = F.add(prod, F.mul(Vc[:, :, j, None], W[None, None, :, j]))
        r1 = batch_rank(F, prod)
        b = batch_rank(F, Wc)
        s24 = batch_rank(F, np.concatenate([np.broadcast_to(HV, (N,) + HV.shape), Wc], axis=1))
        inter2 = (R - a) + b - s24
        # C_{W_c}^perp: kernel of W on the support, rescaled by c^{-1}, plus the off-support units
        stack35 = np.zeros((N, a + R, R), dtype=np.int64)
        stack35[:, :a] = Vr
        mask = words != 0
        keys, inv = np.unique(mask, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        for g, key in enumerate(keys):
            idx = np.nonzero(inv == g)[0]
            supp = np.nonzero(key)[0]
            off = np.nonzero(~key)[0]
            K = kern(tuple(supp.tolist()))
            row = a
            if K.shape[0]:
                cinv = F.inv(words[np.ix_(idx, supp)])                      # (G, |supp|)
                block = F.mul(K[None, :, :], cinv[:, None, :])
                sub = np.zeros((len(idx), K.shape[0], R), dtype=np.int64)
                sub[:, :, supp] = block
                stack35[idx, row:row + K.shape[0]] = sub
                row += K.shape[0]
            if off.size:
                E = np.zeros((off.size, R), dtype=np.int64)
                E[np.arange(off.size), off] = 1
                stack35[idx, row:row + off.size] = E
        s35 = batch_rank(F, stack35)
        inter3 = a + (R - b) - s35
        c1 = r1 >= d
        c2 = inter2 <= b - d
        c3 = inter3 <= a - d
        c4 = s24 >= R - a + d
        c5 = s35 >= R - b + d
        if not (np.array_equal(c1, c2) and np.array_equal(c1, c3)
                and np.array_equal(c1, c4) and np.array_equal(c1, c5)):
            raise AssertionError("extremal-triple conditions disagree")
        if not np.array_equal(r1, b - inter2) or not np.array_equal(r1, a - inter3):
            raise AssertionError("rank formula disagrees with direct rank")
        variant = inter2 <= rkW - d
        bad = np.nonzero(variant != c1)[0]
        if bad.size and variant_gap is None:
            variant_gap = words[bad[0]].tolist()
        for v, cnt in zip(*np.unique(r1, return_counts=True)):
            hist[int(v)] = hist.get(int(v), 0) + int(cnt)
        fail = np.nonzero(~c1)[0]
        if fail.size:
            ok_all = False
            if witness is None:
                witness = words[fail[0]].tolist()
    lower, upper, exact = nq_bounds(F.order, C.k, d) if d >= 1 else (R, R, True)
    length_optimal = True if R == lower else (False if exact else None)
    cert = {"rank_histogram": hist, "min_rank": min(hist) if hist else None,
            "conditions": [1, 2, 3, 4, 5], "witness": witness,
            "length_optimal": length_optimal, "rkW_variant_gap": variant_gap}
    verified = ok_all and length_optimal is not False
    return ExtremalTriple(C, V, W, d, verified, cert)


def _require_verified(T: ExtremalTriple) -> ExtremalTriple:
    if not T.verified:
        raise ConstructionError(f"triple failed verification (witness {T.certificate['witness']})")
    return T


def rs_extremal_triple(q, k: int, d: int, seed: int = 0, f=None, alpha=None,
                       allow_infinity: bool = False) -> ExtremalTriple:
    """MTR code in F_q^{k x d} from Cauchy codes and an irreducible f of degree k.

    C = C_k(alpha, 1), V a parity check matrix of C_{R-k}(alpha, ev_alpha(f)),
    W a generator matrix of C_d(alpha, 1), with R = k + d - 1 points.
    ``allow_infinity`` admits R = q + 1 by using the point at infinity.
    """
    F = as_field(q)
    if not 0 < d < k:
        raise ConstructionError("need 0 < d < k")
    if d == 1:
        raise ConstructionError("need k < R = k + d - 1, so d >= 2")
    R = k + d - 1
    limit = F.order + 1 if allow_infinity else F.order
    if R > limit:
        raise ConstructionError(f"need {R} distinct points but GF({F.order}) has only {limit}")
    if f is None:
        f = find_irreducible(F, k, seed)
    f = [int(c) for c in f]
    if len(poly_trim(f)) != k + 1 or not is_irreducible(F, f):
        raise ConstructionError("f must be irreducible of degree k")
    alpha = default_points(F, R) if alpha is None else list(alpha)
    if len(alpha) != R:
        raise ConstructionError(f"alpha must have {R} points")
    C = cauchy_code(F, alpha, None, k)
    V = cauchy_code(F, alpha, evaluate(F, f, alpha), R - k).parity_check()
    W = cauchy_code(F, alpha, None, d).generator
    T = verify_triple(C, V, W, d)
    T.certificate.update({"f": f, "alpha": alpha})
    return _require_verified(T)


def frobenius_chain_ok(n: int, m: int, R: int, d: int) -> bool:
    return all(min(n, w) + min(m, w) - w >= d for w in range(d, R + 1))


def maxsum_triple(q, n: int, m: int, k: int, d: int, alpha=None) -> ExtremalTriple:
    """Triple with V, W generator matrices of MDS codes, valid when n + m >= R + d."""
    F = as_field(q)
    R = k + d - 1
    if not (d <= n < R and d <= m < R):
        raise ConstructionError("need d <= n, m < R")
    if n + m < R + d:
        raise ConstructionError(f"need n + m >= R + d = {R + d}")
    if R > F.order + 1:
        raise ConstructionError(f"no MDS code of length {R} over GF({F.order})")
    alpha = default_points(F, R) if alpha is None else list(alpha)
    C = cauchy_code(F, alpha, None, k)
    V = cauchy_code(F, alpha, None, n).generator
    W = cauchy_code(F, alpha, None, m).generator
    return _require_verified(verify_triple(C, V, W, d))


def extend_triple(T: ExtremalTriple, n2: int, m2: int) -> ExtremalTriple:
    """Zero-pad V and W to n2 and m2 rows."""
    if n2 < T.n or m2 < T.m:
        raise ConstructionError("extend_triple cannot shrink the ambient space")
    if (n2, m2) == (T.n, T.m):
        return T
    core = _require_verified(verify_triple(T.C, T.V, T.W, T.d))
    V = _pad_rows(T.V, n2)
    W = _pad_rows(T.W, m2)
    # zero rows only append zero rows and columns to every phi(c), so ranks are unchanged
    F = T.C.field
    base = core.code.basis_matrices()
    padded = np.zeros((base.shape[0], n2, m2), dtype=np.int64)
    padded[:, :T.n, :T.m] = base
    if phi_code(T.C, V, W) != MatrixCode(F, n2, m2, padded):
        raise AssertionError("padding changed the image code")
    cert = dict(core.certificate, padded_from=[T.n, T.m])
    return ExtremalTriple(T.C, V, W, T.d, True, cert)


# ---------------------------------------------------------------------------
# Delsarte-Gabidulin codes
# ---------------------------------------------------------------------------

@dataclass
class GabidulinCode:
    ext: Field
    points: tuple
    generator: np.ndarray          # K x n over ext
    gamma: TowerBasis
    code: MatrixCode               # F_q-[n x m, K m]
    K: int
    s: int


def gabidulin(q, m: int, n: int, K: int, s: int = 1, alpha=None) -> GabidulinCode:
    """G_{K,s}(alpha) in GF(q^m)^n and its expansion in the power basis of a primitive element."""
    F = as_field(q)
    if not 1 <= K <= n <= m:
        raise ConstructionError("need 1 <= K <= n <= m")
    if not (1 <= s < m and gcd(s, m) == 1):
        raise ConstructionError("need 1 <= s < m with gcd(s, m) = 1")
    ext = extension_field(F, m)
    a = ext.generator
    if alpha is None:
        alpha = [ext.pow(a, j) for j in range(n)]
    alpha = [int(x) for x in alpha]
    if len(alpha) != n:
        raise ConstructionError(f"alpha must have {n} entries")
    coords = np.array([ext.coeffs(x) for x in alpha], dtype=np.int64)
    if rank(F, coords) != n:
        raise ConstructionError("evaluation points are linearly dependent over the base field")
    Q = F.order
    G = np.array([[ext.pow(x, Q ** (s * i)) for x in alpha] for i in range(K)], dtype=np.int64)
    gamma = TowerBasis.powers(ext, a)
    mats = [subfield_expand(ext.mul(g, row), gamma) for row in G for g in gamma.gamma]
    return GabidulinCode(ext, tuple(alpha), G, gamma, MatrixCode(F, n, m, mats), K, s)


# ---------------------------------------------------------------------------
# polynomial multiplication tensors
# ---------------------------------------------------------------------------

def _reduce_monomials(F: Field, f, count: int) -> np.ndarray:
    """Row t holds the coefficients of x^t mod f."""
    k = len(f) - 1
    out = np.zeros((count, k), dtype=np.int64)
    for t in range(count):
        r = poly_mod(F, [0] * t + [1], list(f))
        out[t, :len(r)] = r
    return out


def _check_poly(F: Field, f, k: int) -> list[int]:
    f = poly_trim([int(c) for c in f])
    if len(f) - 1 != k:
        raise ConstructionError(f"f has degree {len(f) - 1}, expected {k}")
    return f


def poly_mult_tensor(q, m: int, n: int, k: int, f) -> Tensor3:
    """T_{m,n,k}: X[i, j, l] is the coefficient of x^l in x^(i+j) mod f."""
    F = as_field(q)
    f = _check_poly(F, f, k)
    red = _reduce_monomials(F, f, m + n - 1)
    X = np.zeros((m, n, k), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            X[i, j] = red[i + j]
    return Tensor3(F, X)


def companion_matrix(q, f) -> np.ndarray:
    """Matrix of h -> x h mod f on row coefficient vectors (row t is x^(t+1) mod f)."""
    F = as_field(q)
    f = poly_trim([int(c) for c in f])
    k = len(f) - 1
    return _reduce_monomials(F, f, k + 1)[1:]


def poly_mult_decomposition(q, m: int, n: int, k: int, f, points=None) -> SimpleSum:
    """Evaluation-interpolation decomposition of T_{m,n,k} with m + n - 1 terms.

    Needs m + n - 1 points of the projective line, i.e. q >= m + n - 2.
    """
    F = as_field(q)
    f = _check_poly(F, f, k)
    D = m + n - 2
    if points is None:
        if D + 1 > F.order + 1:
            raise ConstructionError(f"need q >= {D} for a length-{D + 1} decomposition")
        points = default_points(F, D + 1)
    if len(points) != D + 1:
        raise ConstructionError(f"need {D + 1} points")

    def ev(p, length, top):
        v = np.zeros(length, dtype=np.int64)
        if p is None:
            if top == length - 1:
                v[-1] = 1
            return v
        for t in range(length):
            v[t] = F.pow(p, t)
        return v

    E = np.array([ev(p, D + 1, D) for p in points], dtype=np.int64)
    interp = inverse(F, E)                                # coeffs = interp @ values
    red = _reduce_monomials(F, f, D + 1)                  # (D+1) x k
    Wm = matmul(F, red.T, interp)                         # k x (D+1)
    trip = []
    for idx, p in enumerate(points):
        u, v, w = ev(p, m, m - 1), ev(p, n, n - 1), Wm[:, idx]
        if u.any() and v.any() and w.any():
            trip.append((u, v, w))
    return SimpleSum(F, (m, n, k), trip)


def minimal_polynomial(ext: Field, a: int) -> list[int]:
    """Monic minimal polynomial of a over ext.base (coefficients low to high)."""
    F = ext.base
    m = ext.degree
    rows = np.array([ext.coeffs(ext.pow(a, t)) for t in range(m + 1)], dtype=np.int64)
    for deg in range(1, m + 1):
        K = kernel(F, rows[:deg + 1].T)
        if K.shape[0]:
            c = K[0]
            return [int(x) for x in F.mul(c, F.inv(int(c[deg])))]
    raise ConstructionError("no minimal polynomial found")


# ---------------------------------------------------------------------------
# codes of small tensor rank
# ---------------------------------------------------------------------------

def peel(G: np.ndarray, F: Field) -> tuple[np.ndarray, int]:
    """One subcode step: drop the first row of the RREF generator and its pivot column.

    Returns the new (k-1) x (R-1) coordinate matrix and the removed column index.
    """
    rows, r, piv = rref(F, G)
    if r != G.shape[0]:
        raise ConstructionError("coordinate matrix must have full row rank")
    keep = [j for j in range(G.shape[1]) if j != piv[0]]
    return rows[1:][:, keep], piv[0]


def small_trank_bound(k: int, d: int, m: int) -> int:
    kap = -(-k // m)
    return k + min((kap + d - 1) * (d - 1), kap * (kap + d - 2))


def certified_small_trank_bound(k: int, d: int, m: int) -> int:
    """What the Gabidulin-and-peel construction certifies: k + min{m(d-1), K(mu-1)}."""
    kap = -(-k // m)
    mu = kap + d - 1
    return k + min(m * (d - 1), kap * (mu - 1))


def square_bound(k: int, d: int) -> tuple[int, int]:
    rho = d
    while rho * (rho - d + 1) < k:
        rho += 1
    return rho, k + min(rho * (d - 1), (rho - d + 1) * (rho - 1))


@dataclass
class SmallTrkResult:
    code: MatrixCode
    certificate: TrkCertificate
    bound: int
    mtr: bool


def _gabidulin_rank_one(F: Field, mext: int, mu: int, K: int):
    """Rank-1 spanning set (list of (v, w)) for the expanded G_{K,1} in F^{mu x mext}."""
    gab = gabidulin(F, mext, mu, K) if mext > 1 else None
    if gab is None:
        raise ConstructionError("extension degree must be at least 2")
    ext, a, gamma = gab.ext, gab.ext.generator, gab.gamma
    elementary = mext * mu
    decomp = K * (mext + mu - 1)
    pairs = []
    if decomp < elementary and mext + mu - 2 <= F.order:
        f = minimal_polynomial(ext, a)
        S = poly_mult_decomposition(F, mext, mu, mext, f)
        Ginv = inverse(F, gamma.change_matrix())
        Q = F.order
        for i in range(K):
            beta = ext.pow(a, Q ** i)
            Ni = matmul(F, np.array([ext.coeffs(ext.pow(beta, t)) for t in range(mext)],
                                    dtype=np.int64), Ginv)
            for _, v, w in S.triples:
                wi = matmul(F, w[None, :], Ni)[0]
                if wi.any():
                    pairs.append((v, wi))
        route = "decomposition"
    else:
        for j in range(mu):
            for l in range(mext):
                v = np.zeros(mu, dtype=np.int64)
                w = np.zeros(mext, dtype=np.int64)
                v[j] = 1
                w[l] = 1
                pairs.append((v, w))
        route = "elementary"
    return gab, pairs, route


def _peeled_code(F: Field, n: int, m: int, k: int, d: int, mext: int, mu: int, K: int):
    gab, pairs, route = _gabidulin_rank_one(F, mext, mu, K)
    base = gab.code.basis_matrices()
    S0 = SimpleSum(F, (1, mu, mext), [(np.ones(1, dtype=np.int64), v, w) for v, w in pairs])
    S1 = restrict_to_code(S0, base)                       # independent subset, u = coordinates
    U = np.array([u for u, _, _ in S1.triples], dtype=np.int64).T       # Km x R
    pairs = [(v, w) for _, v, w in S1.triples]
    steps = U.shape[0] - k
    for _ in range(steps):
        U, col = peel(U, F)
        del pairs[col]
    live = [j for j in range(U.shape[1]) if U[:, j].any()]
    U = U[:, live]
    pairs = [pairs[j] for j in live]
    A = np.array([F.mul(v[:, None], w[None, :]) for v, w in pairs], dtype=np.int64)
    mats = matmul(F, U, A.reshape(len(pairs), -1)).reshape(k, mu, mext)
    padded = np.zeros((k, n, m), dtype=np.int64)
    padded[:, :mu, :mext] = mats
    code = MatrixCode(F, n, m, padded)
    if code.k != k:
        raise AssertionError("peeled code lost dimension")
    trip = []
    for v, w in pairs:
        vp = np.zeros(n, dtype=np.int64)
        vp[:mu] = v
        wp = np.zeros(m, dtype=np.int64)
        wp[:mext] = w
        trip.append((np.ones(1, dtype=np.int64), vp, wp))
    S = restrict_to_code(SimpleSum(F, (1, n, m), trip), code.basis_matrices())
    return code, S, {"route": route, "start_dim": gab.code.k, "peel_steps": steps}


def _column_split_code(F: Field, n: int, m: int, k: int, d: int, mu: int, K: int):
    """Subcode of the expanded Gabidulin code whose first m-d+1 columns are rank-1 spanned.

    Projection onto m-d+1 columns is injective on a code of minimum rank d, so the
    subcode is covered by its k rank-1 projections plus the mu(d-1) unit matrices
    of the remaining columns.  Returns None when too few rank-1 projections exist.
    """
    gab = gabidulin(F, m, mu, K)
    B = gab.code.basis_matrices()
    c = m - d + 1
    P = B[:, :, :c].reshape(B.shape[0], -1)
    H = kernel(F, P)
    chosen: list = []
    basis = np.zeros((0, mu * c), dtype=np.int64)
    for v in projective_points(F, mu):
        Mv = np.zeros((H.shape[0], c), dtype=np.int64)
        for j in np.nonzero(v)[0]:
            Mv = F.add(Mv, F.mul(int(v[j]), H[:, j * c:(j + 1) * c]))
        for w in kernel(F, Mv, c):
            x = F.mul(v[:, None], w[None, :]).reshape(-1)
            trial = np.concatenate([basis, x[None, :]])
            if rank(F, trial) > basis.shape[0]:
                basis = trial
                chosen.append((v.copy(), w))
                if len(chosen) == k:
                    break
        if len(chosen) == k:
            break
    if len(chosen) < k:
        return None
    coeff = np.array([solve_left(F, P, x) for x in basis], dtype=np.int64)
    mats = matmul(F, coeff, B.reshape(B.shape[0], -1)).reshape(k, mu, m)
    padded = np.zeros((k, n, m), dtype=np.int64)
    padded[:, :mu] = mats
    code = MatrixCode(F, n, m, padded)
    trip = []
    for v, w in chosen:
        vp = np.zeros(n, dtype=np.int64)
        vp[:mu] = v
        wp = np.zeros(m, dtype=np.int64)
        wp[:c] = w
        trip.append((np.ones(1, dtype=np.int64), vp, wp))
    for j in range(mu):
        for l in range(c, m):
            vp = np.zeros(n, dtype=np.int64)
            wp = np.zeros(m, dtype=np.int64)
            vp[j] = 1
            wp[l] = 1
            trip.append((np.ones(1, dtype=np.int64), vp, wp))
    S = restrict_to_code(SimpleSum(F, (1, n, m), trip), code.basis_matrices())
    return code, S, {"route": "column_split", "start_dim": gab.code.k, "peel_steps": 0}


def _finish(F, code, S, d, bound, info, check_distance, cap) -> SmallTrkResult:
    dist = None
    if check_distance:
        dd = min_distance(code, cap=cap)
        if isinstance(dd, int):
            dist = dd
            if dist < d:
                raise AssertionError("constructed code has distance below the design distance")
    d_eff = dist if dist is not None else d
    lower = code.k + d_eff - 1
    info = dict(info, design_bound=bound, min_distance=dist)
    cert = TrkCertificate(S, len(S), lower, "kruskal", info)
    return SmallTrkResult(code, cert, bound, cert.exact)


def small_trank_code(q, n: int, m: int, k: int, d: int, check_distance: bool = True,
                     cap: int = 1 << 22) -> SmallTrkResult:
    """[n x m, k, >= d] code with an explicit short simple-sum certificate.

    An expanded Gabidulin code of dimension K m in F^{mu x m}, mu = ceil(k/m) + d - 1,
    is covered by K(m + mu - 1) rank-1 matrices from conjugate evaluation-interpolation
    decompositions, or by the m mu elementary matrices; subcodes are then peeled off.
    """
    F = as_field(q)
    if not 1 <= d <= n <= m:
        raise ConstructionError("need 1 <= d <= n <= m")
    if not 1 <= k <= m * (n - d + 1):
        raise ConstructionError(f"need 1 <= k <= m(n-d+1) = {m * (n - d + 1)}")
    kap = -(-k // m)
    if F.order < m + kap + d - 3:
        raise ConstructionError(f"need q >= m + ceil(k/m) + d - 3 = {m + kap + d - 3}")
    mu = kap + d - 1
    if m == 1:
        code = MatrixCode(F, n, m, np.eye(n, dtype=np.int64)[:k, :, None])
        S = SimpleSum(F, (1, n, 1), [(np.ones(1, np.int64), np.eye(n, dtype=np.int64)[i],
                                      np.ones(1, np.int64)) for i in range(k)])
        S = restrict_to_code(S, code.basis_matrices())
        return _finish(F, code, S, d, small_trank_bound(k, d, m), {"route": "trivial"},
                       check_distance, cap)
    best = _peeled_code(F, n, m, k, d, m, mu, kap)
    if d > 1 and mu < m and len(best[1]) > k + mu * (d - 1):
        alt = _column_split_code(F, n, m, k, d, mu, kap)
        if alt is not None and len(alt[1]) < len(best[1]):
            best = alt
    code, S, info = best
    return _finish(F, code, S, d, small_trank_bound(k, d, m), info, check_distance, cap)


def small_trank_code_square(q, n: int, m: int, k: int, d: int, check_distance: bool = True,
                            cap: int = 1 << 22) -> SmallTrkResult:
    """Variant starting from a square Gabidulin code in F^{rho x rho}."""
    F = as_field(q)
    if not 1 <= d <= n <= m:
        raise ConstructionError("need 1 <= d <= n <= m")
    rho, bound = square_bound(k, d)
    if rho > n:
        raise ConstructionError(f"rho = {rho} exceeds n = {n}")
    if F.order < 2 * rho - 2:
        raise ConstructionError(f"need q >= 2 rho - 2 = {2 * rho - 2}")
    if rho == 1:
        return small_trank_code(F, n, m, k, d, check_distance, cap)
    code, S, info = _peeled_code(F, n, m, k, d, rho, rho, rho - d + 1)
    return _finish(F, code, S, d, bound, info, check_distance, cap)


# ---------------------------------------------------------------------------
# standard form storage and the parameter map
# ---------------------------------------------------------------------------

def factor_matrices(S: SimpleSum) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    U = np.array([u for u, _, _ in S.triples], dtype=np.int64).T
    V = np.array([v for _, v, _ in S.triples], dtype=np.int64).T
    W = np.array([w for _, _, w in S.triples], dtype=np.int64).T
    return U, V, W


def standard_form_storage(S: SimpleSum) -> int:
    """Symbols stored once each factor matrix is brought to reduced echelon form."""
    F = S.field
    R = len(S)
    total = 0
    for M in factor_matrices(S):
        r = rank(F, M)
        total += r * (R - r)
    return total


@dataclass
class Classification:
    label: str                 # impossible | mtr_known | open
    rule: str


def classify_parameters(k: int, d: int, n: int, m: int, q: int) -> Classification:
    """Where (k, d, n, m, q) sits among the known MTR constructions."""
    if min(k, d, n, m, q) < 1:
        raise ConstructionError("parameters must be positive")
    if n < d or m < d:
        return Classification("impossible", "n < d or m < d: every codeword has rank below d")
    if k > min(n * (m - d + 1), m * (n - d + 1)):
        return Classification("impossible", "Singleton bound k <= min{n(m-d+1), m(n-d+1)}")
    R = k + d - 1
    mds = nq_bounds(q, k, d)[1] == R
    if mds and (n >= R or m >= R):
        return Classification("mtr_known", "n >= R or m >= R with an MDS code (Sylvester)")
    if d < k and q >= k + d - 2 and ((n >= k and m >= d) or (n >= d and m >= k)):
        return Classification("mtr_known", "Cauchy construction at corner (k,d) or (d,k), padded")
    if mds and R <= q + 1 and n + m >= R + d:
        return Classification("mtr_known", "MDS row spaces with n + m >= R + d, padded")
    lo, hi = min(n, m), max(n, m)
    if k <= hi and d <= lo and q >= hi + d - 2:
        return Classification("mtr_known", "expanded Gabidulin code with k <= max(n,m)")
    return Classification("open", "no construction applies")
