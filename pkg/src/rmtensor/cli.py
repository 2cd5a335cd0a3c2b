"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 search budget exhausted,
64 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import catalog
from .blockcode import BlockCode, cauchy_code, default_points, evaluate
from .construct import (ConstructionError, classify_parameters, extend_triple, gabidulin,
                        maxsum_triple, poly_mult_decomposition, poly_mult_tensor, rs_extremal_triple,
                        small_trank_code, small_trank_code_square, standard_form_storage,
                        verify_triple)
from .gf import FieldError, find_irreducible, parse_field
from .rankcode import CodeError, is_mrd, min_distance, rank_spectrum
from .serialize import (FormatError, blockcode_from_json, blockcode_to_json, code_from_json,
                        code_to_json, field_json, matrix_entries, read_field, read_matrix, require)
from .tensor import simplesum_to_json, tensor_to_json, to_coordinates
from .trank import (BudgetExhausted, SearchConfig, SearchError, gen_tensor_ranks,
                    inequivalence_witness, mtr_verdict, tensor_rank, tensor_rank_of_tensor)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64
EXAMPLES = ("kruskal-example", "f8-mtr", "gtr-distinguish", "dual-trk", "poly-mult")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# Table 1 cost model
# ---------------------------------------------------------------------------

@dataclass
class ComplexityReport:
    k: int
    n: int
    m: int
    R: int
    matrix_storage: int
    tensor_storage: int
    matrix_adds: int
    tensor_adds: int
    matrix_mults: int
    tensor_mults: int
    threshold_holds: bool


def complexity_report(k: int, n: int, m: int, R: int) -> ComplexityReport:
    """Encoding costs of a systematic generator matrix against a standard-form generator tensor."""
    nm = n * m
    return ComplexityReport(
        k, n, m, R,
        matrix_storage=k * (nm - k),
        tensor_storage=R * (k + n + m) - k * k - n * n - m * m,
        matrix_adds=(k - 1) * (nm - k),
        tensor_adds=(k - 1) * (R - k),
        matrix_mults=k * (nm - k),
        tensor_mults=k * (R - k),
        threshold_holds=R * (k + n + m) < k * nm + n * n + m * m,
    )


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _config(args) -> SearchConfig:
    try:
        return SearchConfig(strategy=args.strategy, workers=args.workers, node_budget=args.node_budget,
                            time_budget=args.time_budget, seed=args.seed or 0)
    except SearchError as exc:
        raise UsageError(str(exc)) from exc


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _cert_json(cert) -> dict:
    return {"upper": cert.upper_value, "lower": cert.lower, "lower_reason": cert.lower_reason,
            "exact": cert.exact, "simple_sum": simplesum_to_json(cert.upper) if cert.upper else None,
            "provenance": cert.provenance}


def _triple_json(T) -> dict:
    F = T.C.field
    cert = dict(T.certificate)
    cert["rank_histogram"] = {str(k): v for k, v in cert.get("rank_histogram", {}).items()}
    if "alpha" in cert:
        cert["alpha"] = ["inf" if a is None else a for a in cert["alpha"]]
    return {"C": blockcode_to_json(T.C), "V": matrix_entries(F, T.V), "W": matrix_entries(F, T.W),
            "d": T.d, "verified": T.verified, "certificate": cert}


def _emit(obj, fmt: str) -> None:
    if fmt == "table" and isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, list) and val and isinstance(val[0], dict) and "check" in val[0]:
                for c in val:
                    print(f"{'PASS' if c['pass'] else 'FAIL'}  {key}: {c['check']}")
                continue
            if isinstance(val, (dict, list)):
                val = json.dumps(val, default=_default)
            print(f"{key:24s} {val}")
    else:
        print(json.dumps(obj, indent=2, default=_default))


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, tuple)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _field_arg(args):
    if args.field is None:
        raise UsageError("--field is required")
    try:
        return parse_field(args.field)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n for n in missing))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> tuple[dict, int]:
    try:
        C = code_from_json(_load_json(args.input))
    except FormatError as exc:
        raise UsageError(str(exc)) from exc
    if C.k == 0:
        raise UsageError("nonzero code required")
    cfg = _config(args)
    d = min_distance(C)
    out = {"field": field_json(C.field), "n": C.n, "m": C.m, "k": C.k}
    if not isinstance(d, int):
        out["min_distance"] = {"lower": d.lower, "upper": d.upper}
        return out, EXIT_OK
    out["min_distance"] = d
    out["mrd"] = is_mrd(C, d)
    if C.field.order ** C.k <= 1 << 20:
        out["rank_spectrum"] = {str(k): v for k, v in rank_spectrum(C).items()}
    cert = tensor_rank(C, cfg)
    out["tensor_rank"] = _cert_json(cert)
    if not cert.exact:
        return out, EXIT_BUDGET
    v = mtr_verdict(C, cfg, cert.upper)
    out["verdict"] = {"label": v.label, "mtr": v.mtr, "extremal": v.extremal}
    if args.gtr:
        try:
            out["gtr"] = list(gen_tensor_ranks(C, cfg).values)
        except BudgetExhausted as exc:
            out["gtr"] = {"error": str(exc), "lower": exc.lower, "upper": exc.upper}
            return out, EXIT_BUDGET
    return out, EXIT_OK


def cmd_construct(args) -> tuple[dict, int]:
    kind = args.kind
    if kind in ("rs", "maxsum", "small", "square", "polymult", "gabidulin"):
        F = _field_arg(args)
    if kind == "rs":
        _need(args, "k", "d")
        if args.f is None and args.seed is None:
            raise UsageError("--seed is required to choose the irreducible polynomial")
        f = json.loads(args.f) if args.f else None
        T = rs_extremal_triple(F, args.k, args.d, seed=args.seed or 0, f=f,
                               allow_infinity=args.allow_infinity)
        if args.n or args.m:
            T = extend_triple(T, args.n or T.n, args.m or T.m)
        return _triple_output(T), EXIT_OK
    if kind == "maxsum":
        _need(args, "n", "m", "k", "d")
        return _triple_output(maxsum_triple(F, args.n, args.m, args.k, args.d)), EXIT_OK
    if kind in ("small", "square"):
        _need(args, "n", "m", "k", "d")
        fn = small_trank_code if kind == "small" else small_trank_code_square
        res = fn(F, args.n, args.m, args.k, args.d)
        return {"code": code_to_json(res.code), "certificate": _cert_json(res.certificate),
                "bound": res.bound, "mtr": res.mtr}, EXIT_OK
    if kind == "gabidulin":
        _need(args, "n", "m", "K")
        g = gabidulin(F, args.m, args.n, args.K, args.s)
        return {"code": code_to_json(g.code), "K": g.K, "s": g.s,
                "min_distance": min_distance(g.code)}, EXIT_OK
    if kind == "polymult":
        _need(args, "n", "m", "k")
        if args.f is None:
            if args.seed is None:
                raise UsageError("--seed or --f is required for the modulus polynomial")
            f = find_irreducible(F, args.k, args.seed)
        else:
            f = json.loads(args.f)
        X = poly_mult_tensor(F, args.m, args.n, args.k, f)
        out = {"tensor": tensor_to_json(X), "f": f}
        if args.m + args.n - 2 <= F.order:
            S = poly_mult_decomposition(F, args.m, args.n, args.k, f)
            out["decomposition"] = simplesum_to_json(S)
        return out, EXIT_OK
    raise UsageError(f"unknown construction {kind!r}")


def _triple_output(T) -> dict:
    C = T.code
    S = T.simple_sum()
    cert = tensor_rank(C, upper_hint=S)
    return {"triple": _triple_json(T), "code": code_to_json(C), "tensor_rank": _cert_json(cert),
            "storage": standard_form_storage(S)}


def cmd_verify(args) -> tuple[dict, int]:
    data = _load_json(args.input)
    try:
        C = blockcode_from_json(require(data, "C", dict))
        F = C.field
        V = read_matrix(F, require(data, "V", list), "V", None, C.N)
        W = read_matrix(F, require(data, "W", list), "W", None, C.N)
        d = require(data, "d", int)
    except FormatError as exc:
        raise UsageError(str(exc)) from exc
    T = verify_triple(C, V, W, d)
    return _triple_json(T), EXIT_OK if T.verified else EXIT_FAIL


def cmd_bench(args) -> tuple[dict, int]:
    _need(args, "k", "n", "m", "R")
    if min(args.k, args.n, args.m, args.R) < 1:
        raise UsageError("k, n, m and R must be positive")
    return asdict(complexity_report(args.k, args.n, args.m, args.R)), EXIT_OK


def cmd_classify(args) -> tuple[dict, int]:
    _need(args, "k", "d", "n", "m", "q")
    c = classify_parameters(args.k, args.d, args.n, args.m, args.q)
    return {"label": c.label, "rule": c.rule}, EXIT_OK


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------

def _check(results: list, name: str, ok: bool, detail=None) -> None:
    results.append({"check": name, "pass": bool(ok), "detail": detail})


def reproduce_kruskal(cfg) -> list:
    res: list = []
    X = catalog.small_tensor()
    S = catalog.small_tensor_decomposition()
    _check(res, "decomposition sums to the tensor", np.array_equal(to_coordinates(S).entries, X.entries))
    cert = tensor_rank_of_tensor(X, cfg)
    _check(res, "trk = 3", cert.exact and cert.value == 3, cert.value if cert.exact else None)
    _check(res, "lower bound k+d-1 = 3", cert.lower == 3, cert.lower_reason)
    return res


def reproduce_f8(cfg) -> list:
    res: list = []
    F = catalog.f8_field()
    alpha = default_points(F, 7)
    _check(res, "alpha = (1, w, ..., w^6)", alpha == [F.gen_pow(i) for i in range(7)])
    C = cauchy_code(F, alpha, None, 5)
    from .blockcode import hamming_min_distance
    _check(res, "C_5(alpha,1) is [7,5,3]", (C.N, C.k, hamming_min_distance(C)) == (7, 5, 3))
    evf = evaluate(F, catalog.F8_F, alpha)
    _check(res, "ev_alpha(f) = (1,w,w^2,w^4,w^4,w^2,w)",
           evf == [F.gen_pow(e) for e in catalog.F8_EVF_EXP])
    Vp = catalog.from_exponents(F, catalog.F8_V_EXP)
    Wp = catalog.from_exponents(F, catalog.F8_W_EXP)
    parity = cauchy_code(F, alpha, evf, 2)
    _check(res, "V is a parity check matrix of C_2(alpha, ev f)",
           BlockCode(F, Vp) == parity.dual() and Vp.shape == (5, 7))
    Wgen = cauchy_code(F, alpha, None, 3).generator
    (r, c), ref, fixed = catalog.F8_W_MISPRINT
    diff = np.argwhere(Wp != Wgen).tolist()
    _check(res, "reference W differs from a generator of C_3(alpha,1) only at one entry",
           diff == [[r, c]] and Wp[r, c] == F.gen_pow(ref) and Wgen[r, c] == F.gen_pow(fixed),
           {"entry": [r + 1, c + 1], "reference": f"w^{ref}", "consistent": f"w^{fixed}"})
    W = Wp.copy()
    W[r, c] = F.gen_pow(fixed)
    T = verify_triple(C, Vp, W, 3)
    _check(res, "triple verifies (all five conditions)", T.verified, T.certificate["min_rank"])
    Tb = rs_extremal_triple(F, 5, 3, f=catalog.F8_F)
    _check(res, "construction rebuilds the same V and W",
           np.array_equal(Tb.V, Vp) and np.array_equal(Tb.W, W))
    code = T.code
    d = min_distance(code)
    _check(res, "phi(C) has dim 5 and d = 3", (code.k, d) == (5, 3), [code.k, d])
    cert = tensor_rank(code, cfg, upper_hint=T.simple_sum())
    _check(res, "trk certificate = 7", cert.exact and cert.value == 7 and len(cert.upper) == 7)
    _check(res, "MRD", is_mrd(code, d))
    v = mtr_verdict(code, cfg, cert.upper)
    _check(res, "MTR", v.mtr is True, v.label)
    return res


def reproduce_gtr(cfg) -> list:
    res: list = []
    prof = {}
    for name in ("C1", "C2"):
        t = time.monotonic()
        p = gen_tensor_ranks(catalog.gtr_code(name), cfg)
        prof[name] = p.values
        _check(res, f"gtr({name}) = {catalog.GTR_EXPECTED[name]}", p.values == catalog.GTR_EXPECTED[name],
               {"values": list(p.values), "seconds": round(time.monotonic() - t, 1)})
    w = inequivalence_witness(catalog.gtr_code("C1"), catalog.gtr_code("C2"), cfg,
                              profiles=(prof["C1"], prof["C2"]))
    _check(res, "inequivalent, first differing d_r is r = 3",
           w.inequivalent and w.invariant == "gtr" and w.detail.get("first_r") == 3,
           {"invariant": w.invariant, "values": [list(v) for v in w.values]})
    return res


def reproduce_dual(cfg) -> list:
    res: list = []
    from .rankcode import dual
    for name in ("C2", "C3"):
        cert = tensor_rank(dual(catalog.gtr_code(name)), cfg)
        want = catalog.DUAL_TRK_EXPECTED[name]
        _check(res, f"trk({name}^perp) = {want}", cert.exact and cert.value == want,
               cert.value if cert.exact else [cert.lower, cert.upper_value])
    p3 = gen_tensor_ranks(catalog.gtr_code("C3"), cfg).values
    _check(res, f"gtr(C3) = {catalog.GTR_EXPECTED['C3']}", p3 == catalog.GTR_EXPECTED["C3"], list(p3))
    return res


def reproduce_poly(cfg) -> list:
    from .gf import make_field
    res: list = []
    X = poly_mult_tensor(2, 2, 2, 2, [1, 1, 1])
    c = tensor_rank_of_tensor(X, cfg)
    _check(res, "trk(T_{2,2,2}) over GF(2) = 3", c.exact and c.value == 3)
    F4 = make_field(2, 2)
    f = find_irreducible(F4, 3, 0)
    X = poly_mult_tensor(F4, 3, 3, 3, f)
    c = tensor_rank_of_tensor(X, cfg)
    _check(res, "trk(T_{3,3,3}) over GF(4) = 5", c.exact and c.value == 5)
    return res


REPRODUCERS = {"kruskal-example": reproduce_kruskal, "f8-mtr": reproduce_f8,
               "gtr-distinguish": reproduce_gtr, "dual-trk": reproduce_dual, "poly-mult": reproduce_poly}


def cmd_reproduce(args) -> tuple[dict, int]:
    if args.all:
        names = list(EXAMPLES)
    elif args.example:
        names = [args.example]
    else:
        raise UsageError("give --example NAME or --all")
    cfg = _config(args)
    out = {}
    ok = True
    for name in names:
        checks = REPRODUCERS[name](cfg)
        out[name] = checks
        ok = ok and all(c["pass"] for c in checks)
    return out, EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field as p^e or q")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--node-budget", type=int, default=20_000_000)
    common.add_argument("--time-budget", type=float, default=3600.0)
    common.add_argument("--strategy", default="auto",
                        choices=["auto", "quotient_bfs", "codim_enum", "exhaustive"])
    common.add_argument("--format", choices=["json", "table"], default="json")

    p = _Parser(prog="rmtensor", description="Rank-metric codes as 3-tensors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="distance, tensor rank and verdicts of a code")
    a.add_argument("input", help="MatrixCode JSON file or -")
    a.add_argument("--gtr", action="store_true", help="also compute generalized tensor ranks")

    c = sub.add_parser("construct", parents=[common], help="build a code or tensor")
    c.add_argument("kind", choices=["rs", "maxsum", "small", "square", "gabidulin", "polymult"])
    for flag in ("-k", "-d", "-n", "-m", "--K"):
        c.add_argument(flag, type=int)
    c.add_argument("--s", type=int, default=1)
    c.add_argument("--f", help="polynomial coefficients low to high, as a JSON list")
    c.add_argument("--allow-infinity", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="verify an extremal triple")
    v.add_argument("input", help="JSON with C, V, W and d, or -")

    r = sub.add_parser("reproduce", parents=[common], help="rerun the worked examples")
    r.add_argument("--example", choices=EXAMPLES)
    r.add_argument("--all", action="store_true")

    b = sub.add_parser("bench", parents=[common], help="matrix versus tensor encoding costs")
    for flag in ("-k", "-n", "-m", "-R"):
        b.add_argument(flag, type=int)

    k = sub.add_parser("classify", parents=[common], help="MTR existence region for parameters")
    for flag in ("-k", "-d", "-n", "-m", "-q"):
        k.add_argument(flag, type=int)
    return p


COMMANDS = {"analyze": cmd_analyze, "construct": cmd_construct, "verify": cmd_verify,
            "reproduce": cmd_reproduce, "bench": cmd_bench, "classify": cmd_classify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = COMMANDS[args.command](args)
    except (UsageError, FormatError, CodeError, ConstructionError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
