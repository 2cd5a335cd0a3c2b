"""Finite fields GF(p^e), one-level towers GF(q^m)/GF(q), and polynomials over them.

Elements are plain integers: the coefficient vector (c_0, ..., c_{e-1}) of the
canonical polynomial representative is packed as ``sum c_i * Q**i`` where ``Q``
is the order of the base field.  Because every base order is a power of ``p``,
the packed integer is also the base-``p`` digit string of the element, so
addition is digitwise (XOR in characteristic 2) at every tower level.

All arithmetic methods accept Python ints or numpy integer arrays.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 1 << 20
_ADD_TABLE_MAX = 1024
_MUL_TABLE_MAX = 256


class FieldError(ValueError):
    """Raised for invalid field parameters or illegal field operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """GF(Q^e) given by a monic irreducible modulus over a base field of order Q.

    ``base`` is ``None`` for fields built directly over the prime field GF(p).
    Instances are immutable after construction and safe to share.
    """

    def __init__(self, p: int, degree: int, modulus: Sequence[int], base: Field | None = None,
                 size_cap: int = DEFAULT_SIZE_CAP):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if degree < 1:
            raise FieldError("extension degree must be >= 1")
        if base is not None and base.p != p:
            raise FieldError("base field characteristic mismatch")
        self.p = p
        self.base = base
        self.degree = degree
        self.base_order = p if base is None else base.order
        self.order = self.base_order ** degree
        if self.order > size_cap:
            raise FieldError(f"field order {self.order} exceeds size cap {size_cap}")
        self.modulus = tuple(int(c) for c in modulus)
        if len(self.modulus) != degree + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of the stated degree")
        self.char2 = p == 2
        self._build_tables()

    # -- construction -----------------------------------------------------
    def _base_add(self, a: int, b: int) -> int:
        return (a + b) % self.p if self.base is None else self.base.add(a, b)

    def _base_mul(self, a: int, b: int) -> int:
        return (a * b) % self.p if self.base is None else self.base.mul(a, b)

    def _base_neg(self, a: int) -> int:
        return (-a) % self.p if self.base is None else self.base.neg(a)

    def _mulmod_coeffs(self, a: list[int], b: list[int]) -> list[int]:
        e = self.degree
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = self._base_add(prod[i + j], self._base_mul(ai, bj))
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[top]
            if c:
                nc = self._base_neg(c)
                for i in range(e):
                    if self.modulus[i]:
                        prod[top - e + i] = self._base_add(prod[top - e + i],
                                                           self._base_mul(nc, self.modulus[i]))
                prod[top] = 0
        return prod[:e]

    def _build_tables(self) -> None:
        q = self.order
        Q = self.base_order
        e = self.degree
        if e == 1:
            # the modulus x + c only fixes which constant x represents; elements are constants
            pass
        # check irreducibility of the modulus before trusting any table
        if e > 1 and not _is_irreducible_coeffs(_BaseView(self), list(self.modulus)):
            raise FieldError(f"modulus {self.modulus} is reducible")

        def unpack(x: int) -> list[int]:
            out = []
            for _ in range(e):
                x, r = divmod(x, Q)
                out.append(r)
            return out

        def pack(c: list[int]) -> int:
            v = 0
            for ci in reversed(c):
                v = v * Q + ci
            return v

        def mul_packed(a: int, b: int) -> int:
            if e == 1:
                return self._base_mul(a, b)
            return pack(self._mulmod_coeffs(unpack(a), unpack(b)))

        def order_ok(g: int) -> bool:
            for r in _prime_factors(q - 1):
                if _pow_generic(mul_packed, g, (q - 1) // r) == 1:
                    return False
            return True

        gen = None
        for g in range(1, q):
            if q == 2 or order_ok(g):
                gen = g
                break
        assert gen is not None
        self.generator = gen
        exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = mul_packed(cur, gen)
        exp[q - 1:2 * (q - 1)] = exp[:q - 1]
        self._exp = exp
        self._log = log
        idx = np.arange(q, dtype=np.int64)
        self._neg = self._digitwise_neg(idx)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv
        self._add_table = None
        if not self.char2 and q <= _ADD_TABLE_MAX:
            self._add_table = self._digitwise_add(idx[:, None], idx[None, :])
        self._mul_table = None
        if e > 1 and q <= _MUL_TABLE_MAX:
            t = exp[log[:, None] + log[None, :]]
            t[0, :] = 0
            t[:, 0] = 0
            self._mul_table = t

    def _digitwise_add(self, a, b):
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        while place < self.order:
            da = (a // place) % p
            db = (b // place) % p
            out = out + ((da + db) % p) * place
            place *= p
        return out

    def _digitwise_neg(self, a):
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        place = 1
        while place < self.order:
            out = out + ((-((a // place) % p)) % p) * place
            place *= p
        return out

    # -- vectorized arithmetic ----------------------------------------------
    def add(self, a, b):
        if self.char2:
            return a ^ b
        if self.base is None and self.degree == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            r = self._add_table[a, b]
        else:
            r = self._digitwise_add(a, b)
        return int(r) if isinstance(a, int) and isinstance(b, int) else r

    def neg(self, a):
        if self.char2:
            return a
        r = self._neg[a]
        return int(r) if isinstance(a, int) else r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.base is None and self.degree == 1:
            return (a * b) % self.p
        if isinstance(a, int) and isinstance(b, int):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        if self._mul_table is not None:
            return self._mul_table[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if isinstance(a, int):
            if a == 0:
                raise ZeroDivisionError("inverse of zero in finite field")
            return int(self._inv[a])
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero in finite field")
            return 1 if n == 0 else 0
        return int(self._exp[(int(self._log[a]) * n) % (self.order - 1)])

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("discrete log of zero")
        return int(self._log[a])

    def gen_pow(self, i: int) -> int:
        """Return generator**i."""
        return int(self._exp[i % (self.order - 1)])

    def scale(self, c: int, v):
        """c * v for a scalar c and an array v."""
        if c == 0:
            return np.zeros_like(np.asarray(v))
        if c == 1:
            return np.asarray(v)
        return self.mul(np.asarray(v), c)

    # -- element views ------------------------------------------------------
    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.base_order)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.degree:
            raise FieldError("coefficient vector longer than the extension degree")
        v = 0
        for c in reversed(list(coeffs)):
            if not 0 <= c < self.base_order:
                raise FieldError(f"coefficient {c} outside the base field")
            v = v * self.base_order + int(c)
        return v

    def element(self, value) -> FieldElement:
        if isinstance(value, (list, tuple)):
            value = self.from_coeffs(value)
        if not 0 <= int(value) < self.order:
            raise FieldError(f"{value} is not an element of GF({self.order})")
        return FieldElement(self, int(value))

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def __repr__(self) -> str:
        return f"Field(GF({self.order}), p={self.p}, modulus={list(self.modulus)})"

    def key(self) -> tuple:
        return (self.p, self.degree, self.modulus, None if self.base is None else self.base.key())

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        d = {"p": self.p, "e": self.degree, "modulus": list(self.modulus)}
        if self.base is not None:
            d["base"] = self.base.to_json()
        return d


class _BaseView:
    """Arithmetic of the coefficient field of ``field`` (used before tables exist)."""

    def __init__(self, field: Field):
        self.f = field
        self.order = field.base_order
        self.p = field.p

    def add(self, a, b):
        return self.f._base_add(a, b)

    def mul(self, a, b):
        return self.f._base_mul(a, b)

    def neg(self, a):
        return self.f._base_neg(a)

    def inv(self, a):
        if self.f.base is None:
            return pow(a, self.p - 2, self.p)
        return self.f.base.inv(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))


def _pow_generic(mul, g: int, n: int) -> int:
    result, base = 1, g
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its field; supports the usual operators."""

    field: Field
    value: int

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._check(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._check(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._check(other)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"GF({self.field.order})<{self.value}>"


def arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch ``op`` in {add, mul, inv, pow, neg} on field elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        return a ** int(b)
    raise FieldError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# polynomials over a field: coefficient lists, low degree first, trimmed
# ---------------------------------------------------------------------------

def poly_trim(f: Iterable[int]) -> list[int]:
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_deg(f: Sequence[int]) -> int:
    return len(poly_trim(f)) - 1


def poly_add(F, f, g) -> list[int]:
    n = max(len(f), len(g))
    out = [F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return poly_trim(out)


def poly_sub(F, f, g) -> list[int]:
    return poly_add(F, f, [F.neg(c) for c in g])


def poly_scale(F, c: int, f) -> list[int]:
    return poly_trim([F.mul(c, a) for a in f])


def poly_mul(F, f, g) -> list[int]:
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(out)


def poly_divmod(F, f, g) -> tuple[list[int], list[int]]:
    f, g = poly_trim(f), poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    quot = [0] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = F.mul(r[-1], lead_inv)
        quot[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b))
        r = poly_trim(r)
    return poly_trim(quot), r


def poly_mod(F, f, g) -> list[int]:
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f) -> list[int]:
    f = poly_trim(f)
    if not f:
        return f
    return poly_scale(F, F.inv(f[-1]), f)


def poly_gcd(F, f, g) -> list[int]:
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


def poly_powmod(F, f, n: int, mod) -> list[int]:
    result = [1]
    base = poly_mod(F, f, mod)
    while n:
        if n & 1:
            result = poly_mod(F, poly_mul(F, result, base), mod)
        base = poly_mod(F, poly_mul(F, base, base), mod)
        n >>= 1
    return result


def poly_eval(F, f, x: int) -> int:
    acc = 0
    for c in reversed(poly_trim(f)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _is_irreducible_coeffs(F, f: list[int]) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    f = poly_trim(f)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    q = F.order
    f = poly_monic(F, f)
    x = [0, 1]
    xp = x
    for _ in range(1, k // 2 + 1):
        xp = poly_powmod(F, xp, q, f)
        if len(poly_gcd(F, poly_sub(F, xp, x), f)) > 1:
            return False
    return True


def is_irreducible(F: Field, f: Sequence[int]) -> bool:
    """Irreducibility of a polynomial over ``F`` (coefficients low-to-high)."""
    return _is_irreducible_coeffs(F, list(f))


def find_irreducible(F: Field, k: int, seed: int = 0) -> list[int]:
    """A monic irreducible of degree ``k`` over ``F`` by seeded random trial."""
    if k < 1:
        raise FieldError("degree must be >= 1")
    rng = random.Random(seed)
    while True:
        f = [rng.randrange(F.order) for _ in range(k)] + [1]
        if is_irreducible(F, f):
            return f


def smallest_irreducible(p_or_field, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree ``e``.

    The order is that of the packed integer ``sum c_i Q**i`` of the lower
    coefficients, i.e. comparing coefficients from the top down.
    """
    if isinstance(p_or_field, Field):
        F, Q = p_or_field, p_or_field.order
    else:
        F, Q = _PrimeArith(p_or_field), p_or_field
    if e == 1:
        return [0, 1]
    for low in range(Q ** e):
        coeffs = []
        x = low
        for _ in range(e):
            x, r = divmod(x, Q)
            coeffs.append(r)
        f = coeffs + [1]
        if coeffs[0] == 0:
            continue
        if _is_irreducible_coeffs(F, f):
            return f
    raise FieldError("no irreducible polynomial found")  # unreachable


class _PrimeArith:
    def __init__(self, p: int):
        self.p = p
        self.order = p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1, size_cap: int = DEFAULT_SIZE_CAP) -> Field:
    """GF(p^e) with the lexicographically smallest irreducible modulus."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if p ** e > size_cap:
        raise FieldError(f"field order {p ** e} exceeds size cap {size_cap}")
    return Field(p, e, smallest_irreducible(p, e), size_cap=size_cap)


@lru_cache(maxsize=None)
def extension_field(base: Field, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> Field:
    """GF(q^m) as GF(q)[y]/(g) with g the smallest irreducible of degree m over GF(q)."""
    if base.base is not None:
        raise FieldError("towers are limited to one level")
    if base.order ** m > size_cap:
        raise FieldError(f"field order {base.order ** m} exceeds size cap {size_cap}")
    if m == 1:
        return base
    return Field(base.p, m, smallest_irreducible(base, m), base=base, size_cap=size_cap)


def field_from_order(q: int) -> Field:
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise FieldError(f"{q} is not a prime power")
    e, x = 0, q
    while x % p == 0:
        x //= p
        e += 1
    if x != 1:
        raise FieldError(f"{q} is not a prime power")
    return make_field(p, e)


def parse_field(text: str) -> Field:
    """Parse ``"p^e"``, ``"p**e"`` or a prime power ``"q"``."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:(?:\^|\*\*)\s*(\d+))?\s*", str(text))
    if not m:
        raise FieldError(f"cannot parse field {text!r}")
    if m.group(2) is None:
        return field_from_order(int(m.group(1)))
    return make_field(int(m.group(1)), int(m.group(2)))


def field_from_json(d: dict) -> Field:
    try:
        p, e, modulus = int(d["p"]), int(d["e"]), [int(c) for c in d["modulus"]]
    except (KeyError, TypeError) as exc:
        raise FieldError(f"malformed field descriptor: missing or bad field {exc}") from exc
    if "base" in d:
        base = field_from_json(d["base"])
        return Field(p, e, modulus, base=base)
    F = make_field(p, e)
    if list(F.modulus) != modulus:
        F = Field(p, e, modulus)
    return F


def encode_element(F: Field, a: int):
    """JSON form of an element: an int over prime fields, a coefficient list otherwise."""
    if F.degree == 1 and F.base is None:
        return int(a)
    if F.base is None:
        return F.coeffs(int(a))
    return [encode_element(F.base, c) for c in F.coeffs(int(a))]


def decode_element(F: Field, x) -> int:
    if isinstance(x, list):
        if F.base is None:
            return F.from_coeffs([int(c) for c in x])
        return F.from_coeffs([decode_element(F.base, c) for c in x])
    v = int(x)
    if not 0 <= v < F.order:
        raise FieldError(f"{v} is not an element of GF({F.order})")
    return v


# ---------------------------------------------------------------------------
# subfield expansion GF(q^m)^n -> GF(q)^{n x m}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerBasis:
    """A basis ``gamma`` of GF(q^m) over GF(q); ``ext.base`` is GF(q)."""

    ext: Field
    gamma: tuple[int, ...]

    def __post_init__(self):
        from .linalg import rank

        if self.ext.base is None:
            raise FieldError("TowerBasis needs an extension field built over a base field")
        if len(self.gamma) != self.ext.degree:
            raise FieldError("a tower basis needs exactly m elements")
        M = np.array([self.ext.coeffs(g) for g in self.gamma], dtype=np.int64)
        if rank(self.ext.base, M) != self.ext.degree:
            raise FieldError("gamma is not a basis over the base field")

    @classmethod
    def polynomial(cls, ext: Field) -> TowerBasis:
        """The basis 1, y, ..., y^{m-1} of the defining polynomial representation."""
        Q = ext.base_order
        return cls(ext, tuple(Q ** i for i in range(ext.degree)))

    @classmethod
    def powers(cls, ext: Field, a: int) -> TowerBasis:
        return cls(ext, tuple(ext.pow(a, i) for i in range(ext.degree)))

    def change_matrix(self) -> np.ndarray:
        """Rows are the gamma elements in polynomial coordinates."""
        return np.array([self.ext.coeffs(g) for g in self.gamma], dtype=np.int64)


def subfield_expand(v: Sequence[int], gamma: TowerBasis) -> np.ndarray:
    """Matrix whose (i, j) entry is the j-th gamma-coordinate of v_i."""
    from .linalg import inverse, matmul

    ext = gamma.ext
    F = ext.base
    coords = np.array([ext.coeffs(int(x)) for x in v], dtype=np.int64).reshape(len(v), ext.degree)
    G = gamma.change_matrix()
    # coords = c @ G  =>  c = coords @ G^{-1}
    return matmul(F, coords, inverse(F, G))
