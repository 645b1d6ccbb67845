"""Exact arithmetic in GF(p^m) for q = p^m up to 1024.

Elements are plain ints in range(q): the polynomial-basis digit vector
(c0, c1, ..., c_{m-1}) is read as the base-p integer sum(ci * p**i), so 0 and
1 are always the additive and multiplicative identities and prime fields look
like ordinary residues.  A Field instance owns dense numpy lookup tables for
add/sub/mul/inv, which is what lets the matrix layer and the brute-force
codeword enumerations run as fancy indexing instead of per-element Python.
"""

from __future__ import annotations

import functools
import math
import re
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1024


class FieldError(ValueError):
    """Base class for field construction and lookup problems."""


class NonPrimeError(FieldError):
    """Characteristic is not prime (or the order is not a prime power)."""


class ReducibleModulusError(FieldError):
    """Proposed modulus polynomial is not irreducible over GF(p)."""


class UnsupportedSizeError(FieldError):
    """Field order exceeds the supported cap MAX_ORDER."""


class FieldMismatchError(FieldError):
    """Two operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists, ascending degree
# ---------------------------------------------------------------------------

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a mod b over GF(p).  b must have invertible lead."""
    r = list(a)
    db = len(b) - 1
    lead_inv = pow(b[-1], -1, p)
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        f = (r[-1] * lead_inv) % p
        shift = len(r) - 1 - db
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - f * c) % p
    while r and r[-1] == 0:
        r.pop()
    return r


def _poly_is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for idx in range(p**d):
            div = [(idx // p**i) % p for i in range(d)] + [1]
            if not _poly_mod(list(poly), div, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, by ascending digit index.

    Deterministic, so every process agrees on the representation of a given
    GF(p^m).  For GF(4) this yields x^2+x+1 and for GF(8) x^3+x+1, the two
    moduli the worked examples in the test-suite assume.
    """
    if m == 1:
        return (0, 1)
    for idx in range(p**m):
        cand = tuple((idx // p**i) % p for i in range(m)) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise ReducibleModulusError(f"no irreducible polynomial of degree {m} over GF({p})")


# ---------------------------------------------------------------------------
# the field itself
# ---------------------------------------------------------------------------

class Field:
    """GF(p^m) with dense lookup tables; elements are ints in range(q).

    Attributes:
        p, m, q: characteristic, extension degree, order.
        modulus: monic degree-m polynomial, ascending coefficients.
        add_table, sub_table, mul_table: (q, q) int16 arrays.
        inv_table: (q,) int16 array; entry 0 is a dummy, never index it at 0.
        exp, log: discrete exp/log w.r.t. the smallest primitive element.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NonPrimeError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = p**m
        if q > MAX_ORDER:
            raise UnsupportedSizeError(f"q = {q} exceeds the supported cap {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {m}, got {modulus}")
            if m > 1 and not _poly_is_irreducible(modulus, p):
                raise ReducibleModulusError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = q
        self.modulus = tuple(modulus)
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        vals = np.arange(q, dtype=np.int64)
        digits = np.zeros((q, m), dtype=np.int16)
        for i in range(m):
            digits[:, i] = (vals // p**i) % p
        pvec = (p ** np.arange(m)).astype(np.int64)

        add = np.empty((q, q), dtype=np.int16)
        sub = np.empty((q, q), dtype=np.int16)
        # chunked so the (rows, q, m) temporaries stay small for q near the cap
        step = max(1, (1 << 22) // (q * m))
        for lo in range(0, q, step):
            hi = min(q, lo + step)
            block = digits[lo:hi, None, :].astype(np.int64)
            add[lo:hi] = ((block + digits[None, :, :]) % p) @ pvec
            sub[lo:hi] = ((block - digits[None, :, :]) % p) @ pvec

        # reduction of x^t for t = m .. 2m-2, used only to bootstrap exp/log
        red: list[list[int]] = []
        top = [(-c) % p for c in self.modulus[:m]]  # x^m = -(lower part)
        cur = top
        for _ in range(m - 1):
            red.append(cur)
            nxt = [0] + cur[:-1]
            if cur[-1]:
                nxt = [(nxt[i] + cur[-1] * top[i]) % p for i in range(m)]
            cur = nxt

        def mul_ints(a: int, b: int) -> int:
            da = [(a // p**i) % p for i in range(m)]
            db = [(b // p**i) % p for i in range(m)]
            conv = [0] * (2 * m - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        conv[i + j] = (conv[i + j] + x * y) % p
            out = conv[:m]
            for t in range(m, 2 * m - 1):
                c = conv[t]
                if c:
                    r = red[t - m]
                    out = [(out[i] + c * r[i]) % p for i in range(m)]
            return sum(out[i] * p**i for i in range(m))

        gen = None
        for cand in range(1, q):
            acc, order = cand, 1
            while acc != 1:
                acc = mul_ints(acc, cand)
                order += 1
            if order == q - 1:
                gen = cand
                break
        assert gen is not None  # the multiplicative group is cyclic

        exp = np.empty(q - 1, dtype=np.int16)
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            acc = mul_ints(acc, gen)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)

        mul = np.zeros((q, q), dtype=np.int16)
        if q > 1:
            lnz = log[1:]
            mul[1:, 1:] = exp[(lnz[:, None] + lnz[None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int16)
        inv[exp] = exp[(-log[exp]) % (q - 1)]

        for t in (add, sub, mul, inv, exp, log, digits):
            t.flags.writeable = False
        self.add_table = add
        self.sub_table = sub
        self.mul_table = mul
        self.inv_table = inv
        self.neg_table = sub[0].copy()
        self.neg_table.flags.writeable = False
        self.exp = exp
        self.log = log
        self._digits = digits
        self._primitive = gen

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        # rebuild from parameters instead of shipping the tables around
        return (Field.from_order, (self.q, self.modulus if self.m > 1 else None))

    def __repr__(self) -> str:
        return f"Field({self.spec_string()})"

    def spec_string(self) -> str:
        """Canonical parseable form, e.g. "gf(7)" or "gf(2^3):1,1,0,1"."""
        if self.m == 1:
            return f"gf({self.p})"
        mod = ",".join(str(c) for c in self.modulus)
        return f"gf({self.p}^{self.m}):{mod}"

    # -- scalar arithmetic ---------------------------------------------------

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element index of {self.spec_string()}")
        return a

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.spec_string()}")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        # 0^0 = 1 so evaluation rows alpha^0 are all ones even when 0 is a node
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError(f"0 to a negative power in {self.spec_string()}")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def elements(self) -> range:
        """All q elements in canonical order (digit vectors read base-p)."""
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis digit vector (c0, ..., c_{m-1}) of a."""
        return tuple(int(c) for c in self._digits[self.check(a)])

    def from_coeffs(self, digits: Iterable[int]) -> int:
        ds = list(digits)
        if len(ds) > self.m:
            raise ValueError(f"digit vector longer than degree {self.m}: {ds}")
        a = 0
        for i, d in enumerate(ds):
            d = int(d)
            if not 0 <= d < self.p:
                raise ValueError(f"digit {d} out of range [0, {self.p})")
            a += d * self.p**i
        return a

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        if self.q == 2:
            return 1
        return (self.q - 1) // math.gcd(int(self.log[a]), self.q - 1)

    def primitive_element(self) -> int:
        """Smallest element in canonical order generating the unit group."""
        return self._primitive

    # -- parsing and display -------------------------------------------------

    def parse_element(self, value: int | str | Sequence[int]) -> int:
        """Accepts an element index, a digit vector, or power notation "g^i".

        Ints are canonical indices (reduced mod p in a prime field, where the
        index is the residue); sequences are digit vectors; "g" is the
        primitive element returned by primitive_element().
        """
        if isinstance(value, str):
            s = value.strip()
            m = re.fullmatch(r"g(?:\^(-?\d+))?", s)
            if m:
                e = int(m.group(1)) if m.group(1) is not None else 1
                return self.pow(self._primitive, e)
            try:
                value = int(s)
            except ValueError:
                raise ValueError(f"cannot parse {value!r} as an element of {self.spec_string()}") from None
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if self.m == 1:
                return v % self.p
            return self.check(v)
        return self.from_coeffs(value)

    def format_element(self, a: int, style: str = "auto") -> str:
        """Render a as "index", "power" ("g^i"), or "digits" notation."""
        a = self.check(a)
        if style == "auto":
            style = "index" if self.m == 1 else "power"
        if style == "index":
            return str(a)
        if style == "power":
            if a == 0:
                return "0"
            if a == 1:
                return "1"
            e = int(self.log[a])
            return "g" if e == 1 else f"g^{e}"
        if style == "digits":
            return "(" + ",".join(str(c) for c in self.coeffs(a)) + ")"
        raise ValueError(f"unknown element style {style!r}")

    # -- factories -----------------------------------------------------------

    @staticmethod
    def from_order(q: int, modulus: Sequence[int] | None = None) -> "Field":
        p, m = _factor_prime_power(q)
        key = (p, m, tuple(modulus) if modulus is not None else None)
        f = _FIELD_CACHE.get(key)
        if f is None:
            f = Field(p, m, modulus)
            _FIELD_CACHE[key] = f
        return f


_FIELD_CACHE: dict[tuple, Field] = {}

_FIELD_RE = re.compile(r"gf\((\d+)(?:\^(\d+))?\)(?::([0-9,]+))?", re.IGNORECASE)


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NonPrimeError(f"{q} is not a prime power")
    p = q
    for f in range(2, int(q**0.5) + 1):
        if q % f == 0:
            p = f
            break
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NonPrimeError(f"{q} is not a prime power")
    return p, m


def parse_field(text: str) -> Field:
    """Parse "gf(q)", "gf(p^m)", optionally ":c0,c1,...,cm" for the modulus."""
    m = _FIELD_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse field spec {text!r}")
    base = int(m.group(1))
    if m.group(2) is not None:
        if not is_prime(base):
            raise NonPrimeError(f"characteristic {base} is not prime")
        q = base ** int(m.group(2))
    else:
        q = base
    modulus = None
    if m.group(3) is not None:
        modulus = tuple(int(c) for c in m.group(3).split(","))
    return Field.from_order(q, modulus)
