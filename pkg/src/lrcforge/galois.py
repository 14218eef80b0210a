"""Finite fields GF(p^e) with log/antilog table arithmetic.

Elements are canonical integers in [0, q): the base-p digits of the
integer are the polynomial coefficients (little-endian) modulo the
field's primitive modulus.  All arithmetic below q = 2**16 is exact
table lookup; quadratic extensions GF(q0^2) support conjugation
x -> x^q0 as exponent arithmetic on the generator power map.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    InvalidParameters,
    NoSuchRoot,
    NotPrime,
    NotQuadraticExtension,
)

FIELD_CAP = 1 << 16
# q*q addition tables are only materialised below this order (compiled
# kernels need them; everything in the constructions lives at q <= 169).
ADD_TABLE_CAP = 4096


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


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


class FieldSpec:
    """A concrete GF(p^e) with fixed modulus, generator and tables.

    Instances are immutable and interned by ``field_create``; identity
    comparison is safe for same-parameter fields.
    """

    __slots__ = (
        "p", "e", "q", "modulus", "g",
        "exp", "log", "_exp2", "_neg", "_add_table", "_kernel_tables",
    )

    def __init__(self, p: int, e: int, modulus: tuple[int, ...], g: int):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self.g = g
        self._build_tables()
        self._add_table = None
        self._kernel_tables = None

    # -- construction ------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _poly_mul_mod(self, a: int, b: int) -> int:
        """Product of two elements by polynomial multiplication mod modulus."""
        p, e = self.p, self.e
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by monic modulus
        mod = self.modulus
        for i in range(len(prod) - 1, e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(e):
                    prod[i - e + j] = (prod[i - e + j] - c * mod[j]) % p
        return self._undigits(prod[:e])

    def _build_tables(self) -> None:
        q = self.q
        exp = np.zeros(2 * (q - 1), dtype=np.uint16)
        log = np.zeros(q, dtype=np.int64)
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = self._poly_mul_mod(v, self.g)
        if v != 1:
            raise InvalidParameters("generator does not have order q-1")
        exp[q - 1 :] = exp[: q - 1]
        self.exp = exp
        self.log = log
        self._exp2 = exp  # doubled table, alias for kernels
        neg = np.zeros(q, dtype=np.uint16)
        arr = np.arange(q)
        acc = np.zeros(q, dtype=np.int64)
        pw = 1
        for _ in range(self.e):
            acc += ((self.p - (arr // pw) % self.p) % self.p) * pw
            pw *= self.p
        neg[:] = acc
        self._neg = neg

    # -- scalar arithmetic on canonical integers ----------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise InvalidParameters(f"{a} is not a canonical element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out, pw = 0, 1
        for _ in range(self.e):
            out += (((a % p) + (b % p)) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[int(self.log[a]) + int(self.log[b])])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative inverse")
        return int(self.exp[(self.q - 1) - int(self.log[a])])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, m: int) -> int:
        if a == 0:
            if m == 0:
                return 1
            if m < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return int(self.exp[(int(self.log[a]) * m) % (self.q - 1)])

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.q - 1
        k = n // __import__("math").gcd(n, int(self.log[a]))
        return k

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    # -- vectorised helpers over numpy uint16 arrays ------------------------

    def addv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return ((a.astype(np.int64) + b.astype(np.int64)) % self.p).astype(np.uint16)
        p = self.p
        aa = a.astype(np.int64)
        bb = b.astype(np.int64)
        out = np.zeros(np.broadcast(aa, bb).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.e):
            out += (((aa // pw) % p + (bb // pw) % p) % p) * pw
            pw *= p
        return out.astype(np.uint16)

    def negv(self, a: np.ndarray) -> np.ndarray:
        return self._neg[a]

    def subv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.addv(a, self._neg[b])

    def mulv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint16)
        b = np.asarray(b, dtype=np.uint16)
        mask = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.uint16)
        if np.any(mask):
            la = self.log[np.broadcast_to(a, out.shape)[mask]]
            lb = self.log[np.broadcast_to(b, out.shape)[mask]]
            out[mask] = self.exp[(la + lb) % (self.q - 1)]
        return out

    def scalev(self, c: int, v: np.ndarray) -> np.ndarray:
        if c == 0:
            return np.zeros_like(v)
        if c == 1:
            return v.copy()
        lc = int(self.log[c])
        out = np.zeros_like(v)
        mask = v != 0
        out[mask] = self.exp[(lc + self.log[v[mask]]) % (self.q - 1)]
        return out

    def powv(self, v: np.ndarray, m: int) -> np.ndarray:
        out = np.zeros_like(v)
        mask = v != 0
        out[mask] = self.exp[(self.log[v[mask]] * m) % (self.q - 1)]
        if m == 0:
            out[~mask] = 1
        return out

    @property
    def add_table(self) -> np.ndarray:
        """Full q x q addition table (built lazily; q <= ADD_TABLE_CAP)."""
        if self._add_table is None:
            if self.q > ADD_TABLE_CAP:
                raise FieldTooLarge(
                    f"addition table not materialised for q={self.q} > {ADD_TABLE_CAP}"
                )
            col = np.arange(self.q, dtype=np.uint16)
            self._add_table = self.addv(col[:, None], col[None, :])
        return self._add_table

    def kernel_tables(self):
        """Tables bundle consumed by the search kernels."""
        if self._kernel_tables is None:
            self._kernel_tables = KernelTables(
                q=self.q,
                exp2=np.ascontiguousarray(self.exp, dtype=np.uint16),
                log=np.ascontiguousarray(self.log, dtype=np.int64),
                neg=np.ascontiguousarray(self._neg, dtype=np.uint16),
                add=np.ascontiguousarray(self.add_table, dtype=np.uint16)
                if self.q <= ADD_TABLE_CAP
                else None,
            )
        return self._kernel_tables

    # -- misc ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_create, (self.p, self.e))


class KernelTables:
    __slots__ = ("q", "exp2", "log", "neg", "add")

    def __init__(self, q, exp2, log, neg, add):
        self.q = q
        self.exp2 = exp2
        self.log = log
        self.neg = neg
        self.add = add


# -- field construction ------------------------------------------------------


def _poly_pow_mod(spec_like, base_digits, exponent, modulus, p, e):
    """x^exponent mod modulus over GF(p), digits little-endian, monic modulus."""

    def mul(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(len(prod) - 1, e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(e):
                    prod[i - e + j] = (prod[i - e + j] - c * modulus[j]) % p
        out = prod[:e]
        out += [0] * (e - len(out))
        return out

    result = [1] + [0] * (e - 1)
    acc = list(base_digits)
    while exponent:
        if exponent & 1:
            result = mul(result, acc)
        acc = mul(acc, acc)
        exponent >>= 1
    return result


def _x_is_primitive(modulus, p, e, q, factors) -> bool:
    """Is the class of x a generator of GF(p^e)* for this monic modulus?"""
    x = [0, 1] + [0] * (e - 2) if e >= 2 else [1]
    one = [1] + [0] * (e - 1)
    if _poly_pow_mod(None, x, q - 1, modulus, p, e) != one:
        return False  # not even invertible of full order (reducible modulus)
    for ell in factors:
        if _poly_pow_mod(None, x, (q - 1) // ell, modulus, p, e) == one:
            return False
    return True


def _order_mod_p(a: int, p: int, factors) -> bool:
    """True iff a generates GF(p)*."""
    if a % p == 0:
        return False
    if pow(a, p - 1, p) != 1:
        return False
    return all(pow(a, (p - 1) // ell, p) != 1 for ell in factors)


@functools.lru_cache(maxsize=None)
def field_create(p: int, e: int) -> FieldSpec:
    """Deterministically construct GF(p^e).

    The modulus is the lexicographically smallest monic primitive
    polynomial of degree e (coefficients compared low-degree first);
    the fixed generator g is the primitive element with the smallest
    canonical integer representative.
    """
    if e < 1:
        raise InvalidParameters("extension degree must be >= 1")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = p**e
    if q > FIELD_CAP:
        raise FieldTooLarge(f"p^e = {q} exceeds {FIELD_CAP}")
    factors = _prime_factors(q - 1)
    if e == 1:
        g = next(a for a in range(2, p) if _order_mod_p(a, p, factors)) if p > 2 else 1
        # lex-smallest primitive degree-1 monic polynomial x + c0 (root -c0 primitive)
        if p == 2:
            modulus = (1, 1)
        else:
            c0 = next(c for c in range(p) if _order_mod_p((-c) % p, p, factors))
            modulus = (c0, 1)
        return FieldSpec(p, e, modulus, g)
    for low in range(q):
        digits = []
        v = low
        for _ in range(e):
            digits.append(v % p)
            v //= p
        modulus = tuple(digits + [1])
        if _x_is_primitive(modulus, p, e, q, factors):
            # smallest-representative primitive element is x itself (repr p):
            # integers < p lie in the prime subfield, hence are never primitive
            # for e >= 2.
            return FieldSpec(p, e, modulus, p)
    raise InvalidParameters(f"no primitive polynomial found for GF({p}^{e})")  # pragma: no cover


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        if q % p == 0:
            e = 0
            v = q
            while v % p == 0:
                v //= p
                e += 1
            if v != 1:
                break
            return field_create(p, e)
    raise InvalidParameters(f"{q} is not a prime power")


# -- element-level operations (spec surface) ---------------------------------


class FieldElement:
    """An element of a specific FieldSpec; thin wrapper over the canonical int."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = spec.check(value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec:
                raise FieldMismatch("operands from different fields")
            return other.value
        raise FieldMismatch(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._coerce(other)))

    def __pow__(self, m: int):
        return FieldElement(self.spec, self.spec.pow(self.value, m))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.spec is self.spec
            and other.value == self.value
        )

    def __hash__(self):
        return hash((id(self.spec), self.value))

    def __repr__(self):
        return f"{self.value}@GF({self.spec.q})"


def element(spec: FieldSpec, value: int) -> FieldElement:
    return FieldElement(spec, value)


def conjugate(spec: FieldSpec, x: int, q0: int) -> int:
    """x -> x^q0, the non-trivial automorphism of GF(q0^2) over GF(q0)."""
    if spec.q != q0 * q0:
        raise NotQuadraticExtension(f"GF({spec.q}) is not GF({q0}^2)")
    return spec.pow(x, q0)


def root_of_unity(spec: FieldSpec, n: int) -> int:
    """The canonical primitive n-th root of unity g^((q-1)/n)."""
    if n < 1:
        raise InvalidParameters("n must be positive")
    if (spec.q - 1) % n != 0:
        raise NoSuchRoot(f"{n} does not divide q-1 = {spec.q - 1}")
    return spec.pow(spec.g, (spec.q - 1) // n)


def subfield_membership(spec: FieldSpec, x: int, q0: int) -> bool:
    """True iff x lies in the subfield of order q0 (fixed field of x -> x^q0)."""
    if spec.q != q0 * q0 and spec.q != q0:
        raise NotQuadraticExtension(
            f"GF({spec.q}) is neither GF({q0}) nor GF({q0}^2)"
        )
    return spec.pow(x, q0) == x
