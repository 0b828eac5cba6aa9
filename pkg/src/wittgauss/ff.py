"""Finite fields F_{p^k} with Frobenius, relative trace/norm and subfield embeddings.

An element of F_{p^k} = F_p[x]/(f) is encoded as the integer sum c_i p^i of its
coefficient vector (c_0 least significant).  That makes enumeration order
simply ``range(q)`` and keeps elements hashable and cheap.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

DEFAULT_FIELD_BOUND = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# polynomial helpers over F_p, coefficient lists low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _x_pow_mod(e: int, f: list[int], p: int) -> list[int]:
    result, base = [1], [0, 1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), f, p)
    return result


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin-style test: x^{p^k} = x mod f and gcd(x^{p^d} - x, f) = 1 for d | k, d < k."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if _psub(_x_pow_mod(p**k, f, p), [0, 1], p):
        return False
    for d in divisors(k)[:-1]:
        g = _pgcd(f, _psub(_x_pow_mod(p**d, f, p), [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (base-p counting order)."""
    for n in range(p**k):
        f = [(n // p**i) % p for i in range(k)] + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over F_{p}")


def field_bound() -> int:
    env = os.environ.get("WITTGAUSS_FIELD_BOUND")
    return int(env) if env else DEFAULT_FIELD_BOUND


class FiniteField:
    """F_{p^k} = F_p[x]/(modulus)."""

    def __init__(self, p: int, k: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be at least 1")
        modulus = tuple(modulus) if modulus is not None else smallest_irreducible(p, k)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"{modulus} is not irreducible over F_{p}")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = modulus
        self._pw = [p**i for i in range(k)]
        self._build_tables()
        self._embeddings: dict = {}

    def __repr__(self):
        return f"FiniteField({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (FiniteField, (self.p, self.k, self.modulus))

    # encoding
    def to_coeffs(self, a: int) -> list[int]:
        return [(a // w) % self.p for w in self._pw]

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pw))

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _pmul(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), self.p)
        return self.from_coeffs(_pmod(prod, list(self.modulus), self.p))

    def _build_tables(self):
        q, p = self.q, self.p
        self.digits = np.array([self.to_coeffs(a) for a in range(q)], dtype=np.int64)
        self._weights = np.array(self._pw, dtype=np.int64)
        # find a primitive element by order test, then log/antilog tables
        order = q - 1
        factors = [d for d in range(2, order + 1) if order % d == 0 and is_prime(d)]
        gen = None
        for g in range(1, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                gen = g
                break
        self.primitive = gen
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = 1
        for i in range(order):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_slow(cur, gen)
        exp[order:] = exp[:order]
        self._exp, self._log = exp, log

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            e >>= 1
            if e:
                base = self._mul_slow(base, base)
        return result

    # integer-level arithmetic
    def add(self, a: int, b: int) -> int:
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self._weights)

    def sub(self, a: int, b: int) -> int:
        return int(((self.digits[a] - self.digits[b]) % self.p) @ self._weights)

    def neg(self, a: int) -> int:
        return int(((-self.digits[a]) % self.p) @ self._weights)

    def smul(self, c: int, a: int) -> int:
        return int(((c * self.digits[a]) % self.p) @ self._weights)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError
            return 1 if e == 0 else 0
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def frob_int(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._weights

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_arrays(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a)
        out = self._exp[(self._log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0 if e else 1, out)

    # element API
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.parent != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_coeffs([int(value)]))

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError("index out of range")
        return FieldElement(self, index)

    def gen(self) -> "FieldElement":
        """The class of x (for k = 1 this is the root of the modulus)."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    def units(self):
        return [FieldElement(self, a) for a in range(1, self.q)]

    # towers
    def embedding(self, sub: "FiniteField") -> np.ndarray:
        """Array mapping sub's integer encoding to this field's encoding.

        The generator of ``sub`` goes to the smallest root of ``sub.modulus`` in
        this field; the image is checked against the Frobenius-fixed set.
        """
        key = (sub.p, sub.k, sub.modulus)
        if key in self._embeddings:
            return self._embeddings[key][0]
        if sub.p != self.p or self.k % sub.k:
            raise ValueError(f"{sub!r} is not a subfield of {self!r}")
        if sub.k == self.k and sub.modulus == self.modulus:
            table = np.arange(self.q, dtype=np.int64)
        else:
            root = None
            for a in range(self.q):
                acc = 0
                for c in reversed(sub.modulus):
                    acc = self.add(self.mul(acc, a), c % self.p)
                if acc == 0:
                    root = a
                    break
            powers = [1]
            for _ in range(sub.k - 1):
                powers.append(self.mul(powers[-1], root))
            table = np.zeros(sub.q, dtype=np.int64)
            for s in range(sub.q):
                acc = 0
                for c, pw in zip(sub.to_coeffs(s), powers):
                    if c:
                        acc = self.add(acc, self.smul(c, pw))
                table[s] = acc
        fixed = {a for a in range(self.q) if self.frob_int(a, sub.k) == a}
        if set(table.tolist()) != fixed or len(fixed) != sub.q:
            raise ArithmeticError("embedding image is not the fixed field")
        inverse = {int(v): s for s, v in enumerate(table)}
        self._embeddings[key] = (table, inverse)
        return table

    def embed_from(self, x: "FieldElement") -> "FieldElement":
        return FieldElement(self, int(self.embedding(x.parent)[x.value]))

    def restrict_to(self, a: int, sub: "FiniteField") -> int:
        """Inverse of the embedding; raises if ``a`` is not in the image."""
        self.embedding(sub)
        inverse = self._embeddings[(sub.p, sub.k, sub.modulus)][1]
        if a not in inverse:
            raise ValueError("element does not lie in the subfield")
        return inverse[a]

    def rel_trace_int(self, a: int, sub: "FiniteField") -> int:
        self.embedding(sub)
        acc, cur = 0, a
        for _ in range(self.k // sub.k):
            acc = self.add(acc, cur)
            cur = self.frob_int(cur, sub.k)
        return self.restrict_to(acc, sub)

    def rel_norm_int(self, a: int, sub: "FiniteField") -> int:
        self.embedding(sub)
        acc, cur = 1, a
        for _ in range(self.k // sub.k):
            acc = self.mul(acc, cur)
            cur = self.frob_int(cur, sub.k)
        return self.restrict_to(acc, sub)


class FieldElement:
    """Immutable element of a FiniteField."""

    __slots__ = ("parent", "value")

    def __init__(self, parent: FiniteField, value: int):
        self.parent = parent
        self.value = int(value)

    @property
    def coeffs(self) -> list[int]:
        return self.parent.to_coeffs(self.value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise ValueError("mismatched fields")
            return other.value
        if isinstance(other, int):
            return self.parent.from_coeffs([other])
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.parent, self.parent.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.parent, self.parent.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.parent, self.parent.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.parent, self.parent.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.parent, self.parent.mul(self.value, self.parent.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.parent, self.parent.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.parent, self.parent.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.parent.from_coeffs([other])
        return isinstance(other, FieldElement) and other.parent == self.parent and other.value == self.value

    def __hash__(self):
        return hash((self.parent, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"F{self.parent.q}({self.coeffs})"

    def frobenius(self):
        return frobenius(self)


def make_field(p: int, k: int, bound: int | None = None) -> FiniteField:
    """F_{p^k} with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be at least 1")
    bound = field_bound() if bound is None else bound
    if p**k > bound:
        raise ValueError(f"p^k = {p**k} exceeds the enumeration bound {bound}")
    return _cached_field(p, k)


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int) -> FiniteField:
    return FiniteField(p, k)


def frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p."""
    return FieldElement(x.parent, x.parent.frob_int(x.value))


def rel_trace(x: FieldElement, sub: FiniteField) -> FieldElement:
    return FieldElement(sub, x.parent.rel_trace_int(x.value, sub))


def rel_norm(x: FieldElement, sub: FiniteField) -> FieldElement:
    return FieldElement(sub, x.parent.rel_norm_int(x.value, sub))


def absolute_trace(x: FieldElement) -> int:
    """Tr_{F/F_p}(x) as an integer in [0, p)."""
    return rel_trace(x, make_field(x.parent.p, 1, bound=x.parent.p)).value
