"""Exact arithmetic in cyclotomic integer rings Z[zeta_m].

Elements are stored as integer coordinate vectors on the power basis
1, zeta, ..., zeta^(phi(m)-1), i.e. polynomials reduced modulo the m-th
cyclotomic polynomial.  Because the reduction is canonical, equality is
plain coefficient equality.

Heavy loops (histogram reduction, products) go through numpy ``int64`` when
a worst-case bound shows no overflow is possible, and fall back to Python
integers otherwise.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

_INT64_SAFE = 1 << 62
_FLOAT_EXACT = 1 << 52


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _int_array(vals) -> np.ndarray:
    """int64 when every entry fits comfortably, else an object array of Python ints."""
    if max(abs(v) for v in vals) < _INT64_SAFE:
        return np.array(vals, dtype=np.int64)
    return np.array(vals, dtype=object)


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result, n, d = m, m, 2
    while d * d <= n:
        if n % d == 0:
            while n % d == 0:
                n //= d
            result -= result // d
        d += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # low -> high coefficients, den monic
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            out[i - dq] = c
            for j, dc in enumerate(den):
                num[i - dq + j] -= c * dc
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class _Reducer:
    """Rows ``x^j mod Phi_m`` for every j that can show up before reduction."""

    def __init__(self, m: int):
        self.m = m
        self.phi = totient(m)
        phi_poly = cyclotomic_poly(m)
        nrows = max(m, 2 * self.phi - 1)
        rows = []
        cur = [0] * self.phi
        cur[0] = 1
        for _ in range(nrows):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(self.phi):
                    cur[i] -= top * phi_poly[i]
        self.rows = rows
        big = max((abs(v) for r in rows for v in r), default=1)
        self.table_obj = np.array(rows, dtype=object)
        self.table = np.array(rows, dtype=np.int64) if big < _INT64_SAFE else None
        if self.table is not None:
            self.table_f = self.table.astype(np.float64)
            # prefix_max[j] = largest |entry| among rows 0..j
            self.prefix_max = np.maximum.accumulate(np.abs(self.table).max(axis=1))
        else:
            self.table_f = None
            self.prefix_max = None

    def entry_bound(self, n: int) -> int | None:
        if self.prefix_max is None or n == 0:
            return None if self.prefix_max is None else 0
        return int(self.prefix_max[n - 1])

    def reduce_dense(self, vec) -> tuple[int, ...]:
        """Reduce a coefficient vector on 1, x, x^2, ..."""
        n = len(vec)
        if n == 0:
            return (0,) * self.phi
        if n > len(self.rows):
            # x^m = 1: fold onto exponents mod m first
            folded = [0] * self.m
            for j, c in enumerate(vec):
                folded[j % self.m] += int(c)
            vec, n = folded, self.m
        arr = np.asarray(vec)
        if arr.dtype != object:
            idx = np.flatnonzero(arr)
            if 2 * idx.size < n:
                return self.reduce_sparse(idx, arr[idx])
        bound = self.entry_bound(n)
        if arr.dtype != object and bound is not None:
            mass = int(np.abs(arr).sum()) * max(bound, 1)
            if mass < _FLOAT_EXACT:
                out = np.rint(arr.astype(np.float64) @ self.table_f[:n]).astype(np.int64)
                return tuple(out.tolist())
            if mass < _INT64_SAFE:
                return tuple((arr.astype(np.int64) @ self.table[:n]).tolist())
        out = np.asarray([int(v) for v in vec], dtype=object) @ self.table_obj[:n]
        return tuple(int(v) for v in out)

    def reduce_sparse(self, idx, vals) -> tuple[int, ...]:
        """Reduce sum_t vals[t] x^idx[t] (idx < number of rows) using only the rows hit."""
        idx = np.asarray(idx, dtype=np.int64)
        if idx.size == 0:
            return (0,) * self.phi
        vals = np.asarray(vals)
        bound = self.entry_bound(int(idx.max()) + 1)
        if vals.dtype != object and bound is not None:
            mass = int(np.abs(vals).sum()) * max(bound, 1)
            if mass < _FLOAT_EXACT:
                out = np.rint(vals.astype(np.float64) @ self.table_f[idx]).astype(np.int64)
                return tuple(out.tolist())
            if mass < _INT64_SAFE:
                return tuple((vals.astype(np.int64) @ self.table[idx]).tolist())
        out = np.asarray([int(v) for v in vals], dtype=object) @ self.table_obj[idx.tolist()]
        return tuple(int(v) for v in out)


@lru_cache(maxsize=None)
def reducer(m: int) -> _Reducer:
    return _Reducer(m)


class CyclotomicInt:
    """An element of Z[zeta_m] in canonical reduced form."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs):
        if m < 1:
            raise ValueError("m must be positive")
        coeffs = tuple(int(c) for c in coeffs)
        phi = totient(m)
        if len(coeffs) != phi:
            coeffs = reducer(m).reduce_dense(list(coeffs)) if len(coeffs) > phi else (
                coeffs + (0,) * (phi - len(coeffs))
            )
        self.m = m
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _raw(cls, m: int, coeffs: tuple) -> "CyclotomicInt":
        """Wrap an already reduced tuple of Python ints of length phi(m)."""
        obj = object.__new__(cls)
        obj.m = m
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def zero(cls, m: int) -> "CyclotomicInt":
        return cls(m, (0,) * totient(m))

    @classmethod
    def integer(cls, c: int, m: int = 1) -> "CyclotomicInt":
        v = [0] * totient(m)
        v[0] = int(c)
        return cls(m, v)

    @classmethod
    def one(cls, m: int = 1) -> "CyclotomicInt":
        return cls.integer(1, m)

    @classmethod
    def zeta(cls, m: int, e: int = 1) -> "CyclotomicInt":
        """zeta_m ** e."""
        return cls._raw(m, reducer(m).rows[e % m])

    @classmethod
    def from_exponent_counts(cls, m: int, counts) -> "CyclotomicInt":
        """Sum_j counts[j] * zeta_m^j, with ``len(counts) <= m``."""
        return cls._raw(m, reducer(m).reduce_dense(counts))

    # helpers
    @property
    def phi(self) -> int:
        return len(self.coeffs)

    def _lift_pair(self, other):
        if isinstance(other, int):
            return self, CyclotomicInt.integer(other, self.m)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented, NotImplemented
        if other.m == self.m:
            return self, other
        m = lcm(self.m, other.m)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._lift_pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CyclotomicInt._raw(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt._raw(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._lift_pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CyclotomicInt._raw(a.m, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt._raw(self.m, tuple(other * x for x in self.coeffs))
        a, b = self._lift_pair(other)
        if a is NotImplemented:
            return NotImplemented
        red = reducer(a.m)
        ma = max(a.coeffs, key=abs)
        mb = max(b.coeffs, key=abs)
        if ma == 0 or mb == 0:
            return CyclotomicInt.zero(a.m)
        if abs(ma * mb) * a.phi < _INT64_SAFE:
            conv = np.convolve(
                np.array(a.coeffs, dtype=np.int64), np.array(b.coeffs, dtype=np.int64)
            )
        else:
            conv = np.convolve(
                np.array(a.coeffs, dtype=object), np.array(b.coeffs, dtype=object)
            )
        return CyclotomicInt._raw(a.m, red.reduce_dense(conv))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta_m]")
        result = CyclotomicInt.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.integer(other, self.m)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.m != self.m:
            m = lcm(self.m, other.m)
            return self.embed(m).coeffs == other.embed(m).coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        # the averaged trace is unchanged by embedding, so equal values
        # written over different conductors hash alike
        if self._hash is None:
            self._hash = hash(self.mean_trace())
        return self._hash

    def mean_trace(self) -> Fraction:
        """Tr_{Q(zeta_m)/Q}(self) / phi(m), invariant under ``embed``."""
        total = Fraction(0)
        for j, c in enumerate(self.coeffs):
            if c:
                d = self.m // gcd(j, self.m)
                total += Fraction(c * _mobius(d), totient(d))
        return total

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = [
            f"{c}*z{self.m}^{j}" if j else str(c)
            for j, c in enumerate(self.coeffs)
            if c
        ]
        return f"CyclotomicInt({' + '.join(terms) or '0'})"

    # ring maps
    def embed(self, m: int) -> "CyclotomicInt":
        """Image under Z[zeta_self.m] -> Z[zeta_m], zeta -> zeta_m^(m/self.m)."""
        if m % self.m:
            raise ValueError(f"{self.m} does not divide {m}")
        if m == self.m:
            return self
        step = m // self.m
        nz = [(j * step, c) for j, c in enumerate(self.coeffs) if c]
        if not nz:
            return CyclotomicInt.zero(m)
        idx, vals = zip(*nz)
        return CyclotomicInt._raw(m, reducer(m).reduce_sparse(idx, _int_array(vals)))

    def galois_conj(self, a: int) -> "CyclotomicInt":
        """Apply the automorphism zeta -> zeta^a (a coprime to m)."""
        if gcd(a, self.m) != 1:
            raise ValueError(f"{a} is not coprime to {self.m}")
        nz = [((a * j) % self.m, c) for j, c in enumerate(self.coeffs) if c]
        if not nz:
            return self
        idx, vals = zip(*nz)
        return CyclotomicInt._raw(self.m, reducer(self.m).reduce_sparse(idx, _int_array(vals)))

    def conj(self) -> "CyclotomicInt":
        return self.galois_conj(-1)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def divexact(self, d: int) -> "CyclotomicInt":
        if d == 0:
            raise ZeroDivisionError
        if any(c % d for c in self.coeffs):
            raise ArithmeticError(f"{self!r} not divisible by {d}")
        return CyclotomicInt._raw(self.m, tuple(c // d for c in self.coeffs))

    def to_complex(self) -> complex:
        """Numerical value at zeta = exp(2 pi i / m).  Approximate; display only."""
        z = cmath.exp(2j * cmath.pi / self.m)
        return complex(sum(c * z**j for j, c in enumerate(self.coeffs)))

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicInt":
        return cls(int(obj["m"]), [int(c) for c in obj["coeffs"]])


def embed(x: CyclotomicInt, m: int) -> CyclotomicInt:
    return x.embed(m)


def galois_conj(x: CyclotomicInt, a: int) -> CyclotomicInt:
    return x.galois_conj(a)


def to_complex(x: CyclotomicInt) -> complex:
    return x.to_complex()


@dataclass(frozen=True)
class ScaledCyclotomic:
    """``scale * value`` with an exact rational scale, kept in lowest terms.

    Used for quantities such as q^(-e) * (Gauss sum) that leave Z[zeta_m].
    """

    scale: Fraction
    value: CyclotomicInt

    @classmethod
    def of(cls, scale, value: CyclotomicInt) -> "ScaledCyclotomic":
        scale = Fraction(scale)
        g = 0
        for c in value.coeffs:
            g = gcd(g, c)
        if g == 0 or scale == 0:
            return cls(Fraction(0), CyclotomicInt.zero(value.m))
        if value.coeffs[next(i for i, c in enumerate(value.coeffs) if c)] < 0:
            g = -g
        return cls(scale * g, value.divexact(g))

    def __mul__(self, other: "ScaledCyclotomic") -> "ScaledCyclotomic":
        return ScaledCyclotomic.of(self.scale * other.scale, self.value * other.value)

    def __add__(self, other: "ScaledCyclotomic") -> "ScaledCyclotomic":
        den = lcm(self.scale.denominator, other.scale.denominator)
        a = self.value * int(self.scale * den)
        b = other.value * int(other.scale * den)
        return ScaledCyclotomic.of(Fraction(1, den), a + b)

    def same_as(self, other: "ScaledCyclotomic") -> bool:
        m = lcm(self.value.m, other.value.m)
        a = ScaledCyclotomic.of(self.scale, self.value.embed(m))
        b = ScaledCyclotomic.of(other.scale, other.value.embed(m))
        return a.scale == b.scale and a.value == b.value

    def __eq__(self, other):
        if not isinstance(other, ScaledCyclotomic):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.scale, self.value))

    def to_complex(self) -> complex:
        return float(self.scale) * self.value.to_complex()

    def to_json(self) -> dict:
        return {
            "scale": [self.scale.numerator, self.scale.denominator],
            "value": self.value.to_json(),
        }



def reduce_histograms(m: int, hist: np.ndarray) -> list[CyclotomicInt]:
    """Rows of ``hist`` (b x L, L <= m) read as sum_j h_j zeta_m^j, reduced exactly.

    Uses a float64 product when a bound shows every partial sum is an exactly
    representable integer, else falls back to Python integers.
    """
    red = reducer(m)
    hist = np.asarray(hist)
    if hist.ndim != 2 or hist.shape[1] > len(red.rows):
        raise ValueError("histogram shape does not fit Z[zeta_m]")
    L = hist.shape[1]
    if hist.size == 0:
        return [CyclotomicInt.zero(m) for _ in range(hist.shape[0])]
    if 2 * np.count_nonzero(hist) < hist.size:
        # mostly empty (e.g. short character sums): only touch the rows hit
        return [CyclotomicInt._raw(m, red.reduce_dense(row)) for row in hist]
    row_mass = int(np.abs(hist).sum(axis=1).max())
    max_entry = red.entry_bound(L)
    if max_entry is not None and row_mass * max(max_entry, 1) < _FLOAT_EXACT:
        out = np.rint(hist.astype(np.float64) @ red.table_f[:L]).astype(np.int64)
        return [CyclotomicInt._raw(m, tuple(row)) for row in out.tolist()]
    return [CyclotomicInt._raw(m, red.reduce_dense(row)) for row in hist.tolist()]
