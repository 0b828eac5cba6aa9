"""Truncated Witt vectors W_n(F_q), realised as the Galois ring GR(p^n, k).

The ring is (Z/p^n)[X]/(g) where g is the minimal polynomial of the
Teichmuller lift of the field generator, so g = f mod p and the class xi of X
satisfies xi^q = xi.  Frobenius is then xi -> xi^p on the power basis.

Elements are integers sum_i a_i N^i with N = p^n and a_i the coordinates on
1, xi, ..., xi^(k-1).  Witt coordinates are available as a second view and are
cross-checked against universal Witt polynomials in the tests.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from .ff import FieldElement, FiniteField, make_field

DEFAULT_RING_BOUND = 1 << 16


def ring_bound() -> int:
    env = os.environ.get("WITTGAUSS_BOUND")
    return int(env) if env else DEFAULT_RING_BOUND


def _polymulmod(a, b, red, mod):
    k = len(a)
    conv = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                conv[i + j] += x * y
    out = conv[:k]
    for j in range(k, 2 * k - 1):
        c = conv[j]
        if c:
            row = red[j]
            for i in range(k):
                out[i] += c * row[i]
    return [x % mod for x in out]


def _reduction_rows(g, k, mod):
    # rows of X^j mod g for j < 2k-1
    rows = []
    cur = [0] * k
    cur[0] = 1
    for _ in range(2 * k - 1):
        rows.append(list(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(k):
                cur[i] = (cur[i] - top * g[i]) % mod
    return rows


def _teichmuller_modulus(f, p, k, n):
    """Monic lift g of f over Z/p^n with g | X^q - X."""
    mod = p**n
    q = p**k
    if k == 1:
        # root of X^q - X lifting the root of f
        a = (-f[0]) % p
        t = a
        for _ in range(n):
            t = pow(t, q, mod)
        return ((-t) % mod, 1)
    red = _reduction_rows(list(f) + [], k, mod)
    # t = class of X in (Z/p^n)[X]/(f); iterate t -> t^q
    t = [0] * k
    t[1] = 1

    def powq(v):
        result = [1] + [0] * (k - 1)
        base, e = v, q
        while e:
            if e & 1:
                result = _polymulmod(result, base, red, mod)
            e >>= 1
            if e:
                base = _polymulmod(base, base, red, mod)
        return result

    for _ in range(n):
        t = powq(t)
    conj = [t]
    for _ in range(k - 1):
        nxt = [1] + [0] * (k - 1)
        base, e = conj[-1], p
        while e:
            if e & 1:
                nxt = _polymulmod(nxt, base, red, mod)
            e >>= 1
            if e:
                base = _polymulmod(base, base, red, mod)
        conj.append(nxt)
    # prod (Y - c) with coefficients in the ring; they must be constants
    poly = [[1] + [0] * (k - 1)]
    for c in conj:
        neg_c = [(-x) % mod for x in c]
        new = [[0] * k for _ in range(len(poly) + 1)]
        for i, coef in enumerate(poly):
            new[i + 1] = [(x + y) % mod for x, y in zip(new[i + 1], coef)]
            prod = _polymulmod(coef, neg_c, red, mod)
            new[i] = [(x + y) % mod for x, y in zip(new[i], prod)]
        poly = new
    out = []
    for coef in poly:
        if any(coef[1:]):
            raise ArithmeticError("Teichmuller minimal polynomial is not over Z/p^n")
        out.append(coef[0])
    if [c % p for c in out] != list(f):
        raise ArithmeticError("lifted modulus does not reduce to the field modulus")
    return tuple(out)


class WittRing:
    """W_n(F) for F = F_{p^k}, as the Galois ring (Z/p^n)[xi]/(g)."""

    def __init__(self, base: FiniteField, n: int, bound: int | None = None):
        if n < 1:
            raise ValueError("truncation length must be at least 1")
        bound = ring_bound() if bound is None else bound
        if base.q**n > bound:
            raise ValueError(f"|W_{n}(F_{base.q})| = {base.q**n} exceeds the bound {bound}")
        self.base = base
        self.p, self.k, self.q, self.n = base.p, base.k, base.q, n
        self.N = self.p**n
        self.size = self.q**n
        self.unit_count = self.q ** (n - 1) * (self.q - 1)
        self.gr_modulus = _teichmuller_modulus(base.modulus, self.p, self.k, n)
        self._red = _reduction_rows(self.gr_modulus, self.k, self.N)
        self._red_np = np.array(self._red, dtype=np.int64)
        self._weights = [self.N**i for i in range(self.k)]
        self._weights_np = np.array(self._weights, dtype=np.int64)
        self._frob = self._frobenius_matrix()
        self._trace_vec = self._compute_trace_vector()
        self._cache: dict = {}

    def __repr__(self):
        return f"WittRing(W_{self.n}(F_{self.q}))"

    def __eq__(self, other):
        return isinstance(other, WittRing) and (self.base, self.n) == (other.base, other.n)

    def __hash__(self):
        return hash((self.base, self.n))

    def __reduce__(self):
        return (witt_ring, (self.base, self.n, self.size))

    # encoding
    def digits(self, a: int) -> list[int]:
        return [(a // w) % self.N for w in self._weights]

    def encode(self, digits) -> int:
        return sum((int(d) % self.N) * w for d, w in zip(digits, self._weights))

    def encode_array(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits) % self.N) @ self._weights_np

    def digit_array(self, elems) -> np.ndarray:
        elems = np.asarray(elems, dtype=np.int64)
        return (elems[..., None] // self._weights_np) % self.N

    def all_digits(self) -> np.ndarray:
        if "all_digits" not in self._cache:
            self._cache["all_digits"] = self.digit_array(np.arange(self.size))
        return self._cache["all_digits"]

    # scalar arithmetic on integer encodings
    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def sub(self, a: int, b: int) -> int:
        return self.encode([x - y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.encode([-x for x in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        return self.encode(_polymulmod(self.digits(a), self.digits(b), self._red, self.N))

    def scalar(self, c: int) -> int:
        """Image of c under Z/p^n = W_n(F_p) -> W_n(F)."""
        return c % self.N

    def smul(self, c: int, a: int) -> int:
        return self.encode([c * x for x in self.digits(a)])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def is_unit(self, a: int) -> bool:
        return any(d % self.p for d in self.digits(a))

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit")
        return self.pow(a, self.unit_count - 1)

    def valuation(self, a: int) -> int:
        """Largest v <= n with a in p^v W_n."""
        ds = self.digits(a)
        v = 0
        while v < self.n and all(d % self.p ** (v + 1) == 0 for d in ds):
            v += 1
        return v

    def divide_by_p_power(self, a: int, j: int) -> list[int]:
        """Digits of a / p^j, meaningful modulo p^(n-j)."""
        ds = self.digits(a)
        if any(d % self.p**j for d in ds):
            raise ArithmeticError("not divisible")
        return [d // self.p**j for d in ds]

    # vectorised arithmetic on digit arrays
    def mul_digit_arrays(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        k = self.k
        shape = np.broadcast_shapes(A.shape, B.shape)
        conv = np.zeros(shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[..., i + j] += A[..., i] * B[..., j]
        conv %= self.N
        return (conv @ self._red_np) % self.N

    def mul_arrays(self, a, b) -> np.ndarray:
        return self.encode_array(self.mul_digit_arrays(self.digit_array(a), self.digit_array(b)))

    # Frobenius, trace
    def _frobenius_matrix(self) -> np.ndarray:
        # row i = coordinates of xi^(i p)
        xi = self.encode([0, 1] + [0] * (self.k - 2)) if self.k > 1 else self.gen_int()
        rows = []
        for i in range(self.k):
            rows.append(self.digits(self.pow(xi, i * self.p)))
        return np.array(rows, dtype=np.int64)

    def gen_int(self) -> int:
        """xi, the Teichmuller lift of the field generator."""
        if self.k == 1:
            return (-self.gr_modulus[0]) % self.N
        return self.encode([0, 1] + [0] * (self.k - 2))

    def frobenius(self, a: int, times: int = 1) -> int:
        ds = np.array(self.digits(a), dtype=np.int64)
        for _ in range(times % self.k if self.k > 1 else 0):
            ds = (ds @ self._frob) % self.N
        return self.encode(ds)

    def frobenius_digit_array(self, A: np.ndarray, times: int = 1) -> np.ndarray:
        for _ in range(times % self.k if self.k > 1 else 0):
            A = (A @ self._frob) % self.N
        return A

    def _compute_trace_vector(self) -> np.ndarray:
        vec = []
        for i in range(self.k):
            x = self.encode([int(j == i) for j in range(self.k)])
            acc = 0
            for _ in range(self.k):
                acc = self.add(acc, x)
                x = self.frobenius(x)
            ds = self.digits(acc)
            if any(ds[1:]):
                raise ArithmeticError("absolute trace left Z/p^n")
            vec.append(ds[0])
        return np.array(vec, dtype=np.int64)

    def trace_to_zp(self, a: int) -> int:
        """Tr_{F/F_p}(a) in W_n(F_p) = Z/p^n."""
        return int(np.dot(self.digits(a), self._trace_vec) % self.N)

    def trace_array(self, A: np.ndarray) -> np.ndarray:
        return (A @ self._trace_vec) % self.N

    @property
    def trace_vector(self) -> np.ndarray:
        return self._trace_vec

    # Teichmuller lift and reduction
    def reduce(self, a: int) -> int:
        """pr^n_1 as an integer encoding of the base field."""
        return self.base.from_coeffs([d % self.p for d in self.digits(a)])

    def naive_lift(self, x: int) -> int:
        return self.encode(self.base.to_coeffs(x))

    def teichmuller_int(self, x: int) -> int:
        table = self.teichmuller_table()
        return int(table[x])

    def teichmuller_table(self) -> np.ndarray:
        """Array: field encoding -> ring encoding of the Teichmuller lift."""
        if "teich" not in self._cache:
            F = self.base
            table = np.zeros(F.q, dtype=np.int64)
            y = self.naive_lift(F.primitive)
            for _ in range(self.n):
                y = self.pow(y, self.q)
            cur = 1
            for i in range(F.q - 1):
                table[int(F._exp[i])] = cur
                cur = self.mul(cur, y)
            if cur != 1:
                raise ArithmeticError("Teichmuller lift has the wrong order")
            self._cache["teich"] = table
        return self._cache["teich"]

    # projections and lifts
    def project_int(self, a: int, r: int) -> int:
        if not 1 <= r <= self.n:
            raise ValueError(f"target length {r} outside 1..{self.n}")
        target = witt_ring(self.base, r)
        return target.encode(self.digits(a))

    def smallest_subfield_degree(self, a: int) -> int:
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.frobenius(a, d) == a:
                return d
        return self.k

    def lift_from(self, z: int, lower: "WittRing") -> int:
        """The lift section W_m(F) -> W_n(F), m <= n.

        Least nonnegative residues are taken in the ring of the smallest
        subfield containing z, so lifts of subfield elements stay in the
        subfield.
        """
        if lower.base != self.base or lower.n > self.n:
            raise ValueError("incompatible rings")
        d = lower.smallest_subfield_degree(z)
        if d == self.k:
            return self.encode(lower.digits(z))
        sub_field = make_field(self.p, d, bound=self.base.q)
        sub_lower = witt_ring(sub_field, lower.n)
        z_sub = witt_embedding(sub_lower, lower).preimage(z)
        sub_self = witt_ring(sub_field, self.n)
        z_sub_lift = sub_self.encode(sub_lower.digits(z_sub))
        return witt_embedding(sub_self, self).image(z_sub_lift)

    # Witt-coordinate view
    def witt_coords_int(self, a: int) -> list[int]:
        """Witt coordinates (x_0, ..., x_{n-1}) as base-field encodings."""
        F = self.base
        table = self.teichmuller_table()
        ds = self.digits(a)
        coords = []
        for i in range(self.n):
            ai = F.from_coeffs([d % self.p for d in ds])
            coords.append(F.pow(ai, self.p**i))
            t = self.digits(int(table[ai]))
            diff = [(x - y) % self.N for x, y in zip(ds, t)]
            ds = [x // self.p for x in diff]
        return coords

    def from_witt_coords_int(self, coords) -> int:
        F = self.base
        table = self.teichmuller_table()
        acc = [0] * self.k
        for i, x in enumerate(coords):
            # a_i = x_i^(p^-i)
            ai = F.pow(int(x), self.p ** ((-i) % self.k) if self.k > 1 else 1)
            t = self.digits(int(table[ai]))
            acc = [u + self.p**i * v for u, v in zip(acc, t)]
        return self.encode(acc)

    # trace pairing
    def trace_gram(self, kappa: int = 1) -> list[list[int]]:
        """G_ij = Tr(kappa xi^i xi^j) in Z/p^n."""
        key = ("gram", kappa)
        if key not in self._cache:
            self._cache[key] = self._trace_gram(kappa)
        return [list(row) for row in self._cache[key]]

    def _trace_gram(self, kappa: int) -> list[list[int]]:
        basis = [self.encode([int(j == i) for j in range(self.k)]) for i in range(self.k)]
        return [
            [self.trace_to_zp(self.mul(kappa, self.mul(bi, bj))) for bj in basis]
            for bi in basis
        ]

    # element API
    def __call__(self, value) -> "WittElement":
        if isinstance(value, WittElement):
            return value
        if isinstance(value, (list, tuple)):
            return WittElement(self, self.encode(value))
        return WittElement(self, self.scalar(int(value)))

    def element(self, index: int) -> "WittElement":
        return WittElement(self, index)

    def elements(self):
        return [WittElement(self, a) for a in range(self.size)]

    def units_array(self) -> np.ndarray:
        if "units" not in self._cache:
            D = self.all_digits()
            mask = np.any(D % self.p != 0, axis=1)
            self._cache["units"] = np.nonzero(mask)[0]
        return self._cache["units"]


@lru_cache(maxsize=None)
def _ring(base: FiniteField, n: int) -> WittRing:
    return WittRing(base, n, bound=base.q**n)


def witt_ring(base: FiniteField, n: int, bound: int | None = None) -> WittRing:
    bound = ring_bound() if bound is None else bound
    if base.q**n > bound:
        raise ValueError(f"|W_{n}(F_{base.q})| = {base.q**n} exceeds the bound {bound}")
    return _ring(base, n)


class WittElement:
    """Immutable element of a WittRing."""

    __slots__ = ("parent", "value")

    def __init__(self, parent: WittRing, value: int):
        self.parent = parent
        self.value = int(value)

    @property
    def gr_coeffs(self) -> list[int]:
        return self.parent.digits(self.value)

    @property
    def witt_coords(self) -> list[FieldElement]:
        return [FieldElement(self.parent.base, c) for c in self.parent.witt_coords_int(self.value)]

    def _other(self, other):
        if isinstance(other, WittElement):
            if other.parent != self.parent:
                raise ValueError("mismatched Witt rings")
            return other.value
        if isinstance(other, int):
            return self.parent.scalar(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return WittElement(self.parent, self.parent.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return WittElement(self.parent, self.parent.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return WittElement(self.parent, self.parent.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return WittElement(self.parent, self.parent.mul(self.value, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return WittElement(self.parent, self.parent.pow(self.value, e))

    def inverse(self):
        return WittElement(self.parent, self.parent.inv(self.value))

    def is_unit(self) -> bool:
        return self.parent.is_unit(self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.parent.scalar(other)
        return isinstance(other, WittElement) and other.parent == self.parent and other.value == self.value

    def __hash__(self):
        return hash((self.parent, self.value))

    def __repr__(self):
        return f"W{self.parent.n}(F{self.parent.q})({self.gr_coeffs})"


# module-level operations


def add(x: WittElement, y: WittElement) -> WittElement:
    return x + y


def mul(x: WittElement, y: WittElement) -> WittElement:
    return x * y


def teichmuller(delta: FieldElement, n: int) -> WittElement:
    ring = witt_ring(delta.parent, n)
    return WittElement(ring, ring.teichmuller_int(delta.value))


def project(x: WittElement, r: int) -> WittElement:
    ring = x.parent
    return WittElement(witt_ring(ring.base, r), ring.project_int(x.value, r))


def lift(z: WittElement, n: int) -> WittElement:
    """The LiftSection W_m(F) -> W_n(F)."""
    target = witt_ring(z.parent.base, n)
    return WittElement(target, target.lift_from(z.value, z.parent))


def unit_decompose(u: WittElement, r: int):
    """u = lift(z) * (1 + p^(n-r) lift(w)) with z = pr_{n-r}(u) and w in W_r."""
    ring = u.parent
    n = ring.n
    if not 1 <= r <= n - 1:
        raise ValueError(f"split level {r} outside 1..{n - 1}")
    if not u.is_unit():
        raise ValueError("not a unit")
    z = project(u, n - r)
    z_lift = lift(z, n)
    t = ring.sub(ring.mul(ring.inv(z_lift.value), u.value), 1)
    w_digits = ring.divide_by_p_power(t, n - r)
    low = witt_ring(ring.base, r)
    return z, WittElement(low, low.encode(w_digits))


def recompose(z: WittElement, w: WittElement, n: int) -> WittElement:
    ring = witt_ring(z.parent.base, n)
    z_lift = lift(z, n).value
    w_lift = ring.encode(w.gr_coeffs)
    r = w.parent.n
    return WittElement(ring, ring.mul(z_lift, ring.add(1, ring.smul(ring.p ** (n - r), w_lift))))


class WittEmbedding:
    """W_n(F_sub) -> W_n(F_ext), xi_sub -> Teichmuller lift of the field image."""

    def __init__(self, sub: WittRing, ext: WittRing):
        if sub.n != ext.n:
            raise ValueError("truncation lengths differ")
        if sub.p != ext.p or ext.k % sub.k:
            raise ValueError(f"{sub!r} does not embed in {ext!r}")
        self.sub, self.ext = sub, ext
        self.degree = ext.k // sub.k
        field_table = ext.base.embedding(sub.base)
        alpha = sub.base.gen().value if sub.k > 1 else None
        if sub.k == 1:
            basis_images = [1]
        else:
            xi_img = ext.teichmuller_int(int(field_table[alpha]))
            basis_images = [1]
            for _ in range(sub.k - 1):
                basis_images.append(ext.mul(basis_images[-1], xi_img))
        self._basis = np.array([ext.digits(b) for b in basis_images], dtype=np.int64)
        img_digits = (sub.all_digits() @ self._basis) % ext.N
        self.table = ext.encode_array(img_digits)
        self._inverse = np.full(ext.size, -1, dtype=np.int64)
        self._inverse[self.table] = np.arange(sub.size)
        if len(set(self.table.tolist())) != sub.size:
            raise ArithmeticError("embedding is not injective")

    def image(self, a: int) -> int:
        return int(self.table[a])

    def preimage(self, b: int) -> int:
        s = int(self._inverse[b])
        if s < 0:
            raise ValueError("element is not in the image of the subring")
        return s

    def preimage_array(self, B: np.ndarray) -> np.ndarray:
        out = self._inverse[B]
        if np.any(out < 0):
            raise ValueError("element is not in the image of the subring")
        return out


@lru_cache(maxsize=None)
def witt_embedding(sub: WittRing, ext: WittRing) -> WittEmbedding:
    return WittEmbedding(sub, ext)


def norm_digit_array(ext: WittRing, sub: WittRing, A: np.ndarray) -> np.ndarray:
    """Product of the [ext:sub] conjugates under sigma = phi^(k_sub), as digits."""
    s = ext.k // sub.k
    acc = A
    cur = A
    for _ in range(s - 1):
        cur = ext.frobenius_digit_array(cur, sub.k)
        acc = ext.mul_digit_arrays(acc, cur)
    return acc


def trace_digit_array(ext: WittRing, sub: WittRing, A: np.ndarray) -> np.ndarray:
    s = ext.k // sub.k
    acc = A.copy()
    cur = A
    for _ in range(s - 1):
        cur = ext.frobenius_digit_array(cur, sub.k)
        acc = (acc + cur) % ext.N
    return acc


def norm_array(ext: WittRing, sub: WittRing, elems) -> np.ndarray:
    """Nr_{ext/sub} of an array of ext encodings, as sub encodings."""
    emb = witt_embedding(sub, ext)
    D = norm_digit_array(ext, sub, ext.digit_array(elems))
    return emb.preimage_array(ext.encode_array(D))


def trace_array(ext: WittRing, sub: WittRing, elems) -> np.ndarray:
    emb = witt_embedding(sub, ext)
    D = trace_digit_array(ext, sub, ext.digit_array(elems))
    return emb.preimage_array(ext.encode_array(D))


def witt_norm(x: WittElement, sub: WittRing) -> WittElement:
    return WittElement(sub, int(norm_array(x.parent, sub, [x.value])[0]))


def witt_trace(x: WittElement, sub: WittRing) -> WittElement:
    return WittElement(sub, int(trace_array(x.parent, sub, [x.value])[0]))


def embed_element(x: WittElement, ext: WittRing) -> WittElement:
    return WittElement(ext, witt_embedding(x.parent, ext).image(x.value))


def trace_gram_det_unit(ring: WittRing, r: int | None = None) -> bool:
    """Whether the trace Gram matrix on W_r is invertible mod p^r (det prime to p)."""
    r = ring.n if r is None else r
    low = ring if r == ring.n else witt_ring(ring.base, r, bound=max(ring_bound(), ring.size))
    gram = low.trace_gram()
    det = _det_mod(gram, low.N)
    return det % ring.p != 0


def _det_mod(mat, mod):
    from sympy import Matrix

    return int(Matrix(mat).det()) % mod


# universal Witt polynomials (verification view)


@lru_cache(maxsize=None)
def witt_polynomials(p: int, n: int):
    """Universal sum and product polynomials S_0..S_{n-1}, P_0..P_{n-1} over F_p.

    Returned as lists of {exponent tuple (X_0..X_{n-1}, Y_0..Y_{n-1}): coeff mod p}.
    """
    from sympy import QQ
    from sympy.polys.rings import ring as poly_ring

    names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    R, *gens = poly_ring(",".join(names), QQ)
    X, Y = gens[:n], gens[n:]

    def ghost(vs, m):
        return sum((p**i * vs[i] ** (p ** (m - i)) for i in range(m + 1)), R.zero)

    out = {}
    for kind in ("add", "mul"):
        polys = []
        for m in range(n):
            if kind == "add":
                target = ghost(X, m) + ghost(Y, m)
            else:
                target = ghost(X, m) * ghost(Y, m)
            rest = sum((p**i * polys[i] ** (p ** (m - i)) for i in range(m)), R.zero)
            polys.append((target - rest) * QQ(1, p**m))
        terms = []
        for poly in polys:
            d = {}
            for monom, coeff in poly.terms():
                if coeff.denominator != 1:
                    raise ArithmeticError("Witt polynomial with non-integral coefficient")
                c = int(coeff.numerator) % p
                if c:
                    d[monom] = c
            terms.append(d)
        out[kind] = terms
    return out["add"], out["mul"]


def eval_witt_polynomials(F: FiniteField, polys, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Evaluate polynomials over F on columns xs (M, n), ys (M, n) of field encodings."""
    n = xs.shape[1]
    cols = np.concatenate([xs, ys], axis=1)
    logs = F._log[cols]
    zero = cols == 0
    out = np.zeros((cols.shape[0], len(polys)), dtype=np.int64)
    for idx, poly in enumerate(polys):
        acc = np.zeros((cols.shape[0], F.k), dtype=np.int64)
        for monom, c in poly.items():
            e = np.array(monom, dtype=np.int64)
            used = e > 0
            if not used.any():
                val = np.ones(cols.shape[0], dtype=np.int64)
            else:
                lg = (logs[:, used] * e[used]).sum(axis=1) % (F.q - 1)
                val = F._exp[lg]
                val = np.where(zero[:, used].any(axis=1), 0, val)
            acc = (acc + c * F.digits[val]) % F.p
        out[:, idx] = acc @ F._weights
    return out
