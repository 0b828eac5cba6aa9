"""Additive and multiplicative characters of W_n(F_q).

Multiplicative characters are exponent vectors against a cyclic decomposition
of W_n(F_q)^x; evaluation is a table lookup of discrete logs.  Values are
returned as exponents of a root of unity, or as CyclotomicInt.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

import numpy as np

from .abelian import decompose
from .cyclo import CyclotomicInt, lcm
from .ff import make_field
from .witt import WittElement, WittRing, norm_array, witt_embedding, witt_ring

CHAR_BOUND = 1 << 16


class UnitGroup:
    """W_n(F_q)^x with a cyclic decomposition and a dlog table over all ring elements."""

    def __init__(self, ring: WittRing):
        self.ring = ring
        p, k, n = ring.p, ring.k, ring.n
        teich_gen = ring.teichmuller_int(ring.base.primitive)
        gens = [teich_gen]
        for j in range(1, n):
            for i in range(k):
                basis = ring.encode([int(t == i) for t in range(k)])
                gens.append(ring.add(1, ring.smul(p**j, basis)))
        dec = decompose(gens, ring.mul, 1)
        if dec.order != ring.unit_count:
            raise ArithmeticError("unit group generators do not generate")
        self.gens = dec.gens
        self.orders = dec.orders
        self.exponent = 1
        for d in self.orders:
            self.exponent = lcm(self.exponent, d)
        dlog = np.full((ring.size, len(self.orders)), -1, dtype=np.int64)
        for x, e in dec.table.items():
            dlog[x] = e
        self.dlog = dlog
        self.unit_mask = dlog[:, 0] >= 0 if self.orders else np.zeros(ring.size, bool)
        if not self.orders:
            # the trivial group W_1(F_2)^x
            self.unit_mask = np.zeros(ring.size, dtype=bool)
            self.unit_mask[1] = True
        # scaled dlog: exponent of zeta_E contributed by generator i
        self.scale = np.array([self.exponent // d for d in self.orders], dtype=np.int64)
        self._filtration: dict[int, list[int]] = {}

    @property
    def order(self) -> int:
        return self.ring.unit_count

    def filtration_generators(self, m: int) -> list[int]:
        """Generators of 1 + p^m W_n (m = 0 gives the whole unit group)."""
        if m not in self._filtration:
            self._filtration[m] = self._filtration_generators(m)
        return self._filtration[m]

    def _filtration_generators(self, m: int) -> list[int]:
        ring = self.ring
        if m == 0:
            return list(self.gens)
        out = []
        for j in range(m, ring.n):
            for i in range(ring.k):
                basis = ring.encode([int(t == i) for t in range(ring.k)])
                out.append(ring.add(1, ring.smul(ring.p**j, basis)))
        return out


@lru_cache(maxsize=None)
def unit_group(ring: WittRing) -> UnitGroup:
    return UnitGroup(ring)


class MultChar:
    """chi(g_i) = zeta_{d_i}^{c_i} on the cyclic generators of the unit group."""

    __slots__ = ("group", "exps", "_order", "_conductor")

    def __init__(self, group: UnitGroup, exps):
        self.group = group
        self.exps = tuple(int(c) % d for c, d in zip(exps, group.orders))
        if len(self.exps) != len(group.orders):
            raise ValueError("wrong number of exponents")
        self._order = None
        self._conductor = None

    @property
    def ring(self) -> WittRing:
        return self.group.ring

    @property
    def order(self) -> int:
        if self._order is None:
            o = 1
            for c, d in zip(self.exps, self.group.orders):
                o = lcm(o, d // gcd(c, d))
            self._order = o
        return self._order

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def exponent_of(self, x: int) -> int | None:
        """a with chi(x) = zeta_E^a (E the group exponent), or None off the units."""
        row = self.group.dlog[x]
        if row.size and row[0] < 0:
            return None
        if not row.size:
            return 0 if x == 1 else None
        E = self.group.exponent
        return int(sum(int(l) * c * int(s) for l, c, s in zip(row, self.exps, self.group.scale)) % E)

    def exponent_array(self, elems) -> np.ndarray:
        """Exponents mod E for an array of ring elements (-1 off the units)."""
        elems = np.asarray(elems, dtype=np.int64)
        rows = self.group.dlog[elems]
        E = self.group.exponent
        coef = np.array(self.exps, dtype=np.int64) * self.group.scale
        out = (rows @ coef) % E if rows.shape[-1] else np.zeros(elems.shape, dtype=np.int64)
        return np.where(self.group.unit_mask[elems], out, -1)

    def value(self, x, m: int | None = None) -> CyclotomicInt:
        """chi(x) in Z[zeta_m] (default m = order of chi); 0 on non-units."""
        if isinstance(x, WittElement):
            x = x.value
        m = self.order if m is None else m
        if m % self.order:
            raise ValueError("m must be a multiple of the character order")
        a = self.exponent_of(x)
        if a is None:
            return CyclotomicInt.zero(m)
        E = self.group.exponent
        return CyclotomicInt.zeta(m, a * m // E)

    def __call__(self, x) -> CyclotomicInt:
        return self.value(x)

    def __mul__(self, other: "MultChar") -> "MultChar":
        if other.group is not self.group:
            raise ValueError("characters of different groups")
        return MultChar(self.group, [a + b for a, b in zip(self.exps, other.exps)])

    def inverse(self) -> "MultChar":
        return MultChar(self.group, [-a for a in self.exps])

    def __eq__(self, other):
        return isinstance(other, MultChar) and other.group is self.group and other.exps == self.exps

    def __hash__(self):
        return hash((id(self.group), self.exps))

    def __repr__(self):
        return f"MultChar({self.ring!r}, exps={self.exps})"

    def conductor(self) -> int:
        return conductor_exp(self)

    def to_json(self) -> dict:
        return {"kind": "mult", "exps": list(self.exps), "conductor": self.conductor()}


def enumerate_mult_chars(ring: WittRing, bound: int = CHAR_BOUND) -> list[MultChar]:
    """All q^(n-1)(q-1) characters, in lexicographic exponent order."""
    if ring.unit_count > bound:
        raise ValueError(f"unit group of order {ring.unit_count} exceeds the bound {bound}")
    group = unit_group(ring)
    return [MultChar(group, e) for e in itertools.product(*(range(d) for d in group.orders))]


def trivial_char(ring: WittRing) -> MultChar:
    group = unit_group(ring)
    return MultChar(group, [0] * len(group.orders))


def conductor_exp(chi: MultChar) -> int:
    """Smallest m in [0, n] with chi trivial on 1 + p^m W_n."""
    if chi._conductor is None:
        ring = chi.ring
        e = ring.n
        for m in range(ring.n, -1, -1):
            if all(chi.exponent_of(g) == 0 for g in chi.group.filtration_generators(m)):
                e = m
            else:
                break
        chi._conductor = e
    return chi._conductor


def extension_ring(ring: WittRing, s: int, bound: int | None = None) -> WittRing:
    """W_n(F_{q^s}) with F_q registered as a subfield."""
    from .witt import ring_bound

    bound = ring_bound() if bound is None else bound
    field = make_field(ring.p, ring.k * s, bound=bound)
    ext = witt_ring(field, ring.n, bound=bound)
    witt_embedding(ring, ext)
    return ext


def inflate_by_norm(chi: MultChar, s: int, bound: int | None = None) -> MultChar:
    """chi o Nr_{F_{q^s}/F_q} as a character of W_n(F_{q^s})^x."""
    if s == 1:
        return chi
    ext = extension_ring(chi.ring, s, bound)
    group = unit_group(ext)
    norms = norm_array(ext, chi.ring, np.array(group.gens, dtype=np.int64))
    E = chi.group.exponent
    exps = []
    for g_norm, d in zip(norms, group.orders):
        a = chi.exponent_of(int(g_norm))
        num = a * d
        if num % E:
            raise ArithmeticError("inflated value is not a d-th root of unity")
        exps.append(num // E)
    return MultChar(group, exps)


class AddChar:
    """psi(x) = zeta_{p^n}^{sign * Tr_{F/F_p}(kappa x)}."""

    def __init__(self, ring: WittRing, kappa: int = 1, sign: int = 1):
        if not ring.is_unit(kappa):
            raise ValueError("kappa must be a unit")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.ring = ring
        self.kappa = int(kappa)
        self.sign = sign
        # w_i = Tr(kappa xi^i), so Tr(kappa x) = sum_i x_i w_i
        kd = np.array(ring.digits(self.kappa), dtype=np.int64)
        basis = np.eye(ring.k, dtype=np.int64)
        prods = ring.mul_digit_arrays(basis, kd[None, :])
        self.weights = (sign * ring.trace_array(prods)) % ring.N
        self._levels: dict[int, AddChar] = {}

    @property
    def level(self) -> int:
        return self.ring.n

    def exponent_of(self, x: int) -> int:
        return int(np.dot(self.ring.digits(int(x)), self.weights) % self.ring.N)

    def exponent_array(self, elems) -> np.ndarray:
        return (self.ring.digit_array(elems) @ self.weights) % self.ring.N

    def value(self, x, m: int | None = None) -> CyclotomicInt:
        if isinstance(x, WittElement):
            x = x.value
        N = self.ring.N
        m = N if m is None else m
        return CyclotomicInt.zeta(m, self.exponent_of(x) * (m // N))

    def __call__(self, x) -> CyclotomicInt:
        return self.value(x)

    def at_level(self, r: int) -> "AddChar":
        """The same kappa and sign on W_r."""
        if r == self.ring.n:
            return self
        if r not in self._levels:
            low = witt_ring(self.ring.base, r)
            self._levels[r] = AddChar(low, self.ring.project_int(self.kappa, r), self.sign)
        return self._levels[r]

    def extend(self, ext: WittRing) -> "AddChar":
        """psi_{n, F_{q^s}} with the same kappa, viewed in the extension."""
        return AddChar(ext, witt_embedding(self.ring, ext).image(self.kappa), self.sign)

    def to_json(self) -> dict:
        return {
            "kind": "add",
            "kappa": self.ring.digits(self.kappa),
            "sign": self.sign,
            "level": self.ring.n,
        }


def _solve_mod(mat: list[list[int]], rhs: list[int], p: int, mod: int) -> list[int]:
    """Solve mat * x = rhs modulo mod = p^r, mat invertible mod p."""
    n = len(mat)
    a = [[x % mod for x in row] + [rhs[i] % mod] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] % p), None)
        if piv is None:
            raise ArithmeticError("trace pairing is degenerate")
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, mod)
        a[c] = [x * inv % mod for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % mod for x, y in zip(a[r], a[c])]
    return [a[i][n] for i in range(n)]


def epsilon_split(n: int) -> int:
    return n // 2


def solve_epsilon_char(chi: MultChar, psi: AddChar, r: int | None = None) -> WittElement:
    """The unique eps in W_r with chi(1 + p^(n-r) x~) = psi_r(-eps x) for all x in W_r.

    r defaults to n // 2, which covers both n = 2r and n = 2r + 1.
    """
    ring = chi.ring
    n, p = ring.n, ring.p
    r = epsilon_split(n) if r is None else r
    if not 1 <= r <= n - r:
        raise ValueError(f"split r = {r} needs 1 <= r <= n - r")
    low = witt_ring(ring.base, r)
    psi_r = psi.at_level(r)
    E = chi.group.exponent
    pr = p**r
    rhs = []
    for i in range(ring.k):
        basis = ring.encode([int(t == i) for t in range(ring.k)])
        u = ring.add(1, ring.smul(p ** (n - r), basis))
        a = chi.exponent_of(u)
        # chi(u) is a p^r-th root of unity: zeta_E^a = zeta_{p^r}^c
        if (a * pr) % E:
            raise ArithmeticError("filtration value is not a p^r-th root of unity")
        c = a * pr // E
        rhs.append(-c)
    # Tr(kappa eps xi^i) * sign = -c_i  ->  G eps = sign * (-c)
    gram = low.trace_gram(psi_r.kappa)
    rhs = [psi.sign * v for v in rhs]
    eps_digits = _solve_mod(gram, rhs, p, pr)
    return WittElement(low, low.encode(eps_digits))


def verify_epsilon(chi: MultChar, psi: AddChar, eps: WittElement) -> bool:
    """Pointwise check of the defining identity over all of W_r."""
    ring = chi.ring
    low = eps.parent
    n, r, p = ring.n, low.n, ring.p
    psi_r = psi.at_level(r)
    E = chi.group.exponent
    pr = p**r
    for x in range(low.size):
        xt = ring.encode(low.digits(x))
        u = ring.add(1, ring.smul(p ** (n - r), xt))
        lhs = chi.exponent_of(u) * pr // E % pr
        rhs = psi_r.exponent_of(low.neg(low.mul(eps.value, x)))
        if lhs != rhs:
            return False
    return True
