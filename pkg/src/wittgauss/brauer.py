"""Finite groups, class functions, Mackey decomposition and Euler-factor inductivity.

Groups are given by permutation generators and turned into a Cayley table on
sorted element indices.  Character values live in Z[zeta_m] with m the group
exponent, so every identity here is checked exactly.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .abelian import decompose
from .cyclo import CyclotomicInt, lcm

Perm = tuple[int, ...]


def _compose(a: Perm, b: Perm) -> Perm:
    """(a * b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


class FiniteGroup:
    """A finite group as a Cayley table over indices 0..|G|-1 (0 is the identity)."""

    def __init__(self, name: str, elements: list, table: np.ndarray, generators=None, check: bool = True):
        self.name = name
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=np.int64)
        self.order = len(self.elements)
        self.generators = generators
        if self.table.shape != (self.order, self.order):
            raise ValueError("table shape does not match the element list")
        ident = [i for i in range(self.order) if np.array_equal(self.table[i], np.arange(self.order))]
        if not ident:
            raise ValueError("no identity element")
        self.identity = ident[0]
        inverse = []
        for i in range(self.order):
            hits = np.nonzero(self.table[i] == self.identity)[0]
            if not hits.size:
                raise ValueError("missing inverses")
            inverse.append(int(hits[0]))
        self.inverse = np.array(inverse, dtype=np.int64)
        if check and self.order <= 64:
            self._check_axioms()
        self.exponent = 1
        for g in range(self.order):
            self.exponent = lcm(self.exponent, self.element_order(g))
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    @classmethod
    def from_permutations(cls, name: str, gens: list) -> "FiniteGroup":
        gens = [tuple(g) for g in gens]
        degree = len(gens[0])
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _compose(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        elements = sorted(seen)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        table = np.zeros((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                table[i, j] = index[_compose(a, b)]
        return cls(name, elements, table, generators=[list(g) for g in gens])

    @classmethod
    def from_cayley_table(cls, name: str, table) -> "FiniteGroup":
        table = np.asarray(table, dtype=np.int64)
        return cls(name, list(range(len(table))), table)

    def _check_axioms(self):
        t = self.table
        n = self.order
        if sorted(set(t.ravel().tolist())) != list(range(n)):
            raise ValueError("table is not closed")
        for row in t:
            if len(set(row.tolist())) != n:
                raise ValueError("rows are not permutations")
        # associativity: t[t[a,b],c] == t[a,t[b,c]]
        left = t[t, :]  # left[a,b,c] = t[t[a,b], c]
        right = t[:, t]  # right[a,b,c] = t[a, t[b,c]]
        if not np.array_equal(left, right):
            raise ValueError("table is not associative")
        if np.any(t[self.inverse, np.arange(n)] != self.identity):
            raise ValueError("missing inverses")

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, e: int) -> int:
        e %= self.element_order(a)
        out = self.identity
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def element_order(self, a: int) -> int:
        n, cur = 1, a
        while cur != self.identity:
            cur = self.mul(cur, a)
            n += 1
        return n

    def index_of(self, element) -> int:
        return self._index[tuple(element) if isinstance(element, list) else element]

    def closure(self, gens) -> tuple[int, ...]:
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    def is_subgroup(self, H) -> bool:
        Hs = set(H)
        return self.identity in Hs and all(self.mul(a, self.inv(b)) in Hs for a in H for b in H)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen, classes = set(), []
        for x in range(self.order):
            if x in seen:
                continue
            cls = tuple(sorted({self.conj(g, x) for g in range(self.order)}))
            seen.update(cls)
            classes.append(cls)
        return classes

    def subgroups(self) -> list[tuple[int, ...]]:
        """All subgroups, by joining cyclic ones until stable; sorted by (order, elements)."""
        cyclic = {self.closure([g]) for g in range(self.order)}
        subs = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for A in frontier:
                for C in cyclic:
                    if not set(C) <= set(A):
                        J = self.closure(A + C)
                        if J not in subs:
                            new.add(J)
            subs |= new
            frontier = new
        return sorted(subs, key=lambda H: (len(H), H))

    def is_abelian_subset(self, H) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in H for b in H)

    def conjugate_subgroup(self, H, g: int) -> tuple[int, ...]:
        """H^g = g^-1 H g."""
        gi = self.inv(g)
        return tuple(sorted(self.conj(gi, h) for h in H))


# standard groups


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup.from_permutations("S1", [(0,)])
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return FiniteGroup.from_permutations(f"S{n}", gens)


def alternating_group(n: int) -> FiniteGroup:
    gens = []
    for i in range(2, n):
        p = list(range(n))
        p[0], p[1], p[i] = p[1], p[i], p[0]
        gens.append(tuple(p))
    return FiniteGroup.from_permutations(f"A{n}", gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations(f"D{n}", [rot, ref])


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_permutations(f"C{n}", [tuple((i + 1) % n for i in range(n))])


def quaternion_group() -> FiniteGroup:
    """Q8 through its left-regular permutation representation."""
    # units as (sign, axis) with axis in 1,i,j,k
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    units = [(s, a) for a in "1ijk" for s in (1, -1)]
    index = {u: n for n, u in enumerate(units)}

    def qmul(x, y):
        s, a = mult[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    gens = []
    for g in [(1, "i"), (1, "j")]:
        gens.append(tuple(index[qmul(g, u)] for u in units))
    return FiniteGroup.from_permutations("Q8", gens)


GROUPS = {
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
    "A4": lambda: alternating_group(4),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
}


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    if name in GROUPS:
        return GROUPS[name]()
    if name.startswith("C") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise ValueError(f"unknown group {name!r}")


# class functions


class ClassFunction:
    """A function on the subgroup H of G with values in Z[zeta_m], m = exp(G)."""

    def __init__(self, group: FiniteGroup, subgroup, values: dict):
        self.group = group
        self.subgroup = tuple(sorted(subgroup))
        m = group.exponent
        self.m = m
        vals = {}
        for h in self.subgroup:
            v = values[h]
            if isinstance(v, int):
                v = CyclotomicInt.integer(v, m)
            vals[h] = v.embed(m) if v.m != m else v
        self.values = vals

    def __call__(self, x: int) -> CyclotomicInt:
        return self.values.get(x, CyclotomicInt.zero(self.m))

    def degree(self) -> int:
        return self.values[self.group.identity].as_integer()

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same(other)
        return ClassFunction(self.group, self.subgroup, {h: self.values[h] + other.values[h] for h in self.subgroup})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._same(other)
        return ClassFunction(self.group, self.subgroup, {h: self.values[h] - other.values[h] for h in self.subgroup})

    def scale(self, a: int) -> "ClassFunction":
        return ClassFunction(self.group, self.subgroup, {h: v * a for h, v in self.values.items()})

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        self._same(other)
        return ClassFunction(self.group, self.subgroup, {h: self.values[h] * other.values[h] for h in self.subgroup})

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, self.subgroup, {h: v.conj() for h, v in self.values.items()})

    def _same(self, other):
        if other.group is not self.group or other.subgroup != self.subgroup:
            raise ValueError("class functions on different subgroups")

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and other.group is self.group
            and other.subgroup == self.subgroup
            and all(self.values[h] == other.values[h] for h in self.subgroup)
        )

    def is_class_function(self) -> bool:
        G = self.group
        return all(self.values[G.conj(h2, h)] == self.values[h] for h in self.subgroup for h2 in self.subgroup)

    def to_json(self) -> dict:
        return {"subgroup": list(self.subgroup), "values": {str(h): v.to_json() for h, v in self.values.items()}}


def trivial_character(G: FiniteGroup, H=None) -> ClassFunction:
    H = tuple(range(G.order)) if H is None else H
    return ClassFunction(G, H, {h: 1 for h in H})


class AbelianSubgroupChars:
    """Characters of an abelian subgroup, as exponent vectors on a cyclic decomposition."""

    def __init__(self, G: FiniteGroup, H, gens=None):
        H = tuple(sorted(H))
        if not G.is_abelian_subset(H):
            raise ValueError("subgroup is not abelian")
        self.group, self.subgroup = G, H
        gens = list(gens) if gens is not None else list(H)
        self.dec = decompose(gens, G.mul, G.identity)
        if self.dec.order != len(H):
            raise ValueError("generators do not generate the subgroup")

    def count(self) -> int:
        return len(self.subgroup)

    def all_exps(self):
        import itertools

        return list(itertools.product(*(range(d) for d in self.dec.orders)))

    def character(self, exps) -> ClassFunction:
        G = self.group
        m = G.exponent
        vals = {}
        for h in self.subgroup:
            e = sum(c * l * (m // d) for c, l, d in zip(exps, self.dec.dlog(h), self.dec.orders))
            vals[h] = CyclotomicInt.zeta(m, e)
        return ClassFunction(G, self.subgroup, vals)


def induce(psi: ClassFunction, G: FiniteGroup | None = None) -> ClassFunction:
    """Ind_H^G psi (g) = |H|^-1 sum_{x in G} psi°(x g x^-1)."""
    G = psi.group if G is None else G
    if psi.group is not G or not G.is_subgroup(psi.subgroup):
        raise ValueError("not a subgroup of G")
    Hs = set(psi.subgroup)
    vals = {}
    for g in range(G.order):
        acc = CyclotomicInt.zero(psi.m)
        for x in range(G.order):
            y = G.conj(x, g)
            if y in Hs:
                acc = acc + psi.values[y]
        vals[g] = acc.divexact(len(psi.subgroup))
    return ClassFunction(G, tuple(range(G.order)), vals)


def restrict(chi: ClassFunction, D) -> ClassFunction:
    D = tuple(sorted(D))
    if not set(D) <= set(chi.subgroup) or not chi.group.is_subgroup(D):
        raise ValueError("not a subgroup")
    return ClassFunction(chi.group, D, {d: chi.values[d] for d in D})


def inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    """<a, b>_H = |H|^-1 sum a(h) conj(b(h)); must be rational."""
    a._same(b)
    acc = CyclotomicInt.zero(a.m)
    for h in a.subgroup:
        acc = acc + a.values[h] * b.values[h].conj()
    if not acc.is_integer():
        raise ArithmeticError("inner product is not rational")
    return Fraction(acc.as_integer(), len(a.subgroup))


def conjugate_character(psi: ClassFunction, g: int) -> ClassFunction:
    """psi^g on H^g = g^-1 H g, psi^g(x) = psi(g x g^-1)."""
    G = psi.group
    Hg = G.conjugate_subgroup(psi.subgroup, g)
    return ClassFunction(G, Hg, {x: psi.values[G.conj(g, x)] for x in Hg})


def double_cosets(H, G: FiniteGroup, D) -> list[int]:
    """Representatives (least index) of H\\G/D, ordered by representative."""
    H, D = tuple(H), tuple(D)
    seen, reps = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        coset = {G.mul(G.mul(h, g), d) for h in H for d in D}
        seen |= coset
        reps.append(min(coset))
    return sorted(reps)


@dataclass
class MackeyResult:
    ok: bool
    lhs: ClassFunction
    rhs: ClassFunction
    representatives: list[int]


def mackey_check(psi: ClassFunction, D) -> MackeyResult:
    """Res_D Ind_H^G psi against sum_{[g] in H\\G/D} Ind_{H^g cap D}^D psi^g."""
    G = psi.group
    D = tuple(sorted(D))
    lhs = restrict(induce(psi), D)
    reps = double_cosets(psi.subgroup, G, D)
    rhs = ClassFunction(G, D, {d: 0 for d in D})
    for g in reps:
        pg = conjugate_character(psi, g)
        inter = tuple(sorted(set(pg.subgroup) & set(D)))
        piece = _induce_within(restrict(pg, inter), D)
        rhs = rhs + piece
    return MackeyResult(lhs == rhs, lhs, rhs, reps)


def _induce_within(psi: ClassFunction, D) -> ClassFunction:
    """Ind from psi.subgroup to the subgroup D containing it."""
    G = psi.group
    Hs = set(psi.subgroup)
    vals = {}
    for d in D:
        acc = CyclotomicInt.zero(psi.m)
        for x in D:
            y = G.conj(x, d)
            if y in Hs:
                acc = acc + psi.values[y]
        vals[d] = acc.divexact(len(psi.subgroup))
    return ClassFunction(G, D, vals)


# determinants


def determinant(mat: list[list[CyclotomicInt]], m: int) -> CyclotomicInt:
    """Laplace expansion along rows, memoised on the set of used columns."""
    n = len(mat)
    if n == 0:
        return CyclotomicInt.one(m)
    memo: dict[tuple[int, int], CyclotomicInt] = {}

    def rec(row: int, used: int) -> CyclotomicInt:
        if row == n:
            return CyclotomicInt.one(m)
        key = (row, used)
        if key in memo:
            return memo[key]
        acc = CyclotomicInt.zero(m)
        sign_pos = 0
        for c in range(n):
            if used >> c & 1:
                continue
            entry = mat[row][c]
            if entry:
                term = entry * rec(row + 1, used | (1 << c))
                acc = acc - term if sign_pos % 2 else acc + term
            sign_pos += 1
        memo[key] = acc
        return acc

    return rec(0, 0)


def matmul(a, b, m: int):
    n, k, l = len(a), len(b), len(b[0])
    out = [[CyclotomicInt.zero(m) for _ in range(l)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t]:
                for j in range(l):
                    if b[t][j]:
                        out[i][j] = out[i][j] + a[i][t] * b[t][j]
    return out


def frob_matrix_induced(f: int, value: CyclotomicInt) -> list[list[CyclotomicInt]]:
    """Frob on Ind_{<Frob^f>}^{<Frob>} psi: I_{f-1} below the diagonal, psi(Frob^f) in the corner."""
    m = value.m
    mat = [[CyclotomicInt.zero(m) for _ in range(f)] for _ in range(f)]
    for i in range(f - 1):
        mat[i + 1][i] = CyclotomicInt.one(m)
    mat[0][f - 1] = value
    return mat


@dataclass
class FrobDetResult:
    det: CyclotomicInt
    expected: CyclotomicInt

    @property
    def ok(self) -> bool:
        return self.det == self.expected


def frob_det_induced(N: int, f: int, psi_exp: int, e: int) -> FrobDetResult:
    """det(Frob^e) on Ind from <Frob^f> of psi with psi(Frob^f) = zeta_{N/f}^psi_exp.

    Must equal ((-1)^(f-1) psi(Frob^f))^e.
    """
    if f < 1 or N % f:
        raise ValueError(f"f = {f} does not divide N = {N}")
    order = N // f
    m = lcm(order, 2)
    value = CyclotomicInt.zeta(m, psi_exp * (m // order))
    mat = frob_matrix_induced(f, value)
    power = [[CyclotomicInt.one(m) if i == j else CyclotomicInt.zero(m) for j in range(f)] for i in range(f)]
    for _ in range(e):
        power = matmul(power, mat, m)
    det = determinant(power, m)
    sign = -1 if (f - 1) % 2 else 1
    expected = (value * sign) ** e
    return FrobDetResult(det, expected)


# Euler polynomials


class EulerPoly:
    """Polynomial in T with CyclotomicInt coefficients (constant term first)."""

    def __init__(self, coeffs: list[CyclotomicInt], m: int):
        self.m = m
        coeffs = [c.embed(m) if c.m != m else c for c in coeffs]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = coeffs or [CyclotomicInt.zero(m)]

    @classmethod
    def one(cls, m: int) -> "EulerPoly":
        return cls([CyclotomicInt.one(m)], m)

    @classmethod
    def binomial(cls, c: CyclotomicInt, f: int, m: int) -> "EulerPoly":
        """1 - c T^f."""
        coeffs = [CyclotomicInt.one(m)] + [CyclotomicInt.zero(m)] * f
        coeffs[f] = coeffs[f] - c.embed(m)
        return cls(coeffs, m)

    def __mul__(self, other: "EulerPoly") -> "EulerPoly":
        m = lcm(self.m, other.m)
        out = [CyclotomicInt.zero(m) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return EulerPoly(out, m)

    def __pow__(self, e: int) -> "EulerPoly":
        out = EulerPoly.one(self.m)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, EulerPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t: Fraction) -> tuple:
        """Exact value at a rational T, as (CyclotomicInt numerator, integer denominator)."""
        den = t.denominator ** self.degree()
        acc = CyclotomicInt.zero(self.m)
        for i, c in enumerate(self.coeffs):
            acc = acc + c * (t.numerator**i * t.denominator ** (self.degree() - i))
        return acc, den

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def charpoly_from_power_traces(traces: list[CyclotomicInt], m: int) -> EulerPoly:
    """det(1 - M T) from p_k = tr(M^k), k = 1..d, by Newton's identities."""
    d = len(traces)
    e = [CyclotomicInt.one(m)]
    for k in range(1, d + 1):
        acc = CyclotomicInt.zero(m)
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc.divexact(k))
    return EulerPoly([c * (-1 if k % 2 else 1) for k, c in enumerate(e)], m)


# induction records


@dataclass
class InductionTerm:
    a: int
    subgroup: tuple[int, ...]
    char: ClassFunction
    subgroup_gens: list = field(default_factory=list)
    char_spec: object = "trivial"

    def to_json(self, G: FiniteGroup) -> dict:
        gens = [list(G.elements[g]) if isinstance(G.elements[g], tuple) else G.elements[g] for g in self.subgroup_gens]
        return {"a": self.a, "subgroup": gens, "char": self.char_spec}


@dataclass
class VirtualInductionRecord:
    group: FiniteGroup
    terms: list[InductionTerm]
    target: ClassFunction | None = None
    name: str = ""

    def virtual_character(self) -> ClassFunction:
        G = self.group
        total = ClassFunction(G, tuple(range(G.order)), {g: 0 for g in range(G.order)})
        for t in self.terms:
            total = total + induce(t.char).scale(t.a)
        return total

    def degree_sum(self) -> int:
        return sum(t.a * (self.group.order // len(t.subgroup)) for t in self.terms)

    def consistent(self) -> bool:
        """sum a_j Ind psi_j equals the target, and the degree identity holds."""
        virt = self.virtual_character()
        if self.target is not None and virt != self.target:
            return False
        return virt.degree() == self.degree_sum()

    def dual(self) -> "VirtualInductionRecord":
        terms = [InductionTerm(t.a, t.subgroup, t.char.conj(), t.subgroup_gens, ("dual", t.char_spec)) for t in self.terms]
        target = self.target.conj() if self.target is not None else None
        return VirtualInductionRecord(self.group, terms, target, self.name + "^dual")

    def twisted(self, eta: ClassFunction) -> "VirtualInductionRecord":
        """rho (x) eta = sum a_j Ind(psi_j * eta|H_j) for a linear character eta of G."""
        terms = [
            InductionTerm(t.a, t.subgroup, t.char * restrict(eta, t.subgroup), t.subgroup_gens, ("twist", t.char_spec))
            for t in self.terms
        ]
        target = self.target * eta if self.target is not None else None
        return VirtualInductionRecord(self.group, terms, target, self.name + "*eta")

    def to_json(self) -> dict:
        return {"group": self.group.name, "name": self.name, "terms": [t.to_json(self.group) for t in self.terms]}


def make_term(G: FiniteGroup, a: int, subgroup_gens: list[int], char="trivial") -> InductionTerm:
    H = G.closure(subgroup_gens)
    if char == "trivial":
        psi = trivial_character(G, H)
    else:
        psi = AbelianSubgroupChars(G, H, subgroup_gens).character(char)
    return InductionTerm(a, H, psi, list(subgroup_gens), char if char == "trivial" else list(char))


def record_from_json(obj: dict) -> VirtualInductionRecord:
    G = named_group(obj["group"])
    terms = []
    for t in obj["terms"]:
        gens = [G.index_of(tuple(g)) for g in t["subgroup"]]
        terms.append(make_term(G, int(t["a"]), gens, t.get("char", "trivial")))
    return VirtualInductionRecord(G, terms, None, obj.get("name", ""))


# Euler inductivity


@dataclass
class EulerCheck:
    ok: bool
    lhs_factors: dict
    rhs_factors: dict
    lhs_poly: tuple
    rhs_poly: tuple
    factored_ok: bool
    expanded_ok: bool
    eigen_ok: bool
    degree_ok: bool
    polys: dict = field(default_factory=dict, repr=False)
    modulus: int = 1  # factor keys t stand for (1 - zeta_modulus^t T)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "modulus": self.modulus,
            "lhs_factors": self.lhs_factors,
            "rhs_factors": self.rhs_factors,
            "lhs_poly": {"num": self.lhs_poly[0], "den": self.lhs_poly[1]},
            "rhs_poly": {"num": self.rhs_poly[0], "den": self.rhs_poly[1]},
            "factored_ok": self.factored_ok,
            "expanded_ok": self.expanded_ok,
            "eigen_ok": self.eigen_ok,
            "degree_ok": self.degree_ok,
        }


def _root_exponent(value: CyclotomicInt, order: int) -> int:
    """t with value = zeta_order^t (value must be such a root of unity)."""
    for t in range(order):
        if CyclotomicInt.zeta(order, t) == value:
            return t
    raise ArithmeticError("value is not a root of unity of the expected order")


def place_data(record: VirtualInductionRecord, frob: int):
    """Rows (j, g, a_j, f_g, psi_j^g(Frob^f_g)) over terms j and [g] in H_j\\G/D, D = <Frob>."""
    G = record.group
    D = G.closure([frob])
    N = len(D)
    out = []
    for j, term in enumerate(record.terms):
        for g in double_cosets(term.subgroup, G, D):
            pg = conjugate_character(term.char, g)
            inter = set(pg.subgroup) & set(D)
            f = N // len(inter)
            x = G.power(frob, f)
            if x not in inter:
                raise ArithmeticError("Frob^f is not in H^g cap D")
            out.append((j, g, term.a, f, pg(x)))
    return D, N, out


def _linear_counter(factors, N: int, m: int) -> tuple[int, Counter]:
    """Split each (1 - c T^f)^a into linear factors (1 - zeta_L^t T)^a over a common L."""
    L = lcm(N, m)
    for _, f, _ in factors:
        L = lcm(L, f * lcm(N, m))
    counter: Counter = Counter()
    for a, f, c in factors:
        # c = zeta_L'^u with L' = lcm(N, m); roots of zeta^u T^f: zeta_{fL'}^{u} * zeta_f^j
        base_order = lcm(N, m)
        u = _root_exponent(c.embed(base_order) if c.m != base_order else c, base_order)
        for j in range(f):
            t = (u * (L // (f * base_order)) + j * (L // f)) % L
            counter[t] += a
    return L, Counter({t: v for t, v in counter.items() if v})


def _normalize_counter(L: int, counter: Counter, target_L: int) -> dict:
    step = target_L // L
    return {t * step % target_L: v for t, v in counter.items()}


def induced_frob_traces(term: InductionTerm, frob: int, count: int) -> list[CyclotomicInt]:
    """tr(rho(Frob^k)) for k = 1..count on the monomial model of Ind psi."""
    G = term.char.group
    H = set(term.subgroup)
    # left coset representatives g_i H
    reps, seen = [], set()
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        seen |= {G.mul(g, h) for h in H}
    m = term.char.m
    traces = []
    for k in range(1, count + 1):
        x = G.power(frob, k)
        acc = CyclotomicInt.zero(m)
        for gi in reps:
            h = G.mul(G.inv(gi), G.mul(x, gi))
            if h in H:
                acc = acc + term.char(h)
        traces.append(acc)
    return traces


def induced_frob_matrix(term: InductionTerm, frob: int) -> list[list[CyclotomicInt]]:
    """Monomial matrix of Frob on Ind psi with basis the left cosets g_i H."""
    G = term.char.group
    H = set(term.subgroup)
    reps, seen = [], set()
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        seen |= {G.mul(g, h) for h in H}
    m = term.char.m
    d = len(reps)
    mat = [[CyclotomicInt.zero(m) for _ in range(d)] for _ in range(d)]
    for i, gi in enumerate(reps):
        y = G.mul(frob, gi)
        for j, gj in enumerate(reps):
            h = G.mul(G.inv(gj), y)
            if h in H:
                mat[j][i] = term.char(h)
                break
    return mat


def euler_inductivity_check(record: VirtualInductionRecord, frob: int) -> EulerCheck:
    """prod_j prod_[g] (1 - psi_j^g(Frob^f_g) T^f_g)^a_j against det(1 - Frob T | rho)."""
    G = record.group
    m = G.exponent
    D, N, data = place_data(record, frob)
    lhs_factors = [(a, f, c) for (_, _, a, f, c) in data]
    # right side, route 1: eigenvalue multiplicities of chi|_D
    chi = record.virtual_character()
    mult = {}
    for t in range(N):
        acc = CyclotomicInt.zero(lcm(m, N))
        for k in range(N):
            x = G.power(frob, k)
            acc = acc + chi(x) * CyclotomicInt.zeta(lcm(m, N), -t * k * (lcm(m, N) // N))
        if not acc.is_integer() or acc.as_integer() % N:
            raise ArithmeticError("eigenvalue multiplicity is not an integer")
        if acc.as_integer():
            mult[t] = acc.as_integer() // N
    L1, lhs_counter = _linear_counter(lhs_factors, N, m)
    rhs_counter = Counter({t: v for t, v in mult.items()})
    L = lcm(L1, N)
    lhs_norm = _normalize_counter(L1, lhs_counter, L)
    rhs_norm = _normalize_counter(N, rhs_counter, L)
    factored_ok = lhs_norm == rhs_norm
    # right side, route 2: explicit monomial matrices, det(1 - M T) from power traces
    rhs_pos, rhs_neg = EulerPoly.one(m), EulerPoly.one(m)
    for term in record.terms:
        dim = G.order // len(term.subgroup)
        poly = charpoly_from_power_traces(induced_frob_traces(term, frob, dim), m)
        if term.a > 0:
            rhs_pos = rhs_pos * poly**term.a
        elif term.a < 0:
            rhs_neg = rhs_neg * poly ** (-term.a)
    lhs_pos, lhs_neg = EulerPoly.one(m), EulerPoly.one(m)
    for a, f, c in lhs_factors:
        b = EulerPoly.binomial(c, f, m)
        if a > 0:
            lhs_pos = lhs_pos * b**a
        elif a < 0:
            lhs_neg = lhs_neg * b ** (-a)
    expanded_ok = lhs_pos * rhs_neg == rhs_pos * lhs_neg
    # route 3: eigenvalue product expanded, compared to the matrix route
    eig_pos, eig_neg = EulerPoly.one(lcm(m, N)), EulerPoly.one(lcm(m, N))
    for t, v in mult.items():
        b = EulerPoly.binomial(CyclotomicInt.zeta(N, t), 1, lcm(m, N))
        if v > 0:
            eig_pos = eig_pos * b**v
        else:
            eig_neg = eig_neg * b ** (-v)
    eigen_ok = eig_pos * rhs_neg == rhs_pos * eig_neg
    degree_ok = sum(a * f for a, f, _ in lhs_factors) == chi.degree() == record.degree_sum()
    ok = factored_ok and expanded_ok and eigen_ok and degree_ok
    return EulerCheck(
        ok,
        {str(t): v for t, v in sorted(lhs_norm.items())},
        {str(t): v for t, v in sorted(rhs_norm.items())},
        (lhs_pos.to_json(), lhs_neg.to_json()),
        (rhs_pos.to_json(), rhs_neg.to_json()),
        factored_ok,
        expanded_ok,
        eigen_ok,
        degree_ok,
        {"lhs": (lhs_pos, lhs_neg), "rhs": (rhs_pos, rhs_neg)},
        L,
    )


@dataclass
class SignLedger:
    dh_sign: int
    frob_sign: int

    @property
    def ok(self) -> bool:
        return self.dh_sign == self.frob_sign


def sign_ledger(record: VirtualInductionRecord, frob: int, e: int) -> SignLedger:
    """(-1)^{sum_j a_j sum_[g] e (f_g - 1)} from the DH side and from Frobenius determinants."""
    G = record.group
    _, N, data = place_data(record, frob)
    dh = 1
    frob_side = CyclotomicInt.one(G.exponent)
    frob_inv = CyclotomicInt.one(G.exponent)
    for _, _, a, f, c in data:
        s = -1 if (e * (f - 1)) % 2 else 1
        dh *= s ** abs(a)
        mat = frob_matrix_induced(f, c)
        power = [[CyclotomicInt.one(c.m) if i == j else CyclotomicInt.zero(c.m) for j in range(f)] for i in range(f)]
        for _ in range(e):
            power = matmul(power, mat, c.m)
        det = determinant(power, c.m)
        # det(M^e) psi(Frob^f)^-e, psi(Frob^f) a root of unity so its inverse is its conjugate
        unit = det * (c.conj() ** e)
        if a > 0:
            frob_side = frob_side * unit**a
        elif a < 0:
            frob_inv = frob_inv * unit ** (-a)
    # frob_side / frob_inv, each a sign
    total = frob_side * frob_inv
    if total == 1:
        frob_sign = 1
    elif total == -1:
        frob_sign = -1
    else:
        raise ArithmeticError("Frobenius-side ledger is not a sign")
    return SignLedger(dh, frob_sign)


# corpus


def _perm_index(G: FiniteGroup, perm) -> int:
    return G.index_of(tuple(perm))


def _class_values(G: FiniteGroup, rule) -> ClassFunction:
    return ClassFunction(G, tuple(range(G.order)), {g: rule(g) for g in range(G.order)})


def _sign_of(perm) -> int:
    perm = list(perm)
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def record_corpus() -> list[VirtualInductionRecord]:
    """Brauer records for S3, D4, Q8 (plus A4), each with an independently described target."""
    out = []
    # S3
    G = named_group("S3")
    r3 = _perm_index(G, (1, 2, 0))
    t = _perm_index(G, (1, 0, 2))
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [r3, t])], _class_values(G, lambda g: 1), "S3 trivial"))
    sign = _class_values(G, lambda g: _sign_of(G.elements[g]))
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [r3]), make_term(G, -1, [r3, t])], sign, "S3 sign"))
    std = _class_values(G, lambda g: {1: 2, 3: -1}.get(G.element_order(g), 0))
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [r3], [1])], std, "S3 standard"))
    reg = _class_values(G, lambda g: G.order if g == G.identity else 0)
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [G.identity])], reg, "S3 regular"))
    # the standard representation again, as Ind_{<t>} 1 - 1
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [t]), make_term(G, -1, [r3, t])], std, "S3 standard via <t>"))
    # D4 on the square: rot = (1,2,3,0), ref = (0,3,2,1)
    G = named_group("D4")
    rot = _perm_index(G, (1, 2, 3, 0))
    ref = _perm_index(G, (0, 3, 2, 1))
    rot2 = G.mul(rot, rot)
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [rot, ref])], _class_values(G, lambda g: 1), "D4 trivial"))
    for name, gens in [("C4", [rot]), ("V_ref", [rot2, ref]), ("V_rotref", [rot2, G.mul(rot, ref)])]:
        K = set(G.closure(gens))
        lin = _class_values(G, lambda g, K=K: 1 if g in K else -1)
        out.append(VirtualInductionRecord(G, [make_term(G, 1, gens), make_term(G, -1, [rot, ref])], lin, f"D4 linear {name}"))
    two = _class_values(G, lambda g: 2 if g == G.identity else (-2 if g == rot2 else 0))
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [rot], [1])], two, "D4 two-dim"))
    # Q8
    G = named_group("Q8")
    i_el, j_el = (_perm_index(G, tuple(g)) for g in G.generators)
    minus1 = G.mul(i_el, i_el)
    k_el = G.mul(i_el, j_el)
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [i_el, j_el])], _class_values(G, lambda g: 1), "Q8 trivial"))
    for name, gen in [("i", i_el), ("j", j_el), ("k", k_el)]:
        K = set(G.closure([gen]))
        lin = _class_values(G, lambda g, K=K: 1 if g in K else -1)
        out.append(VirtualInductionRecord(G, [make_term(G, 1, [gen]), make_term(G, -1, [i_el, j_el])], lin, f"Q8 linear {name}"))
    two = _class_values(G, lambda g: 2 if g == G.identity else (-2 if g == minus1 else 0))
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [i_el], [1])], two, "Q8 two-dim"))
    # A4: the three-dimensional irreducible is Ind_V psi for psi nontrivial on V
    G = named_group("A4")
    a = _perm_index(G, (1, 0, 3, 2))
    b = _perm_index(G, (2, 3, 0, 1))
    three = _class_values(G, lambda g: 3 if g == G.identity else (-1 if G.element_order(g) == 2 else 0))
    out.append(VirtualInductionRecord(G, [make_term(G, 1, [a, b], [1, 0])], three, "A4 three-dim"))
    return out


def random_record(rng: random.Random, group_names=("S3", "D4", "Q8", "A4", "S4")) -> tuple[VirtualInductionRecord, int]:
    """A random signed combination of induced abelian characters and a random Frobenius."""
    G = named_group(rng.choice(list(group_names)))
    abelian = [H for H in G.subgroups() if G.is_abelian_subset(H)]
    terms = []
    for _ in range(rng.randint(1, 4)):
        H = rng.choice(abelian)
        gens = list(H)
        chars = AbelianSubgroupChars(G, H, gens)
        exps = rng.choice(chars.all_exps())
        a = rng.choice([-2, -1, 1, 2])
        terms.append(make_term(G, a, gens, list(exps)))
    frob = rng.randrange(G.order)
    return VirtualInductionRecord(G, terms, None, f"random {G.name}"), frob
