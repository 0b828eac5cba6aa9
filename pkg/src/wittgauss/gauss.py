"""Gauss sums over W_n(F_q), closed forms, quadratic partial sums, DH and local epsilon.

The Gauss sum tau(chi) = sum_{x in W_n(F_q)} chi(x) psi(x) is always taken over
the whole ring with chi = 0 off the units.  ``GaussEngine`` evaluates it for
batches of characters at once: each term is a root of unity zeta_m^e, so the
sum is the histogram of e reduced modulo Phi_m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chars import (
    AddChar,
    MultChar,
    conductor_exp,
    enumerate_mult_chars,
    extension_ring,
    solve_epsilon_char,
    unit_group,
)
from .cyclo import CyclotomicInt, ScaledCyclotomic, lcm, reduce_histograms
from .ff import FiniteField, make_field
from .witt import WittRing, norm_array, ring_bound, witt_embedding, witt_ring

CONVENTIONS = {"appendix": 1, "global-sign": -1}
_BATCH_CELLS = 1 << 22


def convention_sign(convention: str) -> int:
    try:
        return CONVENTIONS[convention]
    except KeyError:
        raise ValueError(f"unknown convention {convention!r}") from None


def dh_sign(n: int, s: int) -> int:
    """(-1)^(n(s-1))."""
    return -1 if (n * (s - 1)) % 2 else 1


@dataclass
class GaussSumResult:
    value: CyclotomicInt
    char: dict
    add_char: dict
    term_count: int

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "char": self.char,
            "add_char": self.add_char,
            "term_count": self.term_count,
        }


class GaussEngine:
    """Sums sum_{x in ring} chi(Nr x) psi(x) for characters chi of ``base``.

    ``ring`` is W_n(F_{q^s}) (or ``base`` itself); chi o Nr is the norm
    inflation.  Summation runs over every ring element.
    """

    def __init__(self, psi: AddChar, base: WittRing | None = None):
        ring = psi.ring
        base = ring if base is None else base
        self.ring, self.base, self.psi = ring, base, psi
        self.group = unit_group(base)
        X = np.arange(ring.size, dtype=np.int64)
        norm_idx = X if ring == base else norm_array(ring, base, X)
        self.mask = self.group.unit_mask[norm_idx]
        self.dlog = np.where(self.mask[:, None], self.group.dlog[norm_idx], 0)
        self.add_exp = psi.exponent_array(X)
        self.N = ring.N

    def sums(self, chars: list[MultChar]) -> list[CyclotomicInt]:
        """Gauss sums for ``chars`` in input order; tau(chi) lies in Z[zeta_m], m = lcm(p^n, ord chi)."""
        out: list = [None] * len(chars)
        by_order: dict[int, list[int]] = {}
        for i, chi in enumerate(chars):
            if chi.group is not self.group:
                raise ValueError("character of a different unit group")
            by_order.setdefault(chi.order, []).append(i)
        E = self.group.exponent
        weights = self.mask.astype(np.float64)
        size = self.ring.size
        batch = max(1, _BATCH_CELLS // max(size, 1))
        for order, idxs in sorted(by_order.items()):
            m = lcm(self.N, order)
            step_mult = E // order
            add_part = (self.add_exp * (m // self.N)) % m
            for start in range(0, len(idxs), batch):
                chunk = idxs[start : start + batch]
                coef = np.array(
                    [np.array(chars[i].exps, dtype=np.int64) * self.group.scale for i in chunk],
                    dtype=np.int64,
                ).reshape(len(chunk), -1)
                if coef.shape[1]:
                    mult = (self.dlog @ coef.T) % E
                else:
                    mult = np.zeros((size, len(chunk)), dtype=np.int64)
                expo = ((mult // step_mult) * (m // order) + add_part[:, None]) % m
                expo += np.arange(len(chunk), dtype=np.int64)[None, :] * m
                hist = np.bincount(
                    expo.ravel(),
                    weights=np.repeat(weights, len(chunk)),
                    minlength=len(chunk) * m,
                ).reshape(len(chunk), m)
                for i, val in zip(chunk, reduce_histograms(m, np.rint(hist).astype(np.int64))):
                    out[i] = val
        return out


def gauss_sum(chi: MultChar, psi: AddChar) -> GaussSumResult:
    if chi.ring != psi.ring:
        raise ValueError("characters over different rings")
    value = GaussEngine(psi).sums([chi])[0]
    return GaussSumResult(value, chi.to_json(), psi.to_json(), chi.ring.size)


def gauss_sum_naive(chi: MultChar, psi: AddChar, ext: WittRing | None = None) -> CyclotomicInt:
    """Double-loop oracle: sum of chi(Nr x) * psi(x) as CyclotomicInt products, one term at a time."""
    from .witt import WittElement, witt_norm

    base = chi.ring
    ring = base if ext is None else ext
    if psi.ring != ring:
        raise ValueError("additive character lives on a different ring")
    m = lcm(ring.N, chi.order)
    total = CyclotomicInt.zero(m)
    for x in range(ring.size):
        y = x if ring == base else witt_norm(WittElement(ring, x), base).value
        total = total + chi.value(y, m) * psi.value(x, m)
    return total


def _lift_to(eps, ring: WittRing) -> int:
    return ring.lift_from(eps.value, eps.parent)


def closed_form_even(chi: MultChar, psi: AddChar) -> CyclotomicInt:
    """q^r chi(eps~) psi(eps~) for n = 2r and conductor exactly n."""
    ring = chi.ring
    n = ring.n
    if n % 2:
        raise ValueError("closed_form_even needs even n")
    if conductor_exp(chi) != n:
        raise ValueError("closed form is only asserted for conductor exactly p^n")
    r = n // 2
    eps = solve_epsilon_char(chi, psi, r)
    eps_t = _lift_to(eps, ring)
    m = lcm(ring.N, chi.order)
    a = chi.exponent_of(eps_t)
    if a is None:
        raise ArithmeticError("eps is not a unit despite full conductor")
    e = a * m // chi.group.exponent + psi.exponent_of(eps_t) * (m // ring.N)
    return CyclotomicInt.zeta(m, e) * (ring.q**r)


def closed_form_odd(chi: MultChar, psi: AddChar) -> CyclotomicInt:
    """q^r chi(eps~) psi_n(eps~) * sum_delta chi(1 + p^r [delta]) psi_{r+1}(eps~ [delta]), n = 2r + 1.

    For n = 1 (r = 0) eps~ = 1 and this is the classical sum over F_q.
    """
    ring = chi.ring
    n, p, q = ring.n, ring.p, ring.q
    if n % 2 == 0:
        raise ValueError("closed_form_odd needs odd n")
    r = n // 2
    m = lcm(ring.N, chi.order)
    E = chi.group.exponent
    if r == 0:
        eps_t = 1
    else:
        eps = solve_epsilon_char(chi, psi, r)
        if not eps.parent.is_unit(eps.value):
            return CyclotomicInt.zero(m)
        eps_t = _lift_to(eps, ring)
    a = chi.exponent_of(eps_t)
    lead = a * m // E + psi.exponent_of(eps_t) * (m // ring.N)
    upper = witt_ring(ring.base, r + 1)
    psi_up = psi.at_level(r + 1)
    eps_up = ring.project_int(eps_t, r + 1)
    teich_n = ring.teichmuller_table()
    teich_up = upper.teichmuller_table()
    hist = np.zeros(m, dtype=np.int64)
    for delta in range(q):
        u = ring.add(1, ring.smul(p**r, int(teich_n[delta])))
        b = chi.exponent_of(u)
        if b is None:
            # only possible for r = 0, where 1 + [delta] can vanish mod p
            continue
        c = psi_up.exponent_of(upper.mul(eps_up, int(teich_up[delta])))
        hist[(lead + b * m // E + c * (m // upper.N)) % m] += 1
    return reduce_histograms(m, hist[None, :])[0] * (q**r)


def quadratic_partial_sum(F: FiniteField, nu: int, w: int, kappa: int = 1, sign: int = 1) -> CyclotomicInt:
    """sigma_nu(-[w]_2) = sum_{delta in F_{q^nu}} psi_2(-[w delta^2]_2), in Z[zeta_8].

    ``w`` is a unit of F (field encoding), ``kappa`` a unit of W_2(F).
    """
    if F.p != 2:
        raise ValueError("the partial sum sigma^(2) is defined for p = 2")
    if w == 0:
        raise ValueError("w must be a unit")
    base = witt_ring(F, 2)
    E = make_field(2, F.k * nu, bound=ring_bound())
    ext = witt_ring(E, 2)
    psi = AddChar(base, kappa, sign).extend(ext) if nu > 1 else AddChar(base, kappa, sign)
    w_ext = int(E.embedding(F)[w])
    teich = ext.teichmuller_table()
    hist = np.zeros(4, dtype=np.int64)
    for delta in range(E.q):
        t = int(teich[E.mul(w_ext, E.mul(delta, delta))])
        hist[psi.exponent_of(ext.neg(t))] += 1
    return CyclotomicInt.from_exponent_counts(4, hist).embed(8)


def literal_sigma2_constant(F: FiniteField, nu: int) -> CyclotomicInt:
    """-(-(1 + i))^(nu ord_p(q)), recorded next to sigma^(2) but never asserted."""
    base = -(CyclotomicInt.one(4) + CyclotomicInt.zeta(4, 1))
    return (-(base ** (nu * F.k))).embed(8)


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass
class QuadraticReduction:
    direct: CyclotomicInt
    prefactor: CyclotomicInt
    legendre_gauss: CyclotomicInt

    @property
    def holds(self) -> bool:
        return self.prefactor * self.legendre_gauss == self.direct


def quadratic_gauss_reduction(F: FiniteField, nu: int, w: int, b: int, kappa: int = 1, sign: int = 1) -> QuadraticReduction:
    """sum_delta psi(2^-1 w delta^2 + b delta) against psi(-2^-1 w^-1 b^2) (Nr(2 w^-1)/p) tau(Legendre o Nr).

    Everything is over F_{q^nu} at level 1; w in F^x and b in F are field encodings.
    """
    p = F.p
    if p == 2:
        raise ValueError("the Legendre reduction needs p odd")
    if w == 0:
        raise ValueError("w must be a unit")
    Fp = make_field(p, 1, bound=p)
    E = make_field(p, F.k * nu, bound=ring_bound())
    emb = E.embedding(F)
    kap = int(emb[kappa])

    def psi_E(x: int) -> int:
        return (sign * E.rel_trace_int(E.mul(kap, x), Fp)) % p

    def psi_F(x: int) -> int:
        return (sign * F.rel_trace_int(F.mul(kappa, x), Fp)) % p

    two_inv = F.inv(F.from_coeffs([2]))
    w_e, b_e = int(emb[w]), int(emb[b])
    coef = E.mul(int(emb[two_inv]), w_e)
    hist = [0] * p
    for d in range(E.q):
        x = E.add(E.mul(coef, E.mul(d, d)), E.mul(b_e, d))
        hist[psi_E(x)] += 1
    direct = CyclotomicInt.from_exponent_counts(p, hist)
    shift = F.neg(F.mul(two_inv, F.mul(F.inv(w), F.mul(b, b))))
    leg = _legendre(F.rel_norm_int(F.mul(F.from_coeffs([2]), F.inv(w)), Fp), p)
    prefactor = CyclotomicInt.zeta(p, nu * psi_F(shift)) * (leg**nu)
    hist = [0] * p
    for x in range(1, E.q):
        hist[psi_E(x)] += _legendre(E.rel_norm_int(x, Fp), p)
    legendre_gauss = CyclotomicInt.from_exponent_counts(p, hist)
    return QuadraticReduction(direct, prefactor, legendre_gauss)


@dataclass
class DHCase:
    char: dict
    lhs: CyclotomicInt
    rhs: CyclotomicInt

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class DHReport:
    p: int
    k: int
    n: int
    s: int
    sign: int
    convention: str
    kappa: list
    cases: list[DHCase] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> list[DHCase]:
        return [c for c in self.cases if not c.ok]


def dh_verify(
    p: int,
    k: int,
    n: int,
    s: int,
    kappa: int = 1,
    convention: str = "appendix",
    bound: int | None = None,
) -> DHReport:
    """tau(chi o Nr) over W_n(F_{q^s}) against (-1)^(n(s-1)) tau(chi)^s, for every chi."""
    bound = ring_bound() if bound is None else bound
    if (p**k) ** (n * s) > bound:
        raise ValueError(f"q^(ns) = {(p**k) ** (n * s)} exceeds the bound {bound}")
    sign = convention_sign(convention)
    F = make_field(p, k, bound=bound)
    base = witt_ring(F, n, bound=bound)
    if not base.is_unit(kappa):
        raise ValueError("kappa must be a unit of W_n(F_q)")
    ext = extension_ring(base, s, bound) if s > 1 else base
    psi = AddChar(base, kappa, sign)
    psi_ext = psi.extend(ext) if s > 1 else AddChar(base, kappa, sign)
    chars = enumerate_mult_chars(base)
    base_vals = GaussEngine(psi).sums(chars)
    ext_vals = GaussEngine(psi_ext, base).sums(chars)
    eps = dh_sign(n, s)
    report = DHReport(p, k, n, s, eps, convention, base.digits(kappa))
    for chi, b, e in zip(chars, base_vals, ext_vals):
        rhs = b**s * eps if s > 1 else b * eps
        report.cases.append(DHCase(chi.to_json(), e, rhs))
    return report


@dataclass
class RootOfUnityTimesRational:
    """c * zeta_m^a, the value of eta at a uniformiser."""

    c: Fraction
    m: int = 1
    a: int = 0

    def power(self, e: int) -> ScaledCyclotomic:
        return ScaledCyclotomic.of(Fraction(self.c) ** e, CyclotomicInt.zeta(self.m, self.a * e))


@dataclass
class EpsilonFactorResult:
    value: ScaledCyclotomic
    conductor_exp: int
    route_sum: ScaledCyclotomic
    shells: list
    uniformizer_value: RootOfUnityTimesRational
    twist: list
    convention: str

    @property
    def consistent(self) -> bool:
        return self.value.same_as(self.route_sum)

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "route_integral": self.route_sum.to_json(),
            "conductor_exp": self.conductor_exp,
            "uniformizer": {
                "rat": [self.uniformizer_value.c.numerator, self.uniformizer_value.c.denominator],
                "root": [self.uniformizer_value.m, self.uniformizer_value.a],
            },
            "twist": self.twist,
            "convention": self.convention,
            "consistent": self.consistent,
        }


def twisted_unit_sum(eta: MultChar, u: int, j: int, sign: int) -> CyclotomicInt:
    """S_j = sum_{x in W_e^x} eta(x) psi_e^(u)(p^j x)."""
    ring = eta.ring
    psi = AddChar(ring, u, sign)
    units = ring.units_array()
    m = lcm(ring.N, eta.order)
    E = eta.group.exponent
    mult = (eta.exponent_array(units) * m) // E
    scaled = ring.digit_array(units) * (ring.p**j)
    add = ((scaled @ psi.weights) % ring.N) * (m // ring.N)
    hist = np.bincount((mult + add) % m, minlength=m)
    return reduce_histograms(m, hist[None, :])[0]


def local_epsilon(
    eta: MultChar | None,
    twist: int,
    e: int,
    uniformizer_value: RootOfUnityTimesRational | None = None,
    convention: str = "appendix",
    q: int | None = None,
) -> EpsilonFactorResult:
    """epsilon(eta, e^(2 delta), dx)^-1 = (Nv eta(pi))^-e sum_{x in W_e^x} eta(x) psi_e(u x).

    ``eta`` is the unit part, a character of W_e(F_q)^x of conductor exactly e;
    ``twist`` is the unit u standing for (2 delta)^-1.  The second route sums
    the normalised integral over the shells p^(j-e) r^x, j = 0..e.
    """
    sign = convention_sign(convention)
    uv = uniformizer_value or RootOfUnityTimesRational(Fraction(1))
    if e == 0:
        one = ScaledCyclotomic.of(1, CyclotomicInt.one(1))
        return EpsilonFactorResult(one, 0, one, [], uv, [], convention)
    ring = eta.ring
    if ring.n != e:
        raise ValueError("eta must be a character of W_e(F_q)^x")
    if conductor_exp(eta) != e:
        raise ValueError(f"eta has conductor {conductor_exp(eta)}, expected {e}")
    if not ring.is_unit(twist):
        raise ValueError("twist must be a unit")
    Nv = ring.q
    s0 = twisted_unit_sum(eta, twist, 0, sign)
    value = ScaledCyclotomic.of(Fraction(1, Nv**e), s0) * uv.power(-e)
    route = None
    shells = []
    for j in range(e + 1):
        sj = twisted_unit_sum(eta, twist, j, sign)
        shells.append(sj)
        term = ScaledCyclotomic.of(Fraction(1, Nv ** (e + j)), sj) * uv.power(j - e)
        route = term if route is None else route + term
    return EpsilonFactorResult(value, e, route, shells, uv, ring.digits(twist), convention)
