"""Exact bookkeeping for interpolation-formula matching.

Infinity types live on abstract CM-type index sets.  Archimedean factors,
signs, powers of i and 2, and opaque symbols (periods, sigma(2 delta)) are
collected in PiMonomial values, so every matching statement is an equality of
exponent vectors and rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .brauer import VirtualInductionRecord, euler_inductivity_check


class DegreeIdentityError(ValueError):
    """sum_j a_j d_j does not equal the degree r(rho)."""


class AdmissibilityError(ValueError):
    pass


# index sets


@dataclass(frozen=True)
class CMTypeMap:
    """Projection tau -> tau|_F from Sigma_{F_j} onto Sigma_F with equal fibers."""

    source: tuple
    target: tuple
    proj: dict
    degree: int

    def __post_init__(self):
        fibers = {s: 0 for s in self.target}
        for tau in self.source:
            sigma = self.proj[tau]
            if sigma not in fibers:
                raise ValueError(f"{tau!r} maps outside the target")
            fibers[sigma] += 1
        bad = {s: c for s, c in fibers.items() if c != self.degree}
        if bad:
            raise ValueError(f"fiber sizes {bad} differ from the degree {self.degree}")

    @classmethod
    def uniform(cls, target, degree: int) -> "CMTypeMap":
        target = tuple(target)
        source = tuple((s, i) for s in target for i in range(degree))
        return cls(source, target, {tau: tau[0] for tau in source}, degree)

    @classmethod
    def identity(cls, target) -> "CMTypeMap":
        target = tuple(target)
        return cls(target, target, {s: s for s in target}, 1)

    def fiber(self, sigma) -> list:
        return [tau for tau in self.source if self.proj[tau] == sigma]


def default_cm_type(size: int) -> tuple:
    return tuple(f"s{i}" for i in range(size))


@dataclass(frozen=True)
class ExponentLedger:
    """Multi-index a = (a_sigma) over an index set."""

    index: tuple
    values: tuple

    @classmethod
    def of(cls, mapping: dict) -> "ExponentLedger":
        keys = tuple(mapping)
        return cls(keys, tuple(int(mapping[k]) for k in keys))

    def as_dict(self) -> dict:
        return dict(zip(self.index, self.values))

    def norm(self) -> int:
        """|a| = sum_sigma a_sigma."""
        return sum(self.values)

    def __add__(self, other: "ExponentLedger") -> "ExponentLedger":
        if self.index != other.index:
            raise ValueError("different index sets")
        return ExponentLedger(self.index, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "ExponentLedger":
        return ExponentLedger(self.index, tuple(-a for a in self.values))

    def scale(self, c: int) -> "ExponentLedger":
        return ExponentLedger(self.index, tuple(c * a for a in self.values))

    def pullback(self, cmap: CMTypeMap) -> "ExponentLedger":
        if tuple(cmap.target) != self.index:
            raise ValueError("map target does not match the index set")
        d = self.as_dict()
        return ExponentLedger(cmap.source, tuple(d[cmap.proj[t]] for t in cmap.source))

    def fiber_sum(self, cmap: CMTypeMap) -> "ExponentLedger":
        d = self.as_dict()
        return ExponentLedger(cmap.target, tuple(sum(d[t] for t in cmap.fiber(s)) for s in cmap.target))

    def power_symbols(self, name: str, key=lambda s: s) -> dict:
        """The formal power w^a as symbol exponents name[key(sigma)] -> a_sigma."""
        out: dict = {}
        for s, a in zip(self.index, self.values):
            sym = f"{name}[{key(s)}]"
            out[sym] = out.get(sym, 0) + a
        return out


@dataclass(frozen=True)
class InfinityType:
    w: int
    r: ExponentLedger

    @classmethod
    def on(cls, w: int, r, index=None) -> "InfinityType":
        r = tuple(r)
        index = default_cm_type(len(r)) if index is None else tuple(index)
        return cls(int(w), ExponentLedger(index, r))

    @property
    def index(self) -> tuple:
        return self.r.index

    def admissible(self) -> bool:
        """-w - r_sigma <= -1 and r_sigma >= 0 for every sigma."""
        return all(-self.w - r <= -1 and r >= 0 for r in self.r.values)

    def t(self) -> ExponentLedger:
        return ExponentLedger(self.index, (1,) * len(self.index))

    def shifted(self) -> ExponentLedger:
        """-w t - r."""
        return ExponentLedger(self.index, tuple(-self.w - r for r in self.r.values))

    def to_json(self) -> dict:
        return {"w": self.w, "r": list(self.r.values)}


def pushforward_infinity(eta: InfinityType, cmap: CMTypeMap) -> InfinityType:
    """w_{eta_j} = w_eta and r_{eta_j, tau} = r_{eta, tau|F}."""
    return InfinityType(eta.w, eta.r.pullback(cmap))


# monomials


@dataclass(frozen=True)
class PiMonomial:
    """rat * pi^pi * i^i * prod sym^e, with i in {0, 1} after folding i^2 = -1 into rat."""

    rat: Fraction
    pi: int = 0
    i: int = 0
    syms: tuple = ()

    @classmethod
    def make(cls, rat=1, pi: int = 0, i: int = 0, syms: dict | None = None) -> "PiMonomial":
        rat = Fraction(rat)
        i %= 4
        if i >= 2:
            rat, i = -rat, i - 2
        clean = tuple(sorted((k, v) for k, v in (syms or {}).items() if v))
        return cls(rat, pi, i, clean)

    @classmethod
    def one(cls) -> "PiMonomial":
        return cls.make()

    def sym_dict(self) -> dict:
        return dict(self.syms)

    def __mul__(self, other: "PiMonomial") -> "PiMonomial":
        syms = self.sym_dict()
        for k, v in other.syms:
            syms[k] = syms.get(k, 0) + v
        return PiMonomial.make(self.rat * other.rat, self.pi + other.pi, self.i + other.i, syms)

    def inverse(self) -> "PiMonomial":
        if self.rat == 0:
            raise ZeroDivisionError("zero monomial")
        return PiMonomial.make(1 / self.rat, -self.pi, -self.i, {k: -v for k, v in self.syms})

    def __truediv__(self, other: "PiMonomial") -> "PiMonomial":
        return self * other.inverse()

    def __pow__(self, e: int) -> "PiMonomial":
        if e < 0:
            return self.inverse() ** (-e)
        return PiMonomial.make(self.rat**e, self.pi * e, self.i * e, {k: v * e for k, v in self.syms})

    def to_complex(self, pi_value: float = 3.141592653589793) -> complex:
        if self.syms:
            raise ValueError("opaque symbols have no numeric value")
        return complex(float(self.rat) * pi_value**self.pi) * (1j**self.i)

    def to_json(self) -> dict:
        return {
            "rat": [self.rat.numerator, self.rat.denominator],
            "pi": self.pi,
            "i": self.i % 4,
            "syms": dict(self.syms),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PiMonomial":
        return cls.make(Fraction(*obj["rat"]), obj["pi"], obj["i"], obj.get("syms", {}))


def gamma_C(m: int) -> PiMonomial:
    """Gamma_C(m) = 2 (2 pi)^-m (m-1)! for m >= 1."""
    if m <= 0:
        raise AdmissibilityError(f"Gamma_C has a pole at {m}")
    return PiMonomial.make(Fraction(2 * factorial(m - 1), 2**m), -m)


def arch_L(eta: InfinityType, degree: int) -> PiMonomial:
    """prod_sigma Gamma_C(w + r_sigma)^degree."""
    out = PiMonomial.one()
    for r in eta.r.values:
        if eta.w + r <= 0:
            raise AdmissibilityError(f"w + r_sigma = {eta.w + r} is outside the critical range")
        out = out * gamma_C(eta.w + r) ** degree
    return out


# matching statements


@dataclass(frozen=True)
class RecordSummary:
    """(a_j, d_j = [F_j:F]) pairs and the claimed degree r(rho)."""

    terms: tuple
    degree: int

    @classmethod
    def of(cls, terms, degree: int | None = None) -> "RecordSummary":
        terms = tuple((int(a), int(d)) for a, d in terms)
        if any(d < 1 for _, d in terms):
            raise ValueError("relative degrees must be positive")
        return cls(terms, sum(a * d for a, d in terms) if degree is None else int(degree))

    @classmethod
    def from_record(cls, record: VirtualInductionRecord) -> "RecordSummary":
        G = record.group
        return cls.of([(t.a, G.order // len(t.subgroup)) for t in record.terms], record.virtual_character().degree())

    def degree_ok(self) -> bool:
        return sum(a * d for a, d in self.terms) == self.degree

    def to_json(self) -> dict:
        return {"terms": [list(t) for t in self.terms], "degree": self.degree}


@dataclass
class MatchResult:
    ok: bool
    lhs: PiMonomial
    rhs: PiMonomial

    def to_json(self) -> dict:
        return {"ok": self.ok, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


def _require_degree(summary: RecordSummary, check_degree: bool):
    if check_degree and not summary.degree_ok():
        raise DegreeIdentityError(
            f"sum a_j d_j = {sum(a * d for a, d in summary.terms)} but r(rho) = {summary.degree}"
        )


def _per_term(summary: RecordSummary, eta: InfinityType, local) -> PiMonomial:
    out = PiMonomial.one()
    for a, d in summary.terms:
        cmap = CMTypeMap.uniform(eta.index, d)
        out = out * local(pushforward_infinity(eta, cmap), cmap) ** a
    return out


def archimedean_matching(summary: RecordSummary, eta: InfinityType, check_degree: bool = True) -> MatchResult:
    """prod_j L((psi_j eta_j)_inf, 0)^{a_j} against prod_sigma Gamma_C(w + r_sigma)^{r(rho)}."""
    _require_degree(summary, check_degree)
    lhs = _per_term(summary, eta, lambda eta_j, cmap: arch_L(eta_j, 1))
    rhs = arch_L(eta, summary.degree)
    return MatchResult(lhs == rhs, lhs, rhs)


PERIOD_SYMBOLS = ("C_p", "C_inf")


def _period_local(eta_j: InfinityType, cmap: CMTypeMap) -> PiMonomial:
    """C^{w t_j + 2 r_{eta_j}} over Sigma_{F_j}, with C_{F_j, tau} = C_{F, tau|F}."""
    exps = ExponentLedger(eta_j.index, tuple(eta_j.w + 2 * r for r in eta_j.r.values))
    syms: dict = {}
    for name in PERIOD_SYMBOLS:
        for k, v in exps.power_symbols(name, key=lambda tau: cmap.proj[tau]).items():
            syms[k] = syms.get(k, 0) + v
    return PiMonomial.make(syms=syms)


def period_matching(summary: RecordSummary, eta: InfinityType, check_degree: bool = True) -> MatchResult:
    """prod_j (C_{F_j}^{w t_j + 2 r_{eta_j}})^{a_j} against (C_F^{w t + 2 r_eta})^{r(rho)}."""
    _require_degree(summary, check_degree)
    lhs = _per_term(summary, eta, _period_local)
    rhs = _period_local(eta, CMTypeMap.identity(eta.index)) ** summary.degree
    return MatchResult(lhs == rhs, lhs, rhs)


def _constants_local(eta_j: InfinityType, cmap: CMTypeMap, d: int) -> PiMonomial:
    """(-1)^{w d [F_j:F]} i^{|-w t_j - r_j|} / (2^{d [F_j:F]} (2 delta)^{r_j})."""
    dj = cmap.degree
    sign = -1 if (eta_j.w * d * dj) % 2 else 1
    delta = eta_j.r.power_symbols("sigma(2delta)", key=lambda tau: cmap.proj[tau])
    top = PiMonomial.make(sign, 0, eta_j.shifted().norm())
    bottom = PiMonomial.make(Fraction(2) ** (d * dj), syms=delta)
    return top / bottom


def constants_matching(summary: RecordSummary, eta: InfinityType, check_degree: bool = True) -> MatchResult:
    """Signs, powers of i and 2, and sigma(2 delta) symbols on both sides."""
    _require_degree(summary, check_degree)
    d = len(eta.index)
    lhs = _per_term(summary, eta, lambda eta_j, cmap: _constants_local(eta_j, cmap, d))
    rhs = _constants_local(eta, CMTypeMap.identity(eta.index), d) ** summary.degree
    return MatchResult(lhs == rhs, lhs, rhs)


@dataclass
class LedgerSweep:
    checked: int
    passed: int
    controls: int
    controls_failed: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.checked and self.controls_failed == self.controls


def random_eta(rng: random.Random, max_places: int = 3, max_w: int = 6, max_r: int = 4) -> InfinityType:
    size = rng.randint(1, max_places)
    w = rng.randint(0, max_w)
    lo = 1 if w == 0 else 0
    return InfinityType.on(w, [rng.randint(lo, max_r) for _ in range(size)])


def random_summary(rng: random.Random, max_terms: int = 4) -> RecordSummary:
    while True:
        terms = [(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 6)) for _ in range(rng.randint(1, max_terms))]
        s = RecordSummary.of(terms)
        if s.degree >= 1:
            return s


MATCHERS = {"archimedean": archimedean_matching, "period": period_matching, "constants": constants_matching}


def ledger_sweep(count: int, seed: int) -> dict[str, LedgerSweep]:
    """Random signed records with the degree identity, plus r(rho) +- 1 negative controls."""
    rng = random.Random(seed)
    out = {name: LedgerSweep(0, 0, 0, 0) for name in MATCHERS}
    for case in range(count):
        summary = random_summary(rng)
        eta = random_eta(rng)
        bad = RecordSummary(summary.terms, summary.degree + rng.choice([-1, 1]))
        for name, fn in MATCHERS.items():
            sweep = out[name]
            res = fn(summary, eta)
            sweep.checked += 1
            if res.ok:
                sweep.passed += 1
            else:
                sweep.failures.append({"case": case, "summary": summary.to_json(), "eta": eta.to_json()})
            sweep.controls += 1
            try:
                fn(bad, eta)
                raised = False
            except DegreeIdentityError:
                raised = True
            if raised and not fn(bad, eta, check_degree=False).ok:
                sweep.controls_failed += 1
    return out


@dataclass
class PEulerResult:
    ok: bool
    inductivity_ok: bool
    dual_ok: bool
    dual_matches: bool
    specializations_ok: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def unramified_p_euler_matching(
    record: VirtualInductionRecord, frob: int, eta=None, q: int = 5
) -> PEulerResult:
    """Euler inductivity for rho (x) eta and its dual, plus specializations at T = 1 and T = 1/q."""
    rec = record.twisted(eta) if eta is not None else record
    dual = rec.dual()
    main = euler_inductivity_check(rec, frob)
    back = euler_inductivity_check(dual, frob)
    # the dual's linear factors are the inverses of the original's
    L = main.modulus
    dual_factors = {int(t) * (L // back.modulus): v for t, v in back.rhs_factors.items()}
    dual_matches = dual_factors == {(-int(t)) % L: v for t, v in main.rhs_factors.items()}
    spec_ok = True
    for check in (main, back):
        lp, ln = check.polys["lhs"]
        rp, rn = check.polys["rhs"]
        for t in (Fraction(1), Fraction(1, q)):
            a, da = (lp * rn).evaluate(t)
            b, db = (rp * ln).evaluate(t)
            spec_ok = spec_ok and a * db == b * da
    ok = main.ok and back.ok and dual_matches and spec_ok
    return PEulerResult(ok, main.ok, back.ok, dual_matches, spec_ok)
