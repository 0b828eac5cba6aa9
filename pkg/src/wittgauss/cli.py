"""Command-line driver for the identity suites.

Every suite is split into tasks (one per grid point or corpus), tasks run in a
process pool, and results are merged in task order, so a report depends only
on its configuration.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__

SCHEMA = "wittgauss.report/1"
DEFAULT_SEED = 7

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'3', '1..3' or '2,3,5' -> sorted list of ints."""
    out: set[int] = set()
    try:
        for part in str(text).split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..")
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise ConfigError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad range {text!r}") from None
    return sorted(out)


@dataclass
class SuiteConfig:
    suite: str
    p: list = field(default_factory=list)
    k: list = field(default_factory=list)
    n: list = field(default_factory=list)
    s: list = field(default_factory=list)
    bound: int = 1 << 16
    convention: str = "appendix"
    kappa: str = "teichmuller"
    workers: int = 1
    seed: int = DEFAULT_SEED
    format: str = "json"
    out: str | None = None
    values: str = "full"
    options: dict = field(default_factory=dict)

    def record(self) -> dict:
        d = asdict(self)
        for key in ("workers", "out", "format"):
            d.pop(key)
        return d


# value rendering


def _canon(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render_value(value, mode: str):
    obj = value.to_json() if hasattr(value, "to_json") else value
    if mode == "digest":
        return {"sha256": hashlib.sha256(_canon(obj).encode()).hexdigest()[:16]}
    return obj


def _pair(lhs, rhs):
    """Embed two CyclotomicInts into a common ring so equal values serialise identically."""
    from .cyclo import CyclotomicInt, lcm

    if isinstance(lhs, CyclotomicInt) and isinstance(rhs, CyclotomicInt):
        m = lcm(lhs.m, rhs.m)
        return lhs.embed(m), rhs.embed(m)
    return lhs, rhs


def make_case(suite, kind, identity, inputs, lhs, rhs, ok, mode, extra=None) -> dict:
    lhs, rhs = _pair(lhs, rhs)
    case = {
        "suite": suite,
        "kind": kind,
        "identity": identity,
        "inputs": inputs,
        "lhs": render_value(lhs, mode),
        "rhs": render_value(rhs, mode),
        "ok": bool(ok),
    }
    if extra:
        case["detail"] = extra
    return case


def _approx(value) -> str:
    if isinstance(value, dict) and "m" in value and "coeffs" in value:
        from .cyclo import CyclotomicInt

        z = CyclotomicInt.from_json(value).to_complex()
        return f"{z.real:.12g}{z.imag:+.12g}j"
    if isinstance(value, dict) and "scale" in value:
        from fractions import Fraction

        from .cyclo import CyclotomicInt

        z = float(Fraction(*value["scale"])) * CyclotomicInt.from_json(value["value"]).to_complex()
        return f"{z.real:.12g}{z.imag:+.12g}j"
    return _canon(value)


# kappa


def resolve_kappa(spec: str, ring) -> int:
    """'teichmuller', 'teichmuller:<hex>' (field element) or 'unit:<hex>' (ring element)."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "teichmuller":
            x = int(arg, 16) if arg else 1
            if not 0 < x < ring.q:
                raise ConfigError(f"teichmuller argument {arg!r} is not a nonzero field element")
            return ring.teichmuller_int(x)
        if kind == "unit":
            x = int(arg, 16)
            if not 0 <= x < ring.size or not ring.is_unit(x):
                raise ConfigError(f"kappa {arg!r} is not a unit of W_{ring.n}(F_{ring.q})")
            return x
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad kappa {spec!r}") from None
    raise ConfigError(f"bad kappa {spec!r}")


# tasks


def task_dh(p, k, n, s, opts) -> list[dict]:
    from .ff import make_field
    from .gauss import dh_verify
    from .witt import witt_ring

    base = witt_ring(make_field(p, k, bound=opts["bound"]), n, bound=opts["bound"])
    kappa = resolve_kappa(opts["kappa"], base)
    rep = dh_verify(p, k, n, s, kappa=kappa, convention=opts["convention"], bound=opts["bound"])
    return [
        make_case(
            "dh", "dh", "davenport-hasse",
            {"p": p, "k": k, "n": n, "s": s, "char": c.char["exps"], "sign": rep.sign},
            c.lhs, c.rhs, c.ok, opts["values"],
        )
        for c in rep.cases
    ]


def task_gauss(p, k, n, opts) -> list[dict]:
    from .chars import AddChar, conductor_exp, enumerate_mult_chars
    from .cyclo import CyclotomicInt
    from .ff import make_field
    from .gauss import GaussEngine, closed_form_even, closed_form_odd, convention_sign
    from .witt import witt_ring

    ring = witt_ring(make_field(p, k, bound=opts["bound"]), n, bound=opts["bound"])
    psi = AddChar(ring, resolve_kappa(opts["kappa"], ring), convention_sign(opts["convention"]))
    chars = enumerate_mult_chars(ring)
    values = GaussEngine(psi).sums(chars)
    mode = opts["values"]
    want = opts.get("closed_form", "auto")
    qn = ring.q**n
    out = []
    for chi, tau in zip(chars, values):
        inputs = {"p": p, "k": k, "n": n, "char": list(chi.exps)}
        if conductor_exp(chi) == n:
            if want in ("auto", "even") and n % 2 == 0:
                cf = closed_form_even(chi, psi)
                out.append(make_case("gauss", "closed-even", "closed-form-even", inputs, cf, tau, cf == tau, mode))
            if want in ("auto", "odd") and n % 2 == 1:
                cf = closed_form_odd(chi, psi)
                out.append(make_case("gauss", "closed-odd", "closed-form-odd", inputs, cf, tau, cf == tau, mode))
            absval = tau * tau.conj()
            out.append(make_case("gauss", "abs", "absolute-value", inputs, absval, CyclotomicInt.integer(qn, 1),
                                 absval == qn, mode))
        elif n == 1:
            # the only deficient character at level 1 is the trivial one: tau = -1
            out.append(make_case("gauss", "trivial-level-one", "trivial-character-level-one", inputs, tau,
                                 CyclotomicInt.integer(-1, 1), tau == -1, mode))
        else:
            out.append(make_case("gauss", "vanish", "deficient-conductor-vanishing", inputs, tau,
                                 CyclotomicInt.zero(1), not tau, mode))
    return out


def task_trace(p, k, opts) -> list[dict]:
    from .ff import make_field
    from .witt import trace_gram_det_unit, witt_ring

    F = make_field(p, k, bound=max(opts["bound"], p**k))
    out = []
    # the Gram matrix mod p is the trace form of F_q over F_p, computed in the field itself
    basis = [F.from_coeffs([int(j == i) for j in range(k)]) for i in range(k)]
    field_gram = [[F.rel_trace_int(F.mul(a, b), make_field(p, 1, bound=p)) % p for b in basis] for a in basis]
    field_rank = _rank_mod_p(field_gram, p)
    for r in (1, 2, 3):
        ring = witt_ring(F, r, bound=max(opts["bound"], F.q**r))
        gram = ring.trace_gram()
        reduced = [[x % p for x in row] for row in gram]
        ok = trace_gram_det_unit(ring) and field_rank == k and reduced == field_gram
        out.append(make_case("trace", "gram", "trace-pairing-perfect", {"p": p, "k": k, "r": r},
                             {"gram": gram}, {"field_gram": field_gram, "rank": field_rank}, ok, opts["values"]))
    return out


def _rank_mod_p(mat, p) -> int:
    a = [[x % p for x in row] for row in mat]
    rank, cols = 0, len(a[0]) if a else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def task_sigma2(k, s_values, opts) -> list[dict]:
    from .ff import make_field
    from .gauss import convention_sign, literal_sigma2_constant, quadratic_partial_sum
    from .witt import witt_ring

    F = make_field(2, k)
    ring = witt_ring(F, 2)
    sign = convention_sign(opts["convention"])
    out = []
    for kappa in [int(u) for u in ring.units_array()]:
        for w in range(1, F.q):
            s1 = quadratic_partial_sum(F, 1, w, kappa, sign)
            for s in s_values:
                ss = quadratic_partial_sum(F, s, w, kappa, sign)
                lhs = (-s1) ** s
                rhs = -ss
                out.append(make_case(
                    "sigma2", "power", "sigma2-power-relation",
                    {"q": F.q, "s": s, "w": w, "kappa": ring.digits(kappa)},
                    lhs, rhs, lhs == rhs, opts["values"],
                    {"literal_constant": literal_sigma2_constant(F, s).to_json(), "asserted": False},
                ))
                norm = ss * ss.conj()
                out.append(make_case(
                    "sigma2", "abs", "sigma2-absolute-value",
                    {"q": F.q, "s": s, "w": w, "kappa": ring.digits(kappa)},
                    norm, 2 ** (s * k), norm == 2 ** (s * k), opts["values"],
                ))
    return out


def task_quadratic(p, k, nu, opts) -> list[dict]:
    from .ff import make_field
    from .gauss import convention_sign, quadratic_gauss_reduction

    F = make_field(p, k)
    sign = convention_sign(opts["convention"])
    out = []
    for w in range(1, F.q):
        for b in range(F.q):
            red = quadratic_gauss_reduction(F, nu, w, b, 1, sign)
            out.append(make_case("quadratic", "reduction", "quadratic-to-legendre",
                                 {"p": p, "k": k, "nu": nu, "w": w, "b": b},
                                 red.direct, red.prefactor * red.legendre_gauss, red.holds, opts["values"]))
    return out


def task_epsilon(p, k, e, opts) -> list[dict]:
    from fractions import Fraction

    from .chars import conductor_exp, enumerate_mult_chars
    from .ff import make_field
    from .gauss import RootOfUnityTimesRational, local_epsilon
    from .witt import witt_ring

    ring = witt_ring(make_field(p, k, bound=opts["bound"]), e, bound=opts["bound"])
    out = []
    uniformizers = [RootOfUnityTimesRational(Fraction(1)), RootOfUnityTimesRational(Fraction(1), 4, 1)]
    for eta in enumerate_mult_chars(ring):
        if conductor_exp(eta) != e:
            continue
        for u in [int(x) for x in ring.units_array()]:
            for uv in uniformizers:
                res = local_epsilon(eta, u, e, uv, opts["convention"])
                out.append(make_case(
                    "epsilon", "routes", "epsilon-two-routes",
                    {"p": p, "k": k, "e": e, "char": list(eta.exps), "twist": ring.digits(u),
                     "uniformizer": [uv.m, uv.a]},
                    res.value, res.route_sum, res.consistent, opts["values"],
                ))
    return out


def task_mackey(group_name, opts) -> list[dict]:
    from .brauer import AbelianSubgroupChars, mackey_check, named_group, trivial_character

    G = named_group(group_name)
    subs = G.subgroups()
    out = []
    for hi, H in enumerate(subs):
        if G.is_abelian_subset(H):
            chars = AbelianSubgroupChars(G, H)
            pairs = [(list(ex), chars.character(ex)) for ex in chars.all_exps()]
        else:
            pairs = [("trivial", trivial_character(G, H))]
        for label, psi in pairs:
            for di, D in enumerate(subs):
                res = mackey_check(psi, D)
                out.append(make_case("mackey", "mackey", "mackey-decomposition",
                                     {"group": group_name, "H": list(H), "char": label, "D": list(D)},
                                     res.lhs.to_json(), res.rhs.to_json(), res.ok, opts["values"]))
    return out


def task_reciprocity(group_name, opts) -> list[dict]:
    from .brauer import AbelianSubgroupChars, induce, inner_product, named_group, restrict

    G = named_group(group_name)
    pairs = []
    for H in G.subgroups():
        if G.is_abelian_subset(H):
            chars = AbelianSubgroupChars(G, H)
            pairs += [(H, list(ex), chars.character(ex)) for ex in chars.all_exps()]
    induced = [induce(psi) for _, _, psi in pairs]
    out = []
    for (H, label, psi), ind in zip(pairs, induced):
        for (H2, label2, _), chi in zip(pairs, induced):
            lhs = inner_product(ind, chi)
            rhs = inner_product(psi, restrict(chi, H))
            out.append(make_case("mackey", "reciprocity", "frobenius-reciprocity",
                                 {"group": group_name, "H": list(H), "char": label, "H2": list(H2), "char2": label2},
                                 str(lhs), str(rhs), lhs == rhs, opts["values"]))
    return out


def task_frobdet(opts) -> list[dict]:
    from .brauer import frob_det_induced

    out = []
    for f in range(1, 7):
        for order in range(1, 9):
            for e in range(1, 5):
                for j in range(order):
                    res = frob_det_induced(f * order, f, j, e)
                    out.append(make_case("euler", "frob-det", "frobenius-determinant",
                                         {"N": f * order, "f": f, "psi": j, "e": e},
                                         res.det, res.expected, res.ok, opts["values"]))
    return out


def task_euler(opts) -> list[dict]:
    from .brauer import euler_inductivity_check, random_record, record_corpus, sign_ledger

    out = []
    mode = opts["values"]

    def run(rec, frob, label):
        chk = euler_inductivity_check(rec, frob)
        out.append(make_case("euler", "inductivity", "euler-inductivity",
                             {"record": label, "group": rec.group.name, "frob": frob, "terms": rec.to_json()["terms"]},
                             {"factors": chk.lhs_factors, "modulus": chk.modulus},
                             {"factors": chk.rhs_factors, "modulus": chk.modulus},
                             chk.ok and rec.consistent(), mode, chk.to_json() if not chk.ok else None))
        for e in range(1, 5):
            led = sign_ledger(rec, frob, e)
            out.append(make_case("euler", "sign", "signature-ledger",
                                 {"record": label, "group": rec.group.name, "frob": frob, "e": e},
                                 led.dh_sign, led.frob_sign, led.ok, mode))

    for rec in record_corpus():
        for frob in range(rec.group.order):
            run(rec, frob, rec.name)
    rng = random.Random(opts["seed"])
    for i in range(opts.get("random_records", 200)):
        rec, frob = random_record(rng)
        run(rec, frob, f"random-{i}")
    return out


def task_interp(opts) -> list[dict]:
    from .brauer import named_group, record_corpus, trivial_character
    from .interp import MATCHERS, DegreeIdentityError, random_eta, random_summary, RecordSummary, unramified_p_euler_matching

    mode = opts["values"]
    out = []
    rng = random.Random(opts["seed"])
    for case in range(opts.get("random", 1000)):
        summary = random_summary(rng)
        eta = random_eta(rng)
        bad = RecordSummary(summary.terms, summary.degree + rng.choice([-1, 1]))
        for name, fn in MATCHERS.items():
            res = fn(summary, eta)
            inputs = {"case": case, "summary": summary.to_json(), "eta": eta.to_json()}
            out.append(make_case("interp", name, f"{name}-matching", inputs, res.lhs, res.rhs, res.ok, mode))
            try:
                fn(bad, eta)
                raised = False
            except DegreeIdentityError:
                raised = True
            unchecked = fn(bad, eta, check_degree=False)
            out.append(make_case("interp", f"{name}-control", f"{name}-degree-control",
                                 {"case": case, "summary": bad.to_json(), "eta": eta.to_json()},
                                 unchecked.lhs, unchecked.rhs, raised and not unchecked.ok, mode))
    for rec in record_corpus():
        G = rec.group
        for frob in range(G.order):
            res = unramified_p_euler_matching(rec, frob)
            out.append(make_case("interp", "p-euler", "unramified-p-euler",
                                 {"record": rec.name, "frob": frob}, res.to_json(), res.to_json(), res.ok, mode))
    return out


TASKS = {
    "dh": task_dh,
    "gauss": task_gauss,
    "trace": task_trace,
    "sigma2": task_sigma2,
    "quadratic": task_quadratic,
    "epsilon": task_epsilon,
    "mackey": task_mackey,
    "reciprocity": task_reciprocity,
    "frobdet": task_frobdet,
    "euler": task_euler,
    "interp": task_interp,
}


def _run_task(task):
    name, args, opts = task
    return TASKS[name](*args, opts)


# planning


def _opts(cfg: SuiteConfig) -> dict:
    opts = {
        "bound": cfg.bound,
        "convention": cfg.convention,
        "kappa": cfg.kappa,
        "values": cfg.values,
        "seed": cfg.seed,
    }
    opts.update(cfg.options)
    return opts


def _check_primes(ps):
    from .ff import is_prime

    bad = [p for p in ps if not is_prime(p)]
    if bad:
        raise ConfigError(f"not prime: {bad}")


def plan(cfg: SuiteConfig) -> tuple[list, list]:
    """Tasks and skipped grid points for a suite."""
    opts = _opts(cfg)
    tasks, skipped = [], []
    suite = cfg.suite
    if suite == "dh":
        _check_primes(cfg.p)
        for p in cfg.p:
            for k in cfg.k:
                for n in cfg.n:
                    for s in cfg.s:
                        if (p**k) ** (n * s) <= cfg.bound:
                            tasks.append(("dh", (p, k, n, s), opts))
                        else:
                            skipped.append({"p": p, "k": k, "n": n, "s": s})
    elif suite == "gauss":
        _check_primes(cfg.p)
        for p in cfg.p:
            for k in cfg.k:
                for n in cfg.n:
                    if (p**k) ** n <= cfg.bound:
                        tasks.append(("gauss", (p, k, n), opts))
                    else:
                        skipped.append({"p": p, "k": k, "n": n})
    elif suite == "epsilon":
        _check_primes(cfg.p)
        for p in cfg.p:
            for k in cfg.k:
                for e in cfg.n:
                    if e < 1:
                        raise ConfigError("conductor exponents must be positive")
                    if (p**k) ** e <= cfg.bound:
                        tasks.append(("epsilon", (p, k, e), opts))
                    else:
                        skipped.append({"p": p, "k": k, "e": e})
    elif suite == "trace":
        _check_primes(cfg.p)
        for p in cfg.p:
            for k in cfg.k:
                if p**k <= opts.get("field_limit", 64):
                    tasks.append(("trace", (p, k), opts))
    elif suite == "sigma2":
        for k in cfg.k:
            tasks.append(("sigma2", (k, cfg.s), opts))
    elif suite == "quadratic":
        _check_primes(cfg.p)
        for p in cfg.p:
            if p == 2:
                raise ConfigError("the quadratic reduction needs odd p")
            for k in cfg.k:
                for nu in cfg.s:
                    tasks.append(("quadratic", (p, k, nu), opts))
    elif suite == "mackey":
        for g in opts["groups"]:
            tasks.append(("mackey", (g,), opts))
        for g in opts.get("reciprocity_groups", opts["groups"]):
            tasks.append(("reciprocity", (g,), opts))
    elif suite == "euler":
        tasks.append(("frobdet", (), opts))
        tasks.append(("euler", (), opts))
    elif suite == "interp":
        tasks.append(("interp", (), opts))
    else:
        raise ConfigError(f"unknown suite {suite!r}")
    if not tasks:
        raise ConfigError("no grid point is within the enumeration bound")
    return tasks, skipped


def execute(tasks: list, workers: int) -> list[list[dict]]:
    if workers <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    # results are reassembled in submission order
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_task, t) for t in tasks]
        return [f.result() for f in futures]


def build_report(suite: str, sections: list[tuple[SuiteConfig, list, list]]) -> dict:
    suites = []
    total = passed = 0
    for cfg, results, skipped in sections:
        cases = [c for chunk in results for c in chunk]
        ok = sum(c["ok"] for c in cases)
        total += len(cases)
        passed += ok
        suites.append({
            "suite": cfg.suite,
            "config": cfg.record(),
            "skipped": skipped,
            "cases": cases,
            "totals": {"cases": len(cases), "passed": ok, "failed": len(cases) - ok},
        })
    first = sections[0][0]
    return {
        "schema": SCHEMA,
        "version": __version__,
        "suite": suite,
        "conventions": {"additive_sign": first.convention, "kappa": first.kappa, "bound": first.bound},
        "suites": suites,
        "totals": {"cases": total, "passed": passed, "failed": total - passed},
    }


def run_suite(cfg: SuiteConfig) -> dict:
    tasks, skipped = plan(cfg)
    return build_report(cfg.suite, [(cfg, execute(tasks, cfg.workers), skipped)])


def default_configs(base: SuiteConfig) -> list[SuiteConfig]:
    """The acceptance grid."""
    common = dict(bound=base.bound, convention=base.convention, kappa=base.kappa, workers=base.workers,
                  seed=base.seed, values=base.values)
    return [
        SuiteConfig("dh", [2, 3, 5], [1, 2], [1, 2, 3], [1, 2, 3], **common),
        SuiteConfig("gauss", [2, 3, 5], [1, 2], [1, 2, 3], [], options={"closed_form": "auto"}, **common),
        SuiteConfig("trace", [p for p in range(2, 65) if all(p % d for d in range(2, p))], list(range(1, 7)), [], [],
                    options={"field_limit": 64}, **common),
        SuiteConfig("sigma2", [2], [1, 2], [], [1, 2, 3], **common),
        SuiteConfig("quadratic", [3, 5], [1], [], [1, 2], **common),
        SuiteConfig("epsilon", [3, 5], [1], [1, 2], [], **common),
        SuiteConfig("mackey", [], [], [], [], options={"groups": ["S3", "D4", "Q8", "A4"],
                                                      "reciprocity_groups": ["S3", "D4", "Q8", "A4", "S4", "C6"]},
                    **common),
        SuiteConfig("euler", [], [], [], [], options={"random_records": 200}, **common),
        SuiteConfig("interp", [], [], [], [], options={"random": 1000}, **common),
    ]


def run_report_all(base: SuiteConfig) -> dict:
    configs = default_configs(base)
    planned = [(cfg, *plan(cfg)) for cfg in configs]
    flat = [t for _, tasks, _ in planned for t in tasks]
    results = execute(flat, base.workers)
    sections, pos = [], 0
    for cfg, tasks, skipped in planned:
        sections.append((cfg, results[pos : pos + len(tasks)], skipped))
        pos += len(tasks)
    return build_report("report-all", sections)


# output


def format_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "kind", "identity", "inputs", "ok", "lhs", "rhs", "approximate"])
        for sec in report["suites"]:
            for c in sec["cases"]:
                writer.writerow([c["suite"], c["kind"], c["identity"], _canon(c["inputs"]), int(c["ok"]),
                                 _approx(c["lhs"]), _approx(c["rhs"]), 1])
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for sec in report["suites"]:
            t = sec["totals"]
            lines.append(f"{sec['suite']}: {t['passed']}/{t['cases']} pass")
            for c in sec["cases"]:
                if not c["ok"]:
                    lines.append(f"  FAIL {c['identity']} {_canon(c['inputs'])}")
            if sec["skipped"]:
                lines.append(f"  skipped (over bound): {len(sec['skipped'])}")
        t = report["totals"]
        lines.append(f"total: {t['passed']}/{t['cases']} pass")
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown format {fmt!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--bound", type=int, default=None, help="enumeration bound (default WITTGAUSS_BOUND or 65536)")
    common.add_argument("--convention", choices=["appendix", "global-sign"], default="appendix")
    common.add_argument("--kappa", default="teichmuller", help="teichmuller[:hex] or unit:<hex>")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", default=None)
    common.add_argument("--values", choices=["full", "digest"], default=None)

    grid = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    grid.add_argument("--p", default="2,3,5")
    grid.add_argument("--k", default="1..2")
    grid.add_argument("--n", default="1..3")
    grid.add_argument("--s", default="1..3")

    parser = argparse.ArgumentParser(
        prog="wittgauss", description="Exact identity suites for Gauss sums over Witt vectors.", allow_abbrev=False
    )
    parser.add_argument("--version", action="version", version=f"wittgauss {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("dh", allow_abbrev=False, parents=[common, grid], help="Davenport-Hasse over W_n")
    g = sub.add_parser("gauss", allow_abbrev=False, parents=[common, grid], help="closed forms, absolute value, vanishing")
    g.add_argument("--closed-form", choices=["auto", "even", "odd", "none"], default="auto")
    sub.add_parser("trace", allow_abbrev=False, parents=[common, grid], help="trace pairing perfectness")
    sub.add_parser("sigma2", allow_abbrev=False, parents=[common, grid], help="p = 2 quadratic partial sums")
    sub.add_parser("quadratic", allow_abbrev=False, parents=[common, grid], help="odd p quadratic sums against Legendre Gauss sums")
    sub.add_parser("epsilon", allow_abbrev=False, parents=[common, grid], help="local epsilon factor, both routes (--n is e)")
    m = sub.add_parser("mackey", allow_abbrev=False, parents=[common], help="Mackey decomposition and Frobenius reciprocity")
    m.add_argument("--group", default="S3,D4,Q8,A4")
    sub.add_parser("euler", allow_abbrev=False, parents=[common], help="Euler inductivity, sign ledger, Frobenius determinants").add_argument(
        "--random", type=int, default=200)
    sub.add_parser("interp", allow_abbrev=False, parents=[common], help="interpolation ledgers").add_argument("--random", type=int, default=1000)
    sub.add_parser("report-all", allow_abbrev=False, parents=[common], help="the full acceptance grid")
    return parser


def config_from_args(args) -> SuiteConfig:
    bound = args.bound
    if bound is None:
        env = os.environ.get("WITTGAUSS_BOUND")
        try:
            bound = int(env) if env else 1 << 16
        except ValueError:
            raise ConfigError(f"bad WITTGAUSS_BOUND {env!r}") from None
    if bound < 1:
        raise ConfigError("bound must be positive")
    if args.workers < 1:
        raise ConfigError("workers must be positive")
    values = args.values or ("digest" if args.command == "report-all" else "full")
    cfg = SuiteConfig(args.command, bound=bound, convention=args.convention, kappa=args.kappa,
                      workers=args.workers, seed=args.seed, format=args.format, out=args.out, values=values)
    if not (args.kappa == "teichmuller" or args.kappa.startswith(("teichmuller:", "unit:"))):
        raise ConfigError(f"bad kappa {args.kappa!r}")
    if hasattr(args, "p"):
        cfg.p, cfg.k, cfg.n, cfg.s = (parse_range(x) for x in (args.p, args.k, args.n, args.s))
        if min(cfg.k + cfg.n + cfg.s) < 1:
            raise ConfigError("k, n and s must be positive")
    if args.command == "gauss":
        cfg.options["closed_form"] = args.closed_form
    if args.command == "sigma2":
        cfg.p = [2]
    if args.command == "mackey":
        from .brauer import named_group

        groups = [g.strip() for g in args.group.split(",") if g.strip()]
        for g in groups:
            try:
                named_group(g)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        cfg.options["groups"] = groups
        cfg.options["reciprocity_groups"] = groups
    if args.command == "euler":
        cfg.options["random_records"] = args.random
    if args.command == "interp":
        cfg.options["random"] = args.random
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        cfg = config_from_args(args)
        report = run_report_all(cfg) if cfg.suite == "report-all" else run_suite(cfg)
        text = format_report(report, cfg.format)
    except ConfigError as exc:
        print(f"wittgauss: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    t = report["totals"]
    elapsed = time.perf_counter() - start
    print(f"wittgauss {cfg.suite}: {t['passed']}/{t['cases']} pass in {elapsed:.1f}s", file=sys.stderr)
    return EXIT_OK if t["failed"] == 0 else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
