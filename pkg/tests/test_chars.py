import itertools

import numpy as np
import pytest

from wittgauss.chars import (
    AddChar,
    conductor_exp,
    enumerate_mult_chars,
    extension_ring,
    inflate_by_norm,
    solve_epsilon_char,
    trivial_char,
    unit_group,
    verify_epsilon,
)
from wittgauss.cyclo import CyclotomicInt
from wittgauss.ff import make_field
from wittgauss.witt import norm_array, witt_ring

RINGS = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (5, 1, 2), (2, 2, 2), (3, 2, 2), (2, 2, 3), (2, 1, 4)]


def ring(p, k, n):
    return witt_ring(make_field(p, k), n)


def units(R):
    return [x for x in range(R.size) if R.is_unit(x)]


def test_character_counts():
    assert len(enumerate_mult_chars(ring(5, 1, 1))) == 4
    assert len(enumerate_mult_chars(ring(3, 1, 2))) == 6
    for p, k, n in RINGS:
        q = p**k
        assert len(enumerate_mult_chars(ring(p, k, n))) == q ** (n - 1) * (q - 1)


@pytest.mark.parametrize("p,k,n", RINGS)
def test_characters_are_homomorphisms_and_distinct(p, k, n):
    R = ring(p, k, n)
    chars = enumerate_mult_chars(R)
    us = np.array(units(R))
    E = unit_group(R).exponent
    tables = set()
    rng = np.random.default_rng(1)
    for chi in chars:
        ex = chi.exponent_array(us)
        assert (ex >= 0).all()
        tables.add(tuple(ex.tolist()))
        for _ in range(10):
            a, b = (int(v) for v in rng.choice(us, 2))
            assert chi.exponent_of(R.mul(a, b)) == (chi.exponent_of(a) + chi.exponent_of(b)) % E
        assert chi.exponent_of(1) == 0
        nonunit = next((x for x in range(R.size) if not R.is_unit(x)), None)
        assert chi.value(nonunit) == CyclotomicInt.zero(chi.order)
    assert len(tables) == len(chars)


@pytest.mark.parametrize("p,k,n", RINGS)
def test_orthogonality(p, k, n):
    R = ring(p, k, n)
    chars = enumerate_mult_chars(R)
    us = units(R)
    E = unit_group(R).exponent
    zeta = np.exp(2j * np.pi / E)
    mat = np.array([[zeta ** chi.exponent_of(x) for x in us] for chi in chars])
    gram = mat @ mat.conj().T
    assert np.allclose(gram, len(us) * np.eye(len(chars)))


def _brute_conductor(chi):
    R = chi.ring
    us = units(R)
    for m in range(0, R.n + 1):
        layer = us if m == 0 else [u for u in us if R.project_int(u, m) == 1]
        if all(chi.exponent_of(u) == 0 for u in layer):
            return m
    raise AssertionError


@pytest.mark.parametrize("p,k,n", RINGS)
def test_conductor_matches_definition(p, k, n):
    R = ring(p, k, n)
    counts = [0] * (n + 1)
    for chi in enumerate_mult_chars(R):
        e = conductor_exp(chi)
        assert e == _brute_conductor(chi)
        counts[e] += 1
        assert chi.to_json() == {"kind": "mult", "exps": list(chi.exps), "conductor": e}
    assert conductor_exp(trivial_char(R)) == 0
    # characters of level <= m are those of W_m^x
    q = p**k
    for m in range(1, n + 1):
        assert sum(counts[: m + 1]) == q ** (m - 1) * (q - 1)


@pytest.mark.parametrize("p,k,n,s", [(2, 1, 2, 2), (3, 1, 2, 2), (2, 1, 3, 2), (2, 1, 2, 3), (2, 2, 2, 2)])
def test_inflation_by_norm(p, k, n, s):
    R = ring(p, k, n)
    ext = extension_ring(R, s)
    us = np.array(units(ext))
    norms = norm_array(ext, R, us)
    for chi in enumerate_mult_chars(R):
        big = inflate_by_norm(chi, s)
        assert conductor_exp(big) == conductor_exp(chi)
        for x, nx in zip(us[::3], norms[::3]):
            assert big.value(int(x), chi.order) == chi.value(int(nx))


@pytest.mark.parametrize("p,k,n", RINGS)
def test_additive_characters(p, k, n):
    R = ring(p, k, n)
    N = R.N
    for kappa in units(R)[:6]:
        for sign in (1, -1):
            psi = AddChar(R, kappa, sign)
            ex = psi.exponent_array(np.arange(R.size))
            for a in range(0, R.size, 3):
                for b in range(0, R.size, 5):
                    assert ex[R.add(a, b)] == (ex[a] + ex[b]) % N
            # primitive: nontrivial on p^(n-1) W_n
            deep = [R.smul(p ** (n - 1), x) for x in range(R.size)]
            assert any(ex[x] for x in deep)
            # at level one psi is zeta_p^(sign Tr(kappa x)) with the absolute trace
            F = R.base
            psi1 = psi.at_level(1)
            for a in range(F.q):
                b = F.mul(a, R.reduce(kappa))
                tr = 0
                for i in range(k):
                    tr = F.add(tr, F.frob_int(b, i))
                assert psi1.exponent_of(a) == sign * tr % p
    with pytest.raises(ValueError):
        AddChar(R, 0)


def _brute_epsilons(chi, psi, r):
    R = chi.ring
    low = witt_ring(R.base, r)
    n, p = R.n, R.p
    E = chi.group.exponent
    psi_r = psi.at_level(r)
    lhs = []
    for x in range(low.size):
        u = R.add(1, R.smul(p ** (n - r), R.encode(low.digits(x))))
        lhs.append(chi.exponent_of(u) * p**r // E % p**r)
    found = []
    for eps in range(low.size):
        if all(psi_r.exponent_of(low.neg(low.mul(eps, x))) == lhs[x] for x in range(low.size)):
            found.append(eps)
    return found


@pytest.mark.parametrize("p,k,n", [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (5, 1, 2), (2, 2, 2), (3, 2, 2), (2, 1, 4), (2, 2, 3)])
def test_epsilon_is_unique_and_solved(p, k, n):
    R = ring(p, k, n)
    psi = AddChar(R)
    r = n // 2
    for chi in enumerate_mult_chars(R):
        eps = solve_epsilon_char(chi, psi, r)
        assert _brute_epsilons(chi, psi, r) == [eps.value]
        assert verify_epsilon(chi, psi, eps)
        if chi.is_trivial():
            assert eps.value == 0
        if conductor_exp(chi) == n:
            assert eps.parent.is_unit(eps.value)


def test_epsilon_with_twisted_kappa_and_sign():
    R = ring(3, 2, 2)
    for kappa in units(R)[:5]:
        for sign in (1, -1):
            psi = AddChar(R, kappa, sign)
            for chi in enumerate_mult_chars(R)[::7]:
                eps = solve_epsilon_char(chi, psi)
                assert _brute_epsilons(chi, psi, 1) == [eps.value]


def test_epsilon_split_bounds():
    R = ring(3, 1, 2)
    chi = enumerate_mult_chars(R)[1]
    with pytest.raises(ValueError):
        solve_epsilon_char(chi, AddChar(R), 2)


def test_unit_group_structure():
    for p, k, n in RINGS:
        G = unit_group(ring(p, k, n))
        assert int(np.prod(G.orders)) == G.order
        assert G.unit_mask.sum() == G.order
        assert all(G.exponent % d == 0 for d in G.orders)
