import itertools

import numpy as np
import pytest
import sympy

from wittgauss.ff import (
    FiniteField,
    absolute_trace,
    frobenius,
    is_irreducible,
    make_field,
    rel_norm,
    rel_trace,
    smallest_irreducible,
)

SMALL = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)]


def _count_irreducible(p, k):
    return sum(sympy.mobius(d) * p ** (k // d) for d in sympy.divisors(k)) // k


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducible_count_matches_necklace_formula(p, k):
    count = 0
    for tail in itertools.product(range(p), repeat=k):
        if is_irreducible(list(tail) + [1], p):
            count += 1
    assert count == _count_irreducible(p, k)


@pytest.mark.parametrize("p,k", SMALL)
def test_smallest_irreducible_agrees_with_sympy(p, k):
    f = smallest_irreducible(p, k)
    x = sympy.Symbol("x")
    poly = sympy.Poly(sum(c * x**i for i, c in enumerate(f)), x, modulus=p)
    assert poly.is_irreducible


def test_named_moduli():
    assert make_field(2, 2).modulus == (1, 1, 1)
    F9 = make_field(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert make_field(2, 1).q == 2


def _poly_mulmod(a, b, f, p):
    k = len(f) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(k + 1):
                prod[d - k + i] -= c * f[i]
    return [c % p for c in prod[:k]]


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (2, 4)])
def test_multiplication_matches_schoolbook(p, k):
    F = make_field(p, k)
    for a in range(F.q):
        for b in range(0, F.q, 3):
            want = _poly_mulmod(F.to_coeffs(a), F.to_coeffs(b), F.modulus, p)
            assert F.to_coeffs(F.mul(a, b)) == want
            assert F.to_coeffs(F.add(a, b)) == [(x + y) % p for x, y in zip(F.to_coeffs(a), F.to_coeffs(b))]


@pytest.mark.parametrize("p,k", SMALL)
def test_inverse_and_primitive(p, k):
    F = make_field(p, k)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
    g = F.primitive
    seen = {F.pow(g, e) for e in range(F.q - 1)}
    assert len(seen) == F.q - 1


@pytest.mark.parametrize("p,k", SMALL)
def test_frobenius_is_automorphism_of_order_k(p, k):
    F = make_field(p, k)
    xs = list(range(F.q))
    for a in xs[:20]:
        for b in xs[:20]:
            assert F.frob_int(F.mul(a, b)) == F.mul(F.frob_int(a), F.frob_int(b))
            assert F.frob_int(F.add(a, b)) == F.add(F.frob_int(a), F.frob_int(b))
    assert all(F.frob_int(a, k) == a for a in xs)
    fixed = [a for a in xs if F.frob_int(a) == a]
    assert len(fixed) == p


def test_spec_frobenius_and_trace_examples():
    F4 = make_field(2, 2)
    F2 = make_field(2, 1)
    a = F4.gen()
    assert frobenius(F4.zero()) == F4.zero()
    assert frobenius(a) == a * a == a + F4.one()
    assert rel_trace(a, F2).value == 1
    assert rel_norm(a, F2).value == 1
    assert rel_trace(a, F4) == a


@pytest.mark.parametrize("p,k,d", [(2, 4, 2), (2, 6, 3), (2, 6, 2), (3, 4, 2), (5, 2, 1), (3, 3, 1)])
def test_relative_trace_and_norm_against_conjugates(p, k, d):
    E, F = make_field(p, k), make_field(p, d)
    s = k // d
    emb = E.embedding(F)
    image = set(int(x) for x in emb)
    assert len(image) == F.q
    for x in range(0, E.q, max(1, E.q // 40)):
        conj = [E.frob_int(x, d * i) for i in range(s)]
        tr, nr = 0, 1
        for c in conj:
            tr, nr = E.add(tr, c), E.mul(nr, c)
        assert int(emb[E.rel_trace_int(x, F)]) == tr
        assert int(emb[E.rel_norm_int(x, F)]) == nr


@pytest.mark.parametrize("p,k,d", [(2, 4, 2), (3, 4, 2), (2, 6, 3)])
def test_embedding_is_a_ring_homomorphism(p, k, d):
    E, F = make_field(p, k), make_field(p, d)
    emb = E.embedding(F)
    for a in range(F.q):
        for b in range(F.q):
            assert emb[F.mul(a, b)] == E.mul(int(emb[a]), int(emb[b]))
            assert emb[F.add(a, b)] == E.add(int(emb[a]), int(emb[b]))


def test_trace_transitivity():
    E, M, F = make_field(2, 4), make_field(2, 2), make_field(2, 1)
    emb = E.embedding(M)
    for x in range(E.q):
        via = M.rel_trace_int(E.rel_trace_int(x, M), F)
        assert via == E.rel_trace_int(x, F)
        assert absolute_trace(E.element(x)) == via


def test_array_ops_agree_with_scalar_ops():
    F = make_field(3, 3)
    a = np.arange(F.q)
    b = (a * 7 + 3) % F.q
    assert np.array_equal(F.mul_arrays(a, b), [F.mul(int(x), int(y)) for x, y in zip(a, b)])
    assert np.array_equal(F.add_arrays(a, b), [F.add(int(x), int(y)) for x, y in zip(a, b)])
    assert np.array_equal(F.pow_arrays(a, 5), [F.pow(int(x), 5) for x in a])


def test_bounds_and_errors():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 12, bound=1024)
    F = make_field(3, 2)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    assert isinstance(F, FiniteField)
