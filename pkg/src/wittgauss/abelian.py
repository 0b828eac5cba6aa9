"""Cyclic decomposition of small finite abelian groups.

Given generators and a multiplication, the group is built one generator at a
time.  Each step adds a relation g^m = h^v, and a unimodular diagonalisation
of the relation matrix gives new independent cyclic generators.  The result
is a discrete-log table: element -> exponent vector.
"""

from __future__ import annotations

from typing import Callable, Hashable, Sequence


def diagonalize(mat: list[list[int]]):
    """Return (U, D, V) with U*mat*V = D diagonal, U and V unimodular.

    The diagonal entries are made nonnegative; no divisibility chain is enforced
    since only the direct-sum decomposition is needed.
    """
    n_rows, n_cols = len(mat), len(mat[0])
    a = [row[:] for row in mat]
    u = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
    v = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(n_rows, n_cols)):
        while True:
            entries = [
                (abs(a[i][j]), i, j)
                for i in range(t, n_rows)
                for j in range(t, n_cols)
                if a[i][j]
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    clean = clean and a[t][j] == 0
            if clean:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def _inverse_unimodular(v: list[list[int]]) -> list[list[int]]:
    from fractions import Fraction

    n = len(v)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(v)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise ArithmeticError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


class AbelianDecomposition:
    """G = <gens[0]> x ... x <gens[t-1]> with ``orders[i] = |gens[i]|``."""

    def __init__(self, gens, orders, table):
        self.gens = list(gens)
        self.orders = tuple(orders)
        self.table = table  # element -> exponent tuple

    @property
    def order(self) -> int:
        return len(self.table)

    def dlog(self, x) -> tuple[int, ...]:
        return self.table[x]


def decompose(
    generators: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
) -> AbelianDecomposition:
    """Decompose the abelian group generated by ``generators``."""
    gens: list = []
    orders: list[int] = []
    table = {identity: ()}
    for g in generators:
        # minimal m with g^m in the current subgroup
        m, cur = 1, g
        while cur not in table:
            cur = mul(cur, g)
            m += 1
        if m == 1:
            continue
        v = table[cur]
        t = len(gens)
        rel = [[orders[i] if j == i else 0 for j in range(t + 1)] for i in range(t)]
        rel.append([-x for x in v] + [m])
        _, d, vmat = diagonalize(rel)
        diag = [d[i][i] for i in range(t + 1)]
        vinv = _inverse_unimodular(vmat)
        old_gens = gens + [g]
        keep = [j for j in range(t + 1) if diag[j] != 1]
        new_table = {}
        powers = [identity]
        for _ in range(m - 1):
            powers.append(mul(powers[-1], g))
        for h, hx in table.items():
            for c in range(m):
                x = list(hx) + [c]
                y = tuple(
                    sum(x[i] * vmat[i][j] for i in range(t + 1)) % diag[j] for j in keep
                )
                new_table[mul(h, powers[c]) if c else h] = y
        old_orders = orders + [_order(g, mul, identity)]
        new_gens = []
        for j in keep:
            elem = identity
            for i, e in enumerate(vinv[j]):
                elem = mul(elem, _power(old_gens[i], e % old_orders[i], mul, identity))
            new_gens.append(elem)
        gens = new_gens
        orders = [diag[j] for j in keep]
        table = new_table
        for j, b in enumerate(gens):
            expected = tuple(int(i == j) for i in range(len(gens)))
            if table[b] != expected:
                raise ArithmeticError("inconsistent decomposition")
    return AbelianDecomposition(gens, orders, table)


def _power(x, e, mul, identity):
    result, base = identity, x
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def _order(x, mul, identity) -> int:
    n, cur = 1, x
    while cur != identity:
        cur = mul(cur, x)
        n += 1
    return n
