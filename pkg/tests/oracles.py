"""Independent reference computations used only by the tests.

Nothing here imports the algorithms under test: determinants and solving go
through plain Fraction elimination or sympy, roots come from closing a simple
system under reflections, and reflection lengths from breadth-first search.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from fractions import Fraction
from typing import Sequence

import sympy


def frac_det(m: Sequence[Sequence[int]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def frac_rank(m: Sequence[Sequence[int]]) -> int:
    return sympy.Matrix(m).rank() if m else 0


def gcd_of_minors(m: Sequence[Sequence[int]], k: int) -> int:
    rows, cols = len(m), len(m[0]) if m else 0
    g = 0
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            g = math.gcd(g, int(frac_det([[m[r][c] for c in cs] for r in rs])))
            if g == 1:
                return 1
    return g


def rational_solution(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i rows_i = v`` for independent ``rows``."""
    a = sympy.Matrix(rows).T
    sol, params = a.gauss_jordan_solve(sympy.Matrix(v)) if rows else (None, None)
    if sol is None:
        return None
    return [Fraction(int(x.p), int(x.q)) for x in sol]


def in_row_lattice(independent_rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if not independent_rows:
        return False
    try:
        c = rational_solution(independent_rows, v)
    except ValueError:
        return False
    return c is not None and all(x.denominator == 1 for x in c)


def same_row_lattice(basis: Sequence[Sequence[int]], gens: Sequence[Sequence[int]]) -> bool:
    """``basis`` (independent rows) and ``gens`` generate the same lattice.

    Inclusion by exact solving, equality by comparing the gcd of maximal
    minors, which is an invariant of a lattice of given rank.
    """
    gens = [g for g in gens if any(g)]
    r = len(basis)
    if frac_rank(gens) != r if gens else r != 0:
        return False
    if r == 0:
        return True
    if not all(in_row_lattice(basis, g) for g in gens):
        return False
    return gcd_of_minors(basis, r) == gcd_of_minors(gens, r)


def invariant_factors_oracle(m: Sequence[Sequence[int]]) -> list[int]:
    """Determinantal divisors: ``d_k = g_k / g_{k-1}`` with ``g_k`` the gcd of ``k``-minors."""
    if not m or not m[0]:
        return []
    out = []
    prev = 1
    for k in range(1, min(len(m), len(m[0])) + 1):
        g = gcd_of_minors(m, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# ---------------------------------------------------------------------------
# Root systems


def _refl(a: Sequence[Fraction], x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = 2 * sum(p * q for p, q in zip(x, a)) / sum(p * p for p in a)
    return tuple(p - c * q for p, q in zip(x, a))


def root_closure(simple: Sequence[Sequence]) -> set[tuple[Fraction, ...]]:
    """All images of the simple roots under the group they generate (plus 2-multiples are not added)."""
    simple = [tuple(Fraction(x) for x in s) for s in simple]
    found = set(simple)
    queue = deque(simple)
    while queue:
        x = queue.popleft()
        for a in simple:
            y = _refl(a, x)
            if y not in found:
                found.add(y)
                queue.append(y)
    return found


def reflection_matrix_from_gram(gram: Sequence[Sequence[int]], a: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix acting on row coordinate vectors: ``x -> x - 2 (x,a)/(a,a) a``."""
    n = len(gram)
    ga = [sum(gram[i][j] * a[j] for j in range(n)) for i in range(n)]
    aa = sum(a[i] * ga[i] for i in range(n))
    return tuple(tuple(Fraction(int(i == j)) - Fraction(2 * ga[i] * a[j], aa) for j in range(n)) for i in range(n))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def reflection_lengths(gram: Sequence[Sequence[int]], roots: Sequence[Sequence[int]]) -> dict:
    """Breadth-first search over the group generated by all reflections: matrix -> reflection length."""
    n = len(gram)
    pos = {}
    for r in roots:
        key = max(tuple(r), tuple(-x for x in r))
        pos[key] = True
    gens = [reflection_matrix_from_gram(gram, r) for r in pos]
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    dist = {ident: 0}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in gens:
            x = _mat_mul(m, g)
            if x not in dist:
                dist[x] = dist[m] + 1
                queue.append(x)
    return dist


def sympy_charpoly(m: Sequence[Sequence[int]]) -> list[int]:
    t = sympy.Symbol("t")
    return [int(c) for c in sympy.Matrix(m).charpoly(t).all_coeffs()]
