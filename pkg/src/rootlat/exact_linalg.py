"""Exact integer and rational linear algebra.

Matrices are plain sequences of rows of Python ints.  Results are returned
as tuples of tuples so they can be hashed and shared freely.

Conventions:

* Row-style Hermite normal form: the nonzero rows come first, pivots are
  positive and strictly move right, and every entry above a pivot lies in
  ``[0, pivot)``.  Zero rows are kept at the bottom so ``H = U @ M`` holds
  with ``H`` of the same shape as ``M``.
* Smith normal form ``D = U @ M @ V`` with ``d1 | d2 | ...`` and
  nonnegative diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]], cols: int | None = None) -> tuple[Matrix, Matrix]:
    """Return ``(H, U)`` with ``H = U @ M`` in row Hermite normal form."""
    a = [list(r) for r in m]
    nrows = len(a)
    ncols = len(a[0]) if a else (cols or 0)
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        for i in range(row + 1, nrows):
            b = a[i][col]
            if b == 0:
                continue
            p = a[row][col]
            if p == 0:
                a[row], a[i] = a[i], a[row]
                u[row], u[i] = u[i], u[row]
                continue
            g, x, y = _xgcd(p, b)
            pg, bg = p // g, b // g
            ar, ai = a[row], a[i]
            a[row] = [x * s + y * t for s, t in zip(ar, ai)]
            a[i] = [pg * t - bg * s for s, t in zip(ar, ai)]
            ur, ui = u[row], u[i]
            u[row] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [pg * t - bg * s for s, t in zip(ur, ui)]
        p = a[row][col]
        if p == 0:
            continue
        if p < 0:
            a[row] = [-s for s in a[row]]
            u[row] = [-s for s in u[row]]
            p = -p
        for k in range(row):
            q = a[k][col] // p
            if q:
                a[k] = [s - q * t for s, t in zip(a[k], a[row])]
                u[k] = [s - q * t for s, t in zip(u[k], u[row])]
        row += 1
    return as_matrix(a), as_matrix(u)


def hnf_rows(m: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    """Nonzero rows of the Hermite normal form: the canonical lattice key."""
    h, _ = hermite_normal_form(m, cols)
    return tuple(r for r in h if any(r))


def hnf_insert(h: Sequence[Sequence[int]], v: Sequence[int]) -> Matrix:
    """Canonical rows of ``span(h) + Z v`` for ``h`` already canonical."""
    if not any(v):
        return tuple(tuple(r) for r in h)
    return hnf_rows(list(h) + [list(v)])


def _pivots(h: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for r in h:
        for c, x in enumerate(r):
            if x:
                out.append(c)
                break
    return out


def hnf_solve(h: Sequence[Sequence[int]], v: Sequence[int]) -> Vector | None:
    """Integer coefficients ``x`` with ``x @ h = v`` for canonical rows ``h``, else None."""
    v = list(v)
    coeffs = []
    for r, c in zip(h, _pivots(h)):
        if any(v[:c]):
            return None
        q, rem = divmod(v[c], r[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [s - q * t for s, t in zip(v, r)]
    if any(v):
        return None
    return tuple(coeffs)


def member(lattice_gens: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """True iff ``v`` lies in the integer row span of ``lattice_gens``."""
    if lattice_gens and len(lattice_gens[0]) != len(v):
        raise ValueError("dimension mismatch")
    if not any(v):
        return True
    h = hnf_rows(lattice_gens, len(v))
    return hnf_solve(h, v) is not None


def rank(m: Sequence[Sequence[int]]) -> int:
    return len(hnf_rows(m))


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``D = U @ M @ V`` diagonal and ``d_i | d_{i+1}``."""
    a = [list(r) for r in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, q: int) -> None:
        a[dst] = [s + q * t for s, t in zip(a[dst], a[src])]
        u[dst] = [s + q * t for s, t in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(nr, nc)):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            moved = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        moved = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        moved = True
            if moved:
                i_min = min((i for i in range(t + 1, nr) if a[i][t]), key=lambda i: abs(a[i][t]), default=None)
                j_min = min((j for j in range(t + 1, nc) if a[t][j]), key=lambda j: abs(a[t][j]), default=None)
                ri = abs(a[i_min][t]) if i_min is not None else None
                cj = abs(a[t][j_min]) if j_min is not None else None
                if ri is not None and (cj is None or ri <= cj):
                    swap_rows(t, i_min)
                else:
                    swap_cols(t, j_min)
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-s for s in a[t]]
            u[t] = [-s for s in u[t]]
    return as_matrix(a), as_matrix(u), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    if not m:
        return ()
    d, _, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i])


@dataclass(frozen=True)
class QuotientStructure:
    """A finitely generated abelian group Z^free_rank x Z_d1 x ... x Z_dk."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for d1, d2 in zip(self.torsion, self.torsion[1:]):
            if d2 % d1:
                raise ValueError("torsion is not a divisibility chain")

    @property
    def k1(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @classmethod
    def from_factors(cls, free_rank: int, cyclic_orders: Sequence[int]) -> "QuotientStructure":
        """Normalize an arbitrary product of cyclic groups into invariant factors."""
        orders = [d for d in cyclic_orders if d != 1]
        if any(d < 1 for d in orders):
            raise ValueError("cyclic orders must be positive")
        diag = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        return cls(free_rank, tuple(d for d in invariant_factors(diag) if d > 1)) if orders else cls(free_rank)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        i = 0
        while i < len(self.torsion):
            d = self.torsion[i]
            j = i
            while j < len(self.torsion) and self.torsion[j] == d:
                j += 1
            parts.append(f"Z{d}" if j - i == 1 else f"Z{d}^{j - i}")
            i = j
        return " x ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "QuotientStructure":
        """Inverse of ``str``: e.g. ``"Z^2 x Z2"``, ``"Z3^2"``, ``"0"``."""
        text = text.strip()
        if text in {"0", "{0}", "1"}:
            return cls(0)
        free = 0
        orders: list[int] = []
        for part in text.replace("×", "x").split("x"):
            part = part.strip().replace(" ", "")
            if not part.startswith("Z"):
                raise ValueError(f"bad factor {part!r}")
            body, _, mult = part[1:].partition("^")
            k = int(mult) if mult else 1
            if body == "":
                free += k
            else:
                orders.extend([int(body)] * k)
        return cls.from_factors(free, orders)


def rational_inverse(m: Sequence[Sequence[int | Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(r[n:]) for r in a)


def coordinates_in_basis(basis: Sequence[Sequence[int]], rows: Sequence[Sequence[int]]) -> Matrix:
    """Integer ``X`` with ``X @ basis = rows``; raises if some row is outside the lattice."""
    n = len(basis)
    if any(len(r) != n for r in basis):
        raise ValueError("basis must be square")
    inv = rational_inverse(basis)
    out = []
    for r in rows:
        x = [sum(Fraction(r[k]) * inv[k][j] for k in range(n)) for j in range(n)]
        if any(c.denominator != 1 for c in x):
            raise ValueError(f"vector {tuple(r)} is not in the lattice")
        out.append(tuple(int(c) for c in x))
    return tuple(out)


def quotient_structure(basis: Sequence[Sequence[int]], sub_gens: Sequence[Sequence[int]]) -> QuotientStructure:
    """Structure of ``span(basis) / span(sub_gens)``."""
    n = len(basis)
    coeffs = coordinates_in_basis(basis, sub_gens)
    return quotient_of_coordinates(n, coeffs)


def quotient_of_coordinates(n: int, coeffs: Sequence[Sequence[int]]) -> QuotientStructure:
    """Structure of ``Z^n / span(coeffs)``."""
    factors = invariant_factors(coeffs) if coeffs else ()
    return QuotientStructure(n - len(factors), tuple(d for d in factors if d > 1))


def saturation(gens: Sequence[Sequence[int]], n: int | None = None) -> Matrix:
    """Canonical rows of ``Z^n`` intersected with the rational span of ``gens``."""
    rows = [r for r in gens if any(r)]
    if not rows:
        return ()
    d, _, v = smith_normal_form(rows)
    r = len([i for i in range(min(len(d), len(d[0]))) if d[i][i]])
    vinv = rational_inverse(v)
    basis = [[int(x) for x in vinv[i]] for i in range(r)]
    return hnf_rows(basis)


def lattice_index(l_gens: Sequence[Sequence[int]], l1_gens: Sequence[Sequence[int]]) -> int:
    """The saturation index ``[L cap Q L1 : L1]``; requires ``L1 <= L``."""
    width = len(l_gens[0]) if l_gens else (len(l1_gens[0]) if l1_gens else 0)
    h = hnf_rows(l_gens, width)
    coeffs = []
    for r in l1_gens:
        if not any(r):
            continue
        x = hnf_solve(h, r)
        if x is None:
            raise ValueError(f"vector {tuple(r)} is not in the ambient lattice")
        coeffs.append(x)
    index = 1
    for d in invariant_factors(coeffs) if coeffs else ():
        index *= d
    return index


def rational_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Integer vectors spanning the right kernel ``{x : M x = 0}`` over Q."""
    a = [[Fraction(x) for x in r] for r in m]
    nc = len(a[0]) if a else (ncols or 0)
    pivots: list[int] = []
    row = 0
    for c in range(nc):
        p = next((i for i in range(row, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[row], a[p] = a[p], a[row]
        piv = a[row][c]
        a[row] = [x / piv for x in a[row]]
        for i in range(len(a)):
            if i != row and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(nc) if c not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * nc
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -a[i][f]
        den = 1
        for x in vec:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append(tuple(int(x * den) for x in vec))
    return tuple(out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def characteristic_polynomial(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Coefficients of ``det(tI - M)``, highest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        mk = [[mk[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        amk = matmul(m, mk)
        tr = sum(amk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral characteristic polynomial")
        coeffs.append(-tr // k)
        mk = [list(r) for r in amk]
    return tuple(coeffs)


def matrix_to_json(m: Sequence[Sequence[int]]) -> list[list[str]]:
    return [[str(int(x)) for x in r] for r in m]


def matrix_from_json(data: Sequence[Sequence[str]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in data)
