"""Extended affine root lattices: radical, quotient p.n. root lattice and the
necessary conditions for quasi-Coxeter elements."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as xl
from .exact_linalg import Matrix, Vector
from .root_model import RootLattice, RootSystem, TypeDecomposition, build_root_system, decompose_roots
from .subroot import Budget, _budget
from .weyl import WeylElement, k4_exact, k5_exact

FracMatrix = tuple[tuple[Fraction, ...], ...]


def _frac_matrix(m: Sequence[Sequence]) -> FracMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def is_positive_semidefinite(g: Sequence[Sequence[Fraction]]) -> bool:
    """Exact symmetric elimination; a zero pivot needs a zero row."""
    a = [list(map(Fraction, row)) for row in g]
    n = len(a)
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        return False
    for k in range(n):
        p = a[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(a[k][j] for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


def _ip(g: FracMatrix, x: Sequence[int], y: Sequence[int]) -> Fraction:
    return sum((x[i] * g[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j]), Fraction(0))


class ExtendedAffineLattice:
    """``Z^n`` with a positive semidefinite rational form and a finite window of roots.

    ``radical_generators`` are isotropic vectors counted as generators in
    addition to the roots, so a root window without radical offsets still
    describes the whole lattice.
    """

    def __init__(
        self,
        gram: Sequence[Sequence],
        roots: Sequence[Sequence[int]],
        check: bool = True,
        radical_generators: Sequence[Sequence[int]] = (),
    ) -> None:
        self.gram = _frac_matrix(gram)
        self.rank = len(self.gram)
        self.roots: tuple[Vector, ...] = tuple(dict.fromkeys(tuple(r) for r in roots))
        self.radical_generators: tuple[Vector, ...] = tuple(tuple(v) for v in radical_generators)
        if not is_positive_semidefinite(self.gram):
            raise ValueError("form is not symmetric positive semidefinite")
        if any(_ip(self.gram, r, r) <= 0 for r in self.roots):
            raise ValueError("roots must have positive length")
        if any(_ip(self.gram, v, e) for v in self.radical_generators for e in xl.identity(self.rank)):
            raise ValueError("radical generators must lie in the radical")
        den = math.lcm(*(x.denominator for row in self.gram for x in row)) if self.rank else 1
        ker = xl.rational_kernel([[int(x * den) for x in row] for row in self.gram], self.rank)
        self.radical_basis: Matrix = xl.saturation(ker, self.rank) if ker else ()
        self._completion()
        if check:
            bad = self.axiom_failures()
            if bad:
                raise ValueError("; ".join(bad))

    @property
    def radical_rank(self) -> int:
        return len(self.radical_basis)

    def _completion(self) -> None:
        """Unimodular basis whose first ``r`` vectors span the radical."""
        n, r = self.rank, self.radical_rank
        tail = tuple(tuple(int(i == j) for j in range(n)) for i in range(n - r, n))
        if self.radical_basis == xl.hnf_rows(tail, n) if r else True:
            head = tuple(tuple(int(i == j) for j in range(n)) for i in range(n - r))
            self._basis = (tail + head) if r else head
        else:
            _, _, v = xl.smith_normal_form(self.radical_basis)
            self._basis = xl.as_matrix([[int(x) for x in row] for row in xl.rational_inverse(v)])
        binv = xl.rational_inverse(self._basis)
        self._proj = binv

    def project(self, v: Sequence[int]) -> Vector:
        """Coordinates of the class of ``v`` in ``L/Rad(L)``."""
        r = self.radical_rank
        c = [sum(Fraction(v[i]) * self._proj[i][j] for i in range(self.rank)) for j in range(self.rank)]
        return tuple(int(x) for x in c[r:])

    def cartan(self, b: Sequence[int], a: Sequence[int]) -> Fraction:
        return 2 * _ip(self.gram, b, a) / _ip(self.gram, a, a)

    def reflect(self, a: Sequence[int], x: Sequence[int]) -> Vector:
        c = self.cartan(x, a)
        if c.denominator != 1:
            raise ValueError("non-integral Cartan integer")
        return tuple(p - int(c) * q for p, q in zip(x, a))

    def axiom_failures(self) -> list[str]:
        """Generation, integrality and reflection stability (modulo the radical)."""
        out = []
        n = self.rank
        gens = self.roots + self.radical_generators
        if not self.roots or xl.hnf_rows(gens, n) != xl.identity(n):
            out.append("roots do not generate the lattice")
        classes = {self.project(r) for r in self.roots}
        for a in self.roots:
            for b in self.roots:
                c = self.cartan(b, a)
                if c.denominator != 1:
                    out.append(f"non-integral Cartan integer for {b}, {a}")
                    return out
                if self.project(tuple(p - int(c) * q for p, q in zip(b, a))) not in classes:
                    out.append(f"reflection of {b} at {a} leaves the root set")
                    return out
        return out

    def quotient_root_lattice(self) -> "QuotientPnRootLattice":
        return quotient_root_lattice(self)

    def to_json(self) -> dict:
        out = {
            "gram": [[str(x) for x in row] for row in self.gram],
            "roots": [list(r) for r in self.roots],
        }
        if self.radical_generators:
            out["radical_generators"] = [list(v) for v in self.radical_generators]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ExtendedAffineLattice":
        def vecs(key: str) -> list[tuple[int, ...]]:
            return [tuple(int(x) for x in r) for r in data.get(key, [])]

        return cls([[Fraction(x) for x in row] for row in data["gram"]], vecs("roots"), radical_generators=vecs("radical_generators"))

    @classmethod
    def product(cls, base: RootLattice | str, radical_rank: int, window: int = 1) -> "ExtendedAffineLattice":
        """``L_base + Z^r`` with roots ``alpha + delta`` for ``delta`` in ``{-window..window}^r``.

        With ``window = 0`` the unit vectors of the radical are added as generators.
        """
        if isinstance(base, str):
            base = build_root_system(base)
        n, r = base.rank, radical_rank
        if r < 0 or window < 0:
            raise ValueError("radical rank and window must be nonnegative")
        gram = [[Fraction(base.gram[i][j], base.scale) if i < n and j < n else Fraction(0) for j in range(n + r)] for i in range(n + r)]
        roots = [tuple(a) + d for a in base.roots for d in itertools.product(range(-window, window + 1), repeat=r)]
        extra = [tuple(int(i == j) for j in range(n + r)) for i in range(n, n + r)] if window == 0 else []
        ea = cls(gram, roots, check=(n + r) <= 6, radical_generators=extra)
        ea.base = base
        return ea


def build_homogeneous_extension(base: RootSystem | str, radical_rank: int, window: int = 1) -> ExtendedAffineLattice:
    if isinstance(base, str):
        base = build_root_system(base)
    if not base.type.homogeneous:
        raise ValueError(f"{base.type} is not homogeneous; supply the lattice data explicitly")
    return ExtendedAffineLattice.product(base, radical_rank, window)


@dataclass
class QuotientPnRootLattice:
    lattice: RootLattice
    decomposition: TypeDecomposition
    source: ExtendedAffineLattice

    def project(self, v: Sequence[int]) -> Vector:
        return self.source.project(v)

    def __str__(self) -> str:
        return str(self.decomposition)


def root_lattice_axiom_failures(lat: RootLattice) -> list[str]:
    """Generation, reflection stability and integrality of a finite root lattice."""
    out = []
    if xl.hnf_rows(lat.roots, lat.rank) != lat.unit_basis:
        out.append("roots do not generate")
    for a in lat.roots:
        for b in lat.roots:
            num = 2 * lat.ip_scaled(b, a)
            if num % lat.norm_scaled(a):
                out.append("non-integral Cartan integer")
                return out
            if lat.reflect(a, b) not in lat.root_index:
                out.append("reflections do not preserve the roots")
                return out
    return out


def quotient_root_lattice(ea: ExtendedAffineLattice) -> QuotientPnRootLattice:
    r = ea.radical_rank
    n = ea.rank - r
    basis = ea._basis[r:]
    gq = [[_ip(ea.gram, u, v) for v in basis] for u in basis]
    scale = math.lcm(*(x.denominator for row in gq for x in row)) if n else 1
    gram = [[int(x * scale) for x in row] for row in gq]
    roots = sorted({ea.project(a) for a in ea.roots})
    lat = RootLattice(gram, scale, roots, family=getattr(getattr(ea, "base", None), "family", None), name="quotient")
    bad = root_lattice_axiom_failures(lat)
    if bad:
        raise ValueError("quotient is not a p.n. root lattice: " + "; ".join(bad))
    return QuotientPnRootLattice(lat, decompose_roots(lat, lat.roots), ea)


def induced_element(q: QuotientPnRootLattice, roots: Sequence[Sequence[int]]) -> WeylElement:
    """Image in the quotient Weyl group of the product of reflections at ``roots`` of the extension."""
    return WeylElement.from_reflections(q.lattice, [q.project(a) for a in roots])


@dataclass(frozen=True)
class ConstraintReport:
    n: int
    radical_rank: int
    length: int
    k5: int
    k5_source: str
    length_bound: bool
    padded_bound: bool

    @property
    def obstructed(self) -> bool:
        return not (self.length_bound and self.padded_bound)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "radical_rank": self.radical_rank,
            "length": self.length,
            "k5": self.k5,
            "k5_source": self.k5_source,
            "length_bound": "pass" if self.length_bound else "fail",
            "padded_bound": "pass" if self.padded_bound else "fail",
            "obstructed": self.obstructed,
        }


def check_quasi_coxeter_constraints(ea: ExtendedAffineLattice, wbar: WeylElement, exact_k5: bool = False, budget: Budget | float | None = None) -> ConstraintReport:
    """Necessary conditions ``l <= n - r`` and ``l + 2 k5 <= n`` for ``wbar`` to be induced by a quasi-Coxeter element.

    ``wbar`` lives in the Weyl group of the quotient (or of an isomorphic
    model of it).  By default ``k5`` is taken equal to ``k4``; ``exact_k5``
    runs the exhaustive search instead.
    """
    budget = _budget(budget)
    n, r = ea.rank, ea.radical_rank
    if wbar.parent.rank != n - r:
        raise ValueError("element does not act on the quotient")
    l = wbar.length
    if exact_k5:
        k5, src = k5_exact(wbar, budget).value, "exact"
    else:
        k5, src = k4_exact(wbar, budget)[0], "k4"
    return ConstraintReport(n, r, l, k5, src, l <= n - r, l + 2 * k5 <= n)
