"""Standard models of the irreducible root lattices and their root data.

Ambient vectors are stored with doubled integer coordinates so that the
half-integral roots of the E and F families stay exact.  All lattice work
happens in coordinates with respect to the root basis ``delta_1..delta_n``;
the ambient space is used for inner products, printing and parsing only.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import exact_linalg as xl
from .exact_linalg import Matrix, Vector

FAMILIES = ("A", "B", "C", "BC", "D", "E", "F", "G")

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "BC": lambda n: n >= 1,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _RANK_OK:
            raise ValueError(f"unknown family {self.family!r}")
        if not _RANK_OK[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        m = re.fullmatch(r"\s*(BC|[A-G])_?(\d+)\s*", text.upper())
        if not m:
            raise ValueError(f"cannot parse root system type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def homogeneous(self) -> bool:
        return self.family in ("A", "D", "E")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class AmbientVector:
    """A vector of the ambient Euclidean space, stored as twice its coordinates."""

    doubled: tuple[int, ...]

    @classmethod
    def from_coords(cls, coords: Sequence[int | Fraction]) -> "AmbientVector":
        out = []
        for c in coords:
            d = Fraction(c) * 2
            if d.denominator != 1:
                raise ValueError("coordinates must lie in (1/2)Z")
            out.append(int(d))
        return cls(tuple(out))

    @property
    def dim(self) -> int:
        return len(self.doubled)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def __neg__(self) -> "AmbientVector":
        return AmbientVector(tuple(-a for a in self.doubled))

    def __mul__(self, k: int) -> "AmbientVector":
        return AmbientVector(tuple(k * a for a in self.doubled))

    __rmul__ = __mul__

    def dot(self, other: "AmbientVector") -> Fraction:
        return Fraction(sum(a * b for a, b in zip(self.doubled, other.doubled)), 4)

    @property
    def norm2(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not any(self.doubled)

    def __str__(self) -> str:
        return format_vector(self.doubled)


def format_vector(doubled: Sequence[int]) -> str:
    """Render doubled coordinates in the expression grammar, e.g. ``(e1+e2+e3+e4)/2``."""
    if all(x % 2 == 0 for x in doubled):
        vals, half = [x // 2 for x in doubled], False
    else:
        vals, half = list(doubled), True
    terms = []
    for i, c in enumerate(vals, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{mag}e{i}")
    if not terms:
        return "0"
    text = "".join(terms)
    if text.startswith("+"):
        text = text[1:]
    return f"({text})/2" if half else text


def cartan_integer(beta: AmbientVector, alpha: AmbientVector) -> int | Fraction:
    """``<beta, alpha> = 2 (beta, alpha) / (alpha, alpha)``; an int when integral."""
    na = alpha.norm2
    if na == 0:
        raise ValueError("zero vector")
    c = 2 * beta.dot(alpha) / na
    return int(c) if c.denominator == 1 else c


def reflect(alpha: AmbientVector, x: AmbientVector) -> AmbientVector:
    """``s_alpha(x) = x - <x, alpha> alpha``."""
    c = Fraction(cartan_integer(x, alpha))
    out = []
    for a, b in zip(x.doubled, alpha.doubled):
        v = a - c * b
        if v.denominator != 1:
            raise ValueError("reflection leaves the doubled-integer grid")
        out.append(int(v))
    return AmbientVector(tuple(out))


# ---------------------------------------------------------------------------
# Expression grammar


_TOKEN = re.compile(r"\s*(?:(\d+)|(e\d+)|(d\d+)|([-+()/*]))")


def parse_expression(text: str, dim: int | None = None, named: Sequence[AmbientVector] = ()) -> AmbientVector:
    """Parse e.g. ``e1-e2``, ``-2e3``, ``(e1+e2+e3+e4)/2`` into an ambient vector.

    ``d<k>`` refers to ``named[k-1]`` when a list of named roots is supplied.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character in {text!r} at {pos}")
        tokens.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    width = dim
    for t in tokens:
        if t.startswith("e"):
            width = max(width or 0, int(t[1:]))
    if named:
        width = named[0].dim if width is None or width < named[0].dim else width
    if not width:
        raise ValueError(f"no coordinates in {text!r}")
    i = 0

    def vec_unit(k: int) -> list[Fraction]:
        if k < 1 or k > width:
            raise ValueError(f"coordinate e{k} out of range")
        v = [Fraction(0)] * width
        v[k - 1] = Fraction(1)
        return v

    def peek() -> str | None:
        return tokens[i] if i < len(tokens) else None

    def take() -> str:
        nonlocal i
        if i >= len(tokens):
            raise ValueError(f"unexpected end of {text!r}")
        i += 1
        return tokens[i - 1]

    def expr() -> list[Fraction]:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = [sign * x for x in term()]
        while peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
            acc = [a + sign * b for a, b in zip(acc, term())]
        return acc

    def term() -> list[Fraction]:
        coef = Fraction(1)
        t = peek()
        if t is not None and t.isdigit():
            coef = Fraction(int(take()))
            if peek() == "*":
                take()
        t = take()
        if t.startswith("e"):
            v = vec_unit(int(t[1:]))
        elif t.startswith("d"):
            k = int(t[1:])
            if not 1 <= k <= len(named):
                raise ValueError(f"no named root {t}")
            v = list(named[k - 1].coords) + [Fraction(0)] * (width - named[k - 1].dim)
        elif t == "(":
            v = expr()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
        else:
            raise ValueError(f"unexpected token {t!r} in {text!r}")
        while peek() == "/":
            take()
            den = take()
            if not den.isdigit():
                raise ValueError(f"bad divisor in {text!r}")
            coef /= int(den)
        return [coef * x for x in v]

    value = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return AmbientVector.from_coords(value)


# ---------------------------------------------------------------------------
# Type decompositions


class Summand(NamedTuple):
    family: str
    rank: int
    tilde: bool = False

    def __str__(self) -> str:
        return f"{'~' if self.tilde else ''}{self.family}{self.rank}"


def _summand_key(s: Summand) -> tuple:
    return (-s.rank, s.family, s.tilde)


@dataclass(frozen=True)
class TypeDecomposition:
    """Multiset of irreducible summands in canonical order."""

    summands: tuple[Summand, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=_summand_key)))

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for s, grp in itertools.groupby(self.summands):
            k = len(list(grp))
            parts.append(f"{k if k > 1 else ''}{s}")
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "TypeDecomposition":
        """Parse labels such as ``D4+3A1``, ``A3+~A1``, ``2B1``; aliases are normalized.

        ``A0``, ``B0``, ``BC0`` vanish, ``B1`` is ``~A1``, ``D2`` is ``2A1`` and ``D3`` is ``A3``.
        """
        t = text.strip().replace("\\widetilde ", "~").replace("_", "").replace(" ", "")
        t = t.strip("[]'\"")
        t = re.sub(r"\(.*?\)", "", t)
        if t in ("", "0", "{0}", "∅"):
            return cls(())
        out: list[Summand] = []
        for tok in t.split("+"):
            m = re.fullmatch(r"(\d*)(~?)(BC|[A-G])(\d+)", tok)
            if not m:
                raise ValueError(f"cannot parse summand {tok!r} in {text!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            tilde, fam, r = bool(m.group(2)), m.group(3), int(m.group(4))
            for _ in range(mult):
                out.extend(_normalize_summand(fam, r, tilde))
        return cls(tuple(out))


def _normalize_summand(fam: str, r: int, tilde: bool) -> list[Summand]:
    if r == 0:
        return []
    if fam == "B" and r == 1:
        return [Summand("A", 1, True)]
    if fam == "D" and r == 2:
        return [Summand("A", 1, tilde), Summand("A", 1, tilde)]
    if fam == "D" and r == 3:
        return [Summand("A", 3, tilde)]
    return [Summand(fam, r, tilde)]


# ---------------------------------------------------------------------------
# Abstract root lattices in lattice coordinates


class RootLattice:
    """A root lattice ``Z^n`` with integral scaled Gram matrix and a finite root set.

    Inner products are ``x . gram . y / scale``.  ``family`` (possibly None)
    only steers the naming conventions for length decorations.
    """

    def __init__(
        self,
        gram: Sequence[Sequence[int]],
        scale: int,
        roots: Iterable[Sequence[int]],
        family: str | None = None,
        name: str = "",
    ) -> None:
        self.gram: Matrix = xl.as_matrix(gram)
        self.scale = scale
        self.rank = len(self.gram)
        self.roots: tuple[Vector, ...] = tuple(tuple(r) for r in roots)
        self.family = family
        self.name = name
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        if len(self.root_index) != len(self.roots):
            raise ValueError("duplicate roots")
        self._gv = [xl.matvec(self.gram, r) for r in self.roots]
        self.norms = tuple(sum(a * b for a, b in zip(g, r)) for g, r in zip(self._gv, self.roots))
        if any(n <= 0 for n in self.norms):
            raise ValueError("roots must have positive length")
        self.norm_values = tuple(sorted(set(self.norms)))

    def ip(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        return Fraction(self.ip_scaled(x, y), self.scale)

    def ip_scaled(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        return sum(x[i] * sum(g[i][j] * y[j] for j in range(self.rank) if y[j]) for i in range(self.rank) if x[i])

    def gram_times(self, v: Sequence[int]) -> Vector:
        idx = self.root_index.get(tuple(v))
        if idx is not None:
            return self._gv[idx]
        return xl.matvec(self.gram, v)

    def norm_scaled(self, v: Sequence[int]) -> int:
        idx = self.root_index.get(tuple(v))
        if idx is not None:
            return self.norms[idx]
        return self.ip_scaled(v, v)

    def cartan(self, beta: Sequence[int], alpha: Sequence[int]) -> int:
        num = 2 * sum(a * b for a, b in zip(self.gram_times(alpha), beta))
        den = self.norm_scaled(alpha)
        q, r = divmod(num, den)
        if r:
            raise ValueError("non-integral Cartan integer")
        return q

    def reflect(self, alpha: Sequence[int], x: Sequence[int]) -> Vector:
        c = self.cartan(x, alpha)
        if c == 0:
            return tuple(x)
        return tuple(a - c * b for a, b in zip(x, alpha))

    def reflection_matrix(self, alpha: Sequence[int]) -> Matrix:
        """Matrix of ``s_alpha`` acting on column coordinate vectors."""
        ga = self.gram_times(alpha)
        na = self.norm_scaled(alpha)
        n = self.rank
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                num = 2 * ga[j] * alpha[i]
                if num % na:
                    raise ValueError("non-integral reflection")
                row.append((1 if i == j else 0) - num // na)
            rows.append(tuple(row))
        return tuple(rows)

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_index

    def positive(self, v: Sequence[int]) -> Vector:
        """The representative of ``{v, -v}`` whose first nonzero coordinate is positive."""
        for x in v:
            if x:
                return tuple(v) if x > 0 else tuple(-y for y in v)
        return tuple(v)

    @functools.cached_property
    def roots_mod_sign(self) -> tuple[Vector, ...]:
        return tuple(r for r in self.roots if self.positive(r) == r)

    @functools.cached_property
    def unit_basis(self) -> Matrix:
        return xl.identity(self.rank)

    def __repr__(self) -> str:
        return f"RootLattice({self.name or self.rank})"


# ---------------------------------------------------------------------------
# The ten standard models


def _unit(m: int, i: int, c: int = 2) -> list[int]:
    v = [0] * m
    v[i] = c
    return v


def _pm_pairs(m: int, idx: Sequence[int], plus: bool = True, minus: bool = True) -> list[tuple[int, ...]]:
    out = []
    for i, j in itertools.combinations(idx, 2):
        for si in (1, -1):
            for sj in (1, -1):
                if (si == sj and not plus) or (si != sj and not minus):
                    continue
                v = [0] * m
                v[i], v[j] = 2 * si, 2 * sj
                out.append(tuple(v))
    return out


def _half_vectors(m: int, ok) -> list[tuple[int, ...]]:
    return [s for s in itertools.product((1, -1), repeat=m) if ok(s)]


def _vec(m: int, **coords: int) -> tuple[int, ...]:
    v = [0] * m
    for k, c in coords.items():
        v[int(k[1:]) - 1] = c
    return tuple(v)


def _d(m: int, spec: str) -> tuple[int, ...]:
    return parse_expression(spec, m).doubled


def _model(t: RootSystemType):
    """Ambient dimension, roots, basis, extended root and auxiliary roots (doubled)."""
    f, n = t.family, t.rank
    if f == "A":
        m = n + 1
        roots = [tuple(v) for v in _pm_pairs(m, range(m), plus=False)]
        basis = [_d(m, f"e{i}-e{i+1}") for i in range(1, n + 1)]
        ext = _d(m, f"-e1+e{n+1}")
        return m, roots, basis, ext, []
    if f in ("B", "C", "BC"):
        m = n
        roots = _pm_pairs(m, range(m))
        if f in ("B", "BC"):
            roots += [tuple(_unit(m, i, s * 2)) for i in range(m) for s in (1, -1)]
        if f in ("C", "BC"):
            roots += [tuple(_unit(m, i, s * 4)) for i in range(m) for s in (1, -1)]
        first = "-2e1" if f == "C" else "-e1"
        basis = [_d(m, first)] + [_d(m, f"e{i}-e{i+1}") for i in range(1, n)]
        if f == "B":
            ext = _d(m, f"e{n-1}+e{n}")
        else:
            ext = _d(m, f"2e{n}")
        return m, roots, basis, ext, []
    if f == "D":
        m = n
        roots = _pm_pairs(m, range(m))
        basis = [_d(m, f"e{i}-e{i+1}") for i in range(1, n)] + [_d(m, f"e{n-1}+e{n}")]
        ext = _d(m, "-e1-e2")
        return m, roots, basis, ext, []
    if f == "E":
        m = 8
        if n == 6:
            roots = _pm_pairs(m, range(2, 7))
            roots += _half_vectors(8, lambda s: s[0] == s[1] == s[7] and _prod(s) == 1)
            basis = [_d(m, "(e1+e2+e3+e4+e5+e6+e7+e8)/2"), _d(m, "-e3-e4")]
            basis += [_d(m, f"e{i}-e{i+1}") for i in range(3, 7)]
            ext = _d(m, "(-e1-e2-e3-e8+e4+e5+e6+e7)/2")
            return m, roots, basis, ext, []
        if n == 7:
            roots = _pm_pairs(m, range(1, 7)) + [_d(m, "e1+e8"), _d(m, "-e1-e8")]
            roots += _half_vectors(8, lambda s: s[0] == s[7] and _prod(s) == 1)
            basis = [_d(m, "(e1+e2+e3+e4+e5+e6+e7+e8)/2"), _d(m, "-e2-e3")]
            basis += [_d(m, f"e{i}-e{i+1}") for i in range(2, 7)]
            ext = _d(m, "-e1-e8")
            aux = [_d(m, "e6+e7"), _d(m, "e4+e5")]
            return m, roots, basis, ext, aux
        roots = _pm_pairs(m, range(8))
        roots += _half_vectors(8, lambda s: _prod(s) == 1)
        basis = [_d(m, "(e1+e2+e3+e4+e5+e6+e7+e8)/2"), _d(m, "-e1-e2")]
        basis += [_d(m, f"e{i}-e{i+1}") for i in range(1, 7)]
        ext = _d(m, "e7-e8")
        aux = [_d(m, "e7+e8"), _d(m, "e5+e6"), _d(m, "e3+e4"), _d(m, "(-e1+e2+e3+e4+e5-e6-e7-e8)/2")]
        return m, roots, basis, ext, aux
    if f == "F":
        m = 4
        roots = _pm_pairs(m, range(4))
        roots += [tuple(_unit(m, i, s * 2)) for i in range(m) for s in (1, -1)]
        roots += _half_vectors(4, lambda s: True)
        basis = [_d(m, "(e1+e2+e3+e4)/2"), _d(m, "-e1"), _d(m, "e1-e2"), _d(m, "e2-e3")]
        ext = _d(m, "e3-e4")
        aux = [_d(m, "e3+e4"), _d(m, "-e1-e2")]
        return m, roots, basis, ext, aux
    m = 3
    roots = [tuple(v) for v in _pm_pairs(m, range(m), plus=False)]
    for p in itertools.permutations(range(3)):
        for s in (1, -1):
            v = [0, 0, 0]
            v[p[0]], v[p[1]], v[p[2]] = 4 * s, -2 * s, -2 * s
            if tuple(v) not in roots:
                roots.append(tuple(v))
    basis = [_d(m, "e1-e2"), _d(m, "-e1+2e2-e3")]
    ext = _d(m, "-e1-e2+2e3")
    return m, roots, basis, ext, []


def _prod(s: Sequence[int]) -> int:
    p = 1
    for x in s:
        p *= x
    return p


# Linear relations among delta_1..delta_max for the exceptional types.
_RELATIONS = {
    "E6": [[1, 2, 2, 3, 2, 1, 1]],
    "E7": [
        [2, 3, 2, 4, 3, 2, 1, 1, 0, 0],
        [0, 1, 1, 2, 2, 2, 1, 0, 1, 0],
        [0, 1, 1, 2, 1, 0, 0, 0, 0, 1],
    ],
    "E8": [
        [2, 4, 3, 6, 5, 4, 3, 2, 1, 0, 0, 0, 0],
        [2, 3, 2, 4, 3, 2, 1, 0, 0, -1, 0, 0, 0],
        [0, 1, 1, 2, 2, 2, 1, 0, 0, 0, 1, 0, 0],
        [0, 1, 1, 2, 1, 0, 0, 0, 0, 0, 0, 1, 0],
        [1, 2, 2, 3, 2, 1, 0, 0, 0, 0, 0, 0, 1],
    ],
    "F4": [
        [2, 4, 3, 2, 1, 0, 0],
        [2, 2, 1, 0, 0, -1, 0],
        [0, 2, 1, 0, 0, 0, -1],
    ],
    "G2": [[3, 2, 1]],
}


class RootSystem(RootLattice):
    """One of the ten standard models together with its named roots."""

    def __init__(self, t: RootSystemType) -> None:
        m, roots, basis, ext, aux = _model(t)
        self.type = t
        self.ambient_dim = m
        self.lattice_basis_matrix: Matrix = xl.as_matrix(basis)
        self._pivot_cols = _independent_columns(self.lattice_basis_matrix)
        sub = [[row[c] for c in self._pivot_cols] for row in self.lattice_basis_matrix]
        self._sub_inv = xl.rational_inverse(sub)
        gram = [[sum(a * b for a, b in zip(u, v)) for v in basis] for u in basis]
        coords = [self._to_coords(r) for r in roots]
        super().__init__(gram, 4, coords, family=t.family, name=str(t))
        self.ambient_roots = tuple(AmbientVector(tuple(r)) for r in roots)
        self.basis = tuple(AmbientVector(tuple(b)) for b in basis)
        self.extended_root = AmbientVector(tuple(ext))
        self.auxiliary_roots = tuple(AmbientVector(tuple(a)) for a in aux)
        self.named_roots = self.basis + (self.extended_root,) + self.auxiliary_roots
        key = str(t)
        if key in _RELATIONS:
            self.relations = tuple(tuple(r) for r in _RELATIONS[key])
        else:
            hi = self.to_coords(-self.extended_root)
            self.relations = (tuple(hi) + (1,),)
        if len({len(r) for r in self.roots}) != 1 or len(self.roots) != len(roots):
            raise AssertionError("root enumeration failed")

    def _to_coords(self, doubled: Sequence[int]) -> Vector:
        sub = [doubled[c] for c in self._pivot_cols]
        n = len(sub)
        x = [sum(Fraction(sub[k]) * self._sub_inv[k][j] for k in range(n)) for j in range(n)]
        if any(c.denominator != 1 for c in x):
            raise ValueError("vector is not in the root lattice")
        xi = tuple(int(c) for c in x)
        back = tuple(sum(xi[k] * self.lattice_basis_matrix[k][j] for k in range(n)) for j in range(self.ambient_dim))
        if back != tuple(doubled):
            raise ValueError("vector is not in the root lattice")
        return xi

    def to_coords(self, v: AmbientVector | str | Sequence[int]) -> Vector:
        """Root-basis coordinates of an ambient vector or expression."""
        if isinstance(v, str):
            v = self.parse(v)
        if isinstance(v, AmbientVector):
            if v.dim != self.ambient_dim:
                raise ValueError(f"expected {self.ambient_dim} coordinates")
            return self._to_coords(v.doubled)
        return tuple(v)

    def to_ambient(self, coords: Sequence[int]) -> AmbientVector:
        return AmbientVector(tuple(sum(c * row[j] for c, row in zip(coords, self.lattice_basis_matrix)) for j in range(self.ambient_dim)))

    def parse(self, text: str) -> AmbientVector:
        return parse_expression(text, self.ambient_dim, self.named_roots)

    def parse_root(self, text: str) -> Vector:
        """Coordinates of the root written as ``text``; non-roots are rejected with a hint."""
        v = self.parse(text)
        if v.dim != self.ambient_dim:
            raise ValueError(f"{text!r}: expected {self.ambient_dim} coordinates")
        try:
            c = self._to_coords(v.doubled)
        except ValueError:
            c = None
        if c is None or c not in self.root_index:
            near = self.nearest_root(v)
            raise ValueError(f"{text!r} is not a root of {self.type}; nearest root: {near}")
        return c

    def nearest_root(self, v: AmbientVector) -> AmbientVector:
        return min(self.ambient_roots, key=lambda r: ((r - v).norm2, r.doubled))

    def delta(self, k: int) -> Vector:
        """Coordinates of ``delta_k`` (1-based; basis, extended, auxiliary)."""
        if not 1 <= k <= len(self.named_roots):
            raise IndexError(f"{self.type} has no delta_{k}")
        return self._to_coords(self.named_roots[k - 1].doubled)

    @property
    def n_named(self) -> int:
        return len(self.named_roots)

    def fmt(self, coords: Sequence[int]) -> str:
        return str(self.to_ambient(coords))

    def __repr__(self) -> str:
        return f"RootSystem({self.type})"


def _independent_columns(m: Matrix) -> list[int]:
    """Greedy choice of ``len(m)`` linearly independent columns."""
    chosen: list[int] = []
    for c in range(len(m[0])):
        trial = [[row[k] for k in chosen + [c]] for row in m]
        if xl.rank(xl.transpose(trial)) == len(chosen) + 1:
            chosen.append(c)
            if len(chosen) == len(m):
                break
    if len(chosen) != len(m):
        raise ValueError("basis is not linearly independent")
    return chosen


@functools.lru_cache(maxsize=None)
def build_root_system(t: RootSystemType | str) -> RootSystem:
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    return RootSystem(t)


# ---------------------------------------------------------------------------
# Diagrams


@dataclass(frozen=True)
class DiagramEdge:
    """An edge of a generalized Dynkin diagram; arrows point from ``i`` (long) to ``j``."""

    i: int
    j: int
    kind: str

    def __str__(self) -> str:
        return f"{self.i}-{self.j}:{self.kind}"


def diagram(lattice: RootLattice, roots: Sequence[Sequence[int]]) -> list[DiagramEdge]:
    """Generalized Dynkin diagram of a root list; vertices are 0-based positions."""
    roots = [tuple(r) for r in roots]
    neg = {tuple(-x for x in r) for r in roots}
    if any(r in neg for r in roots):
        raise ValueError("A and -A must be disjoint")
    edges = []
    for i, j in itertools.combinations(range(len(roots)), 2):
        a, b = roots[i], roots[j]
        if lattice.ip_scaled(a, b) == 0:
            continue
        na, nb = lattice.norm_scaled(a), lattice.norm_scaled(b)
        if na < nb:
            i2, j2, long_, short = j, i, b, a
        else:
            i2, j2, long_, short = i, j, a, b
        ratio = Fraction(max(na, nb), min(na, nb))
        c = lattice.cartan(long_, short)
        kind = None
        if ratio == 1 and c in (-1, 1):
            kind = "normal" if c == -1 else "dotted"
            i2, j2 = i, j
        elif ratio == 2 and c in (-2, 2):
            kind = "double_arrow" if c == -2 else "double_dotted_arrow"
        elif ratio == 3 and c == -3:
            kind = "triple_arrow"
        if kind is None:
            raise ValueError(f"roots {i} and {j} fall outside the diagram cases")
        edges.append(DiagramEdge(i2, j2, kind))
    return edges


def components(lattice: RootLattice, roots: Sequence[Sequence[int]]) -> list[list[int]]:
    """Positions of ``roots`` grouped by the non-orthogonality relation."""
    n = len(roots)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gv = [lattice.gram_times(r) for r in roots]
    for i in range(n):
        for j in range(i + 1, n):
            if sum(a * b for a, b in zip(gv[i], roots[j])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


# ---------------------------------------------------------------------------
# Type identification


def classify_component(lattice: RootLattice, roots: Sequence[Sequence[int]]) -> Summand:
    """Name an irreducible root system given by all of its roots."""
    r = xl.rank(roots)
    count = len(roots)
    norms = [lattice.norm_scaled(x) for x in roots]
    values = sorted(set(norms))
    fam = None
    if len(values) == 1:
        if count == r * (r + 1):
            fam = "A"
        elif r >= 4 and count == 2 * r * (r - 1):
            fam = "D"
        elif (r, count) in ((6, 72), (7, 126), (8, 240)):
            fam = "E"
    elif len(values) == 2:
        ratio = Fraction(values[1], values[0])
        short = norms.count(values[0])
        long_ = count - short
        if ratio == 3 and r == 2 and count == 12:
            fam = "G"
        elif ratio == 4 and r == 1 and count == 4:
            fam = "BC"
        elif ratio == 2 and r == 4 and count == 48:
            fam = "F"
        elif ratio == 2 and count == 2 * r * r:
            if r == 2:
                fam = "C" if lattice.family in ("C", "BC") else "B"
            elif short == 2 * r:
                fam = "B"
            elif long_ == 2 * r:
                fam = "C"
    elif len(values) == 3 and count == 2 * r * r + 2 * r:
        fam = "BC"
    if fam is None:
        raise ValueError(f"not an irreducible root system: rank {r}, {count} roots, norms {values}")
    tilde = False
    if fam == "A":
        nrm = Fraction(values[0], lattice.scale)
        if lattice.family in ("B", "C", "BC"):
            if nrm == 1:
                return Summand("A", 1, True)
            if nrm == 4:
                return Summand("C", 1)
        elif lattice.family in ("F", "G"):
            tilde = values[0] < max(lattice.norm_values)
    return Summand(fam, r, tilde)


def decompose_roots(lattice: RootLattice, roots: Sequence[Sequence[int]]) -> TypeDecomposition:
    """Decomposition of the root system ``roots`` (closed under negation) into summands."""
    roots = [tuple(r) for r in roots]
    out = []
    for comp in components(lattice, roots):
        out.append(classify_component(lattice, [roots[i] for i in comp]))
    return TypeDecomposition(tuple(out))


def identify_type(l1) -> TypeDecomposition:
    """Type of a subroot lattice (any object with ``parent`` and ``roots1``) or of a root lattice."""
    if isinstance(l1, RootLattice):
        return decompose_roots(l1, l1.roots)
    dec = decompose_roots(l1.parent, l1.roots1)
    if dec.rank != l1.rank:
        raise ValueError("lattice is not generated by its roots")
    return dec


def highest_root(lattice: RootLattice, basis: Sequence[Sequence[int]]) -> Vector:
    """Highest root of the irreducible root system with root basis ``basis``."""
    h = xl.hnf_rows(basis)
    best, best_h = None, None
    inv = _left_solver(basis)
    for r in lattice.roots:
        if xl.hnf_solve(h, r) is None:
            continue
        c = inv(r)
        if any(x < 0 for x in c):
            continue
        ht = sum(c)
        if best_h is None or ht > best_h:
            best, best_h = r, ht
    if best is None:
        raise ValueError("empty root system")
    return best


def _left_solver(basis: Sequence[Sequence[int]]):
    """Map a vector in the integer span of ``basis`` to its coefficient tuple."""
    basis = [tuple(b) for b in basis]
    h, u = xl.hermite_normal_form(basis)
    k = len([r for r in h if any(r)])
    if k != len(basis):
        raise ValueError("basis vectors are dependent")
    hk = h[:k]

    def solve(v: Sequence[int]) -> Vector:
        y = xl.hnf_solve(hk, v)
        if y is None:
            raise ValueError("vector outside the span")
        return tuple(sum(y[i] * u[i][j] for i in range(k)) for j in range(len(basis)))

    return solve


def is_root_basis(lattice: RootLattice, roots: Sequence[Sequence[int]]) -> bool:
    """True iff ``roots`` is a simple system of the roots of its integer span."""
    if not roots:
        return True
    try:
        solve = _left_solver(roots)
    except ValueError:
        return False
    h = xl.hnf_rows(roots)
    for r in lattice.roots:
        if xl.hnf_solve(h, r) is None:
            continue
        c = solve(r)
        if any(x > 0 for x in c) and any(x < 0 for x in c):
            return False
    return True
