"""Weyl group elements, reduced presentations and the invariants k4 and k5.

Elements are stored as permutations of the parent's root list; the matrix
acting on root-basis coordinates (column vectors) is derived from the images
of a basis.  A presentation ``(a1, ..., ak)`` denotes ``s_a1 o ... o s_ak``.
"""

from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import exact_linalg as xl
from .exact_linalg import Matrix, Vector
from .root_model import RootLattice, RootSystem
from .subroot import Budget, BudgetExhausted, SubrootLattice, _budget, k2_search, subroot_from_hnf


class _Context:
    """Per-lattice caches: reflection permutations and a basis of roots."""

    def __init__(self, lat: RootLattice) -> None:
        self.lat = lat
        self.n = lat.rank
        self.neg = tuple(lat.root_index[tuple(-x for x in r)] for r in lat.roots)
        self._refl: dict[int, tuple[int, ...]] = {}
        basis: list[int] = []
        rows: list[Vector] = []
        for i, r in enumerate(lat.roots):
            if xl.rank(rows + [r]) > len(rows):
                rows.append(r)
                basis.append(i)
                if len(rows) == self.n:
                    break
        self.basis = tuple(basis)
        bt = xl.transpose(rows)
        self._unit = bt == lat.unit_basis
        self._bt_inv = None if self._unit else xl.rational_inverse(bt)
        self.identity = tuple(range(len(lat.roots)))
        self.lengths: dict[tuple[int, ...], int] = {}
        self.spans: dict[tuple[int, ...], dict[Matrix, tuple[int, ...]]] = {}

    def refl(self, i: int) -> tuple[int, ...]:
        p = self._refl.get(i)
        if p is None:
            lat = self.lat
            a = lat.roots[i]
            p = tuple(lat.root_index[lat.reflect(a, x)] for x in lat.roots)
            self._refl[i] = p
            self._refl[self.neg[i]] = p
        return p

    def matrix(self, perm: Sequence[int]) -> Matrix:
        imgs = [self.lat.roots[perm[b]] for b in self.basis]
        cols = xl.transpose(imgs)
        if self._unit:
            return cols
        m = [[sum(Fraction(cols[i][k]) * self._bt_inv[k][j] for k in range(self.n)) for j in range(self.n)] for i in range(self.n)]
        return tuple(tuple(int(x) for x in row) for row in m)

    def perm_of_matrix(self, m: Sequence[Sequence[int]]) -> tuple[int, ...]:
        idx = self.lat.root_index
        try:
            return tuple(idx[xl.matvec(m, r)] for r in self.lat.roots)
        except KeyError:
            raise ValueError("matrix does not permute the roots") from None

    def length(self, perm: tuple[int, ...]) -> int:
        v = self.lengths.get(perm)
        if v is None:
            m = self.matrix(perm)
            v = xl.rank([[m[i][j] - (i == j) for j in range(self.n)] for i in range(self.n)])
            self.lengths[perm] = v
        return v


@functools.lru_cache(maxsize=None)
def _ctx_cached(lat_id: int, lat: RootLattice) -> _Context:
    return _Context(lat)


def context(lat: RootLattice) -> _Context:
    return _ctx_cached(id(lat), lat)


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Permutation of ``a o b``."""
    return tuple(a[i] for i in b)


class WeylElement:
    """An element of the Weyl group of ``parent``."""

    __slots__ = ("parent", "perm", "_ctx", "__dict__")

    def __init__(self, parent: RootLattice, perm: Sequence[int]) -> None:
        self.parent = parent
        self.perm = tuple(perm)
        self._ctx = context(parent)

    @classmethod
    def identity(cls, parent: RootLattice) -> "WeylElement":
        return cls(parent, context(parent).identity)

    @classmethod
    def reflection(cls, parent: RootLattice, root: Sequence[int]) -> "WeylElement":
        ctx = context(parent)
        return cls(parent, ctx.refl(parent.root_index[tuple(root)]))

    @classmethod
    def from_reflections(cls, parent: RootLattice, roots: Iterable[Sequence[int]]) -> "WeylElement":
        ctx = context(parent)
        perm = ctx.identity
        for r in roots:
            i = parent.root_index.get(tuple(r))
            if i is None:
                raise ValueError(f"{tuple(r)} is not a root")
            perm = compose(perm, ctx.refl(i))
        return cls(parent, perm)

    @classmethod
    def from_matrix(cls, parent: RootLattice, m: Sequence[Sequence[int]]) -> "WeylElement":
        m = xl.as_matrix(m)
        ctx = context(parent)
        g = parent.gram
        if xl.matmul(xl.matmul(xl.transpose(m), g), m) != g:
            raise ValueError("matrix does not preserve the bilinear form")
        w = cls(parent, ctx.perm_of_matrix(m))
        if w.matrix != m:
            raise ValueError("matrix is not determined by its action on the roots")
        return w

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.parent, compose(self.perm, other.perm))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and other.parent is self.parent and other.perm == self.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(self.parent, inv)

    def conjugate(self, g: "WeylElement") -> "WeylElement":
        return g * self * g.inverse()

    def apply(self, v: Sequence[int]) -> Vector:
        i = self.parent.root_index.get(tuple(v))
        if i is not None:
            return self.parent.roots[self.perm[i]]
        return xl.matvec(self.matrix, v)

    @functools.cached_property
    def matrix(self) -> Matrix:
        return self._ctx.matrix(self.perm)

    @property
    def length(self) -> int:
        """Reflection length ``n - dim ker(w - 1)``."""
        return self._ctx.length(self.perm)

    def is_identity(self) -> bool:
        return self.perm == self._ctx.identity

    @functools.cached_property
    def fixed_space(self) -> Matrix:
        n = self.parent.rank
        m = self.matrix
        return xl.rational_kernel([[m[i][j] - (i == j) for j in range(n)] for i in range(n)], n)

    @functools.cached_property
    def charpoly(self) -> tuple[int, ...]:
        return xl.characteristic_polynomial(self.matrix)

    @functools.cached_property
    def order(self) -> int:
        p = self.perm
        seen = [False] * len(p)
        out = 1
        for i in range(len(p)):
            if seen[i]:
                continue
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out = out * k // math.gcd(out, k)
        return out

    def __repr__(self) -> str:
        return f"WeylElement({self.parent!r}, length={self.length})"


def reflection_length(w: WeylElement) -> int:
    return w.length


def characteristic_polynomial(w: WeylElement) -> tuple[int, ...]:
    return w.charpoly


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    deg = len(coeffs) - 1
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        e = deg - k
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def descent_roots(w: WeylElement) -> list[Vector]:
    """Roots ``a`` with ``l(s_a w) = l(w) - 1``: those orthogonal to the fixed space of ``w``."""
    lat = w.parent
    fix = [lat.gram_times(f) for f in w.fixed_space]
    return [r for r in lat.roots if all(sum(a * b for a, b in zip(g, r)) == 0 for g in fix)]


def _descent_indices(w: WeylElement) -> list[int]:
    lat = w.parent
    fix = [lat.gram_times(f) for f in w.fixed_space]
    pos = lat.roots_mod_sign
    return [lat.root_index[r] for r in pos if all(sum(a * b for a, b in zip(g, r)) == 0 for g in fix)]


def is_reduced(roots: Sequence[Sequence[int]]) -> bool:
    return xl.rank(roots) == len(roots) if roots else True


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class Presentation:
    roots: tuple[Vector, ...]
    element: WeylElement
    span: SubrootLattice

    @property
    def index(self) -> int:
        return self.span.index()

    @property
    def is_reduced(self) -> bool:
        return is_reduced(self.roots)

    @property
    def is_full(self) -> bool:
        return self.span.is_full()


def from_presentation(parent: RootLattice, roots: Iterable[Sequence[int]]) -> Presentation:
    roots = tuple(tuple(r) for r in roots)
    w = WeylElement.from_reflections(parent, roots)
    h = xl.hnf_rows(roots, parent.rank) if roots else ()
    return Presentation(roots, w, subroot_from_hnf(parent, h))


def span_set(w: WeylElement, budget: Budget | float | None = None) -> dict[Matrix, tuple[Vector, ...]]:
    """Distinct span lattices of reduced presentations of ``w`` with one witness each.

    Roots are taken up to sign only, so proportional roots such as ``e1`` and
    ``2e1`` in BC-type stay distinct and give different spans.
    """
    budget = _budget(budget)
    ctx = w._ctx
    lat = w.parent
    memo = ctx.spans

    def rec(perm: tuple[int, ...]) -> dict[Matrix, tuple[int, ...]]:
        got = memo.get(perm)
        if got is not None:
            return got
        budget.check()
        out: dict[Matrix, tuple[int, ...]] = {}
        if perm == ctx.identity:
            out[()] = ()
        else:
            el = WeylElement(lat, perm)
            for i in _descent_indices(el):
                sub = rec(compose(ctx.refl(i), perm))
                r = lat.roots[i]
                for h, wit in sub.items():
                    h2 = xl.hnf_insert(h, r) if h else xl.hnf_rows([r])
                    if h2 not in out:
                        out[h2] = (i,) + wit
        memo[perm] = out
        return out

    res = rec(w.perm)
    return {h: tuple(lat.roots[i] for i in wit) for h, wit in res.items()}


def enumerate_reduced_presentations(w: WeylElement, dedup_by_span: bool = False, budget: Budget | float | None = None) -> Iterator[Presentation]:
    """Reduced presentations of ``w`` (roots up to sign); one per span with ``dedup_by_span``."""
    lat = w.parent
    if dedup_by_span:
        for h, wit in sorted(span_set(w, budget).items()):
            yield Presentation(wit, w, subroot_from_hnf(lat, h))
        return
    budget = _budget(budget)
    ctx = w._ctx

    def rec(perm: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        budget.check()
        if perm == ctx.identity:
            yield ()
            return
        for i in _descent_indices(WeylElement(lat, perm)):
            for rest in rec(compose(ctx.refl(i), perm)):
                yield (i,) + rest

    for idx in rec(w.perm):
        roots = tuple(lat.roots[i] for i in idx)
        h = xl.hnf_rows(roots, lat.rank) if roots else ()
        yield Presentation(roots, w, subroot_from_hnf(lat, h, check=False))


@dataclass(frozen=True)
class QuasiCoxeterVerdict:
    is_quasi: bool
    is_strict: bool
    witness: tuple[Vector, ...] | None
    counterexample: tuple[Vector, ...] | None


def quasi_coxeter_verdict(w: WeylElement, budget: Budget | float | None = None) -> QuasiCoxeterVerdict:
    spans = span_set(w, budget)
    full = w.parent.unit_basis
    wit = spans.get(full)
    counter = next((v for h, v in sorted(spans.items()) if h != full), None)
    return QuasiCoxeterVerdict(wit is not None, counter is None, wit, counter)


# ---------------------------------------------------------------------------
# Signed permutations


@dataclass(frozen=True)
class SignedPermutation:
    """``images[i-1] = +-j`` means ``e_i -> +-e_j``; cycles carry the signs of the maps."""

    images: tuple[int, ...]

    @functools.cached_property
    def cycles(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        n = len(self.images)
        seen = [False] * (n + 1)
        out = []
        for i in range(1, n + 1):
            if seen[i]:
                continue
            entries = []
            sign = 1
            j = i
            while not seen[j]:
                seen[j] = True
                img = self.images[j - 1]
                eps = 1 if img > 0 else -1
                sign *= eps
                entries.append(eps * j)
                j = abs(img)
            out.append((tuple(entries), sign))
        return tuple(out)

    @property
    def cycle_type(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(((len(c), s) for c, s in self.cycles), reverse=True))

    @property
    def positive_cycles(self) -> int:
        return sum(1 for _, s in self.cycles if s > 0)

    @property
    def negative_cycles(self) -> int:
        return sum(1 for _, s in self.cycles if s < 0)

    def __str__(self) -> str:
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c, _ in self.cycles)


def signed_permutation(w: WeylElement) -> SignedPermutation:
    lat = w.parent
    if not isinstance(lat, RootSystem) or lat.type.family not in ("B", "C", "BC", "D"):
        raise ValueError("signed permutations are defined for the families B, C, BC and D")
    n = lat.rank
    b = lat.lattice_basis_matrix
    bt_inv = xl.rational_inverse(xl.transpose(b))
    m = w.matrix
    # ambient map X = B^T M (B^T)^-1 (doubled scaling cancels)
    bm = xl.matmul(xl.transpose(b), m)
    x = [[sum(Fraction(bm[i][k]) * bt_inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    images = []
    for j in range(n):
        col = [x[i][j] for i in range(n)]
        nz = [(i, c) for i, c in enumerate(col) if c]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise AssertionError("element is not a signed permutation")
        i, c = nz[0]
        images.append((i + 1) * (1 if c > 0 else -1))
    return SignedPermutation(tuple(images))


# ---------------------------------------------------------------------------
# k4, k5


def _primitive_presentation(w: WeylElement, budget: Budget) -> tuple[Matrix, tuple[Vector, ...]] | None:
    """A reduced presentation whose span has quotient ``Z^(n-l)``, found depth first."""
    lat = w.parent
    ctx = w._ctx
    target = lat.rank - w.length
    failed: set = set()

    def dfs(perm: tuple[int, ...], h: Matrix) -> tuple[int, ...] | None:
        if perm == ctx.identity:
            q = xl.quotient_of_coordinates(lat.rank, h) if h else None
            ok = q.k1 == target if q is not None else target == lat.rank
            return () if ok else None
        if (perm, h) in failed:
            return None
        budget.check()
        for i in _descent_indices(WeylElement(lat, perm)):
            r = lat.roots[i]
            rest = dfs(compose(ctx.refl(i), perm), xl.hnf_insert(h, r) if h else xl.hnf_rows([r]))
            if rest is not None:
                return (i,) + rest
        failed.add((perm, h))
        return None

    found = dfs(w.perm, ())
    if found is None:
        return None
    roots = tuple(lat.roots[i] for i in found)
    return (xl.hnf_rows(roots, lat.rank) if roots else ()), roots


def k4_exact(w: WeylElement, budget: Budget | float | None = None) -> tuple[int, tuple[Vector, ...], tuple[Vector, ...]]:
    """``(k4, reduced presentation with optimal span, completing roots)``."""
    budget = _budget(budget)
    lat = w.parent
    quick = _primitive_presentation(w, budget)
    if quick is not None:
        h, wit = quick
        k, comp = k2_search(subroot_from_hnf(lat, h, check=False), budget)
        if k == lat.rank - w.length:
            return k, wit, comp
    best = None
    for h, wit in sorted(span_set(w, budget).items()):
        lower = xl.quotient_of_coordinates(lat.rank, h).k1 if h else lat.rank
        if best is not None and lower >= best[0]:
            continue
        k, comp = k2_search(subroot_from_hnf(lat, h, check=False), budget)
        if best is None or k < best[0]:
            best = (k, wit, comp)
    assert best is not None
    return best


def k4_formula(w: WeylElement) -> int | None:
    """Closed form for the classical families; None elsewhere."""
    lat = w.parent
    fam = getattr(lat, "family", None)
    n, l = lat.rank, w.length
    if fam in ("A", "B", "BC"):
        return n - l
    if fam in ("C", "D"):
        # negative cycles pair up into C/D summands; one such summand costs nothing
        s = signed_permutation(w).negative_cycles
        return n - l + ((s + 1) // 2 - 1 if s else 0)
    return None


def k4(w: WeylElement, mode: str = "exact", budget: Budget | float | None = None) -> int:
    if mode == "formula":
        v = k4_formula(w)
        if v is None:
            raise ValueError("no closed form for this family")
        return v
    return k4_exact(w, budget)[0]


def k5_upper_witness(w: WeylElement, budget: Budget | float | None = None) -> tuple[int, Presentation]:
    """Padded presentation ``(a1..al, b1, b1, ..., bk, bk)`` with full span, ``k = k4``."""
    k, wit, comp = k4_exact(w, budget)
    roots = tuple(wit) + tuple(x for b in comp for x in (b, b))
    p = from_presentation(w.parent, roots)
    if p.element != w or not p.is_full:
        raise AssertionError("padded presentation check failed")
    return k, p


@dataclass(frozen=True)
class K5Result:
    value: int
    witness: tuple[Vector, ...]
    exact: bool


def full_span_presentation(w: WeylElement, length: int, budget: Budget | float | None = None) -> tuple[Vector, ...] | None:
    """A presentation of ``w`` of the given length whose roots generate the lattice, if one exists.

    Exhaustive depth-first search with memoized failures.  A branch is cut when
    the remaining length cannot reach the element (length or parity) or cannot
    close the quotient (each root lowers k1 by at most one).
    """
    budget = _budget(budget)
    lat = w.parent
    ctx = w._ctx
    n = lat.rank
    full = lat.unit_basis
    cands = [lat.root_index[r] for r in lat.roots_mod_sign]
    k1memo: dict[Matrix, int] = {}
    failed: set = set()

    def k1_of(h: Matrix) -> int:
        v = k1memo.get(h)
        if v is None:
            v = xl.quotient_of_coordinates(n, h).k1 if h else n
            k1memo[h] = v
        return v

    def dfs(perm: tuple[int, ...], rem: int, h: Matrix) -> tuple[int, ...] | None:
        if rem == 0:
            return () if perm == ctx.identity and h == full else None
        key = (perm, rem, h)
        if key in failed:
            return None
        budget.check()
        for i in cands:
            nxt = compose(ctx.refl(i), perm)
            l2 = ctx.length(nxt)
            if l2 > rem - 1 or (rem - 1 - l2) % 2:
                continue
            h2 = xl.hnf_insert(h, lat.roots[i]) if h else xl.hnf_rows([lat.roots[i]])
            if k1_of(h2) > rem - 1:
                continue
            res = dfs(nxt, rem - 1, h2)
            if res is not None:
                return (i,) + res
        failed.add(key)
        return None

    if length < w.length or (length - w.length) % 2:
        return None
    res = dfs(w.perm, length, ())
    if res is None:
        return None
    return tuple(lat.roots[i] for i in res)


def k5_exact(w: WeylElement, budget: Budget | float | None = None) -> K5Result:
    """Least ``k`` with a full-span presentation of length ``l(w) + 2k``.

    Every ``k`` below the constructive upper bound ``k4`` is searched
    exhaustively.  On budget exhaustion ``BudgetExhausted`` propagates.
    """
    budget = _budget(budget)
    upper, wit = k5_upper_witness(w, budget)
    for k in range(upper):
        found = full_span_presentation(w, w.length + 2 * k, budget)
        if found is not None:
            return K5Result(k, found, True)
    return K5Result(upper, wit.roots, True)


# ---------------------------------------------------------------------------
# Z-bases inside generating root sets


def extract_basis(parent: RootLattice, roots: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    """A subset of ``roots`` which is a Z-basis of the lattice.

    Roots are dropped one by one whenever the rest still generates.  Every
    generating set of roots contains a basis, so a generating set with more
    than ``n`` elements always has a droppable root; a single pass therefore
    ends with exactly ``n`` roots.
    """
    a: list[Vector] = []
    for r in roots:
        r = tuple(r)
        if r not in parent.root_index:
            raise ValueError(f"{r} is not a root")
        if r not in a:
            a.append(r)
    n = parent.rank
    full = parent.unit_basis
    if not a or xl.hnf_rows(a, n) != full:
        raise ValueError("the roots do not generate the lattice")
    i = 0
    while i < len(a):
        rest = a[:i] + a[i + 1:]
        if rest and xl.hnf_rows(rest, n) == full:
            a = rest
        else:
            i += 1
    if len(a) != n or abs(xl.determinant(a)) != 1:
        raise AssertionError("basis extraction failed")
    return tuple(a)


# ---------------------------------------------------------------------------
# Whole groups


_ORDER_LIMIT = 10**6


def weyl_group_order(parent: RootLattice) -> int | None:
    t = getattr(parent, "type", None)
    if t is None:
        return None
    n, f = t.rank, t.family
    if f == "A":
        return math.factorial(n + 1)
    if f in ("B", "C", "BC"):
        return 2**n * math.factorial(n)
    if f == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}[str(t)]


def _simple_indices(lat: RootLattice) -> list[int]:
    ctx = context(lat)
    if ctx._unit:
        return [lat.root_index[u] for u in lat.unit_basis]
    return list(ctx.basis)


def group_elements(parent: RootLattice, limit: int = _ORDER_LIMIT, budget: Budget | float | None = None) -> list[tuple[int, ...]]:
    """All elements as root permutations (closure under a generating set of reflections)."""
    budget = _budget(budget)
    order = weyl_group_order(parent)
    if order is not None and order > limit:
        raise ValueError(f"|W| = {order} exceeds the bound {limit}")
    ctx = context(parent)
    gens = [ctx.refl(i) for i in _simple_indices(parent)]
    if not ctx._unit:
        gens = [ctx.refl(i) for i in range(len(parent.roots))]
        gens = list(dict.fromkeys(gens))
    seen = {ctx.identity}
    queue = deque([ctx.identity])
    while queue:
        g = queue.popleft()
        budget.check()
        for s in gens:
            h = compose(s, g)
            if h not in seen:
                seen.add(h)
                queue.append(h)
                if len(seen) > limit:
                    raise ValueError("group too large")
    return sorted(seen)


@dataclass
class ConjugacyClass:
    representative: WeylElement
    size: int
    members: list[tuple[int, ...]] = field(repr=False, default_factory=list)

    @property
    def length(self) -> int:
        return self.representative.length

    @property
    def charpoly(self) -> tuple[int, ...]:
        return self.representative.charpoly


def conjugacy_classes(parent: RootLattice, limit: int = _ORDER_LIMIT, budget: Budget | float | None = None) -> list[ConjugacyClass]:
    budget = _budget(budget)
    elems = group_elements(parent, limit, budget)
    ctx = context(parent)
    gens = [ctx.refl(i) for i in _simple_indices(parent)] if ctx._unit else list({ctx.refl(i) for i in range(len(parent.roots))})
    seen: set = set()
    out = []
    for g in elems:
        if g in seen:
            continue
        orbit = [g]
        seen.add(g)
        k = 0
        while k < len(orbit):
            x = orbit[k]
            k += 1
            budget.check()
            for s in gens:
                y = compose(compose(s, x), s)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
        out.append(ConjugacyClass(WeylElement(parent, min(orbit)), len(orbit), orbit))
    out.sort(key=lambda c: (-c.length, c.charpoly, c.size, c.representative.perm))
    return out


def quasi_coxeter_class_counts(parent: RootSystem, budget: Budget | float | None = None) -> tuple[int, int]:
    """``(k6, k7)``: quasi-Coxeter classes minus one; full-rank subroot classes with k1 = 1."""
    from .subroot import enumerate_subroot_types

    budget = _budget(budget)
    classes = conjugacy_classes(parent, budget=budget)
    k6 = sum(1 for c in classes if quasi_coxeter_verdict(c.representative, budget).is_quasi) - 1
    types = enumerate_subroot_types(parent, rank_cap=parent.rank, budget=budget)
    k7 = sum(1 for key, c in types.items() if c.representative.rank == parent.rank and c.k1 == 1)
    return k6, k7
