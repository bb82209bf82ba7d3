"""Subroot lattices, Borel-de Siebenthal steps and the invariants k1, k2, k3."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import exact_linalg as xl
from .exact_linalg import Matrix, QuotientStructure, Vector
from .root_model import (
    AmbientVector,
    RootLattice,
    RootSystem,
    Summand,
    TypeDecomposition,
    components,
    decompose_roots,
    highest_root,
    is_root_basis,
)


class BudgetExhausted(RuntimeError):
    """A search ran out of its time budget before reaching a verdict."""


class Budget:
    """Wall-clock budget; ``None`` means unlimited."""

    def __init__(self, ms: float | None = None) -> None:
        self.deadline = None if ms is None else time.monotonic() + ms / 1000.0
        self.ms = ms

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted(f"budget of {self.ms:.0f} ms exhausted")

    @classmethod
    def from_env(cls, default_ms: float | None = None) -> "Budget":
        import os

        raw = os.environ.get("ROOTLAT_BUDGET_MS")
        return cls(float(raw) if raw else default_ms)


def _budget(b: Budget | float | None) -> Budget:
    # no explicit budget: fall back to ROOTLAT_BUDGET_MS
    if isinstance(b, Budget):
        return b
    return Budget.from_env() if b is None else Budget(b)


def neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def _coords(parent: RootLattice, roots: Iterable) -> list[Vector]:
    out = []
    for r in roots:
        if isinstance(r, AmbientVector) or isinstance(r, str):
            if not isinstance(parent, RootSystem):
                raise TypeError("ambient input requires a standard model")
            r = parent.to_coords(r)
        out.append(tuple(r))
    return out


@dataclass(frozen=True, eq=False)
class SubrootLattice:
    """A sublattice of ``parent`` generated by roots, in root-basis coordinates."""

    parent: RootLattice
    gens_hnf: Matrix
    roots1: tuple[Vector, ...]
    decomposition: TypeDecomposition

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubrootLattice) and other.parent is self.parent and other.gens_hnf == self.gens_hnf

    def __hash__(self) -> int:
        return hash((id(self.parent), self.gens_hnf))

    @property
    def rank(self) -> int:
        return len(self.gens_hnf)

    @property
    def key(self) -> Matrix:
        return self.gens_hnf

    def quotient(self) -> QuotientStructure:
        return xl.quotient_of_coordinates(self.parent.rank, self.gens_hnf)

    def k1(self) -> int:
        return self.quotient().k1

    def index(self) -> int:
        return xl.lattice_index(self.parent.unit_basis, self.gens_hnf) if self.gens_hnf else 1

    def is_full(self) -> bool:
        return self.gens_hnf == self.parent.unit_basis

    def contains(self, v: Sequence[int]) -> bool:
        return not any(v) or xl.hnf_solve(self.gens_hnf, v) is not None

    def __str__(self) -> str:
        return str(self.decomposition)


def lattice_roots(parent: RootLattice, h: Matrix) -> tuple[Vector, ...]:
    if not h:
        return ()
    return tuple(r for r in parent.roots if xl.hnf_solve(h, r) is not None)


def subroot_from_hnf(parent: RootLattice, h: Matrix, check: bool = True) -> SubrootLattice:
    roots1 = lattice_roots(parent, h)
    if check and xl.hnf_rows(roots1, parent.rank) != h:
        raise ValueError("lattice is not generated by its roots")
    return SubrootLattice(parent, h, roots1, decompose_roots(parent, roots1))


def span_subroot(parent: RootLattice, roots: Iterable) -> SubrootLattice:
    """The subroot lattice spanned by a list of roots of ``parent``."""
    a = _coords(parent, roots)
    for r in a:
        if r not in parent.root_index:
            raise ValueError(f"{r} is not a root")
    h = xl.hnf_rows(a, parent.rank)
    return subroot_from_hnf(parent, h)


def quotient_group(l1: SubrootLattice) -> QuotientStructure:
    return l1.quotient()


def k1(l1: SubrootLattice) -> int:
    return l1.k1()


# ---------------------------------------------------------------------------
# Borel-de Siebenthal steps


class StepError(ValueError):
    """A BDdS step was applied outside its preconditions."""


def extension_root(parent: RootLattice, summand: Sequence[Sequence[int]]) -> Vector:
    """Negative of the highest root of an irreducible summand w.r.t. its basis."""
    return neg(highest_root(parent, summand))


def _summand_of(parent: RootLattice, state: Sequence[Vector], selector) -> list[int]:
    comps = components(parent, state)
    if isinstance(selector, int):
        pos = selector
    else:
        sel = tuple(selector)
        if sel in state:
            pos = state.index(sel)
        elif neg(sel) in state:
            pos = state.index(neg(sel))
        else:
            raise StepError("summand selector is not in the current basis")
    for comp in comps:
        if pos in comp:
            return comp
    raise StepError("bad summand selector")


def bdds_step1(parent: RootLattice, state: Sequence[Sequence[int]], summand, erase: Sequence[int], check: bool = True) -> tuple[Vector, ...]:
    """Extend one summand by its extension root and erase a root of that summand."""
    state = [tuple(x) for x in state]
    if check and not is_root_basis(parent, state):
        raise StepError("state is not a root basis of its span")
    comp = _summand_of(parent, state, summand)
    sub = [state[i] for i in comp]
    dt = extension_root(parent, sub)
    erase = tuple(erase)
    if erase not in sub:
        raise StepError("erased root is not in the chosen summand")
    new = tuple(x for x in state if x != erase) + (dt,)
    if check and not is_root_basis(parent, new):
        raise StepError("result is not a root basis")
    return new


def bdds_step2(parent: RootLattice, state: Sequence[Sequence[int]], erase: Sequence[int]) -> tuple[Vector, ...]:
    state = [tuple(x) for x in state]
    erase = tuple(erase)
    if erase not in state:
        raise StepError("erased root is not in the basis")
    return tuple(x for x in state if x != erase)


@dataclass(frozen=True)
class BddsScript:
    """Compact script: add ``delta_i`` for ``i`` in ``I`` (erasing the matching ``J``), then erase the rest of ``J``."""

    I: tuple[int, ...] = ()
    J: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.I) > len(self.J):
            raise ValueError("a compact script needs |I| <= |J|")


@dataclass
class ScriptRun:
    lattice: SubrootLattice
    state: tuple[Vector, ...]
    flipped: list[int] = field(default_factory=list)


def run_script(parent: RootSystem, script: BddsScript | tuple, trace: bool = False):
    """Replay a compact (I, J) script from the root basis.

    An added root may be given up to sign: the table scripts sometimes name
    the highest root of a summand instead of its negative; the step itself
    always inserts the extension root.  With ``trace`` a ``ScriptRun``
    recording such sign flips is returned.
    """
    if not isinstance(script, BddsScript):
        script = BddsScript(tuple(script[0]), tuple(script[1]))
    state = list(parent.unit_basis)
    flipped = []

    def find(v: Vector) -> Vector:
        if v in state:
            return v
        if neg(v) in state:
            return neg(v)
        raise StepError(f"root {v} is not in the current basis")

    for k, i in enumerate(script.I):
        target = parent.delta(i)
        chosen = None
        for comp in components(parent, state):
            sub = [state[c] for c in comp]
            dt = extension_root(parent, sub)
            if dt == target or dt == neg(target):
                chosen = (sub, dt)
                break
        if chosen is None:
            raise StepError(f"delta_{i} is not an extension root of any summand")
        if chosen[1] != target:
            flipped.append(i)
        erase = find(parent.delta(script.J[k]))
        state = list(bdds_step1(parent, state, chosen[0][0], erase, check=False))
    for j in script.J[len(script.I):]:
        state = list(bdds_step2(parent, state, find(parent.delta(j))))
    if not is_root_basis(parent, state):
        raise StepError("script produced a set that is not a root basis")
    lat = subroot_from_hnf(parent, xl.hnf_rows(state, parent.rank))
    if trace:
        return ScriptRun(lat, tuple(state), flipped)
    return lat


def successors(parent: RootLattice, state: Sequence[Vector]) -> Iterator[tuple[tuple, tuple[Vector, ...]]]:
    """All single BDdS steps from a root basis, as ``(step, new_state)``."""
    state = tuple(state)
    for comp in components(parent, state):
        sub = [state[i] for i in comp]
        dt = extension_root(parent, sub)
        if len(comp) == 1:
            continue
        for i in comp:
            new = tuple(x for x in state if x != state[i]) + (dt,)
            yield ("1", sub[0], state[i]), new
    for x in state:
        yield ("2", x), tuple(y for y in state if y != x)


def replay_steps(parent: RootLattice, steps: Sequence[tuple]) -> tuple[Vector, ...]:
    state: tuple[Vector, ...] = tuple(parent.unit_basis)
    for st in steps:
        if st[0] == "1":
            state = bdds_step1(parent, state, st[1], st[2])
        else:
            state = bdds_step2(parent, state, st[1])
    return state


# ---------------------------------------------------------------------------
# Primed pairs in E7 and E8

_PRIMED = {
    "E7": {"A5+A1", "A5", "A3+2A1", "A3+A1", "4A1", "3A1"},
    "E8": {"A7", "2A3", "A5+A1", "A3+2A1", "4A1"},
}

_orbit_cache: dict[int, list[Matrix]] = {}


def weyl_orbit_of_lattice(parent: RootLattice, h: Matrix, limit: int = 100000) -> list[Matrix]:
    """All images of a sublattice under the Weyl group (closure under simple reflections)."""
    n = parent.rank
    simple = [parent.unit_basis[i] for i in range(n)]
    seen = {h}
    queue = deque([h])
    while queue:
        cur = queue.popleft()
        for a in simple:
            img = xl.hnf_rows([parent.reflect(a, r) for r in cur], n)
            if img not in seen:
                seen.add(img)
                queue.append(img)
                if len(seen) > limit:
                    raise BudgetExhausted("orbit too large")
    return sorted(seen)


def _a_orbit(parent: RootSystem) -> list[Matrix]:
    key = id(parent)
    if key not in _orbit_cache:
        k = parent.rank
        idx = [1, 2] + list(range(4, k + 2))
        seed = xl.hnf_rows([parent.delta(i) for i in idx], k)
        _orbit_cache[key] = weyl_orbit_of_lattice(parent, seed)
    return _orbit_cache[key]


def prime_tag(l1: SubrootLattice) -> str:
    """``'`` or ``''`` for the primed pairs of E7/E8, otherwise the empty string.

    A primed pair lies in some subroot lattice of type A7 (in E7) or A8 (in E8).
    """
    parent = l1.parent
    name = getattr(parent, "name", "")
    if name not in _PRIMED or str(l1.decomposition) not in _PRIMED[name]:
        return ""
    for h in _a_orbit(parent):
        if all(xl.hnf_solve(h, r) is not None for r in l1.gens_hnf):
            return "'"
    return "''"


@dataclass(frozen=True)
class ClassKey:
    decomposition: TypeDecomposition
    quotient: QuotientStructure
    tag: str = ""

    def __str__(self) -> str:
        d = str(self.decomposition)
        return f"[{d}]{self.tag}" if self.tag else d


def class_key(l1: SubrootLattice) -> ClassKey:
    return ClassKey(l1.decomposition, l1.quotient(), prime_tag(l1))


# ---------------------------------------------------------------------------
# k2 and k3


def _k1_of(n: int, h: Matrix, memo: dict) -> int:
    v = memo.get(h)
    if v is None:
        v = xl.quotient_of_coordinates(n, h).k1 if h else n
        memo[h] = v
    return v


def k2_search(l1: SubrootLattice, budget: Budget | float | None = None) -> tuple[int, tuple[Vector, ...]]:
    """Least number of roots completing ``l1`` to the full lattice, with a witness.

    Depth-first search; a root is only appended when it can still lead to a
    completion within the remaining depth (adding one root lowers k1 by at most one).
    """
    budget = _budget(budget)
    parent = l1.parent
    n = parent.rank
    full = parent.unit_basis
    memo: dict = {}
    cands = parent.roots_mod_sign
    failed: set = set()

    def dfs(h: Matrix, left: int) -> tuple[Vector, ...] | None:
        if h == full:
            return ()
        if left == 0 or (h, left) in failed:
            return None
        budget.check()
        seen = set()
        for r in cands:
            if xl.hnf_solve(h, r) is not None:
                continue
            h2 = xl.hnf_insert(h, r)
            if h2 in seen:
                continue
            seen.add(h2)
            if _k1_of(n, h2, memo) > left - 1:
                continue
            res = dfs(h2, left - 1)
            if res is not None:
                return (r,) + res
        failed.add((h, left))
        return None

    start = l1.gens_hnf
    for depth in range(_k1_of(n, start, memo), n + 1):
        res = dfs(start, depth)
        if res is not None:
            return depth, res
    raise AssertionError("no completion found")


def k2(l1: SubrootLattice, budget: Budget | float | None = None) -> int:
    return k2_search(l1, budget)[0]


def k3_search(l1: SubrootLattice, budget: Budget | float | None = None, max_depth: int | None = None) -> tuple[int, list[tuple]]:
    """Shortest BDdS script from the root basis reaching a lattice in the class of ``l1``.

    Raises ``BudgetExhausted`` when no witness is found within the budget or
    the depth cap (default ``k1``).
    """
    budget = _budget(budget)
    parent = l1.parent
    target = class_key(l1)
    cap = target.quotient.k1 if max_depth is None else max_depth
    start = tuple(parent.unit_basis)
    n = parent.rank
    seen = {xl.hnf_rows(start, n)}
    layer = [(start, [])]
    for depth in range(cap + 1):
        nxt = []
        for state, steps in layer:
            budget.check()
            h = xl.hnf_rows(state, n)
            cand = subroot_from_hnf(parent, h if state else (), check=False)
            if cand.decomposition == target.decomposition and cand.quotient() == target.quotient and class_key(cand) == target:
                return depth, steps
            if depth == cap:
                continue
            for step, new in successors(parent, state):
                hk = xl.hnf_rows(new, n) if new else ()
                if hk in seen:
                    continue
                seen.add(hk)
                nxt.append((new, steps + [step]))
        layer = nxt
    raise BudgetExhausted(f"no script of length <= {cap} found")


def k3(l1: SubrootLattice, budget: Budget | float | None = None) -> int:
    return k3_search(l1, budget)[0]


@dataclass
class SubrootClass:
    key: ClassKey
    representative: SubrootLattice
    depth: int
    steps: list[tuple]
    members: list[Matrix] = field(default_factory=list)

    @property
    def k1(self) -> int:
        return self.key.quotient.k1


def enumerate_subroot_lattices(parent: RootLattice, budget: Budget | float | None = None) -> dict[Matrix, tuple[int, list[tuple], tuple[Vector, ...]]]:
    """Every lattice reachable by BDdS steps from the root basis, with its BFS depth and script."""
    budget = _budget(budget)
    n = parent.rank
    start = tuple(parent.unit_basis)
    found = {xl.hnf_rows(start, n): (0, [], start)}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        depth, steps, _ = found[xl.hnf_rows(state, n) if state else ()]
        budget.check()
        for step, new in successors(parent, state):
            hk = xl.hnf_rows(new, n) if new else ()
            if hk not in found:
                found[hk] = (depth + 1, steps + [step], new)
                queue.append(new)
    return found


def enumerate_subroot_types(parent: RootLattice, rank_cap: int = 8, budget: Budget | float | None = None) -> dict[ClassKey, SubrootClass]:
    """Isomorphism classes of pairs ``(L, L1)`` reachable by BDdS steps, keyed by type, quotient and tag."""
    if parent.rank > rank_cap:
        raise ValueError(f"rank {parent.rank} exceeds cap {rank_cap}")
    lattices = enumerate_subroot_lattices(parent, budget)
    classes: dict[ClassKey, SubrootClass] = {}
    for h, (depth, steps, _state) in lattices.items():
        lat = subroot_from_hnf(parent, h)
        key = class_key(lat)
        c = classes.get(key)
        if c is None:
            classes[key] = SubrootClass(key, lat, depth, steps, [h])
        else:
            c.members.append(h)
            if depth < c.depth:
                c.depth, c.steps, c.representative = depth, steps, lat
    return classes


# ---------------------------------------------------------------------------
# Graphs of root sets in the classical models


@dataclass(frozen=True)
class ClassicalGraph:
    """Vertices ``1..m``; edges ``(i, j, kind)`` with ``kind`` normal or dotted."""

    m: int
    edges: tuple[tuple[int, int, str], ...]
    short: tuple[int, ...]
    long: tuple[int, ...]

    def adjacency(self) -> list[list[tuple[int, str]]]:
        adj: list[list[tuple[int, str]]] = [[] for _ in range(self.m + 1)]
        for i, j, k in self.edges:
            adj[i].append((j, k))
            adj[j].append((i, k))
        return adj

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * (self.m + 1)
        out = []
        for v in range(1, self.m + 1):
            if seen[v]:
                continue
            comp = []
            stack = [v]
            seen[v] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y, _ in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def edge_count(self, comp: Sequence[int]) -> int:
        s = set(comp)
        return sum(1 for i, j, _ in self.edges if i in s)

    def marked(self, comp: Sequence[int]) -> list[int]:
        return [v for v in comp if self.short[v - 1] or self.long[v - 1]]

    def has_odd_cycle(self, comp: Sequence[int]) -> bool:
        """True iff some cycle in the component has an odd number of dotted edges."""
        adj = self.adjacency()
        parity: dict[int, int] = {comp[0]: 0}
        stack = [comp[0]]
        while stack:
            x = stack.pop()
            for y, k in adj[x]:
                p = parity[x] ^ (k == "dotted")
                if y not in parity:
                    parity[y] = p
                    stack.append(y)
                elif parity[y] != p:
                    return True
        return False


def classical_graph(parent: RootSystem, roots: Iterable) -> ClassicalGraph:
    fam = parent.type.family
    if fam not in ("A", "B", "C", "BC", "D"):
        raise ValueError("graphs are defined for the classical families only")
    m = parent.ambient_dim
    edges = []
    short = [0] * m
    long_ = [0] * m
    for r in _coords(parent, roots):
        d = parent.to_ambient(r).doubled
        nz = [(i, x) for i, x in enumerate(d) if x]
        if len(nz) == 2:
            (i, a), (j, b) = nz
            edges.append((i + 1, j + 1, "dotted" if (a > 0) == (b > 0) else "normal"))
        elif abs(nz[0][1]) == 2:
            short[nz[0][0]] += 1
        else:
            long_[nz[0][0]] += 1
    return ClassicalGraph(m, tuple(edges), tuple(short), tuple(long_))


def graph_summands(g: ClassicalGraph, family: str, raw: bool = False):
    """Type of the spanned subroot lattice read off the graph.

    With ``raw`` the list of labels (including rank-0 summands such as ``A0``) is returned.
    """
    labels = []
    short_union = 0
    for comp in g.components():
        if any(g.short[v - 1] for v in comp):
            short_union += len(comp)
            continue
        k = len(comp)
        if any(g.long[v - 1] for v in comp) or g.has_odd_cycle(comp):
            labels.append(f"C{k}" if family in ("C", "BC") else f"D{k}")
        else:
            labels.append(f"A{k - 1}")
    if family in ("B", "BC"):
        labels.append(f"{family}{short_union}")
    if raw:
        return labels
    out: list[Summand] = []
    for lab in labels:
        out.extend(TypeDecomposition.parse(lab).summands)
    return TypeDecomposition(tuple(out))


def graph_generates(g: ClassicalGraph, family: str) -> bool:
    comps = g.components()
    if family == "A":
        return len(comps) == 1
    if family == "B":
        return all(g.marked(c) for c in comps)
    if family == "BC":
        return all(any(g.short[v - 1] for v in c) for c in comps)
    if family == "C":
        return len(comps) == 1 and (bool(g.marked(comps[0])) or g.has_odd_cycle(comps[0]))
    if family == "D":
        return len(comps) == 1 and g.has_odd_cycle(comps[0])
    raise ValueError(family)


def graph_is_basis(g: ClassicalGraph, family: str) -> bool:
    comps = g.components()

    def tree(c: Sequence[int]) -> bool:
        return g.edge_count(c) == len(c) - 1

    def single_marking(c: Sequence[int], kinds: str = "sl") -> bool:
        marked = g.marked(c)
        if len(marked) != 1:
            return False
        v = marked[0] - 1
        s, l = g.short[v], g.long[v]
        if s + l != 1:
            return False
        return (s and "s" in kinds) or (l and "l" in kinds)

    if family == "A":
        return len(comps) == 1 and tree(comps[0])
    if family == "B":
        return all(tree(c) and single_marking(c, "s") for c in comps)
    if family == "BC":
        return all(tree(c) and single_marking(c, "s") for c in comps)
    if family == "C":
        if len(comps) != 1:
            return False
        c = comps[0]
        if tree(c) and single_marking(c):
            return True
        return not g.marked(c) and g.edge_count(c) == len(c) and g.has_odd_cycle(c)
    if family == "D":
        if len(comps) != 1:
            return False
        c = comps[0]
        return g.edge_count(c) == len(c) and g.has_odd_cycle(c)
    raise ValueError(family)
