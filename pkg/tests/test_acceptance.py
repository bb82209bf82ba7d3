"""End-to-end acceptance checks, one marked group per criterion."""

import random
import time

import pytest

from rootlat import exact_linalg as xl
from rootlat.affine import ExtendedAffineLattice, check_quasi_coxeter_constraints
from rootlat.exact_linalg import QuotientStructure
from rootlat.root_model import TypeDecomposition, build_root_system
from rootlat.subroot import (
    Budget,
    BudgetExhausted,
    class_key,
    enumerate_subroot_lattices,
    k2_search,
    k3_search,
    replay_steps,
    run_script,
    subroot_from_hnf,
)
from rootlat.tables import f4_class_members, load_table, verify_table
from rootlat.weyl import (
    WeylElement,
    conjugacy_classes,
    extract_basis,
    full_span_presentation,
    group_elements,
    k4_exact,
    k5_exact,
    quasi_coxeter_class_counts,
    quasi_coxeter_verdict,
    signed_permutation,
)

from test_subroot import graph_agreement_failures
from test_weyl import descent_mismatches, homogeneous_index_failures


def R(name):
    return build_root_system(name)


def f4_member(label):
    r = R("F4")
    for row in load_table("5.4")["rows"]:
        for lab, roots in f4_class_members(r, row):
            if lab == label:
                return WeylElement.from_reflections(r, roots)
    raise KeyError(label)


def elements(name):
    r = R(name)
    return [WeylElement(r, p) for p in group_elements(r)]


# 1


@pytest.mark.criterion(1, "exceptional script tables 3.2-3.6 replay exactly")
def test_criterion_1_script_tables():
    start = time.monotonic()
    for table_id in ["3.2", "3.3", "3.4", "3.5", "3.6"]:
        rep = verify_table(table_id)
        assert rep.ok, rep.format()
        assert rep.counts().get("pass") == len(load_table(table_id)["rows"])
    assert time.monotonic() - start < 60


@pytest.mark.criterion(1, "exceptional script tables 3.2-3.6 replay exactly")
@pytest.mark.parametrize(
    "parent,I,J,label,quotient",
    [("E8", None, None, "2A4", "Z5"), ("E8", [9, 10], [1, 4, 6], "D4+3A1", "Z x Z2^2"), ("F4", [5, 6], [1, 2, 4], "3A1", "Z x Z2^2")],
)
def test_criterion_1_examples(parent, I, J, label, quotient):
    if I is None:
        row = next(r for r in load_table("3.4")["rows"] if r["type"] == label)
        I, J = row["I"], row["J"]
    lat = run_script(R(parent), (I, J))
    assert lat.decomposition == TypeDecomposition.parse(label)
    assert lat.quotient() == QuotientStructure.parse(quotient)


# 2


@pytest.mark.criterion(2, "classical quotient and k1 formulas up to rank 6")
def test_criterion_2_classical_formulas():
    start = time.monotonic()
    rep = verify_table("3.1")
    assert rep.ok, rep.format()
    assert len(rep.rows) > 500
    assert time.monotonic() - start < 120


# 3


@pytest.mark.criterion(3, "k1 = k2 = k3 on every enumerated subroot lattice")
@pytest.mark.parametrize("name", ["G2", "B3", "C3", "A4", "B4", "D4", "F4"])
def test_criterion_3_k_invariants(name):
    r = R(name)
    scripts = {}
    for h in enumerate_subroot_lattices(r):
        lat = subroot_from_hnf(r, h)
        k, wit = k2_search(lat)
        assert k == lat.k1()
        assert xl.hnf_rows(list(lat.gens_hnf) + list(wit), r.rank) == xl.identity(r.rank)
        key = class_key(lat)
        if key not in scripts:
            scripts[key] = k3_search(lat)
        depth, steps = scripts[key]
        assert depth == len(steps) == lat.k1()
        state = replay_steps(r, steps)
        assert class_key(subroot_from_hnf(r, xl.hnf_rows(state, r.rank) if state else ())) == key


# 4


def random_generating_set(r, rng):
    while True:
        a = rng.sample(r.roots, rng.randint(r.rank, r.rank + 5))
        if xl.hnf_rows(a, r.rank) == xl.identity(r.rank):
            return a


@pytest.mark.criterion(4, "basis extraction from random generating root sets")
@pytest.mark.parametrize("name,count", [("A4", 1000), ("B4", 1000), ("C4", 1000), ("D4", 1000), ("F4", 1000), ("G2", 1000), ("E6", 100)])
def test_criterion_4_extract_basis(name, count):
    r = R(name)
    rng = random.Random(name)
    for _ in range(count):
        a = random_generating_set(r, rng)
        basis = extract_basis(r, a)
        assert len(basis) == r.rank and set(basis) <= set(a)
        assert abs(xl.determinant(basis)) == 1


# 5


def cycle_verdicts(name):
    out = []
    for w in elements(name):
        v = quasi_coxeter_verdict(w)
        sp = signed_permutation(w)
        out.append((v.is_quasi, v.is_strict, sp.negative_cycles, sp.positive_cycles))
    return out


@pytest.mark.criterion(5, "exhaustive quasi-Coxeter and strict verdicts")
def test_criterion_5_classical_rules():
    # B: quasi iff all cycles negative, strict iff one negative cycle
    for q, s, neg, pos in cycle_verdicts("B3"):
        assert q == (pos == 0) and s == (pos == 0 and neg == 1)
    # C: quasi iff one or two negative cycles and no positive ones, strict iff one
    for q, s, neg, pos in cycle_verdicts("C3"):
        assert q == (pos == 0 and neg in (1, 2)) and s == (pos == 0 and neg == 1)
    # BC: quasi iff all cycles negative, never strict
    for q, s, neg, pos in cycle_verdicts("BC3"):
        assert q == (pos == 0) and not s
    # D (homogeneous): quasi iff exactly two negative cycles, and then strict
    for q, s, neg, pos in cycle_verdicts("D4"):
        assert q == s == (pos == 0 and neg == 2)


@pytest.mark.criterion(5, "exhaustive quasi-Coxeter and strict verdicts")
def test_criterion_5_group_orders():
    assert [len(group_elements(R(n))) for n in ["G2", "B3", "C3", "BC3", "F4", "D4"]] == [12, 48, 48, 48, 1152, 192]


@pytest.mark.criterion(5, "exhaustive quasi-Coxeter and strict verdicts")
def test_criterion_5_g2():
    r = R("G2")
    cox = WeylElement.from_reflections(r, [r.delta(1), r.delta(2)])
    a2 = WeylElement.from_reflections(r, [r.delta(2), r.delta(3)])
    for w in elements("G2"):
        v = quasi_coxeter_verdict(w)
        conj = lambda x: any(g * x * g.inverse() == w for g in elements("G2"))
        assert v.is_strict == conj(cox)
        assert v.is_quasi == (conj(cox) or conj(a2))


@pytest.mark.criterion(5, "exhaustive quasi-Coxeter and strict verdicts")
def test_criterion_5_f4():
    r = R("F4")
    expected = {
        "F4": (1, 0, -1, 0, 1),
        "F4(a1)": (1, -2, 3, -2, 1),
        "B4": (1, 0, 0, 0, 1),
        "C3+A1": (1, 1, 0, 1, 1),  # (t^3+1)(t+1)
        "D4(a1)": (1, 0, 2, 0, 1),
    }
    classes = conjugacy_classes(r)
    of = {p: i for i, c in enumerate(classes) for p in c.members}
    quasi, strict = set(), set()
    for w in elements("F4"):
        v = quasi_coxeter_verdict(w)
        if v.is_quasi:
            quasi.add(of[w.perm])
        if v.is_strict:
            strict.add(of[w.perm])
    reps = {}
    for label, exprs in load_table("5.2")["rows"][3]["representatives"].items():
        w = WeylElement.from_reflections(r, [r.parse_root(x) for x in exprs])
        assert w.charpoly == expected[label]
        reps[label] = of[w.perm]
    assert quasi == set(reps.values()) and len(quasi) == 5
    assert strict == {reps["F4"], reps["F4(a1)"]}
    # (t^3+1)(t+1) also belongs to a second class, which is not quasi-Coxeter
    twins = [i for i, c in enumerate(classes) if c.charpoly == expected["C3+A1"]]
    assert len(twins) == 2 and [i in quasi for i in twins].count(True) == 1
    for label in ["F4", "F4(a1)", "B4", "D4(a1)"]:
        assert sum(c.charpoly == expected[label] for c in classes) == 1


# 6


@pytest.mark.criterion(6, "k4 column for the F4 classes")
def test_criterion_6_table():
    rep = verify_table("5.4")
    assert rep.ok, rep.format()
    assert len(rep.rows) == 25


@pytest.mark.criterion(6, "k4 column for the F4 classes")
@pytest.mark.parametrize("label,k", [("3A1", 2), ("C3", 1), ("A2", 2), ("0", 4)])
def test_criterion_6_examples(label, k):
    assert k4_exact(f4_member(label))[0] == k


# 7


def printed_k4_formula(w):
    n, l = w.parent.rank, w.length
    s = signed_permutation(w).negative_cycles
    return n - l + (s + 1) // 2


@pytest.mark.criterion(7, "printed closed form for k4 in types C and D")
@pytest.mark.parametrize("name", ["C4", "C5", "D4", "D5"])
def test_criterion_7_k4_closed_form(name):
    mismatches = []
    for c in conjugacy_classes(R(name)):
        w = c.representative
        exact, formula = k4_exact(w)[0], printed_k4_formula(w)
        if exact != formula:
            mismatches.append(f"{signed_permutation(w)}: exact {exact}, formula {formula}")
    assert mismatches == []


# 8


@pytest.mark.criterion(8, "k5 = k4 by exhaustive search")
@pytest.mark.parametrize("name", ["G2", "A3", "B3", "C3"])
def test_criterion_8_every_element(name):
    for w in elements(name):
        res = k5_exact(w)
        assert res.exact and res.value == k4_exact(w)[0]
        assert WeylElement.from_reflections(w.parent, res.witness) == w
        assert len(res.witness) == w.length + 2 * res.value


@pytest.mark.criterion(8, "k5 = k4 by exhaustive search")
def test_criterion_8_f4_three_a1():
    w = f4_member("3A1")
    assert w.length == 3
    assert full_span_presentation(w, 5) is None
    assert k5_exact(w).value == 2 == k4_exact(w)[0]


@pytest.mark.criterion(8, "k5 = k4 by exhaustive search")
def test_criterion_8_budget_is_honored(monkeypatch):
    monkeypatch.setenv("ROOTLAT_BUDGET_MS", "0")
    with pytest.raises(BudgetExhausted):
        k5_exact(f4_member("3A1"))
    with pytest.raises(BudgetExhausted):
        full_span_presentation(f4_member("3A1"), 5, Budget.from_env())


# 9


@pytest.mark.criterion(9, "counts of quasi-Coxeter and cyclic-quotient classes")
def test_criterion_9_table():
    rep = verify_table("5.12")
    assert rep.ok, rep.format()
    assert {r.key.split()[-1] for r in rep.rows} >= {"A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"}


@pytest.mark.criterion(9, "counts of quasi-Coxeter and cyclic-quotient classes")
def test_criterion_9_examples():
    assert quasi_coxeter_class_counts(R("G2")) == (1, 2)
    assert quasi_coxeter_class_counts(R("F4")) == (4, 4)


# 10


@pytest.mark.criterion(10, "necessary conditions for extended affine lattices")
def test_criterion_10_f4_obstruction():
    ea = ExtendedAffineLattice.product("F4", 1)
    rep = check_quasi_coxeter_constraints(ea, f4_member("3A1"))
    assert (rep.length + 2 * rep.k5, rep.n) == (7, 5)
    assert not rep.padded_bound and rep.obstructed


@pytest.mark.criterion(10, "necessary conditions for extended affine lattices")
def test_criterion_10_e8_coxeter_passes():
    start = time.monotonic()
    e8 = R("E8")
    ea = ExtendedAffineLattice.product(e8, 1)
    rep = check_quasi_coxeter_constraints(ea, WeylElement.from_reflections(e8, e8.unit_basis))
    assert rep.length_bound and rep.padded_bound and not rep.obstructed
    assert time.monotonic() - start < 30


# 11


@pytest.mark.criterion(11, "property suites")
@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_criterion_11_descent_criterion(name):
    assert descent_mismatches(name) == []


@pytest.mark.criterion(11, "property suites")
@pytest.mark.parametrize("name", ["A3", "B3", "C3", "BC2", "D4", "F4", "G2"])
def test_criterion_11_reflection_identities_and_stability(name):
    r = R(name)
    roots = set(r.roots)
    for a in r.roots:
        sa = r.reflection_matrix(a)
        assert {xl.matvec(sa, x) for x in r.roots} == roots
        for b in r.roots:
            sb = r.reflection_matrix(b)
            lhs = xl.matmul(sa, sb)
            assert lhs == xl.matmul(sb, r.reflection_matrix(r.reflect(b, a)))
            assert lhs == xl.matmul(r.reflection_matrix(r.reflect(a, b)), sa)


@pytest.mark.criterion(11, "property suites")
@pytest.mark.parametrize("name", ["A3", "A4", "D4"])
def test_criterion_11_equal_index(name):
    assert homogeneous_index_failures(name) == []


@pytest.mark.criterion(11, "property suites")
@pytest.mark.parametrize("family", ["A", "B", "C", "BC", "D"])
def test_criterion_11_graph_agreement(family):
    assert graph_agreement_failures(family, count=500, seed=11) == []
