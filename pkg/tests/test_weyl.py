import random

import pytest
from hypothesis import given, settings, strategies as st

from rootlat import exact_linalg as xl
from rootlat.root_model import build_root_system
from rootlat.subroot import Budget, BudgetExhausted, span_subroot
from rootlat.tables import load_table, f4_class_members
from rootlat.weyl import (
    WeylElement,
    conjugacy_classes,
    descent_roots,
    enumerate_reduced_presentations,
    extract_basis,
    format_polynomial,
    from_presentation,
    full_span_presentation,
    group_elements,
    is_reduced,
    k4,
    k4_exact,
    k4_formula,
    k5_exact,
    k5_upper_witness,
    quasi_coxeter_class_counts,
    quasi_coxeter_verdict,
    signed_permutation,
    span_set,
    weyl_group_order,
)

from oracles import reflection_lengths, sympy_charpoly


def R(name):
    return build_root_system(name)


def el(name, *roots):
    r = R(name)
    return WeylElement.from_reflections(r, [r.parse_root(x) for x in roots])


def coxeter(name):
    r = R(name)
    return WeylElement.from_reflections(r, r.unit_basis)


def f4_member(label):
    r = R("F4")
    for row in load_table("5.4")["rows"]:
        for lab, roots in f4_class_members(r, row):
            if lab == label:
                return WeylElement.from_reflections(r, roots)
    raise KeyError(label)


# construction and basic invariants


def test_empty_presentation():
    w = WeylElement.from_reflections(R("A2"), [])
    assert w.is_identity() and w.length == 0
    assert from_presentation(R("A2"), []).span.rank == 0


def test_a2_coxeter_element_has_order_three():
    w = el("A2", "e1-e2", "e2-e3")
    m = w.matrix
    assert xl.matmul(xl.matmul(m, m), m) == xl.identity(2) and m != xl.identity(2)
    assert w.order == 3


def test_proportional_roots_give_the_same_reflection():
    assert el("BC1", "e1") == el("BC1", "2e1")


def test_lengths():
    assert WeylElement.identity(R("F4")).length == 0
    assert coxeter("F4").length == 4
    assert el("B2", "e1", "e2").length == 2
    assert el("B2", "e1", "e2").matrix == tuple(tuple(-int(i == j) for j in range(2)) for i in range(2))


def test_reducedness():
    c3 = R("C3")
    a = c3.parse_root("e1-e2")
    assert not is_reduced([a, a])
    assert is_reduced(c3.unit_basis)
    assert not is_reduced([c3.parse_root(x) for x in ("e1+e2", "e1-e2", "2e1")])


def test_descent_examples():
    a2 = R("A2")
    assert sorted(descent_roots(coxeter("A2"))) == sorted(a2.roots)
    w = el("A2", "e1-e2")
    a = a2.parse_root("e1-e2")
    assert sorted(descent_roots(w)) == sorted([a, tuple(-x for x in a)])
    assert descent_roots(WeylElement.identity(a2)) == []


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "BC2", "C3", "D4"])
def test_reflection_length_matches_breadth_first_search(name):
    r = R(name)
    oracle = reflection_lengths(r.gram, r.roots)
    elems = group_elements(r)
    assert len(elems) == len(oracle) == weyl_group_order(r)
    for p in elems:
        w = WeylElement(r, p)
        assert oracle[xl.transpose(w.matrix)] == w.length


def descent_mismatches(name):
    r = R(name)
    oracle = reflection_lengths(r.gram, r.roots)
    bad = []
    for p in group_elements(r):
        w = WeylElement(r, p)
        lw = oracle[xl.transpose(w.matrix)]
        desc = set(descent_roots(w))
        for a in r.roots:
            sw = WeylElement.reflection(r, a) * w
            if (oracle[xl.transpose(sw.matrix)] == lw - 1) != (a in desc):
                bad.append((p, a))
    return bad


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_descent_criterion_by_brute_force(name):
    assert descent_mismatches(name) == []


def test_charpoly_examples():
    assert WeylElement.identity(R("B3")).charpoly == (1, -3, 3, -1)
    d4 = f4_member("D4")
    c3a1 = f4_member("C3+A1")
    # (t^3+1)(t+1)
    assert d4.charpoly == c3a1.charpoly == (1, 1, 0, 1, 1)
    assert format_polynomial(d4.charpoly) == "t^4 + t^3 + t + 1"
    # (t+1)^2 (t-1)^2
    assert f4_member("2A1").charpoly == (1, 0, -2, 0, 1)


@settings(max_examples=30)
@given(st.sampled_from(["A4", "B4", "C4", "D5", "F4", "E6", "G2"]), st.randoms(use_true_random=False))
def test_charpoly_matches_sympy(name, rng):
    r = R(name)
    w = WeylElement.from_reflections(r, [rng.choice(r.roots) for _ in range(rng.randint(0, 6))])
    assert list(w.charpoly) == sympy_charpoly(w.matrix)


@pytest.mark.parametrize("name", ["A4", "B4", "C4", "BC3", "D5", "E6", "E7", "E8", "F4", "G2"])
def test_random_products_preserve_form_and_roots(name):
    r = R(name)
    rng = random.Random(11)
    roots = set(r.roots)
    for _ in range(1000 if r.rank <= 6 else 200):
        w = WeylElement.from_reflections(r, [rng.choice(r.roots) for _ in range(rng.randint(1, 8))])
        m = w.matrix
        assert xl.matmul(xl.matmul(xl.transpose(m), r.gram), m) == tuple(tuple(x) for x in r.gram)
        assert all(w.apply(x) in roots for x in r.roots)
        assert WeylElement.from_matrix(r, m) == w


def test_group_operations():
    r = R("F4")
    rng = random.Random(3)
    for _ in range(50):
        a = WeylElement.from_reflections(r, rng.sample(r.roots, 3))
        b = WeylElement.from_reflections(r, rng.sample(r.roots, 2))
        assert (a * b).matrix == xl.matmul(a.matrix, b.matrix)
        assert (a * a.inverse()).is_identity()
        assert a.conjugate(b).charpoly == a.charpoly


# whole groups


def test_class_counts():
    g2 = conjugacy_classes(R("G2"))
    assert len(g2) == 6 and sum(c.size for c in g2) == 12
    assert len(conjugacy_classes(R("A2"))) == 3
    f4 = conjugacy_classes(R("F4"))
    assert len(f4) == 25 and sum(c.size for c in f4) == 1152
    by_length = [sum(1 for c in f4 if c.length == k) for k in (4, 3, 2, 1, 0)]
    assert by_length == [9, 8, 5, 2, 1]


@pytest.mark.parametrize("name,classes", [("A3", 5), ("A4", 7), ("B3", 10), ("C3", 10), ("BC3", 10), ("B4", 20), ("D4", 13), ("D5", 18)])
def test_classical_class_counts(name, classes):
    # partitions, bipartitions, and for D the bipartitions with an even number of negative parts (split classes counted twice)
    assert len(conjugacy_classes(R(name))) == classes


# presentations and quasi-Coxeter verdicts


def test_identity_has_one_presentation():
    ps = list(enumerate_reduced_presentations(WeylElement.identity(R("B3"))))
    assert len(ps) == 1 and ps[0].roots == ()


def test_span_set_of_a_3a1_element_in_f4():
    w = f4_member("3A1")
    types = {str(span_subroot(w.parent, wit).decomposition) for wit in span_set(w).values()}
    assert {"3A1", "B2+A1"} <= types


def test_every_presentation_of_the_g2_coxeter_element_spans():
    v = quasi_coxeter_verdict(coxeter("G2"))
    assert v.is_quasi and v.is_strict
    assert all(p.is_full for p in enumerate_reduced_presentations(coxeter("G2")))


def test_c4_element_with_two_negative_cycles_is_quasi_but_not_strict():
    w = el("C4", "2e1", "e2-e3", "e3-e4", "2e4")
    sp = signed_permutation(w)
    assert sp.negative_cycles == 2 and sp.positive_cycles == 0
    assert sorted(len(c) for c, _ in sp.cycles) == [1, 3]
    v = quasi_coxeter_verdict(w)
    assert v.is_quasi and not v.is_strict
    assert not span_subroot(w.parent, v.counterexample).is_full()


def test_bc2_has_no_strict_elements():
    r = R("BC2")
    assert not any(quasi_coxeter_verdict(WeylElement(r, p)).is_strict for p in group_elements(r))


def test_f4_coxeter_element_is_strict():
    v = quasi_coxeter_verdict(coxeter("F4"))
    assert v.is_quasi and v.is_strict


def homogeneous_index_failures(name):
    r = R(name)
    bad = []
    for p in group_elements(r):
        w = WeylElement(r, p)
        idx = {span_subroot(r, wit).index() if wit else 1 for wit in span_set(w).values()}
        if len(idx) != 1:
            bad.append(p)
    return bad


@pytest.mark.parametrize("name", ["A3", "A4", "D4"])
def test_reduced_presentations_have_equal_index_in_homogeneous_types(name):
    assert homogeneous_index_failures(name) == []


def test_unequal_index_occurs_in_inhomogeneous_types():
    assert homogeneous_index_failures("B3")


# signed permutations


def test_signed_permutation_examples():
    assert str(signed_permutation(el("B2", "e1"))) == "(-1)(2)"
    sp = signed_permutation(el("B2", "e1-e2"))
    assert str(sp) == "(1 2)" and sp.positive_cycles == 1
    # e1 -> -e2 and e2 -> -e1: two sign changes, so a positive cycle
    sp = signed_permutation(el("B2", "e1+e2"))
    assert str(sp) == "(-1 -2)" and sp.positive_cycles == 1 and sp.negative_cycles == 0


@pytest.mark.parametrize("name", ["B3", "B4", "BC3"])
def test_signed_permutation_describes_the_ambient_action(name):
    r = R(name)
    n = r.rank
    for p in group_elements(r):
        w = WeylElement(r, p)
        images = signed_permutation(w).images
        for i in range(1, n + 1):
            e = r.parse_root(f"e{i}")
            j = images[i - 1]
            assert r.to_ambient(w.apply(e)) == r.parse(("-" if j < 0 else "") + f"e{abs(j)}")


# k4


def test_k4_examples():
    assert k4_exact(f4_member("3A1"))[0] == 2
    for p in group_elements(R("B3")):
        w = WeylElement(R("B3"), p)
        assert k4_exact(w)[0] == 3 - w.length
    # e3 -> -e4 -> -e3: a negative 2-cycle
    w = el("C4", "2e2", "2e4", "e3-e4")
    assert str(signed_permutation(w)) == "(1)(-2)(-3 4)"
    assert k4_exact(w)[0] == 1
    assert k4_formula(w) == 1


def test_k4_witness_and_completion():
    w = f4_member("3A1")
    k, wit, comp = k4_exact(w)
    assert WeylElement.from_reflections(w.parent, wit) == w and is_reduced(wit)
    assert len(comp) == k
    assert xl.hnf_rows(list(wit) + list(comp), 4) == xl.identity(4)


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "B4", "BC3", "C3", "C4", "C5", "D4", "D5"])
def test_k4_closed_form_matches_exact_search(name):
    r = R(name)
    for c in conjugacy_classes(r):
        assert k4(c.representative, "formula") == k4(c.representative, "exact")


def test_k4_formula_is_undefined_for_exceptional_types():
    assert k4_formula(coxeter("G2")) is None
    with pytest.raises(ValueError):
        k4(coxeter("G2"), "formula")


# k5


def test_k5_of_quasi_coxeter_elements_is_zero():
    w = coxeter("F4")
    res = k5_exact(w)
    assert res.value == 0 and WeylElement.from_reflections(w.parent, res.witness) == w


def test_k5_upper_witness_pads_the_k4_presentation():
    k, p = k5_upper_witness(el("B2", "e1-e2"))
    assert k == 1 and len(p.roots) == 3 and p.is_full and p.element == el("B2", "e1-e2")
    k, p = k5_upper_witness(f4_member("3A1"))
    assert k == 2 and len(p.roots) == 7 and p.is_full


def test_k5_of_a_long_reflection_in_g2():
    r = R("G2")
    w = WeylElement.reflection(r, r.delta(2))
    assert full_span_presentation(w, 1) is None
    assert k5_exact(w).value == 1 == k4_exact(w)[0]


def test_k5_search_respects_budget():
    with pytest.raises(BudgetExhausted):
        full_span_presentation(f4_member("3A1"), 5, Budget(0))


# bases inside generating sets


def test_extract_basis_examples():
    f4 = R("F4")
    assert extract_basis(f4, f4.unit_basis) == tuple(f4.unit_basis)
    g2 = R("G2")
    long_ = [g2.delta(2), g2.delta(3)]
    short = g2.delta(1)
    basis = extract_basis(g2, long_ + [short])
    assert short in basis and len(basis) == 2 and abs(xl.determinant(basis)) == 1
    with pytest.raises(ValueError):
        extract_basis(g2, long_)


def test_extract_basis_from_index_three_sublattice_in_e8():
    from rootlat.subroot import run_script

    e8 = R("E8")
    row = next(r for r in load_table("3.4")["rows"] if r["type"] == "A8")
    run = run_script(e8, (row["I"], row["J"]), trace=True)
    lat = run.lattice
    assert lat.index() == 3
    extra = next(r for r in e8.roots if not lat.contains(r))
    basis = extract_basis(e8, list(run.state) + [extra])
    assert len(basis) == 8 and abs(xl.determinant(basis)) == 1


@settings(max_examples=40)
@given(st.sampled_from(["A4", "B4", "C4", "D4", "F4", "G2"]), st.integers(0, 2**32))
def test_extract_basis_on_random_generating_sets(name, seed):
    r = R(name)
    rng = random.Random(seed)
    while True:
        a = rng.sample(r.roots, rng.randint(r.rank, r.rank + 5))
        if xl.hnf_rows(a, r.rank) == xl.identity(r.rank):
            break
    basis = extract_basis(r, a)
    assert set(basis) <= set(a) and abs(xl.determinant(basis)) == 1


# counts of quasi-Coxeter classes and of full-rank subroot classes with cyclic quotient


@pytest.mark.parametrize("name,expected", [("G2", (1, 2)), ("F4", (4, 4)), ("A3", (0, 0))])
def test_quasi_coxeter_class_counts(name, expected):
    assert quasi_coxeter_class_counts(R(name)) == expected
