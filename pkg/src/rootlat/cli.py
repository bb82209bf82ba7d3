"""Command-line interface ``rootlat``.

Exit codes: 0 success, 1 a verification found mismatches, 2 usage or input
error, 3 search budget (``ROOTLAT_BUDGET_MS``) exhausted, 4 infeasible table
requested without ``--partial``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from . import exact_linalg as xl
from .affine import ExtendedAffineLattice, check_quasi_coxeter_constraints, induced_element, quotient_root_lattice
from .root_model import RootSystem, build_root_system
from .subroot import Budget, BudgetExhausted, class_key, enumerate_subroot_types, k2_search, k3_search, run_script, span_subroot
from .tables import TABLE_IDS, InfeasibleTable, verify_table
from .weyl import (
    WeylElement,
    conjugacy_classes,
    extract_basis,
    format_polynomial,
    k4_exact,
    k4_formula,
    k5_exact,
    quasi_coxeter_verdict,
    signed_permutation,
    weyl_group_order,
)

EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET, EXIT_INFEASIBLE = 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _system(name: str) -> RootSystem:
    try:
        return build_root_system(name)
    except (ValueError, KeyError) as e:
        raise UsageError(f"unknown root system {name!r}: {e}") from None


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _root_list(parent: RootSystem, text: str | None) -> list[tuple[int, ...]]:
    if not text:
        return []
    return [parent.parse_root(x) for x in text.split(";") if x.strip()]


def _sqrt(q: Fraction) -> str:
    if q.denominator == 1 and math.isqrt(q.numerator) ** 2 == q.numerator:
        return str(math.isqrt(q.numerator))
    return f"sqrt({q})"


def _emit(args, data: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _step_str(parent: RootSystem, step: tuple) -> str:
    if step[0] == "1":
        return f"extend the summand of {parent.fmt(step[1])}, erase {parent.fmt(step[2])}"
    return f"erase {parent.fmt(step[1])}"


# ---------------------------------------------------------------------------
# verbs


def cmd_info(args) -> int:
    r = _system(args.type)
    norms = [Fraction(v, r.scale) for v in r.norm_values]
    data = {
        "type": str(r.type),
        "rank": r.rank,
        "ambient_dim": r.ambient_dim,
        "roots": len(r.roots),
        "root_norms": [str(q) for q in norms],
        "root_lengths": [_sqrt(q) for q in norms],
        "weyl_order": weyl_group_order(r),
        "named_roots": [str(v) for v in r.named_roots],
    }
    lines = [
        f"{data['type']}: rank {r.rank}, {len(r.roots)} roots, lengths {{{', '.join(data['root_lengths'])}}}",
        f"Weyl group order {data['weyl_order']}",
    ]
    lines += [f"  d{i} = {v}" for i, v in enumerate(data["named_roots"], 1)]
    _emit(args, data, "\n".join(lines))
    return 0


def _lattice_report(parent: RootSystem, lat, args, budget: Budget) -> tuple[dict, list[str]]:
    ck = class_key(lat)
    data = {
        "parent": str(parent.type),
        "type": str(ck),
        "quotient": str(lat.quotient()),
        "k1": lat.k1(),
        "index": lat.index(),
        "rank": lat.rank,
    }
    parts = [f"{ck}, quotient {lat.quotient()}, k1={lat.k1()}"]
    if getattr(args, "k2", False):
        k, wit = k2_search(lat, budget)
        data["k2"] = k
        data["k2_roots"] = [parent.fmt(r) for r in wit]
        parts.append(f"k2={k}")
    if getattr(args, "k3", False):
        k, steps = k3_search(lat, budget)
        data["k3"] = k
        data["k3_steps"] = [_step_str(parent, s) for s in steps]
        parts.append(f"k3={k}")
    return data, [", ".join(parts)]


def cmd_bdds(args) -> int:
    parent = _system(args.type)
    add, remove = _int_list(args.add), _int_list(args.remove)
    budget = Budget.from_env()
    try:
        run = run_script(parent, (add, remove), trace=True)
    except (ValueError, IndexError) as e:
        raise UsageError(str(e)) from None
    data, lines = _lattice_report(parent, run.lattice, args, budget)
    data.update({"I": add, "J": remove, "basis": [parent.fmt(r) for r in run.state], "sign_flips": run.flipped})
    if run.flipped:
        lines.append("note: added root(s) " + ", ".join(f"d{i}" for i in run.flipped) + " used with opposite sign")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_quotient(args) -> int:
    parent = _system(args.type)
    roots = _root_list(parent, args.roots)
    lat = span_subroot(parent, roots)
    data, lines = _lattice_report(parent, lat, args, Budget.from_env())
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_element(args) -> int:
    parent = _system(args.type)
    budget = Budget.from_env()
    roots = _root_list(parent, args.refl)
    w = WeylElement.from_reflections(parent, roots)
    v = quasi_coxeter_verdict(w, budget)
    k4, wit, comp = k4_exact(w, budget)
    data: dict = {
        "parent": str(parent.type),
        "reflections": [parent.fmt(r) for r in roots],
        "length": w.length,
        "order": w.order,
        "charpoly": list(w.charpoly),
        "charpoly_text": format_polynomial(w.charpoly),
        "quasi_coxeter": v.is_quasi,
        "strict": v.is_strict,
        "k4": k4,
        "k4_span": [parent.fmt(r) for r in wit],
        "k4_completion": [parent.fmt(r) for r in comp],
        "matrix": xl.matrix_to_json(w.matrix),
    }
    lines = [
        f"length {w.length}, order {w.order}, charpoly {data['charpoly_text']}",
        f"quasi-Coxeter: {'yes' if v.is_quasi else 'no'}, strict: {'yes' if v.is_strict else 'no'}",
        f"k4={k4}",
    ]
    if parent.type.family in ("B", "C", "BC", "D"):
        sp = signed_permutation(w)
        data["signed_permutation"] = str(sp)
        data["k4_formula"] = k4_formula(w)
        lines.insert(1, f"signed permutation {sp}")
    if args.k5:
        r = k5_exact(w, budget)
        data["k5"] = r.value
        data["k5_presentation"] = [parent.fmt(x) for x in r.witness]
        lines.append(f"k5={r.value}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    parent = _system(args.type)
    budget = Budget.from_env()
    if args.weyl:
        rows = []
        for c in conjugacy_classes(parent, budget=budget):
            w = c.representative
            v = quasi_coxeter_verdict(w, budget)
            row = {"length": w.length, "size": c.size, "charpoly": format_polynomial(w.charpoly), "quasi_coxeter": v.is_quasi, "strict": v.is_strict}
            if parent.type.family in ("B", "C", "BC", "D"):
                row["signed_permutation"] = str(signed_permutation(w))
            rows.append(row)
        text = "\n".join(
            f"l={r['length']} size={r['size']:<5} {r['charpoly']:<28} {'quasi' if r['quasi_coxeter'] else '-':5} {'strict' if r['strict'] else ''}"
            + (f" {r['signed_permutation']}" if "signed_permutation" in r else "")
            for r in rows
        )
        _emit(args, {"parent": str(parent.type), "classes": rows}, text + f"\n{len(rows)} conjugacy classes")
        return 0
    classes = enumerate_subroot_types(parent, budget=budget)
    rows = []
    for k, c in sorted(classes.items(), key=lambda kv: (-kv[1].representative.rank, kv[1].depth, str(kv[0]))):
        rows.append({"type": str(k), "quotient": str(c.representative.quotient()), "k1": c.k1, "k3": c.depth, "steps": [_step_str(parent, s) for s in c.steps]})
    text = "\n".join(f"{r['type']:<18} {r['quotient']:<12} k1={r['k1']} k3={r['k3']}" for r in rows)
    _emit(args, {"parent": str(parent.type), "classes": rows}, text + f"\n{len(rows)} classes")
    return 0


def cmd_extract_basis(args) -> int:
    parent = _system(args.type)
    roots = _root_list(parent, args.roots)
    basis = extract_basis(parent, roots)
    out = [parent.fmt(r) for r in basis]
    _emit(args, {"parent": str(parent.type), "basis": out, "determinant": xl.determinant(basis)}, "\n".join(out))
    return 0


def cmd_tables(args) -> int:
    if args.action == "list":
        print("\n".join(TABLE_IDS))
        return 0
    if not args.id:
        raise UsageError("tables verify needs a table id")
    rep = verify_table(args.id, partial=args.partial, budget=Budget.from_env())
    _emit(args, rep.to_json(), rep.format())
    return 0 if rep.ok else EXIT_MISMATCH


def cmd_affine(args) -> int:
    budget = Budget.from_env()
    if args.lattice:
        with open(args.lattice) as f:
            ea = ExtendedAffineLattice.from_json(json.load(f))
    elif args.base:
        base = _system(args.base)
        ea = ExtendedAffineLattice.product(base, args.radical, window=args.window)
    else:
        raise UsageError("affine needs --base or --lattice")
    if args.action == "build":
        data = ea.to_json()
        q = quotient_root_lattice(ea)
        text = f"rank {ea.rank}, radical rank {ea.radical_rank}, {len(ea.roots)} stored roots, quotient {q}"
        _emit(args, data, text)
        return 0
    q = quotient_root_lattice(ea)
    if args.lattice:
        # integer vectors of the extension, e.g. "1,0,0;0,1,1"
        vecs = [tuple(_int_list(x)) for x in (args.element or "").split(";") if x.strip()]
        wbar = induced_element(q, vecs)
        model = q.lattice
    else:
        model = ea.base
        wbar = WeylElement.from_reflections(model, _root_list(model, args.element))
    rep = check_quasi_coxeter_constraints(ea, wbar, exact_k5=args.exact_k5, budget=budget)
    data = rep.to_json()
    data["quotient"] = str(q)
    lines = [
        f"extension of rank {rep.n} with radical rank {rep.radical_rank}, quotient {q}",
        f"l(w) = {rep.length}, k5 = {rep.k5} ({rep.k5_source})",
        f"l <= n - r: {rep.length} <= {rep.n - rep.radical_rank} {'pass' if rep.length_bound else 'fail'}",
        f"l + 2 k5 <= n: {rep.length + 2 * rep.k5} <= {rep.n} {'pass' if rep.padded_bound else 'fail'}",
        "obstructed: no element of the extension with this image is quasi-Coxeter" if rep.obstructed else "not obstructed",
    ]
    _emit(args, data, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootlat", description="Exact computations with root lattices, subroot lattices and Weyl groups.")
    p.add_argument("--version", action="version", version=f"rootlat {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine readable output")
        return sp

    s = add("info", cmd_info, "rank, roots and named roots of a root system")
    s.add_argument("type")
    s = add("bdds", cmd_bdds, "run a compact BDdS script from the root basis")
    s.add_argument("type")
    s.add_argument("--add", help="indices i of roots d_i to add, e.g. 9,10")
    s.add_argument("--remove", help="indices j of roots d_j to erase, e.g. 1,4,6")
    s.add_argument("--k2", action="store_true", help="also compute k2 with a witness")
    s.add_argument("--k3", action="store_true", help="also compute k3 with a script")
    s = add("quotient", cmd_quotient, "type and quotient of the lattice spanned by roots")
    s.add_argument("type")
    s.add_argument("--roots", required=True, help="';'-separated roots, e.g. 'e1-e2; e3'")
    s.add_argument("--k2", action="store_true")
    s.add_argument("--k3", action="store_true")
    s = add("element", cmd_element, "invariants of a product of reflections")
    s.add_argument("type")
    s.add_argument("--refl", required=True, help="';'-separated roots; the product applies the last one first")
    s.add_argument("--k5", action="store_true", help="also run the exhaustive k5 search")
    s = add("classify", cmd_classify, "all subroot lattice classes, or Weyl conjugacy classes with --weyl")
    s.add_argument("type")
    s.add_argument("--weyl", action="store_true")
    s = add("extract-basis", cmd_extract_basis, "a Z-basis inside a generating set of roots")
    s.add_argument("type")
    s.add_argument("--roots", required=True)
    s = add("tables", cmd_tables, "verify the embedded tables")
    s.add_argument("action", choices=["verify", "list"])
    s.add_argument("id", nargs="?", choices=TABLE_IDS)
    s.add_argument("--partial", action="store_true", help="skip rows that cannot be recomputed")
    s = add("affine", cmd_affine, "extended affine root lattices")
    s.add_argument("action", choices=["check", "build"])
    s.add_argument("--base", help="quotient type of a product extension")
    s.add_argument("--radical", type=int, default=1, help="radical rank of a product extension")
    s.add_argument("--window", type=int, default=1, help="stored radical offsets per coordinate")
    s.add_argument("--lattice", help="JSON file with gram (p/q strings) and roots")
    s.add_argument("--element", help="';'-separated roots of the quotient (with --base) or integer vectors (with --lattice)")
    s.add_argument("--exact-k5", action="store_true", help="exhaustive k5 instead of k5 = k4")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as e:
        print(f"rootlat: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InfeasibleTable as e:
        print(f"rootlat: {e} (use --partial)", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, ValueError, IndexError, OSError) as e:
        print(f"rootlat: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
