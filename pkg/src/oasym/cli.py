"""Command line front end.

Subcommands: model (moment matrix / right-hand side), group (generator
families), glp (exact symmetry-group search), appendix (half-combination
classification table), enum (design search with isomorph rejection), check
(built-in reproduction suite), report (CSV tables and figures to a
directory).  Results go to stdout as JSON or delimited text, errors to
stderr.  Exit codes: 0 success, 1 internal failure or failed checks,
2 usage, 3 budget/resource.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path

from .enumeration import enumerate_oa, verify_group_action
from .errors import BudgetExceededError
from .factorial import FrequencyVector, design_from_freq, design_to_text
from .generators import (
    factor_swap_perm,
    rho_perm,
    strength2_generators,
    wreath_generators,
)
from .glp import (
    brute_force_glp,
    classify_half_combinations,
    half_family_sign_rule,
    is_half_family,
    is_pair_cycle,
    refine_automorphisms,
    verify_form_lemmas,
)
from .model import (
    build_j,
    build_m,
    gram_projection,
    is_feasible,
    perm_preserves_rowspace,
)
from .perms import PermGroup, compose, identity, permute_vector
from .report import write_report

import numpy as np


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_model(args) -> int:
    if args.rhs is not None:
        _emit(build_j(args.rhs, args.k, args.t).to_json_dict())
        return 0
    model = build_m(args.k, args.t)
    if args.text:
        for label, row in zip(model.labels, model.rows):
            # "0" marks the constant row; factor labels start at 1
            name = ".".join(str(f) for f in label) or "0"
            print(name + ": " + " ".join(f"{x:+d}" for x in row))
    else:
        _emit(model.to_json_dict())
    return 0


def _generator_set(kind: str, k: int):
    if kind == "wreath":
        return wreath_generators(k)
    return strength2_generators(k)


def cmd_group(args) -> int:
    if args.check_rowspace and args.t is None:
        print("error: --check-rowspace needs --t", file=sys.stderr)
        return 2
    gs = _generator_set(args.kind, args.k)
    if args.check_rowspace:
        flags = [perm_preserves_rowspace(p, args.k, args.t) for p in gs.perms]
        _emit({"degree": 2 ** args.k, "t": args.t,
               "generators_preserve_rowspace": flags})
        return 0
    group = PermGroup(2 ** args.k, gs.perms)
    if args.order:
        print(group.order)
        return 0
    _emit(group.report_json())
    return 0


def cmd_glp(args) -> int:
    method = args.method
    if method == "auto":
        method = "brute" if args.k <= 3 else "refine"
    if method == "brute":
        found = brute_force_glp(args.k, args.t)
    else:
        found = refine_automorphisms(args.k, args.t, node_budget=args.budget)
    _emit({
        "degree": 2 ** args.k,
        "order": str(found.order),
        "num_generators": len(found.generators),
    })
    return 0


def cmd_appendix(args) -> int:
    report = classify_half_combinations(args.k)
    if args.classes:
        print("representative,label_sets,viable_patterns,patterns")
        for cls in report.classes:
            rep = _label_string(cls.representative)
            pats = ";".join(_sign_string(p) for p in cls.viable_patterns)
            print(f"{rep},{len(cls.members)},{len(cls.viable_patterns)},{pats}")
    else:
        print("labels,signs,viable")
        for combo in report.combos:
            print(
                f"{_label_string(combo.labels)},{_sign_string(combo.signs)},"
                f"{'yes' if combo.viable else 'no'}"
            )
    viable_sets = {c.labels for c in report.combos if c.viable}
    n_family = sum(1 for ls in viable_sets if is_half_family(ls))
    print(
        f"# viable_label_sets={len(viable_sets)} "
        f"two_pairs_two_mains_family={n_family} "
        f"pair_cycles={len(viable_sets) - n_family} "
        f"family_only={'yes' if report.family_only else 'no'} "
        f"no_other_viable_shape={'yes' if report.family_or_cycle_only else 'no'}"
    )
    return 0


def _label_string(labels) -> str:
    return "|".join(".".join(str(f) for f in l) for l in labels)


def _sign_string(signs) -> str:
    return "".join("+" if s == 1 else "-" for s in signs)


def cmd_enum(args) -> int:
    group = None
    if args.group == "wreath":
        group = wreath_generators(args.k)
    elif args.group == "strength2":
        group = strength2_generators(args.k)
    result = enumerate_oa(args.n, args.k, args.t, group, node_budget=args.budget)
    _emit(result.to_json_dict())
    if args.emit_designs is not None:
        out = Path(args.emit_designs)
        out.mkdir(parents=True, exist_ok=True)
        for i, rep in enumerate(result.representatives):
            design = design_from_freq(FrequencyVector(args.k, rep))
            path = out / f"design_{i:03d}.txt"
            path.write_text(design_to_text(design, zero_one=args.zero_one))
    return 0


def cmd_check(args) -> int:
    outcomes = check_suite(fast=args.fast)
    width = max(len(o.name) for o in outcomes)
    for o in outcomes:
        mark = "PASS" if o.passed else "FAIL"
        detail = f"  ({o.detail})" if o.detail and not o.passed else ""
        print(f"{mark}  {o.name:<{width}}{detail}")
    n_pass = sum(o.passed for o in outcomes)
    print(f"# {n_pass}/{len(outcomes)} checks passed")
    return 0 if n_pass == len(outcomes) else 1


def cmd_report(args) -> int:
    for path in write_report(args.out, kmax=args.kmax):
        print(path)
    return 0


# -- reproduction suite --------------------------------------------------------


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


def _check(checks, name):
    def wrap(fn):
        checks.append((name, fn))
        return fn

    return wrap


def check_suite(fast: bool = False) -> list[CheckOutcome]:
    """Run the built-in reproduction suite and return one outcome per check."""
    checks: list = []
    reg = lambda name: _check(checks, name)  # noqa: E731

    @reg("model rows orthogonal, norm^2 = 2^k, QQ = 2^k Q (k <= 6)")
    def _model_invariants():
        for k in range(1, 7):
            for t in range(1, k + 1):
                m = build_m(k, t).array
                gram = m @ m.T
                if not (gram == (2 ** k) * np.eye(m.shape[0], dtype=np.int64)).all():
                    return f"row gram broken at k={k} t={t}"
                q = gram_projection(k, t)
                if not ((q @ q) == (2 ** k) * q).all():
                    return f"projector identity broken at k={k} t={t}"
        return True

    @reg("signed-relabeling group orders 2^k k! (k = 1..6)")
    def _wreath_orders():
        for k in range(1, 7):
            gs = wreath_generators(k)
            got = PermGroup(2 ** k, gs.perms).order
            if got != gs.claimed_order:
                return f"k={k}: {got} != {gs.claimed_order}"
        return True

    @reg("rho-extended group orders 2^k (k+1)! (k = 4..6)")
    def _strength2_orders():
        for k in (4, 5, 6):
            gs = strength2_generators(k)
            got = PermGroup(2 ** k, gs.perms).order
            if got != gs.claimed_order:
                return f"k={k}: {got} != {gs.claimed_order}"
        return True

    @reg("rho relations: involutions and conjugated factor swaps (k <= 6)")
    def _rho_relations():
        for k in range(2, 7):
            ident = identity(2 ** k)
            for i in range(1, k + 1):
                r = rho_perm(i, k)
                if compose(r, r) != ident:
                    return f"rho_{i} not an involution at k={k}"
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    ri, rj = rho_perm(i, k), rho_perm(j, k)
                    if compose(ri, compose(rj, ri)) != factor_swap_perm(i, j, k):
                        return f"rho_{i} rho_{j} rho_{i} != swap({i},{j}) at k={k}"
        return True

    @reg("generators preserve the row space for their strength")
    def _gen_rowspace():
        for k in range(1, 6):
            for t in range(1, k + 1):
                for p in wreath_generators(k).perms:
                    if not perm_preserves_rowspace(p, k, t):
                        return f"wreath generator fails at k={k} t={t}"
        for k in range(2, 7):
            for p in strength2_generators(k).perms:
                if not perm_preserves_rowspace(p, k, 2):
                    return f"strength2 generator fails at k={k}"
        return True

    @reg("exhaustive scan orders: (2,1)=8, (3,1)=48, (3,2)=1152")
    def _brute_orders():
        for k, t, want in ((2, 1, 8), (3, 1, 48), (3, 2, 1152)):
            got = brute_force_glp(k, t).order
            if got != want:
                return f"k={k} t={t}: {got} != {want}"
        return True

    @reg("refinement search reproduces the exhaustive scan (k <= 3)")
    def _refine_matches_brute():
        for k in range(1, 4):
            for t in range(1, k + 1):
                b = brute_force_glp(k, t)
                r = refine_automorphisms(k, t)
                if b.order != r.order:
                    return f"k={k} t={t}: {r.order} != {b.order}"
                bg = PermGroup(2 ** k, b.generators)
                rg = PermGroup(2 ** k, r.generators)
                if not all(bg.contains(g) for g in r.generators):
                    return f"k={k} t={t}: refine gens escape brute group"
                if not all(rg.contains(g) for g in b.generators):
                    return f"k={k} t={t}: brute gens escape refine group"
        return True

    @reg("refinement search orders: (4,1)=384, (4,2)=1920" +
         ("" if fast else ", (5,2)=23040"))
    def _refine_orders():
        cases = [(4, 1, 384), (4, 2, 1920)]
        if not fast:
            cases.append((5, 2, 23040))
        for k, t, want in cases:
            got = refine_automorphisms(k, t).order
            if got != want:
                return f"k={k} t={t}: {got} != {want}"
        return True

    @reg("k=3, t=2: generated order-192 group is a proper subgroup of the 1152")
    def _k3_exception():
        big = PermGroup(8, brute_force_glp(3, 2).generators)
        small = PermGroup(8, strength2_generators(3).perms)
        if small.order != 192 or big.order != 1152:
            return f"orders {small.order}, {big.order}"
        if not all(big.contains(g) for g in small.elements()):
            return "membership failure"
        return True

    @reg("half-combination classification: viable shapes and sign rule (k = 3..5)")
    def _appendix():
        for k in (3, 4, 5):
            rep = classify_half_combinations(k)
            if not (rep.families_all_viable and rep.family_or_cycle_only):
                return f"k={k}: unexpected viable shape"
            if rep.family_only != (k == 3):
                return f"k={k}: family_only={rep.family_only}"
            for combo in rep.combos:
                if is_half_family(combo.labels) or is_pair_cycle(combo.labels):
                    if combo.viable != half_family_sign_rule(combo.signs):
                        return f"k={k}: sign rule mismatch at {combo}"
                elif combo.viable:
                    return f"k={k}: viable combo outside both shapes"
        return True

    @reg("basis images: all signed at (4,2); a four-term half image at (3,2)")
    def _forms():
        r42 = verify_form_lemmas(4, 2)
        if not r42.all_signed or r42.other_count:
            return "k=4 t=2 images not all signed basis columns"
        r32 = verify_form_lemmas(3, 2)
        if r32.half_count == 0 or r32.other_count:
            return "k=3 t=2 missing four-term half images"
        r31 = verify_form_lemmas(3, 1)
        if not r31.all_signed:
            return "k=3 t=1 images not all signed"
        return True

    @reg("enumeration: counts, orbits, and feasibility transport")
    def _enumeration():
        triples = [(4, 3, 2, 2, 1), (8, 3, 2, 3, 2), (8, 4, 3, 2, 1)]
        if not fast:
            triples.append((8, 4, 2, None, None))
        for n_runs, k, t, want_total, want_orbits in triples:
            group = strength2_generators(k) if t == 2 else wreath_generators(k)
            plain = enumerate_oa(n_runs, k, t)
            pruned = enumerate_oa(n_runs, k, t, group)
            if plain.total_solutions != pruned.total_solutions:
                return f"({n_runs},{k},{t}): pruned/unpruned disagree"
            if sum(pruned.orbit_sizes) != pruned.total_solutions:
                return f"({n_runs},{k},{t}): orbit sizes do not add up"
            if want_total is not None and (
                pruned.total_solutions != want_total
                or len(pruned.representatives) != want_orbits
            ):
                return f"({n_runs},{k},{t}): unexpected counts"
            if not verify_group_action(pruned, group):
                return f"({n_runs},{k},{t}): group action check failed"
            for rep in pruned.representatives:
                for p in group.perms:
                    moved = FrequencyVector(k, permute_vector(p, rep))
                    if not is_feasible(moved, n_runs, k, t, integral=True):
                        return f"({n_runs},{k},{t}): transport failure"
        return True

    outcomes = []
    for name, fn in checks:
        try:
            result = fn()
        except Exception as exc:  # noqa: BLE001 - table must keep going
            outcomes.append(CheckOutcome(name, False, repr(exc)))
            continue
        if result is True:
            outcomes.append(CheckOutcome(name, True))
        else:
            outcomes.append(CheckOutcome(name, False, str(result)))
    return outcomes


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oasym",
        description="Moment models and row-space symmetry groups of "
                    "two-level orthogonal arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="print the moment matrix or its rhs")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--text", action="store_true")
    p.add_argument("--rhs", type=int, metavar="N",
                   help="print the right-hand side for N runs instead")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("group", help="generator families and their orders")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=("wreath", "strength2"), required=True)
    p.add_argument("--order", action="store_true",
                   help="print only the group order")
    p.add_argument("--check-rowspace", action="store_true",
                   help="report row-space preservation per generator")
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("glp", help="exact symmetry group of the model")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", choices=("auto", "brute", "refine"),
                   default="auto")
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.set_defaults(func=cmd_glp)

    p = sub.add_parser("appendix",
                       help="half-coefficient combination classification")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--classes", action="store_true",
                   help="print relabeling classes instead of raw combos")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("enum", help="enumerate strength-t frequency vectors")
    p.add_argument("--n", type=int, required=True, help="run count N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--group", choices=("wreath", "strength2", "none"),
                   default="none")
    p.add_argument("--emit-designs", metavar="DIR",
                   help="write representative designs as text files")
    p.add_argument("--zero-one", action="store_true",
                   help="emit designs with 0/1 levels (0 means +1)")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("check", help="run the built-in reproduction suite")
    p.add_argument("--fast", action="store_true",
                   help="skip the slowest searches")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", help="write CSV tables and figures")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--kmax", type=int, default=6)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:  # noqa: BLE001 - internal invariant violation
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
