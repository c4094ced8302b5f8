"""Delimited summaries plus rendered figures for the standard desk-scale runs.

write_report fills one directory with CSV tables (generator-family orders,
exact searched orders, half-combination classification, enumeration
summaries) and two PNG figures: the group-order growth curves with the
searched orders overlaid, and the viability grid of the classified
combination classes.
"""

from __future__ import annotations

import csv
import itertools
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .enumeration import enumerate_oa
from .generators import strength2_generators, wreath_generators
from .glp import brute_force_glp, classify_half_combinations, refine_automorphisms
from .perms import PermGroup

SEARCH_CASES = ((2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 2))
ENUM_TRIPLES = ((4, 3, 2), (8, 3, 2), (8, 4, 3), (8, 4, 2))


def _sign_string(signs) -> str:
    return "".join("+" if s == 1 else "-" for s in signs)


def _label_string(labels) -> str:
    return "|".join(".".join(str(f) for f in l) for l in labels)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_report(out_dir, kmax: int = 6, appendix_ks=(3, 4, 5)) -> list[Path]:
    """Write every table and figure; returns the created paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    order_rows = []
    for k in range(1, kmax + 1):
        wreath = PermGroup(2 ** k, wreath_generators(k).perms).order
        s2 = PermGroup(2 ** k, strength2_generators(k).perms).order if k >= 2 else ""
        order_rows.append([k, wreath, s2])
    path = out / "generator_orders.csv"
    _write_csv(path, ["k", "wreath_order", "strength2_order"], order_rows)
    written.append(path)

    searched = []
    for k, t in SEARCH_CASES:
        found = brute_force_glp(k, t) if k <= 3 else refine_automorphisms(k, t)
        searched.append([k, t, found.method, found.order, found.node_count])
    path = out / "searched_orders.csv"
    _write_csv(path, ["k", "t", "method", "order", "node_count"], searched)
    written.append(path)

    reports = {}
    for k in appendix_ks:
        rep = classify_half_combinations(k)
        reports[k] = rep
        rows = [
            [_label_string(c.labels), _sign_string(c.signs), int(c.viable)]
            for c in rep.combos
        ]
        path = out / f"half_combinations_k{k}.csv"
        _write_csv(path, ["labels", "signs", "viable"], rows)
        written.append(path)
        rows = [
            [
                _label_string(cls.representative),
                len(cls.members),
                len(cls.viable_patterns),
                ";".join(_sign_string(p) for p in cls.viable_patterns),
            ]
            for cls in rep.classes
        ]
        path = out / f"half_combination_classes_k{k}.csv"
        _write_csv(
            path,
            ["representative", "label_sets", "viable_patterns", "patterns"],
            rows,
        )
        written.append(path)

    enum_rows = []
    for n_runs, k, t in ENUM_TRIPLES:
        group = strength2_generators(k) if t == 2 else wreath_generators(k)
        res = enumerate_oa(n_runs, k, t, group)
        enum_rows.append(
            [n_runs, k, t, group.kind, res.total_solutions,
             len(res.representatives), res.group_order_used]
        )
    path = out / "enumeration.csv"
    _write_csv(
        path,
        ["N", "k", "t", "group", "solutions", "orbits", "group_order"],
        enum_rows,
    )
    written.append(path)

    written.append(_orders_figure(out, order_rows, searched))
    written.append(_viability_figure(out, reports[max(appendix_ks)]))
    return written


def _orders_figure(out: Path, order_rows, searched) -> Path:
    ks = [row[0] for row in order_rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ks, [2 ** k * math.factorial(k) for k in ks],
                "o-", label="2^k k! (signed relabelings)")
    ax.semilogy(ks, [2 ** k * math.factorial(k + 1) for k in ks],
                "s-", label="2^k (k+1)! (rho extension)")
    strength2 = [(k, order) for k, t, _, order, _ in searched if t == 2]
    ax.semilogy(
        [k for k, _ in strength2],
        [order for _, order in strength2],
        "k*", markersize=12, linestyle="none", label="searched order, t=2",
    )
    ax.set_xlabel("factors k")
    ax.set_ylabel("group order")
    ax.set_title("Row-space symmetry group orders")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    path = out / "group_orders.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _viability_figure(out: Path, report) -> Path:
    patterns = [(1,) + tail for tail in itertools.product((1, -1), repeat=3)]
    by_labels = {}
    for combo in report.combos:
        by_labels.setdefault(combo.labels, {})[combo.signs] = combo.viable
    grid = []
    names = []
    for cls in report.classes:
        row_flags = by_labels[cls.representative]
        grid.append([1 if row_flags[p] else 0 for p in patterns])
        names.append(_label_string(cls.representative))
    fig, ax = plt.subplots(figsize=(6, 0.45 * len(grid) + 1.5))
    ax.imshow(grid, aspect="auto", cmap="Greys", vmin=0, vmax=1)
    ax.set_xticks(range(len(patterns)))
    ax.set_xticklabels([_sign_string(p) for p in patterns], rotation=45)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xlabel("sign pattern")
    ax.set_title(f"Viable half combinations by class, k={report.k}")
    fig.tight_layout()
    path = out / "half_combination_viability.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
