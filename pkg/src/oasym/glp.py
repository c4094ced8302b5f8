"""Exact symmetry groups of the moment model, computed from the Gram matrix.

A point permutation maps the feasible set of the relaxed model onto itself
exactly when it preserves the row space of M, and, because permutations are
orthogonal maps, that is the same as fixing the Gram matrix entrywise:
Q[p(i)][p(j)] == Q[i][j].  So the group is the automorphism group of the
complete edge-weighted graph with weights Q, which is pure integer
combinatorics.  Two routes are implemented: an exhaustive scan of all (2**k)!
permutations for k <= 3, and a partition-refinement backtracking search for
larger k.  The module also carries the structural analysis of the group
elements themselves: the exhaustive half-coefficient combination
classification and the basis-image form scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError
from .factorial import _walsh, interaction_column, mask_factors
from .model import gram_projection, labels_up_to
from .perms import Perm, PermGroup, permute_vector


@dataclass(frozen=True)
class AutSearchResult:
    k: int
    t: int
    order: int
    generators: tuple[Perm, ...]
    method: str
    node_count: int


def brute_force_glp(k: int, t: int) -> AutSearchResult:
    """Scan all (2**k)! point permutations for Gram invariance.

    Returns a reduced generating set (kept elements that grew the group) and
    cross-checks the resulting chain order against the raw keep count.
    """
    if k > 3:
        raise BudgetExceededError(
            f"(2**{k})! permutations is past the exhaustive range; "
            "use refine_automorphisms"
        )
    n = 2 ** k
    q = [tuple(int(x) for x in row) for row in gram_projection(k, t).tolist()]
    kept = []
    count = 0
    for p in itertools.permutations(range(n)):
        count += 1
        ok = True
        for i in range(n):
            qi = q[i]
            qpi = q[p[i]]
            for j in range(n):
                if qpi[p[j]] != qi[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            kept.append(p)
    gens: list[Perm] = []
    chain = PermGroup(n, ())
    for p in kept:
        if not chain.contains(p):
            gens.append(p)
            chain = PermGroup(n, gens)
    if chain.order != len(kept):
        raise RuntimeError(
            f"chain order {chain.order} disagrees with kept count {len(kept)}"
        )
    return AutSearchResult(k, t, chain.order, tuple(gens), "brute", count)


class _GramAutSearch:
    """Backtracking search for every permutation fixing Q entrywise.

    Points are colored; a refinement round replaces each color by the rank of
    the signature (own color, sorted multiset of (color, Q weight) pairs to
    all points), iterated to a fixpoint.  Ranks come from sorting the
    signatures themselves, so colorings computed on the two sides of a
    candidate mapping stay comparable, and a mismatch in signature multisets
    disproves any mapping between the two sides.

    The group is assembled one stabilizer level at a time.  At each level,
    pin the smallest point v of the first smallest non-singleton cell and
    recurse for the stabilizer of v; then, for each other point w of the cell
    not yet in the orbit of v under the generators found so far, run a paired
    search for one automorphism mapping v to w.  Orbit-stabilizer turns the
    orbit length and the stabilizer order into the level order, and the
    collected elements generate the level group.  Generators accumulate in
    self.gens as they are found, so a budget failure still leaves a valid
    subgroup behind.
    """

    def __init__(self, q_rows: list[tuple[int, ...]], budget: int):
        self.q = q_rows
        self.n = len(q_rows)
        self.budget = budget
        self.nodes = 0
        self.gens: list[Perm] = []

    def run(self) -> tuple[int, tuple[Perm, ...]]:
        order = self._level(self._refine([0] * self.n))
        return order, tuple(self.gens)

    # -- bookkeeping ---------------------------------------------------------

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            lower = PermGroup(self.n, self.gens).order if self.gens else 1
            raise BudgetExceededError(
                "automorphism search node budget exhausted",
                node_count=self.nodes,
                budget=self.budget,
                partial_generators=tuple(self.gens),
                order_lower_bound=lower,
            )

    # -- coloring ------------------------------------------------------------

    def _signatures(self, colors: list[int]) -> list[tuple]:
        return [
            (colors[i], tuple(sorted(zip(colors, self.q[i]))))
            for i in range(self.n)
        ]

    def _refine(self, colors: list[int]) -> list[int]:
        """Iterate signature ranking to a fixpoint (single coloring)."""
        while True:
            sigs = self._signatures(colors)
            ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
            new = [ranks[s] for s in sigs]
            if new == colors:
                return colors
            colors = new

    def _refine_pair(self, cs: list[int], ct: list[int]):
        """Refine two colorings in lockstep with shared ranks.

        Returns the stable pair, or None as soon as the signature multisets
        diverge (no mapping can match the two sides then).
        """
        self._tick()
        while True:
            sigs_s = self._signatures(cs)
            sigs_t = self._signatures(ct)
            if sorted(sigs_s) != sorted(sigs_t):
                return None
            ranks = {s: r for r, s in enumerate(sorted(set(sigs_s)))}
            new_s = [ranks[s] for s in sigs_s]
            new_t = [ranks[s] for s in sigs_t]
            if new_s == cs and new_t == ct:
                return cs, ct
            cs, ct = new_s, new_t

    @staticmethod
    def _individualize(colors: list[int], v: int) -> list[int]:
        # ranks are < n, so n is always a fresh color
        out = list(colors)
        out[v] = len(colors)
        return out

    def _branch_cell(self, colors: list[int]) -> list[int] | None:
        """Points of the first smallest non-singleton cell, ascending."""
        cells: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            cells.setdefault(c, []).append(i)
        candidates = [(len(ps), c) for c, ps in cells.items() if len(ps) > 1]
        if not candidates:
            return None
        _, c = min(candidates)
        return cells[c]

    # -- group assembly ------------------------------------------------------

    def _level(self, colors: list[int]) -> int:
        self._tick()
        cell = self._branch_cell(colors)
        if cell is None:
            return 1
        v = cell[0]
        start = len(self.gens)
        sub_order = self._level(self._refine(self._individualize(colors, v)))
        orbit = self._orbit(v, start)
        for w in cell[1:]:
            if w in orbit:
                continue
            g = self._find_mapping(colors, v, w)
            if g is not None:
                self.gens.append(g)
                orbit = self._orbit(v, start)
        return len(orbit) * sub_order

    def _orbit(self, v: int, start: int) -> set[int]:
        gens = self.gens[start:]
        orb = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        return orb

    def _find_mapping(self, colors: list[int], v: int, w: int) -> Perm | None:
        """One Q-automorphism respecting the cells of colors with v -> w."""
        pair = self._refine_pair(
            self._individualize(colors, v), self._individualize(colors, w)
        )
        if pair is None:
            return None
        return self._mapping_dfs(*pair)

    def _mapping_dfs(self, cs: list[int], ct: list[int]) -> Perm | None:
        cell = self._branch_cell(cs)
        if cell is None:
            return self._candidate(cs, ct)
        v = cell[0]
        color = cs[v]
        for w in (i for i in range(self.n) if ct[i] == color):
            pair = self._refine_pair(
                self._individualize(cs, v), self._individualize(ct, w)
            )
            if pair is None:
                continue
            found = self._mapping_dfs(*pair)
            if found is not None:
                return found
        return None

    def _candidate(self, cs: list[int], ct: list[int]) -> Perm | None:
        # both sides discrete with equal color sets: match colors, then verify
        target_at = {c: i for i, c in enumerate(ct)}
        p = [target_at[c] for c in cs]
        q = self.q
        for i in range(self.n):
            qi = q[i]
            qpi = q[p[i]]
            for j in range(self.n):
                if qpi[p[j]] != qi[j]:
                    return None
        return tuple(p)


def refine_automorphisms(k: int, t: int, node_budget: int = 10 ** 8) -> AutSearchResult:
    """Full Gram-automorphism group by partition-refinement backtracking.

    Deterministic: branch cells are the first smallest non-singleton cell and
    branch points are tried in ascending index.  A budget overrun raises
    BudgetExceededError carrying the generators found so far and the order of
    the subgroup they span.
    """
    if k > 6:
        raise ValueError(f"refinement search is desk-scale, k <= 6; got {k}")
    q = gram_projection(k, t)
    q_rows = [tuple(int(x) for x in row) for row in q.tolist()]
    search = _GramAutSearch(q_rows, node_budget)
    order, gens = search.run()
    if PermGroup(2 ** k, gens).order != order:
        raise RuntimeError(
            f"orbit-stabilizer order {order} disagrees with the generated chain"
        )
    return AutSearchResult(k, t, order, gens, "refine", search.nodes)


# -- half-coefficient combinations -------------------------------------------


@dataclass(frozen=True)
class HalfCombo:
    """Four distinct labels of size 1 or 2 (at least one pair), with signs.

    Labels are ordered pairs-first (size descending, then lexicographic); the
    first sign is normalized to +1.  viable means the half-coefficient sum
    0.5 * sum(sign * column) has every entry equal to +1 or -1.
    """

    labels: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    viable: bool


@dataclass(frozen=True)
class ComboClass:
    """All label sets equivalent to the representative under factor relabeling."""

    representative: tuple[tuple[int, ...], ...]
    members: tuple[tuple[tuple[int, ...], ...], ...]
    viable_patterns: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HalfComboReport:
    """Viability table of all half-coefficient combinations for one k.

    Two structural classes of label sets carry viable sign patterns: the
    two-pairs-two-mains family (is_half_family) and, once k >= 4, sets of
    four interactions whose factor graph is a 4-cycle (is_pair_cycle).
    family_only records whether the first class is the whole story;
    family_or_cycle_only whether the two classes together are.
    """

    k: int
    combos: tuple[HalfCombo, ...]
    classes: tuple[ComboClass, ...]
    family_only: bool
    families_all_viable: bool
    family_or_cycle_only: bool

    def viable_combos(self) -> tuple[HalfCombo, ...]:
        return tuple(c for c in self.combos if c.viable)


def is_half_family(labels) -> bool:
    """Two pairs sharing exactly one factor, plus their unshared factors as mains."""
    if len(labels) != 4:
        return False
    pairs = [set(l) for l in labels if len(l) == 2]
    mains = [l[0] for l in labels if len(l) == 1]
    if len(pairs) != 2 or len(mains) != 2:
        return False
    return len(pairs[0] & pairs[1]) == 1 and (pairs[0] ^ pairs[1]) == set(mains)


def is_pair_cycle(labels) -> bool:
    """Four two-factor labels forming a single 4-cycle on four factors.

    Example: (1,2), (1,3), (2,4), (3,4).  Such a set multiplies out to the
    constant column, which is what lets alternating sign choices collapse the
    sum onto one interaction per half of the point set.
    """
    if len(labels) != 4 or any(len(l) != 2 for l in labels):
        return False
    factors = sorted(f for l in labels for f in l)
    if len(set(factors)) != 4 or any(factors.count(f) != 2 for f in factors):
        return False
    # 2-regular on 4 vertices is either a 4-cycle or two disjoint 2-cycles,
    # and distinct simple edges rule the latter out; still check connectivity.
    adj: dict[int, list[int]] = {}
    for a, b in labels:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {labels[0][0]}
    stack = [labels[0][0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == 4


def half_family_sign_rule(signs) -> bool:
    """Viability of a two-pairs-two-mains combo from its signs alone.

    For labels ordered (pair ab, pair ac, main b, main c): viable when the
    last two signs replay the first two up to flipping exactly one.  The
    pair-cycle sets turn out to obey the same table under the lexicographic
    label order.  The tests confirm this closed form against entrywise
    evaluation before anything relies on it.
    """
    s1, s2, s3, s4 = signs
    return (s3 == s1 and s4 == -s2) or (s3 == -s1 and s4 == s2)


def _canonical_label_set(k: int, labels) -> tuple:
    best = None
    for sigma in itertools.permutations(range(1, k + 1)):
        mapped = tuple(
            sorted(tuple(sorted(sigma[f - 1] for f in l)) for l in labels)
        )
        if best is None or mapped < best:
            best = mapped
    return best


def _display_order(labels) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(labels, key=lambda l: (-len(l), l)))


def classify_half_combinations(k: int) -> HalfComboReport:
    """Exhaustive viability table of half-coefficient combinations.

    Every 4-subset of {mains, two-factor interactions} containing at least
    one interaction is tried under all 8 sign patterns with positive first
    sign.  The sum of signed columns is computed entrywise; since the half
    combination is that sum over 2, viability is all entries in {-2, +2}.
    Combos are grouped into factor-relabeling classes, and the report states
    whether viable label sets are exactly the two-pairs-two-mains family.
    """
    if not 3 <= k <= 6:
        raise ValueError(f"classification runs for 3 <= k <= 6, got {k}")
    pool = labels_up_to(k, 2)[1:]
    n = 2 ** k
    combos: list[HalfCombo] = []
    by_labels: dict[tuple, list[HalfCombo]] = {}
    for raw in itertools.combinations(pool, 4):
        if not any(len(l) == 2 for l in raw):
            continue
        labels = _display_order(raw)
        cols = [interaction_column(k, l) for l in labels]
        for tail in itertools.product((1, -1), repeat=3):
            signs = (1,) + tail
            entries = (
                signs[0] * cols[0][p]
                + signs[1] * cols[1][p]
                + signs[2] * cols[2][p]
                + signs[3] * cols[3][p]
                for p in range(n)
            )
            viable = all(x in (-2, 2) for x in entries)
            combo = HalfCombo(labels, signs, viable)
            combos.append(combo)
            by_labels.setdefault(labels, []).append(combo)

    class_members: dict[tuple, list[tuple]] = {}
    for labels in by_labels:
        class_members.setdefault(_canonical_label_set(k, labels), []).append(labels)
    classes = []
    for canon in sorted(class_members):
        members = tuple(sorted(class_members[canon]))
        rep = members[0]
        patterns = tuple(c.signs for c in by_labels[rep] if c.viable)
        classes.append(ComboClass(rep, members, patterns))

    viable_sets = {c.labels for c in combos if c.viable}
    family_sets = {labels for labels in by_labels if is_half_family(labels)}
    return HalfComboReport(
        k=k,
        combos=tuple(combos),
        classes=tuple(classes),
        family_only=viable_sets <= family_sets,
        families_all_viable=family_sets <= viable_sets,
        family_or_cycle_only=all(
            is_half_family(ls) or is_pair_cycle(ls) for ls in viable_sets
        ),
    )


# -- basis-image structure -----------------------------------------------------


@dataclass(frozen=True)
class BasisImageReport:
    """Classification of g(column) over all group elements g and model rows."""

    k: int
    t: int
    group_order: int
    signed_count: int
    half_count: int
    other_count: int
    all_signed: bool
    half_example: tuple | None
    half_labels: tuple[tuple[int, ...], ...]


def _image_kind(terms) -> str:
    coeffs = [c for _, c in terms]
    if len(terms) == 1 and abs(coeffs[0]) == 1:
        return "signed"
    if (
        len(terms) == 4
        and all(abs(c) == Fraction(1, 2) for c in coeffs)
        and is_half_family(tuple(l for l, _ in terms))
    ):
        return "half"
    return "other"


def verify_form_lemmas(k: int, t: int = 2) -> BasisImageReport:
    """Expand every basis-column image under every symmetry group element.

    Computes the exact group (exhaustive scan for k <= 3, refinement search
    for k = 4), then expands g(col) for each element g and each model row in
    the orthogonal basis of all 2**k interaction columns with exact rational
    coefficients, and classifies each image: a signed basis column, a
    four-term half-coefficient combination in the two-pairs-two-mains
    pattern, or anything else.
    """
    if not 1 <= k <= 4:
        raise ValueError("basis-image scan enumerates the whole group; k <= 4 only")
    if t not in (1, 2) or t > k:
        raise ValueError(f"structure scan covers t in (1, 2) with t <= k, got t={t}")
    found = brute_force_glp(k, t) if k <= 3 else refine_automorphisms(k, t)
    group = PermGroup(2 ** k, found.generators)
    n = 2 ** k
    basis = labels_up_to(k, t)
    cols = {l: interaction_column(k, l) for l in basis}
    signed = half = other = 0
    half_example = None
    half_labels: set[tuple[int, ...]] = set()
    for g in group.elements():
        for l in basis:
            spectrum = _walsh(permute_vector(g, cols[l]))
            terms = tuple(
                (mask_factors(m), Fraction(x, n))
                for m, x in enumerate(spectrum)
                if x
            )
            kind = _image_kind(terms)
            if kind == "signed":
                signed += 1
            elif kind == "half":
                half += 1
                half_labels.add(l)
                if half_example is None:
                    half_example = (l, terms)
            else:
                other += 1
    total = group.order * len(basis)
    return BasisImageReport(
        k=k,
        t=t,
        group_order=group.order,
        signed_count=signed,
        half_count=half,
        other_count=other,
        all_signed=signed == total,
        half_example=half_example,
        half_labels=tuple(sorted(half_labels, key=lambda l: (len(l), l))),
    )
