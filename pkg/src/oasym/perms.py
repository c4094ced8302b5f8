"""Permutations as image tuples, and groups via a deterministic stabilizer chain.

A permutation of degree n is a tuple img where img[i] is the image of point
i.  compose(a, b) applies b first: compose(a, b)[i] = a[b[i]].

PermGroup keeps a Schreier-Sims stabilizer chain.  Base points are always the
smallest point moved at their level, the orbit of each level grows by
breadth-first search in discovery order, and Schreier words are processed in
a fixed order, so two constructions from the same generator list produce
identical chains: orders, membership answers and element iteration are all
reproducible.  Orders are plain Python integers, so there is no overflow at
any group size met here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError

Perm = tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def _check_perm(p: Sequence[int], degree: int | None = None) -> Perm:
    t = tuple(p)
    n = len(t)
    if degree is not None and n != degree:
        raise ValueError(f"degree mismatch: {n} != {degree}")
    if sorted(t) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {t}")
    return t


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """Apply b, then a: result[i] = a[b[i]]."""
    if len(a) != len(b):
        raise ValueError(f"degree mismatch: {len(a)} != {len(b)}")
    return tuple(a[x] for x in b)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def permute_vector(p: Sequence[int], v: Sequence) -> tuple:
    """Push v forward along p: the entry at i moves to position p[i]."""
    if len(p) != len(v):
        raise ValueError(f"degree mismatch: {len(p)} != {len(v)}")
    out = [None] * len(v)
    for i, x in enumerate(v):
        out[p[i]] = x
    return tuple(out)


def perm_to_json(p: Sequence[int]) -> dict:
    return {"degree": len(p), "image": list(p)}


def perm_from_json(obj: dict) -> Perm:
    return _check_perm(obj["image"], obj["degree"])


class _Level:
    __slots__ = ("base", "transversal", "orbit", "processed")

    def __init__(self, base: int, ident: Perm):
        self.base = base
        self.transversal: dict[int, Perm] = {base: ident}
        self.orbit: list[int] = [base]
        # Schreier pairs (orbit point, strong generator index) already sifted.
        # Orbit entries and transversal words never change once created and
        # strong generators are append-only, so a processed pair stays valid.
        self.processed: set[tuple[int, int]] = set()


class PermGroup:
    """Finitely generated permutation group with exact order and membership."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree
        self._ident = identity(degree)
        gens = []
        for g in generators:
            t = _check_perm(g, degree)
            if t != self._ident and t not in gens:
                gens.append(t)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._strong: list[Perm] = []
        self._levels: list[_Level] = []
        for g in self.generators:
            self._install(g)

    # -- chain construction -------------------------------------------------

    def _sift(self, p: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip transversal factors; returns the residue and the level where
        sifting stopped (len(levels) means it ran through the whole chain)."""
        for i in range(start, len(self._levels)):
            lvl = self._levels[i]
            u = lvl.transversal.get(p[lvl.base])
            if u is None:
                return p, i
            p = compose(inverse(u), p)
        return p, len(self._levels)

    def _fixes_prefix(self, p: Perm, i: int) -> bool:
        """Does p fix the base points of all levels before i?"""
        return all(p[lv.base] == lv.base for lv in self._levels[:i])

    def _install(self, g: Perm) -> None:
        """Sift g; keep a nontrivial residue as a new strong generator.

        The residue stops at the unique level j whose base it moves while
        fixing all earlier bases, so it joins the generating sets of levels
        0..j, and the chain condition is re-established there bottom-up.
        """
        residue, j = self._sift(g)
        if residue == self._ident:
            return
        if j == len(self._levels):
            base = min(x for x in range(self.degree) if residue[x] != x)
            self._levels.append(_Level(base, self._ident))
        self._strong.append(residue)
        for level in range(j, -1, -1):
            self._close(level)

    def _close(self, level: int) -> None:
        """Re-establish the chain condition at one level.

        The level group is generated by every strong generator fixing the
        earlier bases.  Repeatedly: grow the orbit/transversal breadth-first
        under those generators (incrementally; old entries are never touched),
        then sift each unprocessed Schreier word into the deeper levels.  A
        nontrivial residue becomes a strong generator there, deeper levels are
        repaired at once, and the loop re-runs here since the new generator
        belongs to this level's generating set too.
        """
        lvl = self._levels[level]
        while True:
            gens = [
                (idx, s)
                for idx, s in enumerate(self._strong)
                if self._fixes_prefix(s, level)
            ]
            frontier = list(lvl.orbit)
            while frontier:
                nxt = []
                for b in frontier:
                    ub = lvl.transversal[b]
                    for _, s in gens:
                        c = s[b]
                        if c not in lvl.transversal:
                            lvl.transversal[c] = compose(s, ub)
                            lvl.orbit.append(c)
                            nxt.append(c)
                frontier = nxt
            settled = True
            for b in list(lvl.orbit):
                ub = lvl.transversal[b]
                for idx, s in gens:
                    if (b, idx) in lvl.processed:
                        continue
                    lvl.processed.add((b, idx))
                    word = compose(inverse(lvl.transversal[s[b]]), compose(s, ub))
                    if word == self._ident:
                        continue
                    residue, j = self._sift(word, level + 1)
                    if residue == self._ident:
                        continue
                    if j == len(self._levels):
                        base = min(
                            x for x in range(self.degree) if residue[x] != x
                        )
                        self._levels.append(_Level(base, self._ident))
                    self._strong.append(residue)
                    for deeper in range(j, level, -1):
                        self._close(deeper)
                    settled = False
            if settled:
                return

    # -- queries -------------------------------------------------------------

    @property
    def order(self) -> int:
        o = 1
        for lvl in self._levels:
            o *= len(lvl.orbit)
        return o

    def contains(self, p: Sequence[int]) -> bool:
        t = _check_perm(p, self.degree)
        residue, _ = self._sift(t)
        return residue == self._ident

    __contains__ = contains

    def elements(self, max_order: int = 10 ** 6):
        """Iterate every element exactly once, deterministically.

        Walks all transversal products; the cap is checked up front so the
        caller fails before consuming anything.
        """
        if self.order > max_order:
            raise BudgetExceededError(
                f"group order {self.order} exceeds iteration cap {max_order}",
                budget=max_order,
            )

        def rec(i: int):
            if i == len(self._levels):
                yield self._ident
                return
            lvl = self._levels[i]
            for b in sorted(lvl.transversal):
                u = lvl.transversal[b]
                for rest in rec(i + 1):
                    yield compose(u, rest)

        return rec(0)

    def report_json(self) -> dict:
        return {
            "degree": self.degree,
            "order": str(self.order),
            "num_generators": len(self.generators),
        }


def group_order(gens, degree: int | None = None) -> int:
    """Exact order of the subgroup generated by gens (1 for an empty list).

    Accepts any iterable of permutations or an object with a perms attribute.
    """
    gens = [tuple(g) for g in getattr(gens, "perms", gens)]
    if not gens:
        return 1
    return PermGroup(degree if degree is not None else len(gens[0]), gens).order


@dataclass(frozen=True)
class VectorOrbit:
    members: tuple[tuple, ...]
    representative: tuple


def orbit_of_vector(vec, gens: Iterable[Sequence[int]], cap: int = 10 ** 7) -> VectorOrbit:
    """BFS closure of vec under entry permutation, sorted, with lex-min member.

    Accepts a FrequencyVector or any plain sequence.  Raises
    BudgetExceededError if the orbit would exceed cap vectors.
    """
    start = tuple(getattr(vec, "counts", vec))
    perms = [_check_perm(g, len(start)) for g in gens]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for g in perms:
                w = permute_vector(g, v)
                if w not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceededError(
                            f"vector orbit exceeds cap {cap}",
                            node_count=len(seen),
                            budget=cap,
                        )
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    members = tuple(sorted(seen))
    return VectorOrbit(members, members[0])
