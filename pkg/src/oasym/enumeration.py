"""Exhaustive search for the nonnegative integer solutions of the moment model.

Depth-first over frequency-vector entries in ascending point order.  Each
node keeps running row sums; since every remaining coefficient is +1 or -1,
a row can still move by at most the unassigned run mass, which prunes both
by interval and by parity.  Optional isomorph rejection collapses the
solution list into orbits under a supplied symmetry group, keeping the
lexicographically smallest member of each orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError
from .factorial import FrequencyVector
from .generators import GeneratorSet
from .model import build_j, build_m, is_feasible
from .perms import Perm, PermGroup, orbit_of_vector, permute_vector


@dataclass(frozen=True)
class EnumerationResult:
    n_runs: int
    k: int
    t: int
    total_solutions: int
    representatives: tuple[tuple[int, ...], ...]
    orbit_sizes: tuple[int, ...]
    group_order_used: int | None
    node_count: int

    def to_json_dict(self) -> dict:
        return {
            "N": self.n_runs,
            "k": self.k,
            "t": self.t,
            "solutions": self.total_solutions,
            "orbits": len(self.representatives),
        }


def _extract_perms(group) -> tuple[Perm, ...]:
    if group is None:
        return ()
    if isinstance(group, GeneratorSet):
        return group.perms
    if isinstance(group, PermGroup):
        return group.generators
    return tuple(tuple(g) for g in group)


def enumerate_oa(n_runs: int, k: int, t: int, group=None,
                 *, node_budget: int = 10 ** 7,
                 orbit_cap: int = 10 ** 7) -> EnumerationResult:
    """All frequency vectors of N-run strength-t designs on k factors.

    group may be a GeneratorSet, a PermGroup, a plain list of permutations,
    or None.  With a group, representatives are the lex-min members of the
    solution orbits and orbit sizes are recorded; without one, every solution
    is its own representative.  An infeasible triple gives an empty result.
    """
    if not 1 <= t <= k <= 5:
        raise ValueError(f"need 1 <= t <= k <= 5 at desk scale, got k={k}, t={t}")
    if not 1 <= n_runs <= 32:
        raise ValueError(f"run count {n_runs} outside desk scale 1..32")
    if n_runs % 2 ** t != 0:
        raise ValueError(
            f"no strength-{t} design on {n_runs} runs: index {n_runs}/2^{t} not integral"
        )
    model = build_m(k, t)
    rhs = list(build_j(n_runs, k, t).values)
    rows = model.rows
    n = 2 ** k
    n_rows = len(rows)
    partial = [0] * n_rows
    f = [0] * n
    solutions: list[tuple[int, ...]] = []
    nodes = 0

    def dfs(p: int, mass: int) -> None:
        nonlocal nodes
        if p == n:
            if all(partial[r] == rhs[r] for r in range(n_rows)):
                solutions.append(tuple(f))
            return
        for v in range(mass + 1):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceededError(
                    "enumeration node budget exhausted",
                    node_count=nodes,
                    budget=node_budget,
                )
            f[p] = v
            for r in range(n_rows):
                partial[r] += v * rows[r][p]
            rem = mass - v
            ok = True
            for r in range(n_rows):
                gap = rhs[r] - partial[r]
                # remaining terms are rem entries of weight +-1: they reach
                # gap only if |gap| <= rem and gap has the parity of rem
                if gap > rem or -gap > rem or (gap - rem) & 1:
                    ok = False
                    break
            if ok:
                dfs(p + 1, rem)
            for r in range(n_rows):
                partial[r] -= v * rows[r][p]
        f[p] = 0

    dfs(0, n_runs)
    solutions.sort()

    gens = _extract_perms(group)
    if group is None:
        return EnumerationResult(
            n_runs, k, t,
            total_solutions=len(solutions),
            representatives=tuple(solutions),
            orbit_sizes=(1,) * len(solutions),
            group_order_used=None,
            node_count=nodes,
        )

    sol_set = set(solutions)
    reps: list[tuple[int, ...]] = []
    sizes: list[int] = []
    remaining = set(sol_set)
    for s in solutions:
        if s not in remaining:
            continue
        orbit = orbit_of_vector(s, gens, cap=orbit_cap)
        members = set(orbit.members)
        if not members <= sol_set:
            raise ValueError(
                "supplied group moves a solution out of the solution set; "
                "it does not preserve the model"
            )
        remaining -= members
        reps.append(orbit.representative)
        sizes.append(len(members))
    return EnumerationResult(
        n_runs, k, t,
        total_solutions=len(solutions),
        representatives=tuple(reps),
        orbit_sizes=tuple(sizes),
        group_order_used=PermGroup(n, gens).order,
        node_count=nodes,
    )


def verify_group_action(result: EnumerationResult, group) -> bool:
    """Check the result is closed under the group, generator by generator.

    True iff, for every representative f and every generator p, the permuted
    vector is still feasible and canonicalizes back to a recorded
    representative.
    """
    gens = _extract_perms(group)
    rep_set = set(result.representatives)
    for rep in result.representatives:
        for g in gens:
            moved = permute_vector(g, rep)
            fv = FrequencyVector(result.k, tuple(moved))
            if not is_feasible(fv, result.n_runs, result.k, result.t, integral=True):
                return False
            if gens and orbit_of_vector(moved, gens).representative not in rep_set:
                return False
    return True
