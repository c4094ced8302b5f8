"""Moment model whose integer solutions are the strength-t designs.

The model stacks the interaction column of every factor subset of size at
most t: the all-ones row first, then mains, then pairs, and so on, subsets of
equal size in lexicographic order.  A nonnegative integer frequency vector f
satisfies M f = (N, 0, ..., 0) exactly when it describes an N-run design of
strength at least t.  Because the rows are orthogonal with squared norm 2**k,
the Gram matrix Q = M^T M is 2**k times the orthogonal projector onto the row
space, which turns row-space questions into exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .factorial import (
    MAX_FACTORS,
    FrequencyVector,
    interaction_column,
    j_vector_full,
    label_mask,
)


def _validate_kt(k: int, t: int) -> None:
    if not 1 <= t <= k <= MAX_FACTORS:
        raise ValueError(f"need 1 <= t <= k <= {MAX_FACTORS}, got k={k}, t={t}")


def labels_up_to(k: int, t: int) -> tuple[tuple[int, ...], ...]:
    """All factor subsets of size <= t: empty, mains, pairs, ... (size, then lex)."""
    _validate_kt(k, t)
    out: list[tuple[int, ...]] = [()]
    for size in range(1, t + 1):
        out.extend(itertools.combinations(range(1, k + 1), size))
    return tuple(out)


@dataclass(frozen=True)
class ModelMatrix:
    k: int
    t: int
    labels: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "t": self.t,
            "labels": [list(l) for l in self.labels],
            "rows": [list(r) for r in self.rows],
        }


@dataclass(frozen=True)
class RhsVector:
    n_runs: int
    values: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"N": self.n_runs, "values": list(self.values)}


def build_m(k: int, t: int) -> ModelMatrix:
    """The moment matrix: one interaction column per subset of size <= t."""
    labels = labels_up_to(k, t)
    rows = tuple(interaction_column(k, l) for l in labels)
    return ModelMatrix(k, t, labels, rows)


def build_j(n_runs: int, k: int, t: int) -> RhsVector:
    """Right-hand side (N, 0, ..., 0) sized to the paired model."""
    if n_runs < 1:
        raise ValueError(f"run count {n_runs} must be positive")
    n_rows = len(labels_up_to(k, t))
    return RhsVector(n_runs, (n_runs,) + (0,) * (n_rows - 1))


def is_feasible(freq: FrequencyVector, n_runs: int, k: int, t: int,
                *, integral: bool = False) -> bool:
    """Does freq solve M f = (N, 0, ..., 0) with f >= 0?

    The default is the relaxation test, accepting exact rational entries;
    integral=True additionally demands integer entries.
    """
    _validate_kt(k, t)
    if freq.k != k:
        raise ValueError(f"frequency vector has k={freq.k}, expected {k}")
    if not freq.is_nonnegative():
        return False
    if integral and not freq.is_integral():
        return False
    jv = j_vector_full(freq)
    if jv[0] != n_runs:
        return False
    return all(
        jv[label_mask(l)] == 0
        for l in labels_up_to(k, t)[1:]
    )


def gram_projection(k: int, t: int) -> np.ndarray:
    """Q = M^T M, exactly; Q v = 2**k v characterizes the row space."""
    _validate_kt(k, t)
    m = build_m(k, t).array
    return m.T @ m


def rowspace_member(v: Sequence, k: int, t: int) -> bool:
    """Exact test that v lies in the span of the model rows.

    Computed as M^T (M v) == 2**k v in unbounded Python arithmetic, so it is
    safe for any exact input, Fractions included.
    """
    model = build_m(k, t)
    n = 2 ** k
    if len(v) != n:
        raise ValueError(f"vector length {len(v)}, expected {n}")
    w = [sum(row[p] * v[p] for p in range(n)) for row in model.rows]
    for p in range(n):
        if sum(model.rows[i][p] * w[i] for i in range(len(w))) != n * v[p]:
            return False
    return True


def perm_preserves_rowspace(perm: Sequence[int], k: int, t: int) -> bool:
    """True iff relabeling points by perm maps the row space onto itself.

    Equivalent to Gram invariance Q[p(i)][p(j)] == Q[i][j]: permutations are
    orthogonal maps, so they preserve the row space exactly when they commute
    with the projector Q.
    """
    q = gram_projection(k, t)
    idx = np.asarray(perm)
    n = 2 ** k
    if idx.shape != (n,) or sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}")
    return bool((q[np.ix_(idx, idx)] == q).all())
