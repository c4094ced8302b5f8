"""Two-level designs, interaction columns, and J-characteristics.

Points of the k-factor full factorial are indexed 0..2**k-1: bit (i-1) of a
point index is 0 when factor i sits at level +1 and 1 when it sits at -1, so
index 0 is the all-(+1) run and factor 1 varies fastest as the index grows.
A frequency vector counts occurrences of each point and fixes a design up to
run order; its Walsh spectrum is the full table of J-characteristics, and the
transform is involutive up to a factor 2**k, which gives exact integer
round trips both ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

MAX_FACTORS = 16


def _validate_k(k: int) -> None:
    if not 1 <= k <= MAX_FACTORS:
        raise ValueError(f"factor count {k} outside 1..{MAX_FACTORS}")


def _validate_factors(k: int, factors: Iterable[int]) -> tuple[int, ...]:
    fs = tuple(sorted(factors))
    if len(set(fs)) != len(fs):
        raise ValueError(f"repeated factor in {fs}")
    if fs and (fs[0] < 1 or fs[-1] > k):
        raise ValueError(f"factors {fs} out of range 1..{k}")
    return fs


def label_mask(factors: Iterable[int]) -> int:
    """Bitmask with bit (i-1) set for each factor i."""
    m = 0
    for i in factors:
        m |= 1 << (i - 1)
    return m


def mask_factors(mask: int) -> tuple[int, ...]:
    """Inverse of label_mask: sorted tuple of 1-based factor ids."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Design:
    """Immutable N x k array of +1/-1 levels, one run per row."""

    runs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.runs:
            raise ValueError("design needs at least one run")
        k = len(self.runs[0])
        _validate_k(k)
        for row in self.runs:
            if len(row) != k:
                raise ValueError("ragged design")
            for x in row:
                if x not in (1, -1):
                    raise ValueError(f"level {x!r} is not +1/-1")

    @property
    def n_runs(self) -> int:
        return len(self.runs)

    @property
    def n_factors(self) -> int:
        return len(self.runs[0])


@dataclass(frozen=True)
class FrequencyVector:
    """Counts of each full-factorial point, indexed by point.

    Entries are exact (int or Fraction).  Negative or fractional entries are
    representable on purpose: the inverse Walsh transform can produce them,
    and the consumers that need nonnegative integers check for themselves.
    """

    k: int
    counts: tuple

    def __post_init__(self):
        _validate_k(self.k)
        if len(self.counts) != 2 ** self.k:
            raise ValueError(
                f"expected {2 ** self.k} counts for k={self.k}, got {len(self.counts)}"
            )
        for c in self.counts:
            if not isinstance(c, (int, Fraction)):
                raise ValueError(f"count {c!r} is not an exact int/Fraction")

    @property
    def n_runs(self):
        return sum(self.counts)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.counts)

    def is_integral(self) -> bool:
        return all(c == int(c) for c in self.counts)

    def __getitem__(self, p: int):
        return self.counts[p]


def point_levels(k: int, p: int) -> tuple[int, ...]:
    """Levels (factor 1 first) of full-factorial point p."""
    return tuple(1 - 2 * ((p >> (i - 1)) & 1) for i in range(1, k + 1))


def point_of_run(run: Sequence[int]) -> int:
    """Point index of a +1/-1 run (inverse of point_levels)."""
    p = 0
    for i, x in enumerate(run):
        if x == -1:
            p |= 1 << i
        elif x != 1:
            raise ValueError(f"level {x!r} is not +1/-1")
    return p


def full_factorial(k: int) -> Design:
    """The 2**k x k design containing every level combination exactly once."""
    _validate_k(k)
    return Design(tuple(point_levels(k, p) for p in range(2 ** k)))


def interaction_column(k: int, factors: Iterable[int]) -> tuple[int, ...]:
    """Entrywise product of the named factor columns over the full factorial.

    The empty label gives the all-ones column.
    """
    _validate_k(k)
    m = label_mask(_validate_factors(k, factors))
    return tuple(1 - 2 * ((p & m).bit_count() & 1) for p in range(2 ** k))


def j_characteristic(design: Design, factors: Iterable[int]) -> int:
    """Sum over runs of the product of the named factor levels."""
    fs = _validate_factors(design.n_factors, factors)
    total = 0
    for row in design.runs:
        prod = 1
        for i in fs:
            prod *= row[i - 1]
        total += prod
    return total


def freq_from_design(design: Design) -> FrequencyVector:
    """Count how often each full-factorial point occurs in the design."""
    k = design.n_factors
    counts = [0] * 2 ** k
    for row in design.runs:
        counts[point_of_run(row)] += 1
    return FrequencyVector(k, tuple(counts))


def design_from_freq(freq: FrequencyVector) -> Design:
    """Design listing each point count-many times, in ascending point order."""
    runs = []
    for p, c in enumerate(freq.counts):
        if c < 0 or c != int(c):
            raise ValueError(f"count {c} at point {p} is not a nonnegative integer")
        runs.extend([point_levels(freq.k, p)] * int(c))
    if not runs:
        raise ValueError("empty design: all counts zero")
    return Design(tuple(runs))


def _walsh(vec: Sequence):
    """Sign-flip transform: out[m] = sum_p vec[p] * (-1)**popcount(p & m).

    Self-inverse up to the factor len(vec); exact on int/Fraction input.
    """
    v = list(vec)
    n = len(v)
    h = 1
    while h < n:
        for start in range(0, n, h * 2):
            for a in range(start, start + h):
                x, y = v[a], v[a + h]
                v[a], v[a + h] = x + y, x - y
        h *= 2
    return v


def j_vector_full(freq: FrequencyVector) -> tuple:
    """All 2**k J-characteristics, indexed by label bitmask."""
    return tuple(_walsh(freq.counts))


def freq_from_full_j(jv: Sequence, k: int) -> FrequencyVector:
    """Rebuild the frequency vector whose full J table is jv.

    The result may carry negative or fractional entries when jv does not
    come from a real design; callers validate what they need.
    """
    _validate_k(k)
    n = 2 ** k
    if len(jv) != n:
        raise ValueError(f"expected {n} J values, got {len(jv)}")
    counts = []
    for x in _walsh(jv):
        q = Fraction(x, n)
        counts.append(int(q) if q.denominator == 1 else q)
    return FrequencyVector(k, tuple(counts))


def strength(design: Design) -> int:
    """Largest t such that every J over 1..t factors vanishes (0 if none do)."""
    jv = j_vector_full(freq_from_design(design))
    best = design.n_factors
    for m in range(1, len(jv)):
        if jv[m] != 0:
            best = min(best, m.bit_count() - 1)
    return best


def design_to_text(design: Design, zero_one: bool = False) -> str:
    """Serialize as a header line "N k" then one run per line.

    Levels print as 1/-1, or as 0/1 (0 meaning +1) when zero_one is set.
    """
    lines = [f"{design.n_runs} {design.n_factors}"]
    for row in design.runs:
        if zero_one:
            lines.append(" ".join("0" if x == 1 else "1" for x in row))
        else:
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def design_from_text(text: str) -> Design:
    """Parse design_to_text output; the level encoding is detected from the values.

    A file with only 1s is read as +1/-1 encoded (all runs at +1).
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty design text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"expected header 'N k', got {lines[0]!r}")
    n_runs, k = int(head[0]), int(head[1])
    if len(lines) != 1 + n_runs:
        raise ValueError(f"expected {n_runs} runs, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        vals = [int(tok) for tok in ln.split()]
        if len(vals) != k:
            raise ValueError(f"expected {k} levels per run, got {len(vals)}")
        rows.append(vals)
    flat = {v for row in rows for v in row}
    if -1 in flat:
        encoding = "pm"
    elif 0 in flat:
        encoding = "zero_one"
    else:
        encoding = "pm"
    if encoding == "zero_one":
        if not flat <= {0, 1}:
            raise ValueError(f"mixed level encodings in {sorted(flat)}")
        rows = [[1 if v == 0 else -1 for v in row] for row in rows]
    elif not flat <= {1, -1}:
        raise ValueError(f"levels {sorted(flat)} are neither +1/-1 nor 0/1")
    return Design(tuple(tuple(row) for row in rows))
