"""Symmetry generators of the moment model, as explicit point permutations.

Two families.  Signed factor relabelings (level flips within one factor,
exchanges of two factors) preserve the row space for every strength; one flip
plus the adjacent swaps generate the whole signed-permutation group of order
2**k * k!.  The rho maps extend that family for strength 2: rho_i fixes
factor i and trades every other factor column x_j for the interaction column
x_i * x_j.  Since levels are +1/-1, multiplying columns is XOR on index bits,
so rho_i XORs bit (i-1) into all other bits.  Adding a single rho to the
signed relabelings generates a group of order 2**k * (k+1)!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .factorial import _validate_k
from .perms import Perm


def sign_flip_perm(i: int, k: int) -> Perm:
    """Swap the two levels of factor i: toggle bit (i-1) of every point."""
    _validate_k(k)
    if not 1 <= i <= k:
        raise ValueError(f"factor {i} out of range 1..{k}")
    bit = 1 << (i - 1)
    return tuple(p ^ bit for p in range(2 ** k))


def factor_swap_perm(i: int, j: int, k: int) -> Perm:
    """Exchange factors i and j: swap bits (i-1) and (j-1) of every point."""
    _validate_k(k)
    if not (1 <= i < j <= k):
        raise ValueError(f"need 1 <= i < j <= {k}, got i={i}, j={j}")
    bi, bj = i - 1, j - 1
    out = []
    for p in range(2 ** k):
        x = (p >> bi) & 1
        y = (p >> bj) & 1
        q = p & ~((1 << bi) | (1 << bj))
        out.append(q | (y << bi) | (x << bj))
    return tuple(out)


def rho_perm(i: int, k: int) -> Perm:
    """Fix factor i; replace every other factor column by its interaction with i.

    Pointwise: where bit (i-1) is set, XOR all other bits; an involution.
    """
    _validate_k(k)
    if not 1 <= i <= k:
        raise ValueError(f"factor {i} out of range 1..{k}")
    others = ((1 << k) - 1) ^ (1 << (i - 1))
    return tuple(p ^ others if (p >> (i - 1)) & 1 else p for p in range(2 ** k))


@dataclass(frozen=True)
class GeneratorSet:
    """A named family of generators with the group order it is built to reach."""

    k: int
    t: int
    kind: str
    perms: tuple[Perm, ...]
    claimed_order: int


def wreath_generators(k: int) -> GeneratorSet:
    """One level flip plus adjacent factor swaps; generates all 2**k * k!
    signed factor relabelings."""
    _validate_k(k)
    perms = [sign_flip_perm(1, k)]
    perms.extend(factor_swap_perm(i, i + 1, k) for i in range(1, k))
    return GeneratorSet(k, 1, "wreath", tuple(perms), 2 ** k * math.factorial(k))


def strength2_generators(k: int) -> GeneratorSet:
    """Wreath generators plus one rho map; generates a group of order
    2**k * (k+1)! that preserves the strength-2 row space."""
    if k < 2:
        raise ValueError(f"rho extension needs k >= 2, got {k}")
    base = wreath_generators(k)
    return GeneratorSet(
        k,
        2,
        "strength2",
        base.perms + (rho_perm(1, k),),
        2 ** k * math.factorial(k + 1),
    )
