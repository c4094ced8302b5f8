"""The two generator families and their action on interaction columns."""

import math

import pytest

from oasym.factorial import interaction_column
from oasym.generators import (
    factor_swap_perm,
    rho_perm,
    sign_flip_perm,
    strength2_generators,
    wreath_generators,
)
from oasym.model import perm_preserves_rowspace
from oasym.perms import PermGroup, compose, group_order, identity, permute_vector


def col(k, fac):
    return interaction_column(k, fac)


def test_sign_flip_negates_own_column():
    k = 3
    for i in (1, 2, 3):
        p = sign_flip_perm(i, k)
        assert permute_vector(p, col(k, (i,))) == tuple(-x for x in col(k, (i,)))
        for j in (1, 2, 3):
            if j != i:
                assert permute_vector(p, col(k, (j,))) == col(k, (j,))


def test_factor_swap_exchanges_columns():
    k = 4
    p = factor_swap_perm(2, 4, k)
    assert permute_vector(p, col(k, (2,))) == col(k, (4,))
    assert permute_vector(p, col(k, (4,))) == col(k, (2,))
    assert permute_vector(p, col(k, (1,))) == col(k, (1,))
    assert permute_vector(p, col(k, (2, 3))) == col(k, (3, 4))


def test_rho_multiplies_other_factors():
    # rho_i fixes x_i and sends x_j to the interaction x_i*x_j
    k = 3
    p = rho_perm(1, k)
    assert permute_vector(p, col(k, (1,))) == col(k, (1,))
    assert permute_vector(p, col(k, (2,))) == col(k, (1, 2))
    assert permute_vector(p, col(k, (3,))) == col(k, (1, 3))
    assert permute_vector(p, col(k, (1, 2))) == col(k, (2,))
    assert permute_vector(p, col(k, (2, 3))) == col(k, (2, 3))


def test_rho_relations():
    for k in range(2, 7):
        for i in range(1, k + 1):
            r = rho_perm(i, k)
            assert compose(r, r) == identity(2 ** k)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                ri, rj = rho_perm(i, k), rho_perm(j, k)
                assert compose(ri, compose(rj, ri)) == factor_swap_perm(i, j, k)


def test_wreath_metadata_and_orders():
    for k in range(1, 6):
        gs = wreath_generators(k)
        assert gs.kind == "wreath"
        assert gs.t == 1
        assert gs.claimed_order == 2 ** k * math.factorial(k)
        assert group_order(gs.perms) == gs.claimed_order


def test_strength2_metadata_and_orders():
    for k in range(2, 6):
        gs = strength2_generators(k)
        assert gs.kind == "strength2"
        assert gs.t == 2
        assert gs.claimed_order == 2 ** k * math.factorial(k + 1)
        assert group_order(gs.perms) == gs.claimed_order


def test_strength2_contains_wreath():
    for k in (2, 3, 4):
        big = PermGroup(2 ** k, strength2_generators(k).perms)
        for g in wreath_generators(k).perms:
            assert big.contains(g)


def test_strength2_needs_two_factors():
    with pytest.raises(ValueError):
        strength2_generators(1)


def test_generators_preserve_their_rowspace():
    for k in (2, 3, 4):
        for g in wreath_generators(k).perms:
            assert perm_preserves_rowspace(g, k, 1)
        for g in strength2_generators(k).perms:
            assert perm_preserves_rowspace(g, k, 2)


def test_rho_breaks_strength1_rowspace():
    # x_j goes to a two-factor column, which is outside the strength-1 span
    for k in (2, 3, 4):
        assert not perm_preserves_rowspace(rho_perm(1, k), k, 1)


def test_generator_perms_are_valid():
    for k in (1, 2, 3, 4, 5, 6):
        for g in wreath_generators(k).perms:
            assert sorted(g) == list(range(2 ** k))
