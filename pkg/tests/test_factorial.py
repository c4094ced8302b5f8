"""Point encoding, J-characteristics, and the exact Walsh transform."""

import random
from fractions import Fraction

import pytest

from oasym.factorial import (
    Design,
    FrequencyVector,
    design_from_freq,
    design_from_text,
    design_to_text,
    freq_from_design,
    freq_from_full_j,
    full_factorial,
    interaction_column,
    j_characteristic,
    j_vector_full,
    label_mask,
    mask_factors,
    point_levels,
    point_of_run,
    strength,
)


def test_full_factorial_k2_row_order():
    # first factor varies fastest, +1 before -1
    d = full_factorial(2)
    assert d.runs == ((1, 1), (-1, 1), (1, -1), (-1, -1))


def test_full_factorial_counts():
    for k in range(1, 7):
        d = full_factorial(k)
        assert d.n_runs == 2 ** k
        assert d.n_factors == k
        assert len(set(d.runs)) == 2 ** k


def test_point_round_trip():
    rng = random.Random(11)
    for k in (1, 3, 5, 8):
        for _ in range(50):
            p = rng.randrange(2 ** k)
            assert point_of_run(point_levels(k, p)) == p


def test_point_levels_bit_zero_is_plus():
    assert point_levels(3, 0) == (1, 1, 1)
    assert point_levels(3, 1) == (-1, 1, 1)
    assert point_levels(3, 6) == (1, -1, -1)


def test_label_mask_round_trip():
    assert label_mask((1, 3)) == 0b101
    assert mask_factors(0b101) == (1, 3)
    assert mask_factors(0) == ()
    for mask in range(64):
        assert label_mask(mask_factors(mask)) == mask


def test_interaction_columns_k2():
    assert interaction_column(2, (1,)) == (1, -1, 1, -1)
    assert interaction_column(2, (2,)) == (1, 1, -1, -1)
    assert interaction_column(2, (1, 2)) == (1, -1, -1, 1)
    assert interaction_column(2, ()) == (1, 1, 1, 1)


def test_interaction_column_is_product_of_mains():
    rng = random.Random(23)
    for k in (3, 4, 6):
        mains = [interaction_column(k, (i,)) for i in range(1, k + 1)]
        for _ in range(20):
            fac = rng.sample(range(1, k + 1), rng.randint(1, k))
            col = interaction_column(k, fac)
            for p in range(2 ** k):
                prod = 1
                for i in fac:
                    prod *= mains[i - 1][p]
                assert col[p] == prod


def test_j_characteristic_full_factorial_vanishes():
    d = full_factorial(3)
    for fac in ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)):
        assert j_characteristic(d, fac) == 0
    assert j_characteristic(d, ()) == 8


def test_j_characteristic_half_fraction():
    # runs with x1 x2 x3 = +1 are points {0, 3, 5, 6}
    pts = [0, 3, 5, 6]
    d = Design(runs=tuple(point_levels(3, p) for p in pts))
    assert j_characteristic(d, (1, 2, 3)) == 4
    for fac in ((1,), (2,), (3,), (1, 2), (1, 3), (2, 3)):
        assert j_characteristic(d, fac) == 0


def test_strength_values():
    assert strength(full_factorial(3)) == 3
    pts = [0, 3, 5, 6]
    d = Design(runs=tuple(point_levels(3, p) for p in pts))
    assert strength(d) == 2
    rep = Design(runs=((1, 1), (1, 1)))
    assert strength(rep) == 0


def test_freq_round_trip_design():
    rng = random.Random(5)
    for k in (2, 3, 4):
        pts = [rng.randrange(2 ** k) for _ in range(12)]
        d = Design(runs=tuple(point_levels(k, p) for p in pts))
        f = freq_from_design(d)
        assert sum(f.counts) == 12
        d2 = design_from_freq(f)
        assert sorted(d2.runs) == sorted(d.runs)


def test_j_vector_walsh_round_trip():
    rng = random.Random(7)
    for k in (1, 2, 3, 5):
        counts = tuple(rng.randrange(5) for _ in range(2 ** k))
        f = FrequencyVector(k=k, counts=counts)
        jv = j_vector_full(f)
        assert jv[0] == sum(counts)
        back = freq_from_full_j(jv, k)
        assert back.counts == counts


def test_j_vector_matches_definition():
    # J for label l equals the signed run sum of the design
    rng = random.Random(13)
    k = 3
    counts = tuple(rng.randrange(4) for _ in range(8))
    f = FrequencyVector(k=k, counts=counts)
    jv = j_vector_full(f)
    for mask in range(8):
        col = interaction_column(k, mask_factors(mask))
        assert jv[mask] == sum(c * col[p] for p, c in enumerate(counts))


def test_freq_from_full_j_fractional():
    # an odd spectrum entry leaves non-integral counts; no error raised
    f = freq_from_full_j((1, 0), 1)
    assert f.counts == (Fraction(1, 2), Fraction(1, 2))
    assert not f.is_integral()
    assert f.is_nonnegative()


def test_design_from_freq_rejects_bad_counts():
    with pytest.raises(ValueError):
        design_from_freq(FrequencyVector(k=1, counts=(-1, 3)))
    with pytest.raises(ValueError):
        design_from_freq(FrequencyVector(k=1, counts=(Fraction(1, 2), Fraction(1, 2))))


def test_frequency_vector_validation():
    with pytest.raises(ValueError):
        FrequencyVector(k=2, counts=(1, 2, 3))
    with pytest.raises(ValueError):
        FrequencyVector(k=1, counts=(1.5, 0.5))


def test_design_validation():
    with pytest.raises(ValueError):
        Design(runs=((1, 0),))
    with pytest.raises(ValueError):
        Design(runs=((1, 1), (1,)))


def test_design_text_round_trip():
    d = full_factorial(3)
    for zero_one in (False, True):
        text = design_to_text(d, zero_one=zero_one)
        first = text.splitlines()[0].split()
        assert first == ["8", "3"]
        back = design_from_text(text)
        assert back == d


def test_design_text_detects_encoding():
    text = "2 2\n0 1\n1 0\n"
    d = design_from_text(text)
    assert d.runs == ((1, -1), (-1, 1))
