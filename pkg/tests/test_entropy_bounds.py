import csv
import io
import math
from fractions import Fraction

import pytest

from sepcodes.bounds import (
    TABLE_COLUMNS,
    emit_bound_table,
    rate_bound_b2,
    rate_bound_reference,
    rate_bound_sep2,
)
from sepcodes.entropy import (
    EntropyDistribution,
    entropy,
    entropy_of_counts,
    max_constrained_entropy,
    max_constrained_entropy_numeric,
)
from sepcodes.phimap import PhiVariant


def test_entropy_basics():
    assert entropy([Fraction(1, 2), Fraction(1, 2)]) == 1.0
    assert entropy([1, 0, 0]) == 0.0
    assert entropy_of_counts([1, 1, 1, 1]) == 2.0
    assert math.isclose(entropy_of_counts([3, 1]), entropy([0.75, 0.25]))
    assert EntropyDistribution.from_counts([1, 3]).exact
    with pytest.raises(ValueError):
        EntropyDistribution((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        EntropyDistribution((0.5, 0.6))
    with pytest.raises(ValueError):
        EntropyDistribution((1.5, -0.5))


def test_closed_form_separable():
    bits, dist = max_constrained_entropy(2)
    assert math.isclose(bits, 1.5)
    assert dist.masses == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    for q in range(2, 10):
        bits, dist = max_constrained_entropy(q)
        assert math.isclose(bits, entropy(dist), rel_tol=1e-12)


def test_closed_form_b2diff():
    for q in range(2, 10):
        bits, dist = max_constrained_entropy(q, PhiVariant.B2DIFF)
        assert len(dist) == 2 * q - 1
        assert math.isclose(bits, math.log2(q) + (q - 1) / q)
        assert math.isclose(bits, entropy(dist), rel_tol=1e-12)


@pytest.mark.parametrize("variant", list(PhiVariant))
def test_numeric_maximizer(variant):
    for q in (2, 3, 7):
        analytic, _ = max_constrained_entropy(q, variant)
        assert abs(max_constrained_entropy_numeric(q, variant=variant) - analytic) < 1e-7
    # without the zero-mass constraint the optimum is uniform
    K = PhiVariant.SEPARABLE.alphabet_size(4)
    assert math.isclose(max_constrained_entropy_numeric(4, constrained=False), math.log2(K), rel_tol=1e-9)
    with pytest.raises(ValueError):
        max_constrained_entropy_numeric(65)


def test_rate_bounds_exact_values():
    assert rate_bound_sep2(2) == Fraction(3, 5)
    assert rate_bound_sep2(13) == Fraction(25, 38)
    assert rate_bound_b2(2) == 0.6
    with pytest.raises(ValueError):
        rate_bound_sep2(1)


def test_b2_bound_from_entropy_cap():
    # R <= c / (1 + c) with c = cap / log2 q recovers the closed form
    for q in range(2, 20):
        cap, _ = max_constrained_entropy(q, PhiVariant.B2DIFF)
        c = cap / math.log2(q)
        assert math.isclose(c / (1 + c), rate_bound_b2(q), rel_tol=1e-12)
        cap, _ = max_constrained_entropy(q)
        c = cap / math.log2(q)
        assert math.isclose(c / (1 + c), float(rate_bound_sep2(q)), rel_tol=1e-12)


def test_reference_bounds():
    assert rate_bound_reference("frameproof", 2) == Fraction(1, 2)
    assert rate_bound_reference("separable_general", 2) == 1
    assert rate_bound_reference("dyachkov", 4) == Fraction(1, 2)
    with pytest.raises(ValueError):
        rate_bound_reference("nope", 2)


def test_bound_table_format():
    text = emit_bound_table(2, 4)
    assert "\r" not in text and text.endswith("\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == TABLE_COLUMNS
    assert rows[1] == ["2", "0.6", "0.6", "1", "1"]
    assert [r[0] for r in rows[1:]] == ["2", "3", "4"]
    assert emit_bound_table(2, 2, header=False) == "2,0.6,0.6,1,1\n"
    with pytest.raises(ValueError):
        emit_bound_table(5, 3)
