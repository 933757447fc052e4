from fractions import Fraction
from itertools import product

import pytest

from sepcodes.core import Code, partition_by_prefix
from sepcodes.phimap import (
    PhiVariant,
    check_injectivity,
    decode_symbol,
    encode_symbol,
    pack_phi,
    phi,
    phi_word,
    witness_violates,
    zero_frequency,
)

SEP, B2D = PhiVariant.SEPARABLE, PhiVariant.B2DIFF


def test_alphabet_sizes():
    assert [SEP.alphabet_size(q) for q in (2, 3, 4)] == [3, 7, 13]
    assert [B2D.alphabet_size(q) for q in (2, 3, 4)] == [3, 5, 7]


def test_phi_values():
    assert phi(SEP, 3, 3, 4) == 0
    assert phi(SEP, 1, 2, 3) == (1, 2)
    assert phi(B2D, 0, 2, 3) == -2
    with pytest.raises(ValueError):
        phi(SEP, 0, 3, 3)


def test_phi_word_values():
    assert phi_word(SEP, (0, 1), (1, 1), 2).symbols == ((0, 1), 0)
    assert phi_word(B2D, (0, 1), (1, 1), 2).symbols == (-1, 0)
    assert phi_word(SEP, (1, 0, 1), (1, 0, 1), 2).is_zero()
    with pytest.raises(ValueError):
        phi_word(SEP, (0, 1), (0,), 2)


@pytest.mark.parametrize("variant", list(PhiVariant))
@pytest.mark.parametrize("q", [2, 3, 5])
def test_encoding_is_a_bijection_onto_range(variant, q):
    codes = {}
    for x, y in product(range(q), repeat=2):
        c = encode_symbol(variant, x, y, q)
        assert 0 <= c < variant.alphabet_size(q)
        assert decode_symbol(variant, c, q) == phi(variant, x, y, q)
        codes.setdefault(c, set()).add(phi(variant, x, y, q))
    assert len(codes) == variant.alphabet_size(q)
    assert all(len(v) == 1 for v in codes.values())


@pytest.mark.parametrize("variant", list(PhiVariant))
def test_pack_zero_iff_equal(variant):
    for a, b in product(product(range(3), repeat=2), repeat=2):
        assert (pack_phi(variant, a, b, 3) == 0) == (a == b)


def test_injective_on_separable_code():
    code = Code.from_strings(["00", "01", "10"])
    for e in range(3):
        assert check_injectivity(partition_by_prefix(code, e), SEP).injective


def test_full_binary_square_collision():
    # enumeration oracle: Phi(00,10) = ((0,1), 0) = Phi(01,11)
    code = Code.from_strings(["00", "01", "10", "11"])
    res = check_injectivity(partition_by_prefix(code, 0), SEP)
    assert not res.injective
    assert res.witness == (((0, 0), (1, 0)), ((0, 1), (1, 1)))
    assert phi_word(SEP, (0, 0), (1, 0), 2) == phi_word(SEP, (0, 1), (1, 1), 2)
    assert witness_violates(res.witness, SEP)


def test_collision_across_classes_counts():
    # prefixes differ, suffix pairs collide
    code = Code.from_strings(["000", "001", "110", "111"])
    p = partition_by_prefix(code, 1)
    res = check_injectivity(p, SEP)
    assert not res.injective
    (a, b), (c, d) = res.witness
    assert a[0] == b[0] and c[0] == d[0] and a[0] != c[0]


def test_single_suffix_class():
    code = Code.from_strings(["01"])
    res = check_injectivity(partition_by_prefix(code, 1), SEP)
    assert res.injective and res.pairs_checked == 0


def test_zero_frequency():
    assert zero_frequency([(0,), (1,)], 0) == Fraction(1, 2)
    assert zero_frequency([(2, 0), (2, 1), (2, 2)], 0) == 1
    assert zero_frequency([(0,), (1,), (2,)], 0) == Fraction(1, 3)
    with pytest.raises(ValueError):
        zero_frequency([], 0)


def test_zero_frequency_matches_pair_count():
    suffixes = [(0, 1), (1, 1), (2, 0), (0, 0)]
    for coord in range(2):
        zeros = sum(1 for a in suffixes for b in suffixes if phi(SEP, a[coord], b[coord], 3) == 0)
        assert zero_frequency(suffixes, coord) == Fraction(zeros, 16)
