import pytest
from hypothesis import example, given, strategies as st

from core.encoding import (MAX_WORD, SequenceCoder, canonical_key,
                           finset_decode, finset_encode, pair, triple, unpair,
                           untriple)
from core.errors import InputTooLarge

naturals = st.integers(min_value=0, max_value=10 ** 4)
small_sets = st.frozensets(st.integers(min_value=0, max_value=20), max_size=8)


def test_pair_values():
    assert pair(0, 0) == 0
    assert pair(1, 2) == 8
    assert pair(2, 1) == 7


@given(naturals, naturals)
@example(0, 0)
def test_unpair_inverts_pair(j, k):
    assert unpair(pair(j, k)) == (j, k)


@given(st.integers(min_value=0, max_value=5000))
def test_pair_is_onto(z):
    assert pair(*unpair(z)) == z


@given(naturals, naturals, naturals)
def test_untriple_inverts_triple(j, k, l):
    assert untriple(triple(j, k, l)) == (j, k, l)


def test_pair_rejects_negatives_and_overflow():
    with pytest.raises(InputTooLarge):
        pair(-1, 0)
    with pytest.raises(InputTooLarge):
        pair(2 ** 32, 2 ** 32)
    with pytest.raises(InputTooLarge):
        unpair(MAX_WORD + 1)


def test_finset_values():
    assert finset_encode([]) == 0
    assert finset_encode({0, 2}) == 5
    assert finset_decode(6) == {1, 2}
    assert finset_decode(0) == frozenset()


def test_finset_rejects_wide_elements():
    with pytest.raises(InputTooLarge):
        finset_encode({64})
    with pytest.raises(InputTooLarge):
        finset_encode({-3})


@given(small_sets)
def test_finset_decode_inverts_encode(elements):
    assert finset_decode(finset_encode(elements)) == elements


@given(small_sets, small_sets)
def test_canonical_key_orders_like_the_index(a, b):
    assert (canonical_key(a) < canonical_key(b)) == (finset_encode(a) < finset_encode(b))


@given(st.lists(st.integers(min_value=0, max_value=50), max_size=5))
@example([])
def test_sequence_coder_round_trip(seq):
    coder = SequenceCoder()
    assert coder.decode(coder.encode(seq)) == tuple(seq)


def test_sequence_coder_is_a_bijection_on_small_codes():
    coder = SequenceCoder()
    assert coder.encode(()) == 0
    assert coder.encode((0, 1)) == 5
    assert coder.encode((0, 1, 2)) == 31
    for code in range(500):
        assert coder.encode(coder.decode(code)) == code
