import pytest
from hypothesis import given, strategies as st

from core import oracles
from core.errors import BadIndex, BadInput
from core.instances import make_rng, random_injective, random_poset
from core.zorn_posets import (FinPoset, build_reversal_poset, is_chain,
                              maximal_assignment, maximal_elements, zl1_climb,
                              zl2_decode, zl_reversal_decode)
from tests.helpers import injective_prefixes


def test_small_posets():
    chain = FinPoset.chain(4)
    assert zl1_climb(chain, 0).chain == (0, 1, 2, 3)
    assert zl1_climb(chain, 2).top == 3
    assert maximal_elements(FinPoset.diamond()) == {3}
    assert maximal_elements(FinPoset.antichain(3)) == {0, 1, 2}
    assert maximal_assignment(FinPoset.antichain(3)) == {0: 0, 1: 1, 2: 2}
    assert set(maximal_assignment(FinPoset.diamond()).values()) == {3}
    assert FinPoset.diamond().to_dict()["leq"] == [[0, 1], [0, 2], [0, 3], [1, 3], [2, 3]]


def test_bad_posets():
    with pytest.raises(BadInput):
        FinPoset.from_relation(2, [(0, 1), (1, 0)])
    with pytest.raises(BadInput):
        FinPoset(2, frozenset({(0, 0)}))
    with pytest.raises(BadInput):
        FinPoset(3, frozenset({(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)}))
    with pytest.raises(BadIndex):
        zl1_climb(FinPoset.chain(2), 5)


@given(st.integers(0, 10_000), st.integers(1, 12))
def test_climb_ends_at_a_maximal_element(seed, size):
    pos = random_poset(make_rng(seed), size)
    for start in range(size):
        result = zl1_climb(pos, start)
        assert result.top in oracles.maximal_elements(pos)
        assert is_chain(pos, result.chain)
        assert result.chain[0] == start


@given(st.integers(0, 10_000), st.integers(1, 10))
def test_maximal_assignment_is_least_maximal_above(seed, size):
    pos = random_poset(make_rng(seed), size)
    maximals = oracles.maximal_elements(pos)
    assert maximal_elements(pos) == maximals
    for p, m in maximal_assignment(pos).items():
        assert m == min(q for q in maximals if pos.le(p, q))


def test_reversal_gadget_shape():
    gadget = build_reversal_poset([1], 2, 2)
    assert gadget.poset.lt(gadget.label(1, 1), gadget.label(1, 0))
    assert gadget.poset.lt(gadget.label(0, 1), gadget.label(0, 0))
    assert gadget.unlabel(gadget.label(1, 1)) == (1, 1)
    with pytest.raises(BadInput):
        build_reversal_poset([0, 1, 2], 3, 2)


def test_reversal_decodes_every_small_prefix():
    for columns in range(1, 5):
        for rows in range(1, 5):
            for f in injective_prefixes(rows, columns):
                expected = oracles.range_of(f, columns)
                assert zl_reversal_decode(f, columns, rows) == expected
                assert zl2_decode(f, columns, rows) == expected


def test_reversal_decodes_sampled_prefixes_up_to_six():
    rng = make_rng(11)
    for _ in range(100):
        columns, rows = rng.randint(1, 6), rng.randint(1, 6)
        f = random_injective(rng, rng.randint(0, rows), columns)
        assert zl_reversal_decode(f, columns, rows) == oracles.range_of(f, columns)
        assert zl2_decode(f, columns, rows) == oracles.range_of(f, columns)
