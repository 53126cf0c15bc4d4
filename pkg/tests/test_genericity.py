import pytest

from core import oracles
from core.encoding import SequenceCoder
from core.errors import BadDenseOracle, BadInput, FiniteMaximalFamily
from core.families import Family, PropertyKind, PropertyTag, is_maximal
from core.genericity import (SparseBits, append_oracle, escape_subfamily,
                             extends, forcing_generic, good_sequence,
                             is_condition, pi01_generic_run, witness_bound)
from core.instances import make_rng, random_family

F = PropertyTag(PropertyKind.F)


def nontrivial_families(seed: int, count: int):
    rng = make_rng(seed)
    out = []
    while len(out) < count:
        fam = random_family(rng, rng.randint(2, 8), rng.randint(2, 20), density=0.4)
        if len(fam[0]) > 0:
            out.append(fam)
    return out


def test_witness_bound():
    fam = Family.from_sets([[3, 5], [5, 7], [1]], 8)
    assert witness_bound(fam, 0) == 3
    assert witness_bound(fam, 2) == 5


def test_escape_examples():
    fam = Family.from_sets([[3, 5], [5, 7], [1]], 8)
    J = escape_subfamily(fam, lambda s: witness_bound(fam, s), 6)
    assert J.indices == (0, 0, 1, 0, 0, 0, 0)
    tight = escape_subfamily(fam, lambda s: 0, 6)
    assert set(tight.indices) == {0}
    with pytest.raises(BadInput):
        escape_subfamily(Family.from_sets([[], [1]], 2), lambda s: 0, 3)


def test_escape_with_the_witness_bound_is_maximal():
    for fam in nontrivial_families(31, 100):
        steps = 2 * len(fam)
        J = escape_subfamily(fam, lambda s, fam=fam: witness_bound(fam, s), steps)
        assert oracles.property_holds(fam, J, F)
        assert is_maximal(fam, J, F).maximal
        assert oracles.maximal_subfamily(fam, J, F)


def test_conditions():
    fam = Family.from_sets([[1, 2], [2, 3]], 4)
    assert is_condition(fam, (0, 1, 2))
    assert not is_condition(fam, (0, 1, 1))
    assert not is_condition(fam, ())
    assert not is_condition(fam, (5, 0))
    assert is_condition(fam, (7,))
    assert extends((0, 1, 2), (0, 5))
    assert not extends((1, 2), (0, 5))
    assert not extends((0,), (0, 5))


def test_forcing_examples():
    fam = Family.from_sets([[], [1, 2], [2, 3], [0]], 4)
    result = forcing_generic(fam, [append_oracle(2)], 4)
    assert result.conditions[0] == (1, 1)
    assert result.conditions[1] == (1, 2, 2)
    assert result.subfamily.indices == (1, 2)

    def wrong(fam, sigma):
        return (99,)

    with pytest.raises(BadDenseOracle):
        forcing_generic(fam, [wrong], 2)
    with pytest.raises(BadInput):
        forcing_generic(Family.from_sets([[], []], 2), [], 2)


def test_forcing_generics_have_the_property():
    for fam in nontrivial_families(37, 60):
        dense = [append_oracle(k) for k in reversed(range(len(fam)))]
        result = forcing_generic(fam, dense, 2 * len(fam))
        assert oracles.property_holds(fam, result.subfamily, F)
        for stronger, weaker in zip(result.conditions[1:], result.conditions):
            assert is_condition(fam, stronger) and extends(stronger, weaker)


def test_sparse_bits():
    bits = SparseBits(4, frozenset({1}))
    assert bits.with_one(9) == SparseBits(10, frozenset({1, 9}))
    with pytest.raises(BadInput):
        SparseBits(2, frozenset({2}))


def test_good_sequence_example():
    fam = Family.from_sets([[1, 2], [2, 3]], 4)
    coder = SequenceCoder()
    first, second = coder.encode((0, 1)), coder.encode((0, 1, 2))
    bad = coder.encode((0, 1, 0))
    bits = SparseBits(second + 1, frozenset({first, bad, second}))
    seq = good_sequence(bits, fam)
    assert [g.position for g in seq] == [first, second]
    assert seq[1].witness == (0, 1) and seq[1].bound == 2


def test_pi01_generics_have_the_property():
    for fam in nontrivial_families(41, 40):
        result = pi01_generic_run(fam, list(range(len(fam))), 2 * len(fam))
        assert oracles.property_holds(fam, result.subfamily, F)
        assert result.met == [t % len(fam) for t in range(2 * len(fam))]
        seq = good_sequence(result.bits, fam)
        assert seq[-1].witness == result.subfamily.indices


def test_pi01_edge_cases():
    with pytest.raises(FiniteMaximalFamily):
        pi01_generic_run(Family.from_sets([[], []], 2), [], 2)
    with pytest.raises(FiniteMaximalFamily):
        pi01_generic_run(Family.from_sets([[1], []], 2), [1], 1)
    with pytest.raises(BadInput):
        pi01_generic_run(Family.from_sets([[1]], 2), [], 3)
