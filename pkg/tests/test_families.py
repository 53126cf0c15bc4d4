import pytest
from hypothesis import given, strategies as st

from core import oracles
from core.errors import (BadIndex, BadInput, DegenerateMaximalFamily,
                         EmptyResult, InputTooLarge, NotAProperty, NotMaximal)
from core.families import (BoundedSet, Family, PropertyKind, PropertyTag, SubfamilyIndex,
                           VerdictStatus, decode_range, distinct_members,
                           greedy_max_subfamily, has_property, is_maximal,
                           pairwise_intersection_predicate, range_coding_family,
                           sets_distinct, tilde_transform)
from core.finite_character import fcp_greedy_max
from core.instances import make_rng, random_family
from tests.helpers import injective_prefixes

F = PropertyTag(PropertyKind.F)
D2 = PropertyTag(PropertyKind.D, 2)
DBAR2 = PropertyTag(PropertyKind.DBAR, 2)
TAGS = [D2, PropertyTag.parse("D3"), DBAR2, PropertyTag.parse("Dbar3"), F]


def sub(*indices):
    return SubfamilyIndex(indices)


def test_property_tag_parse():
    assert PropertyTag.parse("F") == F
    assert PropertyTag.parse("Dbar3") == PropertyTag(PropertyKind.DBAR, 3)
    assert str(PropertyTag.parse("D2")) == "D2"
    for bad in ("D1", "Dbar", "G2"):
        with pytest.raises(BadInput):
            PropertyTag.parse(bad)


def test_bounded_sets_stay_below_horizon():
    with pytest.raises(BadInput):
        BoundedSet((3, 1), 4)
    fam = Family.from_sets([[3, 1, 1]], 4)
    assert fam[0].elements == (1, 3)
    with pytest.raises(BadIndex):
        fam[1]
    with pytest.raises(BadInput) as info:
        Family.from_sets([[9, 1, 4]], 4)
    assert "[4, 9]" in str(info.value)


def test_range_coding_with_an_odd_horizon():
    fam = range_coding_family([0], 2, 5)
    assert fam[0].as_set() == {0, 1, 3}
    assert fam[1].as_set() == {2}
    assert fam.to_dict() == {"horizon": 5, "members": [[0, 1, 3], [2]]}


def test_range_coding_members(coding_family):
    assert coding_family[5].as_set() == {1, 3, 5, 7, 9, 10, 11}
    assert coding_family[3].as_set() == {3, 5, 6, 7, 9, 11}
    assert coding_family[0].as_set() == {0}
    assert coding_family.evens_law_holds()
    for i in range(len(coding_family)):
        assert coding_family[i].as_set() == oracles.coding_member([5, 3], i, 12)


def test_range_coding_rejects_repeats():
    with pytest.raises(BadInput):
        range_coding_family([1, 1], 3, 8)


def test_sets_distinct(coding_family):
    copies = Family.from_sets([[0], [0]], 4)
    assert not sets_distinct(copies, 0, 1)
    assert sets_distinct(coding_family, 0, 1)
    assert distinct_members(copies, sub(1, 0)) == [1]


def test_has_property_examples(coding_family):
    copies = Family.from_sets([[0], [0], [0]], 4)
    assert has_property(copies, sub(0, 1, 2), F).status is VerdictStatus.VACUOUS

    singletons = Family.from_sets([[0], [2], [4]], 6)
    assert has_property(singletons, sub(0, 1, 2), D2).status is VerdictStatus.HOLDS
    failed = has_property(singletons, sub(0, 1), DBAR2)
    assert failed.status is VerdictStatus.FAILS and failed.members == (0, 1)

    verdict = has_property(coding_family, sub(3, 5), DBAR2)
    assert verdict.holds and verdict.element == 3
    assert verdict.to_dict() == {"status": "holds", "element": 3}


def test_greedy_examples(coding_family):
    picked, exhausted = greedy_max_subfamily(coding_family, F, start=3)
    assert picked.indices == (3, 5) and exhausted

    copies = Family.from_sets([[1], [1], [1]], 4)
    assert greedy_max_subfamily(copies, F)[0].indices == (0,)

    disjoint = Family.from_sets([[0], [2], [4]], 6)
    assert greedy_max_subfamily(disjoint, DBAR2)[0].indices == (0,)

    capped, exhausted = greedy_max_subfamily(disjoint, D2, max_picks=2)
    assert capped.indices == (0, 1) and not exhausted


def test_greedy_needs_a_nontrivial_family():
    with pytest.raises(EmptyResult):
        greedy_max_subfamily(Family.from_sets([[], []], 4), F)
    with pytest.raises(BadIndex):
        greedy_max_subfamily(Family.from_sets([[1]], 4), F, start=3)


def test_is_maximal_examples(coding_family):
    assert is_maximal(coding_family, sub(3, 5), F).maximal
    verdict = is_maximal(coding_family, sub(3), F)
    assert not verdict.maximal and verdict.extension == 5
    assert verdict.to_dict() == {"maximal": False, "extendable": 5}
    with pytest.raises(NotAProperty):
        is_maximal(coding_family, sub(0, 1), F)


def test_greedy_is_maximal_on_random_families():
    rng = make_rng(7)
    for _ in range(200):
        fam = random_family(rng, rng.randint(1, 8), rng.randint(1, 64))
        for p in (D2, DBAR2, PropertyTag.parse("Dbar3"), F):
            picked, exhausted = greedy_max_subfamily(fam, p)
            assert exhausted
            assert oracles.maximal_subfamily(fam, picked, p), (fam.to_dict(), str(p))


member_sets = st.lists(st.frozensets(st.integers(0, 11), max_size=4), min_size=1, max_size=6)


@given(member_sets, st.data())
def test_has_property_agrees_with_brute_force(sets, data):
    fam = Family.from_sets(sets, 12)
    indices = data.draw(st.lists(st.integers(0, len(fam) - 1), max_size=5))
    p = data.draw(st.sampled_from(TAGS))
    assert has_property(fam, sub(*indices), p).holds == oracles.property_holds(fam, sub(*indices), p)


@given(member_sets, st.data())
def test_is_maximal_agrees_with_brute_force(sets, data):
    fam = Family.from_sets(sets, 12)
    indices = sub(*data.draw(st.lists(st.integers(0, len(fam) - 1), max_size=4)))
    p = data.draw(st.sampled_from(TAGS))
    if oracles.property_holds(fam, indices, p):
        assert is_maximal(fam, indices, p).maximal == oracles.maximal_subfamily(fam, indices, p)


def test_tilde_without_qualifying_sets():
    fam = Family.from_sets([[1, 3], [1, 5], [5, 7]], 8)
    out = tilde_transform(fam, 2, stages=5)
    assert out.to_dict()["members"] == [[0], [2], [4]]
    assert out.evens_law_holds()


def test_tilde_shares_an_odd_for_a_qualifying_set():
    fam = Family.from_sets([[1, 2], [1, 3], [1, 4]], 5)
    out = tilde_transform(fam, 2, stages=3)
    assert out.to_dict()["members"] == [[0, 1], [1, 2], [1, 4]]
    assert out.horizon == 6
    assert tilde_transform(fam, 2, stages=3, exact_size=True).to_dict() == out.to_dict()


def test_tilde_rejects_small_n():
    with pytest.raises(BadInput):
        tilde_transform(Family.from_sets([[0]], 2), 1, 2)


def test_tilde_agrees_with_brute_force():
    rng = make_rng(11)
    for _ in range(30):
        fam = random_family(rng, rng.randint(2, 6), rng.randint(2, 12), density=0.5)
        n, stages = rng.randint(2, 3), rng.randint(1, 8)
        for exact in (False, True):
            out = tilde_transform(fam, n, stages, exact_size=exact)
            assert [m.as_set() for m in out.members] == oracles.tilde_members(fam, n, stages, exact)
            assert out.evens_law_holds()


def test_tilde_bounds_the_indices_per_stage():
    fam = Family.from_sets([[1, 3]] * 5, 4)
    assert len(tilde_transform(fam, 2, stages=4, max_indices=4)) == 5
    with pytest.raises(InputTooLarge):
        tilde_transform(fam, 2, stages=5, max_indices=4)


def test_decode_range_examples(coding_family):
    assert decode_range(coding_family, sub(3, 5), F).decoded == {3, 5}

    result = decode_range(coding_family, sub(0, 1, 2, 3, 4), D2)
    assert result.decoded == {5} and result.exceptions == {3}
    assert result.range_estimate == {3, 5}
    assert result.to_dict() == {"decoded": [5], "exceptions": [3]}

    with pytest.raises(NotMaximal):
        decode_range(coding_family, sub(3), F)


def test_decode_range_of_the_empty_prefix_is_degenerate():
    fam = range_coding_family([], 3, 8)
    with pytest.raises(DegenerateMaximalFamily):
        decode_range(fam, sub(0), F)


def test_decode_range_recovers_every_small_prefix():
    for f in injective_prefixes(3, 6):
        fam = range_coding_family(f, 6, 16)
        expected = oracles.range_of(f, len(fam))

        d_sub, _ = greedy_max_subfamily(fam, D2)
        d_result = decode_range(fam, d_sub, D2)
        assert d_result.range_estimate == expected
        assert len(d_result.exceptions) <= 1

        if f:
            f_sub, _ = greedy_max_subfamily(fam, F, start=min(f))
            assert decode_range(fam, f_sub, F).decoded == expected


def test_pairwise_predicate_gives_maximal_dbar2_subfamilies():
    rng = make_rng(43)
    checked = 0
    while checked < 60:
        fam = random_family(rng, rng.randint(2, 8), rng.randint(2, 16), density=0.4)
        if any(len(m) == 0 for m in fam.members):
            continue
        B = fcp_greedy_max(pairwise_intersection_predicate(fam), range(len(fam)))
        J = SubfamilyIndex(tuple(sorted(B)))
        assert has_property(fam, J, DBAR2).holds
        assert is_maximal(fam, J, DBAR2).maximal
        checked += 1
