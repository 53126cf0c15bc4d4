import pytest

from core import oracles
from core.encoding import pair
from core.errors import BadInput
from core.families import Family, PropertyKind, PropertyTag
from core.instances import make_rng, random_family
from core.permitting import (PermittingConstruction, StagedEnumeration,
                             permission_violations, permitting_run)

F = PropertyTag(PropertyKind.F)


def test_staged_enumeration():
    W = StagedEnumeration.from_pairs([(4, 2), (1, 0), (4, 1)])
    assert W.at(0) == {1}
    assert W.at(1) == {1, 4}
    assert W.arrivals(1) == {4}
    assert W.arrivals(2) == frozenset()
    assert W.to_pairs() == [[1, 0], [4, 1]]
    with pytest.raises(BadInput):
        StagedEnumeration.from_pairs([(-1, 0)])


def test_permitting_needs_a_nonempty_first_member(logger):
    with pytest.raises(BadInput):
        PermittingConstruction(Family.from_sets([[], [1]], 4), StagedEnumeration(), logger)


def test_full_family_grows_an_initial_segment(logger):
    fam = Family.from_sets([range(8)] * 8, 8)
    result = permitting_run(fam, StagedEnumeration(), 500, logger)
    assert result.subfamily.indices == tuple(range(8))
    assert len(result.history) == 501
    assert permission_violations(fam, result, StagedEnumeration()) == []
    for state in result.history:
        held = sorted(state.holders())
        assert held == list(range(len(held)))


def test_first_copy_persists(logger):
    fam = Family.from_sets([[0, 1], [1], [2], [1, 2]], 4)
    result = permitting_run(fam, StagedEnumeration(), 20, logger)
    assert all(pair(0, 0) in state.members for state in result.history)
    assert result.history[0].to_dict() == {"stage": 0, "copies": [[0, 0]]}


def test_extraction_waits_for_permission(logger):
    fam = Family.from_sets([[0, 3], [3], [0]], 4)
    quiet = permitting_run(fam, StagedEnumeration(), 30, logger)
    assert quiet.subfamily.indices == (0, 2)
    assert not quiet.transcript.of_kind("extract")

    W = StagedEnumeration.from_pairs([(0, 4)])
    permitted = permitting_run(fam, W, 30, logger)
    assert permitted.subfamily.indices == (0, 1)
    assert [e.payload["index"] for e in permitted.transcript.of_kind("extract")] == [2]
    assert permission_violations(fam, permitted, W) == []


def test_random_runs_respect_the_permission_law(logger):
    rng = make_rng(29)
    checked = 0
    while checked < 40:
        fam = random_family(rng, rng.randint(2, 10), rng.randint(4, 24), density=0.5)
        if len(fam[0]) == 0:
            continue
        W = StagedEnumeration.from_pairs(
            [(rng.randrange(200), rng.randrange(500)) for _ in range(40)])
        result = permitting_run(fam, W, 500, logger)
        assert permission_violations(fam, result, W) == []
        assert oracles.property_holds(fam, result.subfamily, F)
        checked += 1
