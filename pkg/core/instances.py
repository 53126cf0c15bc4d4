"""
Instances - Seeded random instance generation for experiments and tests
"""

import random
from typing import List

from core.closure_det import DetClosureOp
from core.closure_nondet import NondetClosureOp, TruncTree
from core.families import Family
from core.zorn_posets import FinPoset


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_family(rng: random.Random, members: int, horizon: int, density: float = 0.3) -> Family:
    sets = [[x for x in range(horizon) if rng.random() < density] for _ in range(members)]
    if not any(sets):
        sets[0] = [rng.randrange(horizon)]
    return Family.from_sets(sets, horizon)


def random_poset(rng: random.Random, size: int, density: float = 0.3) -> FinPoset:
    """Random order compatible with the numeric order, closed transitively"""
    pairs = [(a, b) for a in range(size) for b in range(a + 1, size) if rng.random() < density]
    perm = list(range(size))
    rng.shuffle(perm)
    return FinPoset.from_relation(size, [(perm[a], perm[b]) for a, b in pairs])


def random_det_rules(rng: random.Random, universe: int, count: int, max_premise: int = 2) -> DetClosureOp:
    rules = []
    for _ in range(count):
        size = rng.randint(0, max_premise)
        premise = rng.sample(range(universe), min(size, universe))
        rules.append((premise, rng.randrange(universe)))
    return DetClosureOp.from_pairs(rules)


def random_nondet_rules(rng: random.Random, universe: int, count: int,
                        max_premise: int = 2, max_choices: int = 3) -> NondetClosureOp:
    rules = []
    for _ in range(count):
        premise = rng.sample(range(universe), min(rng.randint(1, max_premise), universe))
        choices = rng.sample(range(universe), min(rng.randint(1, max_choices), universe))
        rules.append((premise, choices))
    return NondetClosureOp.from_pairs(rules)


def random_tree(rng: random.Random, depth: int, branching: int, keep: float = 0.7) -> TruncTree:
    def grow(level: int) -> list:
        if level == depth:
            return []
        return [grow(level + 1) for _ in range(branching) if rng.random() < keep]

    return TruncTree.from_nested(grow(0), depth)


def random_injective(rng: random.Random, length: int, bound: int) -> List[int]:
    return rng.sample(range(bound), min(length, bound))
