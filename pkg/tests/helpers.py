from itertools import permutations

from core.finite_character import build_predicate


def injective_prefixes(max_length: int, bound: int):
    for length in range(max_length + 1):
        yield from permutations(range(bound), length)


def all_trees(depth: int, branching: int = 2):
    """Every nested tree of height <= depth with at most `branching` children per node"""
    if depth == 0:
        return [[]]
    smaller = all_trees(depth - 1, branching)
    out = [[]]
    layer = [[]]
    for _ in range(branching):
        layer = [kids + [t] for kids in layer for t in smaller]
        out += layer
    return out


PREDICATE_DOCS = [
    {"kind": "true"},
    {"kind": "max_size", "bound": 3},
    {"kind": "avoid", "set": [0, 5]},
    {"kind": "not_divisible", "by": 3},
    {"kind": "member_of", "set": [1, 2, 3, 4, 6, 7]},
    {"kind": "all_of", "of": [{"kind": "max_size", "bound": 4}, {"kind": "avoid", "set": [2]}]},
]


def predicates(universe: int):
    return [build_predicate(doc, universe) for doc in PREDICATE_DOCS]
