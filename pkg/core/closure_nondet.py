"""
Closure Nondet - Nondeterministic closure operators, maximal closed extensions,
the poset-ideal encoding and the tree encoding
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.closure_det import DetClosureOp
from core.encoding import SequenceCoder, canonical_key
from core.errors import BadInput, BadSeed, InputTooLarge, NotMaximal
from core.finite_character import FCPredicate
from core.zorn_posets import FinPoset

logger = logging.getLogger("ChoiceLab.closure_nondet")

EXACT_LIMIT = 22
BACKTRACK_LIMIT = 10000


@dataclass(frozen=True)
class ChoiceRule:
    premise: FrozenSet[int]
    choices: FrozenSet[int]

    def __post_init__(self):
        if not self.choices:
            raise BadInput(f"rule with premise {sorted(self.premise)} offers no choices")

    def to_dict(self) -> dict:
        return {"from": sorted(self.premise), "choices": sorted(self.choices)}


@dataclass(frozen=True)
class NondetClosureOp:
    """Set of choice rules <F, S>: a closed set containing F meets S"""
    rules: Tuple[ChoiceRule, ...]

    def __post_init__(self):
        # rules form a set; the first occurrence keeps its index
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Iterable[int], Iterable[int]]]) -> "NondetClosureOp":
        return cls(tuple(ChoiceRule(frozenset(F), frozenset(S)) for F, S in pairs))

    def to_dict(self) -> dict:
        return {"rules": [r.to_dict() for r in self.rules]}


@dataclass(frozen=True)
class NClosureVerdict:
    closed: bool
    rule_index: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"closed": self.closed}
        if self.rule_index is not None:
            out["violated"] = self.rule_index
        return out


def is_nclosed(op: NondetClosureOp, X: Iterable[int]) -> NClosureVerdict:
    X = frozenset(X)
    for idx, rule in enumerate(op.rules):
        if rule.premise <= X and not (X & rule.choices):
            return NClosureVerdict(False, idx)
    return NClosureVerdict(True)


def _check_seed(op: NondetClosureOp, pred: FCPredicate, A: FrozenSet[int], C: FrozenSet[int]) -> None:
    if not C <= A:
        raise BadSeed(f"seed {sorted(C)} is not inside A")
    if not is_nclosed(op, C).closed:
        raise BadSeed(f"seed {sorted(C)} is not closed")
    if not pred(C):
        raise BadSeed(f"seed {sorted(C)} fails '{pred.name}'")


def find_completion(op: NondetClosureOp, pred: FCPredicate, A: FrozenSet[int],
                    start: FrozenSet[int], limit: int = BACKTRACK_LIMIT) -> Optional[FrozenSet[int]]:
    """
    Bounded backtracking search for a closed set Y with start <= Y <= A and pred(Y)

    Branches on the choices of the first violated rule, least choice first.
    Returns None when nothing is found within `limit` visited nodes.
    """
    if not start <= A or not pred(start):
        return None
    budget = [limit]

    def search(X: FrozenSet[int]) -> Optional[FrozenSet[int]]:
        budget[0] -= 1
        if budget[0] < 0:
            return None
        verdict = is_nclosed(op, X)
        if verdict.closed:
            return X
        for c in sorted(op.rules[verdict.rule_index].choices & A):
            grown = X | {c}
            if pred(grown):
                found = search(grown)
                if found is not None:
                    return found
        return None

    found = search(start)
    if found is None and budget[0] < 0:
        logger.warning(f"Completion search hit its limit of {limit} nodes")
    return found


def max_nclosed_extension(op: NondetClosureOp, pred: FCPredicate, A: Iterable[int],
                          C: Iterable[int] = (), mode: str = "exact",
                          exact_limit: int = EXACT_LIMIT,
                          backtrack_limit: int = BACKTRACK_LIMIT) -> FrozenSet[int]:
    """
    Maximal closed extension of C inside A satisfying pred

    Args:
        op: Nondeterministic closure operator
        pred: Finite-character predicate
        A: Ambient finite set
        C: Closed seed with pred(C)
        mode: "exact" (true superset-maximality, least canonical index among
            maximal sets) or "greedy" (single-addition maximality)
        exact_limit: Largest |A - C| accepted by exact mode
        backtrack_limit: Node budget of each greedy completion search

    Returns:
        The extension
    """
    A = frozenset(A)
    C = frozenset(C)
    _check_seed(op, pred, A, C)
    free = sorted(A - C)

    if mode == "exact":
        if len(free) > exact_limit:
            raise InputTooLarge(f"exact mode handles at most {exact_limit} free elements, got {len(free)}")
        qualifying = []
        for mask in range(1 << len(free)):
            X = C | {free[k] for k in range(len(free)) if mask >> k & 1}
            if pred(X) and is_nclosed(op, X).closed:
                qualifying.append((bin(mask).count("1"), mask, X))
        qualifying.sort(key=lambda item: -item[0])
        maximal_masks: List[int] = []
        maximal_sets: List[FrozenSet[int]] = []
        for _, mask, X in qualifying:
            if not any(mask & m == mask for m in maximal_masks):
                maximal_masks.append(mask)
                maximal_sets.append(X)
        return min(maximal_sets, key=canonical_key)

    if mode == "greedy":
        kept = C
        for a in free:
            if a in kept:
                continue
            found = find_completion(op, pred, A, kept | {a}, backtrack_limit)
            if found is not None:
                kept = found
        return kept

    raise BadInput(f"unknown mode '{mode}'")


def is_single_addition_maximal(op: NondetClosureOp, pred: FCPredicate, A: Iterable[int],
                               B: Iterable[int]) -> bool:
    B = frozenset(B)
    return all(not (pred(B | {a}) and is_nclosed(op, B | {a}).closed) for a in frozenset(A) - B)


def no_minimum_operator(k: int) -> NondetClosureOp:
    """
    Truncation of the operator without a least closed set: closed sets are
    nonempty, each i < k-1 needs a larger element, and k-1 needs a smaller one

    The wrap rule ({k-1}, {0..k-2}) stands in for the missing infinite tail.
    Without it {k-1} would be the least closed set; with it the minimal
    closed sets are {i, k-1} for i < k-1.
    """
    if k < 2:
        raise BadInput("the no-minimum operator needs at least two elements")
    top = k - 1
    rules = [(frozenset(), frozenset(range(k)))]
    rules += [(frozenset({i}), frozenset(range(i + 1, k))) for i in range(top)]
    rules.append((frozenset({top}), frozenset(range(top))))
    return NondetClosureOp.from_pairs(rules)


def det_to_nondet(op: DetClosureOp) -> NondetClosureOp:
    """<F, n> becomes <F, {n}>; closed sets coincide"""
    return NondetClosureOp.from_pairs((r.premise, {r.conclusion}) for r in op.rules)


def naive_determinization(op: NondetClosureOp) -> DetClosureOp:
    """<F, S> becomes <F, min S>; closed sets of the result are closed for op, not conversely"""
    return DetClosureOp.from_pairs((r.premise, min(r.choices)) for r in op.rules)


# ---- poset ideals ----

def common_upper_bound_predicate(P: FinPoset) -> FCPredicate:
    def evaluate(X: FrozenSet[int]) -> bool:
        return all(any(P.le(a, u) and P.le(b, u) for u in range(P.size))
                   for a, b in combinations(sorted(X), 2))

    return FCPredicate(evaluate, P.size, "common-upper-bound")


def poset_ideal_encoding(P: FinPoset) -> Tuple[NondetClosureOp, FCPredicate]:
    """
    Down rules <{k}, {j}> for j <= k, join-choice rules <{j,k}, upper bounds>
    when an upper bound exists, identity rules <{p}, {p}> otherwise
    """
    rules = []
    for k in range(P.size):
        rules.append((frozenset({k}), frozenset({k})))
        for j in range(P.size):
            if j != k and P.le(j, k):
                rules.append((frozenset({k}), frozenset({j})))
    for j, k in combinations(range(P.size), 2):
        bounds = frozenset(u for u in range(P.size) if P.le(j, u) and P.le(k, u))
        if bounds:
            rules.append((frozenset({j, k}), bounds))
    return NondetClosureOp.from_pairs(rules), common_upper_bound_predicate(P)


# ---- tree encoding ----

@dataclass(frozen=True)
class TruncTree:
    """Prefix-closed set of strings (tuples of child indices), all of length <= depth"""
    nodes: FrozenSet[Tuple[int, ...]]
    depth: int

    def __post_init__(self):
        if () not in self.nodes:
            raise BadInput("tree must contain the root")
        for node in self.nodes:
            if len(node) > self.depth:
                raise BadInput(f"node {node} is deeper than {self.depth}")
            if node and node[:-1] not in self.nodes:
                raise BadInput(f"tree is not prefix-closed at {node}")

    @classmethod
    def from_nested(cls, nested: list, depth: int) -> "TruncTree":
        """Nested child arrays: a node is the list of its children"""
        nodes = set()

        def walk(children: list, prefix: Tuple[int, ...]) -> None:
            nodes.add(prefix)
            for k, child in enumerate(children):
                walk(child, prefix + (k,))

        walk(nested, ())
        return cls(frozenset(nodes), depth)

    def children(self, node: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        return sorted(n for n in self.nodes if len(n) == len(node) + 1 and n[:-1] == node)

    def has_full_depth_node(self) -> bool:
        return any(len(n) == self.depth for n in self.nodes)


@dataclass(frozen=True)
class TreeEncoding:
    A: FrozenSet[int]
    op: NondetClosureOp
    pred: FCPredicate
    z: int
    codes: Dict[Tuple[int, Tuple[int, ...]], int]

    def root(self, i: int) -> int:
        return self.codes[(i, ())]


def node_code(i: int, node: Sequence[int]) -> int:
    """<i, sigma> as a positive natural; 0 is reserved for z"""
    return SequenceCoder().encode((i,) + tuple(node)) + 1


def tree_encoding(trees: Sequence[TruncTree]) -> TreeEncoding:
    """
    Dead ends route to {z}; other nodes offer their immediate extensions;
    nodes at the truncation depth get no rule; pred is 'z not in X'
    """
    if not trees:
        raise BadInput("tree encoding needs at least one tree")
    depths = {t.depth for t in trees}
    if len(depths) != 1:
        raise BadInput(f"trees must share one depth, got {sorted(depths)}")
    z = 0
    codes = {}
    rules = []
    for i, tree in enumerate(trees):
        for node in sorted(tree.nodes, key=lambda n: (len(n), n)):
            codes[(i, node)] = node_code(i, node)
    for i, tree in enumerate(trees):
        for node in sorted(tree.nodes, key=lambda n: (len(n), n)):
            if len(node) == tree.depth:
                continue
            kids = tree.children(node)
            targets = [codes[(i, k)] for k in kids] if kids else [z]
            rules.append(({codes[(i, node)]}, targets))
    A = frozenset(codes.values()) | {z}
    avoid_z = FCPredicate(lambda X: z not in X, max(A) + 1, "avoid(z)")
    return TreeEncoding(A, NondetClosureOp.from_pairs(rules), avoid_z, z, codes)


def decode_paths(B: Iterable[int], trees: Sequence[TruncTree],
                 encoding: Optional[TreeEncoding] = None) -> FrozenSet[int]:
    """
    Trees with a path to the truncation depth: {i : <i, root> in B}

    B must be a maximal closed set avoiding z; every premise of the encoding is
    a singleton, so a proper extension exists iff some single element can be
    completed.
    """
    enc = encoding or tree_encoding(trees)
    B = frozenset(B)
    if not B <= enc.A or not enc.pred(B) or not is_nclosed(enc.op, B).closed:
        raise NotMaximal("B is not a closed subset of the encoding avoiding z")
    for a in sorted(enc.A - B):
        if find_completion(enc.op, enc.pred, enc.A, B | {a}) is not None:
            raise NotMaximal(f"B extends by element {a}")
    return frozenset(i for i in range(len(trees)) if enc.root(i) in B)
