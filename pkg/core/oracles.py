"""
Oracles - Brute-force verifiers shared by the tests and the verify command
"""

from itertools import combinations
from typing import FrozenSet, Iterable, List, Sequence

import networkx as nx

from core.closure_det import DetClosureOp
from core.closure_nondet import NondetClosureOp, TruncTree, is_nclosed
from core.errors import InputTooLarge
from core.families import (Family, PropertyKind, PropertyTag, SubfamilyIndex,
                           distinct_members)
from core.finite_character import FCPredicate
from core.zorn_posets import FinPoset


def _subsets(items: Sequence[int]) -> Iterable[FrozenSet[int]]:
    for size in range(len(items) + 1):
        for combo in combinations(items, size):
            yield frozenset(combo)


SUBFAMILY_LIMIT = 16


def property_holds(fam: Family, sub: SubfamilyIndex, p: PropertyTag) -> bool:
    """Check p on every tuple of distinct members of the right size"""
    distinct = distinct_members(fam, sub)
    sizes = range(2, len(distinct) + 1) if p.kind is PropertyKind.F else [p.n]
    for size in sizes:
        for combo in combinations(distinct, size):
            common = frozenset.intersection(*(fam[j].as_set() for j in combo))
            if p.kind is PropertyKind.D and common:
                return False
            if p.kind is not PropertyKind.D and not common:
                return False
    return True


def maximal_subfamily(fam: Family, sub: SubfamilyIndex, p: PropertyTag) -> bool:
    """No strictly larger set of distinct members (containing sub's) has p"""
    if not property_holds(fam, sub, p):
        return False
    classes = {}
    for k in range(len(fam)):
        classes.setdefault(fam[k].elements, k)
    present = {fam[j].elements for j in sub}
    extra = [k for key, k in classes.items() if key not in present]
    if len(extra) > SUBFAMILY_LIMIT:
        raise InputTooLarge(f"subfamily oracle enumerates at most 2^{SUBFAMILY_LIMIT} extensions")
    base = tuple(classes[key] for key in present)
    for added in _subsets(extra):
        if added and property_holds(fam, SubfamilyIndex(base + tuple(sorted(added))), p):
            return False
    return True


def coding_member(f: Sequence[int], i: int, horizon: int) -> FrozenSet[int]:
    """{2i} plus every odd 2x+1 below horizon with f(y) = i for some y <= x"""
    members = {2 * i} if 2 * i < horizon else set()
    for x in range(horizon):
        if 2 * x + 1 < horizon and any(f[y] == i for y in range(min(x + 1, len(f)))):
            members.add(2 * x + 1)
    return frozenset(members)


def tilde_members(fam: Family, n: int, stages: int, exact_size: bool = False) -> List[FrozenSet[int]]:
    """
    Members of the evens-law transform: at stage s every index set F within
    the first s+1 members, of size n+1 (or more unless exact_size), whose
    n-element subsets all meet at or below s gets one fresh odd
    """
    members = [{2 * i} for i in range(len(fam))]
    odd = 1
    for s in range(stages):
        fired = []
        for F in _subsets(range(min(s + 1, len(fam)))):
            if len(F) < n + 1 or (exact_size and len(F) != n + 1):
                continue
            if all(min(frozenset.intersection(*(fam[j].as_set() for j in G)), default=s + 1) <= s
                   for G in combinations(sorted(F), n)):
                fired.append(F)
        for F in sorted(fired, key=lambda F: sorted(F, reverse=True)):
            for i in F:
                members[i].add(odd)
            odd += 2
    return [frozenset(m) for m in members]


def finite_character(pred: FCPredicate, universe: int) -> bool:
    """pred(empty) and every subset of a satisfying set satisfies pred"""
    if not pred(frozenset()):
        return False
    for X in _subsets(list(range(universe))):
        if pred(X) and not all(pred(Y) for Y in _subsets(sorted(X))):
            return False
    return True


def least_removal_size(pred: FCPredicate, A: Iterable[int]) -> int:
    A = frozenset(A)
    for size in range(len(A) + 1):
        if any(pred(A - frozenset(F)) for F in combinations(sorted(A), size)):
            return size
    return -1


def naive_fixpoint(op: DetClosureOp, X: Iterable[int]) -> FrozenSet[int]:
    current = set(X)
    changed = True
    while changed:
        changed = False
        for rule in op.rules:
            if rule.premise <= current and rule.conclusion not in current:
                current.add(rule.conclusion)
                changed = True
    return frozenset(current)


def det_closed(op: DetClosureOp, X: FrozenSet[int]) -> bool:
    return naive_fixpoint(op, X) == X


def maximal_det_extension(op: DetClosureOp, pred: FCPredicate, A: Iterable[int],
                          C: Iterable[int], B: Iterable[int]) -> bool:
    """B is closed, C <= B <= A, pred(B), and no closed pred-set strictly between B and A"""
    A, C, B = frozenset(A), frozenset(C), frozenset(B)
    if not (C <= B <= A and pred(B) and det_closed(op, B)):
        return False
    for added in _subsets(sorted(A - B)):
        Y = B | added
        if added and pred(Y) and det_closed(op, Y):
            return False
    return True


def maximal_fcp_subset(pred: FCPredicate, A: Iterable[int], B: Iterable[int]) -> bool:
    A, B = frozenset(A), frozenset(B)
    if not (B <= A and pred(B)):
        return False
    return not any(added and pred(B | added) for added in _subsets(sorted(A - B)))


def nclosed_sets(op: NondetClosureOp, pred: FCPredicate, A: Iterable[int],
                 C: Iterable[int] = ()) -> List[FrozenSet[int]]:
    A, C = frozenset(A), frozenset(C)
    return [C | S for S in _subsets(sorted(A - C))
            if pred(C | S) and is_nclosed(op, C | S).closed]


def maximal_sets(sets: List[FrozenSet[int]]) -> List[FrozenSet[int]]:
    return [X for X in sets if not any(X < Y for Y in sets)]


def minimal_sets(sets: List[FrozenSet[int]]) -> List[FrozenSet[int]]:
    return [X for X in sets if not any(Y < X for Y in sets)]


def maximal_nclosed(op: NondetClosureOp, pred: FCPredicate, A: Iterable[int],
                    C: Iterable[int], B: Iterable[int]) -> bool:
    B = frozenset(B)
    return B in maximal_sets(nclosed_sets(op, pred, A, C))


def ideals(P: FinPoset) -> List[FrozenSet[int]]:
    """Down-closed subsets in which every two elements have an upper bound inside"""
    out = []
    for X in _subsets(list(range(P.size))):
        down = all(b in X for a in X for b in range(P.size) if P.le(b, a))
        directed = all(any(P.le(a, u) and P.le(b, u) for u in X) for a in X for b in X)
        if down and directed:
            out.append(X)
    return out


def maximal_elements(P: FinPoset) -> FrozenSet[int]:
    return frozenset(p for p in range(P.size) if not any(P.lt(p, q) for q in range(P.size)))


def reachable_depth(trees: Sequence[TruncTree]) -> FrozenSet[int]:
    """Trees with a node at the truncation depth, found by depth-first search"""
    found = set()
    for i, tree in enumerate(trees):
        graph = nx.DiGraph()
        graph.add_node(())
        graph.add_edges_from((node[:-1], node) for node in tree.nodes if node)
        if any(len(node) == tree.depth for node in nx.dfs_preorder_nodes(graph, ())):
            found.add(i)
    return frozenset(found)


def range_of(f: Sequence[int], bound: int) -> FrozenSet[int]:
    return frozenset(v for v in f if v < bound)
