"""
Zorn Posets - Finite posets, chain climbing, maximal elements and the reversal gadget
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

import networkx as nx

from core.errors import BadIndex, BadInput

logger = logging.getLogger("ChoiceLab.zorn_posets")


@dataclass(frozen=True)
class FinPoset:
    """
    Partial order on {0..size-1}. `leq` holds every pair (a, b) with a <= b,
    reflexive pairs included.
    """
    size: int
    leq: FrozenSet[Tuple[int, int]]
    graph: nx.DiGraph = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        for a, b in self.leq:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise BadInput(f"pair ({a}, {b}) outside poset of size {self.size}")
            if a != b:
                graph.add_edge(a, b)
        for p in range(self.size):
            if (p, p) not in self.leq:
                raise BadInput(f"relation is not reflexive at {p}")
        if not nx.is_directed_acyclic_graph(graph):
            raise BadInput("relation is not antisymmetric")
        for a, b in graph.edges:
            for c in graph.successors(b):
                if (a, c) not in self.leq:
                    raise BadInput(f"relation is not transitive: {a}<={b}<={c}")
        object.__setattr__(self, "graph", graph)

    @classmethod
    def from_relation(cls, size: int, pairs: Iterable[Sequence[int]]) -> "FinPoset":
        """Reflexive-transitive closure of the given generating pairs"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(size))
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise BadInput(f"pair ({a}, {b}) outside poset of size {size}")
            if a != b:
                graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(graph):
            raise BadInput("generating pairs contain a cycle")
        closure = nx.transitive_closure_dag(graph)
        leq = {(p, p) for p in range(size)} | set(closure.edges)
        return cls(size, frozenset(leq))

    @classmethod
    def chain(cls, size: int) -> "FinPoset":
        return cls.from_relation(size, [(i, i + 1) for i in range(size - 1)])

    @classmethod
    def antichain(cls, size: int) -> "FinPoset":
        return cls.from_relation(size, [])

    @classmethod
    def diamond(cls) -> "FinPoset":
        return cls.from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)])

    def le(self, a: int, b: int) -> bool:
        return (a, b) in self.leq

    def lt(self, a: int, b: int) -> bool:
        return a != b and (a, b) in self.leq

    def above(self, p: int) -> FrozenSet[int]:
        """Elements strictly above p"""
        return frozenset(nx.descendants(self.graph, p))

    def check(self, p: int) -> None:
        if not 0 <= p < self.size:
            raise BadIndex(f"element {p} outside poset of size {self.size}")

    def to_dict(self) -> dict:
        return {"size": self.size, "leq": sorted([a, b] for a, b in self.leq if a != b)}


@dataclass(frozen=True)
class ClimbResult:
    chain: Tuple[int, ...]
    top: int


def zl1_climb(pos: FinPoset, start: int) -> ClimbResult:
    """
    Replay q_0 = start, q_{i+1} = p_i when q_i < p_i, over the numeric
    enumeration of the poset

    Args:
        pos: Finite poset
        start: Starting element

    Returns:
        ClimbResult with the chain of distinct q values and its top
    """
    pos.check(start)
    q = start
    chain = [q]
    for p in range(pos.size):
        if pos.lt(q, p):
            q = p
            chain.append(q)
    return ClimbResult(tuple(chain), q)


def is_chain(pos: FinPoset, elements: Iterable[int]) -> bool:
    items = list(elements)
    return all(pos.le(a, b) or pos.le(b, a) for a in items for b in items)


def maximal_elements(pos: FinPoset) -> FrozenSet[int]:
    return frozenset(p for p in range(pos.size) if pos.graph.out_degree(p) == 0)


def maximal_assignment(pos: FinPoset) -> Dict[int, int]:
    """m(p) = numerically least maximal element above or equal to p"""
    maximals = maximal_elements(pos)
    return {p: min(q for q in maximals if pos.le(p, q)) for p in range(pos.size)}


@dataclass(frozen=True)
class GadgetPoset:
    """Reversal poset on labels p_{i,s} (i < columns, s < rows); element id = i * rows + s"""
    poset: FinPoset
    f: Tuple[int, ...]
    columns: int
    rows: int

    def label(self, i: int, s: int) -> int:
        return i * self.rows + s

    def unlabel(self, p: int) -> Tuple[int, int]:
        return divmod(p, self.rows)


def _check_prefix(f: Sequence[int], rows: int) -> None:
    if rows < 1:
        raise BadInput("the reversal gadget needs at least one row")
    if len(set(f)) != len(f):
        raise BadInput(f"reversal gadget needs an injective prefix, got {list(f)}")
    if len(f) > rows:
        raise BadInput(f"prefix of length {len(f)} has witnesses beyond S={rows}")


def build_reversal_poset(f: Sequence[int], columns: int, rows: int) -> GadgetPoset:
    """p_{i,t} < p_{i,s} (s != t) iff f(s) = i, or f(t) != i and t > s"""
    _check_prefix(f, rows)

    def value(s: int):
        return f[s] if s < len(f) else None

    pairs = []
    for i in range(columns):
        for s in range(rows):
            for t in range(rows):
                if s != t and (value(s) == i or (value(t) != i and t > s)):
                    pairs.append((i * rows + t, i * rows + s))
    leq = frozenset(pairs) | {(p, p) for p in range(columns * rows)}
    return GadgetPoset(FinPoset(columns * rows, leq), tuple(f), columns, rows)


def zl_reversal_decode(f: Sequence[int], columns: int, rows: int) -> FrozenSet[int]:
    """
    Decode range(f) from the maximal assignment on the reversal poset:
    i is in the range iff f(s) = i for the s with m(p_{i,0}) = p_{i,s}
    """
    gadget = build_reversal_poset(f, columns, rows)
    assignment = maximal_assignment(gadget.poset)
    decoded = set()
    for i in range(columns):
        _, s = gadget.unlabel(assignment[gadget.label(i, 0)])
        if s < len(f) and f[s] == i:
            decoded.add(i)
    logger.debug(f"Reversal decode for f={list(f)}: {sorted(decoded)}")
    return frozenset(decoded)


def zl2_decode(f: Sequence[int], columns: int, rows: int) -> FrozenSet[int]:
    """Decode from maximal elements alone: p_{i,0} is not maximal, or f(0) = i"""
    gadget = build_reversal_poset(f, columns, rows)
    maximals = maximal_elements(gadget.poset)
    return frozenset(
        i for i in range(columns)
        if gadget.label(i, 0) not in maximals or (f and f[0] == i))
