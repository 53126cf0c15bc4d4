"""
Closure Det - Deterministic finitary closure operators and their maximal extensions
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.errors import BadInput, BadSeed
from core.finite_character import FCPredicate
from core.zorn_posets import FinPoset

logger = logging.getLogger("ChoiceLab.closure_det")


@dataclass(frozen=True)
class HornRule:
    premise: FrozenSet[int]
    conclusion: int

    def to_dict(self) -> dict:
        return {"from": sorted(self.premise), "to": self.conclusion}


@dataclass(frozen=True)
class DetClosureOp:
    """Set of Horn rules <F, n>: a closed set containing F contains n"""
    rules: Tuple[HornRule, ...]
    _watch: Dict[int, List[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        watch = defaultdict(list)
        for idx, rule in enumerate(self.rules):
            for x in rule.premise:
                watch[x].append(idx)
        object.__setattr__(self, "_watch", dict(watch))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Iterable[int], int]]) -> "DetClosureOp":
        return cls(tuple(HornRule(frozenset(F), int(n)) for F, n in pairs))

    def to_dict(self) -> dict:
        return {"rules": [r.to_dict() for r in self.rules]}


def cl(op: DetClosureOp, X: Iterable[int], universe: Optional[int] = None) -> FrozenSet[int]:
    """
    Least fixed point of rule application above X (forward chaining)

    Args:
        op: Deterministic closure operator
        X: Starting set
        universe: When given, X must lie in [0, universe)

    Returns:
        The closure; rule conclusions outside the universe are kept
    """
    closed = set(X)
    if universe is not None and any(not 0 <= x < universe for x in closed):
        raise BadInput(f"starting set {sorted(closed)} leaves the universe [0, {universe})")

    missing = [len(rule.premise - closed) for rule in op.rules]
    agenda = [rule.conclusion for rule, m in zip(op.rules, missing) if m == 0]
    while agenda:
        x = agenda.pop()
        if x in closed:
            continue
        closed.add(x)
        for idx in op._watch.get(x, ()):
            missing[idx] -= 1
            if missing[idx] == 0:
                agenda.append(op.rules[idx].conclusion)
    return frozenset(closed)


def is_closed(op: DetClosureOp, X: Iterable[int]) -> bool:
    X = frozenset(X)
    return all(rule.conclusion in X for rule in op.rules if rule.premise <= X)


def ce_greedy_max(op: DetClosureOp, pred: FCPredicate, A: Iterable[int],
                  C: Iterable[int] = ()) -> FrozenSet[int]:
    """
    Maximal closed extension of C inside A satisfying pred

    Args:
        op: Deterministic closure operator
        pred: Finite-character predicate
        A: Ambient finite set
        C: Closed seed with pred(C), C inside A

    Returns:
        B closed, C <= B <= A, pred(B), maximal among such sets
    """
    A = frozenset(A)
    C = frozenset(C)
    if not C <= A:
        raise BadSeed(f"seed {sorted(C)} is not inside A")
    if not is_closed(op, C):
        raise BadSeed(f"seed {sorted(C)} is not closed")
    if not pred(C):
        raise BadSeed(f"seed {sorted(C)} fails '{pred.name}'")

    kept = C
    for i in sorted(A - C):
        if i in kept:
            continue
        candidate = cl(op, kept | {i})
        if candidate <= A and pred(candidate):
            kept = candidate
    return kept


# ---- prime-power gadget ----

def first_primes(count: int) -> List[int]:
    primes: List[int] = []
    n = 2
    while len(primes) < count:
        if all(n % p for p in primes if p * p <= n):
            primes.append(n)
        n += 1
    return primes


def prime_gadget(f: Sequence[int], prime_count: int, exp_bound: int) -> DetClosureOp:
    """
    Rules p_i^e <-> p_i^(e+1) on a cyclic ladder over exponents 1..exp_bound,
    plus <{p_i^(n+1)}, 0> whenever f(n) = i

    Args:
        f: Injective prefix
        prime_count: Number of primes p_0, p_1, ...
        exp_bound: Largest exponent kept

    Returns:
        The truncated operator
    """
    if len(set(f)) != len(f):
        raise BadInput(f"prime gadget needs an injective prefix, got {list(f)}")
    if exp_bound < 1:
        raise BadInput("exp_bound must be at least 1")
    primes = first_primes(prime_count)
    rules = []
    for p in primes:
        for e in range(1, exp_bound + 1):
            up = e % exp_bound + 1
            if up != e:
                rules.append(HornRule(frozenset({p ** e}), p ** up))
                rules.append(HornRule(frozenset({p ** up}), p ** e))
    for n, i in enumerate(f):
        if i < prime_count:
            exponent = n % exp_bound + 1
            rules.append(HornRule(frozenset({primes[i] ** exponent}), 0))
    return DetClosureOp(tuple(dict.fromkeys(rules)))


def prime_gadget_universe(prime_count: int, exp_bound: int) -> FrozenSet[int]:
    return frozenset({0} | {p ** e for p in first_primes(prime_count) for e in range(1, exp_bound + 1)})


def prime_gadget_decode(f: Sequence[int], prime_count: int, exp_bound: int) -> FrozenSet[int]:
    """{i : p_i not in B} for the greedy maximal closed B avoiding 0"""
    op = prime_gadget(f, prime_count, exp_bound)
    universe = prime_gadget_universe(prime_count, exp_bound)
    avoid_zero = FCPredicate(lambda X: 0 not in X, max(universe) + 1, "avoid(0)")
    B = ce_greedy_max(op, avoid_zero, universe)
    return frozenset(i for i, p in enumerate(first_primes(prime_count)) if p not in B)


# ---- semilattice ideals ----

@dataclass(frozen=True)
class JoinSemilattice:
    """Finite join-semilattice with a top element"""
    order: FinPoset
    join: Tuple[Tuple[int, ...], ...]
    top: int

    def __post_init__(self):
        n = self.order.size
        if len(self.join) != n or any(len(row) != n for row in self.join):
            raise BadInput("join table must be size x size")
        for a in range(n):
            for b in range(n):
                c = self.join[a][b]
                ubs = [u for u in range(n) if self.order.le(a, u) and self.order.le(b, u)]
                if c not in ubs or any(not self.order.le(c, u) for u in ubs):
                    raise BadInput(f"join({a}, {b}) = {c} is not the least upper bound")
        if any(not self.order.le(p, self.top) for p in range(n)):
            raise BadInput(f"{self.top} is not the top element")

    @classmethod
    def from_poset(cls, order: FinPoset) -> "JoinSemilattice":
        n = order.size
        table = []
        for a in range(n):
            row = []
            for b in range(n):
                ubs = [u for u in range(n) if order.le(a, u) and order.le(b, u)]
                least = [u for u in ubs if all(order.le(u, v) for v in ubs)]
                if not least:
                    raise BadInput(f"elements {a} and {b} have no join")
                row.append(least[0])
            table.append(tuple(row))
        tops = [p for p in range(n) if all(order.le(q, p) for q in range(n))]
        if not tops:
            raise BadInput("poset has no top element")
        return cls(order, tuple(table), tops[0])

    @property
    def size(self) -> int:
        return self.order.size


def semilattice_ideal_op(L: JoinSemilattice) -> Tuple[DetClosureOp, FCPredicate]:
    """Join rules <{a,b}, a v b> and down rules <{a}, b> for b <= a; pred is 'top not in X'"""
    rules = []
    for a in range(L.size):
        for b in range(a, L.size):
            rules.append(HornRule(frozenset({a, b}), L.join[a][b]))
        for b in range(L.size):
            if b != a and L.order.le(b, a):
                rules.append(HornRule(frozenset({a}), b))
    top = L.top
    proper = FCPredicate(lambda X: top not in X, L.size, f"avoid({top})")
    return DetClosureOp(tuple(rules)), proper


def maximal_proper_ideal(L: JoinSemilattice, C: Iterable[int] = ()) -> FrozenSet[int]:
    op, proper = semilattice_ideal_op(L)
    return ce_greedy_max(op, proper, range(L.size), C)
