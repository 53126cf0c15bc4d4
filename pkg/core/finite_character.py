"""
Finite Character - Subset-closed predicates, the FCP greedy and the minimal-removal search
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence

from core.encoding import canonical_key, finset_decode, finset_encode
from core.errors import (BadInput, InputTooLarge, NoMaximalSubset,
                         NotFiniteCharacter)

logger = logging.getLogger("ChoiceLab.finite_character")

CHECK_LIMIT = 20


@dataclass(frozen=True)
class FCPredicate:
    """Oracle on finite sets, expected to be true of the empty set and subset-closed"""
    evaluate: Callable[[FrozenSet[int]], bool]
    universe_bound: int
    name: str = "custom"

    def __call__(self, X: Iterable[int]) -> bool:
        return bool(self.evaluate(frozenset(X)))


@dataclass(frozen=True)
class FCVerdict:
    """
    ok, or a violation. For a subset-closure violation, superset satisfies the
    predicate and subset does not; when the empty set itself fails, superset is None.
    """
    ok: bool
    subset: Optional[FrozenSet[int]] = None
    superset: Optional[FrozenSet[int]] = None

    def to_dict(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {
            "ok": False,
            "violation": {
                "subset": sorted(self.subset),
                "superset": None if self.superset is None else sorted(self.superset),
            },
        }


@dataclass(frozen=True)
class RemovalResult:
    kept: FrozenSet[int]
    removed: FrozenSet[int]


def always_true(universe_bound: int) -> FCPredicate:
    return FCPredicate(lambda X: True, universe_bound, "true")


def check_finite_character(pred: FCPredicate, limit: int = CHECK_LIMIT) -> FCVerdict:
    """
    Exhaustively check phi(empty) and subset-closure over the universe

    Subset-closure is checked through single-element removals, which imply it
    for all subset pairs by induction on the difference.
    """
    u = pred.universe_bound
    if u > limit:
        raise InputTooLarge(f"universe bound {u} exceeds the exhaustive limit {limit}")
    if not pred(frozenset()):
        return FCVerdict(False, frozenset(), None)
    table = [pred(finset_decode(code)) for code in range(1 << u)]
    for code, value in enumerate(table):
        if not value:
            continue
        for x in range(u):
            if code >> x & 1 and not table[code & ~(1 << x)]:
                return FCVerdict(False, finset_decode(code & ~(1 << x)), finset_decode(code))
    return FCVerdict(True)


def _require_finite_character(pred: FCPredicate, limit: int) -> None:
    if pred.universe_bound > limit:
        logger.debug(f"Skipping finite-character check for '{pred.name}' (universe {pred.universe_bound})")
        return
    verdict = check_finite_character(pred, limit)
    if not verdict.ok:
        raise NotFiniteCharacter(
            f"predicate '{pred.name}' is not of finite character: "
            f"{sorted(verdict.subset)} vs {verdict.superset and sorted(verdict.superset)}")


def _require_in_universe(pred: FCPredicate, A: Iterable[int]) -> FrozenSet[int]:
    A = frozenset(A)
    outside = [a for a in A if not 0 <= a < pred.universe_bound]
    if outside:
        raise BadInput(f"elements {sorted(outside)} lie outside the universe [0, {pred.universe_bound})")
    return A


def fcp_greedy_max(pred: FCPredicate, A: Iterable[int], verify: bool = True,
                   limit: int = CHECK_LIMIT) -> FrozenSet[int]:
    """
    Greedy maximal subset of A satisfying a finite-character predicate

    Args:
        pred: Finite-character predicate
        A: Finite set to scan in increasing order
        verify: Run the exhaustive finite-character check first
        limit: Universe bound above which the check is skipped

    Returns:
        Maximal B subset of A with pred(B)
    """
    A = _require_in_universe(pred, A)
    if verify:
        _require_finite_character(pred, limit)
    kept: set = set()
    for a in sorted(A):
        if pred(kept | {a}):
            kept.add(a)
    return frozenset(kept)


def sigma1_minimal_removal(pred: FCPredicate, A: Iterable[int]) -> RemovalResult:
    """
    Find a removal set F of least size (then least canonical index) with pred(A - F)

    Returns:
        RemovalResult(kept=A - F, removed=F)
    """
    A = frozenset(A)
    items = sorted(A)
    for size in range(len(items) + 1):
        for F in sorted((frozenset(c) for c in combinations(items, size)), key=canonical_key):
            if pred(A - F):
                return RemovalResult(A - F, F)
    raise NoMaximalSubset(f"no subset of {items} can be removed to satisfy '{pred.name}'")


def sequential_gadget(f: Sequence[int], count: int) -> List[FrozenSet[int]]:
    """
    B_i is the maximal subset of {i} satisfying "i in X implies i in range(f)",
    so B_i = {i} exactly when i is in the range
    """
    if len(set(f)) != len(f):
        raise BadInput(f"sequential gadget needs an injective sequence, got {list(f)}")
    values = frozenset(f)
    out = []
    for i in range(count):
        pred = FCPredicate(lambda X, i=i: i not in X or i in values, i + 1, f"range-witness({i})")
        out.append(fcp_greedy_max(pred, {i}, verify=False))
    return out


def comprehension_gadget(point_pred: Callable[[int], bool], bound: int) -> FrozenSet[int]:
    """Maximal subset of [0, bound) on which point_pred holds everywhere"""
    pred = FCPredicate(lambda X: all(point_pred(x) for x in X), bound, "pointwise")
    return fcp_greedy_max(pred, range(bound), verify=False)


def canonical_table(pred: FCPredicate, limit: int = CHECK_LIMIT) -> FrozenSet[int]:
    """Canonical indices n of the finite sets D_n (inside the universe) satisfying pred"""
    if pred.universe_bound > limit:
        raise InputTooLarge(f"universe bound {pred.universe_bound} exceeds {limit}")
    return frozenset(code for code in range(1 << pred.universe_bound) if pred(finset_decode(code)))


def from_canonical_table(table: FrozenSet[int], universe_bound: int) -> FCPredicate:
    """Predicate 'every finite subset has its canonical index in table'"""

    def evaluate(X: FrozenSet[int]) -> bool:
        code = finset_encode(X)
        sub = code
        while True:
            if sub not in table:
                return False
            if sub == 0:
                return True
            sub = (sub - 1) & code

    return FCPredicate(evaluate, universe_bound, "canonical-table")


# ---- JSON predicate mini-language ----

def _ints(doc: dict, key: str) -> FrozenSet[int]:
    return frozenset(int(v) for v in doc.get(key, []))


def build_predicate(doc: dict, universe_bound: int) -> FCPredicate:
    """
    Build a predicate from its JSON description

    Kinds: true, divisible(by), not_divisible(by), member_of(set), avoid(set),
    max_size(bound), empty_or_contains(element), all_of(of).
    """
    kind = doc.get("kind")
    if kind == "true":
        return always_true(universe_bound)
    if kind == "divisible":
        k = int(doc["by"])
        return FCPredicate(lambda X: all(x % k == 0 for x in X), universe_bound, f"divisible({k})")
    if kind == "not_divisible":
        k = int(doc["by"])
        return FCPredicate(lambda X: all(x % k != 0 for x in X), universe_bound, f"not_divisible({k})")
    if kind == "member_of":
        allowed = _ints(doc, "set")
        return FCPredicate(lambda X: X <= allowed, universe_bound, "member_of")
    if kind == "avoid":
        banned = _ints(doc, "set")
        return FCPredicate(lambda X: not (X & banned), universe_bound, f"avoid({sorted(banned)})")
    if kind == "max_size":
        bound = int(doc["bound"])
        return FCPredicate(lambda X: len(X) <= bound, universe_bound, f"max_size({bound})")
    if kind == "empty_or_contains":
        e = int(doc["element"])
        return FCPredicate(lambda X: not X or e in X, universe_bound, f"empty_or_contains({e})")
    if kind == "all_of":
        parts = [build_predicate(part, universe_bound) for part in doc.get("of", [])]
        return FCPredicate(lambda X: all(p.evaluate(X) for p in parts), universe_bound,
                           "all_of(" + ",".join(p.name for p in parts) + ")")
    raise BadInput(f"unknown predicate kind '{kind}'")
