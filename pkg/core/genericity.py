"""
Genericity - Escape subfamilies, forcing with dense sets and the good-sequence machinery
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

from core.encoding import SequenceCoder
from core.errors import (BadDenseOracle, BadInput, FiniteMaximalFamily,
                         InputTooLarge)
from core.families import Family, SubfamilyIndex

logger = logging.getLogger("ChoiceLab.genericity")

Condition = Tuple[int, ...]
DenseOracle = Callable[[Family, Condition], Optional[Condition]]

WITNESS_BOUND_LIMIT = 18


def _intersection(fam: Family, indices: Sequence[int]) -> Optional[FrozenSet[int]]:
    """Joint intersection of the listed members; None stands for the empty list (everything)"""
    common = None
    for j in indices:
        common = fam[j].as_set() if common is None else common & fam[j].as_set()
        if not common:
            return frozenset()
    return common


def witness_bound(fam: Family, s: int, limit: int = WITNESS_BOUND_LIMIT) -> int:
    """
    g(s): least y such that every F <= {0..s} whose members intersect has a
    common element <= y
    """
    indices = list(range(min(s + 1, len(fam))))
    if len(indices) > limit:
        raise InputTooLarge(f"witness bound enumerates subsets of at most {limit} indices")
    bound = 0
    for size in range(1, len(indices) + 1):
        for F in combinations(indices, size):
            common = _intersection(fam, F)
            if common:
                bound = max(bound, min(common))
    return bound


def escape_subfamily(fam: Family, f: Callable[[int], int], steps: int) -> SubfamilyIndex:
    """
    J(0) = 0; J(s+1) is the least i <= s not yet listed with some x <= f(s) in
    A_i and every listed member, and 0 otherwise

    Args:
        fam: Family with A_0 nonempty
        f: Witness bound function
        steps: Number of recursion steps

    Returns:
        The prefix J(0..steps)
    """
    if len(fam) == 0 or len(fam[0]) == 0:
        raise BadInput("escape_subfamily needs A_0 to be nonempty")
    J = [0]
    common = fam[0].as_set()
    for s in range(steps):
        bound = f(s)
        chosen = 0
        for i in range(min(s + 1, len(fam))):
            if i in J:
                continue
            if any(x <= bound for x in common & fam[i].as_set()):
                chosen = i
                break
        if chosen:
            common = common & fam[chosen].as_set()
        J.append(chosen)
    return SubfamilyIndex(tuple(J))


# ---- forcing conditions ----

def is_condition(fam: Family, sigma: Condition) -> bool:
    """Nonempty, and some x <= last entry lies in every A_sigma(i) for i < |sigma|-1"""
    if not sigma:
        return False
    body = sigma[:-1]
    if any(not 0 <= j < len(fam) for j in body):
        return False
    common = _intersection(fam, body)
    if common is None:
        return True
    return any(x <= sigma[-1] for x in common)


def extends(stronger: Condition, weaker: Condition) -> bool:
    """stronger <= weaker: the body of stronger extends the body of weaker"""
    if not stronger or not weaker or len(stronger) < len(weaker):
        return False
    return stronger[:len(weaker) - 1] == weaker[:-1]


@dataclass
class ForcingResult:
    subfamily: SubfamilyIndex
    conditions: List[Condition]


def forcing_generic(fam: Family, dense: Sequence[DenseOracle], steps: int) -> ForcingResult:
    """
    Build a descending sequence of conditions alternating dense-set steps with
    maximality steps, starting from the least nonempty member

    Args:
        fam: Nontrivial family
        dense: Dense-set oracles; oracle e is consulted at round e
        steps: Number of rounds

    Returns:
        ForcingResult with J = the body of the final condition
    """
    start = next((i for i in range(len(fam)) if len(fam[i]) > 0), None)
    if start is None:
        raise BadInput("forcing needs a nontrivial family")
    sigma: Condition = (start, fam[start].elements[0])
    conditions = [sigma]
    for e in range(steps):
        if e < len(dense):
            proposal = dense[e](fam, sigma)
            if proposal is not None:
                proposal = tuple(proposal)
                if not is_condition(fam, proposal) or not extends(proposal, sigma):
                    raise BadDenseOracle(f"oracle {e} returned {list(proposal)}, not an extension of {list(sigma)}")
                sigma = proposal
                conditions.append(sigma)
        if e < len(fam) and e not in sigma[:-1]:
            common = _intersection(fam, sigma[:-1] + (e,))
            if common:
                sigma = sigma[:-1] + (e, min(common))
                conditions.append(sigma)
    return ForcingResult(SubfamilyIndex(sigma[:-1]), conditions)


def append_oracle(index: int) -> DenseOracle:
    """Dense-set oracle adjoining a fixed member when the condition allows it"""

    def oracle(fam: Family, sigma: Condition) -> Optional[Condition]:
        if index >= len(fam) or index in sigma[:-1]:
            return None
        common = _intersection(fam, sigma[:-1] + (index,))
        return sigma[:-1] + (index, min(common)) if common else None

    return oracle


# ---- good sequences ----

@dataclass(frozen=True)
class SparseBits:
    """Bit string of a given length, stored as the positions of its ones"""
    length: int
    ones: FrozenSet[int]

    def __post_init__(self):
        if any(not 0 <= x < self.length for x in self.ones):
            raise BadInput("bit position outside the string")

    def with_one(self, x: int) -> "SparseBits":
        return SparseBits(max(self.length, x + 1), self.ones | {x})


@dataclass(frozen=True)
class GoodNumber:
    position: int
    witness: Tuple[int, ...]
    bound: int


def _good(fam: Family, coder: SequenceCoder, x: int) -> Optional[GoodNumber]:
    code = coder.decode(x)
    if not code:
        return None
    tau, b = code[:-1], code[-1]
    if any(j >= len(fam) for j in tau):
        return None
    common = _intersection(fam, tau)
    if common is None or any(y <= b for y in common):
        return GoodNumber(x, tau, b)
    return None


def good_sequence(bits: SparseBits, fam: Family,
                  coder: Optional[SequenceCoder] = None) -> List[GoodNumber]:
    """
    Least good x_0, then repeatedly the least good x beyond the previous one
    whose witness string strictly extends the previous witness
    """
    coder = coder or SequenceCoder()
    out: List[GoodNumber] = []
    for x in sorted(bits.ones):
        good = _good(fam, coder, x)
        if good is None:
            continue
        if not out:
            out.append(good)
            continue
        prev = out[-1].witness
        if len(good.witness) > len(prev) and good.witness[:len(prev)] == prev:
            out.append(good)
    return out


@dataclass
class Pi01Result:
    subfamily: SubfamilyIndex
    bits: SparseBits
    met: List[int]


def _meets(fam: Family, seq: List[GoodNumber], i: int) -> bool:
    """sigma is in D_i: the last witness lists i, or A_i misses its intersection"""
    if not seq:
        return False
    tau = seq[-1].witness
    if i in tau:
        return True
    common = _intersection(fam, tau)
    if common is None:
        return False
    return not (common & fam[i].as_set())


def pi01_generic_run(fam: Family, indices: Sequence[int], steps: int,
                     coder: Optional[SequenceCoder] = None) -> Pi01Result:
    """
    Extend a bit string to meet D_i for each requested i (cycled; the natural
    order when none are given) and read J off the last good witness

    Args:
        fam: Nontrivial family
        indices: Requested dense-set indices
        steps: Number of rounds

    Returns:
        Pi01Result with J, the final bit string and the indices met
    """
    if not fam.is_nontrivial():
        raise FiniteMaximalFamily("the family has no nonempty member")
    coder = coder or SequenceCoder()
    bits = SparseBits(0, frozenset())
    met: List[int] = []
    for t in range(steps):
        i = indices[t % len(indices)] if indices else t
        if i >= len(fam):
            raise BadInput(f"requested index {i} outside family of {len(fam)} members")
        seq = good_sequence(bits, fam, coder)
        if not _meets(fam, seq, i):
            tau = seq[-1].witness if seq else ()
            common = _intersection(fam, tau)
            j = next((j for j in range(i, len(fam))
                      if (fam[j].as_set() if common is None else common & fam[j].as_set())), None)
            if j is None:
                raise FiniteMaximalFamily(f"no member from {i} on meets the running intersection")
            meet = fam[j].as_set() if common is None else common & fam[j].as_set()
            b = min(meet)
            while coder.encode(tau + (j, b)) < bits.length:
                b += 1
            bits = bits.with_one(coder.encode(tau + (j, b)))
        met.append(i)
    seq = good_sequence(bits, fam, coder)
    J = seq[-1].witness if seq else ()
    return Pi01Result(SubfamilyIndex(J), bits, met)
