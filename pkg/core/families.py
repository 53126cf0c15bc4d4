"""
Families - Finite-horizon set families and their intersection properties
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from core.errors import (BadIndex, BadInput, DegenerateMaximalFamily,
                         EmptyResult, InputTooLarge, NotAProperty, NotMaximal)
from core.finite_character import FCPredicate

logger = logging.getLogger("ChoiceLab.families")


@dataclass(frozen=True)
class BoundedSet:
    """One member A_i, with every membership fact settled below horizon"""
    elements: Tuple[int, ...]
    horizon: int
    _members: FrozenSet[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        for a, b in zip(elements, elements[1:]):
            if a >= b:
                raise BadInput(f"elements must be strictly increasing: {list(elements)}")
        if elements and (elements[0] < 0 or elements[-1] >= self.horizon):
            raise BadInput(f"elements must lie in [0, {self.horizon})")
        object.__setattr__(self, "_members", frozenset(elements))

    @classmethod
    def of(cls, elements: Iterable[int], horizon: int) -> "BoundedSet":
        """Sorted, deduplicated set; raises BadInput on elements outside [0, horizon)"""
        members = sorted(set(elements))
        outside = [e for e in members if e < 0 or e >= horizon]
        if outside:
            raise BadInput(f"elements {outside} lie outside [0, {horizon})")
        return cls(tuple(members), horizon)

    def __contains__(self, x: int) -> bool:
        return x in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def as_set(self) -> FrozenSet[int]:
        return self._members


@dataclass(frozen=True)
class Family:
    """Indexed sequence of bounded sets sharing one horizon"""
    members: Tuple[BoundedSet, ...]
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for i, member in enumerate(self.members):
            if member.horizon != self.horizon:
                raise BadInput(f"member {i} has horizon {member.horizon}, family has {self.horizon}")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], horizon: int) -> "Family":
        return cls(tuple(BoundedSet.of(s, horizon) for s in sets), horizon)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> BoundedSet:
        if not 0 <= i < len(self.members):
            raise BadIndex(f"index {i} outside family of {len(self.members)} members")
        return self.members[i]

    def is_nontrivial(self) -> bool:
        return any(len(m) > 0 for m in self.members)

    def evens_law_holds(self) -> bool:
        """Evens of A_i are exactly {2i} (below horizon)"""
        for i, member in enumerate(self.members):
            evens = {x for x in member if x % 2 == 0}
            expected = {2 * i} if 2 * i < self.horizon else set()
            if evens != expected:
                return False
        return True

    def to_dict(self) -> dict:
        return {"horizon": self.horizon, "members": [list(m.elements) for m in self.members]}


@dataclass(frozen=True)
class SubfamilyIndex:
    """Index map J defining the subfamily <A_J(0), A_J(1), ...>"""
    indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))

    def validate(self, fam: Family) -> None:
        for j in self.indices:
            if not 0 <= j < len(fam):
                raise BadIndex(f"subfamily index {j} outside family of {len(fam)} members")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def to_dict(self) -> dict:
        return {"indices": list(self.indices)}


class PropertyKind(Enum):
    """Intersection property kinds"""
    D = "D"
    DBAR = "Dbar"
    F = "F"


@dataclass(frozen=True)
class PropertyTag:
    kind: PropertyKind
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind is PropertyKind.F:
            if self.n is not None:
                raise BadInput("the F property takes no size parameter")
        elif self.n is None or self.n < 2:
            raise BadInput(f"{self.kind.value} needs n >= 2, got {self.n}")

    @classmethod
    def parse(cls, text: str) -> "PropertyTag":
        """Parse 'F', 'D2', 'Dbar3', ..."""
        text = text.strip()
        if text == "F":
            return cls(PropertyKind.F)
        for kind in (PropertyKind.DBAR, PropertyKind.D):
            if text.startswith(kind.value) and text[len(kind.value):].isdigit():
                return cls(kind, int(text[len(kind.value):]))
        raise BadInput(f"unknown property tag '{text}'")

    def __str__(self) -> str:
        return "F" if self.kind is PropertyKind.F else f"{self.kind.value}{self.n}"


class VerdictStatus(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    VACUOUS = "vacuous"


@dataclass(frozen=True)
class PropertyVerdict:
    """
    Result of has_property. For fails, `members` lists the offending member
    indices; for holds, `element` is the least element shared by all distinct
    members when there is one.
    """
    status: VerdictStatus
    members: Tuple[int, ...] = ()
    element: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.status is not VerdictStatus.FAILS

    def to_dict(self) -> dict:
        out = {"status": self.status.value}
        if self.members:
            out["members"] = list(self.members)
        if self.element is not None:
            out["element"] = self.element
        return out


@dataclass(frozen=True)
class MaximalityVerdict:
    maximal: bool
    extension: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"maximal": self.maximal}
        if self.extension is not None:
            out["extendable"] = self.extension
        return out


@dataclass(frozen=True)
class DecodeResult:
    """Decoded indices plus the exceptional indices of the D_n complement rule"""
    decoded: FrozenSet[int]
    exceptions: FrozenSet[int] = frozenset()

    @property
    def range_estimate(self) -> FrozenSet[int]:
        return self.decoded | self.exceptions

    def to_dict(self) -> dict:
        return {"decoded": sorted(self.decoded), "exceptions": sorted(self.exceptions)}


def sets_distinct(fam: Family, i: int, j: int) -> bool:
    """True iff A_i and A_j differ extensionally"""
    return fam[i].elements != fam[j].elements


def distinct_members(fam: Family, sub: SubfamilyIndex) -> List[int]:
    """First index of every extensionally distinct member of sub, in listing order"""
    sub.validate(fam)
    seen: Dict[Tuple[int, ...], int] = {}
    for j in sub:
        seen.setdefault(fam[j].elements, j)
    return list(seen.values())


def _joint(fam: Family, indices: Sequence[int]) -> FrozenSet[int]:
    result = fam[indices[0]].as_set()
    for j in indices[1:]:
        result = result & fam[j].as_set()
        if not result:
            break
    return result


def has_property(fam: Family, sub: SubfamilyIndex, p: PropertyTag) -> PropertyVerdict:
    """
    Test an intersection property on the distinct members of a subfamily

    Args:
        fam: Parent family
        sub: Subfamily index map
        p: Property tag (D_n, Dbar_n or F)

    Returns:
        PropertyVerdict (holds, vacuous, or fails with offending members)
    """
    distinct = distinct_members(fam, sub)
    need = 2 if p.kind is PropertyKind.F else p.n
    if len(distinct) < need:
        return PropertyVerdict(VerdictStatus.VACUOUS)

    if p.kind is PropertyKind.D:
        holders: Dict[int, List[int]] = {}
        for j in distinct:
            for x in fam[j]:
                holders.setdefault(x, []).append(j)
        for x in sorted(holders):
            if len(holders[x]) >= p.n:
                return PropertyVerdict(VerdictStatus.FAILS, tuple(holders[x][:p.n]))
        return PropertyVerdict(VerdictStatus.HOLDS)

    if p.kind is PropertyKind.DBAR:
        for combo in combinations(distinct, p.n):
            if not _joint(fam, combo):
                return PropertyVerdict(VerdictStatus.FAILS, combo)
    else:
        # the joint intersection of all distinct members is the smallest one
        if not _joint(fam, distinct):
            witness = list(distinct)
            for j in list(witness):
                trial = [k for k in witness if k != j]
                if len(trial) >= 2 and not _joint(fam, trial):
                    witness = trial
            return PropertyVerdict(VerdictStatus.FAILS, tuple(witness))

    common = _joint(fam, distinct)
    return PropertyVerdict(VerdictStatus.HOLDS, element=min(common) if common else None)


def greedy_max_subfamily(fam: Family, p: PropertyTag, start: int = 0,
                         max_picks: Optional[int] = None) -> Tuple[SubfamilyIndex, bool]:
    """
    Greedy maximal subfamily: least qualifying j >= start, then least later j
    that keeps the property

    Args:
        fam: Family to search
        p: Property tag
        start: First index considered
        max_picks: Optional cap on the number of picks

    Returns:
        (subfamily, exhausted) where exhausted means the whole index range was scanned
    """
    if not fam.is_nontrivial():
        raise EmptyResult("greedy_max_subfamily needs a nontrivial family")
    if not 0 <= start < len(fam):
        raise BadIndex(f"start index {start} outside family of {len(fam)} members")

    picked: List[int] = []
    present = set()
    for j in range(start, len(fam)):
        if max_picks is not None and len(picked) >= max_picks:
            logger.debug(f"Greedy stopped at pick cap {max_picks}")
            return SubfamilyIndex(tuple(picked)), False
        # an extensionally equal member adds nothing to the subfamily
        if fam[j].elements in present:
            continue
        if has_property(fam, SubfamilyIndex(tuple(picked + [j])), p).holds:
            picked.append(j)
            present.add(fam[j].elements)

    if not picked:
        raise EmptyResult(f"no index from {start} qualifies for {p}")
    return SubfamilyIndex(tuple(picked)), True


def is_maximal(fam: Family, sub: SubfamilyIndex, p: PropertyTag) -> MaximalityVerdict:
    """Single-addition maximality test (exact for subfamily-closed properties)"""
    if not has_property(fam, sub, p).holds:
        raise NotAProperty(f"subfamily {list(sub.indices)} does not have {p}")
    present = {fam[j].elements for j in sub}
    for k in range(len(fam)):
        if fam[k].elements in present:
            continue
        if has_property(fam, SubfamilyIndex(sub.indices + (k,)), p).holds:
            return MaximalityVerdict(False, k)
    return MaximalityVerdict(True)


def tilde_transform(fam: Family, n: int, stages: int, exact_size: bool = False,
                    max_indices: int = 16) -> Family:
    """
    Staged transform turning a family without a maximal F-subfamily into one
    whose maximal Dbar_n subfamilies are computed from it

    Args:
        fam: Source family
        n: Property size (n >= 2)
        stages: Number of stages to run
        exact_size: Only consider sets F of size exactly n+1
        max_indices: Bound on the index range examined per stage

    Returns:
        The truncated transformed family
    """
    if n < 2:
        raise BadInput(f"tilde_transform needs n >= 2, got {n}")
    if min(stages, len(fam)) > max_indices:
        raise InputTooLarge(f"tilde_transform examines at most {max_indices} indices per stage")

    shared_odds: Dict[int, List[int]] = {i: [] for i in range(len(fam))}
    next_odd = 1
    for s in range(stages):
        indices = list(range(min(s + 1, len(fam))))
        sizes = [n + 1] if exact_size else range(n + 1, len(indices) + 1)
        qualifying = []
        for size in sizes:
            for F in combinations(indices, size):
                if all(any(x <= s for x in _joint(fam, sub)) for sub in combinations(F, n)):
                    qualifying.append(F)
        qualifying.sort(key=lambda F: tuple(sorted(F, reverse=True)))
        for F in qualifying:
            for i in F:
                shared_odds[i].append(next_odd)
            next_odd += 2
        if qualifying:
            logger.debug(f"Tilde stage {s}: {len(qualifying)} sets fired")

    horizon = max(next_odd, 2 * len(fam), 1)
    return Family.from_sets(([2 * i] + shared_odds[i] for i in range(len(fam))), horizon)


def range_coding_family(f: Sequence[int], member_count: int, horizon: int) -> Family:
    """
    A_i = {2i} together with every odd 2x+1 such that f(y) = i for some y <= x

    Args:
        f: Injective finite sequence
        member_count: Number of members to build
        horizon: Shared horizon

    Returns:
        The truncated coding family
    """
    if len(set(f)) != len(f):
        raise BadInput(f"range coding needs an injective sequence, got {list(f)}")
    if horizon <= 2 * (member_count - 1):
        raise BadInput(f"horizon {horizon} too small for the even tags of {member_count} members")
    first_hit = {value: y for y, value in enumerate(f)}
    sets = []
    for i in range(member_count):
        members = [2 * i]
        if i in first_hit:
            members += [2 * x + 1 for x in range(first_hit[i], horizon // 2)]
        sets.append(members)
    return Family.from_sets(sets, horizon)


def decode_range(fam: Family, sub: SubfamilyIndex, p: PropertyTag) -> DecodeResult:
    """
    Read range(f) back from a maximal subfamily of a range-coding family

    Args:
        fam: Range-coding family
        sub: Maximal subfamily for p
        p: Property tag

    Returns:
        DecodeResult; for D_n the exceptions hold range members found in sub
    """
    if not is_maximal(fam, sub, p).maximal:
        raise NotMaximal(f"subfamily {list(sub.indices)} is not maximal for {p}")

    if p.kind is PropertyKind.D:
        tags = {2 * i for i in range(len(fam))}
        listed = set()
        exceptions = set()
        for j in sub:
            listed |= fam[j].as_set() & tags
            if len(fam[j]) > 1:
                exceptions.add(j)
        decoded = frozenset(i for i in range(len(fam)) if 2 * i not in listed)
        return DecodeResult(decoded, frozenset(exceptions))

    for j in sub:
        if len(fam[j]) <= 1:
            raise DegenerateMaximalFamily(
                f"member {j} of the maximal subfamily is a singleton; choose a start index past it")
    decoded = {x // 2 for j in sub for x in fam[j] if x % 2 == 0}
    return DecodeResult(frozenset(decoded))


def pairwise_intersection_predicate(fam: Family) -> FCPredicate:
    """Finite-character predicate on member indices: every two listed members intersect"""

    def evaluate(X: FrozenSet[int]) -> bool:
        items = sorted(X)
        return all(fam[i].as_set() & fam[j].as_set() for i, j in combinations_with_replacement(items, 2))

    return FCPredicate(evaluate, len(fam), "pairwise-intersecting")
