"""
Permitting - Maximal F-subfamily built under permission from an enumerated set W
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from core.encoding import pair, unpair
from core.errors import BadInput
from core.families import Family, SubfamilyIndex
from core.transcript import ConstructionTranscript


@dataclass(frozen=True)
class StagedEnumeration:
    """A c.e. set W given by the stage at which each element appears"""
    stage_of: Dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "StagedEnumeration":
        stage_of: Dict[int, int] = {}
        for w, s in pairs:
            if w < 0 or s < 0:
                raise BadInput(f"bad enumeration entry ({w}, {s})")
            stage_of[int(w)] = min(int(s), stage_of.get(int(w), int(s)))
        return cls(stage_of)

    def at(self, s: int) -> FrozenSet[int]:
        """W[s]"""
        return frozenset(w for w, t in self.stage_of.items() if t <= s)

    def arrivals(self, s: int) -> FrozenSet[int]:
        """W[s] - W[s-1]"""
        return frozenset(w for w, t in self.stage_of.items() if t == s)

    def to_pairs(self) -> List[List[int]]:
        return [[w, s] for w, s in sorted(self.stage_of.items())]


@dataclass(frozen=True)
class PermitState:
    stage: int
    members: FrozenSet[int]
    enumerated: FrozenSet[int]

    def holders(self) -> Dict[int, int]:
        """member index i -> its copy <i, n>"""
        return {unpair(m)[0]: m for m in self.members}

    def to_dict(self) -> dict:
        return {"stage": self.stage, "copies": sorted([list(unpair(m)) for m in self.members])}


@dataclass
class PermitResult:
    history: List[PermitState]
    subfamily: SubfamilyIndex
    transcript: ConstructionTranscript


class PermittingConstruction:
    """M[s] of copies <i, n>; extractions above l(i, s) need W to change below them"""

    def __init__(self, fam: Family, W: StagedEnumeration, logger):
        """
        Initialize the construction

        Args:
            fam: Family with A_0 nonempty
            W: Staged enumeration granting permissions
            logger: Application logger
        """
        if len(fam) == 0 or len(fam[0]) == 0:
            raise BadInput("permitting needs A_0 to be nonempty")
        self.fam = fam
        self.W = W
        self.logger = logger
        self.transcript = ConstructionTranscript("permitting")

    def _meets(self, i: int, holders: Sequence[int], s: int) -> bool:
        """Some x <= s lies in A_i and in every A_j for the listed j"""
        common = {x for x in self.fam[i] if x <= s}
        for j in holders:
            common &= self.fam[j].as_set()
            if not common:
                return False
        return bool(common)

    def level(self, i: int, holders: Dict[int, int], s: int) -> Optional[int]:
        """l(i, s): greatest k holding a copy with a witness x <= s shared by A_i and all holders j <= k"""
        best = None
        ordered = sorted(holders)
        for pos, k in enumerate(ordered):
            if self._meets(i, ordered[:pos + 1], s):
                best = k
        return best

    def _permitted(self, holders: Dict[int, int], above: int, s: int) -> bool:
        arrivals = self.W.arrivals(s + 1)
        return all(any(w < copy for w in arrivals) for j, copy in holders.items() if j > above)

    def run(self, stages: int) -> PermitResult:
        """
        Run stages 1..stages

        Returns:
            PermitResult with M[0..stages] and the final subfamily
        """
        members = frozenset({pair(0, 0)})
        history = [PermitState(0, members, self.W.at(0))]
        self.transcript.record(0, None, None, "enumerate_copy", index=0, copy=pair(0, 0))
        for s in range(stages):
            holders = {unpair(m)[0]: m for m in members}
            chosen = None
            for i in range(min(s, len(self.fam) - 1) + 1):
                if i in holders:
                    continue
                ell = self.level(i, holders, s)
                if ell is None:
                    continue
                if any(ell < j < i for j in holders):
                    continue
                if not self._permitted(holders, ell, s):
                    continue
                chosen = (i, ell)
                break
            if chosen is not None:
                i, ell = chosen
                removed = sorted(m for j, m in holders.items() if j > ell)
                for m in removed:
                    self.transcript.record(s + 1, None, None, "extract", index=unpair(m)[0], copy=m)
                floor = max(set(members) | set(self.W.arrivals(s + 1)))
                n = 0
                while pair(i, n) <= floor:
                    n += 1
                members = (members - set(removed)) | {pair(i, n)}
                self.transcript.record(s + 1, None, None, "enumerate_copy", index=i, copy=pair(i, n), level=ell)
            history.append(PermitState(s + 1, members, self.W.at(s + 1)))
        self.transcript.freeze()
        final = sorted(unpair(m)[0] for m in members)
        self.logger.info(f"Permitting finished after {stages} stages with {len(final)} members")
        return PermitResult(history, SubfamilyIndex(tuple(final)), self.transcript)


def permitting_run(fam: Family, W: StagedEnumeration, stages: int, logger) -> PermitResult:
    return PermittingConstruction(fam, W, logger).run(stages)


def permission_violations(fam: Family, result: PermitResult, W: StagedEnumeration) -> List[str]:
    """
    Audit a run: extractions need W to change below the extracted copy, new
    copies exceed everything in M[s] and in W's new arrivals, <0,0> persists,
    copies are unique per index, and every M[s] has a nonempty joint intersection
    """
    problems: List[str] = []
    for before, after in zip(result.history, result.history[1:]):
        s = before.stage
        arrivals = W.arrivals(s + 1)
        for m in before.members - after.members:
            if not any(w < m for w in arrivals):
                problems.append(f"copy {m} extracted at stage {s + 1} without permission")
        for m in after.members - before.members:
            if before.members and m <= max(set(before.members) | set(arrivals)):
                problems.append(f"copy {m} added at stage {s + 1} is not fresh")
    for state in result.history:
        if pair(0, 0) not in state.members:
            problems.append(f"<0,0> missing at stage {state.stage}")
        indices = [unpair(m)[0] for m in state.members]
        if len(indices) != len(set(indices)):
            problems.append(f"index with two copies at stage {state.stage}")
        common = None
        for i in indices:
            common = fam[i].as_set() if common is None else common & fam[i].as_set()
        if not common:
            problems.append(f"M[{state.stage}] has an empty joint intersection")
    return problems
