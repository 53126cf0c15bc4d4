"""
Adversary - Stage construction of a family whose maximal subfamilies defeat every listed strategy
"""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from core.errors import BadInput
from core.families import (Family, PropertyKind, PropertyTag, SubfamilyIndex,
                           has_property)
from core.strategies import StrategyOracle
from core.transcript import ConstructionTranscript

Word = Tuple[int, ...]


@dataclass
class Follower:
    """p_{e,n}: a follower of requirement e attached to a bounded string"""
    index: int
    e: int
    n: int
    kind: int
    string: Word
    born: int
    processed_through: Optional[int] = None


@dataclass
class AdversaryResult:
    family: Family
    transcript: ConstructionTranscript
    targets: Dict[int, int]
    followers: List[Follower]
    stages: int
    requirements: int
    cap_engaged: bool = False

    def summary(self) -> dict:
        return {
            "stages": self.stages,
            "requirements": self.requirements,
            "members": len(self.family),
            "horizon": self.family.horizon,
            "followers": len(self.followers),
            "targets": {str(e): t for e, t in sorted(self.targets.items())},
            "acceptable_stages": len(self.transcript.of_kind("acceptable")),
            "cap_engaged": self.cap_engaged,
            "digest": self.transcript.digest(),
        }


@dataclass(frozen=True)
class AuditVerdict:
    diagonalized: bool
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"diagonalized": self.diagonalized, "evidence": self.evidence}


class AdversaryConstruction:
    """Replays the five-step stage construction against a list of strategies"""

    def __init__(self, strategies: Sequence[StrategyOracle], logger,
                 follower_cap: Optional[int] = None, max_string_length: Optional[int] = None,
                 requirements: Optional[int] = None):
        """
        Initialize the construction

        Args:
            strategies: Opponent strategies, strategy e playing Phi_e
            logger: Application logger
            follower_cap: Most followers born per substage (None for no cap)
            max_string_length: Longest bounded string considered (None for no cap)
            requirements: Number of requirements simulated; missing strategies never converge
        """
        self.logger = logger
        self.strategies = list(strategies)
        for e, strategy in enumerate(self.strategies):
            strategy.validate(e)
        self.follower_cap = follower_cap
        self.max_string_length = max_string_length
        self.requirements = requirements if requirements is not None else max(len(self.strategies), 1)
        if self.requirements < len(self.strategies):
            raise BadInput("fewer requirements than strategies")

        self.transcript = ConstructionTranscript("adversary")
        self.mentioned = 0
        self.odds: Dict[int, Set[int]] = defaultdict(set)
        self.pair_witness: Dict[Tuple[int, int], int] = {}
        self.targets: Dict[int, int] = {}
        self.followers: List[Follower] = []
        self.follower_at: Dict[int, Follower] = {}
        self.followers_of: Dict[int, List[Follower]] = defaultdict(list)
        self.born_for: Dict[Tuple[int, Word], int] = defaultdict(int)
        self.cap_engaged = False
        self._bounded: Dict[int, List[Word]] = {}
        self._prefix_index: Dict[int, Dict[Word, List[Word]]] = {}
        self._new_index: Dict[int, Dict[Word, List[Word]]] = {}

    # ---- state primitives ----

    def _fresh(self, s: int, odd: bool = False) -> int:
        n = max(self.mentioned, s) + 1
        if odd and n % 2 == 0:
            n += 1
        self.mentioned = n
        return n

    def _witness(self, a: int, b: int) -> Optional[int]:
        """Least element of A_a and A_b"""
        if a == b:
            return min([2 * a] + list(self.odds[a]))
        return self.pair_witness.get((min(a, b), max(a, b)))

    def _enumerate_shared(self, a: int, b: int, s: int, e: int, step: int) -> int:
        y = self._fresh(s, odd=True)
        self.odds[a].add(y)
        self.odds[b].add(y)
        key = (min(a, b), max(a, b))
        if key not in self.pair_witness:
            self.pair_witness[key] = y
        self.transcript.record(s, e, step, "enumerate", element=y, members=[a, b])
        return y

    def _ensure_intersect(self, a: int, b: int, s: int, e: int, step: int) -> None:
        if a != b and self._witness(a, b) is None:
            self._enumerate_shared(a, b, s, e, step)

    # ---- bounded strings ----

    def bounded(self, t: int) -> List[Word]:
        """
        Strings bounded by t in lexicographic order: nonempty, length <= t,
        entries <= t, every two entries share an element <= t
        """
        if t in self._bounded:
            return self._bounded[t]
        limit = t if self.max_string_length is None else min(t, self.max_string_length)
        candidates = [i for i in range(t + 1) if self._witness(i, i) <= t]
        adjacent = {a: {b for b in candidates if b == a or (self._witness(a, b) or t + 1) <= t}
                    for a in candidates}
        out: List[Word] = []
        cut = [0]

        def grow(word: Word, options: List[int]) -> None:
            out.append(word)
            if len(word) >= limit:
                if limit < t and options:
                    cut[0] += 1
                return
            for c in options:
                grow(word + (c,), [d for d in options if d in adjacent[c]])

        if limit >= 1:
            for a in candidates:
                grow((a,), sorted(adjacent[a]))
        if cut[0]:
            if not self.cap_engaged:
                self.logger.info(f"Adversary string length cap {limit} engaged at stage {t}")
            self.cap_engaged = True
            self.transcript.record(t, None, 2, "cap_engaged", cap="max_string_length",
                                   limit=limit, truncated=cut[0])
        self._bounded[t] = out
        return out

    def _index(self, words: List[Word]) -> Dict[Word, List[Word]]:
        index: Dict[Word, List[Word]] = defaultdict(list)
        for word in words:
            for k in range(1, len(word) + 1):
                index[word[:k]].append(word)
        return index

    def _prefix_index_at(self, t: int) -> Dict[Word, List[Word]]:
        if t not in self._prefix_index:
            self._prefix_index[t] = self._index(self.bounded(t))
        return self._prefix_index[t]

    def _new_index_at(self, t: int) -> Dict[Word, List[Word]]:
        if t not in self._new_index:
            before = set(self.bounded(t - 1)) if t > 0 else set()
            self._new_index[t] = self._index([w for w in self.bounded(t) if w not in before])
        return self._new_index[t]

    # ---- the five steps ----

    def _step1(self, s: int, e: int) -> None:
        strategy = self.strategies[e] if e < len(self.strategies) else None
        if e not in self.targets:
            self.targets[e] = self._fresh(s)
            self.transcript.record(s, e, 1, "target_defined", e=e, target=self.targets[e])
        elif strategy is not None and strategy.convergence_stage(0) == s:
            old = self.targets[e]
            self.targets[e] = self._fresh(s)
            self.transcript.record(s, e, 1, "target_redefined", e=e, old=old, new=self.targets[e])
            for follower in self.followers_of[e]:
                if follower.kind == 1:
                    follower.kind = 2
                    self.transcript.record(s, e, 1, "follower_flipped", e=e, follower=follower.index)
                follower.processed_through = None

    def _step2(self, s: int, e: int) -> None:
        words = self.bounded(s)
        order = {w: k for k, w in enumerate(words)}
        chosen = sorted(words, key=lambda w: (self.born_for[(e, w)], order[w]))
        if self.follower_cap is not None and len(chosen) > self.follower_cap:
            if not self.cap_engaged:
                self.logger.info(f"Adversary follower cap {self.follower_cap} engaged at stage {s}")
            self.cap_engaged = True
            self.transcript.record(s, e, 2, "cap_engaged", cap="follower_cap", limit=self.follower_cap,
                                   e=e, bounded=len(chosen))
            chosen = sorted(chosen[:self.follower_cap], key=order.get)
        target = self.targets[e]
        for word in chosen:
            p = self._fresh(s)
            follower = Follower(p, e, len(self.followers_of[e]), 1 if target in word else 2, word, s)
            self.followers.append(follower)
            self.followers_of[e].append(follower)
            self.follower_at[p] = follower
            self.born_for[(e, word)] += 1
            self.transcript.record(s, e, 2, "follower_born", e=e, n=follower.n, follower=p,
                                   type=follower.kind, string=list(word))
            for entry in word:
                self._enumerate_shared(p, entry, s, e, 2)

    def _step3(self, s: int, e: int) -> None:
        target = self.targets[e]
        for follower in self.followers_of[e]:
            if follower.born >= s:
                continue
            if follower.processed_through == s - 1:
                extensions = self._new_index_at(s).get(follower.string, ())
            else:
                extensions = self._prefix_index_at(s).get(follower.string, ())
            for word in extensions:
                if follower.kind == 2 and target in word:
                    continue
                for entry in word:
                    self._ensure_intersect(follower.index, entry, s, e, 3)
            follower.processed_through = s

    def _link(self, lower: Word, upper: Word, j: int) -> Optional[int]:
        """
        Least k in [|lower|, |upper|) with upper(k) a follower of j attached to
        a string tau, lower <= tau < upper
        """
        for k in range(len(lower), len(upper)):
            follower = self.follower_at.get(upper[k])
            if follower is None or follower.e != j:
                continue
            tau = follower.string
            if len(lower) <= len(tau) < len(upper) and upper[:len(tau)] == tau:
                return k
        return None

    def viable(self, e: int, x: int) -> Dict[Word, Optional[int]]:
        """Strings viable for e with x converged, mapped to k^sigma (None when undefined)"""
        strategy = self.strategies[e]
        level: Dict[Word, Optional[int]] = {
            w: None for w in self.bounded(strategy.convergence_stage(0)) if len(w) == 1}
        for i in range(x):
            index = self._prefix_index_at(strategy.convergence_stage(i + 1))
            nxt: Dict[Word, Optional[int]] = {}
            for lower in level:
                for upper in index.get(lower, ()):
                    if len(upper) <= len(lower):
                        continue
                    links = [self._link(lower, upper, j) for j in range(i + 1)]
                    if any(k is None for k in links):
                        continue
                    k_e = links[e] if e <= i else None
                    if upper in nxt and k_e is not None:
                        k_e = min(nxt[upper], k_e)
                    nxt[upper] = k_e
            level = nxt
        return level

    def _intersects(self, a: int, b: int) -> bool:
        return self._witness(a, b) is not None

    def _step4(self, s: int, e: int) -> None:
        if e >= len(self.strategies):
            return
        strategy = self.strategies[e]
        x = strategy.largest_converged(s)
        if x is None or strategy.convergence_stage(x) != s:
            return
        viable = self.viable(e, x)
        target = self.targets[e]
        plan: Dict[Word, int] = {}
        acceptable = bool(viable)
        if acceptable:
            forbidden = {w[k] for w, k in viable.items() if k is not None}
            for word, k in viable.items():
                if k is None or self._intersects(word[k], target):
                    acceptable = False
                    break
                choices = [
                    i for i in range(k)
                    if word[i] in self.follower_at and self.follower_at[word[i]].e == e
                    and not self._intersects(word[i], target)
                    and all(word[j] not in forbidden for j in range(i + 1))]
                if not choices:
                    acceptable = False
                    break
                plan[word] = max(choices)
        self.transcript.record(s, e, 4, "acceptable" if acceptable else "not_acceptable",
                               e=e, x=x, viable=len(viable))
        if not acceptable:
            return
        self.logger.debug(f"Stage {s} is {e}-acceptable with {len(viable)} viable strings")
        for word, i in plan.items():
            for j in range(i + 1):
                self._ensure_intersect(word[j], target, s, e, 4)

    # ---- driver ----

    def run(self, stages: int) -> AdversaryResult:
        """
        Run the construction

        Args:
            stages: Number of stages (>= 1)

        Returns:
            AdversaryResult with the truncated family and the frozen transcript
        """
        if stages < 1:
            raise BadInput("the adversary needs at least one stage")
        self.logger.info(f"Adversary run: {stages} stages, {self.requirements} requirements")
        for s in range(stages):
            for e in range(min(s, self.requirements - 1) + 1):
                self._step1(s, e)
                self._step2(s, e)
                self._step3(s, e)
                self._step4(s, e)
            if s % 50 == 0:
                self.logger.debug(f"Adversary stage {s}: {len(self.followers)} followers, counter {self.mentioned}")
        self.transcript.freeze()
        return AdversaryResult(self._family(), self.transcript, dict(self.targets),
                               list(self.followers), stages, self.requirements, self.cap_engaged)

    def _family(self) -> Family:
        count = self.mentioned + 1
        horizon = max(self.mentioned + 1, 2 * count)
        return Family.from_sets(({2 * i} | self.odds.get(i, set()) for i in range(count)), horizon)


def adversary_run(strategies: Sequence[StrategyOracle], stages: int, logger,
                  follower_cap: Optional[int] = None, max_string_length: Optional[int] = None,
                  requirements: Optional[int] = None) -> AdversaryResult:
    return AdversaryConstruction(strategies, logger, follower_cap, max_string_length,
                                 requirements).run(stages)


def final_target(transcript: ConstructionTranscript, e: int) -> Optional[int]:
    target = None
    for event in transcript.of_kind("target_defined", "target_redefined"):
        if event.payload["e"] == e:
            target = event.payload.get("target", event.payload.get("new"))
    return target


def adversary_audit(transcript: ConstructionTranscript, fam: Family, J: SubfamilyIndex,
                    e: int) -> AuditVerdict:
    """
    Diagonalized when J fails Dbar_2 within the horizon, or when t_e is not
    listed and A_{t_e} meets every listed member
    """
    J.validate(fam)
    verdict = has_property(fam, J, PropertyTag(PropertyKind.DBAR, 2))
    if not verdict.holds:
        return AuditVerdict(True, {"reason": "property_failure", "members": list(verdict.members)})
    target = final_target(transcript, e)
    if target is not None and target < len(fam) and len(J) > 0 and target not in J.indices:
        t_set = fam[target].as_set()
        if all(t_set & fam[j].as_set() for j in J):
            return AuditVerdict(True, {"reason": "target_missed", "target": target})
    return AuditVerdict(False, {"reason": "inconclusive"})


def check_transcript_invariants(result: AdversaryResult) -> List[str]:
    """Audit the run; returns a description of every broken invariant"""
    problems: List[str] = []
    last_fresh = 0
    next_n: Dict[int, int] = defaultdict(int)
    redefinitions: Dict[int, int] = defaultdict(int)
    for event in result.transcript:
        p = event.payload
        fresh = None
        if event.event == "target_defined":
            fresh = p["target"]
        elif event.event == "target_redefined":
            fresh = p["new"]
            redefinitions[p["e"]] += 1
        elif event.event == "follower_born":
            fresh = p["follower"]
            if p["n"] != next_n[p["e"]]:
                problems.append(f"follower {p['follower']} of {p['e']} born out of order")
            next_n[p["e"]] += 1
        elif event.event == "enumerate":
            fresh = p["element"]
            if fresh % 2 == 0:
                problems.append(f"even element {fresh} enumerated at stage {event.stage}")
            if event.step not in (2, 3, 4):
                problems.append(f"enumeration of {fresh} cites step {event.step}")
        if fresh is not None:
            if fresh <= last_fresh:
                problems.append(f"fresh number {fresh} does not exceed {last_fresh}")
            last_fresh = fresh
    for e, count in redefinitions.items():
        if count > 1:
            problems.append(f"target of {e} redefined {count} times")
    if not result.family.evens_law_holds():
        problems.append("evens law broken")
    return problems
