"""
Strategies - Declarative opponent strategies for the adversary construction
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from core.errors import BadStrategy


@dataclass(frozen=True)
class StrategyEntry:
    value: int
    stage: int


@dataclass(frozen=True)
class StrategyOracle:
    """
    Step function for one opponent J = Phi_e: argument x converges to `value`
    at `stage`. The domain is an initial segment of arguments.
    """
    name: str
    entries: Tuple[StrategyEntry, ...] = ()

    def query(self, x: int, s: int) -> Optional[int]:
        """Phi_e(x)[s], or None while divergent"""
        if x < len(self.entries) and self.entries[x].stage <= s:
            return self.entries[x].value
        return None

    def convergence_stage(self, x: int) -> Optional[int]:
        """s_{e,x}, the least stage at which argument x has converged"""
        return self.entries[x].stage if x < len(self.entries) else None

    def largest_converged(self, s: int) -> Optional[int]:
        """Largest x with Phi_e(x)[s] converged"""
        x = None
        for k, entry in enumerate(self.entries):
            if entry.stage > s:
                break
            x = k
        return x

    def validate(self, e: int) -> None:
        """Convention: a value y for x at stage s has e, x, y <= s; stages never decrease"""
        previous = -1
        for x, entry in enumerate(self.entries):
            if entry.value < 0:
                raise BadStrategy(f"strategy '{self.name}' answers a negative value at x={x}")
            if entry.stage < max(e, x, entry.value):
                raise BadStrategy(
                    f"strategy '{self.name}' converges at x={x} by stage {entry.stage}, "
                    f"before max(e, x, y) = {max(e, x, entry.value)}")
            if entry.stage < previous:
                raise BadStrategy(f"strategy '{self.name}' answers x={x} before x={x - 1}")
            previous = entry.stage

    @classmethod
    def from_json(cls, doc: dict) -> "StrategyOracle":
        """{"name": ..., "entries": [{"x": 0, "value": 5, "stage": 6}, ...]}"""
        rows = sorted(doc.get("entries", []), key=lambda r: int(r["x"]))
        for k, row in enumerate(rows):
            if int(row["x"]) != k:
                raise BadStrategy(f"strategy '{doc.get('name')}' has a gap in its domain at x={k}")
        return cls(doc.get("name", "strategy"),
                   tuple(StrategyEntry(int(r["value"]), int(r["stage"])) for r in rows))

    def to_json(self) -> dict:
        return {"name": self.name,
                "entries": [{"x": x, "value": e.value, "stage": e.stage}
                            for x, e in enumerate(self.entries)]}


def tabulate(name: str, e: int, values: Sequence[int], stages: int,
             delays: Optional[Sequence[int]] = None) -> StrategyOracle:
    """Build a strategy honouring the convention from a list of values and minimum stages"""
    entries: List[StrategyEntry] = []
    previous = 0
    for x, y in enumerate(values):
        stage = max(previous, e, x, y, delays[x] if delays else 0)
        if stage >= stages:
            break
        entries.append(StrategyEntry(y, stage))
        previous = stage
    return StrategyOracle(name, tuple(entries))


def bundled_strategies(stages: int) -> List[StrategyOracle]:
    """
    The five opponents of the standard adversary suite: an early converger,
    identity, evens, a silent strategy and a slow shifter
    """
    span = range(stages)
    return [
        tabulate("early-odd", 0, [2 * x + 1 for x in span], stages, [3] * stages),
        tabulate("identity", 1, list(span), stages, [x + 1 for x in span]),
        tabulate("evens", 2, [2 * x for x in span], stages),
        StrategyOracle("silent"),
        tabulate("slow-shift", 4, [x + 4 for x in span], stages, [3 * x + 4 for x in span]),
    ]


def induced_prefix(strategy: StrategyOracle, stages: int) -> Tuple[int, ...]:
    """Values converged before the run ends"""
    return tuple(e.value for e in strategy.entries if e.stage < stages)
