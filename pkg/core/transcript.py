"""
Transcript - Append-only event log of a stage construction
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional


@dataclass(frozen=True)
class TranscriptEvent:
    """One line of a construction transcript"""
    stage: int
    substage: Optional[int]
    step: Optional[int]
    event: str
    payload: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


class ConstructionTranscript:
    """Ordered event log; append-only while running, frozen afterwards"""

    def __init__(self, name: str):
        self.name = name
        self._events: List[TranscriptEvent] = []
        self._frozen = False

    def record(self, stage: int, substage: Optional[int], step: Optional[int],
               event: str, **payload: Any) -> TranscriptEvent:
        if self._frozen:
            raise RuntimeError(f"transcript '{self.name}' is frozen")
        entry = TranscriptEvent(stage, substage, step, event, payload)
        self._events.append(entry)
        return entry

    def freeze(self) -> "ConstructionTranscript":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def events(self) -> tuple:
        return tuple(self._events)

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self) -> Iterator[TranscriptEvent]:
        return iter(self._events)

    def of_kind(self, *kinds: str) -> List[TranscriptEvent]:
        return [e for e in self._events if e.event in kinds]

    def lines(self) -> Iterator[str]:
        for entry in self._events:
            yield entry.to_json()

    def digest(self) -> str:
        """SHA-256 over the JSONL rendering"""
        h = hashlib.sha256()
        for line in self.lines():
            h.update(line.encode("utf-8"))
            h.update(b"\n")
        return h.hexdigest()

    def write_jsonl(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            for line in self.lines():
                fh.write(line + "\n")
        return path
