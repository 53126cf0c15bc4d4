"""
JSON I/O - Reading and writing documents, and turning their fields into domain objects
"""

import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional

from core.closure_det import DetClosureOp
from core.closure_nondet import NondetClosureOp, TruncTree
from core.families import Family, PropertyTag, SubfamilyIndex, range_coding_family
from core.genericity import SparseBits
from core.permitting import StagedEnumeration
from core.strategies import StrategyOracle, bundled_strategies
from core.zorn_posets import FinPoset


def load_document(path: Optional[str]) -> dict:
    """Read a JSON document from a file, or from stdin when path is None or '-'"""
    if path in (None, '-'):
        return json.load(sys.stdin)
    with open(path, 'r', encoding='utf-8') as fh:
        return json.load(fh)


def render_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def dump_document(doc: dict, path: Optional[str] = None) -> None:
    """Write a document to a file, or to stdout"""
    text = render_document(doc) + "\n"
    if path in (None, '-'):
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as fh:
        fh.write(text)


def write_jsonl(lines: Iterable[str], path: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as fh:
        for line in lines:
            fh.write(line + "\n")
    return path


# ---- field parsers ----

def parse_family(doc: dict) -> Family:
    """Explicit {"horizon", "members"} or range coding {"f", "count", "horizon"}"""
    if "f" in doc:
        return range_coding_family(doc["f"], doc["count"], doc["horizon"])
    return Family.from_sets(doc["members"], doc["horizon"])


def coding_prefix(doc: dict) -> Optional[List[int]]:
    """The coded sequence when the family document is a range coding"""
    return list(doc["f"]) if "f" in doc else None


def parse_subfamily(indices: Iterable[int]) -> SubfamilyIndex:
    return SubfamilyIndex(tuple(int(j) for j in indices))


def parse_property(text: str) -> PropertyTag:
    return PropertyTag.parse(text)


def parse_poset(doc: dict) -> FinPoset:
    """{"size", "leq": [[a, b], ...]}; the pairs generate the order"""
    return FinPoset.from_relation(doc["size"], doc.get("leq", []))


def parse_det_rules(rules: list) -> DetClosureOp:
    return DetClosureOp.from_pairs((r.get("from", []), r["to"]) for r in rules)


def parse_nondet_rules(rules: list) -> NondetClosureOp:
    return NondetClosureOp.from_pairs((r.get("from", []), r["choices"]) for r in rules)


def parse_trees(doc: dict) -> List[TruncTree]:
    """{"depth", "trees": [nested child lists]}"""
    return [TruncTree.from_nested(nested, doc["depth"]) for nested in doc["trees"]]


def parse_strategies(doc: dict, stages: int) -> List[StrategyOracle]:
    if doc.get("bundled"):
        return bundled_strategies(stages)
    return [StrategyOracle.from_json(s) for s in doc.get("strategies", [])]


def parse_enumeration(pairs: list) -> StagedEnumeration:
    return StagedEnumeration.from_pairs(pairs)


def parse_bits(doc: dict) -> SparseBits:
    return SparseBits(doc["length"], frozenset(doc.get("ones", [])))


def sorted_list(values: Iterable[int]) -> List[int]:
    return sorted(int(v) for v in values)
