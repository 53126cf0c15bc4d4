"""
Poset Commands - Chain climbing, maximal elements and the reversal gadget
"""

from commands.base import CommandGroup
from core import oracles
from core.zorn_posets import (is_chain, maximal_assignment, maximal_elements,
                              zl1_climb, zl2_decode, zl_reversal_decode)
from utils.json_io import parse_poset, sorted_list


class PosetCommands(CommandGroup):
    """poset zl1 | maximals | assign | reversal | zl2"""

    group = "poset"

    def register(self):
        self.add("zl1", self.zl1, self.verify_zl1)
        self.add("maximals", self.maximals, self.verify_maximals)
        self.add("assign", self.assign, self.verify_assign)
        self.add("reversal", self.reversal, self.verify_decode)
        self.add("zl2", self.zl2, self.verify_decode)

    def zl1(self, doc: dict) -> dict:
        climb = zl1_climb(parse_poset(doc["poset"]), doc["start"])
        return {"chain": list(climb.chain), "top": climb.top}

    def maximals(self, doc: dict) -> dict:
        return {"maximals": sorted_list(maximal_elements(parse_poset(doc["poset"])))}

    def assign(self, doc: dict) -> dict:
        assignment = maximal_assignment(parse_poset(doc["poset"]))
        return {"assignment": [assignment[p] for p in sorted(assignment)]}

    def reversal(self, doc: dict) -> dict:
        return {"decoded": sorted_list(zl_reversal_decode(doc["f"], doc["columns"], doc["rows"]))}

    def zl2(self, doc: dict) -> dict:
        return {"decoded": sorted_list(zl2_decode(doc["f"], doc["columns"], doc["rows"]))}

    def verify_zl1(self, doc: dict, result: dict) -> dict:
        pos = parse_poset(doc["poset"])
        return {"maximal": result["top"] in oracles.maximal_elements(pos),
                "chain": is_chain(pos, result["chain"]) and result["chain"][0] == doc["start"]}

    def verify_maximals(self, doc: dict, result: dict) -> dict:
        pos = parse_poset(doc["poset"])
        return {"maximals_match": set(result["maximals"]) == oracles.maximal_elements(pos)}

    def verify_assign(self, doc: dict, result: dict) -> dict:
        pos = parse_poset(doc["poset"])
        maximals = oracles.maximal_elements(pos)
        expected = [min(q for q in maximals if pos.le(p, q)) for p in range(pos.size)]
        return {"assignment_matches": result["assignment"] == expected}

    def verify_decode(self, doc: dict, result: dict) -> dict:
        return {"range_matches": set(result["decoded"]) == oracles.range_of(doc["f"], doc["columns"])}
