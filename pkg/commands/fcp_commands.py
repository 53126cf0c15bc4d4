"""
FCP Commands - Finite-character predicates and their maximal subsets
"""

from commands.base import CommandGroup
from core import oracles
from core.finite_character import (build_predicate, check_finite_character,
                                   fcp_greedy_max, sequential_gadget,
                                   sigma1_minimal_removal)
from utils.json_io import sorted_list


class FcpCommands(CommandGroup):
    """fcp check | max | sigma1 | sequential"""

    group = "fcp"

    def register(self):
        self.add("check", self.check_fc, self.verify_check)
        self.add("max", self.greedy_max, self.verify_max)
        self.add("sigma1", self.sigma1, self.verify_sigma1)
        self.add("sequential", self.sequential, self.verify_sequential)

    def _pred(self, doc: dict):
        return build_predicate(doc["predicate"], doc["universe"])

    def check_fc(self, doc: dict) -> dict:
        return check_finite_character(self._pred(doc), self.settings["fcp"]["check_limit"]).to_dict()

    def greedy_max(self, doc: dict) -> dict:
        B = fcp_greedy_max(self._pred(doc), doc["A"], limit=self.settings["fcp"]["check_limit"])
        return {"subset": sorted_list(B)}

    def sigma1(self, doc: dict) -> dict:
        removal = sigma1_minimal_removal(self._pred(doc), doc["A"])
        return {"kept": sorted_list(removal.kept), "removed": sorted_list(removal.removed)}

    def sequential(self, doc: dict) -> dict:
        return {"sets": [sorted_list(B) for B in sequential_gadget(doc["f"], doc["count"])]}

    def verify_check(self, doc: dict, result: dict) -> dict:
        return {"verdict_agrees": oracles.finite_character(self._pred(doc), doc["universe"]) == result["ok"]}

    def verify_max(self, doc: dict, result: dict) -> dict:
        return {"maximal": oracles.maximal_fcp_subset(self._pred(doc), doc["A"], result["subset"])}

    def verify_sigma1(self, doc: dict, result: dict) -> dict:
        pred = self._pred(doc)
        return {"satisfies": pred(result["kept"]),
                "minimal": len(result["removed"]) == oracles.least_removal_size(pred, doc["A"])}

    def verify_sequential(self, doc: dict, result: dict) -> dict:
        values = oracles.range_of(doc["f"], doc["count"])
        return {"range_matches": {i for i, B in enumerate(result["sets"]) if B == [i]} == values}
