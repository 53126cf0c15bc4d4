"""
NCE Commands - Nondeterministic closure operators, poset ideals and tree paths
"""

from commands.base import CommandGroup
from core import oracles
from core.closure_nondet import (decode_paths, is_nclosed,
                                 is_single_addition_maximal,
                                 max_nclosed_extension, poset_ideal_encoding,
                                 tree_encoding)
from core.finite_character import build_predicate
from utils.json_io import (parse_nondet_rules, parse_poset, parse_trees,
                           sorted_list)


class NceCommands(CommandGroup):
    """nce check | max | ideal-encode | tree-encode | decode-paths"""

    group = "nce"

    def register(self):
        self.add("check", self.check_closed, self.verify_check)
        self.add("max", self.maximal, self.verify_max)
        self.add("ideal-encode", self.ideal_encode, self.verify_ideal)
        self.add("tree-encode", self.tree_encode, self.verify_tree_encode)
        self.add("decode-paths", self.paths, self.verify_paths)

    def _extend(self, op, pred, A, C, mode: str):
        return max_nclosed_extension(op, pred, A, C, mode,
                                     exact_limit=self.settings["nce"]["exact_limit"],
                                     backtrack_limit=self.settings["nce"]["backtrack_limit"])

    def check_closed(self, doc: dict) -> dict:
        return is_nclosed(parse_nondet_rules(doc["rules"]), doc["X"]).to_dict()

    def maximal(self, doc: dict) -> dict:
        op = parse_nondet_rules(doc["rules"])
        pred = build_predicate(doc["predicate"], doc["universe"])
        mode = doc.get("mode", "exact")
        B = self._extend(op, pred, doc["A"], doc.get("C", []), mode)
        return {"extension": sorted_list(B), "mode": mode}

    def ideal_encode(self, doc: dict) -> dict:
        pos = parse_poset(doc["poset"])
        op, pred = poset_ideal_encoding(pos)
        ideal = self._extend(op, pred, range(pos.size), (), "exact")
        return {"rules": op.to_dict()["rules"], "ideal": sorted_list(ideal)}

    def tree_encode(self, doc: dict) -> dict:
        enc = tree_encoding(parse_trees(doc))
        return {
            "A": sorted_list(enc.A),
            "rules": enc.op.to_dict()["rules"],
            "z": enc.z,
            "predicate": {"kind": "avoid", "set": [enc.z]},
            "universe": max(enc.A) + 1,
            "roots": [enc.root(i) for i in range(len(doc["trees"]))],
        }

    def paths(self, doc: dict) -> dict:
        trees = parse_trees(doc)
        return {"paths": sorted_list(decode_paths(doc["B"], trees))}

    def verify_check(self, doc: dict, result: dict) -> dict:
        op = parse_nondet_rules(doc["rules"])
        X = frozenset(doc["X"])
        brute = all(not (r.premise <= X) or bool(X & r.choices) for r in op.rules)
        return {"closed_agrees": brute == result["closed"]}

    def verify_max(self, doc: dict, result: dict) -> dict:
        op = parse_nondet_rules(doc["rules"])
        pred = build_predicate(doc["predicate"], doc["universe"])
        B = result["extension"]
        if result["mode"] == "exact":
            return {"maximal": oracles.maximal_nclosed(op, pred, doc["A"], doc.get("C", []), B)}
        return {"closed": is_nclosed(op, B).closed and pred(B),
                "single_addition_maximal": is_single_addition_maximal(op, pred, doc["A"], B)}

    def verify_ideal(self, doc: dict, result: dict) -> dict:
        pos = parse_poset(doc["poset"])
        maximal_ideals = oracles.maximal_sets(oracles.ideals(pos))
        return {"maximal": frozenset(result["ideal"]) in maximal_ideals}

    def verify_tree_encode(self, doc: dict, result: dict) -> dict:
        trees = parse_trees(doc)
        op = parse_nondet_rules(result["rules"])
        pred = build_predicate(result["predicate"], result["universe"])
        B = self._extend(op, pred, result["A"], (), "greedy")
        return {"paths_match": decode_paths(B, trees) == oracles.reachable_depth(trees)}

    def verify_paths(self, doc: dict, result: dict) -> dict:
        return {"paths_match": set(result["paths"]) == oracles.reachable_depth(parse_trees(doc))}
