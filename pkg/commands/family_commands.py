"""
Family Commands - Intersection properties, greedy maximal subfamilies and range coding
"""

from commands.base import CommandGroup
from core import oracles
from core.families import (decode_range, greedy_max_subfamily, has_property,
                           is_maximal, range_coding_family, tilde_transform)
from core.instances import make_rng, random_family
from utils.json_io import (coding_prefix, parse_family, parse_property,
                           parse_subfamily)


class FamilyCommands(CommandGroup):
    """family check | greedy | maximal | tilde | encode-range | decode-range | random"""

    group = "family"

    def register(self):
        self.add("check", self.check_property, self.verify_check)
        self.add("greedy", self.greedy, self.verify_greedy)
        self.add("maximal", self.maximal, self.verify_maximal)
        self.add("tilde", self.tilde, self.verify_tilde)
        self.add("encode-range", self.encode_range, self.verify_encode_range)
        self.add("decode-range", self.decode_range, self.verify_decode_range)
        self.add("random", self.random, self.verify_random)

    def _inputs(self, doc: dict):
        fam = parse_family(doc["family"])
        p = parse_property(doc["property"])
        return fam, p

    # ---- handlers ----

    def check_property(self, doc: dict) -> dict:
        fam, p = self._inputs(doc)
        sub = parse_subfamily(doc["subfamily"])
        return {"verdict": has_property(fam, sub, p).to_dict()}

    def greedy(self, doc: dict) -> dict:
        fam, p = self._inputs(doc)
        sub, exhausted = greedy_max_subfamily(fam, p, doc.get("start", 0))
        self.logger.info(f"Greedy {p} subfamily picked {len(sub)} members")
        return {"indices": list(sub.indices), "exhausted": exhausted}

    def maximal(self, doc: dict) -> dict:
        fam, p = self._inputs(doc)
        return is_maximal(fam, parse_subfamily(doc["subfamily"]), p).to_dict()

    def tilde(self, doc: dict) -> dict:
        fam = parse_family(doc["family"])
        out = tilde_transform(fam, doc["n"], self.option(doc, "stages"),
                              exact_size=doc.get("exact_size", False),
                              max_indices=self.settings["tilde"]["max_indices"])
        return {"family": out.to_dict()}

    def encode_range(self, doc: dict) -> dict:
        fam = range_coding_family(doc["f"], doc["count"], self.option(doc, "horizon"))
        return {"family": fam.to_dict()}

    def decode_range(self, doc: dict) -> dict:
        fam, p = self._inputs(doc)
        return decode_range(fam, parse_subfamily(doc["subfamily"]), p).to_dict()

    def random(self, doc: dict) -> dict:
        rng = make_rng(self.settings["seed"])
        members = doc.get("members", rng.randint(2, 8))
        fam = random_family(rng, members, self.option(doc, "horizon"), doc.get("density", 0.3))
        return {"family": fam.to_dict()}

    # ---- oracles ----

    def verify_check(self, doc: dict, result: dict) -> dict:
        fam, p = self._inputs(doc)
        holds = oracles.property_holds(fam, parse_subfamily(doc["subfamily"]), p)
        return {"property_agrees": holds == (result["verdict"]["status"] != "fails")}

    def verify_greedy(self, doc: dict, result: dict) -> dict:
        fam, p = self._inputs(doc)
        return {"maximal": oracles.maximal_subfamily(fam, parse_subfamily(result["indices"]), p)}

    def verify_maximal(self, doc: dict, result: dict) -> dict:
        fam, p = self._inputs(doc)
        brute = oracles.maximal_subfamily(fam, parse_subfamily(doc["subfamily"]), p)
        return {"maximality_agrees": brute == result["maximal"]}

    def verify_tilde(self, doc: dict, result: dict) -> dict:
        fam = parse_family(doc["family"])
        out = parse_family(result["family"])
        expected = oracles.tilde_members(fam, doc["n"], self.option(doc, "stages"),
                                         doc.get("exact_size", False))
        return {"evens_law": out.evens_law_holds(), "size_kept": len(out) == len(fam),
                "recomputed": [m.as_set() for m in out.members] == expected}

    def verify_encode_range(self, doc: dict, result: dict) -> dict:
        out = parse_family(result["family"])
        return {"members_match": all(
            out[i].as_set() == oracles.coding_member(doc["f"], i, out.horizon) for i in range(len(out)))}

    def verify_decode_range(self, doc: dict, result: dict) -> dict:
        fam, p = self._inputs(doc)
        checks = {"maximal": oracles.maximal_subfamily(fam, parse_subfamily(doc["subfamily"]), p)}
        f = coding_prefix(doc["family"])
        if f is not None:
            estimate = set(result["decoded"]) | set(result["exceptions"])
            checks["range_matches"] = estimate == oracles.range_of(f, len(fam))
        return checks

    def verify_random(self, doc: dict, result: dict) -> dict:
        again = self.random(doc)
        return {"reproducible": again["family"] == result["family"]}
