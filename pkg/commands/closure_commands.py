"""
Closure Commands - Deterministic closure operators, the prime gadget and semilattice ideals
"""

from commands.base import CommandGroup
from core import oracles
from core.closure_det import (JoinSemilattice, ce_greedy_max, cl, is_closed,
                              maximal_proper_ideal, prime_gadget,
                              prime_gadget_decode, semilattice_ideal_op)
from core.finite_character import build_predicate
from utils.json_io import parse_det_rules, parse_poset, sorted_list


class ClosureCommands(CommandGroup):
    """closure cl | closed | ce-max | prime-gadget | semilattice"""

    group = "closure"

    def register(self):
        self.add("cl", self.closure, self.verify_closure)
        self.add("closed", self.closed, self.verify_closed)
        self.add("ce-max", self.ce_max, self.verify_ce_max)
        self.add("prime-gadget", self.prime, self.verify_prime)
        self.add("semilattice", self.semilattice, self.verify_semilattice)

    def closure(self, doc: dict) -> dict:
        return {"closure": sorted_list(cl(parse_det_rules(doc["rules"]), doc["X"], doc.get("universe")))}

    def closed(self, doc: dict) -> dict:
        return {"closed": is_closed(parse_det_rules(doc["rules"]), doc["X"])}

    def ce_max(self, doc: dict) -> dict:
        pred = build_predicate(doc["predicate"], doc["universe"])
        B = ce_greedy_max(parse_det_rules(doc["rules"]), pred, doc["A"], doc.get("C", []))
        self.logger.info(f"CE greedy kept {len(B)} of {len(doc['A'])} elements")
        return {"extension": sorted_list(B)}

    def prime(self, doc: dict) -> dict:
        op = prime_gadget(doc["f"], doc["primes"], doc["exp_bound"])
        decoded = prime_gadget_decode(doc["f"], doc["primes"], doc["exp_bound"])
        return {"rules": op.to_dict()["rules"], "decoded": sorted_list(decoded)}

    def semilattice(self, doc: dict) -> dict:
        L = JoinSemilattice.from_poset(parse_poset(doc["poset"]))
        op, _ = semilattice_ideal_op(L)
        ideal = maximal_proper_ideal(L, doc.get("C", []))
        return {"rules": op.to_dict()["rules"], "top": L.top, "ideal": sorted_list(ideal)}

    def verify_closure(self, doc: dict, result: dict) -> dict:
        naive = oracles.naive_fixpoint(parse_det_rules(doc["rules"]), doc["X"])
        return {"closure_matches": set(result["closure"]) == naive}

    def verify_closed(self, doc: dict, result: dict) -> dict:
        brute = oracles.det_closed(parse_det_rules(doc["rules"]), frozenset(doc["X"]))
        return {"closed_agrees": brute == result["closed"]}

    def verify_ce_max(self, doc: dict, result: dict) -> dict:
        pred = build_predicate(doc["predicate"], doc["universe"])
        return {"maximal": oracles.maximal_det_extension(
            parse_det_rules(doc["rules"]), pred, doc["A"], doc.get("C", []), result["extension"])}

    def verify_prime(self, doc: dict, result: dict) -> dict:
        return {"range_matches": set(result["decoded"]) == oracles.range_of(doc["f"], doc["primes"])}

    def verify_semilattice(self, doc: dict, result: dict) -> dict:
        pos = parse_poset(doc["poset"])
        top = result["top"]
        proper = [I for I in oracles.ideals(pos) if top not in I and frozenset(doc.get("C", [])) <= I]
        return {"maximal": frozenset(result["ideal"]) in oracles.maximal_sets(proper)}
