"""
Construct Commands - Stage constructions: adversary, permitting, escape, forcing and genericity
"""

from commands.base import CommandGroup
from core import oracles
from core.adversary import (AdversaryConstruction, adversary_audit,
                            check_transcript_invariants)
from core.encoding import SequenceCoder
from core.families import PropertyKind, PropertyTag, SubfamilyIndex
from core.genericity import (append_oracle, escape_subfamily, forcing_generic,
                             good_sequence, pi01_generic_run, witness_bound)
from core.permitting import PermittingConstruction, permission_violations
from core.strategies import induced_prefix
from utils.json_io import (parse_bits, parse_enumeration, parse_family,
                           parse_strategies, parse_subfamily, sorted_list)

F_PROPERTY = PropertyTag(PropertyKind.F)


class ConstructCommands(CommandGroup):
    """construct adversary | permit | escape | forcing | good-seq | pi01g"""

    group = "construct"

    def register(self):
        self.last_transcript = None
        self.add("adversary", self.adversary, self.verify_adversary)
        self.add("permit", self.permit, self.verify_permit)
        self.add("escape", self.escape, self.verify_escape)
        self.add("forcing", self.forcing, self.verify_has_property)
        self.add("good-seq", self.good_seq, self.verify_good_seq)
        self.add("pi01g", self.pi01g, self.verify_has_property)

    # ---- adversary ----

    def _run_adversary(self, doc: dict):
        stages = self.option(doc, "stages")
        strategies = parse_strategies(doc, stages)
        opts = self.settings["adversary"]
        construction = AdversaryConstruction(strategies, self.logger, opts["follower_cap"],
                                             opts["max_string_length"], opts["requirements"])
        return strategies, construction.run(stages)

    def _audits(self, strategies, result) -> list:
        audits = []
        for e, strategy in enumerate(strategies):
            prefix = induced_prefix(strategy, result.stages)
            total = bool(prefix) and all(j < len(result.family) for j in prefix)
            J = SubfamilyIndex(tuple(j for j in prefix if j < len(result.family)))
            verdict = adversary_audit(result.transcript, result.family, J, e)
            audits.append({"e": e, "name": strategy.name, "total": total, **verdict.to_dict()})
        return audits

    def adversary(self, doc: dict) -> dict:
        strategies, result = self._run_adversary(doc)
        self.last_transcript = result.transcript
        audits = self._audits(strategies, result)
        self.logger.info(f"Adversary finished: {len(result.followers)} followers, digest {result.transcript.digest()[:12]}")
        return {"summary": result.summary(), "audits": audits, "family": result.family.to_dict()}

    def verify_adversary(self, doc: dict, result: dict) -> dict:
        strategies, again = self._run_adversary(doc)
        return {"invariants": not check_transcript_invariants(again),
                "deterministic": again.transcript.digest() == result["summary"]["digest"],
                "audits_agree": self._audits(strategies, again) == result["audits"]}

    # ---- permitting ----

    def permit(self, doc: dict) -> dict:
        fam = parse_family(doc["family"])
        W = parse_enumeration(doc.get("W", []))
        result = PermittingConstruction(fam, W, self.logger).run(self.option(doc, "stages"))
        self.last_transcript = result.transcript
        return {"indices": list(result.subfamily.indices),
                "final": result.history[-1].to_dict(),
                "violations": permission_violations(fam, result, W)}

    def verify_permit(self, doc: dict, result: dict) -> dict:
        fam = parse_family(doc["family"])
        W = parse_enumeration(doc.get("W", []))
        again = PermittingConstruction(fam, W, self.logger).run(self.option(doc, "stages"))
        return {"permission_law": not permission_violations(fam, again, W),
                "deterministic": list(again.subfamily.indices) == result["indices"],
                "has_property": oracles.property_holds(fam, again.subfamily, F_PROPERTY)}

    # ---- escape, forcing, genericity ----

    def escape(self, doc: dict) -> dict:
        fam = parse_family(doc["family"])
        steps = self.option(doc, "steps")
        if doc.get("bound"):
            given = doc["bound"]
            bound = [given[min(s, len(given) - 1)] for s in range(steps)]
        else:
            bound = [witness_bound(fam, s) for s in range(steps)]
        J = escape_subfamily(fam, lambda s: bound[s], steps)
        return {"indices": list(J.indices), "bound": bound}

    def verify_escape(self, doc: dict, result: dict) -> dict:
        fam = parse_family(doc["family"])
        J = parse_subfamily(result["indices"])
        checks = {"has_property": oracles.property_holds(fam, J, F_PROPERTY)}
        if not doc.get("bound") and self.option(doc, "steps") >= 2 * len(fam):
            checks["maximal"] = oracles.maximal_subfamily(fam, J, F_PROPERTY)
        return checks

    def forcing(self, doc: dict) -> dict:
        fam = parse_family(doc["family"])
        dense = [append_oracle(k) for k in doc.get("dense", [])]
        result = forcing_generic(fam, dense, self.option(doc, "steps"))
        return {"indices": list(result.subfamily.indices),
                "conditions": [list(c) for c in result.conditions]}

    def good_seq(self, doc: dict) -> dict:
        seq = good_sequence(parse_bits(doc["bits"]), parse_family(doc["family"]))
        return {"good": [{"position": g.position, "witness": list(g.witness), "bound": g.bound} for g in seq]}

    def verify_good_seq(self, doc: dict, result: dict) -> dict:
        fam = parse_family(doc["family"])
        bits = parse_bits(doc["bits"])
        coder = SequenceCoder()
        well_formed = True
        previous = None
        for g in result["good"]:
            code = coder.decode(g["position"])
            witness, bound = list(code[:-1]), code[-1] if code else None
            listed = [fam[j].as_set() for j in witness]
            common = frozenset.intersection(*listed) if listed else None
            good = (g["position"] in bits.ones and witness == g["witness"] and bound == g["bound"]
                    and (common is None or any(y <= bound for y in common)))
            extends = previous is None or (len(witness) > len(previous) and witness[:len(previous)] == previous)
            well_formed = well_formed and good and extends
            previous = witness
        return {"good_sequence": well_formed}

    def pi01g(self, doc: dict) -> dict:
        fam = parse_family(doc["family"])
        result = pi01_generic_run(fam, doc.get("indices", []), self.option(doc, "steps"))
        return {"indices": list(result.subfamily.indices),
                "bits": {"length": result.bits.length, "ones": sorted_list(result.bits.ones)},
                "met": result.met}

    def verify_has_property(self, doc: dict, result: dict) -> dict:
        fam = parse_family(doc["family"])
        return {"has_property": oracles.property_holds(fam, parse_subfamily(result["indices"]), F_PROPERTY)}
