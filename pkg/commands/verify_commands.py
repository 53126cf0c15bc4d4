"""
Verify Commands - Re-check produced artifacts with the brute-force oracles
"""

from typing import Dict, Type

from commands.base import CommandGroup
from core.errors import BadInput
from core.experiment_manager import ExperimentManager, ExperimentStatus
from utils.schemas import validate_document


class VerifyCommands(CommandGroup):
    """verify oracle <artifact | {"artifacts": [...]}>"""

    group = "verify"

    def __init__(self, settings: dict, logger, groups: Dict[str, Type[CommandGroup]]):
        """
        Initialize the verify group

        Args:
            settings: Merged settings
            logger: Application logger
            groups: Command group classes by group name
        """
        self.groups = groups
        super().__init__(settings, logger)

    def register(self):
        self.add("oracle", self.oracle, self.verify_oracle)

    def verify_one(self, produced: dict) -> dict:
        """
        Run the oracle of one artifact under the options it was produced with

        Args:
            produced: A command's output document, artifact envelope included

        Returns:
            {"command", "verified", <check>: bool, ...}
        """
        artifact = produced["artifact"]
        command = artifact["command"]
        group_name, _, name = command.partition(" ")
        group_cls = self.groups.get(group_name)
        if group_name == self.group:
            group = VerifyCommands(artifact["options"], self.logger, self.groups)
        elif group_cls is not None:
            group = group_cls(artifact["options"], self.logger)
        else:
            group = None
        if group is None or name not in group.handlers:
            raise BadInput(f"cannot verify artifacts of '{command}'")
        validate_document(command, artifact["input"])
        result = {k: v for k, v in produced.items() if k != "artifact"}
        checks = group.check(name, artifact["input"], result)
        self.logger.info(f"Verified {command}: {len(checks)} checks passed")
        return {"command": command, "verified": True, **checks}

    def oracle(self, doc: dict) -> dict:
        if "artifacts" not in doc:
            return self.verify_one(doc)

        manager = ExperimentManager(self.logger, self.settings["jobs"])
        for produced in doc["artifacts"]:
            manager.add_experiment(produced["artifact"]["command"],
                                   lambda produced=produced: self.verify_one(produced))
        results = []
        for task in manager.run_all():
            if task.status is ExperimentStatus.DONE:
                results.append(task.result)
            else:
                results.append({"command": task.label, "verified": False, "message": task.error})
        return {"results": results,
                "summary": manager.get_summary(),
                "verified": all(r["verified"] for r in results)}

    def verify_oracle(self, doc: dict, result: dict) -> dict:
        again = self.oracle(doc)
        again.pop("summary", None)
        expected = {k: v for k, v in result.items() if k != "summary"}
        return {"reproducible": again == expected}
