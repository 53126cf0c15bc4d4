"""
Command Group - Shared plumbing of the command modules
"""

import copy
from typing import Callable, Dict, Optional

from core.errors import OracleMismatch

Handler = Callable[[dict], dict]
Checker = Callable[[dict, dict], Dict[str, bool]]


class CommandGroup:
    """
    A group of related commands ("family", "poset", ...). Each command has a
    handler (input document -> result document) and a checker that re-derives
    the result with a brute-force oracle.
    """

    group = ""

    def __init__(self, settings: dict, logger):
        """
        Initialize the command group

        Args:
            settings: Merged settings (defaults, settings file, flags)
            logger: Application logger
        """
        self.settings = settings
        self.logger = logger
        self.handlers: Dict[str, Handler] = {}
        self.checkers: Dict[str, Checker] = {}
        self.register()

    def register(self):
        raise NotImplementedError

    def add(self, name: str, handler: Handler, checker: Checker):
        self.handlers[name] = handler
        self.checkers[name] = checker

    def option(self, doc: dict, key: str, section: Optional[str] = None):
        """Document field when present, else the (possibly nested) setting"""
        if key in doc:
            return doc[key]
        return self.settings[section][key] if section else self.settings[key]

    def run(self, name: str, doc: dict) -> dict:
        self.logger.info(f"Running {self.group} {name}")
        result = self.handlers[name](doc)
        result["artifact"] = {
            "command": f"{self.group} {name}",
            "input": copy.deepcopy(doc),
            "options": copy.deepcopy(self.settings),
        }
        return result

    def check(self, name: str, doc: dict, result: dict) -> Dict[str, bool]:
        """
        Run the oracle for a produced result

        Raises:
            OracleMismatch: naming every failed check
        """
        checks = self.checkers[name](doc, result)
        failed = sorted(k for k, ok in checks.items() if not ok)
        if failed:
            raise OracleMismatch(f"{self.group} {name}: oracle disagrees on {', '.join(failed)}")
        return checks
