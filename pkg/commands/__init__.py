"""
Command groups of the ChoiceLab command line
"""

from commands.closure_commands import ClosureCommands
from commands.construct_commands import ConstructCommands
from commands.family_commands import FamilyCommands
from commands.fcp_commands import FcpCommands
from commands.nce_commands import NceCommands
from commands.poset_commands import PosetCommands
from commands.verify_commands import VerifyCommands

GROUPS = {
    cls.group: cls
    for cls in (FamilyCommands, PosetCommands, FcpCommands, ClosureCommands,
                NceCommands, ConstructCommands)
}


def build_groups(settings: dict, logger) -> dict:
    """One instance of every command group, verify included"""
    groups = {name: cls(settings, logger) for name, cls in GROUPS.items()}
    groups[VerifyCommands.group] = VerifyCommands(settings, logger, GROUPS)
    return groups
