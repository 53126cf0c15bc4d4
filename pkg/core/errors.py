"""
Errors - Domain error hierarchy for ChoiceLab
"""


class ChoiceLabError(Exception):
    """Base class for every domain error raised by the core modules"""

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    @property
    def name(self) -> str:
        """Stable, machine-readable error name"""
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"error": self.name, "message": self.message}


class InputTooLarge(ChoiceLabError):
    """A code, universe or search space exceeds the supported bound"""


class BadIndex(ChoiceLabError):
    """An index does not name a member of the family"""


class BadInput(ChoiceLabError):
    """Malformed domain input (non-injective prefix, bad poset, ...)"""


class EmptyResult(ChoiceLabError):
    """No index qualifies for a construction that needs one"""


class NotAProperty(ChoiceLabError):
    """The subfamily does not have the property it is tested against"""


class DegenerateMaximalFamily(ChoiceLabError):
    """A maximal subfamily contains a singleton member of a range-coding family"""


class NotFiniteCharacter(ChoiceLabError):
    """The predicate fails on the empty set or is not subset-closed"""


class NoMaximalSubset(ChoiceLabError):
    """No removal set makes the predicate true"""


class BadSeed(ChoiceLabError):
    """The starting set of an extension is not admissible"""


class NotMaximal(ChoiceLabError):
    """A set claimed to be maximal has a proper admissible extension"""


class BadDenseOracle(ChoiceLabError):
    """A dense-set oracle returned something other than an extending condition"""


class FiniteMaximalFamily(ChoiceLabError):
    """The extension recipe found no member to continue the good sequence"""


class BadStrategy(ChoiceLabError):
    """A strategy oracle breaks the convergence convention"""


class OracleMismatch(ChoiceLabError):
    """A brute-force oracle disagrees with a produced artifact"""
