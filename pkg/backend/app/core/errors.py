"""
Exception hierarchy shared by every lab module.
"""


class LabError(Exception):
    """Base class for all lab errors."""


class ParameterError(LabError, ValueError):
    """Bad parameters: width mismatch, guardrail breach, point outside a block."""


class UnsupportedRegimeError(ParameterError):
    """The construction is only defined for r <= c."""


class ConfigurationError(LabError):
    """An interface or experiment was used before it was fully wired."""


class BudgetViolation(LabError):
    """A query or advice budget was exceeded; the trial is aborted."""


class ContractError(LabError):
    """A component broke its declared contract (e.g. a simulator that keeps state)."""


class ProtocolError(LabError):
    """Security-game messages were sent out of order."""


class SearchFailure(LabError):
    """No pair of shared-randomness values brackets the target acceptance probability."""
