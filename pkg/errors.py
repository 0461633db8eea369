"""
Exception hierarchy shared by the geometry, code, recovery and decoding packages.
"""


class RMError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(RMError, ValueError):
    """Invalid parameters: ranges, dimensions, lengths or malformed input."""


class GuardExceededError(RMError):
    """A configured size guard refused an exponential computation."""


class RecoveryValidityError(RMError):
    """A constructed recovery set does not sum to its target symbol."""


class ChannelContractError(RMError):
    """Received word violates the channel contract of the requested decoder."""
