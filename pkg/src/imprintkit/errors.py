"""Exception hierarchy shared across the imprint engine."""

from __future__ import annotations


class ImprintError(Exception):
    """Base class for every error raised by this package."""


class UsageError(ImprintError):
    """An operation was invoked with arguments outside its contract."""


class ContractError(ImprintError):
    """A precondition or structural invariant was violated by the caller."""


class NotFoundError(ImprintError):
    """A referenced entity does not exist."""


class StateError(ImprintError):
    """An operation is not legal in the entity's current state."""


class ConfigParseError(ImprintError):
    """A configuration document could not be parsed.

    Carries the source position of the failure when known.
    """

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class ResolutionError(ImprintError):
    """Required configuration fields are undefined at every hierarchy level."""

    def __init__(self, missing_paths: list[str]):
        self.missing_paths = list(missing_paths)
        super().__init__(
            "required fields undefined at all levels: " + ", ".join(self.missing_paths)
        )


class VersionError(ImprintError):
    """A version string does not parse as a semantic version."""


class EvaluationError(ImprintError):
    """A pairwise evaluator returned a response that cannot be parsed.

    The raw response is preserved for audit.
    """

    def __init__(self, message: str, *, raw_response: str = ""):
        super().__init__(message)
        self.raw_response = raw_response


class TournamentAbortedError(ImprintError):
    """A tournament stopped mid-run; partial transcripts are preserved."""

    def __init__(self, message: str, *, transcripts: tuple = (), cause: Exception | None = None):
        super().__init__(message)
        self.transcripts = tuple(transcripts)
        self.cause = cause


class GatewayConfigError(ImprintError):
    """A model chain references an adapter that is not registered."""


class GatewayExhaustedError(ImprintError):
    """Every adapter in the fallback chain failed.

    Carries the full attempts list for audit.
    """

    def __init__(self, message: str, *, attempts: tuple = ()):
        super().__init__(message)
        self.attempts = tuple(attempts)


class GateError(ImprintError):
    """A gated action was attempted without the required human approval."""


class TypographyError(ImprintError):
    """A font is unavailable and no substitute is configured."""


class ReviewError(ImprintError):
    """An automated QA review could not be completed."""
