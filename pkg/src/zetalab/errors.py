"""Exception hierarchy shared by all zetalab modules.

The CLI maps these onto exit codes: usage/parse errors exit 1, empty
results exit 2, domain errors exit 3, resource guards exit 4.
"""


class ZetalabError(Exception):
    """Base class for all zetalab errors."""


class ParseError(ZetalabError):
    """Malformed objective or constraint text. Carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(ZetalabError):
    """Input outside the mathematical domain of an operation."""


class HypothesisError(DomainError):
    """An exponent pair fails the hypothesis of a threshold formula."""


class PoleError(DomainError):
    """Evaluation requested at a pole of the function."""


class PrecisionError(DomainError):
    """Requested accuracy is unreachable with the given settings."""


class EmptyResultError(ZetalabError):
    """An optimisation or filter produced no candidates."""


class DegenerateFitError(DomainError):
    """A growth fit received non-positive sample values."""


class ResourceLimitError(ZetalabError):
    """Request exceeds the configured desk-scale resource limits."""
