from __future__ import annotations


class GraphParseError(ValueError):
    """Raised when an edge-list, spec or weighting document is malformed."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class HypothesisError(ValueError):
    """An input does not meet the structural hypotheses a construction needs."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis violated: {hypothesis}" + (f" ({detail})" if detail else ""))


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size or node budget."""


class GenerationError(RuntimeError):
    """A randomized generator ran out of retries."""
