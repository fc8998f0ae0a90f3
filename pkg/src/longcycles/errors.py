"""Error taxonomy shared by every module.

Three failure classes, kept distinct on purpose: bad input is the caller's
fault, a blown budget means the instance is beyond desk scale, and a claim
violation is a bug in this package (an internal guarantee did not hold).
"""

from __future__ import annotations


class GraphInputError(ValueError):
    """Malformed input or a violated operation precondition."""


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of nodes or time before reaching an answer.

    This is a first-class outcome, never to be conflated with "absent".
    """

    def __init__(self, nodes: int, message: str = ""):
        self.nodes = nodes
        super().__init__(message or f"search budget exhausted after {nodes} expansions")


class ClaimViolation(AssertionError):
    """An internal structural guarantee failed; names the violated check."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)
