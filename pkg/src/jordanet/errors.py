"""Error types shared by all jordanet modules.

Every domain error carries a stable machine-readable ``code`` (e.g.
``NOT_REGULAR``) so the CLI can map failures to exit codes and tests can
assert on the exact failure mode.
"""


class JordanetError(Exception):
    """Base class for all domain errors."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class InputError(JordanetError):
    """Malformed user input (bad file, bad polynomial string, bad id)."""


class PreconditionError(JordanetError):
    """A documented operation precondition was violated."""


class InternalCheckError(JordanetError):
    """A self-verification step failed; signals a bug or a field-theoretic
    edge case, never a silently wrong answer."""
