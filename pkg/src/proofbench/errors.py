class ProofbenchError(Exception):
    """Base class for input errors (CLI exit code 2)."""


class ParseError(ProofbenchError):
    def __init__(self, message: str, line: int = 1, column: int = 1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")
        self.message = message


class FormatError(ProofbenchError):
    """Malformed proof or definition document."""


class ProofReferenceError(ProofbenchError):
    """Unknown rule name or undefined hypothesis label."""


class DefinitionError(ProofbenchError):
    """Connective definition violates arity or metavariable constraints."""


class UnsupportedError(ProofbenchError):
    """Operation declined for this input (e.g. a rule the engine cannot handle)."""


class ResourceLimit(ProofbenchError):
    """Configured step ceiling exceeded."""
