"""Exception types shared across the package.

The CLI maps these onto its exit codes: input problems exit 2, numeric
verdicts that cannot be certified exit 3, broken internal invariants exit 4.
"""


class PencilError(ValueError):
    """Invalid input: bad polynomial, unsupported model, malformed file."""


class ParseError(PencilError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)


class TruncationError(RuntimeError):
    """A Laurent expansion was too short to determine a required residue."""


class InconclusiveError(RuntimeError):
    """A numeric test ended in the no-verdict band; raise precision or samples."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; this is a bug, not bad input."""
