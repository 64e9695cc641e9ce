"""Exception hierarchy shared across the package.

The three classes mirror the CLI exit codes: parse failures (2), structural
inconsistencies between group, subgroup, and graph data (3), and numerical
failures such as residual or rank checks not meeting tolerance (4).
"""


class ParseError(ValueError):
    """Raised when textual input (cycle strings, instance JSON) is malformed."""


class ConsistencyError(ValueError):
    """Raised when inputs are individually valid but mutually inconsistent."""


class NumericalError(RuntimeError):
    """Raised when a numerical invariant fails beyond its tolerance."""
