"""Shared exception types, mapped to CLI exit codes in sconv.cli."""


class ParseError(ValueError):
    """Malformed set expression or unusable CLI argument."""


class LimitError(ValueError):
    """A resource guard tripped: table too large, membership queried past a
    GeneralSSet bound, a tolerance unreachable at feasible truncations, or a
    value that could overflow a bulk int64 table."""


class ConsistencyError(AssertionError):
    """Two routes that must agree (identity forms, self-checks) disagreed."""
