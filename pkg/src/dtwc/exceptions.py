"""Exception classes for dtwc errors."""


class DTWCError(Exception):
    """Base exception for every error raised by dtwc.

    Callers that only care whether a computation succeeded can catch this
    single type; the subclasses distinguish why it did not.
    """


class DTWCInputError(DTWCError):
    """Exception raised for malformed or inconsistent input.

    Raised on rank mismatches, classes outside the positive cone, series with
    the wrong constant term, tables missing a divisor class, contexts missing
    a framing functional, unknown catalog names, non-prime-power field sizes,
    and formulas whose preconditions (such as a vanishing Euler form) fail.
    """


class DTWCBudgetError(DTWCError):
    """Exception raised when an explicit enumeration cap would be exceeded.

    Raised when a tree, composition or decomposition enumeration passes its
    configured bound, and when a finite-field enumeration would touch more
    states than the oracle budget allows. Results are never approximated.
    """


class DTWCVerificationError(DTWCError):
    """Exception raised when an internal cross-check fails.

    Raised when oracle counts are not divisible by the group order, when
    point counts do not fit an integer polynomial of the expected degree, or
    when a catalog verification finds a mismatch and the caller asked for a
    hard failure.
    """
