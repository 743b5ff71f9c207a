"""Exception types shared across the package.

Four failure modes recur everywhere, so they get distinct classes:
out-of-range indices, violated call contracts, blown resource budgets,
and "this operation does not apply here" signals that callers may want
to catch as control flow (e.g. a certificate rule with nothing to do).
"""


class WordRangeError(IndexError):
    """An index or interval falls outside the word it refers to."""


class ContractError(ValueError):
    """A precondition on the inputs was violated."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured resource budget.

    The message always names the limit that was hit, so callers can
    re-run with an explicit larger budget if they really mean it.
    """


class NotApplicable(Exception):
    """Signal that an operation has no work to do on this input.

    Distinct from ContractError: the input is legal, there is just no
    result of the requested kind (e.g. no duplicated letter anywhere).
    """
