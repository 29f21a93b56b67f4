"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: usage errors exit 1, contract and
numeric failures exit 2, I/O failures exit 3.
"""


class ContractError(ValueError):
    """A caller violated an operation's precondition."""


class DimensionError(ContractError):
    """Operand shapes do not line up."""


class NumericError(RuntimeError):
    """An iteration failed to converge or produced non-finite values."""
