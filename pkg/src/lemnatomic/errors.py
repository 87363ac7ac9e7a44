"""Shared exception taxonomy.

Exit-code mapping used by the CLI: InputError -> 1, VerificationError -> 2,
PrecisionError and its subclasses -> 3. InternalInconsistency signals a bug
in this package (an invariant that must hold by construction was violated)
and is never caught by the CLI.
"""


class LemnatomicError(Exception):
    """Base class for all package errors."""


class InputError(LemnatomicError, ValueError):
    """Malformed or out-of-domain user input."""


class ParseError(InputError):
    """Malformed literal; carries the offending position when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class NotOdd(InputError):
    """Operand divisible by 1+i where an odd Gaussian integer is required."""


class NotCoprime(InputError):
    """Operand shares a nonunit factor with the modulus."""


class NotDivisible(LemnatomicError):
    """Exact polynomial division left a nonzero remainder (kept for diagnostics)."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class VerificationError(LemnatomicError):
    """A property the theory predicts was found violated by computation."""


class PrecisionError(LemnatomicError):
    """Base class for arbitrary-precision failures after escalation."""


class PrecisionLoss(PrecisionError):
    """Working precision exhausted (cancellation, collision, or tiny denominator)."""


class PoleProximity(PrecisionError):
    """Evaluation point landed within the precision floor of a pole."""


class RoundingUnstable(PrecisionError):
    """Rounded integer polynomial failed the precision-doubling stability check."""


class InternalInconsistency(LemnatomicError):
    """An internal invariant failed; indicates an implementation bug."""
