"""Exception hierarchy for the toolkit.

Every error raised by zkpin derives from ZkpinError so callers can catch
the whole family with one clause.  Subclasses are grouped by layer.
"""


class ZkpinError(Exception):
    """Base class for all toolkit errors."""


# --- field / polynomial layer ------------------------------------------------

class CompositeModulus(ZkpinError):
    """The requested field modulus failed the primality test."""


class ModulusMismatch(ZkpinError):
    """Two values from different prime fields were combined."""


class InversionOfZero(ZkpinError):
    """Multiplicative inverse of the zero element was requested."""


class DuplicateAbscissa(ZkpinError):
    """Interpolation points share an x-coordinate."""


class DivisionByZeroPolynomial(ZkpinError):
    """Polynomial division by the zero polynomial."""


class FieldTooSmall(ZkpinError):
    """The field cannot host the requested constraint count (needs 2m < p)."""


# --- circuit layer -----------------------------------------------------------

class CircuitError(ZkpinError):
    """Base class for circuit construction and evaluation errors."""


class CircuitSyntaxError(CircuitError):
    """Source text could not be parsed; carries a 1-based position."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class UndeclaredSignal(CircuitError):
    """A statement referenced a signal that was never declared or assigned."""


class DoubleAssignment(CircuitError):
    """A signal received more than one assignment."""


class CyclicDependency(CircuitError):
    """A signal was used before (or inside) its own assignment."""


class MissingInput(CircuitError):
    """Witness evaluation was not given a value for a declared input."""


class AssertionFailed(CircuitError):
    """An assert statement (or folded output binding) was violated.

    ``index`` is the position of the failing statement in the circuit.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DimensionMismatch(ZkpinError):
    """Witness length does not match the constraint system or QAP."""


class NotSatisfying(ZkpinError):
    """The witness violates at least one constraint (nonzero QAP remainder)."""


# --- pairing layer -----------------------------------------------------------

class BackendMismatch(ZkpinError):
    """Group elements from different backends were combined."""


class PointNotOnCurve(ZkpinError):
    """Affine coordinates do not satisfy the curve equation."""


# --- gadget layer ------------------------------------------------------------

class IncompatibleField(ZkpinError):
    """The field does not support the gadget (e.g. gcd(5, p-1) != 1)."""


class RangeViolation(ZkpinError):
    """A gadget operand exceeded its declared bit width."""


class DivisorZero(ZkpinError):
    """The modulo gadget was evaluated with divisor 0."""


# --- serialization layer -----------------------------------------------------

class SerializationError(ZkpinError):
    """Malformed or inconsistent canonical-text artifact."""


class DigestMismatch(ZkpinError):
    """Key and proof were produced for different circuits; refused."""


# --- protocol layer ----------------------------------------------------------

class ProtocolError(ZkpinError):
    """Base class for ledger rule violations."""


class WrongPhase(ProtocolError):
    pass


class DuplicateLeaf(ProtocolError):
    pass


class InsufficientStake(ProtocolError):
    pass


class InvalidProof(ProtocolError):
    pass


class BidTooLow(ProtocolError):
    pass


class SameBidderTwice(ProtocolError):
    pass


class WrongPayer(ProtocolError):
    pass


class DeadlinePassed(ProtocolError):
    pass


class DuplicateCommit(ProtocolError):
    pass


class SeedCommitMismatch(ProtocolError):
    pass


class UnknownPlayer(ProtocolError):
    pass
