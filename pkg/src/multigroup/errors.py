"""Exception types shared across the workbench.

Every error raised by the library derives from WorkbenchError so callers
(notably the CLI) can distinguish domain failures from programming bugs.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class ZeroInverseError(WorkbenchError):
    """Multiplicative inverse of zero requested in a prime field."""


class DimensionMismatchError(WorkbenchError):
    """Matrix or vector operands have incompatible shapes."""


class ModulusMismatchError(WorkbenchError):
    """Operands live over different prime fields."""


class SingularMatrixError(WorkbenchError):
    """Matrix inverse requested for a matrix with zero determinant."""


class TooLargeError(WorkbenchError):
    """Requested enumeration exceeds the carrier size guard."""


class UnsupportedCarrierError(WorkbenchError):
    """Carrier description is syntactically valid but not supported."""


class ActionMismatchError(WorkbenchError):
    """Vector length, matrix dimension, or modulus do not line up for a group action."""


class NotHomomorphismError(WorkbenchError):
    """Candidate automorphism fails f(ab) = f(a)f(b) somewhere."""


class NotBijectiveError(WorkbenchError):
    """Candidate automorphism is not a bijection of the carrier."""


class NotClosedError(WorkbenchError):
    """An operation rule produced a result outside the carrier."""

    def __init__(self, x, y, result):
        self.x, self.y, self.result = x, y, result
        super().__init__(f"operation not closed: {x!r} * {y!r} = {result!r} is outside the carrier")


class CarrierMismatchError(WorkbenchError):
    """A check received operation tables over different carriers."""


class NotAUnitError(WorkbenchError):
    """Element passed as a unit is not a two-sided unit of the table."""


class NotAGroupError(WorkbenchError):
    """A table that must be a group table is not one."""

    def __init__(self, which, report):
        self.which = which
        self.report = report
        super().__init__(f"{which} table is not a group ({report.reason or report.axiom})")


class NoUnitError(WorkbenchError):
    """Construction requires a carrier with a two-sided unit."""


class NotAnActionError(WorkbenchError):
    """Supplied map is not a group action (identity or compatibility fails)."""


class OddModulusError(WorkbenchError):
    """Parity-dependent construction needs an even modulus."""


class UnknownClaimError(WorkbenchError):
    """Demo claim id is not in the registry."""


class SpecError(WorkbenchError):
    """A spec document failed to parse or compile; carries diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first else "invalid spec")
