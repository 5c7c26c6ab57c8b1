"""Exception types shared across the package."""


class TowerLimitsError(Exception):
    """Base class for all package errors."""


class PolynomialSyntaxError(TowerLimitsError, ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class BudgetExceeded(TowerLimitsError):
    """A walk needed more steps than the configured budget allows."""

    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)


class NotTowerStable(TowerLimitsError):
    """The reduction modulo ``prime`` is a single cycle of length ``prime``."""

    def __init__(self, prime):
        self.prime = prime
        super().__init__(f"polynomial is not tower-stable: f mod {prime} is a {prime}-cycle")


class PreperiodicStart(TowerLimitsError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"start {witness.start} is preperiodic (tail {witness.tail}, cycle {witness.cycle}); "
            "the tower sequence is bounded and has no profinite limit to compute"
        )


class Inconclusive(TowerLimitsError):
    """A bounded search finished without a verdict either way."""
