"""Exception types shared across the package."""


class BilocalError(Exception):
    """Base class for all package-specific errors."""


class InvariantError(BilocalError):
    """A domain-type invariant does not hold; the message names the invariant."""


class NotNormalizedError(InvariantError):
    """State vector amplitudes do not have unit norm."""


class NotHermitianError(InvariantError):
    """Matrix is not Hermitian within tolerance."""


class NoConvergenceError(BilocalError):
    """Eigensolver did not reach the off-diagonal tolerance within its sweep budget."""

    def __init__(self, residual: float, sweeps: int):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"eigensolver did not converge after {sweeps} sweeps "
            f"(off-diagonal residual {residual:.3e})"
        )


class BadIndexError(BilocalError):
    """Qubit index list is empty, out of range, or contains duplicates."""


class WrongDimensionError(BilocalError):
    """Operation applied to a state with the wrong number of qubits."""


class StateFileError(BilocalError):
    """State file (or generator spec) could not be parsed into a state."""
