"""Two-qubit correlation tensors and the eigenvalue bounds built on them.

The correlation tensor of a two-qubit state rho is the real 3x3 matrix
``T[i, j] = Tr[rho sigma_i (x) sigma_j]`` over the traceless Paulis.  The
spectrum of ``T^T T`` (the Gram spectrum) controls both the maximal CHSH
value of the state and the maximal bilocal-inequality violation of a pair
of states.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvariantError, WrongDimensionError
from .qalg import PAULIS, DensityMatrix, PSD_TOL, hermitian_eigs

ENTRY_TOL = 1e-10
FROBENIUS_TOL = 1e-9

# sigma_i (x) sigma_j for i, j in 1..3, stacked as a (3, 3, 4, 4) array
_PAULI_PRODUCTS = np.array(
    [[np.kron(PAULIS[i], PAULIS[j]) for j in (1, 2, 3)] for i in (1, 2, 3)]
)
_PAULI_PRODUCTS.setflags(write=False)


def _check_tensor(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if t.shape != (3, 3):
        raise InvariantError(f"correlation tensor must be 3x3, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise InvariantError("correlation tensor entries must be finite")
    if np.max(np.abs(t)) > 1.0 + ENTRY_TOL:
        raise InvariantError(
            f"correlation tensor entry out of [-1, 1]: max |entry| = {np.max(np.abs(t))!r}"
        )
    frob_sq = float(np.sum(t * t))
    if frob_sq > 3.0 + FROBENIUS_TOL:
        raise InvariantError(
            f"correlation tensor squared Frobenius norm {frob_sq!r} exceeds 3"
        )
    return t


def correlation_tensor(rho: DensityMatrix) -> np.ndarray:
    """3x3 correlation tensor T[i, j] = Tr[rho sigma_i (x) sigma_j]."""
    if rho.num_qubits != 2:
        raise WrongDimensionError(
            f"correlation tensor requires a two-qubit state, got {rho.num_qubits} qubits"
        )
    t = np.einsum("ab,ijba->ij", rho.matrix, _PAULI_PRODUCTS).real
    return _check_tensor(t)


def gram_eigs(t: np.ndarray) -> np.ndarray:
    """Eigenvalues of T^T T, sorted descending and clipped at zero.

    Values in [-1e-10, 0) are floating-point dust and are clipped so that
    downstream square roots stay real.
    """
    t = _check_tensor(t)
    eigs = hermitian_eigs(t.T @ t)
    if eigs[-1] < -PSD_TOL:
        raise InvariantError(
            f"Gram eigenvalue below PSD tolerance: {eigs[-1]:.3e}"
        )
    if eigs[0] > 1.0 + FROBENIUS_TOL:
        raise InvariantError(f"Gram eigenvalue above 1: {eigs[0]!r}")
    return np.clip(eigs, 0.0, None)


def horodecki_m(t: np.ndarray) -> float:
    """Sum of the two largest Gram eigenvalues; the state's maximal CHSH value is 2*sqrt(M)."""
    eigs = gram_eigs(t)
    return float(eigs[0] + eigs[1])


def bmax(t_left: np.ndarray, t_right: np.ndarray) -> float:
    """Maximal bilocal-inequality value for a pair of source tensors.

    sqrt( sqrt(w1_L * w1_R) + sqrt(w2_L * w2_R) ) with each Gram spectrum
    sorted descending before pairing; degenerate spectra are fine.
    """
    left = gram_eigs(t_left)
    right = gram_eigs(t_right)
    return math.sqrt(
        math.sqrt(left[0] * right[0]) + math.sqrt(left[1] * right[1])
    )
