"""Complex linear algebra and quantum-state core for few-qubit systems.

Conventions used throughout the package:

* Computational basis index of an n-qubit register: ``b = sum_k bit_k * 2**(n-1-k)``,
  i.e. qubit 0 is the leftmost label and the most significant bit.  Tensor
  products follow the same ordering (left factor = more significant qubits).
* All randomness comes from numpy's PCG64 generator
  (``numpy.random.default_rng``) with caller-supplied 64-bit seeds; equal
  seeds give bit-identical results.
* Tolerances: 1e-12 for algebraic identities (norms, traces, Hermiticity),
  1e-10 of eigenvalue slack for positive semidefiniteness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadIndexError,
    InvariantError,
    NoConvergenceError,
    NotHermitianError,
    NotNormalizedError,
)

ALGEBRA_TOL = 1e-12
PSD_TOL = 1e-10

MAX_QUBITS = 4

# Pauli basis: identity plus the three traceless Pauli matrices.
SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)
for _p in PAULIS:
    _p.setflags(write=False)


def _readonly_complex(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.shape != shape:
        raise InvariantError(f"expected array of shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise InvariantError("entries must be finite (no NaN/Inf)")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Ket:
    """Pure n-qubit state (1 <= n <= 4), amplitudes in the computational basis.

    The squared amplitudes must sum to 1 within 1e-12.
    """

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise InvariantError(
                f"number of qubits must be between 1 and {MAX_QUBITS}, got {self.num_qubits}"
            )
        amps = _readonly_complex(self.amplitudes, (2**self.num_qubits,))
        object.__setattr__(self, "amplitudes", amps)
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > ALGEBRA_TOL:
            raise NotNormalizedError(
                f"state not normalized: sum of squared amplitudes is {norm_sq!r}"
            )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed n-qubit state: Hermitian, unit-trace, PSD complex matrix."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise InvariantError(
                f"number of qubits must be between 1 and {MAX_QUBITS}, got {self.num_qubits}"
            )
        dim = 2**self.num_qubits
        mat = _readonly_complex(self.matrix, (dim, dim))
        object.__setattr__(self, "matrix", mat)
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > ALGEBRA_TOL:
            raise NotHermitianError(
                f"density matrix not Hermitian: max entrywise deviation {herm:.3e}"
            )
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > ALGEBRA_TOL:
            raise InvariantError(f"density matrix trace is {trace!r}, expected 1")
        smallest = hermitian_eigs(mat)[-1]
        if smallest < -PSD_TOL:
            raise InvariantError(
                f"density matrix not positive semidefinite: smallest eigenvalue {smallest:.3e}"
            )

    @property
    def dim(self) -> int:
        return 2**self.num_qubits


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor on the more significant qubits."""
    return np.kron(np.asarray(a), np.asarray(b))


def density_from_ket(psi: Ket) -> DensityMatrix:
    """Rank-1 density matrix |psi><psi|."""
    norm_sq = float(np.sum(np.abs(psi.amplitudes) ** 2))
    if abs(norm_sq - 1.0) > 1e-9:
        raise NotNormalizedError(
            f"state not normalized: sum of squared amplitudes is {norm_sq!r}"
        )
    mat = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(psi.num_qubits, mat)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the kept qubits, in the listed order.

    Tracing preserves the unit trace, Hermiticity and positivity, so the
    result is again a valid :class:`DensityMatrix`.
    """
    keep = [int(k) for k in keep]
    n = rho.num_qubits
    if not keep:
        raise BadIndexError("keep list is empty")
    if len(set(keep)) != len(keep):
        raise BadIndexError(f"duplicate qubit indices in keep list: {keep}")
    if any(k < 0 or k >= n for k in keep):
        raise BadIndexError(f"qubit index out of range 0..{n - 1}: {keep}")

    tensor = rho.matrix.reshape((2,) * (2 * n))
    kept = set(keep)
    row_labels = list(range(n))
    col_labels = [i if i not in kept else n + i for i in range(n)]
    out_labels = [k for k in keep] + [n + k for k in keep]
    reduced = np.einsum(tensor, row_labels + col_labels, out_labels)
    m = len(keep)
    return DensityMatrix(m, reduced.reshape((2**m, 2**m)))


def hermitian_eigs(m: np.ndarray, max_sweeps: int = 100) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    Cyclic complex Jacobi rotations, iterated until the off-diagonal
    Frobenius norm drops below 1e-12 or ``max_sweeps`` sweeps have run.
    Deterministic and adequate for the package's dimensions (<= 16).
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"matrix is not square: shape {a.shape}")
    herm = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if herm > 1e-10:
        raise NotHermitianError(
            f"matrix not Hermitian: max entrywise deviation {herm:.3e}"
        )
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    a = 0.5 * (a + a.conj().T)

    def off_norm(x):
        off = x.copy()
        np.fill_diagonal(off, 0.0)
        return float(np.sqrt(np.sum(np.abs(off) ** 2)))

    residual = off_norm(a)
    for _ in range(max_sweeps):
        if residual < 1e-12:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                beta = abs(apq)
                scale = abs(a[p, p].real) + abs(a[q, q].real)
                if beta == 0.0 or scale + beta == scale:
                    # negligible pivot: zeroing it perturbs eigenvalues by <= beta
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                phase = apq / beta
                tau = (a[q, q].real - a[p, p].real) / (2.0 * beta)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                    if tau < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Unitary plane rotation J: J[p,p]=c, J[p,q]=s,
                # J[q,p]=-s*conj(phase), J[q,q]=c*conj(phase); apply A <- J^H A J.
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * col_p + c * np.conj(phase) * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
        residual = off_norm(a)
    if residual >= 1e-12:
        raise NoConvergenceError(residual, max_sweeps)
    eigs = np.sort(np.diag(a).real)[::-1]
    return eigs


def _complex_normals(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_pure_state(n: int, seed: int) -> Ket:
    """Haar-distributed n-qubit pure state, deterministic in the seed."""
    if not 1 <= n <= MAX_QUBITS:
        raise InvariantError(f"number of qubits must be between 1 and {MAX_QUBITS}, got {n}")
    rng = np.random.default_rng(seed)
    amps = _complex_normals(rng, 2**n)
    amps /= np.linalg.norm(amps)
    return Ket(n, amps)


def random_density(n: int, rank: int, seed: int) -> DensityMatrix:
    """Ginibre-induced random density matrix G G^dag / Tr(G G^dag)."""
    if not 1 <= n <= MAX_QUBITS:
        raise InvariantError(f"number of qubits must be between 1 and {MAX_QUBITS}, got {n}")
    if not 1 <= rank <= 2**n:
        raise InvariantError(f"rank must be between 1 and {2**n}, got {rank}")
    rng = np.random.default_rng(seed)
    g = _complex_normals(rng, (2**n, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(n, m / np.trace(m).real)


def bell_ket() -> Ket:
    """The (|00> + |11>)/sqrt(2) two-qubit state."""
    amps = np.zeros(4, dtype=complex)
    amps[0] = amps[3] = 1.0 / math.sqrt(2.0)
    return Ket(2, amps)


def ghz_ket(n: int = 3) -> Ket:
    """The (|0...0> + |1...1>)/sqrt(2) n-qubit state."""
    if not 2 <= n <= MAX_QUBITS:
        raise InvariantError(f"GHZ state needs 2 to {MAX_QUBITS} qubits, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return Ket(n, amps)


def maximally_mixed(n: int) -> DensityMatrix:
    """The identity / 2^n state."""
    if not 1 <= n <= MAX_QUBITS:
        raise InvariantError(f"number of qubits must be between 1 and {MAX_QUBITS}, got {n}")
    return DensityMatrix(n, np.eye(2**n, dtype=complex) / 2**n)
