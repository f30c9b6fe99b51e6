"""Four-party two-source network and the monogamy / trade-off relations.

Two tripartite sources feed four parties in a line: the extreme (nodal)
parties hold one qubit each, the two intermediate parties hold one qubit
from each source.  Dropping one intermediate party gives a reduced
three-party network; the squared violation bounds of the two reduced
networks always sum to at most 2, with equality on a family of W states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import correlation_tensor, gram_eigs
from .errors import InvariantError, WrongDimensionError
from .qalg import DensityMatrix, Ket, density_from_ket, partial_trace

BOUND_TOL = 1e-9

PARTIES_FIRST = ("A", "B", "C")
PARTIES_SECOND = ("B", "C", "D")

#: Qubit-position-to-party assignment of the second source that makes two
#: identical W-state copies saturate the monogamy bound.
TIGHTNESS_ASSIGNMENT = ("B", "D", "C")


def _check_assignment(assignment, parties) -> tuple:
    assignment = tuple(assignment)
    if sorted(assignment) != sorted(parties):
        raise InvariantError(
            f"assignment {assignment} is not a bijection onto {parties}"
        )
    return assignment


@dataclass(frozen=True, eq=False)
class FourPartyNetwork:
    """Two three-qubit sources with qubit-position-to-party assignments."""

    rho_abc: DensityMatrix
    rho_bcd: DensityMatrix
    assignment_1: tuple = PARTIES_FIRST
    assignment_2: tuple = PARTIES_SECOND

    def __post_init__(self):
        if self.rho_abc.num_qubits != 3 or self.rho_bcd.num_qubits != 3:
            raise WrongDimensionError("both sources must be three-qubit states")
        object.__setattr__(
            self, "assignment_1", _check_assignment(self.assignment_1, PARTIES_FIRST)
        )
        object.__setattr__(
            self, "assignment_2", _check_assignment(self.assignment_2, PARTIES_SECOND)
        )


@dataclass(frozen=True, eq=False)
class ReducedTensors:
    """Correlation tensors of one reduced network.

    ``near`` links the first nodal party to the retained intermediate party
    (rows indexed by the nodal party); ``far`` links the intermediate party
    to the second nodal party (rows indexed by the intermediate party).
    """

    which: str
    near: np.ndarray
    far: np.ndarray


@dataclass(frozen=True)
class MonogamyReport:
    """Gram spectra, per-network squared bounds, and the trade-off data."""

    near_eigs_b: tuple
    far_eigs_b: tuple
    near_eigs_c: tuple
    far_eigs_c: tuple
    bmaxsq_b: float
    bmaxsq_c: float
    tradeoff_lhs: float
    amgm_bound: float
    satisfied: bool


def _position(assignment, party: str) -> int:
    return assignment.index(party)


def reduced_tensors(net: FourPartyNetwork, which: str) -> ReducedTensors:
    """Tensors of reduced network ``which`` ("B" or "C": intermediate party kept)."""
    if which not in ("B", "C"):
        raise ValueError(f'reduced network must be "B" or "C", got {which!r}')
    keep_mid = which
    near_state = partial_trace(
        net.rho_abc,
        [_position(net.assignment_1, "A"), _position(net.assignment_1, keep_mid)],
    )
    far_state = partial_trace(
        net.rho_bcd,
        [_position(net.assignment_2, keep_mid), _position(net.assignment_2, "D")],
    )
    return ReducedTensors(
        which=which,
        near=correlation_tensor(near_state),
        far=correlation_tensor(far_state),
    )


def _bmaxsq(near: np.ndarray, far: np.ndarray):
    near_eigs = gram_eigs(near)
    far_eigs = gram_eigs(far)
    value = math.sqrt(near_eigs[0] * far_eigs[0]) + math.sqrt(near_eigs[1] * far_eigs[1])
    return value, (float(near_eigs[0]), float(near_eigs[1])), (
        float(far_eigs[0]),
        float(far_eigs[1]),
    )


def monogamy_report(net: FourPartyNetwork, tol: float = BOUND_TOL) -> MonogamyReport:
    """Evaluate both reduced networks and the trade-off left-hand side.

    Per network the squared bound is sqrt(L1 i1) + sqrt(L2 i2) over the two
    largest Gram eigenvalues of the near and far tensors; the arithmetic-
    geometric mean of all eight eigenvalues bounds the sum from above, and
    that in turn never exceeds 2.
    """
    red_b = reduced_tensors(net, "B")
    red_c = reduced_tensors(net, "C")
    bmaxsq_b, near_b, far_b = _bmaxsq(red_b.near, red_b.far)
    bmaxsq_c, near_c, far_c = _bmaxsq(red_c.near, red_c.far)
    lhs = bmaxsq_b + bmaxsq_c
    amgm = 0.5 * (sum(near_b) + sum(far_b) + sum(near_c) + sum(far_c))
    return MonogamyReport(
        near_eigs_b=near_b,
        far_eigs_b=far_b,
        near_eigs_c=near_c,
        far_eigs_c=far_c,
        bmaxsq_b=float(bmaxsq_b),
        bmaxsq_c=float(bmaxsq_c),
        tradeoff_lhs=float(lhs),
        amgm_bound=float(amgm),
        satisfied=bool(lhs <= 2.0 + tol),
    )


def marginal_tradeoff_sum(rho: DensityMatrix, pivot: int) -> float:
    """Sum of the two largest Gram eigenvalues over both pivot-anchored marginals.

    The pivot is the party kept in both two-party marginals of the
    three-qubit state; the result never exceeds 2.
    """
    if rho.num_qubits != 3:
        raise WrongDimensionError(
            f"marginal trade-off needs a three-qubit state, got {rho.num_qubits} qubits"
        )
    if pivot not in (0, 1, 2):
        raise WrongDimensionError(f"pivot must be a qubit index 0..2, got {pivot}")
    others = [i for i in range(3) if i != pivot]
    total = 0.0
    for other in others:
        eigs = gram_eigs(correlation_tensor(partial_trace(rho, [pivot, other])))
        total += float(eigs[0] + eigs[1])
    return total


def w_state(mu0: float, mu1: float) -> Ket:
    """Three-qubit W-family state cos(mu0)|001> + sin(mu1)sin(mu0)|010> + sin(mu0)cos(mu1)|100>."""
    for name, val in (("mu0", mu0), ("mu1", mu1)):
        if not 0.0 <= val <= math.pi / 2:
            raise InvariantError(f"{name} must lie in [0, pi/2], got {val!r}")
    amps = np.zeros(8, dtype=complex)
    amps[0b001] = math.cos(mu0)
    amps[0b010] = math.sin(mu1) * math.sin(mu0)
    amps[0b100] = math.sin(mu0) * math.cos(mu1)
    return Ket(3, amps)


def tightness_demo(mu1: float, tol: float = BOUND_TOL) -> MonogamyReport:
    """Monogamy report for two identical W-state copies saturating the bound.

    Both sources emit the mu0 = pi/2 member of the W family; the second
    copy uses :data:`TIGHTNESS_ASSIGNMENT`, under which the trade-off
    left-hand side equals 2 for every mu1.
    """
    rho = density_from_ket(w_state(math.pi / 2, mu1))
    net = FourPartyNetwork(
        rho_abc=rho,
        rho_bcd=rho,
        assignment_1=PARTIES_FIRST,
        assignment_2=TIGHTNESS_ASSIGNMENT,
    )
    return monogamy_report(net, tol=tol)
