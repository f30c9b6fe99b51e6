"""Three-party network with two independent sources and a joint middle party.

The middle party holds one qubit from each source and measures a separable
product observable; the extreme parties measure single-qubit projective
observables.  Outcome bit b encodes the eigenvalue (-1)**b, so correlators
are ``sum (-1)**(a+b+c) P(a,b,c|x,y,z)``.

Two routes to the bilocality parameter are provided and cross-checked in
the tests: the exact behavior P(a,b,c|x,y,z) evaluated operationally, and
the closed form in terms of the two source correlation tensors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .correlations import _check_tensor
from .errors import InvariantError, WrongDimensionError
from .qalg import ALGEBRA_TOL, PAULIS, SIGMA_0, DensityMatrix

PROB_TOL = 1e-12
NOSIGNAL_TOL = 1e-10


def unit_vector(components) -> np.ndarray:
    """Validate and freeze a Bloch direction (unit 3-vector)."""
    v = np.array(components, dtype=float)
    if v.shape != (3,):
        raise InvariantError(f"Bloch vector must have 3 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvariantError("Bloch vector components must be finite")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > ALGEBRA_TOL:
        raise InvariantError(f"Bloch vector is not a unit vector: norm {norm!r}")
    v.setflags(write=False)
    return v


def bloch_from_angles(theta: float, phi: float) -> np.ndarray:
    """Unit vector (sin t cos p, sin t sin p, cos t)."""
    st = math.sin(theta)
    return unit_vector((st * math.cos(phi), st * math.sin(phi), math.cos(theta)))


@dataclass(frozen=True, eq=False)
class ProjectiveSetting:
    """Two measurement directions, one per input bit."""

    directions: tuple

    def __post_init__(self):
        if len(self.directions) != 2:
            raise InvariantError("projective setting needs exactly two directions")
        object.__setattr__(
            self, "directions", tuple(unit_vector(d) for d in self.directions)
        )


@dataclass(frozen=True, eq=False)
class SeparableSetting:
    """Per input bit, a (left-qubit, right-qubit) pair of directions."""

    pairs: tuple

    def __post_init__(self):
        if len(self.pairs) != 2 or any(len(p) != 2 for p in self.pairs):
            raise InvariantError("separable setting needs two (left, right) pairs")
        object.__setattr__(
            self,
            "pairs",
            tuple((unit_vector(l), unit_vector(r)) for l, r in self.pairs),
        )


@dataclass(frozen=True, eq=False)
class BilocalScenario:
    """Two two-qubit sources plus all three parties' measurement settings.

    ``rho_left`` is shared (extreme, middle) and ``rho_right`` (middle,
    extreme); the middle party's left direction acts on the second qubit of
    ``rho_left``, its right direction on the first qubit of ``rho_right``.
    """

    rho_left: DensityMatrix
    rho_right: DensityMatrix
    setting_left_extreme: ProjectiveSetting
    setting_middle: SeparableSetting
    setting_right_extreme: ProjectiveSetting

    def __post_init__(self):
        if self.rho_left.num_qubits != 2 or self.rho_right.num_qubits != 2:
            raise WrongDimensionError("both sources must be two-qubit states")


@dataclass(frozen=True, eq=False)
class Behavior:
    """Exact conditional distribution P(a,b,c|x,y,z), indexed [x,y,z,a,b,c]."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (2,) * 6:
            raise InvariantError(f"behavior must have shape (2,)*6, got {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvariantError("behavior probabilities must be finite")
        if p.min() < -PROB_TOL or p.max() > 1.0 + PROB_TOL:
            raise InvariantError(
                f"behavior probability out of [0, 1]: range [{p.min()!r}, {p.max()!r}]"
            )
        totals = p.sum(axis=(3, 4, 5))
        if np.max(np.abs(totals - 1.0)) > NOSIGNAL_TOL:
            raise InvariantError(
                "behavior not normalized for some input triple "
                f"(worst deviation {np.max(np.abs(totals - 1.0)):.3e})"
            )
        if no_signaling_residual(p) > NOSIGNAL_TOL:
            raise InvariantError(
                f"behavior is signaling (residual {no_signaling_residual(p):.3e})"
            )
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)


def no_signaling_residual(probs: np.ndarray) -> float:
    """Largest deviation of any party-subset marginal across the dropped inputs."""
    p = np.asarray(probs, dtype=float)
    residual = 0.0
    # marginal of (A, B) over c must not depend on z, and cyclically
    for axes_out, axis_in in (((5,), 2), ((4,), 1), ((3,), 0)):
        marg = p.sum(axis=axes_out)  # e.g. P(a,b|x,y,z)
        residual = max(
            residual, float(np.max(np.abs(marg - marg.mean(axis=axis_in, keepdims=True))))
        )
    # single-party marginals
    for axes_out, axes_in in (
        ((4, 5), (1, 2)),
        ((3, 5), (0, 2)),
        ((3, 4), (0, 1)),
    ):
        marg = p.sum(axis=axes_out)
        mean = marg.mean(axis=axes_in, keepdims=True)
        residual = max(residual, float(np.max(np.abs(marg - mean))))
    return residual


@dataclass(frozen=True)
class BilocalReport:
    """I, J correlator combinations, B = sqrt|I| + sqrt|J|, and the B > 1 flag."""

    I: float
    J: float
    B: float
    nonbilocal: bool

    def __post_init__(self):
        if abs(self.I) > 1.0 + NOSIGNAL_TOL or abs(self.J) > 1.0 + NOSIGNAL_TOL:
            raise InvariantError(
                f"correlator combination out of range: I={self.I!r}, J={self.J!r}"
            )
        if abs(self.B - (math.sqrt(abs(self.I)) + math.sqrt(abs(self.J)))) > ALGEBRA_TOL:
            raise InvariantError("B does not equal sqrt|I| + sqrt|J|")


def projector(v: np.ndarray, outcome: int) -> np.ndarray:
    """Eigenprojector (sigma_0 + (-1)**outcome v.sigma) / 2."""
    v = unit_vector(v)
    sign = -1.0 if outcome else 1.0
    vs = v[0] * PAULIS[1] + v[1] * PAULIS[2] + v[2] * PAULIS[3]
    return 0.5 * (SIGMA_0 + sign * vs)


def separable_effect(pair, outcome: int) -> np.ndarray:
    """4x4 effect of the product observable with outcome = XOR of the two bits."""
    left, right = pair
    effect = np.zeros((4, 4), dtype=complex)
    for b1, b2 in product((0, 1), repeat=2):
        if (b1 ^ b2) == (outcome & 1):
            effect += np.kron(projector(left, b1), projector(right, b2))
    return effect


def behavior(s: BilocalScenario) -> Behavior:
    """Exact behavior of the scenario: no sampling, all 64 probabilities."""
    rho = np.kron(s.rho_left.matrix, s.rho_right.matrix)
    a_eff = [
        [projector(d, a) for a in (0, 1)] for d in s.setting_left_extreme.directions
    ]
    m_eff = [
        [separable_effect(pair, b) for b in (0, 1)] for pair in s.setting_middle.pairs
    ]
    c_eff = [
        [projector(d, c) for c in (0, 1)] for d in s.setting_right_extreme.directions
    ]
    probs = np.empty((2,) * 6)
    for x, y, z, a, b, c in product((0, 1), repeat=6):
        op = np.kron(a_eff[x][a], np.kron(m_eff[y][b], c_eff[z][c]))
        probs[x, y, z, a, b, c] = np.einsum("ab,ba->", rho, op).real
    return Behavior(probs)


def correlator(beh: Behavior, x: int, y: int, z: int) -> float:
    """<A_x B_y C_z> = sum over outcomes of (-1)**(a+b+c) P(a,b,c|x,y,z)."""
    signs = np.array([1.0, -1.0])
    block = beh.probs[x, y, z]
    return float(np.einsum("abc,a,b,c->", block, signs, signs, signs))


def bilocal_report(beh: Behavior) -> BilocalReport:
    """Evaluate the bilocal inequality terms on a behavior.

    I averages the y=0 correlators, J the y=1 correlators with alternating
    signs; the behavior is nonbilocal when B = sqrt|I| + sqrt|J| exceeds 1.
    """
    i_val = 0.25 * sum(correlator(beh, x, 0, z) for x in (0, 1) for z in (0, 1))
    j_val = 0.25 * sum(
        (-1.0) ** (x + z) * correlator(beh, x, 1, z) for x in (0, 1) for z in (0, 1)
    )
    b_val = math.sqrt(abs(i_val)) + math.sqrt(abs(j_val))
    return BilocalReport(I=i_val, J=j_val, B=b_val, nonbilocal=bool(b_val > 1.0))


def _eq7(tl, tr, a0, a1, bl0, br0, bl1, br1, g0, g1) -> float:
    """Closed-form bilocality parameter for raw tensors and direction arrays."""
    left0 = abs(float((a0 + a1) @ tl @ bl0))
    right0 = abs(float(br0 @ tr @ (g0 + g1)))
    left1 = abs(float((a0 - a1) @ tl @ bl1))
    right1 = abs(float(br1 @ tr @ (g0 - g1)))
    return 0.5 * (math.sqrt(left0 * right0) + math.sqrt(left1 * right1))


def b_closed_form(
    t_left: np.ndarray,
    t_right: np.ndarray,
    setting_left_extreme: ProjectiveSetting,
    setting_middle: SeparableSetting,
    setting_right_extreme: ProjectiveSetting,
) -> float:
    """Bilocality parameter from the source correlation tensors.

    Equals the behavior-derived B for every choice of states and settings;
    the test suite enforces agreement to 1e-10.
    """
    tl = _check_tensor(t_left)
    tr = _check_tensor(t_right)
    a0, a1 = setting_left_extreme.directions
    (bl0, br0), (bl1, br1) = setting_middle.pairs
    g0, g1 = setting_right_extreme.directions
    return _eq7(tl, tr, a0, a1, bl0, br0, bl1, br1, g0, g1)
