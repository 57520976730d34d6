"""EWL quantum prisoner's dilemma with the one-parameter strategy family.

Two routes to the outcome statistics are kept deliberately independent:
closed-form expressions for the joint distribution and payoffs, and a dense
two-qubit state-vector pipeline (entangle, apply local unitaries, disentangle,
measure) that serves as the oracle. Basis ordering is (CC, CD, DC, DD)
throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRegime
from .game_core import (
    DilemmaParams,
    NashEquilibriumRecord,
    PayoffMatrix2x2,
    enumerate_pure_ne,
)

__all__ = [
    "JointDistribution",
    "QuantumPayoffMatrix",
    "PhaseThresholds",
    "QuantumNeReport",
    "initial_state",
    "strategy_operator",
    "entangling_gate",
    "final_state",
    "joint_distribution",
    "expected_payoff_quantum",
    "pure_quantum_matrix",
    "thresholds",
    "classify_quantum_ne",
    "grid_best_response_gain",
]

GAMMA_MAX = math.pi / 2

# Identity tolerance for exact algebraic relations; threshold membership uses
# the same scale since the angles come from one arcsin evaluation.
IDENTITY_TOL = 1e-12

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_KET_CC = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)


def _check_gamma(gamma: float) -> None:
    if not (0.0 <= gamma <= GAMMA_MAX):
        raise ValueError(f"gamma must lie in [0, pi/2], got {gamma}")


def _check_prob(t: float, name: str) -> None:
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {t}")


@dataclass(frozen=True)
class JointDistribution:
    """Outcome probabilities over (CC, CD, DC, DD)."""

    eps1: float
    eps2: float
    eps3: float
    eps4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.eps1, self.eps2, self.eps3, self.eps4])


@dataclass(frozen=True)
class QuantumPayoffMatrix:
    """Pure-quantum-strategy payoff matrix with its off-diagonal scalars."""

    matrix: PayoffMatrix2x2
    pi_q: float
    pi_d: float


@dataclass(frozen=True)
class PhaseThresholds:
    """Entanglement angles delimiting the NE phases; None when undefined."""

    gamma1: float | None
    gamma2: float | None
    gamma_star: float | None


@dataclass(frozen=True)
class QuantumNeReport:
    phase: str
    equilibria: list[NashEquilibriumRecord]


def initial_state(gamma: float) -> np.ndarray:
    """Entangled initial state cos(g/2)|CC> + i sin(g/2)|DD>."""
    _check_gamma(gamma)
    return np.array([math.cos(gamma / 2), 0.0, 0.0, 1.0j * math.sin(gamma / 2)], dtype=complex)


def strategy_operator(t: float) -> np.ndarray:
    """One-parameter local unitary; t=1 is quantum-cooperate, t=0 is defect."""
    _check_prob(t, "t")
    rt, ru = math.sqrt(t), math.sqrt(1.0 - t)
    return np.array([[1.0j * rt, ru], [-ru, -1.0j * rt]], dtype=complex)


def entangling_gate(gamma: float, tampered: bool = False) -> np.ndarray:
    """Entangler J = cos(g/2) I - i sin(g/2) (sigma_y x sigma_y).

    ``tampered=True`` substitutes sigma_x x sigma_x, a deliberately wrong
    convention used as a negative control: it does not reproduce the
    closed-form joint distribution.
    """
    _check_gamma(gamma)
    pauli = _SIGMA_X if tampered else _SIGMA_Y
    return (math.cos(gamma / 2) * np.eye(4, dtype=complex)
            - 1.0j * math.sin(gamma / 2) * np.kron(pauli, pauli))


def final_state(p: float, q: float, gamma: float, tampered: bool = False) -> np.ndarray:
    """State-vector oracle: Jdag (U(p) x U(q)) J |CC>."""
    gate = entangling_gate(gamma, tampered=tampered)
    local = np.kron(strategy_operator(p), strategy_operator(q))
    return gate.conj().T @ (local @ (gate @ _KET_CC))


def joint_distribution(p: float, q: float, gamma: float) -> JointDistribution:
    """Closed-form outcome probabilities of the quantum game."""
    _check_prob(p, "p")
    _check_prob(q, "q")
    _check_gamma(gamma)
    c2, s2 = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    return JointDistribution(
        eps1=p * q,
        eps2=p * (1.0 - q) * c2 + (1.0 - p) * q * s2,
        eps3=(1.0 - p) * q * c2 + p * (1.0 - q) * s2,
        eps4=(1.0 - p) * (1.0 - q),
    )


def expected_payoff_quantum(params: DilemmaParams, p: float, q: float, gamma: float) -> tuple[float, float]:
    """Expected payoffs; the entanglement term is antisymmetric between players."""
    _check_prob(p, "p")
    _check_prob(q, "q")
    _check_gamma(gamma)
    dg, dr = params.d_g, params.d_r
    s2 = math.sin(gamma) ** 2
    shift = (1.0 + dr + dg) * (p - q) * s2
    pay_a = (dr - dg) * p * q - dr * p + (1.0 + dg) * q + shift
    pay_b = (dr - dg) * p * q - dr * q + (1.0 + dg) * p - shift
    return pay_a, pay_b


def pure_quantum_matrix(params: DilemmaParams, gamma: float) -> QuantumPayoffMatrix:
    """Payoff matrix over the pure quantum strategies Q and D."""
    _check_gamma(gamma)
    dg, dr = params.d_g, params.d_r
    s2 = math.sin(gamma) ** 2
    pi_q = -dr + (1.0 + dr + dg) * s2
    pi_d = 1.0 + dg - (1.0 + dr + dg) * s2
    entries = [
        [(1.0, 1.0), (pi_q, pi_d)],
        [(pi_d, pi_q), (0.0, 0.0)],
    ]
    return QuantumPayoffMatrix(PayoffMatrix2x2(entries, labels=("Q", "D")), pi_q, pi_d)


def _arcsin_sqrt(radicand: float) -> float | None:
    if 0.0 <= radicand <= 1.0:
        return math.asin(math.sqrt(radicand))
    return None


def thresholds(params: DilemmaParams) -> PhaseThresholds:
    """Phase thresholds gamma1, gamma2 and the coexistence switch gamma_star.

    sin^2(gamma1) = d_r/(1+d_r+d_g), sin^2(gamma2) = d_g/(1+d_r+d_g) and
    sin^2(gamma_star) = (d_g+d_r)/(2(1+d_g+d_r)); an angle whose radicand
    leaves [0, 1] is reported as None.
    """
    dg, dr = params.d_g, params.d_r
    s = 1.0 + dr + dg
    if s <= 0.0:
        return PhaseThresholds(None, None, None)
    return PhaseThresholds(
        gamma1=_arcsin_sqrt(dr / s),
        gamma2=_arcsin_sqrt(dg / s),
        gamma_star=_arcsin_sqrt((dg + dr) / (2.0 * s)),
    )


def classify_quantum_ne(params: DilemmaParams, gamma: float) -> QuantumNeReport:
    """Phase label and pure-quantum-strategy NEs at the given entanglement.

    NE sets are found by the weak best-response check on the pure-quantum
    matrix, which reproduces the closed-interval phase structure: at an exact
    threshold the adjacent sets merge through payoff ties.
    """
    _check_gamma(gamma)
    if params.d_g <= 0.0 or params.d_r <= 0.0:
        raise OutOfRegime("quantum PD regime requires d_g > 0 and d_r > 0")
    thr = thresholds(params)
    lo, hi = min(thr.gamma1, thr.gamma2), max(thr.gamma1, thr.gamma2)

    if min(abs(gamma - thr.gamma1), abs(gamma - thr.gamma2)) <= IDENTITY_TOL:
        phase = "boundary"
    elif gamma < lo:
        phase = "classical-like"
    elif gamma > hi:
        phase = "fully-quantum"
    elif params.d_g > params.d_r:
        phase = "transitional"
    else:
        phase = "coexistence"

    matrix = pure_quantum_matrix(params, gamma).matrix
    return QuantumNeReport(phase, enumerate_pure_ne(matrix, tol=IDENTITY_TOL))


def grid_best_response_gain(params: DilemmaParams, p: float, q: float, gamma: float,
                            grid: int = 1001) -> tuple[float, float]:
    """Best unilateral improvement each player can find on a strategy grid.

    Brute-force certification helper: a profile is an NE of the one-parameter
    game iff both gains are (numerically) nonpositive.
    """
    base_a, base_b = expected_payoff_quantum(params, p, q, gamma)
    gain_a = max(expected_payoff_quantum(params, t, q, gamma)[0] - base_a
                 for t in np.linspace(0.0, 1.0, grid))
    gain_b = max(expected_payoff_quantum(params, p, t, gamma)[1] - base_b
                 for t in np.linspace(0.0, 1.0, grid))
    return gain_a, gain_b
