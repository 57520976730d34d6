"""Harsanyi-Selten risk dominance for 2x2 bimatrix games with two NEs.

At each candidate equilibrium the deviation loss of a player is the payoff
drop the *opponent's* unilateral deviation inflicts on the deviator; the
equilibrium whose product of deviation losses is larger is risk dominant.
Ties select the mixed profile built from the loss ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateDenominator, NotAnEquilibrium, WrongClass
from .game_core import (
    DilemmaKind,
    DilemmaParams,
    PayoffMatrix2x2,
    StrategyProfile,
    build_dilemma_matrix,
    classify_dilemma,
    expected_payoff_classical,
)

__all__ = [
    "DeviationLossPair",
    "RdeOutcome",
    "deviation_losses_symmetric",
    "deviation_losses_asymmetric",
    "select_rde_symmetric",
    "select_rde_asymmetric",
    "rde_chicken",
    "rde_staghunt",
]

TIE_EPS = 1e-9

# Tolerance for the NE precondition check; exact ties are legitimate weak NEs.
_NE_TOL = 1e-9


@dataclass(frozen=True)
class DeviationLossPair:
    """Per-player deviation losses at one equilibrium and their product."""

    loss_a: float
    loss_b: float

    @property
    def product(self) -> float:
        return self.loss_a * self.loss_b


@dataclass(frozen=True)
class RdeOutcome:
    """Selected risk-dominant equilibrium on the owning game."""

    kind: str  # "pure" or "mixed"
    profile: StrategyProfile
    payoffs: tuple[float, float]
    label: str | None = None


def _require_ne(matrix: PayoffMatrix2x2, cells) -> None:
    for row, col in cells:
        if not matrix.is_pure_ne(row, col, tol=_NE_TOL):
            la, lb = matrix.labels[row], matrix.labels[col]
            raise NotAnEquilibrium(f"cell ({la},{lb}) is not a Nash equilibrium")


def deviation_losses_symmetric(matrix: PayoffMatrix2x2) -> tuple[DeviationLossPair, DeviationLossPair]:
    """Deviation losses at the diagonal NEs, returned as (at (C,C), at (D,D))."""
    _require_ne(matrix, [(0, 0), (1, 1)])
    a, b = matrix.a, matrix.b
    cc = DeviationLossPair(float(a[0, 0] - a[1, 0]), float(b[0, 0] - b[0, 1]))
    dd = DeviationLossPair(float(a[1, 1] - a[0, 1]), float(b[1, 1] - b[1, 0]))
    return cc, dd


def deviation_losses_asymmetric(matrix: PayoffMatrix2x2) -> tuple[DeviationLossPair, DeviationLossPair]:
    """Deviation losses at the off-diagonal NEs, returned as (at (C,D), at (D,C))."""
    _require_ne(matrix, [(0, 1), (1, 0)])
    a, b = matrix.a, matrix.b
    cd = DeviationLossPair(float(a[0, 1] - a[1, 1]), float(b[0, 1] - b[0, 0]))
    dc = DeviationLossPair(float(a[1, 0] - a[0, 0]), float(b[1, 0] - b[1, 1]))
    return cd, dc


def _pure_outcome(matrix: PayoffMatrix2x2, row: int, col: int) -> RdeOutcome:
    profile = StrategyProfile(p=1.0 - row, q=1.0 - col)
    label = f"({matrix.labels[row]},{matrix.labels[col]})"
    return RdeOutcome("pure", profile, matrix.payoff(row, col), label)


def _mixed_outcome(matrix: PayoffMatrix2x2, p: float, q: float) -> RdeOutcome:
    profile = StrategyProfile(p, q)
    return RdeOutcome("mixed", profile, matrix.expected_payoffs(p, q))


def select_rde_symmetric(matrix: PayoffMatrix2x2, tie_eps: float = TIE_EPS) -> RdeOutcome:
    """Risk-dominant selection between the diagonal NEs (C,C) and (D,D)."""
    cc, dd = deviation_losses_symmetric(matrix)
    diff = cc.product - dd.product
    if diff > tie_eps:
        return _pure_outcome(matrix, 0, 0)
    if diff < -tie_eps:
        return _pure_outcome(matrix, 1, 1)
    denom_p = cc.loss_b + dd.loss_b
    denom_q = cc.loss_a + dd.loss_a
    if abs(denom_p) <= tie_eps or abs(denom_q) <= tie_eps:
        raise DegenerateDenominator("tie with vanishing loss sums; mixed profile undefined")
    return _mixed_outcome(matrix, dd.loss_b / denom_p, dd.loss_a / denom_q)


def select_rde_asymmetric(matrix: PayoffMatrix2x2, tie_eps: float = TIE_EPS) -> RdeOutcome:
    """Risk-dominant selection between the off-diagonal NEs (C,D) and (D,C)."""
    cd, dc = deviation_losses_asymmetric(matrix)
    diff = cd.product - dc.product
    if diff > tie_eps:
        return _pure_outcome(matrix, 0, 1)
    if diff < -tie_eps:
        return _pure_outcome(matrix, 1, 0)
    denom_p = cd.loss_b + dc.loss_b
    denom_q = dc.loss_a + cd.loss_a
    if abs(denom_p) <= tie_eps or abs(denom_q) <= tie_eps:
        raise DegenerateDenominator("tie with vanishing loss sums; mixed profile undefined")
    return _mixed_outcome(matrix, dc.loss_b / denom_p, cd.loss_a / denom_q)


def rde_chicken(params: DilemmaParams) -> RdeOutcome:
    """Closed-form chicken RDE: the symmetric mixed profile -d_r/(-d_r + d_g)."""
    if classify_dilemma(params).kind is not DilemmaKind.CH:
        raise WrongClass(f"({params.d_g}, {params.d_r}) is not a chicken game")
    t = -params.d_r / (-params.d_r + params.d_g)
    profile = StrategyProfile(t, t)
    return RdeOutcome("mixed", profile, expected_payoff_classical(params, profile))


def rde_staghunt(params: DilemmaParams, tie_eps: float = TIE_EPS) -> RdeOutcome:
    """Closed-form stag-hunt RDE: (C,C) if |d_g|>d_r, (D,D) if |d_g|<d_r, else (0.5, 0.5)."""
    if classify_dilemma(params).kind is not DilemmaKind.SH:
        raise WrongClass(f"({params.d_g}, {params.d_r}) is not a stag-hunt game")
    matrix = build_dilemma_matrix(params)
    diff = abs(params.d_g) - params.d_r
    if diff > tie_eps:
        return _pure_outcome(matrix, 0, 0)
    if diff < -tie_eps:
        return _pure_outcome(matrix, 1, 1)
    return _mixed_outcome(matrix, 0.5, 0.5)
