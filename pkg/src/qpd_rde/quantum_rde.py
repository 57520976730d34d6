"""Risk-dominant equilibrium selection inside the quantum PD phases.

Covers the transitional phase (d_g > d_r, two asymmetric NEs) and the
coexistence phase (d_r > d_g, mutual defection vs. mutual quantum-cooperation),
plus Situ risk measures, sensitivity analysis of the transitional mixing
probability, the group-benefit entanglement threshold, and the
unilateral-deviation payoff curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DegenerateBase, DegenerateDenominator, OutOfPhase, OutOfRegime
from .ewl import thresholds
from .game_core import DilemmaParams, StrategyProfile
from .risk_dominance import DeviationLossPair, RdeOutcome

__all__ = [
    "SituRisk",
    "SensitivityReport",
    "CriticalAngles",
    "situ_risk_transitional",
    "situ_risk_coexistence",
    "deviation_losses_quantum",
    "rde_transitional",
    "rde_coexistence",
    "select_rde_quantum",
    "transitional_mixing_probability",
    "sensitivity_partials",
    "sensitivity_critical_angles",
    "sensitivity_indices",
    "rde_expected_payoff",
    "group_benefit_threshold",
    "unilateral_deviation_payoffs",
]

PHASE_EPS = 1e-9
TIE_EPS = 1e-9


@dataclass(frozen=True)
class SituRisk:
    """Maximum loss each player at an NE can suffer from the opponent deviating."""

    risk_a: float
    risk_b: float


@dataclass(frozen=True)
class SensitivityReport:
    """Partials and (optionally) indices of the transitional mixing probability."""

    p_star: float
    partial_dg: float
    partial_dr: float
    partial_gamma: float
    index_dg: float | None = None
    index_dr: float | None = None
    index_gamma: float | None = None
    semi_elasticity_gamma: float | None = None


@dataclass(frozen=True)
class CriticalAngles:
    """Angles where the d_g and d_r partials of the mixing probability change sign."""

    gamma_g: float
    gamma_r: float


def _strength_sum(params: DilemmaParams) -> float:
    return 1.0 + params.d_r + params.d_g


def _transitional_band(params: DilemmaParams) -> tuple[float, float]:
    if not (params.d_g > params.d_r > 0.0):
        raise OutOfPhase("transitional phase requires d_g > d_r > 0")
    thr = thresholds(params)
    return thr.gamma1, thr.gamma2


def _check_transitional(params: DilemmaParams, gamma: float) -> None:
    g1, g2 = _transitional_band(params)
    if not (g1 - PHASE_EPS <= gamma <= g2 + PHASE_EPS):
        raise OutOfPhase(f"gamma={gamma} outside transitional band [{g1}, {g2}]")


def _coexistence_band(params: DilemmaParams) -> tuple[float, float]:
    if not (params.d_r > params.d_g > 0.0):
        raise OutOfPhase("coexistence phase requires d_r > d_g > 0")
    thr = thresholds(params)
    return thr.gamma2, thr.gamma1


def _check_coexistence(params: DilemmaParams, gamma: float) -> None:
    g2, g1 = _coexistence_band(params)
    if not (g2 - PHASE_EPS <= gamma <= g1 + PHASE_EPS):
        raise OutOfPhase(f"gamma={gamma} outside coexistence band [{g2}, {g1}]")


def situ_risk_transitional(params: DilemmaParams, gamma: float) -> tuple[SituRisk, SituRisk]:
    """Situ risks at the asymmetric NEs, returned as (at D(x)Q, at Q(x)D).

    At D(x)Q only the defector bears risk; the payoffs are affine in the
    deviating parameter, so the maximum loss is attained at an endpoint.
    """
    _check_transitional(params, gamma)
    loss = 1.0 + params.d_g - _strength_sum(params) * math.sin(gamma) ** 2
    return SituRisk(loss, 0.0), SituRisk(0.0, loss)


def situ_risk_coexistence(params: DilemmaParams, gamma: float) -> tuple[SituRisk, SituRisk]:
    """Situ risks at the symmetric NEs, returned as (at D(x)D, at Q(x)Q)."""
    _check_coexistence(params, gamma)
    loss = 1.0 + params.d_r - _strength_sum(params) * math.sin(gamma) ** 2
    return SituRisk(0.0, 0.0), SituRisk(loss, loss)


def deviation_losses_quantum(params: DilemmaParams, gamma: float, phase: str
                             ) -> tuple[DeviationLossPair, DeviationLossPair]:
    """Closed-form deviation losses at the phase's NE pair.

    ``phase="transitional"`` returns the pairs at (Q(x)D, D(x)Q);
    ``phase="coexistence"`` returns the pairs at (Q(x)Q, D(x)D).
    """
    s2 = math.sin(gamma) ** 2
    total = _strength_sum(params)
    if phase == "transitional":
        _check_transitional(params, gamma)
        loss_hi = params.d_g - total * s2          # deviation loss of the defector
        loss_lo = -params.d_r + total * s2         # deviation loss of the cooperator
        return DeviationLossPair(loss_lo, loss_hi), DeviationLossPair(loss_hi, loss_lo)
    if phase == "coexistence":
        _check_coexistence(params, gamma)
        loss_qq = -params.d_g + total * s2
        loss_dd = params.d_r - total * s2
        return DeviationLossPair(loss_qq, loss_qq), DeviationLossPair(loss_dd, loss_dd)
    raise ValueError(f"phase must be 'transitional' or 'coexistence', got {phase!r}")


def transitional_mixing_probability(params: DilemmaParams, gamma: float) -> float:
    """Mixing probability of the transitional RDE, clamped to [0, 1] at the seams."""
    _check_transitional(params, gamma)
    t = ((-params.d_r + _strength_sum(params) * math.sin(gamma) ** 2)
         / (params.d_g - params.d_r))
    return min(1.0, max(0.0, t))


def rde_transitional(params: DilemmaParams, gamma: float) -> RdeOutcome:
    """Transitional-phase RDE: both players quantum-cooperate with probability p*."""
    t = transitional_mixing_probability(params, gamma)
    return RdeOutcome("mixed", StrategyProfile(t, t), rde_expected_payoff(params, gamma))


def rde_coexistence(params: DilemmaParams, gamma: float, tie_eps: float = TIE_EPS) -> RdeOutcome:
    """Coexistence-phase RDE: D(x)D below gamma_star, Q(x)Q above, U(0.5) pair at it."""
    _check_coexistence(params, gamma)
    g_star = thresholds(params).gamma_star
    if abs(gamma - g_star) <= tie_eps:
        pay = (2.0 + params.d_g - params.d_r) / 4.0
        return RdeOutcome("mixed", StrategyProfile(0.5, 0.5), (pay, pay), "U(0.5)xU(0.5)")
    if gamma < g_star:
        return RdeOutcome("pure", StrategyProfile(0.0, 0.0), (0.0, 0.0), "(D,D)")
    return RdeOutcome("pure", StrategyProfile(1.0, 1.0), (1.0, 1.0), "(Q,Q)")


def select_rde_quantum(params: DilemmaParams, gamma: float) -> tuple[str, RdeOutcome]:
    """Phase label and RDE of the quantum PD at any entanglement angle.

    Outside the multi-equilibrium bands the game has a unique pure NE, which is
    trivially the selection. Requires the quantum-dilemma regime (d_g, d_r > 0).
    """
    if params.d_g <= 0.0 or params.d_r <= 0.0:
        raise OutOfRegime("quantum PD regime requires d_g > 0 and d_r > 0")
    thr = thresholds(params)
    lo, hi = min(thr.gamma1, thr.gamma2), max(thr.gamma1, thr.gamma2)
    if params.d_g > params.d_r and lo - PHASE_EPS <= gamma <= hi + PHASE_EPS:
        return "transitional", rde_transitional(params, gamma)
    if params.d_r > params.d_g and lo - PHASE_EPS <= gamma <= hi + PHASE_EPS:
        return "coexistence", rde_coexistence(params, gamma)
    if gamma < lo:
        return "classical-like", RdeOutcome("pure", StrategyProfile(0.0, 0.0), (0.0, 0.0), "(D,D)")
    if gamma > hi:
        return "fully-quantum", RdeOutcome("pure", StrategyProfile(1.0, 1.0), (1.0, 1.0), "(Q,Q)")
    # d_g == d_r exactly at the common threshold: both deviation-loss products vanish.
    raise DegenerateDenominator("RDE undefined at the common threshold when d_g equals d_r")


def sensitivity_partials(params: DilemmaParams, gamma: float) -> SensitivityReport:
    """Closed-form partials of p* with respect to d_g, d_r and gamma."""
    _check_transitional(params, gamma)
    dg, dr = params.d_g, params.d_r
    s2 = math.sin(gamma) ** 2
    gap2 = (dg - dr) ** 2
    return SensitivityReport(
        p_star=transitional_mixing_probability(params, gamma),
        partial_dg=(dr - (1.0 + 2.0 * dr) * s2) / gap2,
        partial_dr=(-dg + (1.0 + 2.0 * dg) * s2) / gap2,
        partial_gamma=2.0 * _strength_sum(params) * math.sin(gamma) * math.cos(gamma) / (dg - dr),
    )


def sensitivity_critical_angles(params: DilemmaParams) -> CriticalAngles:
    """Sign-change angles of the d_g and d_r partials."""
    if params.d_g <= 0.0 or params.d_r <= 0.0:
        raise OutOfPhase("critical angles require d_g > 0 and d_r > 0")
    return CriticalAngles(
        gamma_g=math.asin(math.sqrt(params.d_r / (1.0 + 2.0 * params.d_r))),
        gamma_r=math.asin(math.sqrt(params.d_g / (1.0 + 2.0 * params.d_g))),
    )


def sensitivity_indices(params: DilemmaParams, gamma: float, tie_eps: float = TIE_EPS
                        ) -> SensitivityReport:
    """Full sensitivity report: elasticities S_x = (dp*/dx) x / p*.

    ``semi_elasticity_gamma`` is (dp*/dgamma)/p*, reported alongside the
    literal gamma elasticity because the two answer different questions.
    """
    partials = sensitivity_partials(params, gamma)
    p_star = partials.p_star
    if p_star <= tie_eps:
        raise DegenerateBase("sensitivity indices undefined where p* vanishes")
    return SensitivityReport(
        p_star=p_star,
        partial_dg=partials.partial_dg,
        partial_dr=partials.partial_dr,
        partial_gamma=partials.partial_gamma,
        index_dg=partials.partial_dg * params.d_g / p_star,
        index_dr=partials.partial_dr * params.d_r / p_star,
        index_gamma=partials.partial_gamma * gamma / p_star,
        semi_elasticity_gamma=partials.partial_gamma / p_star,
    )


def rde_expected_payoff(params: DilemmaParams, gamma: float) -> tuple[float, float]:
    """Equal expected payoffs of the transitional RDE."""
    t = transitional_mixing_probability(params, gamma)
    dg, dr = params.d_g, params.d_r
    pay = (dr - dg) * t * t + (1.0 - dr + dg) * t
    return pay, pay


def group_benefit_threshold(params: DilemmaParams) -> float | None:
    """Smallest transitional angle where the RDE's group benefit beats the other NEs.

    The condition is sin(2 gamma) > sqrt(2(d_r + 2 d_r d_g + d_g))/(1+d_r+d_g);
    the lower crossing is bracketed on the rising part of sin(2 gamma). Returns
    None when the condition never holds on the band.
    """
    g1, g2 = _transitional_band(params)
    dg, dr = params.d_g, params.d_r
    rhs = math.sqrt(2.0 * (dr + 2.0 * dr * dg + dg)) / _strength_sum(params)

    def gap(gamma: float) -> float:
        return math.sin(2.0 * gamma) - rhs

    if gap(g1) > 0.0:
        return g1
    peak = min(g2, math.pi / 4)
    if peak <= g1 or gap(peak) <= 0.0:
        return None
    return float(brentq(gap, g1, peak, xtol=1e-14))


def unilateral_deviation_payoffs(params: DilemmaParams, gamma: float, fixed_a: str,
                                 q: float) -> tuple[float, float]:
    """Payoff pair when A holds a fixed strategy and B plays U(q).

    ``fixed_a`` is "D", "Q" or "half" (A plays U(0.5)). Closed forms; they
    coincide with the general expected payoff at p in {0, 1, 0.5}.
    """
    if not (0.0 <= q <= 1.0):
        raise ValueError(f"q must lie in [0, 1], got {q}")
    dg, dr = params.d_g, params.d_r
    s2 = math.sin(gamma) ** 2
    total = _strength_sum(params)
    if fixed_a == "D":
        return (1.0 + dg - total * s2) * q, (-dr + total * s2) * q
    if fixed_a == "half":
        # reduces to (q + (dg-dr)/4, (2+dg-dr)/4) when total*s2 = (dg+dr)/2
        pay_a = (0.5 * (dr - dg) + 1.0 + dg - total * s2) * q - 0.5 * dr + 0.5 * total * s2
        pay_b = (0.5 * (dr - dg) - dr + total * s2) * q + 0.5 * (1.0 + dg) - 0.5 * total * s2
        return pay_a, pay_b
    if fixed_a == "Q":
        pay_a = (1.0 + dr - total * s2) * q - dr + total * s2
        pay_b = (-dg + total * s2) * q + 1.0 + dg - total * s2
        return pay_a, pay_b
    raise ValueError(f"fixed_a must be 'D', 'Q' or 'half', got {fixed_a!r}")
