"""Parametrized symmetric 2x2 dilemmas: construction, classification, payoffs, Nash equilibria.

The base game is normalized so mutual cooperation pays 1 and mutual defection
pays 0. Two strength parameters remain: ``d_g`` (gain from defecting against a
cooperator) and ``d_r`` (loss from cooperating against a defector), both in
[-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "DilemmaParams",
    "StrategyProfile",
    "PayoffMatrix2x2",
    "DilemmaKind",
    "DilemmaClass",
    "NashEquilibriumRecord",
    "build_dilemma_matrix",
    "classify_dilemma",
    "expected_payoff_classical",
    "enumerate_pure_ne",
    "verify_mixed_ne",
]


@dataclass(frozen=True)
class DilemmaParams:
    """Dilemma strength parameters (d_g, d_r), each in [-1, 1]."""

    d_g: float
    d_r: float

    def __post_init__(self):
        if not (-1.0 <= self.d_g <= 1.0):
            raise ValueError(f"d_g must lie in [-1, 1], got {self.d_g}")
        if not (-1.0 <= self.d_r <= 1.0):
            raise ValueError(f"d_r must lie in [-1, 1], got {self.d_r}")


@dataclass(frozen=True)
class StrategyProfile:
    """Mixed profile: p (q) is player A's (B's) weight on the first action."""

    p: float
    q: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not (0.0 <= self.q <= 1.0):
            raise ValueError(f"q must lie in [0, 1], got {self.q}")


class PayoffMatrix2x2:
    """General 2x2 bimatrix.

    ``entries`` is row-major, one ``(a, b)`` payoff pair per cell; row index is
    player A's action, column index player B's. Row/column 0 carry the first
    action label (C by default).
    """

    def __init__(self, entries, labels=("C", "D")):
        arr = np.asarray(entries, dtype=float)
        if arr.shape != (2, 2, 2):
            raise ValueError(f"expected 2x2 entries of payoff pairs, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("payoff entries must be finite")
        self.a = arr[:, :, 0].copy()
        self.b = arr[:, :, 1].copy()
        self.a.setflags(write=False)
        self.b.setflags(write=False)
        self.labels = (str(labels[0]), str(labels[1]))

    def payoff(self, row: int, col: int) -> tuple[float, float]:
        return float(self.a[row, col]), float(self.b[row, col])

    def expected_payoffs(self, p: float, q: float) -> tuple[float, float]:
        """Expected payoff pair when A (B) plays the first action with weight p (q)."""
        w = np.outer([p, 1.0 - p], [q, 1.0 - q])
        return float(np.sum(self.a * w)), float(np.sum(self.b * w))

    def is_pure_ne(self, row: int, col: int, tol: float = 0.0) -> bool:
        """Weak best-response check of the cell; ties within tol count."""
        return (self.a[row, col] >= self.a[1 - row, col] - tol
                and self.b[row, col] >= self.b[row, 1 - col] - tol)

    def scaled(self, k: float) -> "PayoffMatrix2x2":
        entries = np.stack([self.a * k, self.b * k], axis=-1)
        return PayoffMatrix2x2(entries, self.labels)

    def with_swapped_labels(self) -> "PayoffMatrix2x2":
        """Consistently permute both players' action labels."""
        entries = np.stack([self.a[::-1, ::-1], self.b[::-1, ::-1]], axis=-1)
        return PayoffMatrix2x2(entries, (self.labels[1], self.labels[0]))

    def __repr__(self):
        return f"PayoffMatrix2x2(labels={self.labels}, a={self.a.tolist()}, b={self.b.tolist()})"


class DilemmaKind(Enum):
    PD = "PD"
    CH = "CH"
    SH = "SH"
    TRIVIAL = "TRIVIAL"


@dataclass(frozen=True)
class DilemmaClass:
    kind: DilemmaKind
    boundary: bool = False


@dataclass(frozen=True)
class NashEquilibriumRecord:
    profile: StrategyProfile
    payoffs: tuple[float, float]
    kind: str  # "pure" or "mixed"


def build_dilemma_matrix(params: DilemmaParams) -> PayoffMatrix2x2:
    """Payoff matrix of the normalized dilemma: (C,C)=(1,1), (D,D)=(0,0)."""
    dg, dr = params.d_g, params.d_r
    entries = [
        [(1.0, 1.0), (-dr, 1.0 + dg)],
        [(1.0 + dg, -dr), (0.0, 0.0)],
    ]
    return PayoffMatrix2x2(entries, labels=("C", "D"))


def classify_dilemma(params: DilemmaParams) -> DilemmaClass:
    """Classify by the signs of (d_g, d_r): PD, CH, SH or TRIVIAL.

    A zero parameter sets the boundary flag and the class follows the limiting
    weak-equilibrium structure, which is that of the adjacent class with the
    richer equilibrium set (e.g. d_g=0, d_r>0 -> SH; d_r=0, d_g>0 -> CH).
    """
    dg, dr = params.d_g, params.d_r
    boundary = dg == 0.0 or dr == 0.0
    if dg > 0 and dr > 0:
        kind = DilemmaKind.PD
    elif dg > 0 and dr < 0:
        kind = DilemmaKind.CH
    elif dg < 0 and dr > 0:
        kind = DilemmaKind.SH
    elif dg < 0 and dr < 0:
        kind = DilemmaKind.TRIVIAL
    elif dg == 0.0 and dr == 0.0:
        kind = DilemmaKind.TRIVIAL
    elif dg == 0.0:
        kind = DilemmaKind.SH if dr > 0 else DilemmaKind.CH
    else:  # dr == 0
        kind = DilemmaKind.CH if dg > 0 else DilemmaKind.SH
    return DilemmaClass(kind, boundary)


def expected_payoff_classical(params: DilemmaParams, profile: StrategyProfile) -> tuple[float, float]:
    """Expected payoffs of the mixed-strategy classical game.

    A's payoff is (d_r - d_g) p q - d_r p + (1 + d_g) q; B's is the same with
    p and q exchanged.
    """
    dg, dr = params.d_g, params.d_r
    p, q = profile.p, profile.q
    pay_a = (dr - dg) * p * q - dr * p + (1.0 + dg) * q
    pay_b = (dr - dg) * p * q - dr * q + (1.0 + dg) * p
    return pay_a, pay_b


def enumerate_pure_ne(matrix: PayoffMatrix2x2, tol: float = 0.0) -> list[NashEquilibriumRecord]:
    """All pure-strategy NEs of the bimatrix; ties (within tol) count as equilibria."""
    records = []
    for row in range(2):
        for col in range(2):
            if matrix.is_pure_ne(row, col, tol):
                profile = StrategyProfile(p=1.0 - row, q=1.0 - col)
                records.append(NashEquilibriumRecord(profile, matrix.payoff(row, col), "pure"))
    return records


def verify_mixed_ne(params: DilemmaParams, profile: StrategyProfile, tol: float = 1e-9) -> bool:
    """True iff no unilateral deviation gains more than tol.

    Payoffs are affine in each player's own weight, so checking the two pure
    deviations of each player suffices.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    base_a, base_b = expected_payoff_classical(params, profile)
    for p_dev in (0.0, 1.0):
        dev_a, _ = expected_payoff_classical(params, StrategyProfile(p_dev, profile.q))
        if dev_a > base_a + tol:
            return False
    for q_dev in (0.0, 1.0):
        _, dev_b = expected_payoff_classical(params, StrategyProfile(profile.p, q_dev))
        if dev_b > base_b + tol:
            return False
    return True
