import math

import numpy as np
import pytest

from qpd_rde.game_core import (
    DilemmaKind,
    DilemmaParams,
    StrategyProfile,
    build_dilemma_matrix,
    classify_dilemma,
    enumerate_pure_ne,
    expected_payoff_classical,
    verify_mixed_ne,
)


def test_params_validation():
    DilemmaParams(1.0, -1.0)
    with pytest.raises(ValueError):
        DilemmaParams(1.5, 0.0)
    with pytest.raises(ValueError):
        DilemmaParams(0.0, -1.1)


def test_profile_validation():
    with pytest.raises(ValueError):
        StrategyProfile(-0.1, 0.5)
    with pytest.raises(ValueError):
        StrategyProfile(0.5, 1.1)


@pytest.mark.parametrize("dg,dr,expected", [
    (0.5, 0.5, [[(1, 1), (-0.5, 1.5)], [(1.5, -0.5), (0, 0)]]),
    (0.0, 0.0, [[(1, 1), (0, 1)], [(1, 0), (0, 0)]]),
    (0.9, 0.2, [[(1, 1), (-0.2, 1.9)], [(1.9, -0.2), (0, 0)]]),
])
def test_build_dilemma_matrix(dg, dr, expected):
    matrix = build_dilemma_matrix(DilemmaParams(dg, dr))
    for row in range(2):
        for col in range(2):
            assert matrix.payoff(row, col) == pytest.approx(expected[row][col], abs=1e-15)
    assert matrix.labels == ("C", "D")


@pytest.mark.parametrize("dg,dr,kind,boundary", [
    (0.5, 0.5, DilemmaKind.PD, False),
    (0.5, -0.5, DilemmaKind.CH, False),
    (-0.5, 0.5, DilemmaKind.SH, False),
    (-0.5, -0.5, DilemmaKind.TRIVIAL, False),
    (0.0, 0.5, DilemmaKind.SH, True),
    (0.0, -0.5, DilemmaKind.CH, True),
    (0.5, 0.0, DilemmaKind.CH, True),
    (-0.5, 0.0, DilemmaKind.SH, True),
    (0.0, 0.0, DilemmaKind.TRIVIAL, True),
])
def test_classify_dilemma(dg, dr, kind, boundary):
    cls = classify_dilemma(DilemmaParams(dg, dr))
    assert cls.kind is kind
    assert cls.boundary is boundary


def test_classification_totality():
    rng = np.random.default_rng(7)
    for dg, dr in rng.uniform(-1, 1, size=(500, 2)):
        cls = classify_dilemma(DilemmaParams(dg, dr))
        assert cls.kind in DilemmaKind


def test_expected_payoff_examples():
    assert expected_payoff_classical(DilemmaParams(0.3, -0.8), StrategyProfile(1, 1)) == (1.0, 1.0)
    pay = expected_payoff_classical(DilemmaParams(0.9, 0.2), StrategyProfile(0, 1))
    assert pay == pytest.approx((1.9, -0.2), abs=1e-15)
    pay = expected_payoff_classical(DilemmaParams(0.9, 0.2), StrategyProfile(0.5, 0.5))
    assert pay == pytest.approx((0.675, 0.675), abs=1e-15)


def test_expected_payoff_matches_matrix_corners():
    rng = np.random.default_rng(11)
    for dg, dr in rng.uniform(-1, 1, size=(50, 2)):
        params = DilemmaParams(dg, dr)
        matrix = build_dilemma_matrix(params)
        for (p, q), (row, col) in [((1, 1), (0, 0)), ((1, 0), (0, 1)),
                                   ((0, 1), (1, 0)), ((0, 0), (1, 1))]:
            pay = expected_payoff_classical(params, StrategyProfile(p, q))
            assert pay == pytest.approx(matrix.payoff(row, col), abs=1e-15)


def test_payoff_symmetry_and_bilinearity():
    rng = np.random.default_rng(3)
    grid = np.linspace(0, 1, 9)
    for dg, dr in rng.uniform(-1, 1, size=(20, 2)):
        params = DilemmaParams(dg, dr)
        for p in grid:
            for q in grid:
                pa, pb = expected_payoff_classical(params, StrategyProfile(p, q))
                qa, qb = expected_payoff_classical(params, StrategyProfile(q, p))
                assert pa == pytest.approx(qb, abs=1e-12)
                assert pb == pytest.approx(qa, abs=1e-12)
        # second differences along each own-probability axis vanish
        for q in grid:
            vals = [expected_payoff_classical(params, StrategyProfile(p, q))[0]
                    for p in (0.0, 0.5, 1.0)]
            assert abs(vals[0] - 2 * vals[1] + vals[2]) < 1e-12


@pytest.mark.parametrize("dg,dr,expected", [
    (0.5, 0.5, {(0.0, 0.0)}),
    (0.5, -0.5, {(0.0, 1.0), (1.0, 0.0)}),
    (-0.5, 0.5, {(1.0, 1.0), (0.0, 0.0)}),
])
def test_enumerate_pure_ne(dg, dr, expected):
    matrix = build_dilemma_matrix(DilemmaParams(dg, dr))
    found = {(rec.profile.p, rec.profile.q) for rec in enumerate_pure_ne(matrix)}
    assert found == expected


def test_pd_ne_payoff():
    matrix = build_dilemma_matrix(DilemmaParams(0.5, 0.5))
    (rec,) = enumerate_pure_ne(matrix)
    assert rec.payoffs == (0.0, 0.0)
    assert rec.kind == "pure"


def test_verify_mixed_ne_examples():
    assert verify_mixed_ne(DilemmaParams(0.5, 0.5), StrategyProfile(0, 0))
    assert not verify_mixed_ne(DilemmaParams(0.5, 0.5), StrategyProfile(1, 1))
    assert verify_mixed_ne(DilemmaParams(0.5, -0.5), StrategyProfile(0.5, 0.5))


def test_verify_mixed_ne_grid_oracle():
    # independent check of the CH indifference point against all grid deviations
    params = DilemmaParams(0.5, -0.5)
    base = expected_payoff_classical(params, StrategyProfile(0.5, 0.5))
    for t in np.linspace(0, 1, 1001):
        assert expected_payoff_classical(params, StrategyProfile(t, 0.5))[0] <= base[0] + 1e-9
        assert expected_payoff_classical(params, StrategyProfile(0.5, t))[1] <= base[1] + 1e-9


def test_enumerate_agrees_with_verify_on_pure_profiles():
    rng = np.random.default_rng(42)
    for dg, dr in rng.uniform(-1, 1, size=(1000, 2)):
        params = DilemmaParams(dg, dr)
        matrix = build_dilemma_matrix(params)
        enumerated = {(rec.profile.p, rec.profile.q) for rec in enumerate_pure_ne(matrix, tol=1e-9)}
        for p in (0.0, 1.0):
            for q in (0.0, 1.0):
                assert ((p, q) in enumerated) == verify_mixed_ne(params, StrategyProfile(p, q))


def test_matrix_helpers():
    matrix = build_dilemma_matrix(DilemmaParams(0.9, 0.2))
    assert matrix.expected_payoffs(1.0, 0.0) == pytest.approx((-0.2, 1.9), abs=1e-15)
    swapped = matrix.with_swapped_labels()
    assert swapped.labels == ("D", "C")
    assert swapped.payoff(1, 1) == (1.0, 1.0)
    scaled = matrix.scaled(2.0)
    assert scaled.payoff(0, 1) == pytest.approx((-0.4, 3.8), abs=1e-15)
