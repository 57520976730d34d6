import numpy as np
import pytest

from qpd_rde.errors import DegenerateDenominator, NotAnEquilibrium, WrongClass
from qpd_rde.game_core import DilemmaParams, PayoffMatrix2x2, build_dilemma_matrix
from qpd_rde.risk_dominance import (
    deviation_losses_asymmetric,
    deviation_losses_symmetric,
    rde_chicken,
    rde_staghunt,
    select_rde_asymmetric,
    select_rde_symmetric,
)


def sh_matrix(dg, dr):
    return build_dilemma_matrix(DilemmaParams(dg, dr))


def test_symmetric_losses_staghunt():
    cc, dd = deviation_losses_symmetric(sh_matrix(-0.6, 0.3))
    assert cc.product == pytest.approx(0.36, abs=1e-12)
    assert dd.product == pytest.approx(0.09, abs=1e-12)

    cc, dd = deviation_losses_symmetric(sh_matrix(-0.3, 0.3))
    assert cc.product == pytest.approx(dd.product, abs=1e-12)
    assert cc.product == pytest.approx(0.09, abs=1e-12)


def test_symmetric_losses_indifferent_deviation():
    # a11 == a21: A loses nothing when B stays and A deviates at (C,C)
    entries = [[(1, 1), (0, 0)], [(1, 0), (2, 2)]]
    cc, _ = deviation_losses_symmetric(PayoffMatrix2x2(entries))
    assert cc.loss_a == 0.0


def test_symmetric_losses_reject_non_ne():
    matrix = build_dilemma_matrix(DilemmaParams(0.5, 0.5))  # (C,C) is not an NE in PD
    with pytest.raises(NotAnEquilibrium):
        deviation_losses_symmetric(matrix)


def test_asymmetric_losses_chicken():
    cd, dc = deviation_losses_asymmetric(build_dilemma_matrix(DilemmaParams(0.5, -0.5)))
    assert cd.product == pytest.approx(0.25, abs=1e-12)
    assert dc.product == pytest.approx(0.25, abs=1e-12)

    cd, dc = deviation_losses_asymmetric(build_dilemma_matrix(DilemmaParams(1.0, -1.0)))
    assert cd.product == pytest.approx(1.0, abs=1e-12)
    assert dc.product == pytest.approx(1.0, abs=1e-12)


def test_asymmetric_losses_zero_component():
    # b12 == b11: B indifferent between staying and deviating at (C,D)
    entries = [[(0, 1), (1, 1)], [(2, 0), (0, 0)]]
    cd, _ = deviation_losses_asymmetric(PayoffMatrix2x2(entries))
    assert cd.loss_b == 0.0


@pytest.mark.parametrize("dg,dr,expect_kind,expect_pq", [
    (-0.6, 0.3, "pure", (1.0, 1.0)),
    (-0.2, 0.4, "pure", (0.0, 0.0)),
    (-0.3, 0.3, "mixed", (0.5, 0.5)),
])
def test_select_rde_symmetric_staghunt(dg, dr, expect_kind, expect_pq):
    outcome = select_rde_symmetric(sh_matrix(dg, dr))
    assert outcome.kind == expect_kind
    assert (outcome.profile.p, outcome.profile.q) == pytest.approx(expect_pq, abs=1e-12)


def test_select_rde_asymmetric_chicken():
    outcome = select_rde_asymmetric(build_dilemma_matrix(DilemmaParams(0.5, -0.5)))
    assert outcome.kind == "mixed"
    assert outcome.profile.p == pytest.approx(0.5, abs=1e-12)

    outcome = select_rde_asymmetric(build_dilemma_matrix(DilemmaParams(0.9, -0.3)))
    assert outcome.profile.p == pytest.approx(0.25, abs=1e-12)
    assert outcome.profile.q == pytest.approx(0.25, abs=1e-12)


def test_degenerate_denominator():
    # diagonal cells tie in every direction: all losses vanish
    entries = [[(0, 0), (0, 0)], [(0, 0), (0, 0)]]
    with pytest.raises(DegenerateDenominator):
        select_rde_symmetric(PayoffMatrix2x2(entries))


@pytest.mark.parametrize("dg,dr,expected", [
    (0.5, -0.5, 0.5),
    (0.9, -0.3, 0.25),
    (0.1, -0.9, 0.9),
])
def test_rde_chicken_closed_form(dg, dr, expected):
    outcome = rde_chicken(DilemmaParams(dg, dr))
    assert outcome.kind == "mixed"
    assert outcome.profile.p == pytest.approx(expected, abs=1e-12)
    assert outcome.profile.q == pytest.approx(expected, abs=1e-12)


def test_rde_chicken_symmetric_strengths():
    for dg in (0.2, 0.4, 0.8):
        outcome = rde_chicken(DilemmaParams(dg, -dg))
        assert outcome.profile.p == pytest.approx(0.5, abs=1e-12)


def test_rde_wrong_class():
    with pytest.raises(WrongClass):
        rde_chicken(DilemmaParams(-0.5, 0.5))
    with pytest.raises(WrongClass):
        rde_staghunt(DilemmaParams(0.5, -0.5))


def test_rde_staghunt_branches():
    assert rde_staghunt(DilemmaParams(-0.6, 0.3)).label == "(C,C)"
    assert rde_staghunt(DilemmaParams(-0.2, 0.4)).label == "(D,D)"
    mixed = rde_staghunt(DilemmaParams(-0.3, 0.3))
    assert mixed.kind == "mixed"
    assert mixed.profile.p == pytest.approx(0.5, abs=1e-12)


def test_specialization_consistency():
    rng = np.random.default_rng(123)
    for _ in range(10_000):
        dg = rng.uniform(1e-3, 1.0)
        dr = -rng.uniform(1e-3, 1.0)
        params = DilemmaParams(dg, dr)
        closed = rde_chicken(params)
        generic = select_rde_asymmetric(build_dilemma_matrix(params))
        assert abs(closed.profile.p - generic.profile.p) < 1e-12
        assert abs(closed.profile.q - generic.profile.q) < 1e-12

    for _ in range(10_000):
        dg = -rng.uniform(1e-3, 1.0)
        dr = rng.uniform(1e-3, 1.0)
        params = DilemmaParams(dg, dr)
        closed = rde_staghunt(params)
        generic = select_rde_symmetric(build_dilemma_matrix(params))
        assert closed.kind == generic.kind
        assert abs(closed.profile.p - generic.profile.p) < 1e-12
        assert abs(closed.profile.q - generic.profile.q) < 1e-12


def test_scale_invariance_of_selection():
    rng = np.random.default_rng(5)
    for _ in range(200):
        dg, dr = -rng.uniform(0.01, 1), rng.uniform(0.01, 1)
        matrix = build_dilemma_matrix(DilemmaParams(dg, dr))
        k = rng.uniform(0.1, 10)
        base = select_rde_symmetric(matrix)
        scaled = select_rde_symmetric(matrix.scaled(k))
        cc, dd = deviation_losses_symmetric(matrix)
        cc_k, dd_k = deviation_losses_symmetric(matrix.scaled(k))
        assert cc_k.product == pytest.approx(k * k * cc.product, rel=1e-12)
        assert dd_k.product == pytest.approx(k * k * dd.product, rel=1e-12)
        if base.kind == "pure":
            assert scaled.label == base.label
        else:
            assert scaled.profile.p == pytest.approx(base.profile.p, abs=1e-12)


def test_mixing_probabilities_in_unit_interval():
    rng = np.random.default_rng(9)
    for _ in range(500):
        dg, dr = -rng.uniform(0.01, 1), rng.uniform(0.01, 1)
        matrix = build_dilemma_matrix(DilemmaParams(dg, dr))
        cc, dd = deviation_losses_symmetric(matrix)
        assert min(cc.loss_a, cc.loss_b, dd.loss_a, dd.loss_b) >= 0
        p = dd.loss_b / (cc.loss_b + dd.loss_b)
        q = dd.loss_a / (cc.loss_a + dd.loss_a)
        assert 0.0 <= p <= 1.0 and 0.0 <= q <= 1.0


def test_label_swap_equivariance():
    rng = np.random.default_rng(17)
    for _ in range(200):
        dg, dr = -rng.uniform(0.01, 1), rng.uniform(0.01, 1)
        matrix = build_dilemma_matrix(DilemmaParams(dg, dr))
        base = select_rde_symmetric(matrix)
        swapped = select_rde_symmetric(matrix.with_swapped_labels())
        assert swapped.profile.p == pytest.approx(1.0 - base.profile.p, abs=1e-12)
        assert swapped.profile.q == pytest.approx(1.0 - base.profile.q, abs=1e-12)
