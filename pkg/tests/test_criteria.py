import numpy as np
import pytest
from numpy.testing import assert_allclose

from magicsimplex.criteria import (P_THRESHOLD_D3, P_THRESHOLD_D4,
                                   S_THRESHOLD_D3, S_THRESHOLD_D4, Thresholds,
                                   ccnr_closed, ccnr_oracle, choi,
                                   evaluate_batch, feasibility, mub,
                                   ppt_closed, ppt_oracle, profile, sp_oracle,
                                   sp_values, zeta_value)
from magicsimplex.errors import DimensionMismatchError
from magicsimplex.quasirandom import SequenceSpec, point_batch
from magicsimplex.states import QPoint


def feasible_sample(dim, n, start=1):
    """First n feasible stream points, as coordinate rows."""
    spec = SequenceSpec(dim=dim)
    rows = []
    lo = start
    while len(rows) < n:
        Q = point_batch(spec, lo, 200_000)
        feas, _ = evaluate_batch(Q, dim)
        rows.extend(Q[feas])
        lo += 200_000
    return np.array(rows[:n])


def test_threshold_defaults():
    t3 = Thresholds.default(3)
    assert t3.s_threshold == 16 / 9
    assert_allclose(t3.p_threshold, 2.0**27 / (3.0**18 * 7.0**15 * 13.0))
    t4 = Thresholds.default(4)
    assert t4.s_threshold == 9 / 4
    assert_allclose(t4.p_threshold, 3.0**24 / 2.0**134)
    with pytest.raises(DimensionMismatchError):
        Thresholds.default(2)


def test_feasibility():
    assert feasibility(QPoint(3, (0.1, 0.1, 0.1)))
    assert not feasibility(QPoint(3, (0.5, 0.2, 0.1)))
    assert not feasibility(QPoint(3, (-0.1, 0.1, 0.1)))
    assert feasibility(QPoint(4, (0.05, 0.05, 0.05, 0.05)))
    assert not feasibility(QPoint(4, (0.5, 0.1, 0.1, 0.1)))


def test_maximally_mixed_is_separable():
    pr = profile(QPoint(3, (1 / 9, 1 / 9, 1 / 9)), mode="both")
    assert pr.feasible and pr.ppt
    assert not pr.P and not pr.S and not pr.ccnr and not pr.mub and not pr.choi
    assert pr.s == 0.0 and pr.p == 0.0


def test_sp_at_distinguished_points():
    """s and p at the family's distinguished d=3 points."""
    s, p, zeta = sp_values(QPoint(3, (1 / 3, 0.0, 1 / 3)))
    assert_allclose(s, 16 / 9, rtol=1e-14)
    assert p == 0.0
    assert_allclose(zeta, 1.0, rtol=1e-13)

    s, p, _ = sp_values(QPoint(3, (2 / 7, 4 / 21, 0.0)))
    # p matches the exact rational; s is cross-checked against the SVD oracle
    assert_allclose(p, 2.0**28 / (3.0**16 * 7.0**14), rtol=1e-12)
    s_o, p_o = sp_oracle(QPoint(3, (2 / 7, 4 / 21, 0.0)))
    assert_allclose(s, s_o, rtol=1e-12)
    assert_allclose(p, p_o, rtol=1e-10)


def test_sp_d4_distinguished_points():
    s, p, zeta = sp_values(QPoint(4, (3 / 16, 9 / 64, 3 / 64, 0.0)))
    assert zeta is None
    assert_allclose(s, 49 / 16, rtol=1e-12)
    assert_allclose(p, 3.0**24 / 2.0**134, rtol=1e-12)
    s, _, _ = sp_values(QPoint(4, (0.0, 1 / 4, 0.0, 0.0)))
    assert_allclose(s, 9 / 4, rtol=1e-12)


def test_zeta_identity_with_correlation():
    """s from the closed form equals the SVD route on random points."""
    for Q in feasible_sample(3, 50):
        q = QPoint(3, tuple(Q))
        s, p, _ = sp_values(q)
        s_o, p_o = sp_oracle(q)
        assert_allclose(s, s_o, rtol=1e-10)
        assert_allclose(p, p_o, rtol=1e-9, atol=1e-300)


def test_ppt_closed_matches_oracle():
    for Q in feasible_sample(3, 300):
        q = QPoint(3, tuple(Q))
        assert ppt_closed(q) == ppt_oracle(q)[0]
    for Q in feasible_sample(4, 300):
        q = QPoint(4, tuple(Q))
        assert ppt_closed(q) == ppt_oracle(q)[0]


def test_ccnr_equivalences():
    """Closed-form CCNR agrees with the trace-norm oracle and with s > 16/9."""
    for Q in feasible_sample(3, 300):
        q = QPoint(3, tuple(Q))
        c = ccnr_closed(q)
        assert c == ccnr_oracle(q)
        s, _, _ = sp_values(q)
        assert c == (s > 16 / 9)


def test_known_bound_entangled_point():
    """A PPT point caught by both sufficient criteria (boundary of PPT)."""
    pr = profile(QPoint(3, (2 / 7, 4 / 21, 0.0)), mode="both")
    assert pr.ppt and pr.S and pr.P and pr.ccnr
    assert "ppt" in pr.boundary_flags  # sits exactly on the PPT quartic


def test_d4_cited_bound_entangled_point():
    pr = profile(QPoint(4, (5 / 806, 100 / 407, 64 / 36743, 8 / 18805)), mode="both")
    assert pr.feasible and pr.ppt and pr.S


def test_mub_choi_regions():
    # Q1 vertex region: detected by both witnesses
    q = QPoint(3, (0.9, 0.01, 0.01))
    assert mub(q) and choi(q)
    q = QPoint(3, (0.05, 0.05, 0.05))
    assert not mub(q) and not choi(q)


def test_mub_requires_d3():
    with pytest.raises(DimensionMismatchError):
        mub(QPoint(4, (0.05, 0.05, 0.05, 0.05)))


def test_profile_modes():
    q = QPoint(3, (0.3, 0.02, 0.01))
    closed = profile(q, mode="closed")
    oracle = profile(q, mode="oracle")
    assert closed.ppt == oracle.ppt
    assert oracle.min_pt_eigenvalue is not None
    with pytest.raises(ValueError):
        profile(q, mode="fast")


def test_evaluate_batch_matches_scalar():
    Q = feasible_sample(3, 100)
    feas, res = evaluate_batch(Q, 3)
    assert feas.all()
    for i, row in enumerate(Q):
        pr = profile(QPoint(3, tuple(row)))
        assert res["PPT"][i] == pr.ppt
        assert res["MUB"][i] == pr.mub
        assert res["Choi"][i] == pr.choi
        assert res["CCNR"][i] == pr.ccnr
        assert res["P"][i] == pr.P
        assert res["S"][i] == pr.S
        assert_allclose(res["s"][i], pr.s, rtol=1e-13)


def test_evaluate_batch_d4_matches_scalar():
    Q = feasible_sample(4, 50)
    feas, res = evaluate_batch(Q, 4)
    assert feas.all()
    for i, row in enumerate(Q):
        pr = profile(QPoint(4, tuple(row)))
        assert res["PPT"][i] == pr.ppt
        assert res["S"][i] == pr.S
        assert_allclose(res["s"][i], pr.s, rtol=1e-12)


def test_zeta_nonnegative_on_simplex():
    Q = feasible_sample(3, 500)
    assert min(zeta_value(QPoint(3, tuple(row))) for row in Q) > -1e-15
