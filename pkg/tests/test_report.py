import json

import numpy as np
import pytest

from mcsum.chain import validate
from mcsum.report import analyze, report_to_dict
from tests.conftest import (
    FIVE_STATE_UNSORTED,
    FIX5_H,
    FIX5_KEMENY,
    FIX5_M,
    FIX5_PI,
    FIX8_KEMENY,
)


def test_analyze_fix5(fix5):
    rep = analyze(fix5)
    np.testing.assert_allclose(rep.stationary, FIX5_PI, atol=5e-4)
    np.testing.assert_allclose(rep.h_matrix, FIX5_H, atol=5e-4)
    np.testing.assert_allclose(rep.mfpt, FIX5_M, atol=5e-4)
    assert rep.kemeny == pytest.approx(FIX5_KEMENY, abs=5e-3)
    assert rep.kemeny_spread < 1e-9
    assert rep.permutation is None
    assert not rep.condition_warning
    assert max(rep.theorem2_residuals.values()) < 1e-9
    assert max(rep.identity_residuals.values()) < 1e-8


def test_analyze_fix8(fix8):
    rep = analyze(fix8)
    assert rep.kemeny == pytest.approx(FIX8_KEMENY, abs=1e-3)
    assert (0, 1) in rep.ordering.violations["c_vs_pi"]
    assert not rep.doubly_stochastic.applicable


def test_analyze_cycle(cycle3):
    rep = analyze(cycle3)
    assert rep.doubly_stochastic.applicable
    assert rep.kemeny == pytest.approx(2.0, abs=1e-12)
    np.testing.assert_allclose(rep.mfpt.sum(axis=1), 6.0, atol=1e-12)


def test_analyze_reorder_records_permutation(fix5):
    tm = validate(FIVE_STATE_UNSORTED)
    rep = analyze(tm, reorder=True)
    assert rep.permutation == (4, 0, 1, 3, 2)
    assert rep.labels == ("5", "1", "2", "4", "3")
    np.testing.assert_allclose(rep.p, fix5.p, atol=1e-15)
    np.testing.assert_allclose(rep.stationary, FIX5_PI, atol=5e-4)


def test_analyze_reorder_on_sorted_is_identity(fix8):
    rep = analyze(fix8, reorder=True)
    assert rep.permutation == tuple(range(8))


def test_analyze_deterministic(fix8):
    a = json.dumps(report_to_dict(analyze(fix8)), sort_keys=False)
    b = json.dumps(report_to_dict(analyze(fix8)), sort_keys=False)
    assert a == b


def test_report_dict_round_trips(fix5):
    d = report_to_dict(analyze(fix5))
    blob = json.dumps(d)
    back = json.loads(blob)
    assert back["m"] == 5
    assert back["labels"] == ["1", "2", "3", "4", "5"]
    np.testing.assert_allclose(np.array(back["p"]), fix5.p, atol=0)
    np.testing.assert_allclose(np.array(back["mfpt"]), FIX5_M, atol=5e-4)
    assert set(back["bounds"]) >= {"kemeny_margin", "trace_h_margin", "pi_upper_margins"}
    assert back["doubly_stochastic"]["applicable"] is False
    assert list(back["ordering"]["signs"]) == [
        "colsum", "pi", "h_diag", "z_diag", "m_col_total", "m_row_total",
    ]


def test_kemeny_variants_consistent(fix5, fix8, cycle3):
    for tm in (fix5, fix8, cycle3):
        rep = analyze(tm)
        values = list(rep.kemeny_variants.values())
        assert max(values) - min(values) < 1e-9
        assert rep.kemeny == rep.kemeny_variants["fundamental"]


def test_condition_warning_on_near_reducible_chain():
    eps = 1e-10
    tm = validate(np.array([[1.0 - eps, eps], [eps, 1.0 - eps]]))
    rep = analyze(tm)
    assert rep.condition_warning
    assert rep.condition_estimate > 1e8
