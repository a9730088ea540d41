import json

import pytest
from gmpy2 import mpq

from markofflab import auditors
from markofflab.auditors import ESTIMATE_IDS, ESTIMATES, audit_all, audit_estimate
from markofflab.errors import PrecisionExhausted, UnknownEstimate
from markofflab.matseq import IntPoly


def test_registry_is_complete():
    expected = (
        ["L2.3" + c for c in "abcdef"]
        + ["L2.4i", "L2.4ii", "L2.4iii"]
        + [f"L3.1i.j{j}" for j in range(4)]
        + [f"L3.1ii.j{j}" for j in range(6)]
        + ["P3.2", "Q4.1.val", "Q4.1.norm", "Q4.1.deriv", "L5.1a", "L5.1b"]
        + [f"C6.1.j{j}" for j in range(1, 7)]
        + [f"L7.1{r}" for r in ("i", "ii", "iii", "iv", "v")]
        + ["L7.3i", "L7.3ii", "L7.3iii"]
        + ["P7.4.sigma", "C7.5.delta", "P7.6.i", "P7.6.ii", "L7.9i", "L7.9ii"]
    )
    assert sorted(ESTIMATE_IDS) == sorted(expected)
    assert len(ESTIMATE_IDS) == 45


def test_unknown_estimate(seq, policy16):
    with pytest.raises(UnknownEstimate):
        audit_estimate(seq, "L99", (8, 10), policy16)


def test_range_needs_policy_coverage(seq, policy16):
    with pytest.raises(PrecisionExhausted):
        audit_estimate(seq, "L2.3a", (8, policy16.k_max + 1), policy16)


def test_l23a_example_value(seq, policy16):
    # X_4 * |x_{3,0} x_{5,2} xi - A_3| ~ 5 * 0.268
    rep = audit_estimate(seq, "L2.3a", (3, 3), policy16)
    val = float(rep.rows[0].value.center)
    assert abs(val - 1.3397) < 5e-4


def test_q41_value_example(seq, policy16):
    # X_7 * |Q_5(xi)|: frozen from the exact-rational oracle (~2.00000)
    rep = audit_estimate(seq, "Q4.1.val", (5, 5), policy16)
    val = float(rep.rows[0].value.center)
    assert abs(val - 2.00000) < 1e-4


def test_rows_bounded_and_unskipped(seq, policy16):
    reports = audit_all(seq, (8, 14), policy16)
    for eid, rep in reports.items():
        assert rep.summary["skipped"] == 0, eid
        assert rep.summary["trend_ok"], (eid, rep.summary)


def test_factor_four_between_k_and_k_plus_six(seq, policy16):
    reports = audit_all(seq, (8, 16), policy16)
    for eid, rep in reports.items():
        rows = {r.k: mpq(r.value.center) for r in rep.rows if not r.skipped}
        for k in range(8, 11):
            lo, hi = rows[k], rows[k + 6]
            if lo == 0:
                assert hi == 0, (eid, k)
            else:
                assert hi <= 4 * lo, (eid, k, float(lo), float(hi))


def test_audits_are_deterministic(seq, policy16):
    a = audit_estimate(seq, "P7.6.ii", (8, 11), policy16).to_dict()
    b = audit_estimate(seq, "P7.6.ii", (8, 11), policy16).to_dict()
    assert a == b


def test_mod_one_invariance_under_integer_translation(seq, policy16):
    # shifting the difference by an exact integer leaves the row unchanged
    from markofflab import auditors as au

    spec = ESTIMATES["L2.4ii"]
    ctx = au._Ctx(seq, policy16)
    from markofflab.realfield import frac_nearest

    for k in (8, 9):
        plain = frac_nearest(spec.diff(ctx, k)).frac
        shifted = frac_nearest(spec.diff(ctx, k) + 12345).frac
        assert mpq(plain.center) == mpq(shifted.center)


def test_r_parameterized_estimates_accept_poly(seq, policy16):
    rep = audit_estimate(seq, "P3.2", (8, 10), policy16, poly=IntPoly((0, 0, 0, 2)))
    assert rep.summary["skipped"] == 0


def test_one_sided_summary_present(seq, policy16):
    rep = audit_estimate(seq, "L5.1a", (8, 12), policy16)
    extra = rep.summary["one_sided"]
    assert extra["precondition_rows"] == 5
    assert not extra["below_half"]
    assert float(extra["min_scaled_frac"]) >= 0.5


def test_baseline_record_then_match(tmp_path, seq, policy16):
    reports = audit_all(seq, (8, 10), policy16, ids=("L2.3a", "Q4.1.val"))
    path = tmp_path / "baseline.json"
    first = auditors.baseline_compare_or_record(path, reports)
    assert first["recorded"]
    again = auditors.baseline_compare_or_record(path, reports)
    assert not again["recorded"] and not again["mismatches"]
    # perturb the stored value -> mismatch reported
    data = json.loads(path.read_text())
    data["L2.3a"]["max"] = "9.9e+00"
    path.write_text(json.dumps(data))
    third = auditors.baseline_compare_or_record(path, reports)
    assert third["mismatches"]
