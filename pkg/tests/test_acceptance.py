"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -v -s tests/test_acceptance.py` to see the per-criterion
lines as they complete. Every tolerance is pinned here; nothing is deferred
to later calibration. All criteria run on the canonical seed.
"""

import os
import statistics

import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from markofflab import auditors, experiments, matseq, realfield
from markofflab.matseq import IDENTITY_REGISTRY, IntPoly, SymMat2
from markofflab.realfield import PrecisionPolicy

GAMMA = 1.6180339887498948482
BASELINE_PATH = os.path.join(os.path.dirname(__file__), "data", "audit_baseline.json")


def _report(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def policy18(seq40):
    return PrecisionPolicy.for_kmax(seq40, 18)


def test_criterion_1_seed_discovery(seq40):
    found = matseq.seed_search(3)
    canonical = [sp for sp in found
                 if sp.x1 == matseq.IDENTITY and sp.x2 == SymMat2(1, 1, 2)]
    ok = len(canonical) == 1 and canonical[0].admissible
    worst = 0.0
    for k in range(10, 21):
        num = gmpy2.log(mpfr(seq40.norm(k + 1), 64))
        den = gmpy2.log(mpfr(seq40.norm(k), 64))
        dev = abs(float(num / den) - GAMMA) / GAMMA
        worst = max(worst, dev)
    ok = ok and worst <= 0.02
    _report(1, ok, f"canonical pair admissible; worst log-norm ratio deviation "
                   f"{worst * 100:.2f}% (<= 2%) over k in [10,20]")


def test_criterion_2_exact_suite(seq40):
    failures = 0
    rows = 0
    for fid, fam in IDENTITY_REGISTRY.items():
        for k in range(max(2, fam.k_min, fam.back + 1), 37):
            if k + fam.fwd > 40:
                continue
            rows += 1
            if not matseq.residual_is_zero(matseq.verify_exact_identity(seq40, fid, k)):
                failures += 1
    for k in range(1, 41):
        t = seq40.term(k)
        if t.x0 * t.x2 - t.x1 * t.x1 != 1 or t.to_flat()[1] != t.to_flat()[2]:
            failures += 1
    for k in range(2, 39):
        expect = tuple(3 * seq40.x(k, 0) * seq40.term(k + 1).to_flat()[i]
                       - seq40.term(k - 1).to_flat()[i] for i in range(4))
        if expect != seq40.term(k + 2).to_flat():
            failures += 1
    _report(2, failures == 0,
            f"{len(IDENTITY_REGISTRY)} identity families, {rows} rows over k in [2,36], "
            f"determinant/symmetry/recurrence-equivalence to k=40, failures={failures}")


def test_criterion_3_q_suite_exact_parts(seq40):
    bad = []
    for k in range(2, 39):
        comb = matseq.q_three_term(seq40, k)
        if comb.coefficients != (-2 * matseq.sign_pow(k),):
            bad.append(("three-term", k))
        qk = matseq.q_polynomial(seq40, k)
        if qk.content not in (1, 2):
            bad.append(("content", k))
        if qk.coeff(2) != matseq.sign_pow(k - 1) * seq40.x(k - 1, 0):
            bad.append(("leading", k))
    _report("3 (exact parts)", not bad,
            f"three-term == -2(-1)^k, content in {{1,2}}, leading coefficients, "
            f"k in [2,38]; failures={bad}")


def test_criterion_3_q5_value_window(seq40):
    # Literal criterion: the enclosure of Q_5(xi) intersects [-6.0e-5, -5.6e-5].
    # Honest evaluation (exact coefficients 5T^2+9T-7, xi beyond 128 bits,
    # width <= 1e-6) gives Q_5(xi) = -5.3098e-5, outside that window; the
    # window traces to evaluating at xi truncated to six decimal digits.
    # The assert is kept as specified and is expected to fail.
    q5 = matseq.q_polynomial(seq40, 5)
    assert q5.coefficients == (-7, 9, 5)
    pol = PrecisionPolicy.for_kmax(seq40, 12)
    xi = realfield.xi_enclosure(seq40, 12, pol)
    ball = realfield.eval_int_poly(q5, xi)
    assert mpq(ball.radius) < mpq(1, 10**6)
    window_lo, window_hi = mpq(-60, 10**6), mpq(-56, 10**6)
    intersects = ball.lo <= window_hi and window_lo <= ball.hi
    _report("3 (Q5 window)", intersects,
            f"enclosure of Q_5(xi) = [{float(ball.lo):.6e}, {float(ball.hi):.6e}] "
            f"vs window [-6.0e-5, -5.6e-5]")


def test_criterion_4_gcd_theorem(seq40):
    bad = [k for k in range(2, 35)
           if not matseq.gcd_content_check(seq40, k).all_equal]
    at3 = matseq.gcd_content_check(seq40, 3)
    ok = not bad and (at3.g_A, at3.g_E, at3.content_Q) == (2, 2, 2)
    _report(4, ok, f"all_equal for k in [2,34] (violations: {bad}); "
                   f"k=3 gives ({at3.g_A},{at3.g_E},{at3.content_Q}) == (2,2,2)")


def test_criterion_5_mj_reproduction(seq40):
    pol = PrecisionPolicy.for_kmax(seq40, 16)
    got = {}
    for j, threshold in ((1, 50.0), (2, 50.0), (3, 50.0),
                         (4, 200.0), (5, 1000.0), (6, 4000.0)):
        res = experiments.mj_search(seq40, j, 4000, pol, window=(6, 16),
                                    threshold=threshold)
        got[j] = (res.m, res.unique_in_bound)
    expected = {1: 2, 2: 6, 3: 20, 4: 80, 5: 360, 6: 1840}
    ok = all(got[j] == (expected[j], True) for j in expected)
    _report(5, ok, "m_1..m_6 = " + ", ".join(str(got[j][0]) for j in range(1, 7))
            + " (expected 2, 6, 20, 80, 360, 1840), all unique in |m| <= 4000")


def test_criterion_6_audit_stability(seq40, audit_reports):
    failures = []
    for eid, rep in audit_reports.items():
        vals = [mpfr(r.value.center) for r in rep.rows if not r.skipped]
        med = statistics.median(vals)
        if rep.summary["skipped"] != 0:
            failures.append((eid, "skipped rows"))
        if med > 0 and max(vals) > 10 * med:
            failures.append((eid, "max > 10*median"))
        if med == 0 and max(vals) != 0:
            failures.append((eid, "zero median, nonzero max"))
    outcome = auditors.baseline_compare_or_record(BASELINE_PATH, audit_reports)
    if outcome["mismatches"]:
        failures.append(("baseline", outcome["mismatches"]))
    note = "recorded new baseline" if outcome["recorded"] else "matched baseline at 1e-6"
    _report(6, not failures,
            f"{len(audit_reports)} estimates, rows k in [8,20], no skips, "
            f"max <= 10*median, {note}; failures={failures}")


@pytest.fixture(scope="module")
def audit_reports(seq40):
    pol = PrecisionPolicy.for_kmax(seq40, 20)
    return auditors.audit_all(seq40, (8, 20), pol)


@pytest.fixture(scope="module")
def policy16(seq40):
    return PrecisionPolicy.for_kmax(seq40, 16)


def test_criterion_7_accumulation_points(seq40, policy20_acc):
    ds2 = experiments.delta_points(seq40, IntPoly((0, 0, 1)), policy20_acc)
    ok = all(v.contains(0) for v in ds2.values.values())
    ds3 = experiments.delta_points(seq40, experiments.T_CUBED, policy20_acc)
    ok = ok and ds3.period3 is True and policy20_acc.bits >= 4096
    gap = max(abs(mpq(ds3.value(e).center) - mpq(ds3.value(e + 3).center))
              for e in (1, 2, 3))
    ok = ok and gap <= mpq(1, 2**64)
    xi = realfield.xi_at_policy(seq40, policy20_acc)
    x3 = realfield.xi_powers(xi, 3)[3]
    worst_ratio = 0.0
    for ell in (1, 2, 3):
        target = mpq(ds3.value(ell).center)
        rows = []
        for k in range(8, 21):
            if k % 3 != ell % 3:
                continue
            v = realfield.frac_nearest(seq40.x(k, 0) * x3).frac
            rows.append(abs(mpq(v.center) - target) * seq40.norm(k))
        med = statistics.median(rows)
        worst_ratio = max(worst_ratio, float(max(rows) / med))
    ok = ok and worst_ratio <= 10
    _report(7, ok, f"delta(T^2) encloses 0 six times; delta(T^3) period-3 with "
                   f"gap {float(gap):.2e} <= 2^-64; scaled residue spread "
                   f"max/median = {worst_ratio:.2f} <= 10")


@pytest.fixture(scope="module")
def policy20_acc(seq40):
    return PrecisionPolicy.for_kmax(seq40, 20)


def test_criterion_8_convergent_structure(seq40, policy16):
    table = experiments.delta_convergent_table(seq40, 1, policy16)
    found = table.designated_ks()
    missing = [k for k in range(8, 17) if k % 3 != 1 and k not in found]
    low = [(int(r.q), float(r.q_err.center)) for r in table.rows
           if not r.designated and mpq(r.q_err.center) < mpq(5, 100)]
    bad_class = [int(r.q) for r in table.rows
                 if r.designated and r.denominator_class not in ("full", "half")]
    ok = not missing and not low and not bad_class
    _report(8, ok, f"designated convergents at every k in [8,16], k != 1 mod 3 "
                   f"(missing: {missing}); non-designated q|q*delta-p| >= 0.05 "
                   f"(violations: {low})")


def test_criterion_9_degree6_pipeline(seq40, policy18):
    records = experiments.deg6_pipeline(seq40, (8, 18), policy18)
    shape_ok = all(r.poly.coeff(6) == 2 and r.poly.degree == 6
                   and all(r.poly.coeff(i) == 0 for i in (3, 4, 5)) for r in records)
    gcd_ok = all(r.gcd_divides_72 for r in records if 10 <= r.k <= 18)
    scan_min = min(float(r.frac6_times_k.center) for r in records)
    quality = [mpq(r.quality.center) for r in records]
    med = statistics.median(quality)
    hits = sum(1 for q in quality if q <= 10 * med)
    ok = shape_ok and gcd_ok and scan_min <= 76 and hits >= 3
    _report(9, ok, f"every P_k is 2T^6+a2T^2+a1T+a0; gcd(x_(k-3,0), t) | 72 on "
                   f"[10,18]; min k*{{x_k0 xi^6}} = {scan_min:.3f} <= 76; "
                   f"quality within 10x median on {hits} >= 3 rows")


def test_criterion_10_brute_scans(seq40):
    pol = PrecisionPolicy.for_kmax(seq40, 10)
    rep = experiments.brute_scan(seq40, "R", 3, 12, pol)
    ok = rep.certified_positive
    rn = rep.renormalized
    ok = ok and rn["raised"]
    rep2 = experiments.brute_scan(seq40, "R+P", 3, 10, pol)
    ok = ok and rep2.certified_positive
    _report(10, ok,
            f"d<=3 H=12 min |R(xi)|*||R||^gamma^3 = {float(rep.minimum.center):.5e} > 0 "
            f"(certified); removing Q-divisible raises 1+gamma^2-renormalized min "
            f"{float(rn['min_all'].center):.4e} -> {float(rn['min_nondivisible'].center):.4e}; "
            f"R+P min = {float(rep2.minimum.center):.5e} > 0 (certified)")


def test_criterion_11_lagrange_scan(seq40):
    pol = PrecisionPolicy.for_kmax(seq40, 10)
    rep = experiments.lagrange_scan(seq40, 10**6, pol)
    val = float(rep.minimum.center)
    ok = 0.28 <= val <= 0.34
    _report(11, ok, f"min over 10^3 <= n <= 10^6 of n*{{n xi}} = {val:.6f} "
                    f"at n = {rep.argmin_n}, inside [0.28, 0.34]")
