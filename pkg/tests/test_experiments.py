import pytest
from gmpy2 import mpq

from markofflab.errors import BudgetExceeded, DegreeTooHigh, NotFound
from markofflab.experiments import (
    T_CUBED,
    brute_scan,
    deg6_pipeline,
    delta_convergent_table,
    delta_points,
    lagrange_scan,
    mj_search,
)
from markofflab.matseq import IntPoly


def test_delta_points_of_xi_squared_enclose_zero(seq, policy16):
    ds = delta_points(seq, IntPoly((0, 0, 1)), policy16)
    assert all(v.contains(0) for v in ds.values.values())


def test_delta_points_of_cube_has_period3(seq, policy16):
    ds = delta_points(seq, T_CUBED, policy16)
    assert ds.period3 is True
    for ell in (1, 2, 3):
        a, b = ds.value(ell), ds.value(ell + 3)
        assert abs(mpq(a.center) - mpq(b.center)) <= mpq(a.radius) + mpq(b.radius)
    # all three accumulation points visibly distinct and nonzero
    centers = sorted(float(ds.value(e).center) for e in (1, 2, 3))
    assert centers[0] > 1e-3
    assert centers[2] - centers[0] > 0.1


def test_delta_scaling_congruence(seq, policy16):
    # delta(2*T^3) must equal the fractional distance of 2*(+-delta(T^3)) to Z
    one = delta_points(seq, T_CUBED, policy16)
    two = delta_points(seq, IntPoly((0, 0, 0, 2)), policy16)
    for ell in range(1, 7):
        d1 = mpq(one.value(ell).center)
        d2 = mpq(two.value(ell).center)
        cands = []
        for signed in (2 * d1, -2 * d1):
            fr = signed - (signed.numerator // signed.denominator)
            cands.append(min(fr, 1 - fr))
        tol = 2 * mpq(one.value(ell).radius) + mpq(two.value(ell).radius) + mpq(1, 2**40)
        assert any(abs(d2 - c) <= tol for c in cands), (ell, float(d2), [float(c) for c in cands])


def test_delta_rejects_high_degree(seq, policy16):
    with pytest.raises(DegreeTooHigh):
        delta_points(seq, IntPoly((0,) * 6 + (1,)), policy16)


def test_delta_invariant_under_integer_constant(seq, policy16):
    base = delta_points(seq, T_CUBED, policy16)
    shifted = delta_points(seq, IntPoly((7, 0, 0, 1)), policy16)
    for ell in range(1, 7):
        a, b = base.value(ell), shifted.value(ell)
        assert abs(mpq(a.center) - mpq(b.center)) <= mpq(a.radius) + mpq(b.radius)


def test_convergent_table_designated_rows(seq, policy16):
    table = delta_convergent_table(seq, 1, policy16)
    found = table.designated_ks()
    for k in range(8, 16):
        if k % 3 != 1:
            assert k in found, (k, sorted(found))
    for row in table.rows:
        if row.designated:
            assert row.denominator_class in ("full", "half")
            x0 = abs(seq.x(row.matched_k, 0))
            assert row.q in (x0, x0 // 2)
        else:
            assert mpq(row.q_err.center) >= mpq(5, 100)


def test_mj_small_values(seq, policy16):
    for j, expected in ((1, 2), (2, 6), (3, 20)):
        res = mj_search(seq, j, 60, policy16, window=(6, 12))
        assert res.m == expected
        assert res.unique_in_bound
        assert res.kappa <= 50


def test_mj_not_found_when_bound_too_small(seq, policy16):
    with pytest.raises(NotFound):
        mj_search(seq, 3, 10, policy16, window=(6, 12))


def test_mj_window_invariance_for_proven_constants(seq, policy16):
    for window in ((6, 12), (8, 14), (10, 16)):
        assert mj_search(seq, 1, 30, policy16, window=window).m == 2
        assert mj_search(seq, 2, 30, policy16, window=window).m == 6
        assert mj_search(seq, 3, 30, policy16, window=window).m == 20


def test_deg6_records(seq, policy16):
    records = deg6_pipeline(seq, (8, 12), policy16)
    assert [r.k for r in records] == list(range(8, 13))
    for r in records:
        assert r.poly.coeff(6) == 2
        assert all(r.poly.coeff(i) == 0 for i in (3, 4, 5))
        assert r.gcd_divides_72
        assert r.integer_link_holds
        # root certified close to xi: |xi - alpha_k| tiny but nonzero
        assert mpq(r.root.radius) < mpq(1, 2**64)
        # alpha_rational approximates the sigma-limit up to the mod-Z side:
        # its distance to the nearest integer must reproduce delta_bar
        fr = r.alpha_rational - (r.alpha_rational.numerator // r.alpha_rational.denominator)
        dist = min(fr, 1 - fr)
        assert abs(dist - mpq(r.delta_bar.center)) < mpq(1, 10**4)
        assert 0 <= float(r.frac6_times_k.center) <= r.k / 2 + 1


def test_scan_degree1_example(seq, policy16):
    rep = brute_scan(seq, "R", 1, 1, policy16)
    # min over degree<=1, height<=1 of |R(xi)| * ||R||^exp is |xi - 1| + lower-order
    assert abs(float(rep.minimum.center) - 0.41340) < 1e-4
    assert rep.argmin.coefficients == (-1, 1)
    assert rep.certified_positive


def test_scan_monotone_in_height(seq, policy16):
    small = brute_scan(seq, "R", 2, 4, policy16)
    large = brute_scan(seq, "R", 2, 8, policy16)
    assert mpq(large.minimum.center) <= mpq(small.minimum.center)


def test_scan_dichotomy_d3(seq, policy16):
    rep = brute_scan(seq, "R", 3, 6, policy16)
    assert rep.certified_positive
    assert rep.divisible_by_q_k is not None
    rn = rep.renormalized
    assert rn["raised"]
    assert mpq(rn["min_nondivisible"].center) > mpq(rn["min_all"].center)


def test_scan_budget(seq, policy16):
    with pytest.raises(BudgetExceeded):
        brute_scan(seq, "R", 6, 12, policy16)


def test_scan_r_plus_p(seq, policy16):
    rep = brute_scan(seq, "R+P", 3, 4, policy16)
    assert rep.certified_positive
    assert rep.mode == "R+P"
    assert float(rep.minimum.center) > 0


def test_lagrange_window(seq, policy16):
    rep = lagrange_scan(seq, 10**4, policy16)
    assert rep.argmin_n == 2523
    assert 0.3 < float(rep.minimum.center) < 0.4
    assert len(rep.smallest) == 5
    values = [mpq(v.center) for _, v in rep.smallest]
    assert values == sorted(values)


def test_lagrange_degenerate(seq, policy16):
    rep = lagrange_scan(seq, 1, policy16)
    assert rep.minimum is None and rep.smallest == ()
