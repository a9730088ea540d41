"""Desk-scale experiments: accumulation points, convergent structure, the
integer translation constants m_j, the degree-6 construction, brute-force
minimum scans, and the Lagrange-constant scan.

Real quantities are computed as enclosures; scans rank candidates by float
midpoints and certify only the final minimum with ball arithmetic
(lexicographic coefficient order breaks ties).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import gmpy2
import numpy as np
from gmpy2 import mpfr, mpq, mpz

from .errors import (
    BudgetExceeded,
    DegreeTooHigh,
    NotFound,
    PrecisionExhausted,
)
from .matseq import (
    DEFAULT_K_CAP,
    IntPoly,
    MarkoffSequence,
    derived_scalars,
    q_polynomial,
    sign_pow,
)
from .realfield import (
    Enclosure,
    PrecisionPolicy,
    ball_log,
    ball_pow,
    continued_fraction,
    convergents,
    eval_int_poly,
    frac_nearest,
    gamma_power,
    refine_root,
    xi_at_policy,
    xi_enclosure,
    xi_powers,
)

T_CUBED = IntPoly((0, 0, 0, 1))


def _mod1(e: Enclosure) -> Enclosure:
    """Reduce an enclosure into [0,1) + radius, center shifted by an exact integer."""
    c = mpq(e.center)
    fl = c.numerator // c.denominator
    shifted = mpfr(c - fl, e.bits)
    slack = abs(mpq(shifted) - (c - fl))
    return Enclosure(shifted, e.radius, e.bits).widened(slack)


def _rounded(e: Enclosure, bits: int) -> Enclosure:
    """The same ball at lower precision (radius grows by the rounding)."""
    if bits >= e.bits:
        return e
    c = mpfr(e.center, bits)
    slack = abs(mpq(c) - mpq(e.center))
    return Enclosure(c, e.radius, bits).widened(slack)


def _nearest_or_none(e: Enclosure) -> Optional[mpz]:
    res = frac_nearest(e)
    return res.nearest


def _tail_constant(seq: MarkoffSequence, r_at_xi: Enclosure, poly_norm, k_top: int) -> mpq:
    """Empirical constant for |{x_{k+6,0}R} - {x_{k,0}R}| * X_k / ||R||, x4 safety."""
    worst = mpq(1)
    for base in (k_top - 12, k_top - 6):
        if base < 1:
            continue
        step = frac_nearest((seq.x(base + 6, 0) - seq.x(base, 0)) * r_at_xi).frac
        scaled = mpq(step.hi) * seq.norm(base) / poly_norm
        worst = max(worst, scaled)
    return 4 * worst


# ---------------------------------------------------------------------------
# accumulation points delta_1..delta_6

@dataclass(frozen=True)
class DeltaSet:
    poly: IntPoly
    values: dict  # residue class 1..6 -> Enclosure
    period3: Optional[bool]

    def value(self, ell: int) -> Enclosure:
        return self.values[ell]


def delta_points(seq: MarkoffSequence, poly: IntPoly, policy: PrecisionPolicy) -> DeltaSet:
    """Six accumulation-point enclosures of ({x_{k,0} R(xi)})_k, k in a fixed
    residue class mod 6; finite-index surrogate with empirically inflated radius."""
    if poly.degree > 5:
        raise DegreeTooHigh(f"delta points need deg <= 5, got {poly.degree}")
    cap = max(DEFAULT_K_CAP, policy.k_max + 6)
    seq.extend(policy.k_max + 6, cap=cap)
    xi = xi_at_policy(seq, policy, cap=cap)
    r_ball = eval_int_poly(poly, xi)
    norm = poly.norm if not poly.is_zero else mpz(1)
    top = policy.k_max + 6
    values = {}
    for ell in range(1, 7):
        k_sur = ell + ((top - ell) // 6) * 6
        c_emp = _tail_constant(seq, r_ball, norm, k_sur)
        v = frac_nearest(seq.x(k_sur, 0) * r_ball).frac
        values[ell] = v.widened(mpq(c_emp * norm, seq.norm(k_sur)))
    period3 = None
    if poly.degree <= 3:
        period3 = all(
            abs(mpq(values[ell].center) - mpq(values[ell + 3].center))
            <= mpq(values[ell].radius) + mpq(values[ell + 3].radius)
            for ell in (1, 2, 3)
        )
    return DeltaSet(poly, values, period3)


# ---------------------------------------------------------------------------
# convergent structure of delta_ell(xi^3)

@dataclass(frozen=True)
class ConvergentRow:
    p: mpz
    q: mpz
    err: Enclosure          # |q*delta - p|
    q_err: Enclosure        # q * |q*delta - p|
    designated: bool
    denominator_class: str  # "full" | "half" | "other"
    matched_k: Optional[int]


@dataclass(frozen=True)
class ConvergentTable:
    ell: int
    delta: Enclosure
    rows: tuple
    k_lo: int
    k_hi: int

    def designated_ks(self) -> set:
        return {r.matched_k for r in self.rows if r.designated}


def delta_convergent_table(seq: MarkoffSequence, ell: int, policy: PrecisionPolicy,
                           max_terms: int = 400) -> ConvergentTable:
    """Certified continued-fraction convergents of delta_ell(xi^3), classified
    by whether the denominator is |x_{k,0}| or |x_{k,0}|/2 for some k != ell mod 3."""
    if ell not in (1, 2, 3):
        raise ValueError("ell must be 1, 2 or 3")
    delta_set = delta_points(seq, T_CUBED, policy)
    # deepest surrogate residue matching ell mod 3 gives the tightest enclosure
    cands = [delta_set.value(e) for e in (ell, ell + 3)]
    delta = min(cands, key=lambda v: mpq(v.radius))
    k_hi = policy.k_max
    need = mpq(1, seq.norm(k_hi)) ** 2 * mpq(1, seq.norm(k_hi - 1))  # ~ X^{-gamma^2-eps}
    if not mpq(delta.radius) < need:
        raise PrecisionExhausted(
            f"delta enclosure radius too wide for convergents up to X_{k_hi}"
        )
    terms = continued_fraction(delta, max_terms)
    q_cap = 4 * seq.norm(k_hi)
    classes = {}
    for k in range(2, min(k_hi + 3, seq.materialized + 1)):
        if k % 3 == ell % 3:
            continue
        x0 = abs(seq.x(k, 0))
        classes[x0] = (k, "full")
        if x0 % 2 == 0:
            classes.setdefault(x0 // 2, (k, "half"))
    rows = []
    for p, q in convergents(terms):
        if q > q_cap:
            break
        err = abs(delta * q - p)
        cls = classes.get(q)
        rows.append(ConvergentRow(
            p=mpz(p), q=mpz(q), err=err, q_err=err * q,
            designated=cls is not None,
            denominator_class=cls[1] if cls else "other",
            matched_k=cls[0] if cls else None,
        ))
    return ConvergentTable(ell, delta, tuple(rows), 2, k_hi)


# ---------------------------------------------------------------------------
# the translation constants m_j

@dataclass(frozen=True)
class MjResult:
    j: int
    m: int
    kappa: float            # max normalized condition value over the window
    unique_in_bound: bool
    m_bound: int
    window: tuple
    threshold: float
    product_cached: dict    # k -> x_{k,0}...x_{k+j-1,0}x_{k+j+1,0}


def mj_search(seq: MarkoffSequence, j: int, m_bound: int, policy: PrecisionPolicy,
              window: tuple = (6, 16), threshold: float = 50.0) -> MjResult:
    """Smallest |m| whose translation condition value stays below `threshold`
    over the window, with a per-k sign choice; scans m in [1, m_bound]."""
    if not 1 <= j <= 6:
        raise DegreeTooHigh("j must be in 1..6")
    if m_bound < 2:
        raise ValueError("m_bound must be >= 2")
    k_lo, k_hi = window
    need_kmax = k_hi + max(0, (j + 1) - 6)
    if policy.k_max < need_kmax:
        policy = PrecisionPolicy.for_kmax(seq, need_kmax, policy.guard_bits)
    cap = max(DEFAULT_K_CAP, policy.k_max + 6)
    seq.extend(k_hi + j + 1, cap=cap)
    xi = xi_at_policy(seq, policy, cap=cap)
    xp = xi_powers(xi, j + 3)

    work_bits = seq.norm(k_hi + 1).bit_length() + 96
    ks = list(range(k_hi, k_lo - 1, -1))  # large k rejects wrong m fastest
    data = []
    products = {}
    for k in ks:
        prod = mpz(1)
        for i in range(k, k + j):
            prod *= seq.x(i, 0)
        prod *= seq.x(k + j + 1, 0)
        products[k] = prod
        f1 = _rounded(_mod1(prod * xp[j + 3]), work_bits)
        f2 = _rounded(_mod1(seq.x(k + 1, 0) * xp[3]), work_bits)
        data.append((k, f1, f2, seq.norm(k + 1)))

    def condition(m: int) -> Optional[float]:
        worst = 0.0
        for k, f1, f2, xk1 in data:
            best = None
            for signed in (f1 + m * f2, f1 - m * f2):
                val = frac_nearest(signed).frac
                bound = mpq(val.hi) * xk1
                if best is None or bound < best:
                    best = bound
            if best > threshold:
                return None
            worst = max(worst, float(mpfr(best, 64)))
        return worst

    found_m, found_kappa = None, None
    unique = True
    for m in range(1, m_bound + 1):
        kappa = condition(m)
        if kappa is None:
            continue
        if found_m is None:
            found_m, found_kappa = m, kappa
        else:
            unique = False
            break
    if found_m is None:
        raise NotFound(f"no m with |m| <= {m_bound} passes for j={j}")
    return MjResult(j=j, m=found_m, kappa=found_kappa, unique_in_bound=unique,
                    m_bound=m_bound, window=window, threshold=threshold,
                    product_cached=products)


# ---------------------------------------------------------------------------
# degree-6 pipeline

@dataclass(frozen=True)
class Deg6Record:
    k: int
    sigma: Enclosure
    delta_bar: Enclosure
    t: mpz                  # nearest integer to x_{k-3,0} * sigma_k
    t_prime: mpz            # nearest integer to x_{k-2,0} * sigma_k
    u: mpz                  # nearest integer to delta_bar - sigma_k
    alpha_rational: mpq
    s_values: dict          # m -> nearest integer to x_{m,0} xi^6, m in {k-1,k,k+1}
    poly: IntPoly
    root: Enclosure
    height_proxy: mpq
    quality: Enclosure
    gcd_t: mpz
    gcd_divides_72: bool
    integer_link_holds: bool
    frac6_times_k: Enclosure
    frac6_times_k_pow: Enclosure


def _sigma_ball(seq, k, xp6) -> Enclosure:
    return (seq.x(k + 6, 0) - seq.x(k, 0)) * xp6


def deg6_pipeline(seq: MarkoffSequence, k_range: tuple, policy: PrecisionPolicy) -> list:
    """Per k: sigma/delta enclosures, the decided integers, the sextic with
    zero coefficients in degrees 3..5, its certified root near xi, and the
    root-quality metric."""
    k_lo, k_hi = k_range
    if k_lo < 5:
        raise PrecisionExhausted("degree-6 records need k >= 5 (reads x_{k-3})")
    if policy.k_max < k_hi:
        policy = PrecisionPolicy.for_kmax(seq, k_hi, policy.guard_bits)
    cap = max(DEFAULT_K_CAP, policy.k_max + 6)
    seq.extend(policy.k_max + 6, cap=cap)
    xi = xi_at_policy(seq, policy, cap=cap)
    xp = xi_powers(xi, 6)
    bits = xi.bits
    gamma2 = gamma_power(2, bits)   # gamma + 1
    gamma7x2 = gamma_power(7, bits) * 2
    top = policy.k_max

    def sigma_rate(k_sur: int) -> mpq:
        """x4 the measured one-step drift of ({sigma_{b+6i}})_i near k_sur."""
        worst = mpq(1)
        for base in (k_sur - 12, k_sur - 6):
            if base < 1:
                continue
            a = frac_nearest(_sigma_ball(seq, base, xp[6])).frac
            b = frac_nearest(_sigma_ball(seq, base + 6, xp[6])).frac
            worst = max(worst, abs(mpq(a.center) - mpq(b.center)) * seq.norm(base))
        return 4 * worst

    out = []
    for k in range(k_lo, k_hi + 1):
        sigma = _sigma_ball(seq, k, xp[6])
        k_sur = k + ((top - k) // 6) * 6
        sur = frac_nearest(_sigma_ball(seq, k_sur, xp[6])).frac
        delta_bar = sur.widened(mpq(sigma_rate(k_sur), seq.norm(k_sur)))

        t = _nearest_or_none(seq.x(k - 3, 0) * sigma)
        t_prime = _nearest_or_none(seq.x(k - 2, 0) * sigma)
        u = _nearest_or_none(delta_bar - sigma)
        s_vals = {m: _nearest_or_none(seq.x(m, 0) * xp[6]) for m in (k - 1, k, k + 1)}
        if t is None or t_prime is None or u is None or None in s_vals.values():
            raise PrecisionExhausted(f"integer decision ambiguous at k={k}")

        sgn = sign_pow(k)
        comb = (q_polynomial(seq, k).scale(s_vals[k - 1])
                - q_polynomial(seq, k + 1).scale(s_vals[k])
                + q_polynomial(seq, k - 1).scale(s_vals[k + 1])).scale(sgn)
        poly = IntPoly((0, 0, 0, 0, 0, 0, 2)) + comb
        if poly.degree != 6 or poly.coeff(6) != 2 or any(poly.coeff(i) != 0 for i in (3, 4, 5)):
            raise AssertionError(f"sextic lost its shape at k={k}: {poly.coefficients}")

        root = refine_root(poly, xi, policy)
        height = mpq(poly.norm, poly.content)
        h_ball = Enclosure.exact(height, bits)
        loglog = ball_log(ball_log(h_ball)) if height > 3 else \
            Enclosure.exact(0, bits)
        quality = abs(xi - root) * ball_pow(h_ball, gamma2) * loglog

        frac6 = frac_nearest(seq.x(k, 0) * xp[6]).frac
        gcd_t = gmpy2.gcd(seq.x(k - 3, 0), t)
        # companion integer with the 36*x_{k-1,2}*xi drift absorbed; the raw
        # nearest integer to x_{k-2,0}*sigma_k (t_prime) sits one huge real away
        companion = _nearest_or_none(
            seq.x(k - 2, 0) * sigma + (36 * sgn) * (seq.x(k - 1, 2) * xi))
        link = companion is not None and (
            seq.x(k - 2, 0) * t ==
            seq.x(k - 3, 0) * companion - 36 * sgn * derived_scalars(seq, k - 3).A)
        out.append(Deg6Record(
            k=k, sigma=sigma, delta_bar=delta_bar, t=t, t_prime=t_prime, u=u,
            alpha_rational=mpq(t, seq.x(k - 3, 0)) + u,
            s_values=s_vals, poly=poly, root=root, height_proxy=height,
            quality=quality, gcd_t=gcd_t, gcd_divides_72=(72 % gcd_t == 0),
            integer_link_holds=bool(link),
            frac6_times_k=frac6 * k,
            frac6_times_k_pow=frac6 * ball_pow(Enclosure.exact(k, bits), gamma7x2),
        ))
    return out


# ---------------------------------------------------------------------------
# brute-force minimum scans

@dataclass(frozen=True)
class ScanReport:
    mode: str
    degree: int
    height_bound: int
    exponent_label: str
    minimum: Enclosure
    argmin: IntPoly
    certified_positive: bool
    candidates: int
    divisible_by_q_k: Optional[int] = None
    renormalized: Optional[dict] = None
    fixed_poly: Optional[IntPoly] = None


def _float_xi(xi: Enclosure) -> float:
    return float(mpfr(xi.center, 64))


def _enumerate_coeffs(n_coeffs: int, height: int) -> np.ndarray:
    rng = np.arange(-height, height + 1, dtype=np.int64)
    grids = np.meshgrid(*([rng] * n_coeffs), indexing="ij")
    coeffs = np.stack([g.ravel() for g in grids], axis=1)  # ascending degree
    return coeffs[~np.all(coeffs == 0, axis=1)]


def _ball_normalized(coeffs, xi: Enclosure, exponent: Enclosure) -> Enclosure:
    poly = IntPoly(tuple(int(c) for c in coeffs))
    val = abs(eval_int_poly(poly, xi))
    norm_ball = Enclosure.exact(poly.norm, xi.bits)
    return val * ball_pow(norm_ball, exponent)


def _rank_and_certify(coeffs: np.ndarray, nv: np.ndarray, xi: Enclosure,
                      exponent: Enclosure, keep: int = 256,
                      skip=None):
    """Smallest normalized value among candidates: float pre-rank, then ball
    certification of the leaders; lexicographic coefficient order breaks ties."""
    order = np.lexsort(tuple(coeffs[:, i] for i in range(coeffs.shape[1] - 1, -1, -1)))
    ranked = order[np.argsort(nv[order], kind="stable")]
    best = None
    checked = 0
    for idx in ranked:
        if skip is not None and skip(coeffs[idx]):
            continue
        ball = _ball_normalized(coeffs[idx], xi, exponent)
        cand = (mpq(ball.center), tuple(int(c) for c in coeffs[idx]), ball)
        if best is None or cand[:2] < best[:2]:
            best = cand
        checked += 1
        if checked >= keep:
            break
    return best


def _divisible_by_some_q(seq: MarkoffSequence, poly: IntPoly, k_hi: int = 10) -> Optional[int]:
    for k in range(2, k_hi + 1):
        if k + 1 > seq.materialized:
            break
        if poly.divisible_by(q_polynomial(seq, k)):
            return k
    return None


def brute_scan(seq: MarkoffSequence, mode: str, d: int, height_bound: int,
               policy: PrecisionPolicy, fixed_poly: Optional[IntPoly] = None,
               budget: int = 4_000_000) -> ScanReport:
    """Exhaustive family scan; see ScanReport. mode 'R' scans all nonzero
    integer polynomials of degree <= d; mode 'R+P' fixes a cubic R and scans
    quadratic P."""
    cap = max(DEFAULT_K_CAP, policy.k_max + 6)
    xi = xi_at_policy(seq, policy, cap=cap)
    xif = _float_xi(xi)
    bits = xi.bits

    if mode == "R":
        if not 1 <= d <= 6:
            raise DegreeTooHigh("R-only scan needs 1 <= d <= 6")
        count = (2 * height_bound + 1) ** (d + 1)
        if count > budget:
            raise BudgetExceeded(f"{count} candidates exceed budget {budget}")
        coeffs = _enumerate_coeffs(d + 1, height_bound)
        powers = np.array([xif ** i for i in range(d + 1)])
        vals = np.abs(coeffs @ powers)
        norms = np.max(np.abs(coeffs), axis=1).astype(np.float64)
        if d <= 3:
            exponent = gamma_power(3, bits)
            label = "gamma^3"
        else:
            exponent = gamma_power(d, bits) * 2 - gamma_power(2, bits)
            label = f"2*gamma^{d} - gamma^2"
        expf = float(mpfr(exponent.center, 64))
        nv = vals * norms ** expf
        best = _rank_and_certify(coeffs, nv, xi, exponent)
        _, arg, ball = best
        argpoly = IntPoly(arg)
        div_k = _divisible_by_some_q(seq, argpoly) if d <= 3 else None
        renorm = None
        if d <= 3:
            exp2 = gamma_power(2, bits) + 1
            exp2f = float(mpfr(exp2.center, 64))
            nv2 = vals * norms ** exp2f
            all_best = _rank_and_certify(coeffs, nv2, xi, exp2)
            nondiv_best = _rank_and_certify(
                coeffs, nv2, xi, exp2,
                skip=lambda cs: _divisible_by_some_q(seq, IntPoly(tuple(int(c) for c in cs))) is not None,
            )
            renorm = {
                "exponent_label": "1 + gamma^2",
                "min_all": all_best[2],
                "argmin_all": IntPoly(all_best[1]),
                "min_nondivisible": nondiv_best[2],
                "argmin_nondivisible": IntPoly(nondiv_best[1]),
                "raised": mpq(nondiv_best[2].center) > mpq(all_best[2].center),
            }
        return ScanReport(
            mode="R", degree=d, height_bound=height_bound, exponent_label=label,
            minimum=ball, argmin=argpoly,
            certified_positive=bool(ball.lo > 0), candidates=int(len(coeffs)),
            divisible_by_q_k=div_k, renormalized=renorm,
        )

    if mode == "R+P":
        base = fixed_poly if fixed_poly is not None else T_CUBED
        if base.degree != 3:
            raise DegreeTooHigh("R+P scan expects a fixed cubic")
        count = (2 * height_bound + 1) ** 3
        if count > budget:
            raise BudgetExceeded(f"{count} candidates exceed budget {budget}")
        coeffs = _enumerate_coeffs(3, height_bound)
        zero = np.zeros((1, 3), dtype=np.int64)
        coeffs = np.concatenate([zero, coeffs])  # P = 0 allowed
        powers = np.array([xif ** i for i in range(3)])
        r_ball = eval_int_poly(base, xi)
        r_val = float(mpfr(r_ball.center, 64))
        vals = np.abs(coeffs @ powers + r_val)
        norms = np.max(np.abs(coeffs), axis=1).astype(np.float64)
        gam = gamma_power(1, bits)
        gam4 = gamma_power(4, bits)
        expf = float(mpfr(gam.center, 64))
        nv = vals * (1.0 + norms) ** expf
        norm_r = Enclosure.exact(base.norm, bits)
        scale_r = ball_pow(norm_r, gam4)

        order = np.lexsort(tuple(coeffs[:, i] for i in range(2, -1, -1)))
        ranked = order[np.argsort(nv[order], kind="stable")]
        best = None
        for idx in ranked[:256]:
            pc = tuple(int(c) for c in coeffs[idx])
            p_poly = IntPoly(pc)
            val = abs(r_ball + eval_int_poly(p_poly, xi))
            one_plus = Enclosure.exact(1 + p_poly.norm, bits)
            ball = val * ball_pow(one_plus, gam) * scale_r
            cand = (mpq(ball.center), pc, ball)
            if best is None or cand[:2] < best[:2]:
                best = cand
        _, arg, ball = best
        return ScanReport(
            mode="R+P", degree=3, height_bound=height_bound,
            exponent_label="(1+||P||)^gamma * ||R||^gamma^4",
            minimum=ball, argmin=IntPoly(arg),
            certified_positive=bool(ball.lo > 0), candidates=int(len(coeffs)),
            fixed_poly=base,
        )

    raise ValueError(f"unknown scan mode {mode!r}")


# ---------------------------------------------------------------------------
# Lagrange-constant scan

@dataclass(frozen=True)
class LagrangeReport:
    n_min: int
    n_max: int
    minimum: Optional[Enclosure]
    argmin_n: Optional[int]
    smallest: tuple  # up to five (n, Enclosure) pairs, ascending value


def lagrange_scan(seq: MarkoffSequence, n_max: int, policy: PrecisionPolicy,
                  n_min: int = 1000) -> LagrangeReport:
    """min of n*{n xi} over [n_min, n_max], via convergent denominators plus an
    exact sweep of the pre-convergent gap."""
    if n_min > n_max:
        return LagrangeReport(n_min, n_max, None, None, ())
    cap = DEFAULT_K_CAP
    k_ref = seq.seed.first_valid_index + 2
    seq.extend(k_ref + 1, cap=cap)
    # heuristic radius is 1/X_k, so leave margin beyond the bare 1/(2 n_max^2)
    # needed to certify a convergent past n_max
    while mpq(seq.norm(k_ref)) <= 64 * mpq(n_max) ** 2 and k_ref + 1 < cap:
        k_ref += 1
        seq.extend(k_ref + 1, cap=cap)
    bits = max(256, seq.norm(k_ref).bit_length() + 6 * int(n_max).bit_length() + 320)
    local = PrecisionPolicy(bits=bits, k_max=k_ref)
    xi = xi_enclosure(seq, k_ref, local)
    if not mpq(xi.radius) < mpq(1, 2 * n_max * n_max):
        raise PrecisionExhausted("xi radius too large for the requested n_max")

    terms = continued_fraction(xi, 96)
    denoms = [int(q) for _, q in convergents(terms)]
    conv_in_range = [q for q in denoms if n_min <= q <= n_max]
    beyond = [q for q in denoms if q > n_max]
    if not beyond and (not conv_in_range or conv_in_range[-1] < n_max):
        raise PrecisionExhausted("certified convergents do not reach n_max")
    q_first = min(conv_in_range) if conv_in_range else n_max + 1

    def value(n: int) -> Enclosure:
        return frac_nearest(xi * n).frac * n

    candidates = [(n, value(n)) for n in range(n_min, min(q_first, n_max + 1))]
    candidates += [(q, value(q)) for q in conv_in_range]
    candidates.sort(key=lambda item: (mpq(item[1].center), item[0]))
    top = candidates[:5]
    n_best, v_best = top[0]
    return LagrangeReport(n_min, n_max, v_best, n_best, tuple(top))
