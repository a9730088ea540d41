"""Normalized-error audits for every asymptotic estimate in the catalog.

Each registered estimate turns into a sequence over k of
|LHS - RHS| * normalizer (the difference reduced to distance-to-nearest-
integer first when the estimate lives mod Z). The resulting numbers are the
empirical stand-ins for the otherwise unspecified implied constants, so the
reports carry boundedness and trend heuristics rather than proofs.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field
from typing import Callable, Optional

from gmpy2 import mpfr, mpq, mpz

from .errors import IndexOutOfRange, PrecisionExhausted, UnknownEstimate
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
    eval_int_poly,
    frac_nearest,
    sci_str,
    xi_at_policy,
    xi_powers,
)

T_CUBED = IntPoly((0, 0, 0, 1))


class _Ctx:
    """Shared per-run workspace: xi powers plus cached exact derived data."""

    def __init__(self, seq: MarkoffSequence, policy: PrecisionPolicy,
                 poly: IntPoly = T_CUBED):
        self.seq = seq
        self.policy = policy
        self.poly = poly
        cap = max(DEFAULT_K_CAP, policy.k_max + 6)
        seq.extend(policy.k_max + 6, cap=cap)
        self.xi = xi_at_policy(seq, policy, cap=cap)
        self.xp = xi_powers(self.xi, 9)
        self._scalars = {}
        self._q = {}

    def e(self, k, j):
        return self.seq.x(k, j)

    def X(self, k):
        return self.seq.norm(k)

    def sc(self, k):
        if k not in self._scalars:
            self._scalars[k] = derived_scalars(self.seq, k)
        return self._scalars[k]

    def q(self, k):
        if k not in self._q:
            self._q[k] = q_polynomial(self.seq, k)
        return self._q[k]

    def sigma(self, k) -> Enclosure:
        return (self.e(k + 6, 0) - self.e(k, 0)) * self.xp[6]

    def r_at_xi(self) -> Enclosure:
        return eval_int_poly(self.poly, self.xi)

    def frac_of_term_poly(self, k) -> Enclosure:
        """{x_{k,0} * R(xi)} for the run polynomial."""
        return frac_nearest(self.e(k, 0) * self.r_at_xi()).frac

    def surrogate_index(self, k, step: int = 6) -> int:
        """Largest index <= k_max+6 congruent to k (mod step)."""
        top = self.policy.k_max + 6
        return k + ((top - k) // step) * step


@dataclass(frozen=True)
class EstimateSpec:
    id: str
    description: str
    mod_one: bool
    back: int
    fwd: int
    diff: Callable = field(repr=False)
    normalizer: Callable = field(repr=False)
    takes_poly: bool = False
    one_sided: Optional[Callable] = field(default=None, repr=False)


@dataclass(frozen=True)
class AuditRow:
    k: int
    value: Optional[Enclosure]
    skipped: bool = False
    note: str = ""


@dataclass(frozen=True)
class AuditReport:
    estimate_id: str
    k_lo: int
    k_hi: int
    bits: int
    rows: tuple
    summary: dict

    def to_dict(self) -> dict:
        rows = []
        for r in self.rows:
            rows.append({
                "k": r.k,
                "normalized_error": None if r.value is None else sci_str(r.value.center, 30),
                "radius": None if r.value is None else sci_str(r.value.radius, 6),
                "skipped": r.skipped,
                "note": r.note,
            })
        return {
            "id": self.estimate_id,
            "k_lo": self.k_lo,
            "k_hi": self.k_hi,
            "bits": self.bits,
            "rows": rows,
            "summary": self.summary,
        }


ESTIMATES: dict = {}


def _reg(eid, desc, mod_one, back, fwd, diff, norm, takes_poly=False, one_sided=None):
    ESTIMATES[eid] = EstimateSpec(eid, desc, mod_one, back, fwd, diff, norm,
                                  takes_poly, one_sided)


def _n_x(offset, power=1):
    def norm(c, k):
        return mpq(c.X(k + offset)) ** power
    return norm


def _n_x_over_poly(offset):
    def norm(c, k):
        return mpq(c.X(k + offset), c.poly.norm)
    return norm


# -- bilinear scalar estimates ------------------------------------------------

_reg("L2.3a", "x_{k,0}x_{k+2,2}xi - A_k, scaled by X_{k+1}", False, 0, 2,
     lambda c, k: c.e(k, 0) * c.e(k + 2, 2) * c.xi - c.sc(k).A, _n_x(1))
_reg("L2.3b", "x_{k,1}x_{k+2,2}xi - B_k + (-1)^k x_{k+1,2}xi, scaled by X_{k+1}", False, 0, 2,
     lambda c, k: c.e(k, 1) * c.e(k + 2, 2) * c.xi - c.sc(k).B + sign_pow(k) * (c.e(k + 1, 2) * c.xi),
     _n_x(1))
_reg("L2.3c", "x_{k,0}x_{k+1,2}xi - C_k, scaled by X_{k-1}", False, 1, 1,
     lambda c, k: c.e(k, 0) * c.e(k + 1, 2) * c.xi - c.sc(k).C, _n_x(-1))
_reg("L2.3d", "x_{k,1}x_{k+1,2}xi - D_k + (-1)^k x_{k-1,2}xi, scaled by X_{k-1}", False, 1, 1,
     lambda c, k: c.e(k, 1) * c.e(k + 1, 2) * c.xi - c.sc(k).D + sign_pow(k) * (c.e(k - 1, 2) * c.xi),
     _n_x(-1))
_reg("L2.3e", "x_{k,0}x_{k+4,2}xi - E_k, scaled by X_{k+2}", False, 0, 4,
     lambda c, k: c.e(k, 0) * c.e(k + 4, 2) * c.xi - c.sc(k).E, _n_x(2))
_reg("L2.3f", "x_{k,1}x_{k+4,2}xi - F_k + (-1)^k x_{k+2,2}xi, scaled by X_{k+2}", False, 0, 4,
     lambda c, k: c.e(k, 1) * c.e(k + 4, 2) * c.xi - c.sc(k).F + sign_pow(k) * (c.e(k + 2, 2) * c.xi),
     _n_x(2))

_reg("L2.4i", "x_{k,0}x_{k+2,0}xi^4 - B_k + 2(-1)^k x_{k+1,2}xi, scaled by X_{k+1}", False, 0, 2,
     lambda c, k: c.e(k, 0) * c.e(k + 2, 0) * c.xp[4] - c.sc(k).B + (2 * sign_pow(k)) * (c.e(k + 1, 2) * c.xi),
     _n_x(1))
_reg("L2.4ii", "x_{k,0}x_{k+1,0}x_{k+3,0}xi^5 + 6x_{k+1,2}xi mod Z, scaled by X_{k+1}", True, 0, 3,
     lambda c, k: c.e(k, 0) * c.e(k + 1, 0) * c.e(k + 3, 0) * c.xp[5] + 6 * (c.e(k + 1, 2) * c.xi),
     _n_x(1))
_reg("L2.4iii", "x_{k,0}x_{k+1,2}x_{k+3,2}xi + 2x_{k+1,2}xi mod Z, scaled by X_{k+1}", True, 0, 3,
     lambda c, k: c.e(k, 0) * c.e(k + 1, 2) * c.e(k + 3, 2) * c.xi + 2 * (c.e(k + 1, 2) * c.xi),
     _n_x(1))

# -- fractional parts of shifted sums/differences -----------------------------

for _j in range(4):
    _reg(f"L3.1i.j{_j}", f"(x_{{k+3,0}}+x_{{k,0}})xi^{_j} mod Z, scaled by X_k", True, 0, 3,
         (lambda jj: lambda c, k: (c.e(k + 3, 0) + c.e(k, 0)) * c.xp[jj])(_j), _n_x(0))
for _j in range(6):
    _reg(f"L3.1ii.j{_j}", f"(x_{{k+6,0}}-x_{{k,0}})xi^{_j} mod Z, scaled by X_k", True, 0, 6,
         (lambda jj: lambda c, k: (c.e(k + 6, 0) - c.e(k, 0)) * c.xp[jj])(_j), _n_x(0))


def _p32_diff(c, k):
    sur = c.surrogate_index(k)
    return c.frac_of_term_poly(k) - c.frac_of_term_poly(sur)


_reg("P3.2", "accumulation-point residue |{x_{k,0}R(xi)} - delta| * X_k / ||R||",
     False, 0, 6, _p32_diff, _n_x_over_poly(0), takes_poly=True)

# -- Q_k size and value -------------------------------------------------------

_reg("Q4.1.val", "|Q_k(xi)| * X_{k+2}", False, 1, 2,
     lambda c, k: eval_int_poly(c.q(k), c.xi), _n_x(2))
_reg("Q4.1.norm", "||Q_k|| / X_{k-1}", False, 1, 1,
     lambda c, k: Enclosure.exact(c.q(k).norm, c.xi.bits), lambda c, k: mpq(1, c.X(k - 1)))
_reg("Q4.1.deriv", "|Q_k'(xi)| / X_{k-1}", False, 1, 1,
     lambda c, k: eval_int_poly(c.q(k).derivative(), c.xi), lambda c, k: mpq(1, c.X(k - 1)))

# -- lower-bound machinery (two-term products against A_k / E_k) --------------

def _l51a_diff(c, k):
    # p_j = r2*x_{j,2} + r1*x_{j,1} + r0*x_{j,0} collects the low-degree part
    r3 = c.poly.coeff(3)
    tail = IntPoly(c.poly.coefficients[:3])
    pk2 = tail.coeff(2) * c.e(k + 2, 2) + tail.coeff(1) * c.e(k + 2, 1) + tail.coeff(0) * c.e(k + 2, 0)
    return c.e(k, 0) * c.e(k + 2, 0) * c.r_at_xi() - r3 * c.sc(k).A - c.e(k, 0) * pk2


def _l51b_diff(c, k):
    r3 = c.poly.coeff(3)
    tail = IntPoly(c.poly.coefficients[:3])
    pk4 = tail.coeff(2) * c.e(k + 4, 2) + tail.coeff(1) * c.e(k + 4, 1) + tail.coeff(0) * c.e(k + 4, 0)
    return c.e(k, 0) * c.e(k + 4, 0) * c.r_at_xi() - r3 * c.sc(k).E - c.e(k, 0) * pk4


def _one_sided(offset):
    def stat(c, k):
        lead2 = 2 * c.poly.coeff(3)
        precondition = lead2 % abs(c.e(k, 0)) != 0
        val = frac_nearest(c.e(k + offset, 0) * c.r_at_xi()).frac * mpq(c.X(k))
        return precondition, val
    return stat


_reg("L5.1a", "x_{k,0}x_{k+2,0}R(xi) vs r3*A_k + x_{k,0}p_{k+2}, scaled by X_{k+1}/||R||",
     False, 0, 4, _l51a_diff, _n_x_over_poly(1), takes_poly=True, one_sided=_one_sided(2))
_reg("L5.1b", "x_{k,0}x_{k+4,0}R(xi) vs r3*E_k + x_{k,0}p_{k+4}, scaled by X_{k+2}/||R||",
     False, 0, 4, _l51b_diff, _n_x_over_poly(2), takes_poly=True, one_sided=_one_sided(4))

# -- the integer-translation condition behind the m_j constants ---------------

M_CONSTANTS = {1: 2, 2: 6, 3: 20, 4: 80, 5: 360, 6: 1840}


def _c61_diff(j):
    def diff(c, k):
        prod = mpz(1)
        for i in range(k, k + j):
            prod *= c.e(i, 0)
        v1 = prod * c.e(k + j + 1, 0) * c.xp[j + 3]
        v2 = c.e(k + 1, 0) * c.xp[3]
        plus = frac_nearest(v1 + M_CONSTANTS[j] * v2).frac
        minus = frac_nearest(v1 - M_CONSTANTS[j] * v2).frac
        return plus if mpq(plus.center) <= mpq(minus.center) else minus
    return diff


for _j in range(1, 7):
    _reg(f"C6.1.j{_j}",
         f"translation condition with m_{_j}={M_CONSTANTS[_j]} (best sign), scaled by X_{{k+1}}",
         False, 0, _j + 1, _c61_diff(_j), _n_x(1))

# -- single-index bilinear forms with fractional constants --------------------

_reg("L7.1i", "x_{k,0}^2 xi - x_{k,0}x_{k,1} + (-1)^k/3, scaled by X_k^2", False, 0, 0,
     lambda c, k: c.e(k, 0) * c.e(k, 0) * c.xi - c.e(k, 0) * c.e(k, 1) + mpq(sign_pow(k), 3),
     _n_x(0, 2))
_reg("L7.1ii", "x_{k,0}x_{k,1}xi - x_{k,1}^2 + (-1)^k xi/3, scaled by X_k^2", False, 0, 0,
     lambda c, k: c.e(k, 0) * c.e(k, 1) * c.xi - c.e(k, 1) * c.e(k, 1) + mpq(sign_pow(k), 3) * c.xi,
     _n_x(0, 2))
_reg("L7.1iii", "x_{k,0}x_{k,2}xi - x_{k,1}x_{k,2} + (-1)^k xi^2/3, scaled by X_k^2", False, 0, 0,
     lambda c, k: c.e(k, 0) * c.e(k, 2) * c.xi - c.e(k, 1) * c.e(k, 2) + mpq(sign_pow(k), 3) * c.xp[2],
     _n_x(0, 2))
_reg("L7.1iv", "x_{k,1}^2 xi - x_{k,1}x_{k,2} + xi + (-1)^k xi^2/3, scaled by X_k^2", False, 0, 0,
     lambda c, k: c.e(k, 1) * c.e(k, 1) * c.xi - c.e(k, 1) * c.e(k, 2) + c.xi + mpq(sign_pow(k), 3) * c.xp[2],
     _n_x(0, 2))
_reg("L7.1v", "x_{k,1}x_{k,2}xi - x_{k,2}^2 + xi^2 + (-1)^k xi^3/3, scaled by X_k^2", False, 0, 0,
     lambda c, k: c.e(k, 1) * c.e(k, 2) * c.xi - c.e(k, 2) * c.e(k, 2) + c.xp[2] + mpq(sign_pow(k), 3) * c.xp[3],
     _n_x(0, 2))

_reg("L7.3i", "x_{k,0}x_{k+3,2}xi + 2xi mod Z, scaled by X_{k+1}^2", True, 0, 3,
     lambda c, k: c.e(k, 0) * c.e(k + 3, 2) * c.xi + 2 * c.xi, _n_x(1, 2))
_reg("L7.3ii", "x_{k,0}x_{k+3,2}xi^2 + 4xi^2 mod Z, scaled by X_{k+1}^2", True, 0, 3,
     lambda c, k: c.e(k, 0) * c.e(k + 3, 2) * c.xp[2] + 4 * c.xp[2], _n_x(1, 2))
_reg("L7.3iii", "x_{k,1}x_{k+3,2}xi + 3(-1)^k xi + xi^2 mod Z, scaled by X_{k+1}^2", True, 0, 3,
     lambda c, k: c.e(k, 1) * c.e(k + 3, 2) * c.xi + (3 * sign_pow(k)) * c.xi + c.xp[2], _n_x(1, 2))

# -- sixth-power drift sigma_k and its integer multiples ----------------------

_reg("P7.4.sigma", "sigma_k + 18(-1)^k(2D_{k+1}xi + 12x_{k,0}xi^3 + (-1)^k x_{k+3,0}xi^4) mod Z, scaled by X_k",
     True, 0, 6,
     lambda c, k: c.sigma(k) + (18 * sign_pow(k)) * (
         2 * (c.sc(k + 1).D * c.xi) + 12 * (c.e(k, 0) * c.xp[3]) + sign_pow(k) * (c.e(k + 3, 0) * c.xp[4])),
     _n_x(0))


def _c75_diff(c, k):
    # consecutive terms of the sigma-limit sequence; Cauchy rate ~ 1/X_k
    a = frac_nearest(c.sigma(k)).frac
    b = frac_nearest(c.sigma(k + 6)).frac
    return a - b


_reg("C7.5.delta", "|{sigma_{k+6}} - {sigma_k}| * X_k", False, 0, 12, _c75_diff, _n_x(0))

_reg("P7.6.i", "x_{k-2,0}sigma_k + 36(-1)^k x_{k-1,2}xi mod Z, scaled by X_{k-1}", True, 2, 6,
     lambda c, k: c.e(k - 2, 0) * c.sigma(k) + (36 * sign_pow(k)) * (c.e(k - 1, 2) * c.xi), _n_x(-1))
_reg("P7.6.ii", "x_{k-3,0}sigma_k mod Z, scaled by X_{k-2}^2", True, 3, 6,
     lambda c, k: c.e(k - 3, 0) * c.sigma(k), _n_x(-2, 2))

_reg("L7.9i", "x_{k,0}x_{k+1,0}x_{k+2,2}x_{k+4,2}xi^2 - 8(-1)^k x_{k+1,2}xi mod Z, scaled by X_{k+1}",
     True, 0, 4,
     lambda c, k: c.e(k, 0) * c.e(k + 1, 0) * c.e(k + 2, 2) * c.e(k + 4, 2) * c.xp[2]
     - (8 * sign_pow(k)) * (c.e(k + 1, 2) * c.xi),
     _n_x(1))
_reg("L7.9ii", "x_{k,0}x_{k+1,0}x_{k+2,0}x_{k+4,0}xi^6 - 20(-1)^k x_{k+1,2}xi mod Z, scaled by X_{k+1}",
     True, 0, 4,
     lambda c, k: c.e(k, 0) * c.e(k + 1, 0) * c.e(k + 2, 0) * c.e(k + 4, 0) * c.xp[6]
     - (20 * sign_pow(k)) * (c.e(k + 1, 2) * c.xi),
     _n_x(1))

ESTIMATE_IDS = tuple(ESTIMATES)


def audit_estimate(seq: MarkoffSequence, estimate_id: str, k_range: tuple,
                   policy: PrecisionPolicy, poly: IntPoly = T_CUBED,
                   _ctx: Optional[_Ctx] = None) -> AuditReport:
    """One AuditRow per k in k_range (inclusive); see module docstring."""
    spec = ESTIMATES.get(estimate_id)
    if spec is None:
        raise UnknownEstimate(f"no estimate {estimate_id!r}")
    k_lo, k_hi = k_range
    if k_lo < max(2, spec.back + 1):
        raise IndexOutOfRange(f"{estimate_id}: k_lo {k_lo} reads below index 1")
    if k_hi > policy.k_max:
        raise PrecisionExhausted(
            f"{estimate_id}: k_hi {k_hi} beyond policy.k_max={policy.k_max}"
        )
    # estimates reading beyond k+6 exceed the schedule's footprint envelope;
    # rebuild the policy around the deepest index they actually touch
    need_kmax = k_hi + max(0, spec.fwd - 6)
    if need_kmax > policy.k_max:
        policy = PrecisionPolicy.for_kmax(seq, need_kmax, policy.guard_bits)
        _ctx = None
    ctx = _ctx if _ctx is not None else _Ctx(seq, policy, poly)
    rows = []
    extras = []
    for k in range(k_lo, k_hi + 1):
        diff = spec.diff(ctx, k)
        if spec.mod_one:
            res = frac_nearest(diff)
            if res.nearest is None:
                rows.append(AuditRow(k, None, skipped=True, note="nearest integer ambiguous"))
                continue
            err = res.frac
        else:
            err = abs(diff)
        rows.append(AuditRow(k, err * spec.normalizer(ctx, k)))
        if spec.one_sided is not None:
            extras.append((k,) + spec.one_sided(ctx, k))
    live = [r for r in rows if not r.skipped]
    if not live:
        raise PrecisionExhausted(f"every row of {estimate_id} in {k_range} skipped")
    summary = _summarize(rows, extras)
    return AuditReport(estimate_id, k_lo, k_hi, policy.bits, tuple(rows), summary)


def _summarize(rows, extras) -> dict:
    vals = [(r.k, mpfr(r.value.center)) for r in rows if not r.skipped]
    centers = [v for _, v in vals]
    vmax = max(centers)
    med = mpfr(statistics.median(centers))
    tail = [v for k, v in vals if k >= 8]
    half = [v for k, v in vals if k >= vals[len(vals) // 2][0]]
    summary = {
        "max": sci_str(vmax, 21),
        "median": sci_str(med, 21),
        "max_k_ge_8": sci_str(max(tail), 21) if tail else None,
        "trend_ok": bool(max(half) <= 10 * med) if med > 0 else bool(max(half) == 0),
        "skipped": sum(1 for r in rows if r.skipped),
    }
    if extras:
        held = [(k, float(v.center)) for k, pre, v in extras if pre]
        summary["one_sided"] = {
            "precondition_rows": len(held),
            "min_scaled_frac": sci_str(min(v for _, v in held), 21) if held else None,
            "below_half": bool(held and min(v for _, v in held) < 0.5),
        }
    return summary


def audit_all(seq: MarkoffSequence, k_range: tuple, policy: PrecisionPolicy,
              poly: IntPoly = T_CUBED, ids=None) -> dict:
    """Audit every registered estimate with one shared workspace."""
    ctx = _Ctx(seq, policy, poly)
    out = {}
    for eid in (ids if ids is not None else ESTIMATE_IDS):
        out[eid] = audit_estimate(seq, eid, k_range, policy, poly, _ctx=ctx)
    return out


# ---------------------------------------------------------------------------
# regression baseline for the recorded empirical constants

def baseline_compare_or_record(path, reports: dict, rel_tol: float = 1e-6) -> dict:
    """First run writes the per-estimate constants; later runs must match.

    Returns {"recorded": bool, "mismatches": [...]}.
    """
    snapshot = {
        eid: {"max": rep.summary["max"], "median": rep.summary["median"]}
        for eid, rep in reports.items()
    }
    try:
        with open(path, "r", encoding="ascii") as fh:
            stored = json.load(fh)
    except FileNotFoundError:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(snapshot, fh, indent=1, sort_keys=True)
        return {"recorded": True, "mismatches": []}
    mismatches = []
    for eid, vals in snapshot.items():
        if eid not in stored:
            mismatches.append((eid, "missing from baseline"))
            continue
        for key in ("max", "median"):
            old = float(stored[eid][key])
            new = float(vals[key])
            denom = max(abs(old), abs(new), 1e-300)
            if abs(old - new) / denom > rel_tol and not (old == new == 0.0):
                mismatches.append((eid, key, stored[eid][key], vals[key]))
    return {"recorded": False, "mismatches": mismatches}
