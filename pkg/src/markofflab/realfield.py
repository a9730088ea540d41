"""Arbitrary-precision real enclosures (center/radius balls over MPFR).

Centers are rounded to nearest at the working precision; radii live at a
small fixed precision and are always rounded up, so an Enclosure never
shrinks the true containment set. Precision travels inside PrecisionPolicy;
there is no global precision state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import (
    ConsistencyFailure,
    DerivativeVanishes,
    IndexOutOfRange,
    NoConvergence,
    PrecisionExhausted,
    RadiusTooLarge,
)
from .matseq import DEFAULT_K_CAP, IntPoly, MarkoffSequence

_RADIUS_BITS = 64
_CTX_UP = gmpy2.context(precision=_RADIUS_BITS, round=gmpy2.RoundUp)
_CTX_DOWN = gmpy2.context(precision=_RADIUS_BITS, round=gmpy2.RoundDown)
_CTX_CACHE: dict = {}

GAMMA_FLOAT = 1.6180339887498948482


def _ctx(bits: int):
    ctx = _CTX_CACHE.get(bits)
    if ctx is None:
        ctx = gmpy2.context(precision=bits)
        _CTX_CACHE[bits] = ctx
    return ctx


def _ulp(center: mpfr, bits: int) -> mpfr:
    """Upper bound for one unit in the last place of `center` at `bits`."""
    if center == 0:
        return mpfr(0)
    return _CTX_UP.mul(mpfr(1), gmpy2.exp2(gmpy2.get_exp(center) - bits))


def _up(value) -> mpfr:
    """Round an exact int/mpz/mpq value up into the 64-bit radius domain."""
    return _CTX_UP.add(mpfr(0), value)


# NOTE: gmpy2 evaluates bare `-x` and `abs(x)` on mpfr under the *thread*
# context (53 bits by default), silently rounding high-precision centers.
# Every center/magnitude operation below therefore goes through an explicit
# context with the appropriate rounding direction.

def _neg_exact(x: mpfr, bits: int) -> mpfr:
    return _ctx(bits).sub(mpfr(0), x)  # negation is exact at equal precision


def _abs_exact(x: mpfr, bits: int) -> mpfr:
    return _neg_exact(x, bits) if x < 0 else x


def _mag_up(x: mpfr) -> mpfr:
    """|x| rounded up into the radius domain."""
    return _CTX_UP.add(mpfr(0), x) if x >= 0 else _CTX_UP.sub(mpfr(0), x)


def _mag_down(x: mpfr) -> mpfr:
    """|x| rounded down into the radius domain."""
    return _CTX_DOWN.add(mpfr(0), x) if x >= 0 else _CTX_DOWN.sub(mpfr(0), x)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working precision contract for a target sequence index.

    The schedule reserves 8x the (estimated) bit size of X_{k_max+6} plus the
    guard bits, enough for audited quantities that mix four terms up to index
    k_max+6.
    """

    bits: int
    guard_bits: int = 256
    k_max: int = 20

    @classmethod
    def for_kmax(cls, seq: MarkoffSequence, k_max: int,
                 guard_bits: int = 256) -> "PrecisionPolicy":
        bits = 8 * estimate_log2_norm(seq, k_max + 6) + guard_bits
        return cls(bits=bits, guard_bits=guard_bits, k_max=k_max)


def estimate_log2_norm(seq: MarkoffSequence, k: int) -> int:
    """log2(X_k), exact bit length when materialized, else a growth-law fit."""
    if k <= seq.materialized:
        return int(seq.norm(k).bit_length())
    last = seq.materialized
    beta = seq.norm(last).bit_length() / (GAMMA_FLOAT ** last)
    return int(beta * GAMMA_FLOAT ** k) + 1


class Enclosure:
    """Ball [center - radius, center + radius] with the precision it carries."""

    __slots__ = ("center", "radius", "bits")

    def __init__(self, center: mpfr, radius: mpfr, bits: int):
        self.center = center
        self.radius = radius
        self.bits = bits

    @classmethod
    def exact(cls, value, bits: int) -> "Enclosure":
        """Enclosure of an exact integer/rational, radius = representation error."""
        q = mpq(value)
        c = mpfr(q, bits)
        err = abs(q - mpq(c))
        return cls(c, _up(err), bits)

    @property
    def lo(self) -> mpq:
        return mpq(self.center) - mpq(self.radius)

    @property
    def hi(self) -> mpq:
        return mpq(self.center) + mpq(self.radius)

    def contains(self, value) -> bool:
        return self.lo <= mpq(value) <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contained_in(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def _coerce(self, other):
        if isinstance(other, Enclosure):
            return other
        return Enclosure.exact(other, self.bits)

    def __add__(self, other) -> "Enclosure":
        other = self._coerce(other)
        bits = min(self.bits, other.bits)
        if self.radius == 0 and other.radius == 0:
            ctx = gmpy2.context(precision=bits)
            c = ctx.add(self.center, other.center)
            if not ctx.inexact:
                return Enclosure(c, mpfr(0), bits)
            return Enclosure(c, _ulp(c, bits), bits)
        c = _ctx(bits).add(self.center, other.center)
        r = _CTX_UP.add(_CTX_UP.add(self.radius, other.radius), _ulp(c, bits))
        return Enclosure(c, r, bits)

    def __radd__(self, other) -> "Enclosure":
        return self.__add__(other)

    def __sub__(self, other) -> "Enclosure":
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other) -> "Enclosure":
        return self._coerce(other).__sub__(self)

    def __neg__(self) -> "Enclosure":
        return Enclosure(_neg_exact(self.center, self.bits), self.radius, self.bits)

    def __abs__(self) -> "Enclosure":
        if self.contains(0):
            hi = _CTX_UP.add(_mag_up(self.center), self.radius)
            half = _CTX_UP.div(hi, mpfr(2))
            return Enclosure(mpfr(half, self.bits), half, self.bits)
        return Enclosure(_abs_exact(self.center, self.bits), self.radius, self.bits)

    def __mul__(self, other) -> "Enclosure":
        if isinstance(other, (int, mpz)) and -4 < other < 4:
            # small exact scalar: scaling by +-1 is exact, the rest costs <= 1 ulp
            if other == 1:
                return self
            if other == -1:
                return -self
            bits = self.bits
            c = _ctx(bits).mul(self.center, mpfr(other))
            r = _CTX_UP.add(_CTX_UP.mul(self.radius, mpfr(abs(other))), _ulp(c, bits))
            return Enclosure(c, r, bits)
        other = self._coerce(other)
        bits = min(self.bits, other.bits)
        if self.radius == 0 and other.radius == 0:
            ctx = gmpy2.context(precision=bits)
            c = ctx.mul(self.center, other.center)
            return Enclosure(c, mpfr(0) if not ctx.inexact else _ulp(c, bits), bits)
        c = _ctx(bits).mul(self.center, other.center)
        cross = _CTX_UP.add(
            _CTX_UP.mul(_CTX_UP.add(_mag_up(self.center), self.radius), other.radius),
            _CTX_UP.mul(_mag_up(other.center), self.radius),
        )
        r = _CTX_UP.add(cross, _ulp(c, bits))
        return Enclosure(c, r, bits)

    def __rmul__(self, other) -> "Enclosure":
        return self.__mul__(other)

    def divide(self, other) -> "Enclosure":
        other = self._coerce(other)
        if other.contains(0):
            raise ZeroDivisionError("division by an enclosure containing 0")
        bits = min(self.bits, other.bits)
        c = _ctx(bits).div(self.center, other.center)
        den_lo = _CTX_DOWN.sub(_mag_down(other.center), other.radius)  # > 0
        num = _CTX_UP.add(_CTX_UP.mul(_mag_up(self.center), other.radius),
                          _CTX_UP.mul(_mag_up(other.center), self.radius))
        r = _CTX_UP.add(_CTX_UP.div(num, _CTX_DOWN.mul(den_lo, _mag_down(other.center))),
                        _ulp(c, bits))
        return Enclosure(c, r, bits)

    def pow_int(self, n: int) -> "Enclosure":
        if n < 0:
            raise ValueError("negative powers unsupported")
        out = Enclosure.exact(1, self.bits)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def widened(self, extra) -> "Enclosure":
        return Enclosure(self.center, _CTX_UP.add(self.radius, _up(extra)), self.bits)

    def __repr__(self):
        return f"Enclosure({mpfr(self.center, 40)} +/- {mpfr(self.radius, 12)}, bits={self.bits})"


def sci_str(x, digits: int = 30) -> str:
    """Deterministic scientific-notation string for mpfr/mpq/int values.

    (gmpy2 2.3's mpfr __format__ mishandles the 'e' presentation type.)
    """
    v = x if isinstance(x, mpfr) else mpfr(mpq(x), max(64, digits * 4))
    if gmpy2.is_nan(v):
        return "nan"
    if v == 0:
        return "0.0e+00"
    mant, exp10, _ = v.digits(10, digits)
    sign = "-" if mant.startswith("-") else ""
    mant = mant.lstrip("-")
    return f"{sign}{mant[0]}.{mant[1:]}e{exp10 - 1:+03d}"


def ball_log(e: Enclosure) -> Enclosure:
    """log of a strictly positive enclosure."""
    if e.lo <= 0:
        raise ValueError("ball_log needs a strictly positive enclosure")
    bits = e.bits
    c = _ctx(bits).log(e.center)
    lo = _CTX_DOWN.sub(_mag_down(e.center), e.radius)
    r = _CTX_UP.add(_CTX_UP.div(e.radius, lo), _ulp(c, bits))
    return Enclosure(c, r, bits)


def ball_exp(e: Enclosure) -> Enclosure:
    bits = e.bits
    c = _ctx(bits).exp(e.center)
    # |exp(x+d) - exp(x)| <= exp(x) * r * e^r for |d| <= r
    amp = _CTX_UP.mul(e.radius, _CTX_UP.exp(e.radius))
    exp_up = _CTX_UP.exp(_CTX_UP.add(mpfr(0), e.center))  # argument rounded up
    r = _CTX_UP.add(_CTX_UP.mul(exp_up, amp), _ulp(c, bits))
    return Enclosure(c, r, bits)


def ball_pow(base: Enclosure, exponent: Enclosure) -> Enclosure:
    """base**exponent for positive base, via exp(exponent * log(base))."""
    return ball_exp(exponent * ball_log(base))


def golden_ratio(bits: int) -> Enclosure:
    c = _ctx(bits).div(_ctx(bits).add(mpfr(1), _ctx(bits).sqrt(mpfr(5))), mpfr(2))
    return Enclosure(c, _CTX_UP.mul(mpfr(4), _ulp(c, bits)), bits)


def gamma_power(n: int, bits: int) -> Enclosure:
    """gamma**n reduced through gamma^2 = gamma + 1 (Fibonacci form)."""
    a, b = 0, 1  # gamma^0 = 0*gamma + 1
    for _ in range(n):
        a, b = a + b, a
    return golden_ratio(bits) * a + b


# ---------------------------------------------------------------------------
# distance to nearest integer

@dataclass(frozen=True)
class FracResult:
    """Distance to a nearest integer, plus that integer when decidable.

    ``nearest`` is None (the ambiguity sentinel) when the enclosure straddles
    a half-integer; downstream audits treat that as insufficient precision.
    """

    frac: Enclosure
    nearest: Optional[mpz]


def _interval_to_enclosure(lo: mpq, hi: mpq, bits: int) -> Enclosure:
    mid = (lo + hi) / 2
    c = mpfr(mid, bits)
    half = _CTX_UP.div(_up(hi - lo), mpfr(2))
    slack = _up(abs(mpq(c) - mid))
    return Enclosure(c, _CTX_UP.add(half, slack), bits)


def frac_nearest(e: Enclosure) -> FracResult:
    """Enclosure of dist-to-nearest-integer; exact interval analysis via mpq."""
    if not mpq(e.radius) < mpq(1, 4):
        raise RadiusTooLarge(f"radius {mpfr(e.radius, 20)} >= 1/4")
    lo, hi = e.lo, e.hi

    def dist(q: mpq) -> mpq:
        fl = q.numerator // q.denominator
        fr = q - fl
        return min(fr, 1 - fr)

    n_lo = (2 * lo.numerator + lo.denominator) // (2 * lo.denominator)  # floor(lo + 1/2)
    n_hi = (2 * hi.numerator + hi.denominator) // (2 * hi.denominator)
    f_lo, f_hi = dist(lo), dist(hi)
    lo_is_half = (2 * lo).denominator == 1 and (2 * lo).numerator % 2 != 0
    if n_lo == n_hi and not lo_is_half:
        # no half-integer inside; integer n_lo inside iff lo <= n_lo <= hi
        if lo <= n_lo <= hi:
            out_lo, out_hi = mpq(0), max(f_lo, f_hi)
        else:
            out_lo, out_hi = min(f_lo, f_hi), max(f_lo, f_hi)
        return FracResult(_interval_to_enclosure(out_lo, out_hi, e.bits), mpz(n_lo))
    # straddles a half-integer: distances peak at 1/2, nearest is ambiguous
    return FracResult(_interval_to_enclosure(min(f_lo, f_hi), mpq(1, 2), e.bits), None)


# ---------------------------------------------------------------------------
# xi and polynomial evaluation

def xi_enclosure(seq: MarkoffSequence, k_ref: int, policy: PrecisionPolicy) -> Enclosure:
    """Heuristic enclosure of xi: center x_{k,1}/x_{k,0}, radius 1/X_k.

    Cross-validated against the k_ref+1 enclosure: the two must intersect and
    the later one must be strictly narrower.
    """
    fvi = seq.seed.first_valid_index
    if fvi is None or k_ref < fvi + 2:
        raise IndexOutOfRange(f"k_ref must be >= first_valid_index + 2 = {None if fvi is None else fvi + 2}")
    if k_ref + 1 > seq.materialized:
        seq.extend(k_ref + 1, cap=max(DEFAULT_K_CAP, k_ref + 1))
    if policy.bits < seq.norm(k_ref).bit_length() + policy.guard_bits:
        raise PrecisionExhausted(
            f"policy.bits={policy.bits} below log2(X_{k_ref}) + guard"
        )
    cur = _xi_raw(seq, k_ref, policy.bits)
    nxt = _xi_raw(seq, k_ref + 1, policy.bits)
    if not cur.intersects(nxt):
        raise ConsistencyFailure(f"xi enclosures at k={k_ref} and k={k_ref + 1} are disjoint")
    if not mpq(nxt.radius) < mpq(cur.radius):
        raise ConsistencyFailure("successive xi enclosure did not shrink")
    return cur


def _xi_raw(seq: MarkoffSequence, k: int, bits: int) -> Enclosure:
    center = mpfr(mpq(seq.x(k, 1), seq.x(k, 0)), bits)
    radius = _CTX_UP.add(_up(mpq(1, seq.norm(k))), _ulp(center, bits))
    return Enclosure(center, radius, bits)


def xi_at_policy(seq: MarkoffSequence, policy: PrecisionPolicy,
                 cap: int = DEFAULT_K_CAP) -> Enclosure:
    """xi at the deepest reference index the policy precision supports."""
    fvi = seq.seed.first_valid_index
    if fvi is None:
        raise ConsistencyFailure("seed is not admissible")
    limit = policy.bits - policy.guard_bits
    k_ref = fvi + 2
    while k_ref + 1 < cap and estimate_log2_norm(seq, k_ref + 1) <= limit:
        k_ref += 1
    seq.extend(min(k_ref + 1, cap), cap=cap)
    if k_ref + 1 > seq.materialized:
        k_ref = seq.materialized - 1
    return xi_enclosure(seq, k_ref, policy)


def xi_powers(xi: Enclosure, upto: int) -> list:
    """[1, xi, xi^2, ..., xi^upto] as enclosures."""
    out = [Enclosure.exact(1, xi.bits), xi]
    for _ in range(upto - 1):
        out.append(out[-1] * xi)
    return out[: upto + 1]


def eval_int_poly(poly: IntPoly, e: Enclosure) -> Enclosure:
    """Interval-extension Horner evaluation; contains P(t) for every t in e."""
    if poly.is_zero:
        return Enclosure(mpfr(0), mpfr(0), e.bits)
    acc = Enclosure.exact(poly.coefficients[-1], e.bits)
    for c in reversed(poly.coefficients[:-1]):
        acc = acc * e + Enclosure.exact(c, e.bits)
    return acc


# ---------------------------------------------------------------------------
# certified root refinement (interval Newton)

def refine_root(poly: IntPoly, start: Enclosure, policy: PrecisionPolicy,
                max_iterations: int = 64) -> Enclosure:
    """Newton iteration from start.center, then one certifying interval step.

    The returned enclosure I satisfies N(I) subseteq I for the interval
    Newton operator, so it contains exactly one root of poly.
    """
    if poly.is_zero:
        raise ValueError("cannot refine a root of the zero polynomial")
    deriv = poly.derivative()
    dball = eval_int_poly(deriv, start)
    if dball.contains(0):
        raise DerivativeVanishes("derivative enclosure on the start ball contains 0")

    bits = policy.bits
    ctx = _ctx(bits)
    z = mpfr(start.center, bits)
    threshold = gmpy2.exp2(-(bits // 2))
    step = None
    for _ in range(max_iterations):
        pv = _horner_mpfr(poly, z, ctx)
        dv = _horner_mpfr(deriv, z, ctx)
        if dv == 0:
            raise DerivativeVanishes("derivative vanished during iteration")
        step = ctx.div(pv, dv)
        z = ctx.sub(z, step)
        if abs(step) <= threshold * max(mpfr(1), abs(z)):
            break
    else:
        raise NoConvergence(f"no stabilization after {max_iterations} iterations")

    # certification: I = [z-rho, z+rho]; N(I) = z - P(z)/P'(I) must sit inside I
    rho = _CTX_UP.add(_CTX_UP.mul(mpfr(4), abs(step)), _ulp(z, bits) * 8)
    for _ in range(24):
        cand = Enclosure(z, rho, bits)
        dball = eval_int_poly(deriv, cand)
        if dball.contains(0):
            raise DerivativeVanishes("derivative enclosure contains 0 near the root")
        pz = eval_int_poly(poly, Enclosure(z, mpfr(0), bits))
        newton = Enclosure(z, mpfr(0), bits) - pz.divide(dball)
        if newton.contained_in(cand):
            return newton
        rho = _CTX_UP.mul(rho, mpfr(4))
    raise NoConvergence("interval Newton step failed to certify")


def _horner_mpfr(poly: IntPoly, z: mpfr, ctx) -> mpfr:
    acc = mpfr(0)
    for c in reversed(poly.coefficients):
        acc = ctx.add(ctx.mul(acc, z), mpfr(c, ctx.precision))
    return acc


# ---------------------------------------------------------------------------
# continued fractions

def continued_fraction(e, max_terms: int) -> list:
    """Certified CF prefix: longest common prefix of the endpoint expansions.

    Accepts an Enclosure, or an exact rational for a full (finite) expansion.
    """
    if not isinstance(e, Enclosure):
        return _cf_of_rational(mpq(e), max_terms)
    lo, hi = e.lo, e.hi
    if lo == hi:
        return _cf_of_rational(lo, max_terms)
    a = _cf_of_rational(lo, max_terms + 1)
    b = _cf_of_rational(hi, max_terms + 1)
    out = []
    for x, y in zip(a, b):
        if x != y:
            break
        out.append(x)
    return out[:max_terms]


def _cf_of_rational(q: mpq, max_terms: int) -> list:
    out = []
    num, den = mpq(q).numerator, mpq(q).denominator
    while den != 0 and len(out) < max_terms:
        a, rem = divmod(num, den)
        out.append(mpz(a))
        num, den = den, rem
    return out


def convergents(cf_terms: list):
    """Yield (p, q) convergents from a CF term list."""
    p0, q0, p1, q1 = mpz(1), mpz(0), mpz(cf_terms[0]), mpz(1)
    yield p1, q1
    for a in cf_terms[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1
