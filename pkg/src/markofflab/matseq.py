"""Exact integer engine for the symmetric matrix sequence.

Everything here is exact arbitrary-precision integer arithmetic (gmpy2.mpz):
sequence generation with a dual-route cross-check, the registered catalog of
exact identities, the derived integer scalars A..F, the quadratic Q_k
polynomials with their three-term relation, the gcd/content theorem, and the
versioned sequence cache format.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import gmpy2
from gmpy2 import mpq, mpz

from .errors import (
    FormatError,
    IndexOutOfRange,
    InvariantViolation,
    IoError,
    OracleMismatch,
    UnknownFamily,
)

DEFAULT_K_CAP = 40

# flat 2x2 matrices: (a00, a01, a10, a11)
_J = (mpz(0), mpz(1), mpz(-1), mpz(0))
_P = (mpz(3), mpz(0), mpz(0), mpz(0))


def _mat_mul(a, b):
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def _mat_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mat_scale(c, a):
    return tuple(c * x for x in a)


def sign_pow(k: int) -> int:
    """(-1)**k without building a big integer."""
    return 1 if k % 2 == 0 else -1


def companion_matrix(k: int):
    """Alternating companion matrix: [[3,1],[-1,0]] for even k, [[3,-1],[1,0]] for odd."""
    s = mpz(sign_pow(k))
    return (mpz(3), s, -s, mpz(0))


@dataclass(frozen=True)
class SymMat2:
    """Symmetric 2x2 determinant-1 integer matrix [[x0,x1],[x1,x2]]."""

    x0: mpz
    x1: mpz
    x2: mpz

    def __post_init__(self):
        object.__setattr__(self, "x0", mpz(self.x0))
        object.__setattr__(self, "x1", mpz(self.x1))
        object.__setattr__(self, "x2", mpz(self.x2))
        if self.x0 * self.x2 - self.x1 * self.x1 != 1:
            raise InvariantViolation(
                f"determinant {self.x0 * self.x2 - self.x1 * self.x1} != 1"
            )

    @property
    def norm(self) -> mpz:
        return max(abs(self.x0), abs(self.x1), abs(self.x2))

    def entry(self, j: int) -> mpz:
        return (self.x0, self.x1, self.x2)[j]

    def to_flat(self):
        return (self.x0, self.x1, self.x1, self.x2)

    @classmethod
    def from_flat(cls, m) -> "SymMat2":
        if m[1] != m[2]:
            raise InvariantViolation(f"matrix not symmetric: {m}")
        return cls(m[0], m[1], m[3])

    def __repr__(self):
        return f"SymMat2({self.x0}, {self.x1}, {self.x2})"


IDENTITY = SymMat2(1, 0, 1)
_CANONICAL_X2 = SymMat2(1, 1, 2)


def _raw_next_term(terms: list, k: int):
    """x_{k+2} by the matrix route, from 1-indexed term list."""
    a = terms[k - 1].to_flat()
    b = terms[k].to_flat()
    return _mat_mul(_mat_mul(a, companion_matrix(k)), b)


def _extend_terms(terms: list, upto: int) -> None:
    """Append terms in place up to index `upto`, with the dual-route cross-check.

    Every new term is computed by the matrix product and compared against an
    independent second route: the commutation partner for x3, the
    Cayley-Hamilton scalar recurrence 3*x_{k,0}*x_{k+1} - x_{k-1} afterwards.
    """
    while len(terms) < upto:
        k = len(terms) - 1  # x_{k+2} is appended
        prod = _raw_next_term(terms, k)
        if k == 1:
            # second route for x3 is the commuted product x2*M2*x1
            other = _mat_mul(_mat_mul(terms[1].to_flat(), companion_matrix(2)),
                             terms[0].to_flat())
        else:
            c = 3 * terms[k - 1].x0
            other = _mat_sub(_mat_scale(c, terms[k].to_flat()),
                             terms[k - 2].to_flat())
        if prod != other:
            raise OracleMismatch(
                f"matrix product and scalar recurrence disagree at k={k + 2}; "
                "seed violates the commutation condition"
            )
        if prod[1] != prod[2]:
            raise InvariantViolation(f"term k={k + 2} not symmetric")
        terms.append(SymMat2.from_flat(prod))  # det checked by constructor


def _generate(x1: SymMat2, x2: SymMat2, upto: int) -> list:
    terms = [x1, x2]
    _extend_terms(terms, upto)
    return terms


@dataclass(frozen=True)
class SeedPair:
    """Seed matrices x1, x2 with the admissibility probe results.

    ``first_valid_index`` is the first index from which the growth
    hypotheses (strictly increasing norms, norm < (1+xi^2)*|x_{k,0}|) hold;
    None when the probe failed outright.
    """

    x1: SymMat2
    x2: SymMat2
    admissible: bool
    first_valid_index: Optional[int]

    @classmethod
    def probe(cls, x1: SymMat2, x2: SymMat2, probe_depth: int = 12) -> "SeedPair":
        """Build a SeedPair, deciding admissibility from a 12-term trial run."""
        try:
            terms = _generate(x1, x2, probe_depth)
        except (OracleMismatch, InvariantViolation):
            return cls(x1, x2, False, None)
        return cls(x1, x2, *(_admissibility(terms)))


def _admissibility(terms: list) -> tuple:
    """Growth + approximation heuristics on a 12-term trial run."""
    n = len(terms)
    norms = [t.norm for t in terms]
    if terms[n - 1].x0 == 0:
        return False, None
    xi_hat = mpq(terms[n - 1].x1, terms[n - 1].x0)
    one_plus_xi2 = 1 + xi_hat * xi_hat

    fvi = None
    for j in range(1, 5):
        increasing = all(norms[k] < norms[k + 1] for k in range(j - 1, n - 1))
        dominated = all(norms[k - 1] < one_plus_xi2 * abs(terms[k - 1].x0)
                        for k in range(j, n + 1))
        if increasing and dominated:
            fvi = j
            break
    if fvi is None:
        return False, None

    # growth ratio log X_{k+1}/log X_k within 10% of the golden ratio at k=10
    if n >= 11:
        l10 = gmpy2.log(gmpy2.mpfr(norms[9], 64))
        l11 = gmpy2.log(gmpy2.mpfr(norms[10], 64))
        if l10 <= 0:
            return False, fvi
        ratio = l11 / l10
        if abs(ratio - _GAMMA_F) > 0.10 * _GAMMA_F:
            return False, fvi

    # approximation quality |x_{k,0}*xi_hat - x_{k,1}| * X_k bounded by 10
    for k in range(1, n + 1):
        t = terms[k - 1]
        err = abs(t.x0 * xi_hat - t.x1) * norms[k - 1]
        if err > 10:
            return False, fvi
    return True, fvi


_GAMMA_F = gmpy2.mpfr("1.6180339887498948482", 64)


class MarkoffSequence:
    """Seed pair plus the lazily extended, cached list of terms x_1..x_K.

    Terms are append-only; extension is guarded by a lock (single-writer),
    reads are lock-free. All stored values are immutable.
    """

    def __init__(self, seed: SeedPair, terms: Optional[list] = None):
        self.seed = seed
        self._terms = list(terms) if terms else [seed.x1, seed.x2]
        self._norms = [t.norm for t in self._terms]
        self._lock = threading.Lock()

    @property
    def materialized(self) -> int:
        return len(self._terms)

    def term(self, k: int) -> SymMat2:
        if not 1 <= k <= len(self._terms):
            raise IndexOutOfRange(f"term {k} not materialized (have 1..{len(self._terms)})")
        return self._terms[k - 1]

    def x(self, k: int, j: int) -> mpz:
        return self.term(k).entry(j)

    def norm(self, k: int) -> mpz:
        if not 1 <= k <= len(self._norms):
            raise IndexOutOfRange(f"term {k} not materialized (have 1..{len(self._norms)})")
        return self._norms[k - 1]

    def extend(self, upto_k: int, cap: int = DEFAULT_K_CAP) -> "MarkoffSequence":
        if upto_k > cap:
            raise IndexOutOfRange(
                f"requested k={upto_k} exceeds cap {cap}; pass a larger cap explicitly"
            )
        with self._lock:
            if upto_k <= len(self._terms):
                return self
            have = len(self._terms)
            _extend_terms(self._terms, upto_k)
            for t in self._terms[have:]:
                self._norms.append(t.norm)
        return self


def extend_sequence(seq: MarkoffSequence, upto_k: int, cap: int = DEFAULT_K_CAP) -> MarkoffSequence:
    """Materialize terms 1..upto_k; dual-route cross-check on every new term."""
    if upto_k < 2:
        raise IndexOutOfRange("upto_k must be at least 2")
    return seq.extend(upto_k, cap=cap)


def canonical_seed() -> SeedPair:
    """The worked-example seed: identity matrix and [[1,1],[1,2]]."""
    return SeedPair.probe(IDENTITY, _CANONICAL_X2)


def canonical_sequence(upto_k: int = 2) -> MarkoffSequence:
    seq = MarkoffSequence(canonical_seed())
    if upto_k > 2:
        extend_sequence(seq, upto_k)
    return seq


def seed_search(entry_bound: int) -> list:
    """All symmetric det-1 pairs with entries bounded by entry_bound that
    satisfy the commutation condition x1*M1*x2 == x2*M2*x1, each probed for
    admissibility."""
    if entry_bound < 1:
        return []
    mats = []
    for b in range(-entry_bound, entry_bound + 1):
        target = 1 + b * b
        for a in range(-entry_bound, entry_bound + 1):
            if a == 0 or target % a != 0:
                continue
            c = target // a
            if abs(c) <= entry_bound:
                mats.append(SymMat2(a, b, c))
    mats.sort(key=lambda m: (m.x0, m.x1, m.x2))
    found = []
    for m1 in mats:
        for m2 in mats:
            lhs = _mat_mul(_mat_mul(m1.to_flat(), companion_matrix(1)), m2.to_flat())
            rhs = _mat_mul(_mat_mul(m2.to_flat(), companion_matrix(2)), m1.to_flat())
            if lhs == rhs:
                found.append(SeedPair.probe(m1, m2))
    return found


# ---------------------------------------------------------------------------
# derived integer scalars (closed forms; validated by the auditors module)

@dataclass(frozen=True)
class DerivedScalars:
    k: int
    A: mpz
    B: mpz
    C: mpz
    D: mpz
    E: mpz
    F: mpz


def derived_scalars(seq: MarkoffSequence, k: int) -> DerivedScalars:
    if k < 2:
        raise IndexOutOfRange("derived scalars need k >= 2")
    if k + 4 > seq.materialized:
        raise IndexOutOfRange(f"derived scalars at k={k} need terms up to {k + 4}")
    e, s = seq.x, sign_pow(k)
    return DerivedScalars(
        k=k,
        A=e(k, 1) * e(k + 2, 2) - s * e(k + 1, 2),
        B=e(k, 2) * e(k + 2, 2) - 3 * e(k + 1, 2),
        C=e(k, 1) * e(k + 1, 2) - s * e(k - 1, 2),
        D=e(k, 2) * e(k + 1, 2) - 3 * e(k - 1, 2),
        E=e(k, 1) * e(k + 4, 2) - 3 * s * e(k + 1, 0) * e(k + 3, 2) - s * e(k + 2, 2),
        F=e(k, 2) * e(k + 4, 2) - 3 * (3 * e(k + 1, 0) + s * e(k + 1, 1)) * e(k + 3, 2),
    )


# ---------------------------------------------------------------------------
# integer polynomials

@dataclass(frozen=True)
class IntPoly:
    """Integer-coefficient polynomial, coefficients in ascending degree.

    Trailing zero coefficients are stripped; the zero polynomial has an
    empty coefficient tuple.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = [mpz(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "IntPoly":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def norm(self) -> mpz:
        return max((abs(c) for c in self.coefficients), default=mpz(0))

    @property
    def content(self) -> mpz:
        g = mpz(0)
        for c in self.coefficients:
            g = gmpy2.gcd(g, c)
        return g

    def coeff(self, j: int) -> mpz:
        return self.coefficients[j] if j <= self.degree else mpz(0)

    def eval_mpq(self, t: mpq) -> mpq:
        acc = mpq(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(j * c for j, c in enumerate(self.coefficients) if j >= 1))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPoly(tuple(self.coeff(j) + other.coeff(j) for j in range(n)))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPoly(tuple(self.coeff(j) - other.coeff(j) for j in range(n)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coefficients))

    def scale(self, c) -> "IntPoly":
        return IntPoly(tuple(mpz(c) * x for x in self.coefficients))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [mpz(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def divisible_by(self, other: "IntPoly") -> bool:
        """Exact divisibility within Q[T]."""
        if other.is_zero:
            return self.is_zero
        if self.is_zero:
            return True
        if self.degree < other.degree:
            return False
        rem = [mpq(c) for c in self.coefficients]
        dlead = mpq(other.coefficients[-1])
        dd = other.degree
        while len(rem) - 1 >= dd:
            lead = rem[-1] / dlead
            shift = len(rem) - 1 - dd
            for i in range(dd + 1):
                rem[shift + i] -= lead * other.coefficients[i]
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                return True
        return not rem

    def pretty(self, var: str = "T") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coeff(j)
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" + (f"^{j}" if j > 1 else "")
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(f"{sign}{body}" if not parts else f" {sign} {body}")
        return "".join(parts)


def q_polynomial(seq: MarkoffSequence, k: int) -> IntPoly:
    """Quadratic det(T, x_k, x_{k+1}) with exact integer coefficients."""
    if k < 1:
        raise IndexOutOfRange("q_polynomial needs k >= 1")
    if k + 1 > seq.materialized:
        raise IndexOutOfRange(f"q_polynomial at k={k} needs terms up to {k + 1}")
    e = seq.x
    c0 = e(k, 1) * e(k + 1, 2) - e(k, 2) * e(k + 1, 1)
    c1 = e(k, 2) * e(k + 1, 0) - e(k, 0) * e(k + 1, 2)
    c2 = e(k, 0) * e(k + 1, 1) - e(k, 1) * e(k + 1, 0)
    return IntPoly((c0, c1, c2))


def q_three_term(seq: MarkoffSequence, k: int) -> IntPoly:
    """x_{k-1,0}Q_k - x_{k,0}Q_{k+1} + x_{k+1,0}Q_{k-1}; expected -2(-1)^k."""
    if k < 2:
        raise IndexOutOfRange("three-term combination needs k >= 2")
    qm, q0, qp = q_polynomial(seq, k - 1), q_polynomial(seq, k), q_polynomial(seq, k + 1)
    return q0.scale(seq.x(k - 1, 0)) - qp.scale(seq.x(k, 0)) + qm.scale(seq.x(k + 1, 0))


# ---------------------------------------------------------------------------
# gcd/content theorem

@dataclass(frozen=True)
class GcdReport:
    k: int
    g_A: mpz
    g_E: mpz
    content_Q: mpz
    all_equal: bool
    in_range: bool


def gcd_content_check(seq: MarkoffSequence, k: int) -> GcdReport:
    sc = derived_scalars(seq, k)
    g_a = gmpy2.gcd(seq.x(k, 0), sc.A)
    g_e = gmpy2.gcd(seq.x(k, 0), sc.E)
    cont = q_polynomial(seq, k + 1).content
    return GcdReport(
        k=k,
        g_A=g_a,
        g_E=g_e,
        content_Q=cont,
        all_equal=(g_a == g_e == cont),
        in_range=cont in (1, 2),
    )


# ---------------------------------------------------------------------------
# identity catalog

@dataclass(frozen=True)
class IdentityFamily:
    """Registry entry: stable id, valid k range, and index footprint."""

    id: str
    k_min: int
    back: int  # how far below k the identity reads
    fwd: int   # how far beyond k the identity reads
    fn: Callable = field(repr=False)

    def residual(self, seq: MarkoffSequence, k: int):
        return self.fn(seq, k)


def _scalar(fn):
    def wrapped(seq, k):
        return (fn(seq.x, k, sign_pow(k)),)
    return wrapped


def _c25(e, k, s): return e(k, 0) * e(k + 1, 1) - (e(k, 1) * e(k + 1, 0) - s * e(k - 1, 0))
def _c26(e, k, s): return e(k, 0) * e(k + 1, 2) - (e(k, 1) * e(k + 1, 1) - s * e(k - 1, 1))
def _c27(e, k, s): return e(k, 1) * e(k + 1, 2) - (e(k, 2) * e(k + 1, 1) - 3 * e(k - 1, 1) - s * e(k - 1, 2))
def _c28(e, k, s): return e(k, 0) * e(k + 2, 1) - (e(k, 1) * e(k + 2, 0) - s * e(k + 1, 0))
def _c29(e, k, s): return e(k, 0) * e(k + 2, 2) - (e(k, 1) * e(k + 2, 1) - s * e(k + 1, 1))
def _c210(e, k, s): return e(k, 1) * e(k + 2, 2) - (e(k, 2) * e(k + 2, 1) - 3 * e(k + 1, 1) - s * e(k + 1, 2))
def _c211(e, k, s): return e(k, 0) * e(k + 4, 1) - (e(k, 1) * e(k + 4, 0) - 3 * s * e(k + 1, 0) * e(k + 3, 0) - s * e(k + 2, 0))
def _c212(e, k, s): return e(k, 0) * e(k + 4, 2) - (e(k, 1) * e(k + 4, 1) - 3 * s * e(k + 1, 0) * e(k + 3, 1) - s * e(k + 2, 1))
def _c213(e, k, s): return e(k, 1) * e(k + 4, 2) - (e(k, 2) * e(k + 4, 1) - 3 * (3 * e(k + 1, 0) + s * e(k + 1, 1)) * e(k + 3, 1) - s * e(k + 2, 2))
def _l72i(e, k, s): return e(k, 0) * e(k + 3, 1) - (e(k, 1) * e(k + 3, 0) - 3 * s * e(k + 1, 0) ** 2)
def _l72ii(e, k, s): return e(k, 0) * e(k + 3, 2) - (e(k, 2) * e(k + 3, 0) - 3 * e(k + 1, 0) * (3 * e(k + 1, 0) + 2 * s * e(k + 1, 1)))
def _l72iii(e, k, s): return e(k, 1) * e(k + 3, 2) - (e(k, 2) * e(k + 3, 1) - 3 * e(k + 1, 0) * (3 * e(k + 1, 1) + s * e(k + 1, 2)))


def _rec3(seq, k):
    lhs = seq.term(k + 2).to_flat()
    rhs = _mat_sub(_mat_scale(3 * seq.x(k, 0), seq.term(k + 1).to_flat()),
                   seq.term(k - 1).to_flat())
    return _mat_sub(lhs, rhs)


def _mat_ii(seq, k):
    lhs = _mat_mul(seq.term(k).to_flat(), _mat_mul(_J, seq.term(k + 1).to_flat()))
    rhs = _mat_mul(_J, _mat_mul(companion_matrix(k), seq.term(k - 1).to_flat()))
    return _mat_sub(lhs, rhs)


def _mat_iii(seq, k):
    lhs = _mat_mul(seq.term(k).to_flat(), _mat_mul(_J, seq.term(k + 2).to_flat()))
    rhs = _mat_mul(_J, _mat_mul(companion_matrix(k), seq.term(k + 1).to_flat()))
    return _mat_sub(lhs, rhs)


def _mat_iv(seq, k):
    lhs = _mat_mul(seq.term(k).to_flat(), _mat_mul(_J, seq.term(k + 4).to_flat()))
    core = _mat_mul(_mat_mul(_J, companion_matrix(k)),
                    _mat_mul(_mat_mul(seq.term(k + 1).to_flat(), _P), seq.term(k + 3).to_flat()))
    rhs = _mat_sub(core, _mat_scale(sign_pow(k), seq.term(k + 2).to_flat()))
    return _mat_sub(lhs, rhs)


def _q_lead(seq, k):
    return (q_polynomial(seq, k).coeff(2) - sign_pow(k - 1) * seq.x(k - 1, 0),)


def _q_3term(seq, k):
    res = q_three_term(seq, k) - IntPoly((-2 * sign_pow(k),))
    return tuple(res.coeff(j) for j in range(3))


IDENTITY_REGISTRY: dict = {}


def _register(fid, k_min, back, fwd, fn):
    IDENTITY_REGISTRY[fid] = IdentityFamily(fid, k_min, back, fwd, fn)


_register("rec3", 2, 1, 2, _rec3)
_register("c2.5", 2, 1, 1, _scalar(_c25))
_register("c2.6", 2, 1, 1, _scalar(_c26))
_register("c2.7", 2, 1, 1, _scalar(_c27))
_register("c2.8", 2, 0, 2, _scalar(_c28))
_register("c2.9", 2, 0, 2, _scalar(_c29))
_register("c2.10", 2, 0, 2, _scalar(_c210))
_register("c2.11", 2, 0, 4, _scalar(_c211))
_register("c2.12", 2, 0, 4, _scalar(_c212))
_register("c2.13", 2, 0, 4, _scalar(_c213))
_register("mat2.2.ii", 2, 1, 1, _mat_ii)
_register("mat2.2.iii", 2, 0, 2, _mat_iii)
_register("mat2.2.iv", 2, 0, 4, _mat_iv)
_register("L7.2.i", 1, 0, 3, _scalar(_l72i))
_register("L7.2.ii", 1, 0, 3, _scalar(_l72ii))
_register("L7.2.iii", 1, 0, 3, _scalar(_l72iii))
_register("q.lead", 2, 1, 1, _q_lead)
_register("q.3term", 2, 1, 2, _q_3term)


def verify_exact_identity(seq: MarkoffSequence, family_id: str, k: int) -> tuple:
    """LHS - RHS of the family at index k, as a tuple of exact integers.

    The identity holds iff every component is zero.
    """
    fam = IDENTITY_REGISTRY.get(family_id)
    if fam is None:
        raise UnknownFamily(f"no identity family {family_id!r}")
    if k < fam.k_min or k - fam.back < 1:
        raise IndexOutOfRange(f"{family_id} needs k >= {fam.k_min}")
    if k + fam.fwd > seq.materialized:
        raise IndexOutOfRange(
            f"{family_id} at k={k} reads term {k + fam.fwd}, have {seq.materialized}"
        )
    return fam.residual(seq, k)


def residual_is_zero(residual: tuple) -> bool:
    return all(v == 0 for v in residual)


# ---------------------------------------------------------------------------
# sequence cache format: "markoff-seq v1", then "k x0 x1 x2" per line

CACHE_HEADER = "markoff-seq v1"


def write_cache(path, seq: MarkoffSequence) -> int:
    """Write all materialized terms; returns the number of terms written."""
    lines = [CACHE_HEADER]
    for k in range(1, seq.materialized + 1):
        t = seq.term(k)
        lines.append(f"{k} {t.x0} {t.x1} {t.x2}")
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write cache {path}: {exc}") from exc
    return seq.materialized


def read_cache(path) -> MarkoffSequence:
    """Load a cache file; bit-exact round-trip with write_cache."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        raise IoError(f"cannot read cache {path}: {exc}") from exc
    if not raw or raw[0].strip() != CACHE_HEADER:
        raise FormatError(f"bad header, expected {CACHE_HEADER!r}", line=1)
    terms = []
    for lineno, line in enumerate(raw[1:], start=2):
        if not line.strip():
            continue
        tokens = line.split()
        if len(tokens) != 4:
            raise FormatError(f"expected 4 tokens, got {len(tokens)}", line=lineno)
        try:
            k, x0, x1, x2 = (mpz(t) for t in tokens)
        except ValueError as exc:
            raise FormatError(f"non-integer token: {exc}", line=lineno) from exc
        if k != len(terms) + 1:
            raise FormatError(f"index gap: expected k={len(terms) + 1}, got {k}", line=lineno)
        try:
            terms.append(SymMat2(x0, x1, x2))
        except InvariantViolation as exc:
            raise InvariantViolation(f"line {lineno}: {exc}", line=lineno) from exc
    if len(terms) < 2:
        raise FormatError("cache must hold at least the two seed terms", line=len(raw))
    # recurrence consistency of the loaded tail
    for i in range(2, len(terms)):
        k = i - 1
        expect = _raw_next_term(terms, k)
        if terms[i].to_flat() != expect:
            raise InvariantViolation(
                f"line {i + 2}: term {i + 1} violates the recurrence", line=i + 2
            )
    seed = SeedPair.probe(terms[0], terms[1])
    return MarkoffSequence(seed, terms)
