import gmpy2
import pytest
from gmpy2 import mpq

from markofflab import matseq
from markofflab.errors import (
    FormatError,
    IndexOutOfRange,
    InvariantViolation,
    OracleMismatch,
    UnknownFamily,
)
from markofflab.matseq import (
    IDENTITY,
    IntPoly,
    MarkoffSequence,
    SeedPair,
    SymMat2,
    canonical_sequence,
    derived_scalars,
    gcd_content_check,
    q_polynomial,
    q_three_term,
    residual_is_zero,
    verify_exact_identity,
)


def test_symmat2_rejects_bad_determinant():
    with pytest.raises(InvariantViolation):
        SymMat2(2, 1, 7)  # det 13


def test_canonical_terms_match_known_values(seq):
    assert seq.term(3) == SymMat2(2, 1, 1)
    assert seq.term(4) == SymMat2(5, 3, 2)
    assert seq.term(5) == SymMat2(29, 17, 10)
    assert seq.term(6) == SymMat2(433, 254, 149)
    assert seq.term(7) == SymMat2(37666, 22095, 12961)
    assert seq.term(7).x0 * seq.term(7).x2 - seq.term(7).x1 ** 2 == 1


def test_extend_is_idempotent_below_current_length(seq):
    before = seq.materialized
    matseq.extend_sequence(seq, 2)
    assert seq.materialized == before


def test_both_recurrence_routes_agree(seq):
    # 3*x_{3,0}*x4 - x2 == x5
    lhs = tuple(3 * seq.x(3, 0) * seq.term(4).to_flat()[i] - seq.term(2).to_flat()[i]
                for i in range(4))
    assert lhs == seq.term(5).to_flat()


def test_seed_search_finds_canonical_pair():
    found = matseq.seed_search(3)
    hits = [sp for sp in found
            if sp.x1 == IDENTITY and sp.x2 == SymMat2(1, 1, 2)]
    assert len(hits) == 1
    assert hits[0].admissible
    assert hits[0].first_valid_index == 3


def test_seed_search_empty_bound():
    assert matseq.seed_search(0) == []


def test_identity_families_all_zero(seq):
    seq.extend(20)
    for fid, fam in matseq.IDENTITY_REGISTRY.items():
        for k in range(max(2, fam.k_min, fam.back + 1), 16 - fam.fwd + 1):
            residual = verify_exact_identity(seq, fid, k)
            assert residual_is_zero(residual), (fid, k, residual)


def test_identity_examples(seq):
    # x_{2,0}x_{3,1} - (x_{2,1}x_{3,0} - x_{1,0}) = 1 - (2 - 1) = 0
    assert verify_exact_identity(seq, "c2.5", 2) == (0,)
    # 254 - (433 - 3*2*29 - 5) = 0
    assert verify_exact_identity(seq, "c2.11", 2) == (0,)
    # 1*17 - (1*29 - 3*2^2) = 0
    assert verify_exact_identity(seq, "L7.2.i", 2) == (0,)


def test_identity_errors(seq):
    with pytest.raises(UnknownFamily):
        verify_exact_identity(seq, "nope", 3)
    with pytest.raises(IndexOutOfRange):
        verify_exact_identity(seq, "c2.11", seq.materialized)


def test_derived_scalars_examples(seq):
    d3 = derived_scalars(seq, 3)
    assert (d3.A, d3.B, d3.C, d3.D) == (12, 4, 4, -4)
    assert d3.E == 15206
    assert d3.F == 7597
    assert derived_scalars(seq, 2).A == 1


def test_q_polynomials_match_known_values(seq):
    assert q_polynomial(seq, 2).coefficients == (-1, 3, -1)
    assert q_polynomial(seq, 3).coefficients == (-1, 1, 1)
    q4 = q_polynomial(seq, 4)
    assert q4.coefficients == (-4, 8, -2)
    assert q4.content == 2
    q5 = q_polynomial(seq, 5)
    assert q5.coefficients == (-7, 9, 5)
    assert q5.content == 1
    assert q5.coeff(2) == seq.x(4, 0)  # (-1)^4 x_{4,0}


def test_three_term_combination(seq):
    assert q_three_term(seq, 3).coefficients == (2,)  # -2(-1)^3
    for k in range(2, 12):
        assert q_three_term(seq, k).coefficients == (-2 * matseq.sign_pow(k),)


def test_gcd_content_examples(seq):
    rep = gcd_content_check(seq, 3)
    assert (rep.g_A, rep.g_E, rep.content_Q) == (2, 2, 2)
    assert rep.all_equal and rep.in_range
    rep2 = gcd_content_check(seq, 2)
    assert (rep2.g_A, rep2.g_E, rep2.content_Q) == (1, 1, 1)
    assert rep2.all_equal


def test_consecutive_entries_coprime(seq):
    for k in range(1, seq.materialized + 1):
        assert gmpy2.gcd(seq.x(k, 0), seq.x(k, 1)) == 1


def test_oracle_mismatch_for_noncommuting_seed():
    # x1 == x2 never satisfies the commutation condition
    bad = MarkoffSequence(SeedPair(SymMat2(1, 1, 2), SymMat2(1, 1, 2), False, None))
    with pytest.raises(OracleMismatch):
        bad.extend(4)


def test_intpoly_basics():
    p = IntPoly((1, 0, -2, 5))
    assert p.degree == 3 and p.norm == 5 and p.content == 1
    assert IntPoly((2, 4, 6)).content == 2
    assert IntPoly(()).is_zero and IntPoly((0, 0)).is_zero
    assert p.eval_mpq(mpq(1, 2)) == mpq(9, 8)
    assert (p * IntPoly((1,))) == p
    q = IntPoly((-1, 1, 1))  # T^2 + T - 1
    assert (q * IntPoly((0, 1))).divisible_by(q)
    assert not p.divisible_by(q)
    assert p.derivative().coefficients == (0, -4, 15)


def test_cache_round_trip(tmp_path, seq):
    path = tmp_path / "seq.cache"
    matseq.write_cache(path, canonical_sequence(7))
    loaded = matseq.read_cache(path)
    assert loaded.materialized == 7
    for k in range(1, 8):
        assert loaded.term(k) == seq.term(k)
    # byte-identical second write
    matseq.write_cache(tmp_path / "again.cache", loaded)
    assert (tmp_path / "seq.cache").read_bytes() == (tmp_path / "again.cache").read_bytes()


def test_cache_rejects_bad_header(tmp_path):
    p = tmp_path / "bad.cache"
    p.write_text("wrong v9\n1 1 0 1\n")
    with pytest.raises(FormatError) as err:
        matseq.read_cache(p)
    assert err.value.line == 1


def test_cache_rejects_bad_determinant(tmp_path):
    p = tmp_path / "det.cache"
    p.write_text("markoff-seq v1\n1 1 0 1\n2 1 1 2\n3 2 1 7\n")
    with pytest.raises(InvariantViolation) as err:
        matseq.read_cache(p)
    assert err.value.line == 4


def test_cache_rejects_index_gap(tmp_path):
    p = tmp_path / "gap.cache"
    p.write_text("markoff-seq v1\n1 1 0 1\n3 2 1 1\n")
    with pytest.raises(FormatError) as err:
        matseq.read_cache(p)
    assert err.value.line == 3


def test_cache_seed_reconstruction(tmp_path):
    p = tmp_path / "seed.cache"
    p.write_text("markoff-seq v1\n1 1 0 1\n2 1 1 2\n")
    loaded = matseq.read_cache(p)
    assert loaded.seed.admissible
    assert loaded.term(2) == SymMat2(1, 1, 2)
