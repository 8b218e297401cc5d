import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seacount.arith import odd_primes_upto, pi, primes_in
from seacount.curve import RationalCurve
from seacount.elkies import PrimeClass
from seacount.errors import InternalDefectError, InvalidArgumentError
from seacount.stats import (SurveyRecord, a_xi, c_ell, char_sum, classify, dyadic_ranges,
                            elkies_count_diagnostic, identity_check, main_term, make_record, moments, omega,
                            omega_stats, survey, trace_table)

E11 = RationalCurve(1, 1)
ODD_PRIMES = odd_primes_upto(200)


@pytest.mark.parametrize("ell,p,want", [(3, 5, PrimeClass.ELKIES), (7, 5, PrimeClass.ATKIN),
                                        (11, 5, PrimeClass.RAMIFIED), (5, 5, PrimeClass.EXCLUDED),
                                        (2, 5, PrimeClass.EXCLUDED)])
def test_classify_examples(ell, p, want):
    assert classify(-11, ell, p) is want


@given(st.integers(-10 ** 12, -1), st.sampled_from(ODD_PRIMES), st.integers(-50, 50))
def test_classify_depends_on_residue_only(D, ell, shift):
    assert classify(D, ell, 10 ** 9 + 7) is classify(D + shift * ell, ell, 10 ** 9 + 7)


def test_survey_single_prime():
    res = survey(E11, L=10, pmin=5, pmax=5)
    (r,) = res.records
    assert (r.p, r.t, r.D, r.k, r.R_e, r.R_a, r.R_ram, r.excluded_hit) == (5, -3, -11, 4, 0, 3, 1, False)


def test_k_for_L15():
    assert survey(E11, L=15, pmin=5, pmax=7).records[0].k == 4


def test_record_rejects_bad_accounting():
    with pytest.raises(InternalDefectError):
        SurveyRecord(5, -3, -11, 4, 1, 1, 1, False)


@given(st.integers(1, 10 ** 6), st.integers(3, 60))
@settings(max_examples=200)
def test_accounting_and_conventions(seed, L):
    p = primes_in(10 ** 5, 2 * 10 ** 5)[seed % 8000]
    t = seed % (2 * math.isqrt(p)) - math.isqrt(p)
    ells = primes_in(L, 2 * L)
    r = make_record(p, t, ells)
    assert r.R_e + r.R_a + r.R_ram + r.excluded_hit == r.k == len(ells)
    assert r.count(PrimeClass.ELKIES, "merge-ramified") == r.count(PrimeClass.ELKIES, "strict") + r.R_ram


def test_moments_exact_and_bounded():
    recs = [make_record(p, t, primes_in(15, 30)) for p, t in [(101, 3), (103, -7), (107, 0), (109, 11)]]
    for m in moments(recs):
        assert isinstance(m.mean_moment, Fraction)
        assert 0 <= m.deficient_fraction <= 1
    assert moments([])[0].mean_moment == 0


def test_survey_on_table_reuses_traces():
    table = trace_table(E11, 1000, 4000)
    a = survey(E11, L=10, pmin=2000, pmax=3000, traces=table)
    b = survey(E11, L=10, pmin=2000, pmax=3000)
    assert a == b
    with pytest.raises(InvalidArgumentError):
        survey(E11, L=10, pmin=500, pmax=3000, traces=table)
    with pytest.raises(InvalidArgumentError):
        survey(RationalCurve(2, 3), L=10, pmin=2000, pmax=3000, traces=table)


def test_exclude_supersingular():
    full = survey(E11, L=10, pmin=5, pmax=3000)
    ordinary = survey(E11, L=10, pmin=5, pmax=3000, include_supersingular=False)
    assert len(ordinary.records) == sum(1 for r in full.records if r.t != 0)


def test_survey_argument_errors():
    with pytest.raises(InvalidArgumentError):
        survey(E11, 100, 10, pmin=100, pmax=200)
    with pytest.raises(InvalidArgumentError):
        survey(E11, 100)
    with pytest.raises(InvalidArgumentError):
        survey(E11, 100, 2)


def test_trace_table_skips_bad_primes():
    E = RationalCurve(-1, 0)          # discriminant 64
    table = trace_table(E, 2, 50)
    assert [p for p, _ in table.traces][0] == 5 and table.skipped == 2


def test_dyadic_ranges():
    assert list(dyadic_ranges(40)) == [(5, 8), (8, 16), (16, 32), (32, 40)]


def test_char_sum_example():
    rep = char_sum(E11, (13, 17), 5)
    assert (rep.count_p, rep.S) == (2, 0)
    assert main_term(192, (3, 5)) == -1
    assert main_term(7, (3, 5)) == Fraction(-7, 192)


def test_char_sum_bounds():
    rep = char_sum(E11, (3, 5, 7, 11), 2000)
    assert abs(rep.S) <= rep.count_p
    assert rep.deviation == rep.S - rep.main_term


@pytest.mark.parametrize("ells", [(3, 3), (3,), (3, 5, 7), (3, 4), (2, 5)])
def test_char_sum_rejects(ells):
    with pytest.raises(InvalidArgumentError):
        char_sum(E11, ells, 100)


def test_c_ell_examples():
    assert (c_ell(5, 1), c_ell(5, -1), c_ell(3, 1), c_ell(3, -1)) == (45, 50, 9, 6)


def test_c_ell_sum():
    for ell in ODD_PRIMES:
        assert c_ell(ell, 1) + c_ell(ell, -1) == ell ** 3 - ell ** 2 - ell


def test_identity_examples():
    assert identity_check((3, 5, 7, 11)) == (-1155, -1155, True)
    assert identity_check((5, 13, 17, 29)) == (32045, 32045, True)


def test_identity_exhaustive():
    for q in itertools.combinations(odd_primes_upto(37), 4):
        assert identity_check(q)[2]
        assert a_xi(q, 1) + a_xi(q, -1) == math.prod(c_ell(l, 1) + c_ell(l, -1) for l in q)


def test_a_xi_needs_four_distinct():
    with pytest.raises(InvalidArgumentError):
        a_xi((3, 3, 5, 7), 1)


def test_omega_examples():
    assert omega(-11, 10) == 1
    assert omega(-1, 10) == 0
    assert omega(0, 10) == pi(20) - pi(10)


def test_omega_stats_small():
    m1 = omega_stats(E11, 1000, 10, 1)
    m2 = omega_stats(E11, 1000, 10, 2)
    assert 0 <= m1 <= m2
    with pytest.raises(InvalidArgumentError):
        omega_stats(E11, 1000, 10, 5)


def test_diagnostic_example():
    d = elkies_count_diagnostic(-11, 20)
    assert (d.R, d.R0, d.passed) == (2, 1, True)
    assert abs(d.threshold - 20 / (5 * math.log(20))) < 1e-12
    assert d.R + d.R0 <= pi(20)
    with pytest.raises(InvalidArgumentError):
        elkies_count_diagnostic(5, 20)
